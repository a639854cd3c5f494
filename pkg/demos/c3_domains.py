"""Where does a C3-graded matrix algebra carry nonzero brackets?

V has one basis vector in each degree of C3 and chi(a, b) = xi^(ab) with xi a
primitive cube root of unity.  The algebra A = End(V) inherits the grading.  For
each arity n and each primitive n-th root of unity zeta we list the families of
degree tuples that make up A^n(zeta), the domain of the n-ary bracket.

Run:  python demos/c3_domains.py
"""
from pathlib import Path

from ydlie.brlie import lie_from_algebra
from ydlie.cyclo import primitive_roots
from ydlie.dsl import parse_spec
from ydlie.symzeta import symmetrize_graded, symmetrize_kernel, zeta_families
from ydlie.ydspace import render_element

SPECS = Path(__file__).resolve().parent.parent / "specs"

W = parse_spec((SPECS / "c3.yd").read_text()).build()
A = W.algebras["A"]
M = A.carrier
print(f"A = End(V), dim {A.dim}, degree dims {M.dims()}; working field Q(z_{W.L})\n")

for n in range(2, 7):
    for zeta in primitive_roots(M.L, n):
        fams = zeta_families(M.chi, M.present_degrees(), n, zeta)
        if fams:
            blocks = ", ".join(str(tuple(d[0] for d in f.degrees)) for f in fams)
            print(f"n={n} zeta={W.zeta_label(zeta):>5}: {blocks}")

# The two routes to the domain agree: solving the braid conditions directly, and
# assembling it from degree blocks.
V = W.modules["V"]
xi = W.zeta(1)
assert symmetrize_kernel(V, 3, xi) == symmetrize_graded(V, 3, xi)
print("\nV^3(xi) from the braid conditions equals the block description:")
print(W.export(symmetrize_graded(V, 3, xi)))

# The sextic domain is not empty, but the bracket there is the standard polynomial
# s_6, which is zero on 3x3 matrices.  The cubic bracket is the interesting one.
Lb = lie_from_algebra(A, 6)
for z in primitive_roots(M.L, 6):
    S = Lb.space(6, z)
    if S.dim:
        sample = S.pivots()[::97]
        vanish = all(not Lb.value(6, z, p) for p in sample)
        print(f"A^6({W.zeta_label(z)}) has dim {S.dim}; bracket zero on {len(sample)} sampled pivots: {vanish}")

print("\nsome cubic brackets on A^3(xi):")
shown = 0
for p in Lb.space(3, xi).pivots():
    val = Lb.value(3, xi, p)
    if val and shown < 4:
        print(f"  [{render_element(M, {p: W.field.one})}] = {W.render(M, val)}")
        shown += 1
