"""The coproduct-like map p(a) = a (x) 1 + 1 (x) a respects n-ary brackets.

For an algebra A, A (x) A is again an algebra (with the braided product), and
p is linear but not multiplicative.  Expanding [p^n(z)] produces terms weighted
by Gaussian binomial coefficients c_i(zeta); at a primitive n-th root of unity
only the two outer ones survive, which is why [p^n(z)] = p([z]).

Run:  python demos/main_theorem.py
"""
from pathlib import Path

from ydlie.cyclo import RootOfUnity, c_coefficient, primitive_roots, render_cyc
from ydlie.dsl import parse_spec
from ydlie.brlie import bracket
from ydlie.hopf import c_expansion, tensor_square, verify_main_theorem
from ydlie.symzeta import symmetrize_graded

SPECS = Path(__file__).resolve().parent.parent / "specs"

print("c_i(zeta) for n = 4:")
for k in range(4):
    zeta = RootOfUnity(4, k)
    row = [render_cyc(c_coefficient(4, i, zeta)) for i in range(5)]
    print(f"  zeta = z_4^{k}: {row}")
print("only zeta = z_4^1 and z_4^3 are primitive, and there the middle entries vanish\n")

for name in ("c3.yd", "gl2.yd"):
    W = parse_spec((SPECS / name).read_text()).build()
    A = W.algebras["A"]
    T = tensor_square(A)
    for n in (2, 3):
        for zeta in primitive_roots(A.carrier.L, n):
            rep = verify_main_theorem(A, n, zeta, T)
            if rep.entries:
                print(f"{name} n={n} zeta={W.zeta_label(zeta)}: {len(rep.entries)} basis elements, ok={rep.ok}")

# look inside one expansion
W = parse_spec((SPECS / "c3.yd").read_text()).build()
A = W.algebras["A"]
xi = W.zeta(1)
z = next(v for v in symmetrize_graded(A.carrier, 3, xi).basis if bracket(A, 3, xi, v).coeffs)
terms = c_expansion(A, 3, xi, z)
print(f"\nexpanding [p^3(z)] for z = {W.render(A.carrier, z)}")
print("  indices i with a nonzero c_i term:", sorted(i for i, t in terms.items() if t))
