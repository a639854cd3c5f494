"""Concrete algebras: graded endomorphism algebras, braided derivations, og(V)."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .brlie import GradedAlgebra, check_subalgebra, lie_from_algebra
from .linalg import add_into, kernel
from .report import Report
from .symzeta import Subspace
from .ydspace import GradedModule


class EndAlgebra(GradedAlgebra):
    """End(V) with basis of matrix units E_ab (e_b -> e_a), graded by deg a - deg b."""

    def __init__(self, V: GradedModule):
        g = V.group
        pairs = [(a, b) for a in range(V.dim) for b in range(V.dim)]
        deg = {p: g.add(V.degree(p[0]), g.neg(V.degree(p[1]))) for p in pairs}
        pairs.sort(key=lambda p: (deg[p], p))
        self.module = V
        self.pairs = pairs
        self.index_of = {p: i for i, p in enumerate(pairs)}
        carrier = GradedModule(V.chi, [deg[p] for p in pairs],
                               [f"E{a}_{b}" for a, b in pairs])
        idx = self.index_of
        table = {}
        for (a, b) in pairs:
            for d in range(V.dim):
                table[(idx[(a, b)], idx[(b, d)])] = {idx[(a, d)]: 1}
        unit = {idx[(a, a)]: 1 for a in range(V.dim)}
        super().__init__(carrier, table, unit, validate=False)

    def unit_of(self, a: int, b: int) -> int:
        return self.index_of[(a, b)]

    def from_matrix(self, entries: Mapping[tuple[int, int], object]) -> dict:
        """Element with the given (row, column) entries."""
        fld = self.field
        return {(self.index_of[p],): fld(c) for p, c in entries.items() if fld(c)}

    def apply(self, f: Mapping, v: Mapping) -> dict:
        """ev(f (x) v) for f in End(V) and v in V (both sparse, 1-tuple keys)."""
        out: dict = {}
        for (i,), c in f.items():
            a, b = self.pairs[i]
            x = v.get((b,))
            if x:
                add_into(out, {(a,): c * x})
        return out


def graded_end(V: GradedModule) -> EndAlgebra:
    return EndAlgebra(V)


def scalar_algebra(chi) -> GradedAlgebra:
    """The ground field as a one-dimensional algebra in degree 0."""
    M = GradedModule(chi, [chi.group.zero], ["one"])
    return GradedAlgebra(M, {(0, 0): {0: 1}}, {0: 1})


def truncated_polynomial(chi, degree, nilpotency: int, var: str = "x") -> GradedAlgebra:
    """k[x]/(x^m) with x homogeneous of the given degree."""
    g = chi.group
    d = g.normalize(degree)
    degs = [g.sum([d] * k) for k in range(nilpotency)]
    M = GradedModule(chi, degs, ["1"] + [f"{var}{k}" for k in range(1, nilpotency)])
    table = {(a, b): {a + b: 1} for a in range(nilpotency) for b in range(nilpotency)
             if a + b < nilpotency}
    return GradedAlgebra(M, table, {0: 1})


def _solve_on_end(E: EndAlgebra, equations) -> Subspace:
    """Kernel of the linear conditions, one degree component of End at a time."""
    vecs = []
    C = E.carrier
    for g in C.present_degrees():
        unknowns = C.component(g)
        vecs += [{(i,): c for i, c in v.items()} for v in kernel(unknowns, lambda i: equations(g, i), C.field)]
    return Subspace(C, 1, vecs)


def derivation_space(A: GradedAlgebra, E: EndAlgebra | None = None) -> Subspace:
    """Homogeneous d with d(ab) = d(a) b + chi(deg d, deg a) a d(b), as a subspace of End(A)."""
    if E is None:
        E = graded_end(A.carrier)
    M = A.carrier
    fld = M.field
    chi = M.chi
    n = M.dim

    def image(g, i):
        c, d = E.pairs[i]          # the unit sending e_d to e_c
        ec = {(c,): fld.one}
        out: dict = {}
        for a in range(n):
            for b in range(n):
                row: dict = {}
                prod = A.mul_basis(a, b)
                x = prod.get((d,))
                if x:
                    add_into(row, {(c,): x})
                if a == d:
                    add_into(row, A.mul(ec, A.basis(b)), fld(-1))
                if b == d:
                    add_into(row, A.mul(A.basis(a), ec), -fld.root(chi.exp(g, M.degree(a))))
                for (k,), y in row.items():
                    add_into(out, {(a, b, k): y})
        return out

    return _solve_on_end(E, image)


def check_der_closure(A: GradedAlgebra, max_n: int, extra: list[dict] | None = None) -> Report:
    """Der(A) is closed under all brackets of End(A) up to arity max_n.

    ``extra`` adjoins further elements of End(A) to the subspace (negative controls).
    """
    E = graded_end(A.carrier)
    D = derivation_space(A, E)
    if extra:
        D = Subspace(D.host, 1, D.basis + list(extra))
    return check_subalgebra(lie_from_algebra(E, max_n), D, "der-closure")


class BilinearForm:
    """<e_i, e_j> = matrix[(i, j)]; a morphism, so <V_g, V_h> = 0 unless g + h = 0."""

    def __init__(self, host: GradedModule, matrix: Mapping[tuple[int, int], object]):
        fld = host.field
        self.host = host
        self.matrix = {tuple(k): fld(v) for k, v in matrix.items() if fld(v)}
        g = host.group
        for (i, j) in self.matrix:
            if g.add(host.degree(i), host.degree(j)) != g.zero:
                raise ValueError(f"form pairs {host.labels[i]} and {host.labels[j]}, "
                                 f"whose degrees do not sum to zero")

    def __call__(self, v: Mapping, w: Mapping):
        fld = self.host.field
        acc = fld.zero
        for (i,), x in v.items():
            for (j,), y in w.items():
                b = self.matrix.get((i, j))
                if b:
                    acc = acc + b * x * y
        return acc

    @classmethod
    def from_rationals(cls, host: GradedModule, entries: Mapping) -> "BilinearForm":
        return cls(host, {k: Fraction(v) for k, v in entries.items()})


def og_subspace(V: GradedModule, B: BilinearForm, E: EndAlgebra | None = None) -> Subspace:
    """og(V)_i = {f in End(V)_i : <f v, w> = -chi(i, deg v) <v, f w>}."""
    if E is None:
        E = graded_end(V)
    fld = V.field
    chi = V.chi
    Bm = B.matrix

    def image(g, i):
        a, b = E.pairs[i]          # f = E_ab: e_b -> e_a
        out: dict = {}
        for p in range(V.dim):
            s = fld.root(chi.exp(g, V.degree(p)))
            for q in range(V.dim):
                # <f e_p, e_q> + chi(g, deg p) <e_p, f e_q>
                x = fld.zero
                if b == p and (a, q) in Bm:
                    x = x + Bm[(a, q)]
                if b == q and (p, a) in Bm:
                    x = x + s * Bm[(p, a)]
                if x:
                    add_into(out, {(p, q): x})
        return out

    return _solve_on_end(E, image)


def check_og_closure(V: GradedModule, B: BilinearForm, max_n: int) -> Report:
    E = graded_end(V)
    S = og_subspace(V, B, E)
    return check_subalgebra(lie_from_algebra(E, max_n), S, "og-closure")
