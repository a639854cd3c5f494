"""zeta-symmetrized subspaces of tensor powers.

``symmetrize_kernel`` intersects the eigenspaces of the n(n-1)/2 pure braids
pi_{i,j}^2 (eigenvalue zeta^2), which is enough to cut out the subspace where
every conjugate of every tau_i^2 acts as zeta^2.  ``symmetrize_graded`` reads
the same subspace off the grading: it is the sum of the blocks
V_{g1} (x) ... (x) V_{gn} over the zeta-families (g1, ..., gn).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .braid import BraidWord, all_permutations, minimal_lift, pi_element
from .cyclo import RootOfUnity, parse_cyc
from .linalg import Echelon, add_into, kernel
from .ydspace import (Bicharacter, BasisTuple, Degree, GradedModule, TensorElement,
                      render_element, word_on_basis)


class Subspace:
    """Subspace of host^(x)power, kept in reduced echelon form (pivot = least tuple)."""

    def __init__(self, host: GradedModule, power: int, vectors: Iterable[Mapping] = ()):
        self.host = host
        self.power = power
        self._ech = Echelon()
        for v in vectors:
            self._ech.add(v)

    @classmethod
    def from_tuples(cls, host: GradedModule, power: int, tuples: Iterable[BasisTuple]) -> "Subspace":
        one = host.field.one
        sub = cls(host, power)
        for t in tuples:
            sub._ech.rows[t] = {t: one}
            sub._ech._cols.setdefault(t, set()).add(t)
        return sub

    @property
    def dim(self) -> int:
        return len(self._ech)

    def __len__(self) -> int:
        return self.dim

    @property
    def basis(self) -> list[dict]:
        return self._ech.basis()

    def pivots(self) -> list[BasisTuple]:
        return sorted(self._ech.rows)

    def elements(self) -> list[TensorElement]:
        return [TensorElement(self.host, self.power, v) for v in self.basis]

    def reduce(self, v: Mapping) -> dict:
        return self._ech.reduce(v)

    def contains(self, z: TensorElement | Mapping) -> bool:
        coeffs = z.coeffs if isinstance(z, TensorElement) else z
        return not self._ech.reduce(coeffs)

    def __contains__(self, z) -> bool:
        return self.contains(z)

    def coordinates(self, v: Mapping) -> dict:
        """Pivot -> coefficient, for v inside the subspace."""
        return self._ech.coordinates(v)

    def row(self, pivot: BasisTuple) -> dict:
        return self._ech.rows[pivot]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.host is other.host and self.power == other.power
                and self.basis == other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.host, self.power, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        # kernel of (a, b) -> a - b on self (+) other
        fld = self.host.field
        a_rows = self.basis
        b_rows = other.basis
        dom = [("a", i) for i in range(len(a_rows))] + [("b", i) for i in range(len(b_rows))]

        def img(e):
            side, i = e
            v = a_rows[i] if side == "a" else b_rows[i]
            return v if side == "a" else {k: -c for k, c in v.items()}

        vecs = []
        for comb in kernel(dom, img, fld):
            acc: dict = {}
            for (side, i), c in comb.items():
                if side == "a":
                    add_into(acc, a_rows[i], c)
            vecs.append(acc)
        return Subspace(self.host, self.power, vecs)

    def __repr__(self) -> str:
        return f"Subspace(power={self.power}, dim={self.dim})"


class BlockSubspace(Subspace):
    """Span of the blocks host_{g1} (x) ... (x) host_{gn} over a set of degree tuples.

    Membership and coordinates are read off the degrees; the echelon form is
    only built when a basis is actually requested.
    """

    def __init__(self, host: GradedModule, power: int, blocks: Iterable[tuple[Degree, ...]]):
        self.host = host
        self.power = power
        self.blocks = sorted(set(blocks))
        self._allowed = set(self.blocks)
        self._lazy = None

    @property
    def _ech(self) -> Echelon:
        if self._lazy is None:
            tuples = sorted(t for b in self.blocks for t in self.host.block(b))
            self._lazy = Subspace.from_tuples(self.host, self.power, tuples)._ech
        return self._lazy

    def _inside(self, t: BasisTuple) -> bool:
        return tuple(self.host.degrees[i] for i in t) in self._allowed

    @property
    def dim(self) -> int:
        if self._lazy is not None:
            return len(self._lazy)
        sizes = self.host.dims()
        total = 0
        for b in self.blocks:
            k = 1
            for g in b:
                k *= sizes.get(g, 0)
            total += k
        return total

    def reduce(self, v: Mapping) -> dict:
        return {t: c for t, c in v.items() if c and not self._inside(t)}

    def contains(self, z: TensorElement | Mapping) -> bool:
        coeffs = z.coeffs if isinstance(z, TensorElement) else z
        return not self.reduce(coeffs)

    def coordinates(self, v: Mapping) -> dict:
        return {t: c for t, c in v.items() if c}

    def row(self, pivot: BasisTuple) -> dict:
        if len(pivot) != self.power or not self._inside(pivot):
            raise KeyError(pivot)
        return {tuple(pivot): self.host.field.one}


@dataclass(frozen=True)
class ZetaFamily:
    degrees: tuple[Degree, ...]
    zeta: RootOfUnity


def pi_square_conditions(n: int) -> list[BraidWord]:
    """pi_{i,j}^2 for 1 <= i < j <= n, i.e. t_i'..t_{j-2}' t_{j-1}^2 t_{j-2}..t_i."""
    out = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            p = pi_element(i, j, n)
            out.append(p * p)
    return out


def kernel_of_conditions(host: GradedModule, n: int,
                         conditions: Sequence[tuple[BraidWord, int]]) -> Subspace:
    """Simultaneous eigenspace: intersection of Ker(w - z_L^e) over (w, e)."""
    fld = host.field
    words = [(w.letters, e) for w, e in conditions]
    # z^f - z^e, the coefficient when a condition word maps t back to itself
    diffs = {e: [fld.root(f) - fld.root(e) for f in range(host.L)] for _, e in words}

    def image(t):
        out: dict = {}
        for idx, (letters, e) in enumerate(words):
            f, t2 = word_on_basis(host, letters, t)
            if t2 == t:
                c = diffs[e][f % host.L]
                if c:
                    out[(idx,) + t] = c
            else:
                out[(idx,) + t2] = fld.root(f)
                out[(idx,) + t] = -fld.root(e)
        return out

    return Subspace(host, n, kernel(host.tensor_basis(n), image, fld))


def symmetrize_kernel(M: GradedModule, n: int, zeta: RootOfUnity) -> Subspace:
    if n < 1:
        raise ValueError("power must be at least 1")
    two = (2 * zeta.k) % M.L
    return kernel_of_conditions(M, n, [(w, two) for w in pi_square_conditions(n)])


def _pair_exp(chi: Bicharacter, g: Degree, h: Degree) -> int:
    return (chi.exp(g, h) + chi.exp(h, g)) % chi.L


def zeta_families(chi: Bicharacter, degrees_present: Iterable[Degree], n: int,
                  zeta: RootOfUnity) -> list[ZetaFamily]:
    """Tuples over degrees_present with chi(gi,gj) chi(gj,gi) = zeta^2 for all i != j."""
    if zeta.L != chi.L:
        raise ValueError(f"zeta lives in Q(z_{zeta.L}) but the bicharacter in Q(z_{chi.L})")
    return [ZetaFamily(d, zeta) for d in families_for_exponent(chi, degrees_present, n, 2 * zeta.k)]


def families_for_exponent(chi: Bicharacter, degrees_present: Iterable[Degree], n: int,
                          target: int) -> list[tuple[Degree, ...]]:
    """Degree tuples whose pairwise double braidings all equal z_L^target (lexicographic)."""
    degs = sorted(set(chi.group.normalize(d) for d in degrees_present))
    target %= chi.L
    out: list[tuple[Degree, ...]] = []

    def extend(prefix: list[Degree]):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for d in degs:
            if all(_pair_exp(chi, p, d) == target for p in prefix):
                prefix.append(d)
                extend(prefix)
                prefix.pop()

    extend([])
    return out


def symmetrize_graded(M: GradedModule, n: int, zeta: RootOfUnity) -> Subspace:
    fams = zeta_families(M.chi, M.present_degrees(), n, zeta)
    return BlockSubspace(M, n, [f.degrees for f in fams])


def symmetrize(M: GradedModule, n: int, zeta: RootOfUnity, method: str = "graded") -> Subspace:
    if method == "graded":
        return symmetrize_graded(M, n, zeta)
    if method == "kernel":
        return symmetrize_kernel(M, n, zeta)
    raise ValueError(f"unknown method {method!r}")


def minus_one_conditions(n: int) -> list[tuple[BraidWord, str]]:
    """Words cutting out P (x) P^n(zeta) ("zeta") and the tau_1^2 invariance ("one")."""
    conds = [(w.shift(1), "zeta") for w in pi_square_conditions(n)]
    t1sq = BraidWord.gens(n + 1, 1, 1)
    for s in all_permutations(n):
        phi = minimal_lift(s).shift(1, n + 1) if n > 1 else BraidWord(n + 1)
        conds.append((phi.inverse() * t1sq * phi, "one"))
    return conds


def minus_one_zeta_subspace(P: GradedModule, n: int, zeta: RootOfUnity,
                            method: str = "graded") -> Subspace:
    """P (x) P^n(zeta) intersected with the tau_1^2-invariants of all (1 (x) phi) conjugates."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if method == "kernel":
        two = (2 * zeta.k) % P.L
        conds = [(w, two if tag == "zeta" else 0) for w, tag in minus_one_conditions(n)]
        return kernel_of_conditions(P, n + 1, conds)
    if method != "graded":
        raise ValueError(f"unknown method {method!r}")
    chi = P.chi
    degs = P.present_degrees()
    tuples = []
    for fam in zeta_families(chi, degs, n, zeta):
        for g0 in degs:
            if all(_pair_exp(chi, g0, g) == 0 for g in fam.degrees):
                tuples.extend(P.block((g0,) + fam.degrees))
    return Subspace.from_tuples(P, n + 1, sorted(tuples))


def satisfies_symmetry(host: GradedModule, coeffs: Mapping, n: int, zeta: RootOfUnity) -> bool:
    """Direct test of the defining conditions of host^n(zeta) on one element."""
    fld = host.field
    two = (2 * zeta.k) % host.L
    for w in pi_square_conditions(n):
        img: dict = {}
        for t, c in coeffs.items():
            e, t2 = word_on_basis(host, w.letters, t)
            add_into(img, {t2: c.mul_root(e)})
        add_into(img, coeffs, -fld.root(two))
        if img:
            return False
    return True


def satisfies_minus_one(host: GradedModule, coeffs: Mapping, n: int, zeta: RootOfUnity) -> bool:
    two = (2 * zeta.k) % host.L
    fld = host.field
    for w, tag in minus_one_conditions(n):
        img: dict = {}
        for t, c in coeffs.items():
            e, t2 = word_on_basis(host, w.letters, t)
            add_into(img, {t2: c.mul_root(e)})
        add_into(img, coeffs, -fld.root(two if tag == "zeta" else 0))
        if img:
            return False
    return True


# -- text export -------------------------------------------------------------

def export_subspace(S: Subspace) -> str:
    lines = [f"power {S.power} dim {S.dim}"]
    lines += [render_element(S.host, v) for v in S.basis]
    return "\n".join(lines) + "\n"


_TERM = re.compile(r"\s*(?:\(([^()]*)\)|([^()*+]+?))\s*\*\s*\(([^()]*)\)\s*")


def parse_element(text: str, host: GradedModule, power: int | None = None,
                  scalar=None) -> TensorElement:
    """Parse "c * (e0,e1) + (1 + z) * (e1,e0)"; the inverse of the element rendering.

    ``scalar`` overrides how coefficient strings are read (default: the host field).
    """
    fld = host.field
    if scalar is None:
        scalar = lambda txt: parse_cyc(txt, fld)
    s = text.strip()
    coeffs: dict = {}
    if s == "0":
        if power is None:
            raise ValueError("the zero element needs an explicit power")
        return TensorElement(host, power, {})
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse tensor element at position {pos}: {s[pos:pos + 30]!r}")
        c = scalar(m.group(1) if m.group(1) is not None else m.group(2))
        t = tuple(host.index(x.strip()) for x in m.group(3).split(","))
        if power is None:
            power = len(t)
        add_into(coeffs, {t: c})
        pos = m.end()
        if pos < len(s):
            if s[pos] != "+":
                raise ValueError(f"expected '+' at position {pos}")
            pos += 1
    return TensorElement(host, power, coeffs)


def import_subspace(text: str, host: GradedModule, scalar=None) -> Subspace:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    m = re.fullmatch(r"power (\d+) dim (\d+)", lines[0].strip()) if lines else None
    if not m:
        raise ValueError("subspace export must start with 'power <n> dim <d>'")
    n, d = int(m.group(1)), int(m.group(2))
    if len(lines) - 1 != d:
        raise ValueError(f"header announces {d} basis elements, found {len(lines) - 1}")
    return Subspace(host, n, [parse_element(ln, host, n, scalar).coeffs for ln in lines[1:]])
