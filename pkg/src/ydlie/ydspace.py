"""Graded modules over a finite abelian group with a bicharacter.

A G-graded space V is a Yetter-Drinfeld module over kG: the coaction is the
grading and a homogeneous x of degree h is acted on by x.g = chi(h, g) x.  The
braiding is tau(x (x) y) = chi(deg x, deg y) y (x) x, and the braid group B_n
acts on V^(x)n through it.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .braid import BraidWord, Letter, Permutation, minimal_lift
from .cyclo import CycNumber, CyclotomicField, RootOfUnity, field
from .linalg import add_into

Degree = tuple[int, ...]
BasisTuple = tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """C_{n1} x C_{n2} x ...; elements are exponent tuples."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if any(n < 1 for n in self.orders):
            raise ValueError(f"bad cyclic factor orders {self.orders}")

    @classmethod
    def cyclic(cls, *orders: int) -> "FiniteAbelianGroup":
        return cls(tuple(orders))

    @property
    def zero(self) -> Degree:
        return (0,) * len(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    def __len__(self) -> int:
        return math.prod(self.orders)

    def normalize(self, g: Sequence[int]) -> Degree:
        if len(g) != len(self.orders):
            raise ValueError(f"element {tuple(g)} does not belong to {self}")
        return tuple(a % n for a, n in zip(g, self.orders))

    def add(self, g: Degree, h: Degree) -> Degree:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def neg(self, g: Degree) -> Degree:
        return tuple((-a) % n for a, n in zip(g, self.orders))

    def sum(self, gs: Iterable[Degree]) -> Degree:
        acc = self.zero
        for g in gs:
            acc = self.add(acc, g)
        return acc

    def elements(self) -> list[Degree]:
        return [tuple(t) for t in itertools.product(*(range(n) for n in self.orders))]

    def generator(self, a: int) -> Degree:
        return tuple(int(b == a) % n for b, n in enumerate(self.orders))

    def __str__(self) -> str:
        return "x".join(f"C{n}" for n in self.orders) or "C1"


class Bicharacter:
    """chi(g, h) = z_L^(sum_ab g_a h_b k_ab) from exponents k_ab on generator pairs."""

    def __init__(self, group: FiniteAbelianGroup, L: int, table: Mapping[tuple[int, int], int]):
        self.group = group
        self.L = L
        r = group.rank
        self.table = {(a, b): table.get((a, b), 0) % L for a in range(r) for b in range(r)}
        for (a, b), k in self.table.items():
            na, nb = group.orders[a], group.orders[b]
            if (na * k) % L or (nb * k) % L:
                raise ValueError(
                    f"bicharacter value z^{k} on (g{a + 1}, g{b + 1}) is not consistent with "
                    f"the orders {na}, {nb}: z^{k} raised to {math.gcd(na, nb)} must be 1")

    @classmethod
    def trivial(cls, group: FiniteAbelianGroup, L: int = 1) -> "Bicharacter":
        return cls(group, L, {})

    @property
    def field(self) -> CyclotomicField:
        return field(self.L)

    def exp(self, g: Degree, h: Degree) -> int:
        t = self.table
        r = len(g)
        return sum(g[a] * h[b] * t[a, b] for a in range(r) for b in range(r)) % self.L

    def __call__(self, g: Degree, h: Degree) -> RootOfUnity:
        return RootOfUnity(self.L, self.exp(g, h))

    def is_trivial(self) -> bool:
        return not any(self.table.values())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Bicharacter) and self.group == other.group
                and self.L == other.L and self.table == other.table)

    def __hash__(self) -> int:
        return hash((self.group, self.L, tuple(sorted(self.table.items()))))

    def __repr__(self) -> str:
        return f"Bicharacter({self.group}, L={self.L}, {self.table})"


class GradedModule:
    """Finite-dimensional G-graded space; basis sorted by degree."""

    def __init__(self, chi: Bicharacter, degrees: Sequence[Degree],
                 labels: Sequence[str] | None = None):
        g = chi.group
        self.chi = chi
        self.group = g
        self.degrees = tuple(g.normalize(d) for d in degrees)
        if labels is None:
            labels = [f"e{i}" for i in range(len(self.degrees))]
        if len(labels) != len(self.degrees) or len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct, one per basis vector")
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        L = chi.L
        # braiding exponents between basis vectors
        self._chi = [[chi.exp(a, b) for b in self.degrees] for a in self.degrees]
        self.L = L

    @classmethod
    def from_dims(cls, chi: Bicharacter, dims: Mapping[Degree, int] | Sequence[int],
                  prefix: str = "e") -> "GradedModule":
        g = chi.group
        if not isinstance(dims, Mapping):
            dims = dict(zip(g.elements(), dims))
        norm: dict[Degree, int] = {}
        for k, d in dims.items():
            key = g.normalize((k,) if isinstance(k, int) else k)
            norm[key] = norm.get(key, 0) + d
        degs = [d for d in sorted(norm) for _ in range(norm[d])]
        return cls(chi, degs, [f"{prefix}{i}" for i in range(len(degs))])

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def __len__(self) -> int:
        return self.dim

    @property
    def field(self) -> CyclotomicField:
        return self.chi.field

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def degree(self, i: int) -> Degree:
        return self.degrees[i]

    def tuple_degree(self, t: BasisTuple) -> Degree:
        return self.group.sum(self.degrees[i] for i in t)

    def chi_exp(self, a: int, b: int) -> int:
        return self._chi[a][b]

    def dims(self) -> dict[Degree, int]:
        out: dict[Degree, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return out

    def component(self, g: Degree) -> list[int]:
        g = self.group.normalize(g)
        return [i for i, d in enumerate(self.degrees) if d == g]

    def present_degrees(self) -> list[Degree]:
        return sorted(set(self.degrees))

    def tensor_basis(self, n: int) -> Iterable[BasisTuple]:
        return itertools.product(range(self.dim), repeat=n)

    def block(self, degs: Sequence[Degree]) -> Iterable[BasisTuple]:
        return itertools.product(*(self.component(g) for g in degs))

    def __repr__(self) -> str:
        return f"GradedModule({self.group}, dims={self.dims()})"


@dataclass
class TensorElement:
    """Element of the n-th tensor power of a graded module (sparse, exact)."""

    host: GradedModule
    power: int
    coeffs: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {tuple(k): v for k, v in self.coeffs.items() if v}
        for k in self.coeffs:
            if len(k) != self.power:
                raise ValueError(f"basis tuple {k} does not have length {self.power}")

    @classmethod
    def basis(cls, host: GradedModule, t: BasisTuple, coeff=None) -> "TensorElement":
        return cls(host, len(t), {tuple(t): host.field(1 if coeff is None else coeff)})

    @classmethod
    def zero(cls, host: GradedModule, power: int) -> "TensorElement":
        return cls(host, power, {})

    def _check(self, other: "TensorElement"):
        if other.host is not self.host or other.power != self.power:
            raise ValueError("tensor elements live in different tensor powers")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        return TensorElement(self.host, self.power, add_into(dict(self.coeffs), other.coeffs))

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        return TensorElement(self.host, self.power,
                             add_into(dict(self.coeffs), other.coeffs, self.host.field(-1)))

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.host, self.power, {k: -v for k, v in self.coeffs.items()})

    def __rmul__(self, c) -> "TensorElement":
        c = self.host.field(c)
        return TensorElement(self.host, self.power, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.host is other.host and self.power == other.power
                and self.coeffs == other.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_homogeneous(self) -> bool:
        return len({self.host.tuple_degree(t) for t in self.coeffs}) <= 1

    def __str__(self) -> str:
        return render_element(self.host, self.coeffs)


def render_element(host: GradedModule, coeffs: Mapping[BasisTuple, CycNumber]) -> str:
    if not coeffs:
        return "0"
    parts = []
    for t in sorted(coeffs):
        labels = ",".join(host.labels[i] for i in t)
        parts.append(f"({coeffs[t]}) * ({labels})")
    return " + ".join(parts)


def braiding(chi: Bicharacter, x_deg: Degree, y_deg: Degree) -> tuple[str, RootOfUnity]:
    """tau(x (x) y) = chi(deg x, deg y) y (x) x: a swap and its scalar."""
    return "swap", chi(x_deg, y_deg)


def word_on_basis(host: GradedModule, letters: Sequence[Letter],
                  t: BasisTuple) -> tuple[int, BasisTuple]:
    """Image of a basis tuple under a braid word as (exponent of z_L, tuple)."""
    e = 0
    t = list(t)
    chi = host._chi
    for i, s in reversed(letters):
        a, b = t[i - 1], t[i]
        if s > 0:
            e += chi[a][b]
        else:
            e -= chi[b][a]
        t[i - 1], t[i] = b, a
    return e % host.L, tuple(t)


def apply_word_raw(host: GradedModule, letters: Sequence[Letter], coeffs: Mapping) -> dict:
    out: dict = {}
    for t, c in coeffs.items():
        e, t2 = word_on_basis(host, letters, t)
        add_into(out, {t2: c.mul_root(e)})
    return out


def apply_word(w: BraidWord, z: TensorElement) -> TensorElement:
    if w.strands != z.power:
        raise ValueError(f"braid on {w.strands} strands applied to tensor power {z.power}")
    return TensorElement(z.host, z.power, apply_word_raw(z.host, w.letters, z.coeffs))


def sn_action_raw(host: GradedModule, s: Permutation, zeta: RootOfUnity,
                  coeffs: Mapping) -> dict:
    lift = minimal_lift(s)
    shift = -len(lift) * zeta.k
    out: dict = {}
    for t, c in coeffs.items():
        e, t2 = word_on_basis(host, lift.letters, t)
        add_into(out, {t2: c.mul_root(e + shift)})
    return out


def sn_action(s: Permutation, zeta: RootOfUnity, z: TensorElement) -> TensorElement:
    """zeta^(-length(s)) times the minimal positive lift of s applied to z."""
    if s.n != z.power:
        raise ValueError("permutation size differs from tensor power")
    if zeta.L != z.host.L:
        raise ValueError("root of unity lives in a different cyclotomic field")
    return TensorElement(z.host, z.power, sn_action_raw(z.host, s, zeta, z.coeffs))


def check_yang_baxter(M: GradedModule, n: int) -> bool:
    """Both braid relations hold as operators on M^(x)n."""
    rels = []
    for i in range(1, n - 1):
        rels.append((((i, 1), (i + 1, 1), (i, 1)), ((i + 1, 1), (i, 1), (i + 1, 1))))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append((((i, 1), (j, 1)), ((j, 1), (i, 1))))
    for t in M.tensor_basis(n):
        for lhs, rhs in rels:
            if word_on_basis(M, lhs, t) != word_on_basis(M, rhs, t):
                return False
    return True


class GradedMap:
    """Linear map between tensor powers, homogeneous of degree ``shift``.

    ``matrix`` maps a source basis tuple to a sparse vector of target tuples.
    """

    def __init__(self, source: GradedModule, source_power: int, target: GradedModule,
                 target_power: int, matrix: Mapping[BasisTuple, Mapping], shift: Degree | None = None):
        self.source, self.source_power = source, source_power
        self.target, self.target_power = target, target_power
        self.shift = source.group.zero if shift is None else source.group.normalize(shift)
        self.matrix = {tuple(k): {tuple(t): c for t, c in v.items() if c}
                       for k, v in matrix.items()}
        g = source.group
        for k, v in self.matrix.items():
            want = g.add(source.tuple_degree(k), self.shift)
            for t in v:
                if target.tuple_degree(t) != want:
                    raise ValueError(f"map sends {k} to {t} outside degree {want}")

    def __call__(self, z: TensorElement) -> TensorElement:
        out: dict = {}
        for t, c in z.coeffs.items():
            img = self.matrix.get(t)
            if img:
                add_into(out, img, c)
        return TensorElement(self.target, self.target_power, out)

    def apply_at(self, coeffs: Mapping, slot: int) -> dict:
        """Apply to slots slot..slot+source_power-1 (1-based) of a longer tensor."""
        k = self.source_power
        out: dict = {}
        for t, c in coeffs.items():
            img = self.matrix.get(t[slot - 1:slot - 1 + k])
            if img:
                pre, post = t[:slot - 1], t[slot - 1 + k:]
                for u, a in img.items():
                    add_into(out, {pre + u + post: a * c})
        return out
