"""Exact arithmetic in the cyclotomic field Q(z), z a primitive L-th root of unity.

Elements are stored as integer numerator vectors over a common positive
denominator, reduced modulo the L-th cyclotomic polynomial.  Two elements are
equal iff their stored coefficients agree.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _polydivmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, lowest degree first, den monic
    num = list(num)
    dq = len(den) - 1
    if len(num) <= dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for k in range(len(num) - 1, dq - 1, -1):
        c = num[k]
        if c:
            quot[k - dq] = c
            for j, d in enumerate(den):
                num[k - dq + j] -= c * d
    return quot, num[:dq]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _polydivmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


def _normalize(nums: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    nums = tuple(nums)
    if den < 0:
        nums, den = tuple(-a for a in nums), -den
    g = math.gcd(den, *nums)
    if g > 1:
        nums, den = tuple(a // g for a in nums), den // g
    if not any(nums):
        den = 1
    return nums, den


class CyclotomicField:
    """The field Q(zeta_L).  One instance per L (use :func:`field`)."""

    def __init__(self, L: int):
        if L < 1:
            raise ValueError("ambient order must be positive")
        self.L = L
        self.degree = euler_phi(L)
        phi = cyclotomic_polynomial(L)
        # powers[k] = z^k reduced modulo Phi_L, for 0 <= k < 2L
        d = self.degree
        powers = []
        cur = [1] + [0] * (d - 1) if d > 1 else [1]
        for _ in range(2 * L):
            powers.append(tuple(cur))
            nxt = [0] + cur
            top = nxt.pop()
            if top and d:
                for j in range(d):
                    nxt[j] -= top * phi[j]
            cur = nxt if d > 1 else [cur[0] * (-phi[0])]
        self._powers = powers
        self.zero = CycNumber(self, (0,) * d, 1)
        self.one = CycNumber(self, powers[0], 1)
        self._roots = [CycNumber(self, powers[k], 1) for k in range(L)]
        self._root_index = {powers[k]: k for k in range(L)}
        self._inverses: dict = {}

    def __repr__(self) -> str:
        return f"CyclotomicField({self.L})"

    def __reduce__(self):
        return (field, (self.L,))

    def root(self, k: int) -> "CycNumber":
        """z^k."""
        return self._roots[k % self.L]

    def __call__(self, value) -> "CycNumber":
        if isinstance(value, CycNumber):
            if value.field is not self:
                raise ValueError(f"ambient order mismatch: {value.field.L} vs {self.L}")
            return value
        if isinstance(value, RootOfUnity):
            if value.L != self.L:
                raise ValueError(f"ambient order mismatch: {value.L} vs {self.L}")
            return self.root(value.k)
        if isinstance(value, (int, Fraction)):
            q = Fraction(value)
            return CycNumber(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)
        raise TypeError(f"cannot convert {type(value).__name__} into {self!r}")

    def from_exponents(self, counts: Mapping[int, int | Fraction]) -> "CycNumber":
        """Sum of c * z^k over the mapping k -> c."""
        den = 1
        for c in counts.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        acc = [0] * self.degree
        for k, c in counts.items():
            if not c:
                continue
            c = int(c * den)
            for j, a in enumerate(self._powers[k % self.L]):
                if a:
                    acc[j] += c * a
        return CycNumber(self, *_normalize(acc, den))

    def from_coeffs(self, coeffs: Iterable[int | Fraction]) -> "CycNumber":
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.degree:
            return self.from_exponents({k: c for k, c in enumerate(coeffs)})
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        return CycNumber(self, *_normalize((int(c * den) for c in coeffs), den))

    def parse(self, text: str) -> "CycNumber":
        return parse_cyc(text, self)


@lru_cache(maxsize=None)
def field(L: int) -> CyclotomicField:
    return CyclotomicField(L)


class CycNumber:
    """Element of Q(zeta_L): sum_j (nums[j] / den) z^j, reduced mod Phi_L."""

    __slots__ = ("field", "nums", "den", "_hash")

    def __init__(self, fld: CyclotomicField, nums: tuple[int, ...], den: int = 1):
        self.field = fld
        self.nums = nums
        self.den = den
        self._hash = None

    @property
    def L(self) -> int:
        return self.field.L

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.nums)

    def _coerce(self, other) -> "CycNumber":
        if isinstance(other, CycNumber):
            if other.field is not self.field:
                raise ValueError(f"ambient order mismatch: {self.L} vs {other.L}")
            return other
        return self.field(other)

    def __bool__(self) -> bool:
        return any(self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, RootOfUnity)):
            other = self.field(other)
        if not isinstance(other, CycNumber):
            return NotImplemented
        return self.field is other.field and self.den == other.den and self.nums == other.nums

    def __hash__(self) -> int:
        if self._hash is None:
            if not any(self.nums[1:]):
                self._hash = hash(Fraction(self.nums[0], self.den)) if self.nums else 0
            else:
                self._hash = hash((self.field.L, self.nums, self.den))
        return self._hash

    def __add__(self, other) -> "CycNumber":
        o = self._coerce(other)
        if self.den == o.den:
            return CycNumber(self.field, *_normalize(
                (a + b for a, b in zip(self.nums, o.nums)), self.den))
        return CycNumber(self.field, *_normalize(
            (a * o.den + b * self.den for a, b in zip(self.nums, o.nums)), self.den * o.den))

    __radd__ = __add__

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.field, tuple(-a for a in self.nums), self.den)

    def __sub__(self, other) -> "CycNumber":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycNumber":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CycNumber":
        if isinstance(other, int):
            return CycNumber(self.field, *_normalize((a * other for a in self.nums), self.den))
        o = self._coerce(other)
        powers = self.field._powers
        d = self.field.degree
        acc = [0] * d
        for i, a in enumerate(self.nums):
            if not a:
                continue
            for j, b in enumerate(o.nums):
                if not b:
                    continue
                ab = a * b
                for t, c in enumerate(powers[i + j]):
                    if c:
                        acc[t] += ab * c
        return CycNumber(self.field, *_normalize(acc, self.den * o.den))

    __rmul__ = __mul__

    def mul_root(self, k: int) -> "CycNumber":
        """Multiply by z^k (cheaper than a general product)."""
        k %= self.field.L
        if k == 0:
            return self
        powers = self.field._powers
        acc = [0] * self.field.degree
        for i, a in enumerate(self.nums):
            if a:
                for t, c in enumerate(powers[i + k]):
                    if c:
                        acc[t] += a * c
        return CycNumber(self.field, tuple(acc), self.den)

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        fld = self.field
        if not any(self.nums[1:]):
            q = Fraction(self.den, self.nums[0])
            return CycNumber(fld, (q.numerator,) + self.nums[1:], q.denominator)
        k = fld._root_index.get(self.nums) if self.den == 1 else None
        if k is not None:
            return fld.root(-k)
        key = (self.nums, self.den)
        inv = fld._inverses.get(key)
        if inv is None:
            inv = self._solve_inverse()
            if len(fld._inverses) < 1 << 16:
                fld._inverses[key] = inv
        return inv

    def _solve_inverse(self) -> "CycNumber":
        d = self.field.degree
        # solve (multiplication-by-self matrix) x = e_0 over Q
        cols = [self.mul_root(j) for j in range(d)]
        rows = [[Fraction(cols[j].nums[i], cols[j].den) for j in range(d)]
                + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            p = next(r for r in range(c, d) if rows[r][c])
            rows[c], rows[p] = rows[p], rows[c]
            inv = 1 / rows[c][c]
            rows[c] = [v * inv for v in rows[c]]
            for r in range(d):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[c])]
        return self.field.from_coeffs(row[d] for row in rows)

    def __truediv__(self, other) -> "CycNumber":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "CycNumber":
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "CycNumber":
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def __str__(self) -> str:
        return render_cyc(self)

    def __repr__(self) -> str:
        return f"CycNumber<L={self.L}>({render_cyc(self)})"


def embed(a: CycNumber, target: CyclotomicField) -> CycNumber:
    """Image of a under Q(z_L) -> Q(z_M), z_L -> z_M^(M/L), for L | M."""
    if target.L % a.L:
        raise ValueError(f"Q(z_{a.L}) does not embed into Q(z_{target.L}) this way")
    m = target.L // a.L
    return target.from_exponents({j * m: q for j, q in enumerate(a.coeffs) if q})


def halve(a: CycNumber, target: CyclotomicField) -> CycNumber:
    """Inverse of embed for Q(z_N) -> Q(z_2N) with N odd, using z_2N = -z_N^((N+1)/2)."""
    N = target.L
    if a.L == N:
        return a
    if a.L != 2 * N or N % 2 == 0:
        raise ValueError(f"Q(z_{a.L}) is not Q(z_{N}) written with a doubled generator")
    img = -target.root((N + 1) // 2)
    acc, power = target.zero, target.one
    for q in a.coeffs:
        if q:
            acc = acc + power * q
        power = power * img
    return acc


def _render_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_cyc(a: CycNumber) -> str:
    """Render as "a0 + a1*z + a2*z^2 ...", omitting zero terms."""
    parts = []
    for j, q in enumerate(a.coeffs):
        if not q:
            continue
        mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
        parts.append(_render_q(q) if not mono else f"{_render_q(q)}*{mono}")
    return " + ".join(parts) if parts else "0"


_TERM = re.compile(r"([+-]*)(\d+(?:/\d+)?)?(\*?z(?:\^(-?\d+))?)?")


def parse_cyc(text: str, fld: CyclotomicField) -> CycNumber:
    """Inverse of :func:`render_cyc`; also accepts "z^k", "-z", "3/2*z^5" sums."""
    s = text.replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ValueError("empty scalar")
    counts: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse scalar {text!r} at position {pos}")
        if m.group(3) and m.group(3).startswith("*") and not m.group(2):
            raise ValueError(f"cannot parse scalar {text!r} at position {pos}")
        sign = -1 if m.group(1).count("-") % 2 else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        e = 0
        if m.group(3):
            e = int(m.group(4)) if m.group(4) is not None else 1
        key = e % fld.L
        counts[key] = counts.get(key, Fraction(0)) + sign * coef
        pos = m.end()
    return fld.from_exponents(counts)


class RootOfUnity:
    """z_L^k, kept as an exponent so that products stay integer arithmetic."""

    __slots__ = ("L", "k")

    def __init__(self, L: int, k: int):
        if L < 1:
            raise ValueError("ambient order must be positive")
        self.L = L
        self.k = k % L

    @property
    def order(self) -> int:
        return self.L // math.gcd(self.L, self.k)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if other.L != self.L:
            raise ValueError("ambient order mismatch")
        return RootOfUnity(self.L, self.k + other.k)

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity(self.L, self.k * e)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.L, -self.k)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootOfUnity) and (self.L, self.k) == (other.L, other.k)

    def __hash__(self) -> int:
        return hash((self.L, self.k))

    def __repr__(self) -> str:
        return f"RootOfUnity(L={self.L}, k={self.k})"

    def __str__(self) -> str:
        return f"z^{self.k}"

    def value(self) -> CycNumber:
        return field(self.L).root(self.k)


def is_primitive_root(z: RootOfUnity, n: int) -> bool:
    return z.order == n


def primitive_roots(L: int, n: int) -> list[RootOfUnity]:
    """All primitive n-th roots of unity inside Q(zeta_L) (empty unless n | L)."""
    if L % n:
        return []
    return [RootOfUnity(L, k) for k in range(L) if L // math.gcd(k, L) == n]


@lru_cache(maxsize=None)
def partitions_in_box(i: int, j: int, t: int) -> int:
    """Number of partitions of t into at most j parts, each part at most i."""
    if t < 0 or t > i * j:
        return 0
    if t == 0:
        return 1
    if i == 0 or j == 0:
        return 0
    # either fewer than j parts, or j parts each >= 1 (subtract 1 from each)
    return partitions_in_box(i, j - 1, t) + partitions_in_box(i - 1, j, t - j)


def c_coefficient(n: int, i: int, zeta: RootOfUnity) -> CycNumber:
    """sum_t p(i, n-i, t) zeta^(-t)."""
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    counts: dict[int, int] = {}
    for t in range(i * (n - i) + 1):
        c = partitions_in_box(i, n - i, t)
        if c:
            key = (-t * zeta.k) % zeta.L
            counts[key] = counts.get(key, 0) + c
    return field(zeta.L).from_exponents(counts)
