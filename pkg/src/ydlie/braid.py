"""Braid words, their images in the symmetric group, and special braids.

Convention: a word ``l_1 l_2 ... l_k`` denotes the composite operator
``l_1 o l_2 o ... o l_k``; the rightmost letter acts first.  Permutations
compose the same way, ``(s*t)(k) = s(t(k))``, so that ``to_permutation`` is a
homomorphism.  ``to_permutation(w)(k)`` is the slot to which the tensor factor
sitting in slot ``k`` is carried.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]   # (generator index 1..n-1, sign +1/-1)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for i, s in self.letters:
            if not 1 <= i < self.strands or s not in (1, -1):
                raise ValueError(f"bad letter {(i, s)} for {self.strands} strands")

    @classmethod
    def gens(cls, strands: int, *indices: int) -> "BraidWord":
        """Word from signed indices: ``gens(3, 1, -2)`` is t1 t2'."""
        return cls(strands, tuple((abs(i), 1 if i > 0 else -1) for i in indices))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return compose(self, other)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -s) for i, s in reversed(self.letters)))

    def reduce(self) -> "BraidWord":
        return free_reduce(self)

    def shift(self, offset: int, strands: int | None = None) -> "BraidWord":
        """The same braid acting on strands offset+1.. of a wider braid (1 (x) w)."""
        return BraidWord(strands or self.strands + offset,
                         tuple((i + offset, s) for i, s in self.letters))

    def is_positive(self) -> bool:
        return all(s == 1 for _, s in self.letters)

    def __str__(self) -> str:
        return render_word(self)


def compose(w: BraidWord, v: BraidWord) -> BraidWord:
    if w.strands != v.strands:
        raise ValueError(f"strand mismatch: {w.strands} vs {v.strands}")
    return BraidWord(w.strands, w.letters + v.letters)


def free_reduce(w: BraidWord) -> BraidWord:
    out: list[Letter] = []
    for i, s in w.letters:
        if out and out[-1] == (i, -s):
            out.pop()
        else:
            out.append((i, s))
    return BraidWord(w.strands, tuple(out))


def render_word(w: BraidWord) -> str:
    return " ".join(f"t{i}" + ("'" if s < 0 else "") for i, s in w.letters)


_LETTER = re.compile(r"^t(\d+)('?)$")


def parse_word(text: str, strands: int) -> BraidWord:
    """Parse "t1 t2' t1" (apostrophe marks an inverse)."""
    letters = []
    for tok in text.split():
        m = _LETTER.match(tok)
        if not m:
            raise ValueError(f"bad braid letter {tok!r}")
        letters.append((int(m.group(1)), -1 if m.group(2) else 1))
    return BraidWord(strands, tuple(letters))


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``images[k-1]`` is the image of k."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int) -> "Permutation":
        im = list(range(1, n + 1))
        im[i - 1], im[i] = im[i], im[i - 1]
        return cls(tuple(im))

    @classmethod
    def cycle(cls, n: int, cyc: Sequence[int]) -> "Permutation":
        """The cycle c1 -> c2 -> ... -> c1."""
        im = list(range(1, n + 1))
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            im[a - 1] = b
        return cls(tuple(im))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.images[other.images[k] - 1] for k in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, v in enumerate(self.images, 1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def length(self) -> int:
        im = self.images
        return sum(1 for a in range(self.n) for b in range(a + 1, self.n) if im[a] > im[b])

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))


def all_permutations(n: int) -> list[Permutation]:
    from itertools import permutations
    return [Permutation(p) for p in permutations(range(1, n + 1))]


def to_permutation(w: BraidWord) -> Permutation:
    im = list(range(1, w.strands + 1))   # im[k-1]: current slot of the factor from slot k
    for i, _ in reversed(w.letters):
        im = [i + 1 if x == i else i if x == i + 1 else x for x in im]
    return Permutation(tuple(im))


def minimal_lift(s: Permutation) -> BraidWord:
    """Lexicographically smallest reduced positive word mapping onto s."""
    letters = []
    cur = s
    n = s.n
    while not cur.is_identity():
        pos = cur.inverse().images
        # smallest left descent: s_i * cur is shorter
        i = next(i for i in range(1, n) if pos[i - 1] > pos[i])
        letters.append((i, 1))
        cur = Permutation.transposition(n, i) * cur
    return BraidWord(max(n, 1), tuple(letters))


def pi_element(i: int, j: int, n: int) -> BraidWord:
    """t_i' t_{i+1}' ... t_{j-2}' t_{j-1} t_{j-2} ... t_i."""
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    down = [(k, -1) for k in range(i, j - 1)]
    up = [(k, 1) for k in range(j - 2, i - 1, -1)]
    return BraidWord(n, tuple(down + [(j - 1, 1)] + up))


def full_twist(n: int) -> BraidWord:
    """(t1)(t2 t1)...(t_{n-1} ... t1): the positive half twist reversing all strands."""
    letters: list[Letter] = []
    for top in range(1, n):
        letters.extend((k, 1) for k in range(top, 0, -1))
    return BraidWord(n, tuple(letters))


def descending(a: int, b: int, strands: int) -> BraidWord:
    """t_a t_{a-1} ... t_b (empty if a < b)."""
    return BraidWord(strands, tuple((k, 1) for k in range(a, b - 1, -1)))


def _lift_positive(g: int, i: int) -> list[Letter]:
    if g > i:
        return [(g + 1, 1)]
    if g < i - 1:
        return [(g, 1)]
    if g == i - 1:
        return [(i, 1), (i - 1, 1)]
    return [(i, 1), (i + 1, 1)]


def _moved(g: int, cur: int) -> int:
    return g + 1 if cur == g else g if cur == g + 1 else cur


def phi_lift(w: BraidWord, i: int) -> tuple[BraidWord, int]:
    """Lift w to n+1 strands by doubling strand i.

    Returns the lifted word and the slot j = to_permutation(w)(i) where the
    doubled strand ends.  Applying a map P (x) P -> P at slot i and then w
    equals applying the lift and then the map at slot j.
    """
    n = w.strands
    if not 1 <= i <= n:
        raise ValueError(f"strand {i} out of range 1..{n}")
    cur = i
    pieces: list[list[Letter]] = []
    for g, s in reversed(w.letters):
        nxt = _moved(g, cur)
        if s > 0:
            pieces.append(_lift_positive(g, cur))
        else:
            # inverse of the lift of the positive letter, read from the far side
            pieces.append([(k, -1) for k, _ in reversed(_lift_positive(g, nxt))])
        cur = nxt
    letters = [l for piece in reversed(pieces) for l in piece]
    return BraidWord(n + 1, tuple(letters)), cur


def letters_of(indices: Iterable[int]) -> tuple[Letter, ...]:
    return tuple((abs(i), 1 if i > 0 else -1) for i in indices)
