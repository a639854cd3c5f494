"""Sparse exact linear algebra over a cyclotomic field.

Vectors are plain dicts mapping an orderable key (basis tuple, word, ...) to a
nonzero :class:`CycNumber`.  Zero coefficients are never stored.
"""
from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping

Vec = dict


def add_into(acc: dict, v: Mapping, c=None) -> dict:
    """acc += c * v, in place."""
    for k, a in v.items():
        if c is not None:
            a = a * c
        b = acc.get(k)
        if b is None:
            if a:
                acc[k] = a
        else:
            s = b + a
            if s:
                acc[k] = s
            else:
                del acc[k]
    return acc


def lincomb(terms: Iterable[tuple[object, Mapping]]) -> dict:
    acc: dict = {}
    for c, v in terms:
        add_into(acc, v, c)
    return acc


def scale(v: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: a * c for k, a in v.items()}


def sub(u: Mapping, v: Mapping) -> dict:
    acc = dict(u)
    for k, a in v.items():
        b = acc.get(k)
        if b is None:
            if a:
                acc[k] = -a
        else:
            s = b - a
            if s:
                acc[k] = s
            else:
                del acc[k]
    return acc


def clean(v: Mapping) -> dict:
    return {k: a for k, a in v.items() if a}


class Echelon:
    """Incrementally maintained reduced row echelon form.

    A row's pivot is its smallest key under ``key`` by default, or the
    largest with ``largest=True`` (used for rewriting towards
    smaller normal forms).
    """

    def __init__(self, key: Callable[[Hashable], object] | None = None, largest: bool = False):
        self._key = key
        self._largest = largest
        self.rows: dict = {}          # pivot -> row (pivot coefficient 1)
        self._cols: dict = {}         # key -> set of pivots whose row contains key

    def __len__(self) -> int:
        return len(self.rows)

    def _pick(self, keys) -> Hashable:
        if self._largest:
            return max(keys, key=self._key) if self._key else max(keys)
        return min(keys, key=self._key) if self._key else min(keys)

    def reduce(self, v: Mapping) -> dict:
        v = clean(v)
        for p in [k for k in v if k in self.rows]:
            c = v.get(p)
            if c:
                add_into(v, self.rows[p], -c)
        return v

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Mapping) -> dict:
        """Coefficients of v on the rows, assuming v lies in the span."""
        return {p: v[p] for p in v if p in self.rows}

    def add(self, v: Mapping) -> Hashable | None:
        """Insert v; returns the new pivot, or None if v was dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = self._pick(r.keys())
        inv = r[p].inverse()
        r = {k: a * inv for k, a in r.items()}
        for q in list(self._cols.get(p, ())):
            row = self.rows[q]
            c = row[p]
            for k in row:
                self._cols[k].discard(q)
            add_into(row, r, -c)
            for k in row:
                self._cols.setdefault(k, set()).add(q)
        self.rows[p] = r
        for k in r:
            self._cols.setdefault(k, set()).add(p)
        return p

    def basis(self) -> list[dict]:
        """Rows sorted by pivot."""
        return [self.rows[p] for p in sorted(self.rows, key=self._key)]


def echelon_basis(vectors: Iterable[Mapping], key=None) -> list[dict]:
    ech = Echelon(key)
    for v in vectors:
        ech.add(v)
    return ech.basis()


def rank(vectors: Iterable[Mapping]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def kernel(domain: Iterable[Hashable], image: Callable[[Hashable], Mapping],
           fld) -> list[dict]:
    """Echelon basis of the kernel of the linear map e -> image(e) on the span of domain."""
    # rows are kept unnormalized; a row is divided by its pivot only when it is used
    images: dict = {}          # pivot -> (image row, domain combination, 1 / pivot coeff)
    cols: dict = {}            # image key -> pivots whose row contains it
    kern = []
    one = fld.one
    for e in domain:
        w = dict(image(e))
        track = {e: one}
        for p in [k for k in w if k in images]:
            a = w.get(p)
            if a:
                row, comb, inv = images[p]
                a = a * inv
                add_into(w, row, -a)
                add_into(track, comb, -a)
        if not w:
            kern.append(track)
            continue
        p = min(w)
        inv = w[p].inverse()
        for q in list(cols.get(p, ())):
            row, comb, qinv = images[q]
            a = row[p] * inv
            for k in row:
                cols[k].discard(q)
            add_into(row, w, -a)
            add_into(comb, track, -a)
            for k in row:
                cols.setdefault(k, set()).add(q)
        images[p] = (w, track, inv)
        for k in w:
            cols.setdefault(k, set()).add(p)
    return echelon_basis(kern)
