"""Braided tensor squares, the main theorem, and truncated enveloping algebras.

U(P) = T(P)/I is handled up to a word-length cap d.  Words are tuples of
generator indices; normal forms come from an echelon basis of the ideal whose
pivot is the largest word in (length, word) order, so the standard monomials
(non-pivot words) form a basis of the quotient.  Products of length > d are
reported as unknown (None) rather than guessed.
"""
from __future__ import annotations

import itertools
import json
from typing import Mapping, Sequence

from .brlie import (BracketStructure, GradedAlgebra, _lifts, bracket, check_subalgebra,
                    lie_from_algebra)
from .cyclo import RootOfUnity, c_coefficient, field, parse_cyc
from .linalg import Echelon, add_into, kernel
from .report import InvariantViolation, Report
from .symzeta import Subspace, symmetrize_graded
from .ydspace import (Bicharacter, FiniteAbelianGroup, GradedModule, render_element,
                      word_on_basis)


# -- A (x) A --------------------------------------------------------------------

def tensor_square_multiply(A: GradedAlgebra, u: Mapping, v: Mapping) -> dict:
    """(a (x) b)(c (x) d) = chi(deg b, deg c) ac (x) bd, on dicts keyed by (a, b)."""
    M = A.carrier
    out: dict = {}
    for (a, b), x in u.items():
        for (c, d), y in v.items():
            ac = A.mul_basis(a, c)
            bd = A.mul_basis(b, d)
            if not ac or not bd:
                continue
            s = (x * y).mul_root(M.chi_exp(b, c))
            for (p,), cp in ac.items():
                for (q,), cq in bd.items():
                    add_into(out, {(p, q): s * cp * cq})
    return out


def tensor_square(A: GradedAlgebra) -> GradedAlgebra:
    """A (x) A as an algebra on its own graded carrier (basis index a*dim + b)."""
    M = A.carrier
    m = M.dim
    g = M.group
    carrier = GradedModule(M.chi, [g.add(M.degree(a), M.degree(b)) for a in range(m) for b in range(m)],
                           [f"{M.labels[a]}|{M.labels[b]}" for a in range(m) for b in range(m)])
    table = {}
    for a, b, c, d in itertools.product(range(m), repeat=4):
        prod = tensor_square_multiply(A, {(a, b): M.field.one}, {(c, d): M.field.one})
        if prod:
            table[(a * m + b, c * m + d)] = {p * m + q: x for (p, q), x in prod.items()}
    unit = {}
    for (a,), x in A.unit.items():
        for (b,), y in A.unit.items():
            unit[a * m + b] = x * y
    T = GradedAlgebra(carrier, table, unit, validate=False)
    T.factor = A
    return T


def p_map(A: GradedAlgebra, x: Mapping) -> dict:
    """p(x) = x (x) 1 + 1 (x) x, keyed by pairs (a, b)."""
    out: dict = {}
    for (a,), c in x.items():
        for (u,), e in A.unit.items():
            add_into(out, {(a, u): c * e})
            add_into(out, {(u, a): c * e})
    return out


def _flatten(T: GradedAlgebra, pairs: Mapping) -> dict:
    m = T.factor.dim
    return {(a * m + b,): c for (a, b), c in pairs.items()}


def p_power(A: GradedAlgebra, T: GradedAlgebra, coeffs: Mapping) -> dict:
    """p^n(z) as an element of (A (x) A)^n."""
    m = A.dim
    fld = A.field
    cache = {}
    out: dict = {}
    for t, c in coeffs.items():
        vecs = []
        for i in t:
            if i not in cache:
                cache[i] = [(a * m + b, x) for (a, b), x in p_map(A, {(i,): fld.one}).items()]
            vecs.append(cache[i])
        for combo in itertools.product(*vecs):
            coef = c
            for _, x in combo:
                coef = coef * x
            add_into(out, {tuple(k for k, _ in combo): coef})
    return out


def verify_main_theorem(A: GradedAlgebra, n: int, zeta: RootOfUnity,
                        T: GradedAlgebra | None = None) -> Report:
    """[p^n(z)] = p([z]) on a basis of A^n(zeta)."""
    if T is None:
        T = tensor_square(A)
    rep = Report()
    M = A.carrier
    dom = symmetrize_graded(M, n, zeta)
    tdom = symmetrize_graded(T.carrier, n, zeta)
    for idx, row in enumerate(dom.basis):
        pz = p_power(A, T, row)
        if tdom.reduce(pz):
            raise InvariantViolation(f"p^{n}(z) left (A (x) A)^{n}({zeta}) for z = {render_element(M, row)}")
        lhs = bracket(T, n, zeta, pz).coeffs
        rhs = _flatten(T, p_map(A, bracket(A, n, zeta, row).coeffs))
        d = dict(lhs)
        add_into(d, rhs, M.field(-1))
        rep.add("mainthm", n, zeta, idx, not d,
                f"z = {render_element(M, row)}; [p^n z] - p[z] = {render_element(T.carrier, d)}")
    return rep


def c_expansion(A: GradedAlgebra, n: int, zeta: RootOfUnity, coeffs: Mapping) -> dict[int, dict]:
    """i -> c_i (nabla^i (x) nabla^(n-i)) sum_sigma sigma(z), keyed by pairs (a, b)."""
    M = A.carrier
    sym: dict = {}
    for _, letters, length in _lifts(n):
        for t, c in coeffs.items():
            e, t2 = word_on_basis(M, letters, t)
            add_into(sym, {t2: c.mul_root(e - length * zeta.k)})
    out = {}
    for i in range(n + 1):
        ci = c_coefficient(n, i, zeta)
        acc: dict = {}
        if ci:
            for t, c in sym.items():
                left, right = A.nabla_tuple(t[:i]), A.nabla_tuple(t[i:])
                for (a,), x in left.items():
                    for (b,), y in right.items():
                        add_into(acc, {(a, b): ci * c * x * y})
        out[i] = acc
    return out


# -- truncated enveloping algebras ------------------------------------------------

def _wkey(w):
    return (len(w), w)


def relations(P: BracketStructure, cap: int) -> list[dict]:
    """[z] - sum_sigma sigma(z) for each domain basis row z with 2 <= n <= cap, as word vectors."""
    M = P.carrier
    out = []
    for n, zeta in P.keys():
        if n < 2 or n > cap:
            continue
        for row in P.space(n, zeta).basis:
            val = P.apply(n, zeta, row, check=False)
            if val is None:
                raise ValueError("bracket value unavailable while building relations")
            r = dict(val)
            for _, letters, length in _lifts(n):
                for t, c in row.items():
                    e, t2 = word_on_basis(M, letters, t)
                    add_into(r, {t2: -c.mul_root(e - length * zeta.k)})
            if r:
                out.append(r)
    return out


def _words(m: int, max_len: int):
    for k in range(max_len + 1):
        yield from itertools.product(range(m), repeat=k)


def _ideal_rows(rels: Sequence[dict], m: int, cap: int) -> Echelon:
    ech = Echelon(key=_wkey, largest=True)
    for r in rels:
        top = max(len(w) for w in r)
        room = cap - top
        if room < 0:
            continue
        for la in range(room + 1):
            for a in itertools.product(range(m), repeat=la):
                for lb in range(room - la + 1):
                    for b in itertools.product(range(m), repeat=lb):
                        ech.add({a + w + b: c for w, c in r.items()})
    return ech


class TruncatedHopf:
    """U(P) up to word length ``cap``: basis of standard words with m, Delta, eps, S."""

    def __init__(self, gens: GradedModule, cap: int, words: Sequence[tuple],
                 ideal: Mapping | None = None, relations_: Sequence[dict] = (),
                 saturation: Sequence[int] = (), tables: dict | None = None):
        self.gens = gens
        self.chi = gens.chi
        self.cap = cap
        self.words = [tuple(w) for w in words]
        self.index = {w: i for i, w in enumerate(self.words)}
        self._ideal = dict(ideal) if ideal is not None else None
        self.relations = list(relations_)
        self.saturation = list(saturation)
        g = gens.group
        degs = [g.sum(gens.degree(i) for i in w) for w in self.words]
        labels = [".".join(gens.labels[i] for i in w) if w else "1" for w in self.words]
        self.carrier = GradedModule(self.chi, degs, labels)
        self._mult: dict = {}
        self._delta: dict = {}
        self._anti: dict = {}
        if tables is not None:
            self._mult = tables["mult"]
            self._delta = tables["delta"]
            self._anti = tables["antipode"]
        self.algebra = _HopfAlgebraView(self)

    # normal forms
    @property
    def field(self):
        return self.chi.field

    @property
    def dim(self) -> int:
        return len(self.words)

    def dims(self) -> list[int]:
        out = [0] * (self.cap + 1)
        for w in self.words:
            out[len(w)] += 1
        return out

    def normal_form(self, v: Mapping) -> dict:
        """Reduce a word vector of length <= cap modulo the ideal; keys become basis indices."""
        if self._ideal is None:
            raise ValueError("this object was loaded from a dump; it has no ideal to reduce with")
        v = dict(v)
        for p in [k for k in v if k in self._ideal]:
            c = v.get(p)
            if c:
                add_into(v, self._ideal[p], -c)
        return {(self.index[w],): c for w, c in v.items()}

    def mult(self, i: int, j: int) -> dict | None:
        key = (i, j)
        if key not in self._mult:
            u, w = self.words[i], self.words[j]
            if len(u) + len(w) > self.cap:
                self._mult[key] = None
            else:
                self._mult[key] = self.normal_form({u + w: self.field.one})
        return self._mult[key]

    def mul(self, u: Mapping, v: Mapping) -> dict | None:
        out: dict = {}
        for (i,), x in u.items():
            for (j,), y in v.items():
                p = self.mult(i, j)
                if p is None:
                    return None
                add_into(out, p, x * y)
        return out

    def unit(self) -> dict:
        return {(self.index[()],): self.field.one}

    def generator(self, k: int) -> dict:
        """Image of the k-th generator (a normal form, in case it is not standard)."""
        return self.normal_form({(k,): self.field.one})

    def coproduct(self, i: int) -> dict:
        """Delta(word_i) keyed by basis index pairs; braided shuffle of the word."""
        if i not in self._delta:
            w = self.words[i]
            M = self.gens
            fld = self.field
            out: dict = {}
            k = len(w)
            for mask in range(1 << k):
                left = tuple(w[p] for p in range(k) if mask >> p & 1)
                right = tuple(w[p] for p in range(k) if not mask >> p & 1)
                e = 0
                for p in range(k):
                    if mask >> p & 1:
                        continue
                    for q in range(p + 1, k):
                        if mask >> q & 1:
                            e += M.chi_exp(w[p], w[q])
                lv = self.normal_form({left: fld.one})
                rv = self.normal_form({right: fld.root(e)})
                for (a,), x in lv.items():
                    for (b,), y in rv.items():
                        add_into(out, {(a, b): x * y})
            self._delta[i] = out
        return self._delta[i]

    def delta(self, v: Mapping) -> dict:
        out: dict = {}
        for (i,), c in v.items():
            add_into(out, self.coproduct(i), c)
        return out

    def counit(self, i: int):
        return self.field.one if not self.words[i] else self.field.zero

    def antipode_of(self, i: int) -> dict:
        """S(x1...xk) = (-1)^k prod_{p<q} chi(x_p, x_q) xk...x1, reduced."""
        if i not in self._anti:
            w = self.words[i]
            M = self.gens
            e = sum(M.chi_exp(w[p], w[q]) for p in range(len(w)) for q in range(p + 1, len(w)))
            c = self.field.root(e) * (-1) ** len(w)
            self._anti[i] = self.normal_form({tuple(reversed(w)): c})
        return self._anti[i]

    def antipode(self, v: Mapping) -> dict:
        out: dict = {}
        for (i,), c in v.items():
            add_into(out, self.antipode_of(i), c)
        return out

    def tensor_mul(self, u: Mapping, v: Mapping) -> dict | None:
        """Braided product on H (x) H."""
        C = self.carrier
        out: dict = {}
        for (a, b), x in u.items():
            for (c, d), y in v.items():
                ac, bd = self.mult(a, c), self.mult(b, d)
                if ac is None or bd is None:
                    return None
                s = (x * y).mul_root(C.chi_exp(b, c))
                for (p,), cp in ac.items():
                    for (q,), cq in bd.items():
                        add_into(out, {(p, q): s * cp * cq})
        return out

    def is_primitive(self, v: Mapping) -> bool:
        d = self.delta(v)
        e = self.index[()]
        for (i,), c in v.items():
            add_into(d, {(i, e): -c})
            add_into(d, {(e, i): -c})
        return not d

    def with_coproduct(self, i: int, value: Mapping) -> "TruncatedHopf":
        """A copy with Delta(word_i) overwritten (negative controls)."""
        H = TruncatedHopf(self.gens, self.cap, self.words, self._ideal, self.relations, self.saturation)
        H._delta[i] = dict(value)
        return H

    # persistence
    def materialize(self):
        for i in range(self.dim):
            self.coproduct(i)
            self.antipode_of(i)
            for j in range(self.dim):
                self.mult(i, j)

    def dump(self) -> str:
        self.materialize()
        M = self.gens
        g = M.group

        def vec(v):
            return None if v is None else [[list(k), str(c)] for k, c in sorted(v.items())]

        data = {
            "cap": self.cap,
            "L": self.chi.L,
            "group": list(g.orders),
            "chi": [[list(a), list(b), self.chi.exp(a, b)] for a in g.elements() for b in g.elements()],
            "generators": [[lab, list(M.degree(i))] for i, lab in enumerate(M.labels)],
            "dims": self.dims(),
            "words": [list(w) for w in self.words],
            "mult": [[i, j, vec(self._mult[(i, j)])] for i in range(self.dim) for j in range(self.dim)],
            "delta": [[i, vec(self._delta[i])] for i in range(self.dim)],
            "counit": [str(self.counit(i)) for i in range(self.dim)],
            "antipode": [[i, vec(self._anti[i])] for i in range(self.dim)],
        }
        return json.dumps(data, indent=None, separators=(",", ":"))

    @classmethod
    def load(cls, text: str) -> "TruncatedHopf":
        data = json.loads(text)
        L = data["L"]
        fld = field(L)
        G = FiniteAbelianGroup(tuple(data["group"]))
        table = {}
        gens_ = [G.generator(a) for a in range(G.rank)]
        for a, b, k in data["chi"]:
            table[(tuple(a), tuple(b))] = k
        chi = Bicharacter(G, L, {(i, j): table[(gens_[i], gens_[j])]
                                 for i in range(G.rank) for j in range(G.rank)})
        M = GradedModule(chi, [tuple(d) for _, d in data["generators"]],
                         [lab for lab, _ in data["generators"]])

        def vec(v):
            return None if v is None else {tuple(k): parse_cyc(c, fld) for k, c in v}

        tables = {
            "mult": {(i, j): vec(v) for i, j, v in data["mult"]},
            "delta": {i: vec(v) for i, v in data["delta"]},
            "antipode": {i: vec(v) for i, v in data["antipode"]},
        }
        return cls(M, data["cap"], [tuple(w) for w in data["words"]], None, tables=tables)


class _HopfAlgebraView:
    """H as an algebra for bracket evaluation; products beyond the cap give None."""

    def __init__(self, H: TruncatedHopf):
        self.H = H
        self.carrier = H.carrier
        self._nabla: dict = {}
        self._sym: dict = {}

    @property
    def field(self):
        return self.H.field

    def nabla_tuple(self, t):
        if t in self._nabla:
            return self._nabla[t]
        if len(t) == 0:
            v = self.H.unit()
        elif len(t) == 1:
            v = {t: self.field.one}
        else:
            head = self.nabla_tuple(t[:-1])
            v = None if head is None else self.H.mul(head, {(t[-1],): self.field.one})
        self._nabla[t] = v
        return v

    symmetric_product = GradedAlgebra.symmetric_product


def enveloping_truncated(P: BracketStructure, cap: int, max_margin: int = 1) -> TruncatedHopf:
    if cap < 1:
        raise ValueError("the degree cap must be at least 1")
    M = P.carrier
    m = M.dim
    rels = relations(P, cap)
    history = []
    ideal = None
    for margin in range(max_margin + 1):
        ech = _ideal_rows(rels, m, cap + margin)
        rows = {p: r for p, r in ech.rows.items() if len(p) <= cap}
        history.append(len(rows))
        ideal = rows
        if margin and history[-1] == history[-2]:
            break
    words = [w for w in _words(m, cap) if w not in ideal]
    return TruncatedHopf(M, cap, words, ideal, rels, history)


def check_antipode(H: TruncatedHopf) -> Report:
    """nabla(1 (x) S) Delta = eta eps = nabla(S (x) 1) Delta on every basis element."""
    rep = Report()
    fld = H.field
    C = H.carrier
    for i in range(H.dim):
        eps = {(H.index[()],): fld.one} if not H.words[i] else {}
        for side in ("right", "left"):
            acc: dict | None = {}
            for (a, b), c in H.coproduct(i).items():
                if side == "right":
                    prod = H.mul({(a,): fld.one}, H.antipode_of(b))
                else:
                    prod = H.mul(H.antipode_of(a), {(b,): fld.one})
                if prod is None:
                    acc = None
                    break
                add_into(acc, prod, c)
            name = "antipode-" + side
            if acc is None:
                rep.add(name, None, None, i, None, "beyond truncation cap")
            else:
                d = dict(acc)
                add_into(d, eps, fld(-1))
                rep.add(name, None, None, i, not d,
                        f"x = {C.labels[i]}; result - eta eps = {render_element(C, d)}")
    return rep


def primitives(H: TruncatedHopf) -> Subspace:
    """Ker(Delta - p) on words of length <= cap - 1."""
    fld = H.field
    e = H.index[()]
    dom = [i for i, w in enumerate(H.words) if len(w) <= H.cap - 1]

    def image(i):
        d = dict(H.coproduct(i))
        add_into(d, {(i, e): -fld.one})
        add_into(d, {(e, i): -fld.one})
        return d

    vecs = [{(i,): c for i, c in v.items()} for v in kernel(dom, image, fld)]
    return Subspace(H.carrier, 1, vecs)


def check_primitives_lie(H: TruncatedHopf, max_n: int) -> Report:
    """Generators are primitive, and brackets of primitives are primitive (within the cap)."""
    rep = Report()
    C = H.carrier
    for k in range(H.gens.dim):
        v = H.generator(k)
        rep.add("generator-primitive", None, None, k, H.is_primitive(v),
                f"{H.gens.labels[k]} -> {render_element(C, v)}")
    S = primitives(H)
    Lb = lie_from_algebra(H.algebra, max_n)
    rep.extend(check_subalgebra(Lb, S, "primitives-lie", member=H.is_primitive))
    return rep


def respects_relations(H: TruncatedHopf, A: GradedAlgebra, images: Sequence[Mapping]) -> bool:
    """The algebra map T(P) -> A sending generator k to images[k] kills every relation."""
    for r in H.relations:
        acc: dict = {}
        for w, c in r.items():
            v = dict(A.unit)
            for k in w:
                v = A.mul(v, images[k])
            add_into(acc, v, c)
        if acc:
            return False
    return True
