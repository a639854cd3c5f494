"""A small line-oriented language for groups, modules, algebras, forms and brackets.

Example::

    group C3
    root 3
    bichar g1 g1 = z^1
    module V { 0:1 1:1 2:1 }
    algebra A = end(V)
    form B on V { e0 e0 = 1; e1 e2 = 1; e2 e1 = 1 }
    lie L = from(A, max_n=3)

Statements end at a newline or a ';' outside braces; a braced body may span
several lines.  '#' starts a comment.  Scalars are written in z = z_L.

When L is odd the objects are built over Q(z_2L), which is the same field but
contains -1 as a power of the generator; ``Workspace.zeta`` translates
exponents given in z_L.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .brlie import BracketStructure, GradedAlgebra, TableBracket, lie_from_algebra
from .cyclo import CycNumber, RootOfUnity, embed, field, halve, parse_cyc, render_cyc
from .models import BilinearForm, graded_end
from .symzeta import Subspace, import_subspace, parse_element
from .ydspace import Bicharacter, FiniteAbelianGroup, GradedModule, render_element


class SpecError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = f"line {line}" + (f", column {col}" if col is not None else "") if line else ""
        super().__init__(f"{where}: {msg}" if where else msg)
        self.line, self.col = line, col


@dataclass
class ModuleDecl:
    dims: list            # [(degree tuple, dim)]
    prefix: str = "e"


@dataclass
class AlgebraDecl:
    kind: str             # "end" or "table"
    module: str
    unit: dict = dc_field(default_factory=dict)       # label -> scalar
    mult: dict = dc_field(default_factory=dict)       # (label, label) -> {label: scalar}
    unchecked: bool = False


@dataclass
class FormDecl:
    module: str
    entries: dict         # (label, label) -> Fraction


@dataclass
class LieDecl:
    kind: str             # "from", "zero" or "table"
    source: str           # algebra name or module name
    max_n: int
    values: dict = dc_field(default_factory=dict)     # (k, labels tuple) -> {label: scalar}


@dataclass
class ProblemSpec:
    group: tuple = ()
    L: int = 1
    bichar: dict = dc_field(default_factory=dict)     # (i, j) 1-based generator indices -> k
    modules: dict = dc_field(default_factory=dict)
    algebras: dict = dc_field(default_factory=dict)
    forms: dict = dc_field(default_factory=dict)
    lies: dict = dc_field(default_factory=dict)

    def build(self) -> "Workspace":
        return Workspace(self)


# -- lexing -------------------------------------------------------------------------

def _statements(text: str):
    """Yield (line, column, statement text) with comments stripped."""
    buf, depth, start = [], 0, None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        for col, ch in enumerate(line, 1):
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth < 0:
                    raise SpecError("unbalanced '}'", lineno, col)
            if ch == ";" and depth == 0:
                stmt = "".join(buf).strip()
                if stmt:
                    yield start, stmt
                buf, start = [], None
                continue
            if start is None and not ch.isspace():
                start = (lineno, col)
            buf.append(ch)
        if depth == 0:
            stmt = "".join(buf).strip()
            if stmt:
                yield start, stmt
            buf, start = [], None
        else:
            buf.append("\n")
    if depth:
        raise SpecError("unterminated '{'", start[0] if start else None)


def _body_items(body: str) -> list[str]:
    return [s.strip() for s in re.split(r"[;\n]", body) if s.strip()]


def _split_terms(expr: str) -> list[str]:
    """Split a linear combination at top-level '+' and binary '-'."""
    terms, cur, depth = [], [], 0
    prev = ""
    for ch in expr:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and "".join(cur).strip() and prev not in "^*":
            terms.append("".join(cur).strip())
            cur = [] if ch == "+" else ["-"]
        else:
            cur.append(ch)
        if not ch.isspace():
            prev = ch
    if "".join(cur).strip():
        terms.append("".join(cur).strip())
    return terms


_LABEL = r"[A-Za-z_][A-Za-z0-9_.]*"


def parse_combination(expr: str, fld) -> dict:
    """'2*e1 - z^1*e0 + (1 + z)*e2' -> {label: scalar}."""
    out: dict = {}
    expr = expr.strip()
    if expr == "0":
        return out
    for term in _split_terms(expr):
        m = re.fullmatch(rf"(.*?)\s*\*?\s*({_LABEL})", term.strip(), re.S)
        if not m or m.group(2) == "z":
            raise ValueError(f"bad term {term!r}")
        coef = m.group(1).strip()
        if coef.endswith("*"):
            coef = coef[:-1].strip()
        if coef in ("", "+"):
            c = fld.one
        elif coef == "-":
            c = -fld.one
        else:
            c = parse_cyc(coef, fld)
        lab = m.group(2)
        out[lab] = out.get(lab, fld.zero) + c
    return {k: v for k, v in out.items() if v}


def _render_combination(v: dict) -> str:
    if not v:
        return "0"
    return " + ".join(f"({render_cyc(c)})*{lab}" for lab, c in v.items())


# -- parsing ---------------------------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"


def parse_spec(text: str) -> ProblemSpec:
    spec = ProblemSpec()
    seen_group = seen_root = False
    names: set[str] = set()

    def new_name(name, line, col):
        if name in names:
            raise SpecError(f"duplicate name {name!r}", line, col)
        names.add(name)

    for (line, col), stmt in _statements(text):
        head = stmt.split(None, 1)[0]
        try:
            if head == "group":
                m = re.fullmatch(r"group\s+(C\d+(?:\s*x\s*C\d+)*)", stmt)
                if not m:
                    raise SpecError(f"bad group {stmt!r}", line, col)
                orders = tuple(int(x) for x in re.findall(r"C(\d+)", m.group(1)))
                spec.group = orders
                seen_group = True
            elif head == "root":
                m = re.fullmatch(r"root\s+(\d+)", stmt)
                if not m or int(m.group(1)) < 1:
                    raise SpecError(f"bad root order {stmt!r}", line, col)
                spec.L = int(m.group(1))
                seen_root = True
            elif head == "bichar":
                m = re.fullmatch(r"bichar\s+g(\d+)\s+g(\d+)\s*=\s*(.+)", stmt)
                if not m:
                    raise SpecError(f"bad bichar entry {stmt!r}", line, col)
                val = m.group(3).replace(" ", "")
                vm = re.fullmatch(r"z(?:\^(-?\d+))?|1", val)
                if not vm:
                    raise SpecError(f"bichar value must be z^k, got {val!r}", line, col)
                k = 0 if val == "1" else int(vm.group(1) or 1)
                spec.bichar[(int(m.group(1)), int(m.group(2)))] = k
            elif head == "module":
                m = re.fullmatch(rf"module\s+({_NAME})\s*\{{(.*)\}}\s*(?:prefix\s+({_NAME}))?", stmt, re.S)
                if not m:
                    raise SpecError(f"bad module declaration {stmt!r}", line, col)
                new_name(m.group(1), line, col)
                dims = []
                for item in m.group(2).split():
                    dm = re.fullmatch(r"(-?\d+(?:,-?\d+)*):(\d+)", item)
                    if not dm:
                        raise SpecError(f"bad degree:dim item {item!r}", line, col)
                    dims.append((tuple(int(x) for x in dm.group(1).split(",")), int(dm.group(2))))
                spec.modules[m.group(1)] = ModuleDecl(dims, m.group(3) or "e")
            elif head == "algebra":
                m = re.fullmatch(rf"algebra\s+({_NAME})\s*=\s*end\(\s*({_NAME})\s*\)", stmt)
                if m:
                    new_name(m.group(1), line, col)
                    spec.algebras[m.group(1)] = AlgebraDecl("end", m.group(2))
                    continue
                m = re.fullmatch(rf"algebra\s+({_NAME})\s+on\s+({_NAME})\s*(unchecked)?\s*\{{(.*)\}}", stmt, re.S)
                if not m:
                    raise SpecError(f"bad algebra declaration {stmt!r}", line, col)
                new_name(m.group(1), line, col)
                spec.algebras[m.group(1)] = _parse_algebra_body(m, spec, line)
            elif head == "form":
                m = re.fullmatch(rf"form\s+({_NAME})\s+on\s+({_NAME})\s*\{{(.*)\}}", stmt, re.S)
                if not m:
                    raise SpecError(f"bad form declaration {stmt!r}", line, col)
                new_name(m.group(1), line, col)
                entries = {}
                for item in _body_items(m.group(3)):
                    em = re.fullmatch(rf"({_LABEL}|\d+)\s+({_LABEL}|\d+)\s*=\s*(-?\d+(?:/\d+)?)", item)
                    if not em:
                        raise SpecError(f"bad form entry {item!r}", line)
                    entries[(em.group(1), em.group(2))] = Fraction(em.group(3))
                spec.forms[m.group(1)] = FormDecl(m.group(2), entries)
            elif head == "lie":
                spec_lie = _parse_lie(stmt, spec, line, col)
                new_name(spec_lie[0], line, col)
                spec.lies[spec_lie[0]] = spec_lie[1]
            else:
                raise SpecError(f"unknown directive {head!r}", line, col)
        except SpecError:
            raise
        except ValueError as exc:
            raise SpecError(str(exc), line, col) from None
    if not seen_group:
        raise SpecError("missing 'group' directive")
    if not seen_root:
        raise SpecError("missing 'root' directive")
    _validate(spec)
    return spec


def _user_field(spec: ProblemSpec):
    return field(spec.L)


def _parse_algebra_body(m, spec, line) -> AlgebraDecl:
    fld = _user_field(spec)
    decl = AlgebraDecl("table", m.group(2), unchecked=bool(m.group(3)))
    for item in _body_items(m.group(4)):
        um = re.fullmatch(r"unit\s+(.+)", item)
        if um:
            decl.unit = parse_combination(um.group(1), fld)
            continue
        mm = re.fullmatch(rf"mult\s+({_LABEL})\s+({_LABEL})\s*=\s*(.+)", item)
        if not mm:
            raise SpecError(f"bad algebra entry {item!r}", line)
        decl.mult[(mm.group(1), mm.group(2))] = parse_combination(mm.group(3), fld)
    return decl


def _parse_lie(stmt, spec, line, col):
    m = re.fullmatch(rf"lie\s+({_NAME})\s*=\s*(from|zero)\(\s*({_NAME})\s*,\s*max_n\s*=\s*(\d+)\s*\)", stmt)
    if m:
        return m.group(1), LieDecl(m.group(2), m.group(3), int(m.group(4)))
    m = re.fullmatch(rf"lie\s+({_NAME})\s+on\s+({_NAME})\s+max_n\s*=\s*(\d+)\s*\{{(.*)\}}", stmt, re.S)
    if not m:
        raise SpecError(f"bad lie declaration {stmt!r}", line, col)
    fld = _user_field(spec)
    values = {}
    for item in _body_items(m.group(4)):
        bm = re.fullmatch(r"bracket\s+z\^(-?\d+)\s+\(([^()]*)\)\s*=\s*(.+)", item)
        if not bm:
            raise SpecError(f"bad bracket entry {item!r}", line)
        labels = tuple(x.strip() for x in bm.group(2).split(","))
        values[(int(bm.group(1)) % spec.L, labels)] = parse_combination(bm.group(3), fld)
    return m.group(1), LieDecl("table", m.group(2), int(m.group(3)), values)


def _validate(spec: ProblemSpec):
    r = len(spec.group)
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            trivial = spec.group[i - 1] == 1 or spec.group[j - 1] == 1
            if (i, j) not in spec.bichar and not trivial:
                raise SpecError(f"missing bichar entry for the generator pair (g{i}, g{j})")
    for (i, j), k in spec.bichar.items():
        if not (1 <= i <= r and 1 <= j <= r):
            raise SpecError(f"bichar entry (g{i}, g{j}) names a generator the group does not have")
        ni, nj = spec.group[i - 1], spec.group[j - 1]
        if (ni * k) % spec.L or (nj * k) % spec.L:
            raise SpecError(f"bichar value z^{k} on (g{i}, g{j}) is inconsistent with the generator "
                            f"orders {ni} and {nj}: its {ni}-th and {nj}-th powers must both be 1")
    for name, a in spec.algebras.items():
        if a.module not in spec.modules:
            raise SpecError(f"algebra {name} refers to unknown module {a.module!r}")
    for name, f in spec.forms.items():
        if f.module not in spec.modules:
            raise SpecError(f"form {name} refers to unknown module {f.module!r}")
    for name, lie in spec.lies.items():
        pool = spec.algebras if lie.kind == "from" else spec.modules
        if lie.source not in pool:
            kind = "algebra" if lie.kind == "from" else "module"
            raise SpecError(f"lie {name} refers to unknown {kind} {lie.source!r}")
    # building catches bicharacter consistency and label errors
    try:
        Workspace(spec)
    except SpecError:
        raise
    except (ValueError, KeyError) as exc:
        raise SpecError(str(exc).strip("'\"")) from None


# -- rendering -------------------------------------------------------------------------

def render_spec(spec: ProblemSpec) -> str:
    out = ["group " + ("x".join(f"C{o}" for o in spec.group) or "C1"), f"root {spec.L}"]
    for (i, j), k in sorted(spec.bichar.items()):
        out.append(f"bichar g{i} g{j} = z^{k}")
    for name, m in spec.modules.items():
        items = " ".join(",".join(str(x) for x in d) + f":{n}" for d, n in m.dims)
        out.append(f"module {name} {{ {items} }}" + (f" prefix {m.prefix}" if m.prefix != "e" else ""))
    for name, a in spec.algebras.items():
        if a.kind == "end":
            out.append(f"algebra {name} = end({a.module})")
            continue
        body = [f"  unit {_render_combination(a.unit)}"]
        body += [f"  mult {x} {y} = {_render_combination(v)}" for (x, y), v in a.mult.items()]
        flag = " unchecked" if a.unchecked else ""
        out.append(f"algebra {name} on {a.module}{flag} {{\n" + "\n".join(body) + "\n}")
    for name, f in spec.forms.items():
        body = "; ".join(f"{x} {y} = {q}" for (x, y), q in f.entries.items())
        out.append(f"form {name} on {f.module} {{ {body} }}")
    for name, lie in spec.lies.items():
        if lie.kind in ("from", "zero"):
            out.append(f"lie {name} = {lie.kind}({lie.source}, max_n={lie.max_n})")
            continue
        body = [f"  bracket z^{k} ({','.join(labs)}) = {_render_combination(v)}"
                for (k, labs), v in lie.values.items()]
        out.append(f"lie {name} on {lie.source} max_n={lie.max_n} {{\n" + "\n".join(body) + "\n}")
    return "\n".join(out) + "\n"


# -- building --------------------------------------------------------------------------

def _resolve(V: GradedModule, x: str) -> int:
    if x.isdigit():
        i = int(x)
        if i >= V.dim:
            raise ValueError(f"basis index {i} out of range for a module of dimension {V.dim}")
        return i
    return V.index(x)


class Workspace:
    """The library objects described by a ProblemSpec."""

    def __init__(self, spec: ProblemSpec):
        self.spec = spec
        self.scale = 1 if spec.L % 2 == 0 else 2
        self.L = spec.L * self.scale
        self.group = FiniteAbelianGroup(spec.group)
        table = {(i - 1, j - 1): k * self.scale for (i, j), k in spec.bichar.items()}
        self.chi = Bicharacter(self.group, self.L, table)
        self.field = field(self.L)
        self.modules: dict[str, GradedModule] = {}
        for name, m in spec.modules.items():
            self.modules[name] = GradedModule.from_dims(
                self.chi, {self.group.normalize(d): n for d, n in m.dims}, prefix=m.prefix)
        self.algebras: dict[str, GradedAlgebra] = {}
        for name, a in spec.algebras.items():
            self.algebras[name] = self._algebra(name, a)
        self.forms = {}
        for name, f in spec.forms.items():
            V = self.modules[f.module]
            self.forms[name] = BilinearForm(V, {(_resolve(V, x), _resolve(V, y)): q
                                                for (x, y), q in f.entries.items()})
        self._lies: dict[str, BracketStructure] = {}

    def scalar(self, c: CycNumber) -> CycNumber:
        return embed(c, self.field)

    def user_scalar(self, c: CycNumber) -> CycNumber:
        return halve(c, field(self.spec.L))

    def _user_parse(self, text: str) -> CycNumber:
        return self.scalar(parse_cyc(text, field(self.spec.L)))

    def element(self, text: str, host: GradedModule, power: int | None = None):
        """Parse a tensor element whose scalars are written in the declared z."""
        return parse_element(text, host, power, scalar=self._user_parse)

    def render(self, host: GradedModule, coeffs) -> str:
        return render_element(host, {t: self.user_scalar(c) for t, c in coeffs.items()})

    def export(self, S: Subspace) -> str:
        lines = [f"power {S.power} dim {S.dim}"] + [self.render(S.host, v) for v in S.basis]
        return "\n".join(lines) + "\n"

    def import_subspace(self, text: str, host: GradedModule) -> Subspace:
        return import_subspace(text, host, scalar=self._user_parse)

    def zeta(self, k: int) -> RootOfUnity:
        """z_L^k in the working field."""
        return RootOfUnity(self.L, k * self.scale)

    def zeta_label(self, z: RootOfUnity) -> str:
        """Write a working-field root back in terms of the declared z."""
        if z.k % self.scale == 0:
            return f"z^{z.k // self.scale}"
        k = ((z.k - self.L // 2) % self.L) // self.scale
        return f"-z^{k}" if k else "-1"

    def _algebra(self, name, a: AlgebraDecl) -> GradedAlgebra:
        V = self.modules[a.module]
        if a.kind == "end":
            return graded_end(V)
        table = {}
        for (x, y), v in a.mult.items():
            table[(V.index(x), V.index(y))] = {V.index(k): self.scalar(c) for k, c in v.items()}
        unit = {V.index(k): self.scalar(c) for k, c in a.unit.items()}
        try:
            return GradedAlgebra(V, table, unit, validate=not a.unchecked)
        except ValueError as exc:
            raise SpecError(f"algebra {name}: {exc}") from None

    def lie(self, name: str) -> BracketStructure:
        if name not in self._lies:
            decl = self.spec.lies[name]
            if decl.kind == "from":
                self._lies[name] = lie_from_algebra(self.algebras[decl.source], decl.max_n)
            elif decl.kind == "zero":
                self._lies[name] = BracketStructure.zero(self.modules[decl.source], decl.max_n)
            else:
                V = self.modules[decl.source]
                values: dict = {}
                for (k, labels), v in decl.values.items():
                    key = (len(labels), k * self.scale)
                    pivot = tuple(V.index(x) for x in labels)
                    values.setdefault(key, {})[pivot] = {(V.index(x),): self.scalar(c) for x, c in v.items()}
                self._lies[name] = TableBracket(V, decl.max_n, values)
        return self._lies[name]
