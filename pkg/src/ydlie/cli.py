"""Command line interface: ``ydlie <command> --spec FILE ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from .brlie import (check_antisymmetry, check_jacobi1, check_jacobi2, lie_from_algebra,
                    minus_one)
from .cyclo import RootOfUnity
from .dsl import SpecError, Workspace, parse_spec
from .hopf import (TruncatedHopf, check_antipode, check_primitives_lie, enveloping_truncated,
                   primitives, verify_main_theorem)
from .models import check_der_closure, check_og_closure, derivation_space, og_subspace
from .report import Entry, InvariantViolation, Report
from .symzeta import Subspace, minus_one_zeta_subspace, symmetrize, zeta_families
from .ydspace import check_yang_baxter

VERIFY = ("antisym", "jacobi1", "jacobi2", "mainthm", "yangbaxter", "antipode", "primitives-lie")


class InputError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", required=True, help="problem file (.yd)")
    common.add_argument("--n", type=int, help="tensor power / bracket arity")
    common.add_argument("--zeta", help="root of unity as a power of the declared z, e.g. z^1 or -1")
    common.add_argument("--degree", help="group element, e.g. 1 or 0,1")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the output here instead of stdout")
    common.add_argument("--module")
    common.add_argument("--algebra")
    common.add_argument("--lie")
    common.add_argument("--form")
    common.add_argument("--method", choices=("graded", "kernel"), default="graded")
    common.add_argument("--max-n", type=int, dest="max_n")
    common.add_argument("--cap", type=int, default=3, help="degree cap for enveloping algebras")
    common.add_argument("--element", help="tensor element, e.g. '1 * (E0_1,E1_0)'")

    ap = argparse.ArgumentParser(
        prog="ydlie", description="Partial n-ary brackets over graded spaces with a bicharacter.",
        epilog="exit codes: 0 all checks pass, 1 a check failed, 2 bad input")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("families", "symmetrize", "minus-one-zeta", "bracket", "uenv", "primitives",
                 "og", "der"):
        sub.add_parser(name, parents=[common])
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("check", choices=VERIFY)
    return ap


# -- helpers ---------------------------------------------------------------------------

def _zeta(W: Workspace, text: str) -> RootOfUnity:
    t = text.replace(" ", "")
    if t in ("1", "z^0"):
        return W.zeta(0)
    if t == "-1":
        return minus_one(W.L)
    m = re.fullmatch(r"(-)?z(?:\^(-?\d+))?", t)
    if not m:
        raise InputError(f"--zeta must look like z^k, got {text!r}")
    z = W.zeta(int(m.group(2) or 1))
    return z * minus_one(W.L) if m.group(1) else z


def _degree(W: Workspace, text: str):
    try:
        return W.group.normalize(tuple(int(x) for x in text.split(",")))
    except ValueError as exc:
        raise InputError(f"bad --degree {text!r}: {exc}") from None


def _pick(kind: str, table: dict, name: str | None):
    if name is not None:
        if name not in table:
            raise InputError(f"no {kind} named {name!r} in the spec")
        return table[name]
    if len(table) == 1:
        return next(iter(table.values()))
    raise InputError(f"the spec has {len(table)} {kind}s; choose one with --{kind}")


def _need_n(args) -> int:
    if args.n is None:
        raise InputError("--n is required for this command")
    if args.n < 1:
        raise InputError("--n must be positive")
    return args.n


def _lie(W: Workspace, args, need: int):
    if args.lie is not None or (args.algebra is None and W.spec.lies):
        if args.lie is None and len(W.spec.lies) != 1:
            raise InputError("choose a bracket structure with --lie")
        name = args.lie or next(iter(W.spec.lies))
        if name not in W.spec.lies:
            raise InputError(f"no lie named {name!r} in the spec")
        Lb = W.lie(name)
        if Lb.max_n < need:
            raise InputError(f"lie {name} is declared up to arity {Lb.max_n}; this needs {need}")
        return Lb
    A = _pick("algebra", W.algebras, args.algebra)
    return lie_from_algebra(A, max(need, args.max_n or 0, 2))


def _roots(W: Workspace, args, n: int) -> list[RootOfUnity]:
    if args.zeta is not None:
        z = _zeta(W, args.zeta)
        if z.order != n:
            raise InputError(f"{args.zeta} is not a primitive {n}-th root of unity")
        return [z]
    roots = [RootOfUnity(W.L, k) for k in range(W.L) if RootOfUnity(W.L, k).order == n]
    if not roots:
        raise InputError(f"the field has no primitive {n}-th root of unity")
    return roots


def _relabel(W: Workspace, rep: Report) -> Report:
    out = Report()
    for e in rep.entries:
        zeta = e.zeta
        m = re.fullmatch(r"z\^(-?\d+)", zeta or "")
        if m:
            zeta = W.zeta_label(RootOfUnity(W.L, int(m.group(1))))
        out.entries.append(Entry(e.check, e.n, zeta, e.index, e.status, e.witness))
    return out


def _format_degree(W: Workspace, g) -> str:
    return str(g[0]) if len(g) == 1 else "(" + ",".join(map(str, g)) + ")"


# -- commands --------------------------------------------------------------------------

def _families(W, args):
    V = _pick("module", W.modules, args.module)
    n = _need_n(args)
    if args.zeta is None:
        raise InputError("--zeta is required")
    fams = zeta_families(W.chi, V.present_degrees(), n, _zeta(W, args.zeta))
    if args.format == "json":
        return json.dumps({"n": n, "zeta": args.zeta,
                           "families": [[list(g) for g in f.degrees] for f in fams]}) + "\n", 0
    lines = ["(" + ",".join(_format_degree(W, g) for g in f.degrees) + ")" for f in fams]
    return "".join(x + "\n" for x in lines), 0


def _emit_subspace(W, args, S: Subspace):
    if args.format == "json":
        return json.dumps({"power": S.power, "dim": S.dim,
                           "basis": [W.render(S.host, v) for v in S.basis]}) + "\n", 0
    return W.export(S), 0


def _symmetrize(W, args):
    V = _pick("module", W.modules, args.module)
    if args.zeta is None:
        raise InputError("--zeta is required")
    return _emit_subspace(W, args, symmetrize(V, _need_n(args), _zeta(W, args.zeta), args.method))


def _minus_one(W, args):
    V = _pick("module", W.modules, args.module)
    if args.zeta is None:
        raise InputError("--zeta is required")
    S = minus_one_zeta_subspace(V, _need_n(args), _zeta(W, args.zeta), args.method)
    return _emit_subspace(W, args, S)


def _bracket(W, args):
    if args.element is None:
        raise InputError("--element is required")
    probe = _lie(W, args, 1)
    z = W.element(args.element, probe.carrier)
    n = z.power
    if args.n is not None and args.n != n:
        raise InputError(f"--n {args.n} does not match the element's power {n}")
    Lb = _lie(W, args, n)
    if args.zeta is not None:
        zeta = _zeta(W, args.zeta)
    elif n <= 2:
        zeta = minus_one(W.L) if n == 2 else W.zeta(0)
    else:
        raise InputError("--zeta is required for arity 3 and above")
    if zeta.order != n:
        raise InputError(f"{W.zeta_label(zeta)} is not a primitive {n}-th root of unity")
    if Lb.domain(n, zeta).reduce(z.coeffs):
        raise InputError(f"the element is not in the domain of the {n}-ary bracket at "
                         f"zeta = {W.zeta_label(zeta)}")
    val = Lb.apply(n, zeta, z.coeffs)
    text = W.render(Lb.carrier, val)
    if args.format == "json":
        return json.dumps({"n": n, "zeta": W.zeta_label(zeta), "value": text}) + "\n", 0
    return text + "\n", 0


def _uenv_of(W, args) -> TruncatedHopf:
    if args.cap < 1:
        raise InputError("--cap must be at least 1")
    Lb = _lie(W, args, 1)
    return enveloping_truncated(Lb, args.cap)


def _uenv(W, args):
    H = _uenv_of(W, args)
    if args.format == "json":
        return H.dump() + "\n", 0
    lines = [f"cap {H.cap}", "dims " + " ".join(map(str, H.dims())),
             "basis " + " ".join(H.carrier.labels)]
    return "\n".join(lines) + "\n", 0


def _primitives(W, args):
    H = _uenv_of(W, args)
    return _emit_subspace(W, args, primitives(H))


def _restrict_degree(W, args, S: Subspace) -> Subspace:
    if args.degree is None:
        return S
    g = _degree(W, args.degree)
    comp = set(S.host.component(g))
    return Subspace(S.host, 1, [v for v in S.basis if all(t[0] in comp for t in v)])


def _report_output(W, args, rep: Report, head: str = ""):
    rep = _relabel(W, rep)
    body = rep.to_json() + "\n" if args.format == "json" else head + rep.render_text()
    return body, 0 if rep.ok else 1


def _og(W, args):
    B = _pick("form", W.forms, args.form)
    S = _restrict_degree(W, args, og_subspace(B.host, B))
    if args.max_n is None:
        return _emit_subspace(W, args, S)
    return _report_output(W, args, check_og_closure(B.host, B, args.max_n), W.export(S))


def _der(W, args):
    A = _pick("algebra", W.algebras, args.algebra)
    S = _restrict_degree(W, args, derivation_space(A))
    if args.max_n is None:
        return _emit_subspace(W, args, S)
    return _report_output(W, args, check_der_closure(A, args.max_n), W.export(S))


def _verify(W, args):
    rep = Report()
    c = args.check
    if c == "yangbaxter":
        V = _pick("module", W.modules, args.module)
        n = args.n or 3
        for k in range(2, n + 1):
            rep.add("yangbaxter", k, None, 0, check_yang_baxter(V, k), f"braid relation fails on {V!r}")
    elif c in ("antisym", "jacobi1", "jacobi2"):
        n = _need_n(args)
        Lb = _lie(W, args, max(n, 2))
        fn = {"antisym": check_antisymmetry, "jacobi1": check_jacobi1, "jacobi2": check_jacobi2}[c]
        for zeta in _roots(W, args, n):
            rep.extend(fn(Lb, n, zeta))
    elif c == "mainthm":
        n = _need_n(args)
        A = _pick("algebra", W.algebras, args.algebra)
        problems = A.problems(first_only=True)
        for zeta in _roots(W, args, n):
            rep.extend(verify_main_theorem(A, n, zeta))
        for i, msg in enumerate(problems):
            rep.add("algebra-axioms", None, None, i, False, msg)
    elif c == "antipode":
        rep.extend(check_antipode(_uenv_of(W, args)))
    else:
        H = _uenv_of(W, args)
        rep.extend(check_primitives_lie(H, args.max_n or 2))
    return _report_output(W, args, rep)


COMMANDS = {"families": _families, "symmetrize": _symmetrize, "minus-one-zeta": _minus_one,
            "bracket": _bracket, "uenv": _uenv, "primitives": _primitives, "og": _og,
            "der": _der, "verify": _verify}


def run_command(argv: list[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        with open(args.spec, encoding="utf-8") as fh:
            spec = parse_spec(fh.read())
        W = spec.build()
        text, code = COMMANDS[args.command](W, args)
    except (SpecError, InputError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if W.scale != 1 and args.command == "verify" and code:
        print(f"note: witness scalars are written in z_{W.L}, where z_{W.spec.L} = z_{W.L}^2",
              file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run_command())
