"""Command-line front end.

Output is JSON by default (with a top-level "schema" field and sorted keys) or a
plain-text table with --format text. Exit codes: 0 when something was computed,
2 when the answer is NotApplicable / undetermined, 1 on input or library errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import errors
from .fixtures import parse_curve

SCHEMA = 1
EXIT_OK, EXIT_ERROR, EXIT_NA = 0, 1, 2


def error_code(exc: BaseException) -> str:
    """CamelCase exception name -> E_SNAKE_CASE (distinct per class)."""
    name = type(exc).__name__
    return "E_" + re.sub(r"(?<!^)(?=[A-Z])", "_", name).upper()


# ---------------------------------------------------------------- rendering


def _emit(payload: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        out = {"schema": SCHEMA}
        out.update(payload)
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        lines = text_lines() if callable(text_lines) else text_lines
        sys.stdout.write("\n".join(lines) + "\n")


def _kv_lines(d: dict, indent: str = "") -> list:
    lines = []
    for k in sorted(d):
        v = d[k]
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.extend(_kv_lines(v, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {json.dumps(v) if isinstance(v, (list, tuple)) else v}")
    return lines


def _fmt_matrix(m) -> str:
    return "[[%d,%d],[%d,%d]]" % (m[0][0], m[0][1], m[1][0], m[1][1])


# ---------------------------------------------------------------- subcommands


def _curve(args, attr):
    val = getattr(args, attr)
    if val is None:
        raise errors.InputError(f"--{attr.replace('_', '-')} is required")
    return parse_curve(val, args.fixtures)


def cmd_invariants(args):
    from .curve_core import conductor, minimal_model_at, standard_invariants

    E = _curve(args, "curve")
    inv = standard_invariants(E)
    payload = {
        "curve": E.to_json(),
        "c4": inv.c4, "c6": inv.c6, "disc": inv.disc,
        "conductor": conductor(E),
    }
    if args.l:
        payload["local"] = minimal_model_at(E, args.l)[1].to_json()
    return payload, EXIT_OK, lambda: _kv_lines(payload)


def cmd_classify(args):
    from .curve_core import prime_factors, standard_invariants
    from .reduction import classify

    E = _curve(args, "curve")
    primes = [args.l] if args.l else prime_factors(standard_invariants(E).disc)
    rows = [classify(E, q).to_json() for q in primes]
    payload = {"curve": E.to_json(), "primes": rows}

    def text():
        out = [f"{'l':>5}  {'kind':<26}{'e':>3}  {'inertia':<8}{'f':>3}  case"]
        for r in rows:
            cells = [str(r[k]) if r[k] is not None else "-" for k in ("e", "inertia", "case")]
            out.append(f"{r['prime']:>5}  {r['kind']:<26}{cells[0]:>3}  {cells[1]:<8}"
                       f"{r['conductor_exponent']:>3}  {cells[2]}")
        return out

    return payload, EXIT_OK, text


def cmd_compare(args):
    from .criteria import NOT_APPLICABLE, UNDETERMINED, compare

    E, E2 = _curve(args, "curve1"), _curve(args, "curve2")
    rep = compare(E, E2, args.p, bound=args.bound, jobs=args.jobs)
    payload = {"curve1": E.to_json(), "curve2": E2.to_json(), **rep.to_json()}
    code = EXIT_NA if rep.consensus in (UNDETERMINED, NOT_APPLICABLE) else EXIT_OK

    def text():
        out = [f"p = {rep.p}",
               f"{'l':>6}  {'criterion':<10}{'outcome':<16}{'r':>4}{'t':>4}  reason"]
        for e in payload["entries"]:
            r = "-" if e["r"] is None else e["r"]
            t = "-" if e["t"] is None else e["t"]
            out.append(f"{e['prime']:>6}  {e['criterion'] or '-':<10}{e['outcome']:<16}"
                       f"{r:>4}{t:>4}  {e['reason'] or ''}")
        out.append(f"consensus: {rep.consensus}")
        return out

    return payload, code, text


def cmd_hilbert(args):
    from .goodred import hilbert_class_poly

    P = hilbert_class_poly(args.D)
    payload = {"D": args.D, "polynomial": str(P), "coefficients": list(P.coefficients)}
    return payload, EXIT_OK, [str(P)]


def cmd_frobenius(args):
    from .goodred import frob_matrix, frobenius_data
    from .errors import UnsupportedReduction

    E = _curve(args, "curve")
    fd = frobenius_data(E, args.l)
    payload = {"curve": E.to_json(), "ell": args.l, "p": args.p, **fd.to_json()}
    try:
        payload["matrix"] = [list(r) for r in frob_matrix(fd, args.p)]
        code = EXIT_OK
    except UnsupportedReduction as exc:
        payload["matrix"] = None
        payload["reason"] = str(exc)
        code = EXIT_NA

    def text():
        lines = [f"a_l = {fd.a}", f"Delta_l = {fd.disc}", f"beta_l = {fd.beta}"]
        m = payload["matrix"]
        lines.append("matrix = " + (_fmt_matrix(m) if m else "unsupported (p | beta)"))
        return lines

    return payload, code, text


def cmd_oracle(args):
    from .torsion_oracle import frobenius_matrix, oracle_symplectic_type

    E, E2 = _curve(args, "curve1"), _curve(args, "curve2")
    kw = dict(seed=args.seed, max_bits=args.max_bits)
    A = frobenius_matrix(E, args.l, args.p, **kw)
    B = frobenius_matrix(E2, args.l, args.p, **kw)
    types = sorted(oracle_symplectic_type(E, E2, args.l, args.p, **kw))
    payload = {"curve1": E.to_json(), "curve2": E2.to_json(), "ell": args.l, "p": args.p,
               "matrix1": [list(r) for r in A], "matrix2": [list(r) for r in B], "types": types}
    lines = [f"matrix1 = {_fmt_matrix(A)}", f"matrix2 = {_fmt_matrix(B)}",
             "types = {" + ", ".join(types) + "}"]
    return payload, EXIT_OK, lines


def cmd_frey_scan(args):
    from .diophantine import ELIMINATED, scan_residual_pairs

    W = parse_curve(args.W, args.fixtures)
    rep = scan_residual_pairs(W, args.ell, args.prime, w_tag=args.W, jobs=args.jobs)
    payload = rep.to_json()
    code = EXIT_OK if rep.verdict == ELIMINATED else EXIT_NA

    def text():
        out = [f"p = {rep.p}  W = {rep.w_tag}  l = {rep.ell}",
               f"W mod l = {list(rep.w_residual)}  a_l = {rep.w_trace}  matrix = {_fmt_matrix(rep.w_matrix)}",
               f"{'d':>3}{'a':>5}{'b':>5}  iso"]
        for r in rep.matches:
            out.append(f"{r.d:>3}{r.a:>5}{r.b:>5}  {'yes' if r.iso else 'no'}")
        out.append(f"verdict: {rep.verdict}")
        out.extend(f"  {x}" for x in rep.reasons)
        return out

    return payload, code, text


def cmd_hyper(args):
    from .diophantine import FORCED, hyperelliptic_parity_argument

    res = hyperelliptic_parity_argument(args.ell, args.variant)
    payload = res.to_json()
    code = EXIT_OK if res.conclusion == FORCED else EXIT_NA

    def text():
        out = [f"l = {res.ell}  variant {res.variant}  Frey stand-in {res.frey}",
               f"{'F':<7}{'p':>4}{'(2/p)':>7}  {'at 2':<16}{'at l':<16}ok"]
        for lab, p, s, v2, vl, ok in res.table:
            out.append(f"{lab:<7}{p:>4}{s:>7}  {v2:<16}{vl:<16}{'yes' if ok else 'no'}")
        out.append(res.conclusion)
        return out

    return payload, code, text


def cmd_exists(args):
    from .criteria import EXISTS, criterion_exists

    try:
        gens = json.loads(args.gens)
    except json.JSONDecodeError as exc:
        raise errors.InputError(f"bad --gens: {exc}") from None
    if gens and isinstance(gens[0][0], int):
        gens = [gens]
    gens = [tuple(tuple(int(x) % args.p for x in row) for row in g) for g in gens]
    rep = criterion_exists(gens, args.p)
    payload = {"p": args.p, "generators": [[list(r) for r in g] for g in gens], **rep.to_json()}
    code = EXIT_OK if rep.outcome == EXISTS else EXIT_NA
    return payload, code, lambda: _kv_lines(rep.to_json())


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--fixtures", metavar="PATH", default=None,
                        help="JSON file mapping label -> [a1..a6] (default: bundled)")
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="symcrit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("invariants", cmd_invariants, "c4, c6, discriminant, conductor")
    sp.add_argument("--curve", required=True)
    sp.add_argument("-l", type=int, default=0, help="also print local data at l")

    sp = add("classify", cmd_classify, "local reduction type at l (or every bad prime)")
    sp.add_argument("--curve", required=True)
    sp.add_argument("-l", type=int, default=0)

    sp = add("compare", cmd_compare, "local symplectic criteria for E[p] = E'[p]")
    sp.add_argument("--curve1", required=True)
    sp.add_argument("--curve2", required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--bound", type=int, default=0, help="also use good primes up to this bound")

    sp = add("hilbert", cmd_hilbert, "class polynomial of discriminant D")
    sp.add_argument("D", type=int)

    sp = add("frobenius", cmd_frobenius, "Frobenius data and matrix at l mod p")
    sp.add_argument("--curve", required=True)
    sp.add_argument("-l", type=int, required=True)
    sp.add_argument("-p", type=int, required=True)

    sp = add("oracle", cmd_oracle, "brute-force symplectic types over F_l^k")
    sp.add_argument("--curve1", required=True)
    sp.add_argument("--curve2", required=True)
    sp.add_argument("-l", type=int, required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-bits", type=int, default=64)

    sp = add("frey-scan", cmd_frey_scan, "residual Frey curve scan for x^2 + y^3 = z^p")
    sp.add_argument("prime", type=int, metavar="p")
    sp.add_argument("W", metavar="W-tag", help="fixture label or JSON array")
    sp.add_argument("ell", type=int, metavar="l")

    sp = add("hyper", cmd_hyper, "(2/p) parity argument for y^2 = x^p - l, x^p - 2l")
    sp.add_argument("ell", type=int, metavar="l")
    sp.add_argument("variant", type=int, choices=(1, 2))

    sp = add("exists", cmd_exists, "does a local criterion exist for this inertia image")
    sp.add_argument("--gens", required=True, help="JSON matrix or list of matrices")
    sp.add_argument("-p", type=int, required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        payload, code, text = args.func(args)
    except (errors.SymcritError, ValueError) as exc:
        env = {"error": {"code": error_code(exc), "type": type(exc).__name__, "message": str(exc)}}
        if args.format == "json":
            _emit(env, "json", None)
        print(f"symcrit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit({"command": args.command, "result": payload}, args.format, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
