"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage or parameter error,
3 enumeration budget exceeded.  Reports go to standard output (or ``-o``),
diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from . import constructions as C
from . import liealg as LA
from . import semifield as SF
from .gf import FieldError, field_q
from .suites import SUITE_NAMES, UnknownSuite, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

DEFAULT_SEED = 0


class UsageError(ValueError):
    pass


# -- argument helpers -----------------------------------------------------------------------


def _poly(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated coefficients, constant term first") from None


def _resolve_q(args) -> int:
    p, s = getattr(args, "p", None), getattr(args, "s", None)
    if p is not None:
        q = p ** (s or 1)
        if args.q is not None and args.q != q:
            raise UsageError(f"--q {args.q} disagrees with --p {p} --s {s}")
        return q
    if args.q is None:
        raise UsageError("give --q (or --p and --s)")
    return args.q


def _field_args(sp: argparse.ArgumentParser, m: bool = True):
    sp.add_argument("--q", type=int, help="field size (a prime power)")
    sp.add_argument("--p", type=int, help="characteristic, alternative to --q")
    sp.add_argument("--s", type=int, help="degree over the prime field, used with --p")
    if m:
        sp.add_argument("--m", type=int, default=1, help="extension degree (default 1)")
    sp.add_argument("--poly", type=_poly, help="defining polynomial of the top extension, constant term first")


def _emit(args, obj: dict, text: str):
    out = json.dumps(obj, indent=2) + "\n" if args.format == "json" else text.rstrip("\n") + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _load_algebra(path: str) -> LA.LieAlgebra:
    return LA.validated(LA.LieAlgebra.from_json(_read_json(path)))


def _load_presemifield(path: str) -> SF.PreSemifield:
    return SF.PreSemifield.from_json(_read_json(path))


# -- construct ------------------------------------------------------------------------------


def _build(kind: str, q: int, m: int, poly) -> LA.LieAlgebra:
    if kind == "gm":
        return C.g_m_direct(q, m, poly)
    if kind == "gm-quotient":
        return C.g_m_quotient(q, m, poly)
    if kind == "lm":
        return C.L_m_matrix_algebra(q, m, poly)
    if kind == "u3":
        return C.u_n_restricted(3, q, m, poly)
    if kind == "u5":
        return C.u_n_restricted(5, q, m, poly)
    if kind == "v":
        return C.v_presentation(q, m, poly)[0]
    if kind == "lf-dickson":
        return SF.lie_of(SF.dickson(field_q(q)))
    if kind == "lf-field":
        return SF.lie_of(SF.field_semifield(field_q(q), m, poly))
    raise UsageError(f"unknown construction {kind!r}")


CONSTRUCTIONS = ("gm", "gm-quotient", "lm", "u3", "u5", "v", "lf-dickson", "lf-field")


def cmd_construct(args) -> int:
    L = _build(args.kind, _resolve_q(args), args.m, args.poly)
    text = f"{L.name}: dim {L.dim} over F_{L.field.q}"
    _emit(args, L.to_json(), text)
    return EXIT_OK


# -- analyze --------------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    L = _load_algebra(args.file)
    wanted = {k for k in ("breadth", "series", "fingerprint", "camina") if getattr(args, k)}
    if not wanted:
        wanted = {"series", "breadth"}
    out: dict = {"name": L.name, "dim": L.dim, "q": L.field.q}
    lines = [f"{L.name or '<algebra>'}: dim {L.dim} over F_{L.field.q}"]
    if "series" in wanted:
        s = LA.series(L)
        out["series"] = s.to_json()
        lines.append(f"gamma dims {list(s.gamma_dims)}, class {out['series']['nilpotency_class']}, stem {s.is_stem}")
    if "breadth" in wanted:
        r = LA.breadth_report(L, args.budget, args.workers)
        out["breadth"] = r.to_json()
        lines.append(f"breadth type {list(r.type_set)}, histogram {dict(sorted(r.histogram.items()))}")
    if "camina" in wanted:
        cam = LA.is_camina(L, args.budget, args.workers)
        out["camina"] = {"is_camina": cam.is_camina, "degenerate": cam.degenerate, "witness": cam.witness}
        lines.append(f"camina {cam.is_camina}")
    if "fingerprint" in wanted:
        f = LA.fingerprint(L, args.budget, args.workers)
        out["fingerprint"] = f.to_json()
        lines.append(f"type {set(f.type_set)}, class {f.nilpotency_class}")
    _emit(args, out, "\n".join(lines))
    return EXIT_OK


# -- verify ---------------------------------------------------------------------------------


def cmd_verify(args) -> int:
    q = _resolve_q(args)
    report = run_suite(args.suite, q, args.m, args.seed, args.budget, args.workers)
    lines = [f"suite {report.suite} q={q} m={args.m}: {report.status}"]
    lines += [f"  {c.status:8s} {c.name}" for c in report.checks]
    _emit(args, report.to_json(timing=args.timing), "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAIL


# -- semifield ------------------------------------------------------------------------------


def _semifield_text(P: SF.PreSemifield) -> str:
    kind = "semifield" if P.identity is not None else "pre-semifield"
    return f"{kind} {P.name}: dimension {P.n} over F_{P.field.q}"


def cmd_sf_dickson(args) -> int:
    k = "auto" if args.k is None else args.k
    S = SF.dickson(field_q(_resolve_q(args)), args.sigma, k)
    _emit(args, S.to_json(), _semifield_text(S))
    return EXIT_OK


def cmd_sf_field(args) -> int:
    S = SF.field_semifield(field_q(_resolve_q(args)), args.n, args.poly)
    _emit(args, S.to_json(), _semifield_text(S))
    return EXIT_OK


def cmd_sf_extract(args) -> int:
    L = _load_algebra(args.file)
    P, _ = SF.extract_auto(L, args.budget)
    if args.normalize:
        P, _ = SF.normalize_to_semifield(P)
    _emit(args, P.to_json(), _semifield_text(P))
    return EXIT_OK


def cmd_sf_mid(args) -> int:
    P = _load_presemifield(args.file)
    if P.identity is None:
        P, _ = SF.normalize_to_semifield(P)
    mid = SF.middle_nucleus(P, args.budget)
    ac = SF.assoc_comm(P)
    out = {
        "dim": mid.subspace.dim,
        "size": mid.size,
        "is_field": mid.is_field,
        "basis": mid.subspace.to_json(),
        "associative": ac.is_associative,
        "commutative": ac.is_commutative,
    }
    text = f"middle nucleus: {mid.size} elements (dim {mid.subspace.dim}), field {mid.is_field}"
    _emit(args, out, text)
    return EXIT_OK


def cmd_sf_isotopy(args) -> int:
    P1, P2 = _load_presemifield(args.first), _load_presemifield(args.second)
    iso = SF.Isotopism.from_json(P1.field, _read_json(args.isotopism))
    valid = SF.verify_isotopism(P1, P2, iso)
    lie = SF.lie_iso_from_isotopism(P1, P2, iso, strict=False)[1] if valid else False
    out = {"isotopism_valid": valid, "lie_isomorphism": lie}
    _emit(args, out, f"isotopism valid {valid}, Lie isomorphism {lie}")
    return EXIT_OK if valid and lie else EXIT_FAIL


# -- parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("-o", "--output", help="write the report here instead of standard output")
    common.add_argument("--workers", type=int, default=1, help="thread cap for enumerations")
    common.add_argument("--budget", type=int, default=None, help="max coset representatives (default LBA_BUDGET or 5^7)")

    parser = argparse.ArgumentParser(prog="nilbreadth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", parents=[common], help="build an algebra and write its JSON")
    sp.add_argument("kind", choices=CONSTRUCTIONS)
    _field_args(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("analyze", parents=[common], help="invariants of an algebra file")
    sp.add_argument("file")
    for flag in ("breadth", "series", "fingerprint", "camina"):
        sp.add_argument(f"--{flag}", action="store_true")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument("suite", choices=SUITE_NAMES)
    _field_args(sp)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--timing", action="store_true", help="fill elapsed_ms (not reproducible)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("semifield", help="semifield constructions and checks")
    ssub = sp.add_subparsers(dest="action", required=True)

    s = ssub.add_parser("dickson", parents=[common], help="Dickson's commutative semifield over F_q x F_q")
    _field_args(s, m=False)
    s.add_argument("--sigma", type=int, default=1, help="Frobenius power of the twist")
    s.add_argument("--k", type=int, help="nonsquare (element index); default the first one")
    s.set_defaults(func=cmd_sf_dickson)

    s = ssub.add_parser("field", parents=[common], help="F_{q^n} as a semifield over F_q")
    _field_args(s, m=False)
    s.add_argument("--n", type=int, default=2)
    s.set_defaults(func=cmd_sf_field)

    s = ssub.add_parser("extract", parents=[common], help="read a pre-semifield off a Lie algebra file")
    s.add_argument("file")
    s.add_argument("--normalize", action="store_true", help="return the isotopic semifield with identity")
    s.set_defaults(func=cmd_sf_extract)

    s = ssub.add_parser("mid", parents=[common], help="middle nucleus of a semifield file")
    s.add_argument("file")
    s.set_defaults(func=cmd_sf_mid)

    s = ssub.add_parser("isotopy-check", parents=[common], help="verify an isotopism between two files")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("isotopism", help='JSON with matrices "A", "B", "C"')
    s.set_defaults(func=cmd_sf_isotopy)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except LA.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SF.HypothesisFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, UnknownSuite, FieldError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
