"""``lefschetz`` command line: classify, verify, survey, froberg, witness.

Exit codes: 0 Holds / true, 1 Fails / false, 2 Unknown, 3 dimension cap hit,
64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from pathlib import Path
from typing import Sequence

from .algebra import MonomialCI, normalize
from .classify import Certificate, OracleFailure, Status, classify_slp, classify_wlp, zero_divisor_power
from .errors import DimensionCap, LefschetzError
from .froberg import check_froberg_n_plus_1
from .oracle import DIMENSION_CAP, has_maximal_rank_power, verify_slp, witness_is_zero
from .survey import CSV_HEADER, METHODS, SET_DEFS, default_jobs, survey

EX_OK, EX_FAIL, EX_UNKNOWN, EX_CAP = 0, 1, 2, 3
EX_USAGE, EX_IOERR = 64, 74

_STATUS_EXIT = {Status.HOLDS: EX_OK, Status.FAILS: EX_FAIL, Status.UNKNOWN: EX_UNKNOWN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _degree_list(text: str) -> list[int]:
    out = _int_list(text)
    if not out:
        raise argparse.ArgumentTypeError("at least one degree is required")
    return out


def monomial(exponents: Sequence[int]) -> str:
    parts = [f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exponents, 1) if e]
    return " ".join(parts) or "1"


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _algebra(args) -> MonomialCI:
    ci = normalize(args.degrees, args.char)
    if ci.dropped:
        logging.getLogger(__name__).info("dropped %d degree-1 generator(s)", ci.dropped)
    return ci


# --- classify --------------------------------------------------------------


def cmd_classify(args) -> int:
    start = time.perf_counter()
    ci = _algebra(args)
    if args.property == "slp":
        verdict = classify_slp(ci)
    else:
        verdict = classify_wlp(ci, use_oracle_fallback=args.oracle_fallback)
    elapsed = time.perf_counter() - start

    cert = verdict.certificate
    payload = {
        "property": args.property,
        "status": verdict.status.value,
        "rule": verdict.rule,
        "certificate": cert.to_dict() if cert is not None else None,
        "degrees": list(ci.degrees),
        "char": ci.p,
        "timings": {"total_s": round(elapsed, 6)},
    }
    lines = [f"{args.property.upper()} {verdict.status.value} for {ci}", f"rule: {verdict.rule}"]
    if isinstance(cert, Certificate):
        lam = ",".join(map(str, cert.lam))
        lines.append(
            f"certificate: lambda={{{lam}}} m={cert.m} power={cert.power} "
            f"witness={monomial(cert.witness)}"
        )
    elif isinstance(cert, OracleFailure):
        lines.append(f"oracle: s^{cert.power} not injective in degree {cert.degree}")
    if args.property == "slp" and ci.n == 2:
        lines.append("note: two-variable SLP is outside the closed classification")
    _emit(args, payload, lines)
    return _STATUS_EXIT[verdict.status]


# --- verify ----------------------------------------------------------------


def cmd_verify(args) -> int:
    start = time.perf_counter()
    ci = _algebra(args)
    payload: dict = {"property": args.property, "degrees": list(ci.degrees), "char": ci.p}
    if args.property == "slp":
        check = verify_slp(ci, full_report=True, fast=args.fast, cap=args.cap)
        reports = check.reports if args.full_report else check.reports[-1:]
        holds = check.holds
        payload.update(
            holds=holds,
            failing_power=check.failing_power,
            scope="s-SLP (candidate s only)" if check.s_only else "SLP",
            reports=[r.to_dict() for r in reports],
        )
        lines = [f"holds={str(holds).lower()}"]
        if check.failing_power is not None:
            lines.append(f"failing_power={check.failing_power}")
        if check.s_only:
            lines.append("scope: s-SLP (candidate s only, not intrinsic)")
    else:
        if args.property == "power":
            if args.power is None or args.power < 1:
                raise UsageError("--property power needs --power m with m >= 1")
            m = args.power
        else:
            m = 1
        report = has_maximal_rank_power(ci, m, fast=args.fast, cap=args.cap)
        holds = report.holds
        payload.update(holds=holds, report=report.to_dict())
        lines = [f"holds={str(holds).lower()}"]
        if report.first_failure is not None:
            lines.append(f"first_failure=degree {report.first_failure}")
        if args.full_report:
            for c in report.checks:
                lines.append(
                    f"  s^{m}: A_{c.degree} ({c.dim_source}) -> A_{c.degree + m} "
                    f"({c.dim_target}) rank {c.rank}/{c.required}"
                )
    payload["timings"] = {"total_s": round(time.perf_counter() - start, 6)}
    _emit(args, payload, lines)
    return EX_OK if holds else EX_FAIL


# --- survey ----------------------------------------------------------------


def cmd_survey(args) -> int:
    jobs = args.jobs if args.jobs is not None else default_jobs()
    if jobs < 1:
        raise UsageError("--jobs must be positive")
    try:
        row = survey(
            args.vars,
            args.min_degree,
            args.max_degree,
            args.char,
            args.partition,
            args.set_defs,
            method=args.method,
            jobs=jobs,
            cache=args.cache,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    csv_text = CSV_HEADER + "\n" + row.csv_line()
    if args.out:
        out = Path(args.out)
        out.write_text(row.to_json() if out.suffix == ".json" else csv_text)
    if args.format == "json":
        sys.stdout.write(row.to_json())
    elif args.format == "csv":
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write(
            f"n={row.n} d in [{row.d_min},{row.d_max}] p={row.p} partition={row.partition} "
            f"set_defs={row.set_defs} method={row.method}\n"
            f"A={row.A} B={row.B} C={row.C} D={row.D} remainder={row.remainder}\n"
            f"tuples={row.tuples_total} skipped={row.tuples_skipped} time={row.wall_time}s\n"
        )
    return EX_OK


# --- froberg ---------------------------------------------------------------


def cmd_froberg(args) -> int:
    if len(args.form_degrees) != args.vars + 1:
        raise UsageError(f"--form-degrees needs {args.vars + 1} entries for {args.vars} variables")
    if any(d < 1 for d in args.form_degrees):
        raise UsageError("form degrees must be positive")
    *base, extra = args.form_degrees
    ci = normalize(base, args.char)
    check = check_froberg_n_plus_1(ci, extra)
    computed, conjectured = check.computed.as_list(), check.conjectured.as_list()
    payload = {
        "vars": args.vars,
        "form_degrees": list(args.form_degrees),
        "char": args.char,
        "equal": check.equal,
        "computed": computed,
        "conjectured": conjectured,
    }
    lines = [
        f"equal={str(check.equal).lower()}",
        f"computed    {computed}",
        f"conjectured {conjectured}",
    ]
    _emit(args, payload, lines)
    return EX_OK if check.equal else EX_FAIL


# --- witness ---------------------------------------------------------------


def _random_forms(ci: MonomialCI, count: int) -> list[list[int]]:
    rng = random.Random(0)
    forms = [[1] * ci.n]
    for _ in range(count):
        forms.append([rng.randrange(1, ci.p) for _ in range(ci.n)])
    return forms


def cmd_witness(args) -> int:
    ci = _algebra(args)
    m, witness, trivial = zero_divisor_power(ci, args.lam)
    power = m * ci.p
    verified = None
    if not trivial:
        forms = _random_forms(ci, args.samples)
        verified = all(witness_is_zero(ci, c, power, witness) for c in forms)
    certifies = not trivial and 2 * sum(witness) <= ci.t - power
    payload = {
        "degrees": list(ci.degrees),
        "char": ci.p,
        "certificate": {"lambda": list(args.lam), "m": m, "power": power, "witness": list(witness)},
        "trivial": trivial,
        "verified": verified,
        "certifies_slp_failure": certifies,
    }
    lines = [f"m={m}", f"power={power}", f"witness={monomial(witness)}"]
    if trivial:
        lines.append("trivial: the witness is zero in the algebra")
    else:
        lines.append("verified" if verified else "NOT verified")
        lines.append(f"certifies SLP failure: {'yes' if certifies else 'no'}")
    _emit(args, payload, lines)
    return EX_FAIL if verified is False else EX_OK


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lefschetz", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def algebra_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--degrees", type=_degree_list, required=True, metavar="D1,D2,...")
        p.add_argument("--char", type=int, required=True, metavar="P")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("classify", help="decide SLP/WLP by the closed rules")
    p.add_argument("--property", choices=("slp", "wlp"), required=True)
    algebra_args(p)
    p.add_argument("--oracle-fallback", action="store_true",
                   help="decide Unknown WLP cases with the rank oracle")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="decide by exact rank computation")
    p.add_argument("--property", choices=("slp", "wlp", "power"), required=True)
    p.add_argument("--power", type=int, metavar="M")
    algebra_args(p)
    p.add_argument("--full-report", action="store_true")
    p.add_argument("--fast", action="store_true",
                   help="check only the middle degree of each power")
    p.add_argument("--cap", type=int, default=DIMENSION_CAP,
                   help="largest graded piece to build (default %(default)s)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("survey", help="count WLP tuples explained by each rule")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--min-degree", type=int, default=2)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--char", type=int, required=True)
    p.add_argument("--partition", default="all", help="d1=2, d1>=3, ... (d1 is the smallest degree)")
    p.add_argument("--set-defs", choices=SET_DEFS, default="strict")
    p.add_argument("--method", choices=METHODS, default="jordan")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: $LEFSCHETZ_JOBS or all cores)")
    p.add_argument("--out", metavar="FILE", help="write the row as CSV, or JSON for *.json")
    p.add_argument("--cache", metavar="FILE", help="append-only per-tuple verdict cache")
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("froberg", help="compare A/(s^e) with the conjectured series")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--form-degrees", type=_degree_list, required=True, metavar="D1,...,DN,E")
    p.add_argument("--char", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_froberg)

    p = sub.add_parser("witness", help="zero-divisor certificate for an index set")
    algebra_args(p)
    p.add_argument("--lambda", dest="lam", type=_int_list, required=True, metavar="I,J,...",
                   help="1-based positions in the descending degree tuple; may be empty")
    p.add_argument("--samples", type=int, default=8, help="random linear forms to test")
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except DimensionCap as exc:
        err = {"error": "DimensionCap", "degree": exc.degree, "dimension": exc.dimension, "cap": exc.cap}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return EX_CAP
    except (UsageError, LefschetzError) as exc:
        sys.stderr.write(f"lefschetz: error: {exc}\n")
        return EX_USAGE
    except OSError as exc:
        sys.stderr.write(f"lefschetz: I/O error: {exc}\n")
        return EX_IOERR


if __name__ == "__main__":
    sys.exit(main())
