"""``eulerchi`` command line.

Exit codes: 0 ok, 1 a requested verdict or self-check failed, 2 usage error,
3 data error (integrality or admissibility), 4 search budget exhausted,
130 interrupted.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from . import appendix, chi, eulerian, monodromy, selftest

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_BUDGET = 4
EXIT_INTERRUPTED = 130


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


def parse_int_range(text: str) -> List[int]:
    """``"2"``, ``"2..5"`` (inclusive) or ``"2,4,9"``."""
    out: List[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError as exc:
        raise UsageError(f"bad integer range {text!r}") from exc
    return out


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _positive(name: str, value: Optional[int], allow_zero: bool = False) -> int:
    if value is None:
        raise UsageError(f"--{name} is required")
    if value < 0 or (value == 0 and not allow_zero):
        raise UsageError(f"--{name} must be positive")
    return value


# eulerian ---------------------------------------------------------------

def cmd_eulerian(args) -> int:
    r = _positive("r", args.r)
    n = _positive("n", args.n)
    if args.k is not None:
        if args.k < 0:
            raise UsageError("--k must be non-negative")
        values = [eulerian.generalized_eulerian(r, n, args.k)]
    else:
        values = list(eulerian.generalized_eulerian_row(r, n))
    if args.format == "json":
        doc = {"r": r, "n": n, "k": args.k, "values": [str(v) for v in values]}
        _emit(args, _dump_json(doc))
    elif args.format == "csv":
        start = args.k if args.k is not None else 0
        _emit(args, _csv([("k", "value")] + [(start + i, v) for i, v in enumerate(values)]))
    else:
        _emit(args, " ".join(map(str, values)) + "\n")
    return EXIT_OK


# chi / numcond ----------------------------------------------------------

def _load_profile(path: str) -> chi.IntersectionProfile:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
    try:
        return chi.IntersectionProfile.from_json(data)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _chi_from_args(args) -> chi.ChiSequence:
    if args.profile:
        profile = _load_profile(args.profile)
        if args.check_admissible and not profile.is_admissible():
            raise DataError("profile has an intersection number below n!")
        try:
            return chi.chi_from_profile(profile)
        except chi.IntegralityError as exc:
            raise DataError(str(exc)) from exc
    if args.same_class:
        r = _positive("r", args.r)
        n = _positive("n", args.n)
        d = args.d if args.d else [1] * r
        try:
            dp = chi.DegreeProfile(r, n, tuple(d), args.h)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return chi.chi_same_class(dp)
    raise UsageError("give --profile FILE or --same-class --r R --n N [--d ...] [--h H]")


def _div6(seq: chi.ChiSequence) -> Optional[bool]:
    # sum of magnitudes equals the topological Euler characteristic
    if not 2 * seq.r < seq.n:
        return None
    return sum(seq.values) % 6 == 0


def _bool(v: Optional[bool]) -> str:
    return "n/a" if v is None else str(v).lower()


def cmd_chi(args) -> int:
    seq = _chi_from_args(args)
    numcond = chi.numerical_condition(seq)
    div6 = _div6(seq)
    if args.format == "json":
        doc = seq.to_json()
        doc.update({"numerical_condition": numcond, "divisible_by_six": div6})
        _emit(args, _dump_json(doc))
    elif args.format == "csv":
        rows = [("q", "magnitude", "signed")] + [(q, v, seq.signed(q)) for q, v in enumerate(seq.values)]
        _emit(args, _csv(rows))
    else:
        values = " ".join(map(str, seq.values))
        _emit(args, f"{values}; numcond: {_bool(numcond)}; div6: {_bool(div6)}\n")
    return EXIT_OK


def cmd_numcond(args) -> int:
    if args.values:
        try:
            values = tuple(int(v) for v in args.values)
            if any(v < 0 for v in values):
                raise ValueError
        except ValueError as exc:
            raise UsageError("--values must be non-negative integers") from exc
    else:
        values = _chi_from_args(args).values
    holds = chi.numerical_condition(values)
    lhs = 2 * sum(v * v for v in values)
    rhs = sum(values) ** 2
    if args.format == "json":
        _emit(args, _dump_json({"values": [str(v) for v in values], "lhs": str(lhs), "rhs": str(rhs), "holds": holds}))
    elif args.format == "csv":
        _emit(args, _csv([("lhs", "rhs", "holds"), (lhs, rhs, str(holds).lower())]))
    else:
        _emit(args, f"numcond: {_bool(holds)} ({lhs} <= {rhs})\n")
    return EXIT_OK if holds else EXIT_FAILED


# search -----------------------------------------------------------------

def _system_from_args(args) -> monodromy.SystemInstance:
    mode = monodromy.Mode(args.mode)
    if args.plant:
        if args.k is None:
            raise UsageError("--plant needs --k")
        try:
            m_H = monodromy.IndexFunction.parse(args.plant)
            return monodromy.plant_instance(m_H, args.k, mode)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if args.target:
        try:
            return monodromy.SystemInstance(tuple(int(v) for v in args.target), mode)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return monodromy.SystemInstance.from_chi(_chi_from_args(args), mode)


def cmd_search(args) -> int:
    system = _system_from_args(args)
    max_m = _positive("max-m", args.max_m)
    width = args.max_width if args.max_width is not None else max_m
    try:
        bounds = monodromy.SearchBounds(max_m, width, args.time_budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = monodromy.search(system, bounds, workers=args.workers)
    doc = report.to_json(include_timing=not args.no_timing)
    if args.format == "csv":
        rows = [("offset", "counts", "k", "s", "mirror_tag")]
        for f in report.solutions:
            c = f.candidate
            rows.append((c.m_H.offset, " ".join(map(str, c.m_H.counts)), c.k, c.s, f.mirror_tag))
        _emit(args, _csv(rows))
    elif args.format == "plain":
        lines = [f"target: {' '.join(map(str, system.target))} ({system.mode.value})"]
        for f in report.solutions:
            c = f.candidate
            lines.append(f"m_H={c.m_H.as_dict()} k={c.k} s={c.s} [{f.mirror_tag}]")
        lines.append(f"solutions: {len(report.solutions)}; exhausted: {_bool(report.exhausted)}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _dump_json(doc))
    if report.interrupted:
        return EXIT_INTERRUPTED
    return EXIT_BUDGET if report.budget_exhausted else EXIT_OK


# verify-appendix / sweep ------------------------------------------------

def _grid(args):
    if args.r is None:
        raise UsageError("--r is required")
    rs = parse_int_range(args.r)
    if not rs or any(r < 1 for r in rs):
        raise UsageError("--r must list positive integers")
    if args.thresholds or args.quartic:
        fn = appendix.threshold_quartic if args.quartic else appendix.threshold_quadratic
        return rs, lambda r: [fn(r)]
    if args.n is None:
        raise UsageError("give --n or --thresholds")
    ns = parse_int_range(args.n)
    if any(n < 1 for n in ns):
        raise UsageError("--n must list positive integers")
    return rs, ns


def _run_sweep(args) -> tuple:
    rs, ns = _grid(args)
    only = None
    if args.only:
        only = [name for part in args.only for name in part.split(",") if name]
        unknown = set(only) - set(appendix.CHECK_NAMES)
        if unknown:
            raise UsageError(f"unknown check(s) {sorted(unknown)}; choose from {', '.join(appendix.CHECK_NAMES)}")
    s_values = parse_int_range(args.s_values) if args.s_values else appendix.LARGE_S_VALUES
    if any(s < 1 for s in s_values):
        raise UsageError("--s-values must be positive")
    verdicts: List[appendix.IneqVerdict] = []
    interrupted = False
    try:
        for chunk in appendix.iter_sweep(rs, ns, only=only, s_values=s_values, workers=args.workers):
            verdicts.extend(chunk)
    except KeyboardInterrupt:
        interrupted = True
    return verdicts, interrupted


def _write_verdicts(args, verdicts, interrupted: bool) -> None:
    if args.format == "csv":
        _emit(args, appendix.report_csv(verdicts))
    elif args.format == "plain":
        lines = []
        for v in verdicts:
            extra = f" s={v.params['s']}" if "s" in v.params else ""
            lines.append(f"{v.name} r={v.params['r']} n={v.params['n']}{extra}: {v.outcome.value}")
        if interrupted:
            lines.append("interrupted")
        _emit(args, "\n".join(lines) + "\n")
    else:
        doc = {
            "verdicts": [v.to_json() for v in verdicts],
            "all_hold": bool(verdicts) and all(v.holds for v in verdicts),
            "interrupted": interrupted,
        }
        _emit(args, _dump_json(doc))


def _profile_verdicts(args) -> List[appendix.IneqVerdict]:
    profile = _load_profile(args.profile)
    for flag in appendix.mixed_log_concavity_flags(profile):
        sys.stderr.write(f"eulerchi: warning: {flag}\n")
    try:
        seq = chi.chi_from_profile(profile)
    except chi.IntegralityError as exc:
        raise DataError(str(exc)) from exc
    only = [name for part in args.only for name in part.split(",") if name] if args.only else None
    try:
        s_values = parse_int_range(args.s_values) if args.s_values else appendix.LARGE_S_VALUES
        return appendix.run_checks(seq, only=only, s_values=s_values, profile_id=Path(args.profile).stem)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_verify_appendix(args) -> int:
    if args.profile:
        verdicts, interrupted = _profile_verdicts(args), False
    else:
        verdicts, interrupted = _run_sweep(args)
    _write_verdicts(args, verdicts, interrupted)
    if interrupted:
        return EXIT_INTERRUPTED
    return EXIT_OK if verdicts and all(v.holds for v in verdicts) else EXIT_FAILED


def cmd_sweep(args) -> int:
    verdicts, interrupted = _run_sweep(args)
    _write_verdicts(args, verdicts, interrupted)
    return EXIT_INTERRUPTED if interrupted else EXIT_OK


# selftest ---------------------------------------------------------------

def cmd_selftest(args) -> int:
    seed = 0 if args.seed is None else args.seed
    results = selftest.run(seed)
    ok = all(r.passed for r in results)
    if args.format == "json":
        doc = {
            "seed": seed,
            "passed": ok,
            "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        }
        _emit(args, _dump_json(doc))
    elif args.format == "csv":
        _emit(args, _csv([("name", "passed", "detail")] + [(r.name, str(r.passed).lower(), r.detail) for r in results]))
    else:
        lines = [f"seed {seed}"] + [r.line() for r in results]
        lines.append("selftest: " + ("ok" if ok else "FAILED"))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAILED


# parser -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("plain", "json", "csv"), default=None,
                   help="output format (default plain; search defaults to json)")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes for search and sweeps (default $EULERCHI_WORKERS or 1)")
    p.add_argument("--seed", type=int, default=None, help="seed for randomised suites")
    return p


def _profile_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--profile", help="intersection profile JSON file")
    p.add_argument("--same-class", action="store_true", help="hypersurfaces d_i H with H^n/n! = h")
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int, nargs="+", help="degrees d_1..d_r (default all 1)")
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--check-admissible", action="store_true",
                   help="reject profiles with an intersection number below n!")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="eulerchi", description="Eulerian numbers, Euler characteristics and the wedge-power system.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("eulerian", parents=[common], help="E_r(n, k) or a full row")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_eulerian)

    p = sub.add_parser("chi", parents=[common], help="|chi(X, Omega^q)| from a profile")
    _profile_flags(p)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("numcond", parents=[common], help="2 sum chi^2 <= (sum chi)^2")
    _profile_flags(p)
    p.add_argument("--values", nargs="+", help="chi magnitudes given directly")
    p.set_defaults(func=cmd_numcond)

    p = sub.add_parser("search", parents=[common], help="exhaustive search of the wedge-power system")
    _profile_flags(p)
    p.add_argument("--target", nargs="+", help="right-hand side chi_0 .. chi_{n-r}")
    p.add_argument("--plant", help='build the target from m_H, e.g. "0:1,1:1,2:1,3:1"')
    p.add_argument("--k", type=int, help="k for --plant")
    p.add_argument("--mode", choices=[m.value for m in monodromy.Mode], default="all_integers")
    p.add_argument("--max-m", type=int, default=8)
    p.add_argument("--max-width", type=int)
    p.add_argument("--time-budget", type=float, help="seconds; 0 stops immediately")
    p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 for byte-stable output")
    p.set_defaults(func=cmd_search)

    for name, func, text in (
        ("verify-appendix", cmd_verify_appendix, "exit 0 iff every requested inequality holds"),
        ("sweep", cmd_sweep, "record inequality verdicts over a grid"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--r", help='e.g. "2", "2..3" or "2,5"')
        p.add_argument("--n", help='e.g. "8" or "6..14"')
        p.add_argument("--thresholds", action="store_true", help="n = 10 r^2 + 1000")
        p.add_argument("--quartic", action="store_true", help="n = 10 r^4 + 1000")
        p.add_argument("--only", action="append", help=f"subset of {', '.join(appendix.CHECK_NAMES)}")
        p.add_argument("--s-values", help="s values for the large-s check (default 2..5)")
        if name == "verify-appendix":
            p.add_argument("--profile", help="check one intersection profile JSON file instead of a grid")
        p.set_defaults(func=func)

    p = sub.add_parser("selftest", parents=[common], help="cross-route consistency suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        if args.format is None:
            args.format = "json" if args.command == "search" else "plain"
        if args.workers is None:
            args.workers = monodromy.default_workers()
        elif args.workers < 1:
            raise UsageError("--workers must be at least 1")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"eulerchi: {exc}\n")
        return EXIT_USAGE
    except DataError as exc:
        sys.stderr.write(f"eulerchi: data error: {exc}\n")
        return EXIT_DATA
    except KeyboardInterrupt:
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
