"""Command-line front end.

Exit codes: 0 success, 1 a verification or certificate check failed,
2 bad usage (including an exceeded letter budget, which is reported with
its own message).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from . import fileformat
from .emit import FORMATS, rational, render, report_row
from .ledger import LedgerError, h1_of_fiber_quotient, sanity_bounds, slope_report
from .pipelines import (
    EXPLICIT,
    LEDGER,
    BudgetExceeded,
    CertificateError,
    PipelineError,
    closed_form_invariants,
    doubling_sequence,
    hyperelliptic_base,
    lantern_walk,
    simply_connected_member,
    slope_limit,
)
from .words import verify_relator_homology


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


def _positive(name: str, v: int, low: int = 1) -> None:
    if v < low:
        raise UsageError(f"--{name} must be >= {low}, got {v}")


def _emit(args, rows, columns) -> None:
    sys.stdout.write(render(rows, columns, args.format))


def _save(args, word, claims=False) -> None:
    if args.out:
        if word is None:
            raise UsageError("--out needs an explicit word; ledger mode has none")
        fileformat.save(args.out, word, claims)


def cmd_base(args) -> None:
    _positive("g", args.g, 2)
    w = hyperelliptic_base(args.g)
    row = {"g": args.g, **report_row(slope_report(w))}
    _save(args, w)
    _emit(args, [row], ["g"] + list(report_row(slope_report(w))))


THM124_COLUMNS = ["i", "r_i", "n_twists", "sigma", "e", "K2", "chi_f", "slope", "slope_decimal"]


def _sequence_rows(g: int, h: int, r: int, n: int, mode: str, budget: Optional[int]):
    """Rows for one (g, h, r) point plus a list of failed cross-checks."""
    base = hyperelliptic_base(g)
    states = doubling_sequence(base, h, r, n, mode, budget=budget)
    b = slope_report(base)
    rows, failures = [], []
    for st in states:
        rep = slope_report(st.ledger)
        cf = closed_form_invariants(b.K2, b.chi_f, r, h, st.step)
        if (rep.K2, 4 * rep.chi_f) != (cf.K2, cf.four_chi):
            failures.append(f"step {st.step}: ledger ({rep.K2}, {4 * rep.chi_f}) != closed form ({cf.K2}, {cf.four_chi})")
        if st.word is not None:
            if not verify_relator_homology(st.word):
                failures.append(f"step {st.step}: homology identity fails")
            if st.step and st.word.count("c_1") != st.r:
                failures.append(f"step {st.step}: literal c_1 count {st.word.count('c_1')} != {st.r}")
        if not sanity_bounds(rep).ok:
            failures.append(f"step {st.step}: sanity bounds {sanity_bounds(rep).failures}")
        row = {"g": g, "h": h, "r": r, "i": st.step, "r_i": st.r, "limit": rational(slope_limit(h))}
        row.update(report_row(rep))
        rows.append(row)
    return rows, failures, states[-1].word


def cmd_thm124(args) -> None:
    _positive("g", args.g, 2)
    if not 1 <= args.h <= args.g - 1:
        raise UsageError(f"--h must lie in 1..{args.g - 1}")
    _positive("r", args.r)
    _positive("n", args.n, 0)
    rows, failures, word = _sequence_rows(args.g, args.h, args.r, args.n, args.mode, args.max_letters)
    _save(args, word)
    _emit(args, rows, THM124_COLUMNS)
    if failures:
        raise CheckFailed("; ".join(failures))


THM12_COLUMNS = [
    "g", "n", "n_twists", "sigma", "e", "K2", "chi_f", "slope", "slope_decimal", "upper_bound",
    "bounds", "homology_identity", "chain_present", "h1_trivial", "minimal",
]


def cmd_thm12(args) -> None:
    _positive("g", args.g, 3)
    _positive("n", args.n, 0)
    try:
        fam = simply_connected_member(args.g, args.n, args.mode, args.max_letters)
    except CertificateError as exc:
        raise CheckFailed(str(exc)) from exc
    c = fam.certificates
    row = {"g": args.g, "n": args.n, **report_row(fam.report)}
    upper = 2 + Fraction(4 * args.g - 8, 2**args.n)
    row.update(
        upper_bound=rational(upper),
        bounds=c.slope_bounds,
        homology_identity=c.homology_identity,
        chain_present=c.chain_present,
        h1_trivial=c.h1_trivial,
        minimal=c.minimal,
    )
    _save(args, fam.word, claims=True)
    _emit(args, [row], THM12_COLUMNS)


LANTERN_COLUMNS = ["direction", "before", "fiber_sum", "after", "K2_before", "K2_after", "chi_f_before", "chi_f_after", "verdict"]


def cmd_lantern(args) -> None:
    if args.input:
        w = _load(args.input).word
    elif args.family is not None:
        _positive("g", args.g, 3)
        fam = simply_connected_member(args.g, args.family, EXPLICIT, args.max_letters)
        w = fam.word
    else:
        _positive("g", args.g, 3)
        w = hyperelliptic_base(args.g)
    if w.genus < 3:
        raise UsageError("lantern walks need genus >= 3")
    res = lantern_walk(w, args.curve, args.dir)
    row = {
        "direction": args.dir,
        "before": rational(res.before.slope),
        "fiber_sum": rational(res.fiber_sum.slope),
        "after": rational(res.after.slope),
        "K2_before": res.before.K2,
        "K2_after": res.after.K2,
        "chi_f_before": res.before.chi_f,
        "chi_f_after": res.after.chi_f,
        "verdict": res.verdict,
    }
    _save(args, res.word)
    _emit(args, [row], LANTERN_COLUMNS)
    expected = "decreased" if args.dir == "down" else "increased"
    if res.verdict != expected or not verify_relator_homology(res.word):
        raise CheckFailed(f"lantern walk {args.dir}: slope {res.verdict}")


def _load(path: str, strict: bool = True) -> fileformat.MonodromyFile:
    try:
        return fileformat.load(path, strict)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except fileformat.FormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_verify(args) -> None:
    f = _load(args.file, strict=False)
    w = f.word
    checks = []
    checks.append(("homology_identity", verify_relator_homology(w), ""))
    detail = f"ledger n={f.declared_n}, letters={len(w)}"
    ok = f.ledger_consistent
    try:
        rep = slope_report(w)
        sb = sanity_bounds(rep)
        checks.append(("ledger_consistent", ok, detail))
        checks.append(("sanity_bounds", sb.ok, ",".join(sb.failures)))
        slope = rational(rep.slope)
    except LedgerError as exc:
        checks.append(("ledger_consistent", False, f"{detail}; {exc}"))
        slope = "-"
    divisors = h1_of_fiber_quotient(w)
    h1 = "trivial" if not divisors else "divisors " + " ".join(map(str, divisors))
    if f.claims_simply_connected:
        present = w.named_curves()
        missing = [c for c in w.surface.chain() if c not in present]
        checks.append(("chain_present", not missing, ",".join(missing)))
        checks.append(("h1_trivial", not divisors, h1))
    else:
        checks.append(("h1_quotient", True, h1))
    checks.append(("slope", True, slope))
    rows = [{"check": c, "ok": o, "detail": d} for c, o, d in checks]
    _emit(args, rows, ["check", "ok", "detail"])
    bad = [c for c, o, _ in checks if not o]
    if bad:
        raise CheckFailed("failed: " + ", ".join(bad))


TABLE_COLUMNS = ["g", "h", "r", "i", "r_i", "n_twists", "sigma", "e", "K2", "chi_f", "slope", "slope_decimal", "limit"]


def _table_point(point):
    g, h, r, n, mode, budget = point
    rows, failures, _ = _sequence_rows(g, h, r, n, mode, budget)
    return rows, failures


def cmd_table(args) -> None:
    for g in args.g:
        _positive("g", g, 2)
    for r in args.r:
        _positive("r", r)
    _positive("n", args.n, 0)
    _positive("jobs", args.jobs)
    points = [
        (g, h, r, args.n, args.mode, args.max_letters)
        for g in sorted(set(args.g))
        for h in sorted(set(args.h or range(1, g)))
        if 1 <= h <= g - 1
        for r in sorted(set(args.r))
    ]
    if not points:
        raise UsageError("no valid (g, h, r) points")
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            results = list(ex.map(_table_point, points))
    else:
        results = [_table_point(p) for p in points]
    rows = [row for rs, _ in results for row in rs]
    _emit(args, rows, TABLE_COLUMNS)
    failures = [f for _, fs in results for f in fs]
    if failures:
        raise CheckFailed("; ".join(failures))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lowslope", description="Low-slope Lefschetz fibration constructions.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, mode_default=EXPLICIT, with_mode=True):
        sp.add_argument("--format", choices=FORMATS, default="text")
        sp.add_argument("--out", help="write the resulting word as a monodromy file")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--max-letters", type=int, default=None, help="letter budget for explicit mode")
        if with_mode:
            sp.add_argument("--mode", choices=(EXPLICIT, LEDGER), default=mode_default)

    sp = sub.add_parser("base", help="hyperelliptic base relator")
    sp.add_argument("--g", type=int, required=True)
    common(sp, with_mode=False)
    sp.set_defaults(func=cmd_base)

    sp = sub.add_parser("thm124", help="doubling sequence from the hyperelliptic base")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--h", type=int, default=1)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--n", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_thm124)

    sp = sub.add_parser("thm12", help="simply connected family member with certificates")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--n", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_thm12)

    sp = sub.add_parser("lantern", help="lantern slope walk")
    sp.add_argument("--dir", choices=("down", "up"), required=True)
    sp.add_argument("--g", type=int, default=3)
    sp.add_argument("--curve", default="c_1")
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--input", help="walk on the word stored in this monodromy file")
    src.add_argument("--family", type=int, default=None, metavar="N", help="walk on the N-th family member")
    common(sp, with_mode=False)
    sp.set_defaults(func=cmd_lantern)

    sp = sub.add_parser("verify", help="re-check a monodromy file")
    sp.add_argument("file")
    common(sp, with_mode=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table", help="grid sweep over (g, h, r)")
    sp.add_argument("--g", type=int, nargs="+", required=True)
    sp.add_argument("--h", type=int, nargs="+", default=None)
    sp.add_argument("--r", type=int, nargs="+", default=[1])
    sp.add_argument("--n", type=int, default=4)
    common(sp, mode_default=LEDGER)
    sp.set_defaults(func=cmd_table)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"lowslope: error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"lowslope: letter budget exceeded: {exc} (use --mode ledger or raise --max-letters)", file=sys.stderr)
        return 2
    except (CheckFailed, PipelineError) as exc:
        print(f"lowslope: verification failed: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
