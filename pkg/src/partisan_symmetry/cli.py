"""Command-line entry point: ``partisan-symmetry <command> ...``.

Exit codes: 0 success, 1 usage or domain error, 2 budget refusal, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    mm_range_fixed,
    mm_range_limit,
    pb_range_fixed,
    pb_range_limit,
    region_raster,
    zero_region_contains,
)
from .election import DomainError, Election, ElectionError, SVPair, UnsupportedInputError, as_fraction, infeasibility_reason, seat_share, statewide_vote_share
from .metrics import declination, efficiency_gap, mean_median, partisan_bias, seats_votes_curve

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Exact value as p/q with a 6-decimal approximation."""
    if x is None:
        return "undefined"
    x = Fraction(x)
    exact = str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return f"{exact} ({float(x):.6f})"


def fmt_interval(iv) -> str:
    if iv.forced_value is not None:
        return f"forced {fmt(iv.forced_value)}"
    left = "[" if iv.lo_closed else "("
    right = "]" if iv.hi_closed else ")"
    return f"{left}{fmt(iv.lo)}, {fmt(iv.hi)}{right}"


def _frac(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError, ElectionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _write_manifest(out: Path, command: str, args: argparse.Namespace, extra=None) -> None:
    out.mkdir(parents=True, exist_ok=True)
    config = {k: (str(v) if isinstance(v, (Fraction, Path)) else v)
              for k, v in sorted(vars(args).items()) if k != "func"}
    manifest = {"command": command, "version": __version__, "config": config}
    if extra:
        manifest.update(extra)
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, default=str) + "\n")


# -- metrics ------------------------------------------------------------


def cmd_metrics(args) -> int:
    e = Election.load(args.election)
    out = Path(args.out)
    lines = [f"n  = {e.n}", f"V  = {fmt(statewide_vote_share(e))}", f"S  = {fmt(seat_share(e).S)}",
             f"MM = {fmt(mean_median(e))}", f"PB = {fmt(partisan_bias(e))}"]
    if e.equal_turnout:
        lines.append(f"EG = {fmt(efficiency_gap(e))}")
    else:
        lines.append("EG = unsupported: efficiency gap needs equal turnout")
    dec = declination(e)
    lines.append(f"DEC = {float(dec.value):.6f} (approximate)" if dec.defined
                 else "DEC = undefined (one party wins every district)")
    print("\n".join(lines))
    if args.curve_csv or args.curve_svg:
        if not e.equal_turnout:
            raise ElectionError("seats-votes curve needs equal turnout")
        curve = seats_votes_curve(e)
        if args.curve_csv:
            Path(args.curve_csv).parent.mkdir(parents=True, exist_ok=True)
            Path(args.curve_csv).write_text(curve.to_csv())
        if args.curve_svg:
            from .svg import curve_svg
            Path(args.curve_svg).parent.mkdir(parents=True, exist_ok=True)
            Path(args.curve_svg).write_text(curve_svg(curve))
    _write_manifest(out, "metrics", args)
    return EXIT_OK


# -- bounds -------------------------------------------------------------


def cmd_bounds(args) -> int:
    from .constructors import (
        construct_mm_extremal,
        construct_pb_extremal,
        construct_zero,
        plan_mm_extremal,
        plan_pb_extremal,
        plan_zero,
    )

    V, S, n = args.V, args.S, args.n
    reason = infeasibility_reason(V, S)
    if reason is not None:
        raise ElectionError(f"(V={V}, S={S}) is infeasible: violates {reason}")
    if (args.witness or args.plan) and n is None:
        raise UsageError("--witness and --plan need --n")
    if n is None:
        pb, mm = pb_range_limit(V, S), mm_range_limit(V, S)
        scope = "any number of districts"
    else:
        p = SVPair.of(V, S, n)
        pb = pb_range_fixed(p)
        mm = mm_range_fixed(p) if n >= 3 else None
        scope = f"n = {n}"
    zero = zero_region_contains(V, S)
    print(f"V = {fmt(V)}, S = {fmt(S)}, {scope}")
    print(f"PB in {fmt_interval(pb)}")
    print(f"MM in {fmt_interval(mm)}" if mm is not None else "MM: needs n >= 3")
    print(f"MM = PB = 0 achievable: {'yes' if zero else 'no'}")
    report = {"V": str(V), "S": str(S), "n": n, "PB": str(pb), "MM": None if mm is None else str(mm),
              "zero": zero, "witnesses": {}}
    if n is not None and (args.witness or args.plan):
        jobs = []
        for name, iv, plan, build in (("PB", pb, plan_pb_extremal, construct_pb_extremal),
                                      ("MM", mm, plan_mm_extremal, construct_mm_extremal)):
            if iv is None:
                continue
            for side, closed in (("min", iv.lo_closed or iv.forced_value is not None),
                                 ("max", iv.hi_closed or iv.forced_value is not None)):
                if closed:
                    jobs.append((f"{name} {side}", lambda plan=plan, side=side: plan(p, side),
                                 lambda build=build, side=side: build(p, side)))
        if zero:
            jobs.append(("zero", lambda: plan_zero(p), lambda: construct_zero(p)))
        for label, plan, build in jobs:
            try:
                e = build()
            except ElectionError as exc:
                print(f"{label}: no witness ({exc})")
                continue
            print(f"{label} witness: " + ", ".join(str(d.share) + ("+" if d.winner_at_half else "-" if
                                                                     d.winner_at_half is False else "")
                                                    for d in e.districts))
            if args.plan:
                print("  " + plan().describe().replace("\n", "\n  "))
            report["witnesses"][label] = e.to_json_dict()
    out = Path(args.out)
    _write_manifest(out, "bounds", args)
    (out / "bounds.json").write_text(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


# -- region -------------------------------------------------------------


def cmd_region(args) -> int:
    pos = [x.lower() for x in args.spec]
    if len(pos) == 1 and pos[0] == "zero":
        metric, which = "MM", "zero"
    elif len(pos) == 2:
        metric, which = pos[0].upper(), pos[1]
    else:
        raise UsageError("region takes METRIC WHICH (e.g. 'pb max') or just 'zero'")
    raster = region_raster(metric, which, grid=args.grid, n=args.n, C=args.C)
    if which == "zero" and metric in ("MM", "PB"):
        other = region_raster("PB" if metric == "MM" else "MM", "zero", grid=args.grid, n=args.n, C=args.C)
        if [c[2] for c in other.cells] != [c[2] for c in raster.cells]:
            print("error: MM and PB zero masks differ", file=sys.stderr)
            return EXIT_VERIFY
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"region_{metric.lower()}_{which}" + (f"_n{args.n}" if args.n else "") + \
        (f"_C{str(args.C).replace('/', '-')}" if args.C is not None else "")
    (out / f"{stem}.csv").write_text(raster.to_csv())
    written = [f"{stem}.csv"]
    if args.svg:
        from .svg import raster_svg
        (out / f"{stem}.svg").write_text(raster_svg(raster))
        written.append(f"{stem}.svg")
    if which == "zero":
        inside = sum(1 for c in raster.cells if c[2] is True)
        print(f"{metric} zero mask: {inside} of {len(raster.cells)} grid points")
    print("wrote " + ", ".join(str(out / w) for w in written))
    _write_manifest(out, "region", args, {"raster_meta": raster.meta, "files": written})
    return EXIT_OK


# -- verify -------------------------------------------------------------


def _suite(n_list, d_list):
    from .oracle.verify import DEFAULT_SUITE

    if not n_list and not d_list:
        return list(DEFAULT_SUITE)
    if not n_list or not d_list:
        raise UsageError("--n-list and --d-list go together")
    if len(d_list) == 1:
        d_list = d_list * len(n_list)
    if len(n_list) == 1:
        n_list = n_list * len(d_list)
    if len(n_list) != len(d_list):
        raise UsageError("--n-list and --d-list must have equal lengths (or one of them a single value)")
    return list(zip(n_list, d_list))


def cmd_verify(args) -> int:
    from .oracle import (
        BudgetExceeded,
        LatticeSpec,
        ambiguity_text,
        compare_zero_mask,
        enumerate_extremes,
        resolve_ambiguities,
        verify_bounds,
        zero_achievability_scan,
    )

    suite = _suite(args.n_list, args.d_list)
    for n, D in suite:
        size = LatticeSpec(n, D).size
        if size > args.budget:
            print(f"refusing n={n}, D={D}: needs {size:,} multisets, budget is {args.budget:,}", file=sys.stderr)
            return EXIT_BUDGET
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ok = True
    texts, summaries = [], []
    t0 = time.time()
    for n, D in suite:
        spec = LatticeSpec(n, D)
        try:
            table = enumerate_extremes(spec, budget=args.budget, jobs=args.jobs)
        except BudgetExceeded as exc:
            print(f"refusing: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        report = verify_bounds(table)
        mask = zero_achievability_scan(spec, budget=args.budget)
        zero = compare_zero_mask(mask)
        zero_ok = not zero["outside"] and not zero["missing"]
        ok &= report.passed and zero_ok
        texts.append(report.to_text())
        texts.append(f"  zero region: {len(mask.both)} achievable cells, "
                     f"{len(zero['outside'])} outside the closed form, {len(zero['missing'])} unreachable "
                     f"inside it (one-step slack) -> {'PASS' if zero_ok else 'FAIL'}")
        for V, S in zero["outside"][:10] + zero["missing"][:10]:
            texts.append(f"    zero mismatch at (V={V}, S={S})")
        summaries.append({**report.summary(), "zero_outside": [f"{V},{S}" for V, S in zero["outside"]],
                          "zero_missing": [f"{V},{S}" for V, S in zero["missing"]], "zero_passed": zero_ok})
        (out / f"oracle_n{n}_D{D}.csv").write_text(table.to_csv())
        (out / f"report_n{n}_D{D}.json").write_text(report.to_json())
    if not args.skip_ambiguities:
        texts.append(ambiguity_text(resolve_ambiguities()))
    text = "\n".join(texts)
    print(text)
    print(f"overall: {'PASS' if ok else 'FAIL'} ({time.time() - t0:.1f}s)")
    (out / "verify_report.txt").write_text(text + "\n")
    _write_manifest(out, "verify", args, {"suite": suite, "summaries": summaries, "passed": ok})
    return EXIT_OK if ok else EXIT_VERIFY


# -- shortburst -----------------------------------------------------------


def cmd_shortburst(args) -> int:
    from .chain import Geography, short_burst, synth_geography
    from .svg import ranges_svg

    if args.geography:
        g = Geography.load(args.geography)
    else:
        g = synth_geography(args.kind, args.rows, args.cols, args.lean, seed=args.seed)
    summary = short_burst(g, args.districts, args.party, b=args.burst_len, B=args.bursts,
                          deviation=args.deviation, seed=args.seed, check=args.check)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "plans.csv").write_text(summary.records_csv())
    (out / "buckets.csv").write_text(summary.buckets_csv())
    (out / "ranges.svg").write_text(ranges_svg(summary))
    seats = sorted(summary.buckets)
    print(f"{len(summary.records)} plans; seats won by {args.party}: {seats[0]}..{seats[-1]}; "
          f"seed plan {summary.best_so_far[0]}, best {summary.best_so_far[-1]}")
    for s in seats:
        parts = []
        for m, b in summary.buckets[s].items():
            parts.append(f"{m} [{float(b.min):.4f}, {float(b.max):.4f}]")
        print(f"  {s} seats ({summary.buckets[s]['MM'].count} plans): " + ", ".join(parts))
    _write_manifest(out, "shortburst", args, {"run": summary.meta, "best_so_far": summary.best_so_far})
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="partisan-symmetry", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, default_out):
        p.add_argument("--out", default=default_out, help="output directory (manifest and files)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("metrics", help="MM, PB, EG, declination, V and S of an election file")
    p.add_argument("election")
    p.add_argument("--curve-csv")
    p.add_argument("--curve-svg")
    common(p, "ps-out/metrics")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("bounds", help="MM and PB ranges at a (V, S) pair")
    p.add_argument("V", type=_frac)
    p.add_argument("S", type=_frac)
    p.add_argument("--n", type=int)
    p.add_argument("--witness", action="store_true", help="print elections hitting each closed endpoint")
    p.add_argument("--plan", action="store_true", help="print the construction layout too")
    common(p, "ps-out/bounds")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("region", help="raster of a range endpoint or zero region")
    p.add_argument("spec", nargs="+", metavar="METRIC WHICH")
    p.add_argument("--n", type=int)
    p.add_argument("--C", type=_frac)
    p.add_argument("--grid", type=int, default=201)
    p.add_argument("--svg", action="store_true")
    common(p, "ps-out/region")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("verify", help="check the closed forms against exhaustive enumeration")
    p.add_argument("--n-list", type=int, nargs="+")
    p.add_argument("--d-list", type=int, nargs="+")
    p.add_argument("--budget", type=int, default=10 ** 8)
    p.add_argument("--skip-ambiguities", action="store_true")
    common(p, "ps-out/verify")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("shortburst", help="short-burst seat maximization with metric ranges")
    p.add_argument("--geography", help="geography JSON file (overrides --kind)")
    p.add_argument("--kind", default="clustered", choices=("uniform", "clustered", "gradient"))
    p.add_argument("--rows", type=int, default=10)
    p.add_argument("--cols", type=int, default=10)
    p.add_argument("--lean", type=_frac, default=Fraction(1, 2))
    p.add_argument("--districts", type=int, default=5)
    p.add_argument("--party", choices=("A", "B"), default="A")
    p.add_argument("--bursts", type=int, default=500)
    p.add_argument("--burst-len", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deviation", type=_frac, default=Fraction(1, 20))
    p.add_argument("--check", action="store_true", help="validate every plan")
    common(p, "ps-out/shortburst")
    p.set_defaults(func=cmd_shortburst)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (ElectionError, DomainError, UnsupportedInputError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
