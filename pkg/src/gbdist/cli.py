"""Command-line front end: metric subcommands, bench harness, oracle demo.

Exit codes: 0 success, 2 usage error, 3 cross-check mismatch between the
completion route and the brute-force oracle, 1 for self-test failures.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .algebra import TermOrder
from .bench import (
    DEFAULT_TIMEOUT,
    BenchConfig,
    log_ratio_series,
    log_ratios_to_csv,
    rows_to_csv,
    run_benchmark,
    verify_binomial_bound,
)
from .codes import DistanceReport, SystematicCode, brute_metrics, random_code
from .errors import GbdistError
from .gbmetrics import (
    MetricsSession,
    closest_pairs_gb,
    distance_distribution_gb,
    gb_report,
    min_distance_gb,
    weight_distribution_gb,
)
from .groebner import buchberger, count_points
from .ideals import (
    code_ideal,
    distance_ideal,
    elementary_symmetric,
    field_equations,
    interpolate_systematic,
    read_code_file,
    squarefree_monomials,
    weight_ideal,
    write_code_file,
)
from .oraclemodel import (
    aspect_ratio_instance,
    naive_decode,
    pruned_closest_pair,
    sphere_instance,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbdist",
        description="distance metrics of systematic non-linear codes over prime fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_code_options(p):
        p.add_argument("code_file", nargs="?", help="code file (header 'q n k', then poly/word lines)")
        p.add_argument(
            "--random",
            nargs=5,
            type=int,
            metavar=("N", "K", "Q", "DEG", "SEED"),
            help="generate a random code instead of reading a file",
        )
        p.add_argument("--method", choices=("gb", "brute", "both"), default="gb")
        p.add_argument("--out", help="write the report here instead of stdout")

    for name, description in (
        ("distance", "minimum distance"),
        ("wdist", "weight distribution"),
        ("ddist", "distance distribution"),
        ("pairs", "closest word pairs"),
    ):
        p = sub.add_parser(name, help=description)
        add_code_options(p)

    p = sub.add_parser("bench", help="timing sweep over random codes with n = 2k")
    p.add_argument("--kmin", type=int, default=2)
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--degrees", default="1,2,k", help="comma list; 'k' resolves per row")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--methods", default="gb,brute")
    p.add_argument("--budget", type=float, default=DEFAULT_TIMEOUT, help="seconds per cell")
    p.add_argument("--parallel", type=int, default=1, help="cells to run at once")
    p.add_argument("--out", help="rows CSV path (stdout otherwise)")
    p.add_argument("--ratios", help="companion log2-ratio CSV path")

    p = sub.add_parser("oracle-demo", help="adversarial instances for the query-count model")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the decoding transcript here")

    sub.add_parser("selftest", help="re-run the published worked examples")

    return parser


def _load_code(args) -> SystematicCode:
    if args.random is not None:
        n, k, q, deg, seed = args.random
        return random_code(n, k, q, deg, seed)
    if not args.code_file:
        raise GbdistError("either a code file or --random is required")
    return read_code_file(Path(args.code_file).read_text())


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _metric_report(command: str, code: SystematicCode, method: str) -> DistanceReport:
    if method == "brute":
        full = brute_metrics(code)
        if command == "distance":
            return DistanceReport(distance=full.distance, method="brute")
        if command == "wdist":
            return DistanceReport(B=full.B, method="brute")
        if command == "ddist":
            return DistanceReport(distance=full.distance, A=full.A, method="brute")
        return DistanceReport(
            distance=full.distance, closest_pairs=full.closest_pairs, method="brute"
        )
    session = MetricsSession(code)
    if command == "distance":
        return DistanceReport(distance=min_distance_gb(code, session), method="gb")
    if command == "wdist":
        return DistanceReport(B=weight_distribution_gb(code, session), method="gb")
    if command == "ddist":
        A = distance_distribution_gb(code, session)
        return DistanceReport(
            distance=min_distance_gb(code, session), A=A, method="gb"
        )
    return DistanceReport(
        distance=min_distance_gb(code, session),
        closest_pairs=closest_pairs_gb(code, session),
        method="gb",
    )


def _run_metric(args) -> int:
    code = _load_code(args)
    if args.method == "both":
        gb = _metric_report(args.command, code, "gb")
        brute = _metric_report(args.command, code, "brute")
        mismatches = [
            name
            for name in ("distance", "A", "B", "closest_pairs")
            if getattr(gb, name) != getattr(brute, name)
        ]
        if mismatches:
            sys.stderr.write(
                "cross-check failed on: " + ", ".join(mismatches) + "\n"
                + "gb route:\n" + gb.serialize() + "brute route:\n" + brute.serialize()
            )
            return EXIT_MISMATCH
        _emit(gb.serialize(), args.out)
        sys.stderr.write("cross-check ok\n")
        return EXIT_OK
    report = _metric_report(args.command, code, args.method)
    _emit(report.serialize(), args.out)
    return EXIT_OK


def _run_bench(args) -> int:
    degrees = []
    for item in args.degrees.split(","):
        item = item.strip()
        if not item:
            continue
        degrees.append("k" if item == "k" else int(item))
    config = BenchConfig(
        k_min=args.kmin,
        k_max=args.kmax,
        q=args.q,
        degrees=tuple(degrees),
        repetitions=args.reps,
        seed=args.seed,
        methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
        time_budget=args.budget,
        parallel=args.parallel,
    )
    rows = run_benchmark(config)
    # completed cells must agree across methods on the same code
    by_cell: dict[tuple[int, int, int], set[int]] = {}
    for r in rows:
        if r.status == "ok" and r.distance is not None:
            by_cell.setdefault((r.k, r.degree, r.rep), set()).add(r.distance)
    for cell, found in by_cell.items():
        if len(found) > 1:
            sys.stderr.write(f"method disagreement on cell {cell}: {sorted(found)}\n")
            return EXIT_MISMATCH
    _emit(rows_to_csv(rows), args.out)
    ratios = log_ratios_to_csv(log_ratio_series(rows))
    if args.ratios:
        Path(args.ratios).write_text(ratios)
    else:
        sys.stdout.write(ratios)
    return EXIT_OK


def _run_oracle_demo(args) -> int:
    inst = sphere_instance(max(4, min(args.n, 16)))
    oracle = inst.oracle()
    nearest = naive_decode(oracle, inst.X, inst.query)
    expected = math.comb(len(inst.query), len(inst.query) // 2) + 1
    print(f"sphere instance n={len(inst.query)}: |X| = {len(inst.X)}")
    print(f"decoded nearest word {''.join(map(str, nearest))} in {oracle.call_count} calls "
          f"(expected {expected})")
    if args.out:
        Path(args.out).write_text(oracle.transcript_text())
    inst2 = aspect_ratio_instance(max(10, args.n), args.seed)
    oracle2 = inst2.oracle()
    result = pruned_closest_pair(oracle2, inst2.X)
    pairs_total = math.comb(len(inst2.X), 2)
    print(
        f"aspect-ratio instance n={max(10, args.n)} seed={args.seed}: |X| = {len(inst2.X)}, "
        f"diameter {inst2.diameter}, distance {inst2.distance}"
    )
    print(
        f"pruned closest-pair used {result.calls} of {pairs_total} possible calls, "
        f"{len(result.prunes)} prunes"
    )
    return EXIT_OK


def _check(label: str, got, expected, failures: list[str]) -> None:
    ok = got == expected
    print(f"{'PASS' if ok else 'FAIL'}  {label}: got {got!r}, expected {expected!r}")
    if not ok:
        failures.append(label)


def _run_selftest(_args) -> int:
    failures: list[str] = []

    words = [(0, 0, 0, 1), (0, 1, 0, 1), (1, 0, 0, 1), (1, 1, 0, 0)]
    code = interpolate_systematic(words)
    ring = code.ring
    _check("4221 defining polynomials", (str(code.f[0]), code.f[1]),
           ("0", ring.parse("x1*x2+1")), failures)
    gb = code_ideal(code)
    expected = {
        gb.ring.parse("x1^2+x1"), gb.ring.parse("x2^2+x2"),
        gb.ring.parse("z1"), gb.ring.parse("z2+x1*x2+1"),
    }
    _check("4221 code ideal basis", set(gb.generators), expected, failures)
    _check("4221 encoded words", sorted(code.words()), sorted(words), failures)

    words423 = [(0, 0, 2, 0), (0, 1, 0, 0), (0, 2, 0, 2), (1, 0, 2, 2), (1, 1, 2, 1),
                (1, 2, 1, 2), (2, 0, 1, 0), (2, 1, 1, 1), (2, 2, 0, 1)]
    code423 = interpolate_systematic(words423)
    r423 = code423.ring
    _check("4231 recovered f1", code423.f[0],
           r423.parse("x2^2 - x1^2*x2 + x1^2 - x1 - 1"), failures)
    _check("4231 recovered f2", code423.f[1],
           r423.parse("x2^2 - x1*x2 - x2 + x1^2 + x1"), failures)
    session = MetricsSession(code423)
    _check("4231 distance", min_distance_gb(code423, session), 2, failures)
    _check("4231 diagonal count at threshold 2", session.pair_count(2), 9, failures)

    dd_words = [(0, 0, 0, 0), (0, 1, 0, 0), (0, 2, 0, 0), (1, 0, 0, 0), (1, 1, 0, 2),
                (1, 2, 0, 2), (2, 0, 0, 2), (2, 1, 0, 0), (2, 2, 0, 0)]
    dd = interpolate_systematic(dd_words)
    s = MetricsSession(dd)
    _check("distance-distribution pair counts", (s.pair_count(2), s.pair_count(3)),
           (25, 65), failures)
    _check("distance distribution", distance_distribution_gb(dd, s), (8, 20, 8, 0), failures)
    _check("closest pair count", len(closest_pairs_gb(dd, s)), 8, failures)

    for q in (2, 3):
        for m in (2, 3, 4):
            for t in range(1, m + 1):
                gens = weight_ideal(m, t, q)
                wgb = buchberger(gens.polynomials, TermOrder.lex(m))
                if t == 1:
                    expect = {gens.ring.variable(i) for i in range(m)}
                else:
                    expect = set(field_equations(m, q).polynomials)
                    expect |= {
                        gens.ring.monomial(mono.exponents)
                        for mono in squarefree_monomials(m, t)
                    }
                _check(f"low-weight basis q={q} m={m} t={t}",
                       set(wgb.generators), expect, failures)

    _check("binomial growth bound", verify_binomial_bound(60, 1, "1.585"), True, failures)

    print(f"\n{len(failures)} failures")
    return EXIT_FAILURE if failures else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("distance", "wdist", "ddist", "pairs"):
            return _run_metric(args)
        if args.command == "bench":
            return _run_bench(args)
        if args.command == "oracle-demo":
            return _run_oracle_demo(args)
        if args.command == "selftest":
            return _run_selftest(args)
        parser.error(f"unknown command {args.command!r}")
    except GbdistError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
