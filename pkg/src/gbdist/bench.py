"""Benchmark harness and the exact binomial growth-bound checker.

Cells follow the doubled-length protocol: every cell times the distance
computation of a fresh seeded random code with n = 2k.  Timing wraps the
metric call only; each cell runs in a child process that is terminated at
the budget, so a blow-up becomes a ``timeout`` row instead of an error.
"""

from __future__ import annotations

import csv
import io
import math
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pipe, Process
from typing import Sequence

from .codes import brute_metrics, random_code
from .errors import HypothesisViolated, InvalidInput
from .gbmetrics import min_distance_gb

__all__ = [
    "BenchConfig",
    "BenchRow",
    "run_benchmark",
    "rows_to_csv",
    "rows_from_csv",
    "log_ratio_series",
    "log_ratios_to_csv",
    "verify_binomial_bound",
    "DEFAULT_TIMEOUT",
    "CSV_COLUMNS",
]

DEFAULT_TIMEOUT = float(os.environ.get("GBDIST_BENCH_TIMEOUT", "300"))

CSV_COLUMNS = ("n", "k", "q", "degree", "method", "rep", "seconds", "distance", "status")


@dataclass(frozen=True)
class BenchConfig:
    """One benchmark sweep: k range, field, degree specs and methods.

    Degrees may be integers or the string ``"k"`` (resolved per row); cells
    whose resolved degree exceeds the reachable maximum k*(q-1) are skipped.
    Every cell uses n = 2k.
    """

    k_min: int
    k_max: int
    q: int = 2
    degrees: tuple[int | str, ...] = (1, 2, "k")
    repetitions: int = 1
    seed: int = 0
    methods: tuple[str, ...] = ("gb", "brute")
    time_budget: float = DEFAULT_TIMEOUT
    parallel: int = 1

    def __post_init__(self):
        if self.k_min < 1 or self.k_max < self.k_min:
            raise InvalidInput("need 1 <= k_min <= k_max")
        if self.repetitions < 1:
            raise InvalidInput("need at least one repetition")
        for m in self.methods:
            if m not in ("gb", "brute"):
                raise InvalidInput(f"unknown method {m!r}")
        for d in self.degrees:
            if d != "k" and (not isinstance(d, int) or d < 1):
                raise InvalidInput(f"bad degree spec {d!r}")

    def cells(self) -> list[tuple[int, int, int]]:
        """(k, degree, rep) triples in deterministic sweep order."""
        out = []
        for k in range(self.k_min, self.k_max + 1):
            resolved = []
            for d in self.degrees:
                dd = k if d == "k" else d
                if 1 <= dd <= k * (self.q - 1) and dd not in resolved:
                    resolved.append(dd)
            for dd in resolved:
                for rep in range(1, self.repetitions + 1):
                    out.append((k, dd, rep))
        return out


@dataclass(frozen=True)
class BenchRow:
    n: int
    k: int
    q: int
    degree: int
    method: str
    rep: int
    seconds: float
    distance: int | None
    status: str  # ok | timeout


def _cell_seed(config_seed: int, k: int, degree: int, rep: int) -> int:
    return hash((config_seed, k, degree, rep)) & 0x7FFFFFFF


def _run_cell(conn, n: int, k: int, q: int, degree: int, seed: int, method: str) -> None:
    """Child-process body: build the code, time the metric call only."""
    code = random_code(n, k, q, degree, seed)
    start = time.monotonic()
    if method == "gb":
        d = min_distance_gb(code)
    else:
        d = brute_metrics(code).distance
    elapsed = time.monotonic() - start
    conn.send((elapsed, d))
    conn.close()


class _Task:
    def __init__(self, n: int, k: int, degree: int, rep: int, method: str):
        self.n = n
        self.k = k
        self.degree = degree
        self.rep = rep
        self.method = method
        self.proc: Process | None = None
        self.parent = None
        self.deadline = 0.0

    def start(self, config: BenchConfig) -> None:
        seed = _cell_seed(config.seed, self.k, self.degree, self.rep)
        parent, child = Pipe(duplex=False)
        self.parent = parent
        self.proc = Process(
            target=_run_cell,
            args=(child, self.n, self.k, config.q, self.degree, seed, self.method),
        )
        self.proc.start()
        self.deadline = time.monotonic() + config.time_budget

    def finish(self, config: BenchConfig, timed_out: bool) -> BenchRow:
        if timed_out:
            self.proc.terminate()
            self.proc.join()
            seconds, distance, status = config.time_budget, None, "timeout"
        else:
            seconds, distance = self.parent.recv()
            self.proc.join()
            status = "ok"
        return BenchRow(
            n=self.n, k=self.k, q=config.q, degree=self.degree, method=self.method,
            rep=self.rep, seconds=seconds, distance=distance, status=status,
        )


def run_benchmark(config: BenchConfig) -> list[BenchRow]:
    """One row per (k, degree, method, repetition); timeouts are rows, not errors.

    Sequential by default for clean timing; ``parallel > 1`` runs that many
    cells at once (seeds are per-cell, so results do not change).
    """
    tasks = [
        _Task(n=2 * k, k=k, degree=degree, rep=rep, method=method)
        for (k, degree, rep) in config.cells()
        for method in config.methods
    ]
    results: dict[int, BenchRow] = {}
    if config.parallel <= 1:
        for i, task in enumerate(tasks):
            task.start(config)
            ok = task.parent.poll(config.time_budget)
            results[i] = task.finish(config, timed_out=not ok)
    else:
        queue = list(enumerate(tasks))
        running: list[tuple[int, _Task]] = []
        while queue or running:
            while queue and len(running) < config.parallel:
                i, task = queue.pop(0)
                task.start(config)
                running.append((i, task))
            time.sleep(0.01)
            still = []
            for i, task in running:
                if task.parent.poll():
                    results[i] = task.finish(config, timed_out=False)
                elif time.monotonic() > task.deadline:
                    results[i] = task.finish(config, timed_out=True)
                elif not task.proc.is_alive() and not task.parent.poll():
                    # child died without reporting
                    results[i] = BenchRow(
                        n=task.n, k=task.k, q=config.q, degree=task.degree,
                        method=task.method, rep=task.rep, seconds=0.0,
                        distance=None, status="timeout",
                    )
                else:
                    still.append((i, task))
            running = still
    return [results[i] for i in range(len(tasks))]


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(
            [r.n, r.k, r.q, r.degree, r.method, r.rep, repr(r.seconds),
             "" if r.distance is None else r.distance, r.status]
        )
    return buf.getvalue()


def rows_from_csv(text: str) -> list[BenchRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise InvalidInput(f"unexpected CSV columns {header}")
    rows = []
    for rec in reader:
        if not rec:
            continue
        n, k, q, degree, method, rep, seconds, distance, status = rec
        rows.append(
            BenchRow(
                n=int(n), k=int(k), q=int(q), degree=int(degree), method=method,
                rep=int(rep), seconds=float(seconds),
                distance=None if distance == "" else int(distance), status=status,
            )
        )
    return rows


def _median(values: Sequence[float]) -> float:
    s = sorted(values)
    m = len(s) // 2
    return s[m] if len(s) % 2 else (s[m - 1] + s[m]) / 2


def log_ratio_series(rows: Sequence[BenchRow]) -> list[tuple[int, str, int, float]]:
    """Per (degree, method): y = log2(median time at k / median time at k-1).

    Only completed cells participate; the series shows the effective
    per-step exponent of the growth in k.
    """
    groups: dict[tuple[int, str], dict[int, list[float]]] = {}
    for r in rows:
        if r.status != "ok":
            continue
        groups.setdefault((r.degree, r.method), {}).setdefault(r.k, []).append(r.seconds)
    series = []
    for (degree, method), per_k in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        ks = sorted(per_k)
        for prev, cur in zip(ks, ks[1:]):
            if cur != prev + 1:
                continue
            t_prev, t_cur = _median(per_k[prev]), _median(per_k[cur])
            if t_prev <= 0 or t_cur <= 0:
                continue
            series.append((degree, method, cur, math.log2(t_cur / t_prev)))
    return series


def log_ratios_to_csv(series: Sequence[tuple[int, str, int, float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(("degree", "method", "k", "log2_ratio"))
    for degree, method, k, y in series:
        writer.writerow([degree, method, k, repr(y)])
    return buf.getvalue()


# -- exact binomial growth bound ---------------------------------------------


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidInput(f"cannot interpret {x!r} as a rational")


def _hypothesis_holds(alpha: Fraction, s: Fraction) -> bool:
    """Exact decision of 1 + 2^alpha <= 2^s for rational exponents.

    Both sides are powers of u = 2^(1/L); exact equality is decided through
    the minimal polynomial of u, strict comparison through integer interval
    arithmetic at increasing precision.
    """
    L = math.lcm(alpha.denominator, s.denominator)
    A = alpha.numerator * (L // alpha.denominator)
    S = s.numerator * (L // s.denominator)
    # equality 1 + u^A = u^S is only possible when both powers are rational
    if A % L == 0 and S % L == 0 and 1 + Fraction(2) ** (A // L) == Fraction(2) ** (S // L):
        return True
    prec = 32
    while True:
        # r/B <= u < (r+1)/B with B = 2^prec
        B = 1 << prec
        r = _integer_root(2 * B**L, L)
        lo_u, hi_u = Fraction(r, B), Fraction(r + 1, B)
        lhs_hi = 1 + _pow_frac(hi_u, lo_u, A, upper=True)
        rhs_lo = _pow_frac(lo_u, hi_u, S, upper=False)
        if lhs_hi <= rhs_lo:
            return True
        lhs_lo = 1 + _pow_frac(hi_u, lo_u, A, upper=False)
        rhs_hi = _pow_frac(lo_u, hi_u, S, upper=True)
        if lhs_lo > rhs_hi:
            return False
        prec *= 2
        if prec > 1 << 16:
            raise InvalidInput("cannot separate the hypothesis bound")


def _pow_frac(hi: Fraction, lo: Fraction, e: int, upper: bool) -> Fraction:
    base = hi if upper else lo
    if e >= 0:
        return base**e
    inv_base = lo if upper else hi
    return Fraction(1) / inv_base ** (-e)


def _integer_root(x: int, n: int) -> int:
    """floor(x ** (1/n)) by Newton iteration on integers."""
    if x < 0 or n < 1:
        raise InvalidInput("integer root needs x >= 0, n >= 1")
    if x == 0:
        return 0
    r = 1 << (x.bit_length() // n + 1)
    while True:
        nr = ((n - 1) * r + x // r ** (n - 1)) // n
        if nr >= r:
            break
        r = nr
    while r**n > x:
        r -= 1
    return r


def verify_binomial_bound(n_max: int, alpha, s) -> bool:
    """Exact check of C(n, k) * 2^(alpha*k) <= 2^(s*n) for all 1 <= k <= n <= n_max.

    Requires 1 + 2^alpha <= 2^s (raises :class:`HypothesisViolated`
    otherwise).  Both sides are raised to the common denominator of the
    exponents, so only integer arithmetic is involved.
    """
    alpha, s = _as_fraction(alpha), _as_fraction(s)
    if not _hypothesis_holds(alpha, s):
        raise HypothesisViolated(f"1 + 2^{alpha} > 2^{s}")
    L = math.lcm(alpha.denominator, s.denominator)
    A = alpha.numerator * (L // alpha.denominator)
    S = s.numerator * (L // s.denominator)
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            e = S * n - A * k
            c = math.comb(n, k) ** L
            if e >= 0:
                if c > 1 << e:
                    return False
            else:
                if c << (-e) > 1:
                    return False
    return True
