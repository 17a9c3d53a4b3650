"""Code metrics through basis completion and variety counting.

Three algorithms share one mechanism: build the relevant ideal for a
threshold ``t``, complete it, count (or enumerate) its variety, and read the
metric off consecutive counts.  The weight route works in the k-variable
ring; the distance route works in the doubled ring whose points are ordered
codeword pairs, with the diagonal always present.  Variety counts are cached
per (code, threshold) within a session, so each count costs one completion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import TermOrder
from .codes import DistanceReport, SystematicCode, Word, sorted_pairs
from .errors import OddDifference
from .groebner import GroebnerBasis, buchberger, count_points, enumerate_points
from .ideals import distance_ideal, weight_enum_ideal

__all__ = [
    "Diagonal",
    "MetricsSession",
    "weight_distribution_gb",
    "min_distance_gb",
    "distance_distribution_gb",
    "closest_pairs_gb",
    "gb_report",
    "diagonal_membership",
]


@dataclass(frozen=True)
class Diagonal:
    """The set of pairs (a, a) in the doubled space; q^k points."""

    k: int
    q: int

    def __len__(self) -> int:
        return self.q**self.k

    def __contains__(self, point) -> bool:
        point = tuple(point)
        return len(point) == 2 * self.k and point[: self.k] == point[self.k :]


def _pair_order(code: SystematicCode) -> TermOrder:
    # degrevlex with x1 > ... > xk > xt1 > ... > xtk
    return TermOrder.degrevlex(2 * code.k, tuple(reversed(range(2 * code.k))))


def _weight_order(code: SystematicCode) -> TermOrder:
    return TermOrder.degrevlex(code.k, tuple(reversed(range(code.k))))


class MetricsSession:
    """Caches completed bases and variety counts per (code, threshold)."""

    def __init__(self, code: SystematicCode):
        self.code = code
        self._pair_counts: dict[int, int] = {}
        self._pair_bases: dict[int, GroebnerBasis] = {}
        self._weight_counts: dict[int, int] = {}

    # -- pair-distance route -------------------------------------------------

    def pair_basis(self, t: int) -> GroebnerBasis:
        gb = self._pair_bases.get(t)
        if gb is None:
            gens = distance_ideal(self.code, t)
            gb = buchberger(gens.polynomials, _pair_order(self.code))
            self._pair_bases[t] = gb
        return gb

    def pair_count(self, t: int) -> int:
        c = self._pair_counts.get(t)
        if c is not None:
            return c
        code = self.code
        if t == 1:
            # the variety of the threshold-1 ideal is exactly the diagonal
            c = code.size
        else:
            full = code.size**2
            below = self._pair_counts.get(t - 1)
            if below == full:
                c = full  # nested varieties cannot shrink
            else:
                c = count_points(self.pair_basis(t))
        self._pair_counts[t] = c
        return c

    # -- weight route ----------------------------------------------------------

    def weight_count(self, t: int) -> int:
        c = self._weight_counts.get(t)
        if c is not None:
            return c
        code = self.code
        if t == 0:
            c = 0
        elif t == code.n + 1:
            c = code.size
        else:
            below = self._weight_counts.get(t - 1)
            if below == code.size:
                c = code.size
            else:
                gens = weight_enum_ideal(code, t)
                c = count_points(buchberger(gens.polynomials, _weight_order(code)))
        self._weight_counts[t] = c
        return c


def weight_distribution_gb(
    code: SystematicCode, session: MetricsSession | None = None
) -> tuple[int, ...]:
    """Weight counts B_0..B_n from consecutive weight-ideal variety counts."""
    session = session or MetricsSession(code)
    counts = [session.weight_count(t) for t in range(code.n + 2)]
    return tuple(counts[t] - counts[t - 1] for t in range(1, code.n + 2))


def min_distance_gb(code: SystematicCode, session: MetricsSession | None = None) -> int:
    """Smallest pairwise distance, by growing the threshold until the
    variety leaves the diagonal.

    The loop starts at threshold 2 and is capped at n+1; with at least two
    codewords it always exits early, the cap is a guard only.
    """
    session = session or MetricsSession(code)
    diagonal = code.size
    for j in range(2, code.n + 2):
        if session.pair_count(j) != diagonal:
            return j - 1
    return code.n


def distance_distribution_gb(
    code: SystematicCode, session: MetricsSession | None = None
) -> tuple[int, ...]:
    """Pair counts A_1..A_n from consecutive pair-ideal variety counts."""
    session = session or MetricsSession(code)
    counts = [session.pair_count(t) for t in range(1, code.n + 2)]
    A = []
    for t in range(1, code.n + 1):
        gap = counts[t] - counts[t - 1]
        if gap % 2:
            raise OddDifference(
                f"variety counts {counts[t - 1]} -> {counts[t]} differ by an odd number"
            )
        A.append(gap // 2)
    return tuple(A)


def closest_pairs_gb(
    code: SystematicCode, session: MetricsSession | None = None
) -> tuple[tuple[Word, Word], ...]:
    """All unordered codeword pairs at the minimum distance.

    Enumerates the variety one threshold past the distance, drops diagonal
    points, encodes both halves and deduplicates the swap twins.
    """
    session = session or MetricsSession(code)
    d = min_distance_gb(code, session)
    gb = session.pair_basis(d + 1)
    k = code.k
    pairs = []
    for point in enumerate_points(gb):
        a, b = point[:k], point[k:]
        if a == b:
            continue
        pairs.append((code.encode(a), code.encode(b)))
    return sorted_pairs(pairs)


def gb_report(code: SystematicCode) -> DistanceReport:
    """Full metrics report along the completion route."""
    session = MetricsSession(code)
    A = distance_distribution_gb(code, session)
    B = weight_distribution_gb(code, session)
    report = DistanceReport(
        distance=min_distance_gb(code, session),
        A=A,
        B=B,
        closest_pairs=closest_pairs_gb(code, session),
        method="gb",
    )
    report.validate(code)
    return report


def diagonal_membership(gb: GroebnerBasis, k: int) -> bool:
    """The explicit diagonal check: every x_i - xt_i lies in the ideal.

    Secondary to the count test; both agree exactly when the variety is the
    diagonal.
    """
    ring = gb.ring
    if ring.nvars != 2 * k:
        return False
    for i in range(k):
        if not gb.contains(ring.variable(i) - ring.variable(k + i)):
            return False
    return True
