"""Black-box distance-oracle simulator and adversarial instances.

Complexity in this model is the number of exact distance evaluations an
algorithm requests.  The oracle meters every query and keeps a replayable
transcript.  Two instance families defeat triangle-inequality pruning: a
sphere around the query plus one near point (decoding must scan everything),
and a maximal set of aspect ratio below two (closest-pair search must probe
every pair).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .codes import Word, hamming_distance
from .errors import InvalidInput, LengthTooSmall, ParameterTooLarge

__all__ = [
    "DistanceOracle",
    "AdversarialInstance",
    "ClosestPairResult",
    "sphere_instance",
    "naive_decode",
    "aspect_ratio_instance",
    "pruned_closest_pair",
    "replay_prune_bounds",
]

INSTANCE_SPACE_LIMIT = 1 << 20


@dataclass
class DistanceOracle:
    """Metered exact Hamming-distance oracle over binary words.

    Every query increments the counter by exactly one and is appended to the
    transcript as an (x, y, answer) triple.
    """

    points: tuple[Word, ...] = ()
    call_count: int = 0
    transcript: list[tuple[Word, Word, int]] = field(default_factory=list)

    def distance(self, x: Sequence[int], y: Sequence[int]) -> int:
        x, y = tuple(x), tuple(y)
        d = hamming_distance(x, y)
        self.call_count += 1
        self.transcript.append((x, y, d))
        return d

    def transcript_text(self) -> str:
        lines = [
            f"{_bits(x)} {_bits(y)} {d}" for x, y, d in self.transcript
        ]
        lines.append(f"calls {self.call_count}")
        return "\n".join(lines) + "\n"


def _bits(w: Word) -> str:
    return "".join(map(str, w))


@dataclass(frozen=True)
class AdversarialInstance:
    """A word set (with optional query) built to defeat pruning.

    ``kind`` is ``sphere_plus_point`` or ``aspect_ratio``; ``diameter`` and
    ``distance`` are exact metadata where applicable.
    """

    X: tuple[Word, ...]
    kind: str
    query: Word | None = None
    diameter: int | None = None
    distance: int | None = None

    def oracle(self) -> DistanceOracle:
        return DistanceOracle(points=self.X)


def sphere_instance(n: int) -> AdversarialInstance:
    """All weight-floor(n/2) words plus a single point next to the zero query.

    Every query answer is the radius except the near point's, so earlier
    answers never constrain a later one and decoding must try all points.
    """
    if n < 4:
        raise LengthTooSmall("sphere instance needs length at least 4")
    if 2**n > INSTANCE_SPACE_LIMIT:
        raise ParameterTooLarge(f"2^{n} exceeds the instance guard")
    radius = n // 2
    sphere = [
        tuple(1 if i in ones else 0 for i in range(n))
        for ones in itertools.combinations(range(n), radius)
    ]
    near = (1,) + (0,) * (n - 1)
    return AdversarialInstance(
        X=tuple(sorted(sphere)) + (near,),
        kind="sphere_plus_point",
        query=(0,) * n,
    )


def naive_decode(oracle: DistanceOracle, X: Sequence[Word], query: Sequence[int]) -> Word:
    """Nearest word by scanning every candidate; exactly ``len(X)`` calls."""
    if not X:
        raise InvalidInput("empty point set")
    query = tuple(query)
    best: Word | None = None
    best_d = None
    for x in X:
        d = oracle.distance(query, x)
        if best_d is None or d < best_d:
            best, best_d = tuple(x), d
    return best


def aspect_ratio_instance(n: int, seed: int) -> AdversarialInstance:
    """Greedy maximal word set whose diameter stays below twice its distance.

    Starts from a seeded random word, then sweeps seeded random shuffles of
    the whole space, accepting a candidate whenever the constraint survives;
    growth stops after a full pass adds nothing.  The returned metadata is
    recomputed exactly from the final set.
    """
    if n < 10:
        raise LengthTooSmall("aspect-ratio instance needs length at least 10")
    if 2**n > INSTANCE_SPACE_LIMIT:
        raise ParameterTooLarge(f"2^{n} exceeds the instance guard")
    rng = random.Random(seed)
    first = tuple(rng.randrange(2) for _ in range(n))
    chosen: list[Word] = [first]
    diameter = 0
    distance = None
    space = list(itertools.product((0, 1), repeat=n))
    while True:
        added = False
        rng.shuffle(space)
        for cand in space:
            if cand in chosen:
                continue
            dists = [hamming_distance(cand, x) for x in chosen]
            if 0 in dists:
                continue
            new_diameter = max(diameter, max(dists))
            new_distance = min(dists) if distance is None else min(distance, min(dists))
            if new_diameter < 2 * new_distance:
                chosen.append(cand)
                diameter, distance = new_diameter, new_distance
                added = True
        if not added:
            break
    exact_d = min(hamming_distance(a, b) for a, b in itertools.combinations(chosen, 2))
    exact_D = max(hamming_distance(a, b) for a, b in itertools.combinations(chosen, 2))
    if not (exact_D < 2 * exact_d):
        raise InvalidInput("construction violated its own constraint")
    return AdversarialInstance(
        X=tuple(chosen),
        kind="aspect_ratio",
        diameter=exact_D,
        distance=exact_d,
    )


@dataclass(frozen=True)
class ClosestPairResult:
    """Outcome of the pruning closest-pair scan."""

    pair: tuple[Word, Word]
    distance: int
    calls: int
    prunes: tuple[tuple[Word, Word, int], ...]  # skipped pair and its lower bound


def pruned_closest_pair(oracle: DistanceOracle, X: Sequence[Word]) -> ClosestPairResult:
    """Closest pair using every triangle-inequality prune the model grants.

    A query (x, z) is skipped only when some already-known pair of distances
    through a common witness y forces d(x, z) at least as large as the best
    distance found so far.  Skips are logged so runs on adversarial instances
    can be audited.
    """
    X = [tuple(x) for x in X]
    if len(X) < 2:
        raise InvalidInput("need at least two words")
    m = len(X)
    known: dict[tuple[int, int], int] = {}
    best_d: int | None = None
    best_pair: tuple[Word, Word] | None = None
    prunes: list[tuple[Word, Word, int]] = []
    start_calls = oracle.call_count
    for i, j in itertools.combinations(range(m), 2):
        if best_d is not None:
            bound = -1
            for l in range(m):
                if l == i or l == j:
                    continue
                a = known.get((min(i, l), max(i, l)))
                b = known.get((min(j, l), max(j, l)))
                if a is not None and b is not None:
                    gap = abs(a - b)
                    if gap > bound:
                        bound = gap
            if bound >= best_d:
                prunes.append((X[i], X[j], bound))
                continue
        d = oracle.distance(X[i], X[j])
        known[(i, j)] = d
        if best_d is None or d < best_d:
            best_d = d
            best_pair = (X[i], X[j])
    return ClosestPairResult(
        pair=best_pair,
        distance=best_d,
        calls=oracle.call_count - start_calls,
        prunes=tuple(prunes),
    )


def replay_prune_bounds(
    transcript: Sequence[tuple[Word, Word, int]],
) -> list[int | None]:
    """For each query, the best triangle lower bound its prior answers allowed.

    The bound on d(x, z) before query index i is the maximum of
    |d(x, y) - d(y, z)| over witnesses y with both distances already
    answered; None when no witness exists.  Replaying a decoding transcript
    on the sphere instance shows every entry is None or non-positive: earlier
    answers never justify a skip.
    """
    bounds: list[int | None] = []
    known: dict[tuple[Word, Word], int] = {}
    for x, y, d in transcript:
        partners_x: dict[Word, int] = {}
        partners_y: dict[Word, int] = {}
        for (a, b), dist in known.items():
            if a == x:
                partners_x[b] = dist
            elif b == x:
                partners_x[a] = dist
            if a == y:
                partners_y[b] = dist
            elif b == y:
                partners_y[a] = dist
        best: int | None = None
        for w, dx in partners_x.items():
            dy = partners_y.get(w)
            if dy is not None:
                gap = abs(dx - dy)
                if best is None or gap > best:
                    best = gap
        bounds.append(best)
        known[tuple(sorted((x, y)))] = d
    return bounds
