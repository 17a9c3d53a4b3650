"""Systematic codes, encoding, exhaustive enumeration and the brute-force oracle.

A systematic code of length ``n`` and dimension ``k`` over the prime field
``F_q`` is stored as the defining polynomials of its non-systematic
coordinates: word ``(v, f_1(v), ..., f_{n-k}(v))`` for every ``v`` in
``(F_q)^k``.  The brute-force metrics here enumerate codewords directly and
never touch the Groebner machinery, so they serve as the independent oracle
for it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import Polynomial, PolynomialRing, degree_bounded_exponents
from .errors import DegreeOutOfRange, InvalidInput, ParameterTooLarge, RingMismatch

__all__ = [
    "Word",
    "SystematicCode",
    "DistanceReport",
    "x_ring",
    "hamming_weight",
    "hamming_distance",
    "brute_metrics",
    "random_code",
]

Word = tuple[int, ...]

ENUMERATION_LIMIT = 1 << 20


def x_ring(q: int, k: int) -> PolynomialRing:
    """The ring F_q[x1..xk] that carries the defining polynomials."""
    return PolynomialRing.block(q, ("x", k))


def hamming_weight(w: Sequence[int]) -> int:
    return sum(1 for s in w if s)


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise RingMismatch("words of different length")
    return sum(1 for x, y in zip(a, b) if x != y)


@dataclass(frozen=True)
class SystematicCode:
    """A systematic (n, k, q) code given by its defining polynomials.

    ``f[j]`` computes coordinate ``k + j`` of a codeword from the systematic
    part.  The polynomials are exponent-reduced on construction, so two codes
    define the same word set exactly when they compare equal.
    """

    n: int
    k: int
    q: int
    f: tuple[Polynomial, ...]

    def __post_init__(self):
        if not (1 <= self.k <= self.n):
            raise InvalidInput(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        ring = x_ring(self.q, self.k)
        if len(self.f) != self.n - self.k:
            raise InvalidInput(f"expected {self.n - self.k} defining polynomials")
        reduced = []
        for p in self.f:
            if p.ring != ring:
                raise RingMismatch("defining polynomial from the wrong ring")
            reduced.append(p.reduce_exponents())
        object.__setattr__(self, "f", tuple(reduced))

    @property
    def ring(self) -> PolynomialRing:
        return x_ring(self.q, self.k)

    @property
    def size(self) -> int:
        return self.q**self.k

    def encode(self, v: Sequence[int]) -> Word:
        """Codeword with systematic part ``v``."""
        if len(v) != self.k:
            raise InvalidInput(f"systematic part must have length {self.k}")
        v = tuple(s % self.q for s in v)
        return v + tuple(p.evaluate(v) for p in self.f)

    def words(self) -> Iterator[Word]:
        """All codewords, systematic parts in lexicographic order."""
        if self.size > ENUMERATION_LIMIT:
            raise ParameterTooLarge(f"q^k = {self.size} exceeds the enumeration guard")
        for v in itertools.product(range(self.q), repeat=self.k):
            yield v + tuple(p.evaluate(v) for p in self.f)

    def __str__(self) -> str:
        head = f"({self.n},{self.k},{self.q}) systematic code"
        return head + "".join(f"; f{j + 1} = {p}" for j, p in enumerate(self.f))


@dataclass(frozen=True)
class DistanceReport:
    """Metrics of one code: distance, pair counts, weight counts, closest pairs.

    ``A[i]`` counts unordered codeword pairs at distance ``i + 1`` (so the
    tuple has length ``n``); ``B[i]`` counts codewords of weight ``i``
    (length ``n + 1``).  Fields that a computation did not produce are None.
    """

    distance: int | None = None
    A: tuple[int, ...] | None = None
    B: tuple[int, ...] | None = None
    closest_pairs: tuple[tuple[Word, Word], ...] | None = None
    method: str = "brute"

    def validate(self, code: SystematicCode) -> None:
        """Check the internal count identities against the code parameters."""
        size = code.size
        if self.B is not None:
            if len(self.B) != code.n + 1 or sum(self.B) != size:
                raise InvalidInput("weight counts do not sum to the code size")
        if self.A is not None:
            if len(self.A) != code.n or sum(self.A) != size * (size - 1) // 2:
                raise InvalidInput("pair counts do not sum to the number of pairs")
            if self.distance is not None:
                expected = next((i + 1 for i, a in enumerate(self.A) if a), None)
                if expected != self.distance:
                    raise InvalidInput("distance is not the first positive pair count")
        if self.closest_pairs is not None and self.distance is not None:
            for w1, w2 in self.closest_pairs:
                if hamming_distance(w1, w2) != self.distance:
                    raise InvalidInput("closest pair at the wrong distance")

    # -- structured text ----------------------------------------------------

    def serialize(self) -> str:
        lines = ["gbdist-report 1"]
        if self.distance is not None:
            lines.append(f"distance: {self.distance}")
        if self.A is not None:
            lines.append("A: " + " ".join(map(str, self.A)))
        if self.B is not None:
            lines.append("B: " + " ".join(map(str, self.B)))
        if self.closest_pairs is not None:
            lines.append(f"closest_pairs: {len(self.closest_pairs)}")
            for w1, w2 in self.closest_pairs:
                lines.append("  " + _word_str(w1) + " " + _word_str(w2))
        lines.append(f"method: {self.method}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "DistanceReport":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("gbdist-report"):
            raise InvalidInput("missing report header")
        distance = A = B = pairs = None
        method = "brute"
        i = 1
        while i < len(lines):
            line = lines[i].strip()
            key, _, value = line.partition(":")
            key, value = key.strip(), value.strip()
            if key == "distance":
                distance = int(value)
            elif key == "A":
                A = tuple(int(x) for x in value.split())
            elif key == "B":
                B = tuple(int(x) for x in value.split())
            elif key == "closest_pairs":
                count = int(value)
                pairs = []
                for j in range(count):
                    i += 1
                    a, b = lines[i].split()
                    pairs.append((_word_parse(a), _word_parse(b)))
                pairs = tuple(pairs)
            elif key == "method":
                method = value
            else:
                raise InvalidInput(f"unknown report field {key!r}")
            i += 1
        return cls(distance=distance, A=A, B=B, closest_pairs=pairs, method=method)


def _word_str(w: Word) -> str:
    if any(s > 9 for s in w):
        raise InvalidInput("word serialization supports single-digit symbols only")
    return "".join(map(str, w))


def _word_parse(s: str) -> Word:
    return tuple(int(ch) for ch in s)


def sorted_pairs(pairs) -> tuple[tuple[Word, Word], ...]:
    """Deduplicate to unordered pairs, each sorted, the whole list sorted."""
    canon = {tuple(sorted((tuple(a), tuple(b)))) for a, b in pairs}
    return tuple(sorted(canon))


def brute_metrics(code: SystematicCode) -> DistanceReport:
    """Exact metrics by weighing every word and scanning every pair."""
    words = list(code.words())
    n = code.n
    B = [0] * (n + 1)
    for w in words:
        B[hamming_weight(w)] += 1
    A = [0] * n
    best = n + 1
    closest: list[tuple[Word, Word]] = []
    for i in range(len(words)):
        wi = words[i]
        for j in range(i + 1, len(words)):
            d = hamming_distance(wi, words[j])
            A[d - 1] += 1
            if d < best:
                best = d
                closest = [(wi, words[j])]
            elif d == best:
                closest.append((wi, words[j]))
    report = DistanceReport(
        distance=best,
        A=tuple(A),
        B=tuple(B),
        closest_pairs=sorted_pairs(closest),
        method="brute",
    )
    report.validate(code)
    return report


def random_code(n: int, k: int, q: int, max_degree: int, seed: int) -> SystematicCode:
    """Random code: uniform coefficients over the reduced monomials of bounded degree.

    Deterministic for a fixed seed.  ``max_degree`` must lie in
    ``[1, k*(q-1)]``, the degree range reachable by exponent-reduced
    polynomials.
    """
    if not (1 <= max_degree <= k * (q - 1)):
        raise DegreeOutOfRange(
            f"max_degree {max_degree} outside [1, {k * (q - 1)}] for k={k}, q={q}"
        )
    ring = x_ring(q, k)
    basis = degree_bounded_exponents(k, q, max_degree)
    rng = random.Random(seed)
    polys = []
    for _ in range(n - k):
        terms = {exps: rng.randrange(q) for exps in basis}
        polys.append(ring.from_terms(terms))
    return SystematicCode(n=n, k=k, q=q, f=tuple(polys))
