"""Constructors for every ideal family the toolkit computes with.

All constructors return plain generator sets (or, where the reduced basis is
known by construction, a finished :class:`~gbdist.groebner.GroebnerBasis`).
Substituted monomial products are exponent-reduced as they are built, which
keeps individual generators within the reduced-monomial universe.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import Monomial, Polynomial, PolynomialRing, TermOrder
from .codes import SystematicCode, Word, x_ring
from .errors import (
    DegreeOutOfRange,
    InvalidInput,
    NotSystematic,
    ParameterTooLarge,
)
from .groebner import GroebnerBasis, buchberger

__all__ = [
    "GeneratorSet",
    "field_equations",
    "field_equations_in",
    "elementary_symmetric",
    "squarefree_monomials",
    "weight_ideal",
    "code_ideal",
    "weight_enum_ideal",
    "pair_ring",
    "pair_vector",
    "distance_ideal",
    "interpolate_systematic",
    "read_code_file",
    "write_code_file",
]

GENERATOR_GUARD = 10**6


@dataclass(frozen=True)
class GeneratorSet:
    """A deduplicated list of nonzero generators with a provenance tag."""

    ring: PolynomialRing
    polynomials: tuple[Polynomial, ...]
    tag: str

    def __post_init__(self):
        seen = set()
        canon = []
        for p in self.polynomials:
            if p.ring != self.ring:
                raise InvalidInput("generator from the wrong ring")
            if p.is_zero or p in seen:
                continue
            seen.add(p)
            canon.append(p)
        object.__setattr__(self, "polynomials", tuple(canon))

    def __iter__(self):
        return iter(self.polynomials)

    def __len__(self) -> int:
        return len(self.polynomials)

    def groebner_basis(self, order: TermOrder) -> GroebnerBasis:
        return buchberger(self.polynomials, order)


def field_equations_in(ring: PolynomialRing, variables: Sequence[int] | None = None) -> list[Polynomial]:
    """The binomials x_i^q - x_i for the chosen variables of an existing ring."""
    q = ring.q
    nvars = ring.nvars
    if variables is None:
        variables = range(nvars)
    out = []
    for i in variables:
        exps = tuple(q if j == i else 0 for j in range(nvars))
        out.append(ring.monomial(exps) - ring.variable(i))
    return out


def field_equations(m: int, q: int) -> GeneratorSet:
    """The m binomials y_i^q - y_i cutting the affine space out of the closure."""
    if m < 1:
        raise InvalidInput("need at least one variable")
    ring = PolynomialRing.block(q, ("y", m))
    return GeneratorSet(ring, tuple(field_equations_in(ring)), "field-equations")


def elementary_symmetric(
    m: int,
    i: int,
    q: int | None = None,
    ring: PolynomialRing | None = None,
) -> Polynomial:
    """Sum of all squarefree degree-``i`` monomials in ``m`` variables."""
    if not (1 <= i <= m):
        raise DegreeOutOfRange(f"degree {i} outside [1, {m}]")
    if ring is None:
        if q is None:
            raise InvalidInput("either a ring or a modulus is required")
        ring = PolynomialRing.block(q, ("y", m))
    elif ring.nvars != m:
        raise InvalidInput("ring arity does not match the variable count")
    terms = {}
    for combo in itertools.combinations(range(m), i):
        terms[tuple(1 if j in combo else 0 for j in range(m))] = 1
    return ring.from_terms(terms)


def squarefree_monomials(m: int, t: int) -> Iterator[Monomial]:
    """All squarefree degree-``t`` monomials in ``m`` variables, streamed in lex order."""
    if not (1 <= t <= m):
        raise DegreeOutOfRange(f"degree {t} outside [1, {m}]")
    for combo in itertools.combinations(range(m), t):
        yield Monomial(tuple(1 if j in combo else 0 for j in range(m)))


def weight_ideal(m: int, t: int, q: int) -> GeneratorSet:
    """Generators whose variety is the ball of vectors of weight at most t-1."""
    if not (1 <= t <= m):
        raise DegreeOutOfRange(f"threshold {t} outside [1, {m}]")
    ring = PolynomialRing.block(q, ("y", m))
    gens = [elementary_symmetric(m, i, ring=ring) for i in range(t, m + 1)]
    gens.extend(field_equations_in(ring))
    return GeneratorSet(ring, tuple(gens), "low-weight")


def code_ideal(code: SystematicCode) -> GroebnerBasis:
    """The reduced lex basis of the vanishing ideal of the codeword set.

    Known in closed form: the systematic field equations together with one
    binomial z_j - f_j per non-systematic coordinate, lex with
    x1 < ... < xk < z1 < ... .  No completion run is needed.
    """
    n, k, q = code.n, code.k, code.q
    if n == k:
        ring = x_ring(q, k)
        order = TermOrder.lex(k)
        return GroebnerBasis(ring, order, tuple(field_equations_in(ring)))
    ring = PolynomialRing.block(q, ("x", k), ("z", n - k))
    order = TermOrder.lex(n)
    gens = field_equations_in(ring, range(k))
    for j, f in enumerate(code.f):
        z_j = ring.variable(k + j)
        gens.append(z_j - f.embed(ring, list(range(k))))
    return GroebnerBasis(ring, order, tuple(gens))


def _subset_products(entries: Sequence[Polynomial], t: int) -> Iterator[Polynomial]:
    """Exponent-reduced products over all t-subsets, sharing common prefixes.

    Entries are multiplied densest-first so expensive partial products are
    computed once; zero partial products prune the whole subtree.
    """
    ordered = sorted(entries, key=lambda p: (-len(p), str(p)))
    n = len(ordered)

    def rec(start: int, remaining: int, acc: Polynomial | None) -> Iterator[Polynomial]:
        for i in range(start, n - remaining + 1):
            p = ordered[i] if acc is None else (acc * ordered[i]).reduce_exponents()
            if p.is_zero:
                continue
            if remaining == 1:
                yield p
            else:
                yield from rec(i + 1, remaining - 1, p)

    if t:
        yield from rec(0, t, None)


def weight_enum_ideal(code: SystematicCode, t: int) -> GeneratorSet:
    """Generators whose variety is the set of systematic parts of words of weight < t.

    Built in the k-variable ring by substituting the word coordinates
    (variables then defining polynomials) into every squarefree degree-``t``
    monomial.  ``t = n + 1`` is allowed and contributes no products, so its
    variety is the whole space.
    """
    n, k = code.n, code.k
    if not (1 <= t <= n + 1):
        raise DegreeOutOfRange(f"threshold {t} outside [1, {n + 1}]")
    if t <= n and math.comb(n, t) > GENERATOR_GUARD:
        raise ParameterTooLarge(f"C({n},{t}) substituted monomials exceed the guard")
    ring = code.ring
    columns = [ring.variable(i) for i in range(k)] + list(code.f)
    gens = list(field_equations_in(ring))
    if t <= n:
        gens.extend(_subset_products(columns, t))
    return GeneratorSet(ring, tuple(gens), "weight-enum")


def pair_ring(code: SystematicCode) -> PolynomialRing:
    """F_q[x1..xk, xt1..xtk]: a variable block per member of a codeword pair."""
    return PolynomialRing.block(code.q, ("x", code.k), ("xt", code.k))


def pair_vector(code: SystematicCode) -> list[Polynomial]:
    """Coordinatewise difference of two generic codewords, as polynomials.

    Entry ``i < k`` is ``x_i - xt_i``; entry ``k + j`` is the difference of
    the j-th defining polynomial evaluated on the two variable blocks.  Zero
    entries (constant defining polynomials) are kept in place.
    """
    k = code.k
    ring = pair_ring(code)
    first = list(range(k))
    second = list(range(k, 2 * k))
    entries = [ring.variable(i) - ring.variable(k + i) for i in range(k)]
    for f in code.f:
        entries.append(f.embed(ring, first) - f.embed(ring, second))
    return entries


def distance_ideal(code: SystematicCode, t: int) -> GeneratorSet:
    """Generators whose variety is the diagonal plus all pairs at distance < t.

    Lives in the 2k-variable pair ring; one substituted product per
    squarefree degree-``t`` monomial in ``n`` symbols, plus both blocks of
    field equations.  ``t = n + 1`` contributes no products.
    """
    n = code.n
    if not (1 <= t <= n + 1):
        raise DegreeOutOfRange(f"threshold {t} outside [1, {n + 1}]")
    if t <= n and math.comb(n, t) > GENERATOR_GUARD:
        raise ParameterTooLarge(f"C({n},{t}) substituted monomials exceed the guard")
    ring = pair_ring(code)
    gens = list(field_equations_in(ring))
    if t <= n:
        gens.extend(_subset_products(pair_vector(code), t))
    return GeneratorSet(ring, tuple(gens), "pair-distance")


def _prime_power_split(count: int) -> tuple[int, int]:
    """Write count as q^k for a prime q, or raise."""
    if count < 2:
        raise NotSystematic("a systematic code has at least two words")
    p = None
    m = count
    for d in range(2, count + 1):
        if d * d > m:
            p = m
            break
        if m % d == 0:
            p = d
            break
    k = 0
    while m % p == 0 and m > 1:
        m //= p
        k += 1
    if m != 1:
        raise NotSystematic(f"word count {count} is not a prime power")
    return p, k


def interpolate_systematic(words: Sequence[Word], q: int | None = None) -> SystematicCode:
    """Recover the defining polynomials of a systematic code from its word list.

    Each non-systematic coordinate is interpolated through indicator
    polynomials of the systematic parts, then exponent-reduced.  Raises
    :class:`NotSystematic` when the first-k projections collide or the word
    count is not a full power of the field size.
    """
    words = [tuple(w) for w in words]
    if not words:
        raise NotSystematic("empty word list")
    n = len(words[0])
    if any(len(w) != n for w in words):
        raise NotSystematic("words of unequal length")
    if len(set(words)) != len(words):
        raise NotSystematic("duplicate words")
    if q is None:
        q, k = _prime_power_split(len(words))
    else:
        k = 0
        m = len(words)
        while m % q == 0 and m > 1:
            m //= q
            k += 1
        if m != 1 or k == 0:
            raise NotSystematic(f"word count {len(words)} is not a power of {q}")
    if k > n:
        raise NotSystematic(f"dimension {k} exceeds length {n}")
    if any(s < 0 or s >= q for w in words for s in w):
        raise NotSystematic(f"symbol outside [0, {q})")
    projections = {w[:k] for w in words}
    if len(projections) != len(words):
        raise NotSystematic("systematic projections collide")

    ring = x_ring(q, k)
    one = ring.one()
    f_terms: list[Polynomial] = [ring.zero() for _ in range(n - k)]
    for w in words:
        a = w[:k]
        if all(s == 0 for s in w[k:]):
            continue
        indicator = one
        for i, a_i in enumerate(a):
            indicator = indicator * (one - (ring.variable(i) - ring.constant(a_i)) ** (q - 1))
        for j in range(n - k):
            s = w[k + j]
            if s:
                f_terms[j] = f_terms[j] + indicator * s
    f = tuple(p.reduce_exponents() for p in f_terms)
    return SystematicCode(n=n, k=k, q=q, f=f)


# -- code file format --------------------------------------------------------


def read_code_file(text: str) -> SystematicCode:
    """Parse the text format: header ``q n k``, then poly lines or a word block."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidInput("empty code file")
    head = lines[0].split()
    if len(head) != 3:
        raise InvalidInput("header must be 'q n k'")
    q, n, k = (int(x) for x in head)
    if k < 1 or n < k:
        raise InvalidInput(f"invalid dimensions n={n}, k={k}")
    body = lines[1:]
    if body and body[0].lower() == "words:":
        rows = body[1:]
        if len(rows) != q**k:
            raise InvalidInput(f"expected {q**k} word rows, found {len(rows)}")
        words = []
        for row in rows:
            if len(row) != n or not row.isdigit():
                raise InvalidInput(f"bad word row {row!r}")
            words.append(tuple(int(ch) for ch in row))
        code = interpolate_systematic(words, q=q)
        if code.n != n or code.k != k:
            raise InvalidInput("word block inconsistent with the header")
        return code
    ring = x_ring(q, k)
    polys: dict[int, Polynomial] = {}
    for line in body:
        key, _, value = line.partition(":")
        parts = key.split()
        if len(parts) != 2 or parts[0] != "poly" or not parts[1].isdigit():
            raise InvalidInput(f"bad poly line {line!r}")
        j = int(parts[1])
        if not (1 <= j <= n - k) or j in polys:
            raise InvalidInput(f"unexpected poly index {j}")
        polys[j] = ring.parse(value.strip())
    if len(polys) != n - k:
        raise InvalidInput(f"expected {n - k} poly lines, found {len(polys)}")
    f = tuple(polys[j] for j in range(1, n - k + 1))
    return SystematicCode(n=n, k=k, q=q, f=f)


def write_code_file(code: SystematicCode) -> str:
    """Emit the poly form of the code file format."""
    lines = [f"{code.q} {code.n} {code.k}"]
    for j, p in enumerate(code.f, start=1):
        lines.append(f"poly {j}: {p}")
    return "\n".join(lines) + "\n"
