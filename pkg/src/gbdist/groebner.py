"""Normal forms, Buchberger's algorithm and zero-dimensional variety counting.

The completion loop uses the normal selection strategy (pair with the
smallest lcm in the active order) together with the two classical pair
criteria: coprime leading monomials are skipped, and a pair is dropped when a
third basis element divides its lcm and both linking pairs have already been
treated.  Reduction folds exponents through any field equations present in
the basis, which keeps the monomial universe finite and makes a per-monomial
divisor cache effective.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import Monomial, Polynomial, PolynomialRing, TermOrder
from .errors import (
    FieldEquationsMissing,
    InvalidInput,
    ParameterTooLarge,
    RingMismatch,
)

__all__ = [
    "GroebnerBasis",
    "PointSet",
    "normal_form",
    "s_polynomial",
    "buchberger",
    "inter_reduce",
    "is_groebner_basis",
    "count_points",
    "enumerate_points",
]

EXHAUSTIVE_POINT_LIMIT = 1 << 20


def _field_equation_var(g: Polynomial) -> int | None:
    """Index i if g is (a scalar multiple of) x_i^q - x_i, else None."""
    if len(g) != 2:
        return None
    q = g.ring.q
    (e1, c1), (e2, c2) = g.iterterms()
    s1 = [i for i, e in enumerate(e1) if e]
    s2 = [i for i, e in enumerate(e2) if e]
    if len(s1) != 1 or s1 != s2:
        return None
    i = s1[0]
    if {e1[i], e2[i]} != {1, q}:
        return None
    if (c1 + c2) % q != 0:
        return None
    return i


def _field_equation_vars(gens: Iterable[Polynomial]) -> set[int]:
    found: set[int] = set()
    for g in gens:
        i = _field_equation_var(g)
        if i is not None:
            found.add(i)
    return found


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _neg(key: tuple) -> tuple:
    return tuple(-x for x in key)


class _Engine:
    """Mutable reducer list with a divisor cache, driving division."""

    def __init__(self, ring: PolynomialRing, order: TermOrder, fold_vars: set[int]):
        self.ring = ring
        self.q = ring.q
        self.order = order
        self.fold_vars = tuple(sorted(fold_vars))
        self._keys: dict[tuple[int, ...], tuple] = {}
        self.lts: list[tuple[int, ...]] = []
        self.tails: list[list[tuple[tuple[int, ...], int]]] = []
        self.polys: list[Polynomial] = []
        self._div_cache: dict[tuple[int, ...], int] = {}

    def key(self, exps: tuple[int, ...]):
        k = self._keys.get(exps)
        if k is None:
            k = self.order.key(exps)
            self._keys[exps] = k
        return k

    def fold(self, exps: tuple[int, ...]) -> tuple[int, ...]:
        q = self.q
        for i in self.fold_vars:
            if exps[i] >= q:
                break
        else:
            return exps
        fv = self.fold_vars
        return tuple(
            ((e - 1) % (q - 1)) + 1 if e >= q and i in fv else e
            for i, e in enumerate(exps)
        )

    def add_reducer(self, poly: Polynomial) -> int:
        """Append a monic polynomial; refresh the divisor cache; return its index."""
        lt_exps, _ = poly.lt(self.order)
        idx = len(self.lts)
        tail = [(e, c) for e, c in poly.iterterms() if e != lt_exps]
        self.lts.append(lt_exps)
        self.tails.append(tail)
        self.polys.append(poly)
        for mono, cached in self._div_cache.items():
            if cached < 0 and _divides(lt_exps, mono):
                self._div_cache[mono] = idx
        return idx

    def find_reducer(self, exps: tuple[int, ...]) -> int:
        r = self._div_cache.get(exps)
        if r is None:
            r = -1
            for i, lt in enumerate(self.lts):
                if _divides(lt, exps):
                    r = i
                    break
            self._div_cache[exps] = r
        return r

    def nf(self, terms: Iterable[tuple[tuple[int, ...], int]], fold_input: bool = True) -> dict:
        """Remainder of the given terms under division by the current reducers."""
        q = self.q
        key = self.key
        fold = self.fold
        work: dict[tuple[int, ...], int] = {}
        heap: list[tuple[tuple, tuple[int, ...]]] = []
        push = heapq.heappush
        for e, c in terms:
            fe = fold(e) if fold_input else e
            nc = (work.get(fe, 0) + c) % q
            if nc:
                if fe not in work:
                    push(heap, (_neg(key(fe)), fe))
                work[fe] = nc
            else:
                work.pop(fe, None)
        remainder: dict[tuple[int, ...], int] = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = work.get(e)
            if not c:
                continue
            ri = self.find_reducer(e)
            if ri < 0:
                remainder[e] = c
                del work[e]
                continue
            del work[e]
            lt = self.lts[ri]
            cof = tuple(a - b for a, b in zip(e, lt))
            for te, tc in self.tails[ri]:
                ne = fold(tuple(a + b for a, b in zip(te, cof)))
                nc = (work.get(ne, 0) - c * tc) % q
                if nc:
                    if ne not in work:
                        push(heap, (_neg(key(ne)), ne))
                    work[ne] = nc
                else:
                    work.pop(ne, None)
        return remainder

    def nf_poly(self, f: Polynomial) -> Polynomial:
        return Polynomial(self.ring, self.nf(f.iterterms()))

    def tail_reduce(self, poly: Polynomial) -> Polynomial:
        """Leading term kept verbatim, tail replaced by its remainder."""
        lt_exps, lt_c = poly.lt(self.order)
        tail = [(e, c) for e, c in poly.iterterms() if e != lt_exps]
        remainder = self.nf(tail)
        remainder[lt_exps] = lt_c
        return Polynomial(self.ring, remainder)

    def spoly_terms(self, i: int, j: int) -> dict[tuple[int, ...], int]:
        """Terms of the S-polynomial of reducers i and j (both monic)."""
        q = self.q
        fold = self.fold
        lt_i, lt_j = self.lts[i], self.lts[j]
        lcm = tuple(max(a, b) for a, b in zip(lt_i, lt_j))
        u = tuple(a - b for a, b in zip(lcm, lt_i))
        v = tuple(a - b for a, b in zip(lcm, lt_j))
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.polys[i].iterterms():
            ne = fold(tuple(a + b for a, b in zip(e, u)))
            nc = (out.get(ne, 0) + c) % q
            if nc:
                out[ne] = nc
            else:
                out.pop(ne, None)
        for e, c in self.polys[j].iterterms():
            ne = fold(tuple(a + b for a, b in zip(e, v)))
            nc = (out.get(ne, 0) - c) % q
            if nc:
                out[ne] = nc
            else:
                out.pop(ne, None)
        return out


def _common_ring(polys: Sequence[Polynomial]) -> PolynomialRing:
    ring = polys[0].ring
    for p in polys[1:]:
        if p.ring != ring:
            raise RingMismatch("polynomials from different rings")
    return ring


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Remainder of ``f`` on division by ``basis``.

    No term of the result is divisible by any basis leading term, and
    ``f - result`` lies in the ideal generated by the basis.
    """
    basis = [g for g in basis if not g.is_zero]
    if not basis:
        raise InvalidInput("division by an empty basis")
    ring = _common_ring([f, *basis])
    engine = _Engine(ring, order, _field_equation_vars(basis))
    for g in basis:
        engine.add_reducer(g.monic(order))
    return engine.nf_poly(f)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    """The cancellation combination of ``f`` and ``g`` used by the completion."""
    ring = _common_ring([f, g])
    lt_f, cf = f.lt(order)
    lt_g, cg = g.lt(order)
    lcm = tuple(max(a, b) for a, b in zip(lt_f, lt_g))
    u = ring.monomial(tuple(a - b for a, b in zip(lcm, lt_f)), ring.field.inv(cf))
    v = ring.monomial(tuple(a - b for a, b in zip(lcm, lt_g)), ring.field.inv(cg))
    return u * f - v * g


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic generators, mutually irreducible."""

    ring: PolynomialRing
    order: TermOrder
    generators: tuple[Polynomial, ...]

    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(Monomial(g.lt(self.order)[0]) for g in self.generators)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.generators, self.order)

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero:
            return True
        return self.normal_form(f).is_zero

    def serialize(self) -> str:
        header = f"# groebner basis, order {self.order.describe(self.ring.names)}"
        return "\n".join([header, *(str(g) for g in self.generators)]) + "\n"

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)


def buchberger(gens: Sequence[Polynomial], order: TermOrder) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Deterministic for a given generator sequence and order; the output set
    does not depend on the input ordering because the reduced basis is
    unique.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise InvalidInput("no nonzero generators")
    ring = _common_ring(gens)
    monic_gens = [g.monic(order) for g in gens]

    # Field equations are added verbatim before folding starts: folding is
    # reduction by exactly these elements, so it must never erase them.
    field_eqs: dict[int, Polynomial] = {}
    rest: list[Polynomial] = []
    for g in monic_gens:
        i = _field_equation_var(g)
        if i is not None:
            field_eqs.setdefault(i, g)
        else:
            rest.append(g)

    engine = _Engine(ring, order, set(field_eqs))
    pending: dict[tuple[int, int], tuple[int, ...]] = {}
    heap: list[tuple[tuple, int, int]] = []

    def add_poly(p: Polynomial) -> None:
        new = engine.add_reducer(p)
        lt_new = engine.lts[new]
        for i in range(new):
            lcm = tuple(max(a, b) for a, b in zip(engine.lts[i], lt_new))
            pending[(i, new)] = lcm
            heapq.heappush(heap, (engine.key(lcm), i, new))

    for i in sorted(field_eqs):
        add_poly(field_eqs[i])

    seen: set[frozenset] = set()
    for g in sorted(rest, key=lambda p: engine.key(p.lt(order)[0])):
        fingerprint = frozenset(g.iterterms())
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        r = engine.nf(g.iterterms())
        if r:
            add_poly(Polynomial(ring, r).monic(order))
    if not engine.polys:
        raise InvalidInput("generators define the zero ideal")

    while heap:
        _, i, j = heapq.heappop(heap)
        lcm = pending.pop((i, j), None)
        if lcm is None:
            continue
        lt_i, lt_j = engine.lts[i], engine.lts[j]
        # product criterion: coprime leading monomials reduce to zero anyway
        if all(min(a, b) == 0 for a, b in zip(lt_i, lt_j)):
            continue
        # chain criterion: a third element divides the lcm and both linking
        # pairs have already been treated
        n_basis = len(engine.lts)
        skip = False
        for l in range(n_basis):
            if l == i or l == j:
                continue
            if _divides(engine.lts[l], lcm):
                a = (l, i) if l < i else (i, l)
                b = (l, j) if l < j else (j, l)
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        remainder = engine.nf(engine.spoly_terms(i, j).items(), fold_input=False)
        if remainder:
            add_poly(Polynomial(ring, remainder).monic(order))

    return _finalize(engine, order)


def _finalize(engine: _Engine, order: TermOrder) -> GroebnerBasis:
    """Minimalize the completed basis, then reduce every tail."""
    ring = engine.ring
    by_key = sorted(range(len(engine.polys)), key=lambda i: engine.key(engine.lts[i]))
    kept: list[int] = []
    for i in by_key:
        if not any(_divides(engine.lts[k], engine.lts[i]) for k in kept):
            kept.append(i)
    reduced: list[Polynomial] = []
    for i in kept:
        sub = _Engine(ring, order, set(engine.fold_vars))
        for k in kept:
            if k != i:
                sub.add_reducer(engine.polys[k])
        reduced.append(sub.tail_reduce(engine.polys[i]))
    reduced.sort(key=lambda p: engine.key(p.lt(order)[0]))
    return GroebnerBasis(ring, order, tuple(reduced))


def inter_reduce(gens: Sequence[Polynomial], order: TermOrder) -> list[Polynomial]:
    """Mutually reduce a generating set without completing it.

    The result generates the same ideal; no element is reducible by the
    others and zero remainders are dropped.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise InvalidInput("no nonzero generators")
    _common_ring(gens)
    current: list[Polynomial | None] = [g.monic(order) for g in gens]
    changed = True
    while changed:
        changed = False
        for i in range(len(current)):
            f = current[i]
            if f is None:
                continue
            others = [g for j, g in enumerate(current) if j != i and g is not None]
            if not others:
                break
            r = normal_form(f, others, order)
            if r.is_zero:
                current[i] = None
                changed = True
            elif r != f:
                current[i] = r.monic(order)
                changed = True
        current = [g for g in current if g is not None]
    return [g for g in current if g is not None]


def is_groebner_basis(gens: Sequence[Polynomial], order: TermOrder) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    gens = [g for g in gens if not g.is_zero]
    for f, g in itertools.combinations(gens, 2):
        s = s_polynomial(f, g, order)
        if not s.is_zero and not normal_form(s, gens, order).is_zero:
            return False
    return True


@dataclass(frozen=True)
class PointSet:
    """Finite set of coordinate vectors over the prime field, kept sorted."""

    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        pts = tuple(sorted(set(self.points)))
        if pts != self.points:
            object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.points)


def _require_field_equations(gb: GroebnerBasis) -> None:
    ring = gb.ring
    q = ring.q
    for i in range(ring.nvars):
        eq = ring.monomial(tuple(q if j == i else 0 for j in range(ring.nvars))) - ring.variable(i)
        if not gb.contains(eq):
            raise FieldEquationsMissing(
                f"ideal does not contain the field equation of {ring.names[i]}"
            )


def _standard_monomial_box(gb: GroebnerBasis) -> tuple[list[int], list[tuple[int, ...]]] | None:
    """Per-variable exponent bounds from pure-power leading terms, plus the rest.

    Returns None when the basis contains a unit (empty variety).
    """
    ring = gb.ring
    nvars = ring.nvars
    bounds = [ring.q] * nvars
    mixed: list[tuple[int, ...]] = []
    for g in gb.generators:
        lt, _ = g.lt(gb.order)
        support = [i for i, e in enumerate(lt) if e]
        if len(support) == 1:
            i = support[0]
            bounds[i] = min(bounds[i], lt[i])
        elif support:
            mixed.append(lt)
        else:
            return None
    mixed.sort(key=lambda e: sum(e))
    return bounds, mixed


def count_points(gb: GroebnerBasis) -> int:
    """Number of common zeros over the prime field.

    Counts the standard monomials of the basis; because the ideal contains
    every field equation it is radical and zero-dimensional, so the count
    equals the size of the variety.
    """
    _require_field_equations(gb)
    box = _standard_monomial_box(gb)
    if box is None:
        return 0
    bounds, mixed = box
    total = 0
    for exps in itertools.product(*(range(b) for b in bounds)):
        for lt in mixed:
            if _divides(lt, exps):
                break
        else:
            total += 1
    return total


def enumerate_points(gb: GroebnerBasis) -> PointSet:
    """All common zeros of the ideal inside the affine space over the field.

    Uses exhaustive evaluation while ``q**nvars`` stays within the desk-scale
    guard; beyond that a lex basis is required and the points are produced by
    back-substitution along the variable ranking.
    """
    _require_field_equations(gb)
    ring = gb.ring
    q, nvars = ring.q, ring.nvars
    if q**nvars <= EXHAUSTIVE_POINT_LIMIT:
        gens = [
            list(g.iterterms())
            for g in sorted(gb.generators, key=len)
            if _field_equation_var(g) is None
        ]
        pts = []
        for point in itertools.product(range(q), repeat=nvars):
            powers = [[1] * (q + 1) for _ in range(nvars)]
            for i, p in enumerate(point):
                row = powers[i]
                for e in range(1, q + 1):
                    row[e] = (row[e - 1] * p) % q
            ok = True
            for terms in gens:
                total = 0
                for exps, c in terms:
                    v = c
                    for i, e in enumerate(exps):
                        if e:
                            v *= powers[i][e] if e <= q else pow(point[i], e, q)
                    total += v
                if total % q:
                    ok = False
                    break
            if ok:
                pts.append(point)
        return PointSet(tuple(pts))
    if gb.order.kind != "lex":
        raise ParameterTooLarge(
            "space too large for exhaustive enumeration; supply a lex basis"
        )
    return _back_substitute(gb)


def _back_substitute(gb: GroebnerBasis) -> PointSet:
    """Solve a lex basis variable by variable, smallest variable first."""
    ring = gb.ring
    q, nvars = ring.q, ring.nvars
    ranking = gb.order.ranking
    position = {v: i for i, v in enumerate(ranking)}
    buckets: list[list[Polynomial]] = [[] for _ in range(nvars)]
    for g in gb.generators:
        support = g.support()
        if not support:
            return PointSet(())
        buckets[max(position[v] for v in support)].append(g)
    solutions: list[tuple[int, ...]] = []
    assignment = [0] * nvars

    def extend(level: int) -> None:
        if level == nvars:
            solutions.append(tuple(assignment))
            return
        var = ranking[level]
        for value in range(q):
            assignment[var] = value
            if all(g.evaluate(assignment) == 0 for g in buckets[level]):
                extend(level + 1)
        assignment[var] = 0

    extend(0)
    return PointSet(tuple(solutions))
