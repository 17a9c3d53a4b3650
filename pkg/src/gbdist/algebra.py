"""Prime-field arithmetic, term orders and sparse multivariate polynomials.

Everything downstream (ideal constructors, Buchberger, code metrics) is built
on the three value types defined here: ``PrimeField`` elements, ``Monomial``
exponent vectors compared through a ``TermOrder``, and sparse ``Polynomial``
objects keyed by exponent tuples.  All types are immutable after construction
and safe to share between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DegreeOutOfRange, InvalidInput, InversionOfZero, RingMismatch

__all__ = [
    "PrimeField",
    "FieldElem",
    "Monomial",
    "TermOrder",
    "PolynomialRing",
    "Polynomial",
    "field_inverse",
    "compare_monomials",
    "reduce_field_exponents",
    "is_prime",
]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (desk-scale moduli)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field of integers modulo a prime ``q``."""

    __slots__ = ("q",)

    def __init__(self, q: int):
        if not is_prime(q):
            raise InvalidInput(f"modulus {q} is not prime")
        self.q = q

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and self.q == other.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"

    def __call__(self, value: int) -> "FieldElem":
        return FieldElem(value % self.q, self)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(0, self)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(1, self)

    def elements(self) -> Iterator["FieldElem"]:
        for v in range(self.q):
            yield FieldElem(v, self)

    def inv(self, value: int) -> int:
        """Inverse of a canonical representative, as an integer."""
        value %= self.q
        if value == 0:
            raise InversionOfZero("0 has no multiplicative inverse")
        return pow(value, self.q - 2, self.q)


class FieldElem:
    """An element of a :class:`PrimeField`, stored as its canonical residue."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.q
        self.field = field

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise RingMismatch("elements of different prime fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.q
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.value + v, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.value - v, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(v - self.value, self.field)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.value * v, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.value * self.field.inv(v), self.field)

    def __neg__(self):
        return FieldElem(-self.value, self.field)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(pow(self.value, e, self.field.q), self.field)

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field.inv(self.value), self.field)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.value == other.value and self.field == other.field
        if isinstance(other, int):
            return self.value == other % self.field.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.q))

    def __repr__(self) -> str:
        return f"F{self.field.q}({self.value})"


def field_inverse(a: FieldElem) -> FieldElem:
    """Multiplicative inverse of a nonzero field element."""
    return a.inverse()


@dataclass(frozen=True)
class Monomial:
    """Exponent vector of a power product, one entry per ring variable."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise InvalidInput("negative exponent in monomial")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def arity(self) -> int:
        return len(self.exponents)

    def divides(self, other: "Monomial") -> bool:
        if self.arity != other.arity:
            raise RingMismatch("monomials of different arity")
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.arity != other.arity:
            raise RingMismatch("monomials of different arity")
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))


@dataclass(frozen=True)
class TermOrder:
    """An admissible order on monomials.

    ``kind`` is ``"lex"`` or ``"degrevlex"``.  ``ranking`` lists the variable
    indices in ascending order: ``ranking[0]`` is the smallest variable and
    ``ranking[-1]`` the largest.  ``key`` maps an exponent tuple to a sort key
    whose natural tuple comparison realizes the order.
    """

    kind: str
    ranking: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex"):
            raise InvalidInput(f"unknown term order kind {self.kind!r}")
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise InvalidInput("ranking must be a permutation of the variable indices")

    @classmethod
    def lex(cls, nvars: int, ranking: Sequence[int] | None = None) -> "TermOrder":
        return cls("lex", tuple(ranking) if ranking is not None else tuple(range(nvars)))

    @classmethod
    def degrevlex(cls, nvars: int, ranking: Sequence[int] | None = None) -> "TermOrder":
        return cls("degrevlex", tuple(ranking) if ranking is not None else tuple(range(nvars)))

    @property
    def nvars(self) -> int:
        return len(self.ranking)

    def key(self, exponents: tuple[int, ...]):
        if self.kind == "lex":
            return tuple(exponents[v] for v in reversed(self.ranking))
        # degrevlex: graded, ties broken by "more of a smaller variable is smaller"
        return (sum(exponents),) + tuple(-exponents[v] for v in self.ranking)

    def describe(self, names: Sequence[str]) -> str:
        chain = " > ".join(names[v] for v in reversed(self.ranking))
        return f"{self.kind} {chain}"


def compare_monomials(order: TermOrder, m1: Monomial, m2: Monomial) -> int:
    """Three-way comparison: -1 if m1 < m2, 0 if equal, +1 if m1 > m2."""
    if m1.arity != m2.arity or m1.arity != order.nvars:
        raise RingMismatch("monomial arity does not match the order")
    k1, k2 = order.key(m1.exponents), order.key(m2.exponents)
    return (k1 > k2) - (k1 < k2)


_TERM_SPLIT = re.compile(r"(?=[+-])")


class PolynomialRing:
    """Context shared by polynomials: coefficient field and variable names."""

    __slots__ = ("field", "names", "_index")

    def __init__(self, field: PrimeField, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise InvalidInput("duplicate variable names")
        self.field = field
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    @classmethod
    def make(cls, q: int, names: Sequence[str]) -> "PolynomialRing":
        return cls(PrimeField(q), names)

    @classmethod
    def block(cls, q: int, *blocks: tuple[str, int]) -> "PolynomialRing":
        """Ring with numbered variable blocks, e.g. ``block(2, ("x", 3), ("z", 2))``."""
        names = [f"{stem}{i + 1}" for stem, count in blocks for i in range(count)]
        return cls(PrimeField(q), names)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolynomialRing)
            and self.field == other.field
            and self.names == other.names
        )

    def __hash__(self) -> int:
        return hash((self.field, self.names))

    def __repr__(self) -> str:
        return f"PolynomialRing(F{self.q}[{', '.join(self.names)}])"

    # -- constructors -------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.q
        zero = (0,) * self.nvars
        return Polynomial(self, {zero: c} if c else {})

    def variable(self, i: int) -> "Polynomial":
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: 1})

    def monomial(self, exponents: Sequence[int], coeff: int = 1) -> "Polynomial":
        exps = tuple(exponents)
        if len(exps) != self.nvars:
            raise RingMismatch("exponent tuple has wrong arity")
        coeff %= self.q
        return Polynomial(self, {exps: coeff} if coeff else {})

    def from_terms(self, terms: Mapping[tuple[int, ...], int]) -> "Polynomial":
        canon: dict[tuple[int, ...], int] = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise RingMismatch("exponent tuple has wrong arity")
            c = (canon.get(exps, 0) + c) % self.q
            if c:
                canon[exps] = c
            else:
                canon.pop(exps, None)
        return Polynomial(self, canon)

    # -- text syntax --------------------------------------------------------

    def parse(self, text: str) -> "Polynomial":
        """Parse the term syntax ``coeff*x1^e1*x2^e2`` joined by ``+``/``-``.

        Coefficient 1 and exponent 1 may be omitted; whitespace is ignored.
        The parser round-trips the printer.
        """
        s = text.replace(" ", "").replace("\t", "")
        if not s:
            raise InvalidInput("empty polynomial text")
        if s == "0":
            return self.zero()
        terms: dict[tuple[int, ...], int] = {}
        chunks = [c for c in _TERM_SPLIT.split(s) if c]
        for chunk in chunks:
            sign = 1
            if chunk[0] == "+":
                chunk = chunk[1:]
            elif chunk[0] == "-":
                sign = -1
                chunk = chunk[1:]
            if not chunk:
                raise InvalidInput(f"dangling sign in {text!r}")
            coeff = sign
            exps = [0] * self.nvars
            for factor in chunk.split("*"):
                if not factor:
                    raise InvalidInput(f"empty factor in {text!r}")
                if factor[0].isdigit():
                    if not factor.isdigit():
                        raise InvalidInput(f"bad numeric factor {factor!r}")
                    coeff *= int(factor)
                    continue
                name, _, exp = factor.partition("^")
                if name not in self._index:
                    raise InvalidInput(f"unknown variable {name!r}")
                e = 1
                if exp:
                    if not exp.isdigit():
                        raise InvalidInput(f"bad exponent {exp!r}")
                    e = int(exp)
                exps[self._index[name]] += e
            key = tuple(exps)
            c = (terms.get(key, 0) + coeff) % self.q
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
        return Polynomial(self, terms)


class Polynomial:
    """Sparse multivariate polynomial over a prime field.

    Terms are stored as a map from an exponent tuple to a nonzero canonical
    coefficient in ``[1, q)``, so equal polynomials compare equal and the
    representation is unique.  Instances are immutable.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict[tuple[int, ...], int]):
        self.ring = ring
        self._terms = terms
        self._hash: int | None = None

    # -- basic views --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def iterterms(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Fast internal view: (exponent tuple, int coefficient) pairs."""
        return iter(self._terms.items())

    @property
    def terms(self) -> dict[Monomial, FieldElem]:
        return {Monomial(e): FieldElem(c, self.ring.field) for e, c in self._terms.items()}

    def coefficient(self, monomial: Monomial | Sequence[int]) -> FieldElem:
        exps = monomial.exponents if isinstance(monomial, Monomial) else tuple(monomial)
        return FieldElem(self._terms.get(exps, 0), self.ring.field)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def support(self) -> set[int]:
        """Indices of variables that occur with a positive exponent."""
        occupied: set[int] = set()
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e:
                    occupied.add(i)
        return occupied

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        self._check(other)
        q = self.ring.q
        out = dict(self._terms)
        for e, c in other._terms.items():
            nc = (out.get(e, 0) + c) % q
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        self._check(other)
        q = self.ring.q
        out = dict(self._terms)
        for e, c in other._terms.items():
            nc = (out.get(e, 0) - c) % q
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    def __rsub__(self, other):
        if isinstance(other, int):
            return self.ring.constant(other) - self
        return NotImplemented

    def __neg__(self):
        q = self.ring.q
        return Polynomial(self.ring, {e: q - c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.ring.q
            if c == 0:
                return self.ring.zero()
            q = self.ring.q
            return Polynomial(self.ring, {e: (v * c) % q for e, v in self._terms.items()})
        if isinstance(other, FieldElem):
            if other.field != self.ring.field:
                raise RingMismatch("scalar from a different field")
            return self * other.value
        self._check(other)
        q = self.ring.q
        out: dict[tuple[int, ...], int] = {}
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                nc = (out.get(key, 0) + c1 * c2) % q
                if nc:
                    out[key] = nc
                else:
                    out.pop(key, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidInput("negative polynomial power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- structure ----------------------------------------------------------

    def leading_term(self, order: TermOrder) -> tuple[Monomial, FieldElem]:
        exps, c = self.lt(order)
        return Monomial(exps), FieldElem(c, self.ring.field)

    def lt(self, order: TermOrder) -> tuple[tuple[int, ...], int]:
        """Leading (exponent tuple, coefficient); raises on zero."""
        if not self._terms:
            raise InvalidInput("zero polynomial has no leading term")
        key = order.key
        exps = max(self._terms, key=key)
        return exps, self._terms[exps]

    def monic(self, order: TermOrder) -> "Polynomial":
        if not self._terms:
            return self
        _, c = self.lt(order)
        if c == 1:
            return self
        inv = self.ring.field.inv(c)
        q = self.ring.q
        return Polynomial(self.ring, {e: (v * inv) % q for e, v in self._terms.items()})

    def reduce_exponents(self) -> "Polynomial":
        """Fold every exponent ``e >= q`` to ``((e - 1) mod (q - 1)) + 1``.

        The result agrees with ``self`` modulo the field equations, and on
        every point of the affine space over the prime field.
        """
        q = self.ring.q
        hi = q
        changed = False
        out: dict[tuple[int, ...], int] = {}
        for exps, c in self._terms.items():
            if any(e >= hi for e in exps):
                changed = True
                exps = tuple(e if e < hi else ((e - 1) % (q - 1)) + 1 for e in exps)
                nc = (out.get(exps, 0) + c) % q
                if nc:
                    out[exps] = nc
                else:
                    out.pop(exps, None)
            else:
                nc = (out.get(exps, 0) + c) % q
                if nc:
                    out[exps] = nc
                else:
                    out.pop(exps, None)
        if not changed:
            return self
        return Polynomial(self.ring, out)

    def evaluate(self, point: Sequence[int]) -> int:
        """Value at a point with coordinates in [0, q), as a canonical residue."""
        if len(point) != self.ring.nvars:
            raise RingMismatch("point arity does not match the ring")
        q = self.ring.q
        total = 0
        for exps, c in self._terms.items():
            v = c
            for p, e in zip(point, exps):
                if e:
                    v = (v * pow(p, e, q)) % q
                    if v == 0:
                        break
            total += v
        return total % q

    def embed(self, target: PolynomialRing, var_map: Sequence[int]) -> "Polynomial":
        """Image under the ring map sending variable ``i`` to ``target`` variable ``var_map[i]``."""
        if target.field != self.ring.field:
            raise RingMismatch("target ring has a different field")
        n = target.nvars
        out: dict[tuple[int, ...], int] = {}
        for exps, c in self._terms.items():
            img = [0] * n
            for i, e in enumerate(exps):
                if e:
                    img[var_map[i]] += e
            key = tuple(img)
            nc = (out.get(key, 0) + c) % target.q
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
        return Polynomial(target, out)

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        display = TermOrder.degrevlex(self.ring.nvars, tuple(reversed(range(self.ring.nvars))))
        parts = []
        for exps in sorted(self._terms, key=display.key, reverse=True):
            c = self._terms[exps]
            factors = []
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                name = self.ring.names[i]
                factors.append(name if e == 1 else f"{name}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<{self} over F{self.ring.q}>"


def reduce_field_exponents(f: Polynomial) -> Polynomial:
    """Rewrite ``x^q -> x`` everywhere; equal to ``f`` modulo the field equations."""
    return f.reduce_exponents()


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Dispatch helper for the three ring operations ``add | sub | mul``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InvalidInput(f"unknown operation {op!r}")


def squarefree_part(exps: Iterable[int]) -> tuple[int, ...]:
    """Clamp exponents to {0, 1}; the support pattern of a monomial."""
    return tuple(1 if e else 0 for e in exps)


def degree_bounded_exponents(nvars: int, q: int, max_degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples with entries < q and total degree <= max_degree, sorted."""
    if max_degree < 0:
        raise DegreeOutOfRange("negative degree bound")
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int, budget: int):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(min(q - 1, budget) + 1):
            prefix.append(e)
            rec(prefix, remaining - 1, budget - e)
            prefix.pop()

    rec([], nvars, max_degree)
    out.sort()
    return out
