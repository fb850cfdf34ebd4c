"""Divided power algebra in two variables with bounded exponent heights.

Monomials are written x^(i)y^(j) with 0 <= i < p^n1 and 0 <= j < p^n2 and
multiply by x^(i)y^(j) * x^(k)y^(l) = C(i+k, i) C(j+l, j) x^(i+k)y^(j+l).
Whenever an exponent would overflow its height the binomial coefficient is 0
mod p (a base-p carry), so overflowing products are the zero element; this is
asserted rather than assumed.  Elements are sparse monomial-to-coefficient
maps over an explicit finite field and every operation returns a new element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .ffield import FieldElement, FieldParams, factorial_mod, falling_binomial, is_prime, lucas_binomial


class Monomial(NamedTuple):
    i: int
    j: int

    def text(self) -> str:
        return f"x^({self.i})y^({self.j})"


@dataclass(frozen=True)
class Heights:
    """Exponent bounds (p^n1, p^n2) of the algebra."""

    p: int
    n1: int
    n2: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 3:
            raise ValueError(f"p must be an odd prime >= 3, got {self.p}")
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("heights must be >= 1")

    @property
    def xbound(self) -> int:
        return self.p ** self.n1

    @property
    def ybound(self) -> int:
        return self.p ** self.n2

    @property
    def q(self) -> int:
        return self.ybound

    @property
    def unit(self) -> Monomial:
        return Monomial(0, 0)

    @property
    def top(self) -> Monomial:
        """The monomial xbar*ybar of maximal exponents."""
        return Monomial(self.xbound - 1, self.ybound - 1)

    def contains(self, m: Monomial) -> bool:
        return 0 <= m.i < self.xbound and 0 <= m.j < self.ybound

    def monomials(self):
        for i in range(self.xbound):
            for j in range(self.ybound):
                yield Monomial(i, j)


def mono_mul(h: Heights, a: Monomial, b: Monomial):
    """Product of two monomials: (coefficient mod p, monomial) or None if zero.

    Exponent overflow forces the coefficient to vanish mod p; both facts are
    checked against each other.
    """
    p = h.p
    i, j = a.i + b.i, a.j + b.j
    c = lucas_binomial(i, a.i, p) * lucas_binomial(j, a.j, p) % p
    if i >= h.xbound or j >= h.ybound:
        assert c == 0, f"overflowing product {a} * {b} has nonzero coefficient {c}"
        return None
    if c == 0:
        return None
    return c, Monomial(i, j)


class AlgebraElement:
    """Sparse element of the divided power algebra over a fixed field."""

    __slots__ = ("field", "heights", "terms")

    def __init__(self, field: FieldParams, heights: Heights, terms=()):
        if field.p != heights.p:
            raise ValueError("field and heights disagree on p")
        self.field = field
        self.heights = heights
        clean: dict[Monomial, FieldElement] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for mono, coeff in items:
            mono = Monomial(*mono)
            if not heights.contains(mono):
                raise ValueError(f"monomial {mono} out of bounds for heights {heights}")
            c = field.element(coeff)
            if not c.is_zero():
                acc = clean.get(mono)
                c = c if acc is None else acc + c
                if c.is_zero():
                    clean.pop(mono, None)
                else:
                    clean[mono] = c
        self.terms = clean

    @classmethod
    def _make(cls, field, heights, terms: dict) -> "AlgebraElement":
        # internal fast path: terms already canonical
        out = object.__new__(cls)
        out.field = field
        out.heights = heights
        out.terms = terms
        return out

    @classmethod
    def zero(cls, field, heights) -> "AlgebraElement":
        return cls._make(field, heights, {})

    @classmethod
    def from_monomial(cls, field, heights, mono, coeff=1) -> "AlgebraElement":
        return cls(field, heights, [(Monomial(*mono), coeff)])

    def _check_compatible(self, other: "AlgebraElement"):
        if self.field != other.field or self.heights != other.heights:
            raise ValueError("algebra element field/heights mismatch")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def support(self):
        return sorted(self.terms)

    def coeff(self, mono) -> FieldElement:
        return self.terms.get(Monomial(*mono), self.field.zero())

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            acc = out.get(mono)
            s = c if acc is None else acc + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        return AlgebraElement._make(self.field, self.heights, out)

    def __neg__(self):
        return AlgebraElement._make(
            self.field, self.heights, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = self.field.element(c)
        if c.is_zero():
            return AlgebraElement.zero(self.field, self.heights)
        return AlgebraElement._make(
            self.field, self.heights, {m: x * c for m, x in self.terms.items()}
        )

    def __mul__(self, other):
        """Associative divided-power product, bilinear over mono_mul."""
        self._check_compatible(other)
        out: dict[Monomial, FieldElement] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                hit = mono_mul(self.heights, m1, m2)
                if hit is None:
                    continue
                k, mono = hit
                c = c1 * c2 * k
                acc = out.get(mono)
                c = c if acc is None else acc + c
                if c.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = c
        return AlgebraElement._make(self.field, self.heights, out)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.field == other.field
            and self.heights == other.heights
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.heights, tuple(self.items())))

    def text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{m.text()}" for m, c in self.items())

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"<{self.text()}>"


_ELEM_TERM_RE = re.compile(r"^\((?P<c>[^)]*)\)\*x\^\((?P<i>\d+)\)y\^\((?P<j>\d+)\)$")


def parse_element(field: FieldParams, heights: Heights, text: str) -> AlgebraElement:
    """Inverse of AlgebraElement.text(); bit-exact round trip on canonical output."""
    s = text.strip()
    if s == "0":
        return AlgebraElement.zero(field, heights)
    terms = []
    for part in s.split(" + "):
        mt = _ELEM_TERM_RE.match(part.strip())
        if not mt:
            raise ValueError(f"bad element term {part!r}")
        coeff = field.parse_element(mt.group("c"))
        terms.append((Monomial(int(mt.group("i")), int(mt.group("j"))), coeff))
    return AlgebraElement(field, heights, terms)


def generalized_power(field: FieldParams, heights: Heights, sigma: FieldElement,
                      alpha: FieldElement, s: int) -> AlgebraElement:
    """(1 + sigma*x^(p^s))^alpha for a field-element exponent alpha.

    Expands to sum_{i=0}^{p-1} C(alpha, i) i! sigma^i x^(i p^s); requires
    p^s < p^n1 so every term exists.  In alpha this is a one-parameter group:
    the product of two such powers is the power at the sum of the exponents.
    """
    p = field.p
    ps = p ** s
    if s < 0 or ps >= heights.xbound:
        raise ValueError(f"step p^{s} out of range for heights {heights}")
    sigma = field.element(sigma)
    alpha = field.element(alpha)
    terms = {}
    sig_pow = field.one()
    for i in range(p):
        c = falling_binomial(alpha, i) * factorial_mod(i, p) * sig_pow
        if not c.is_zero():
            terms[Monomial(i * ps, 0)] = c
        sig_pow = sig_pow * sigma
    return AlgebraElement._make(field, heights, terms)


class SparseEchelon:
    """Incremental reduced row echelon form over sparse algebra elements.

    Rows are kept fully inter-reduced with unit leading coefficient at the
    lexicographically smallest monomial of their support, so two subspaces are
    equal iff their SparseEchelon rows are equal.
    """

    def __init__(self, field: FieldParams, heights: Heights):
        self.field = field
        self.heights = heights
        self.rows: dict[Monomial, AlgebraElement] = {}

    def reduce(self, v: AlgebraElement) -> AlgebraElement:
        while v.terms:
            lead = min(v.terms)
            row = self.rows.get(lead)
            if row is None:
                return v
            v = v - row.scale(v.terms[lead])
        return v

    def insert(self, v: AlgebraElement) -> bool:
        """Add v to the span; True iff the rank grew."""
        v = self.reduce(v)
        if v.is_zero():
            return False
        lead = min(v.terms)
        v = v.scale(v.terms[lead].inverse())
        for key in list(self.rows):
            row = self.rows[key]
            c = row.terms.get(lead)
            if c is not None:
                self.rows[key] = row - v.scale(c)
        self.rows[lead] = v
        return True

    def contains(self, v: AlgebraElement) -> bool:
        return self.reduce(v).is_zero()

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list[AlgebraElement]:
        return [self.rows[k] for k in sorted(self.rows)]

    def __eq__(self, other):
        return isinstance(other, SparseEchelon) and self.rows == other.rows
