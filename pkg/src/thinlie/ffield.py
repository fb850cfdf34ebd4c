"""Exact arithmetic in F_p and F_{p^m} for small odd primes p.

Extension fields are polynomial quotient rings F_p[t]/(f) with an explicitly
stored monic irreducible modulus f, so every element has one canonical
coefficient vector and equality is literal.  Everything here is exact integer
arithmetic; no floats, no probabilistic shortcuts.  The module also carries
the binomial machinery used throughout (Lucas digit binomials, falling
binomials with a field-element upper index), a deterministic irreducible
search, an Artin-Schreier solver, and dense Gaussian elimination.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factorial_mod(k: int, p: int) -> int:
    """k! mod p for 0 <= k < p."""
    if not 0 <= k < p:
        raise ValueError(f"factorial_mod needs 0 <= k < p, got k={k}, p={p}")
    out = 1
    for i in range(2, k + 1):
        out = out * i % p
    return out


def lucas_binomial(n: int, k: int, p: int) -> int:
    """Binomial coefficient C(n, k) mod p.

    C(n, k) = 0 for k < 0, and for 0 <= n < k.  A negative upper index is
    resolved through C(n, k) = (-1)^k C(k - n - 1, k) before the digit-wise
    product over base-p digits is taken.
    """
    if k < 0:
        return 0
    if n < 0:
        sign = -1 if k % 2 else 1
        return sign * lucas_binomial(k - n - 1, k, p) % p
    out = 1
    while k > 0:
        out = out * math.comb(n % p, k % p) % p
        if out == 0:
            return 0
        n //= p
        k //= p
    return out


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p, coefficient lists low-to-high

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _prem(a: list[int], f: list[int], p: int) -> list[int]:
    # remainder of a modulo the monic polynomial f
    a = list(a)
    df = len(f) - 1
    while len(a) - 1 >= df and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - df
            for i, fi in enumerate(f):
                a[shift + i] = (a[shift + i] - lead * fi) % p
        a.pop()
    return _ptrim(a)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        monic = [c * inv % p for c in b]
        a, b = b, _prem(a, monic, p)
    return a


def _ppowmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    out = [1]
    base = _prem(base, f, p)
    while e:
        if e & 1:
            out = _prem(_pmul(out, base, p), f, p)
        base = _prem(_pmul(base, base, p), f, p)
        e >>= 1
    return out


def is_irreducible(p: int, coeffs) -> bool:
    """Irreducibility certificate for a monic polynomial over F_p.

    Checks t^(p^m) == t mod f together with gcd(t^(p^(m/l)) - t, f) = 1 for
    every prime divisor l of the degree m.
    """
    f = _ptrim(list(coeffs))
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        raise ValueError("modulus must be monic of degree >= 1")
    if m == 1:
        return True
    x = [0, 1]
    frob = {0: x}
    cur = x
    for d in range(1, m + 1):
        cur = _ppowmod(cur, p, f, p)
        frob[d] = cur
    if _ptrim([(a - b) % p for a, b in itertools.zip_longest(frob[m], x, fillvalue=0)]):
        return False
    for l in range(2, m + 1):
        if m % l == 0 and is_prime(l):
            diff = [(a - b) % p for a, b in itertools.zip_longest(frob[m // l], x, fillvalue=0)]
            g = _pgcd(f, _ptrim(diff), p)
            if len(g) - 1 > 0:
                return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m over F_p.

    Candidates are ordered lexicographically on the coefficient tuple
    (c0, ..., c_{m-1}); the search is deterministic.
    """
    if m < 1:
        raise ValueError("degree must be >= 1")
    for tail in itertools.product(range(p), repeat=m):
        cand = list(tail) + [1]
        if is_irreducible(p, cand):
            return tuple(cand)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


_SPEC_RE = re.compile(r"^(\d+)\^(\d+):([\d,]+)$")


@dataclass(frozen=True)
class FieldParams:
    """Description of F_{p^m} as F_p[t]/(modulus), modulus monic, low-to-high."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 3:
            raise ValueError(f"p must be an odd prime >= 3, got {self.p}")
        if self.m < 1:
            raise ValueError("extension degree must be >= 1")
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError("modulus coefficients must be reduced mod p")
        if not is_irreducible(self.p, list(self.modulus)):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @classmethod
    def prime(cls, p: int) -> "FieldParams":
        return cls(p, 1, (0, 1))

    @classmethod
    def extension(cls, p: int, m: int, modulus=None) -> "FieldParams":
        if modulus is None:
            modulus = find_irreducible(p, m)
        return cls(p, m, tuple(int(c) % p for c in modulus))

    @classmethod
    def parse_spec(cls, text: str) -> "FieldParams":
        """Parse the textual field format p^m:c0,c1,...,cm."""
        mt = _SPEC_RE.match(text.strip())
        if not mt:
            raise ValueError(f"bad field spec {text!r}, expected p^m:c0,...,cm")
        p, m = int(mt.group(1)), int(mt.group(2))
        coeffs = tuple(int(c) for c in mt.group(3).split(","))
        if len(coeffs) != m + 1:
            raise ValueError(f"field spec {text!r} needs m+1 modulus coefficients")
        return cls(p, m, coeffs)

    @property
    def spec_string(self) -> str:
        return f"{self.p}^{self.m}:{','.join(str(c) for c in self.modulus)}"

    @property
    def order(self) -> int:
        return self.p ** self.m

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.params != self:
                raise ValueError("field element belongs to different params")
            return value
        if isinstance(value, int):
            coeffs = [value % self.p] + [0] * (self.m - 1)
            return FieldElement(self, tuple(coeffs))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.m:
            raise ValueError("too many coefficients for this field")
        coeffs += [0] * (self.m - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def gen(self) -> "FieldElement":
        """The class of t; only meaningful for m >= 2."""
        if self.m < 2:
            raise ValueError("prime field has no distinguished generator")
        return self.element([0, 1])

    def elements(self):
        """All field elements in lexicographic coefficient order."""
        for coeffs in itertools.product(range(self.p), repeat=self.m):
            yield FieldElement(self, coeffs)

    def parse_element(self, text: str) -> "FieldElement":
        return _parse_element(self, text)

    def __str__(self):
        return f"F_{self.order}" if self.m > 1 else f"F_{self.p}"


class FieldElement:
    """One element of F_{p^m}, stored as a reduced coefficient tuple."""

    __slots__ = ("params", "coeffs")

    def __init__(self, params: FieldParams, coeffs: tuple[int, ...]):
        self.params = params
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.params != self.params:
                raise ValueError("field params mismatch")
            return other
        if isinstance(other, int):
            return self.params.element(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.params.p
        return FieldElement(self.params, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.params.p
        return FieldElement(self.params, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        p = self.params.p
        return FieldElement(self.params, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.params.p
        prod = _pmul(list(self.coeffs), list(o.coeffs), p)
        red = _prem(prod, list(self.params.modulus), p)
        red += [0] * (self.params.m - len(red))
        return FieldElement(self.params, tuple(red))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.params.order - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.params.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def in_prime_field(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_int(self) -> int:
        """Integer representative in [0, p); errors outside the prime subfield."""
        if not self.in_prime_field():
            raise ValueError(f"{self} is not in the prime subfield")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.params.element(other)
        return (
            isinstance(other, FieldElement)
            and self.params == other.params
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.params, self.coeffs))

    def __str__(self):
        return _format_element(self)

    def __repr__(self):
        return f"<{_format_element(self)} in {self.params}>"


def _format_element(x: FieldElement) -> str:
    if x.params.m == 1:
        return str(x.coeffs[0])
    parts = []
    for k in range(x.params.m - 1, -1, -1):
        c = x.coeffs[k]
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        elif k == 1:
            parts.append("t" if c == 1 else f"{c}t")
        else:
            parts.append(f"t^{k}" if c == 1 else f"{c}t^{k}")
    return "+".join(parts) if parts else "0"


_TERM_RE = re.compile(r"^(\d+)?(?:(t)(?:\^(\d+))?)?$")


def _parse_element(params: FieldParams, text: str) -> FieldElement:
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty field element text")
    coeffs = [0] * params.m
    for term in s.split("+"):
        mt = _TERM_RE.match(term)
        if not mt or (mt.group(1) is None and mt.group(2) is None):
            raise ValueError(f"bad field element term {term!r}")
        c = int(mt.group(1)) if mt.group(1) is not None else 1
        if mt.group(2) is None:
            k = 0
        elif mt.group(3) is None:
            k = 1
        else:
            k = int(mt.group(3))
        if k >= params.m:
            raise ValueError(f"power t^{k} out of range for {params}")
        coeffs[k] = (coeffs[k] + c) % params.p
    return params.element(coeffs)


def falling_binomial(alpha: FieldElement, i: int) -> FieldElement:
    """C(alpha, i) = alpha(alpha-1)...(alpha-i+1)/i! for a field element alpha.

    Needs 0 <= i < p so that i! is invertible.
    """
    params = alpha.params
    if not 0 <= i < params.p:
        raise ValueError(f"falling binomial needs 0 <= i < p, got i={i}")
    num = params.one()
    for r in range(i):
        num = num * (alpha - r)
    return num * params.element(factorial_mod(i, params.p)).inverse()


def solve_artin_schreier(params: FieldParams, c: FieldElement):
    """Smallest x with x^p - x = c in coefficient-lexicographic order, else None.

    When a solution exists the full solution set is x + F_p.
    """
    c = params.element(c)
    p = params.p
    for x in params.elements():
        if x ** p - x == c:
            return x
    return None


# ---------------------------------------------------------------------------
# dense exact linear algebra

class Matrix:
    """Dense matrix over one FieldParams; rows of FieldElement."""

    def __init__(self, field: FieldParams, rows):
        self.field = field
        self.rows = [[field.element(x) for x in row] for row in rows]
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged matrix")
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0

    @classmethod
    def from_cols(cls, field, cols):
        if not cols:
            return cls(field, [])
        n = len(cols[0])
        return cls(field, [[cols[j][i] for j in range(len(cols))] for i in range(n)])

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one(), field.zero()
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    def __sub__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("matrix shape mismatch")
        return Matrix(self.field, [
            [a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)
        ])

    def rref(self):
        """Reduced row echelon form; returns (Matrix, pivot column list)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = rows[r][c].inverse()
            rows[r] = [x * inv for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return Matrix(self.field, rows), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list[list[FieldElement]]:
        """Basis of the right null space, one vector per free column."""
        red, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        zero, one = self.field.zero(), self.field.one()
        for fc in free:
            vec = [zero] * self.ncols
            vec[fc] = one
            for r, pc in enumerate(pivots):
                vec[pc] = -red.rows[r][fc]
            basis.append(vec)
        return basis

    def eigenspace(self, lam: FieldElement) -> list[list[FieldElement]]:
        if self.nrows != self.ncols:
            raise ValueError("eigenspace needs a square matrix")
        shifted = self - Matrix.identity(self.field, self.nrows).scale(lam)
        return shifted.kernel()

    def scale(self, c: FieldElement) -> "Matrix":
        return Matrix(self.field, [[c * x for x in row] for row in self.rows])

    def times_vector(self, vec):
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.rows:
            acc = self.field.zero()
            for a, b in zip(row, vec):
                acc = acc + a * b
            out.append(acc)
        return out

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows


def in_span(field: FieldParams, vectors, target):
    """Coefficients expressing target in span(vectors), or None.

    vectors and target are coordinate lists over the same field.
    """
    if not vectors:
        return [] if all(not field.element(x) for x in target) else None
    aug = Matrix(field, [list(col) + [t] for col, t in
                         zip(zip(*vectors), target)])
    red, pivots = aug.rref()
    ncols = len(vectors)
    if ncols in pivots:
        return None
    coeffs = [field.zero()] * ncols
    for r, pc in enumerate(pivots):
        coeffs[pc] = red.rows[r][-1]
    return coeffs
