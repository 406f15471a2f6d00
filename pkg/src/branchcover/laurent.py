"""Exact integer Laurent polynomials in one variable ``t``.

Polynomials are immutable and sparse (exponent -> coefficient). Coefficients
are Python ints, so nothing overflows. Alexander polynomials are only defined
up to multiplication by a unit ``±t^k``; :func:`normalize` picks a canonical
representative so that equality up to units becomes plain equality.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence, TypeVar, Union

__all__ = [
    "LaurentPoly",
    "UnitClass",
    "InexactDivisionError",
    "PolyParseError",
    "add",
    "mul",
    "eval_int",
    "normalize",
    "cyclotomic_column",
    "resultant",
    "divide_exact",
    "bareiss_det",
    "sylvester_matrix",
]

Scalar = Union[int, "LaurentPoly"]


class PolyParseError(ValueError):
    """Raised when polynomial text does not match the grammar."""


class InexactDivisionError(ArithmeticError):
    """Division left a nonzero remainder.

    The remainder is kept on the exception; seeing one usually means a
    sign or normalization convention upstream is off.
    """

    def __init__(self, dividend: LaurentPoly, divisor: LaurentPoly, remainder: LaurentPoly):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"({dividend}) is not divisible by ({divisor}); remainder {remainder}")


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        terms: dict[int, int] = {}
        if coeffs:
            for e, c in coeffs.items():
                c = operator.index(c)
                if c:
                    terms[operator.index(e)] = c
        self._terms = terms
        self._hash = None

    # construction ------------------------------------------------------

    @classmethod
    def _from_clean(cls, terms: dict[int, int]) -> LaurentPoly:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def from_dense(cls, coeffs: Sequence[int], low: int = 0) -> LaurentPoly:
        """Build from ascending coefficients, the first one at ``t**low``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        return parse_poly(text)

    # access ------------------------------------------------------------

    @property
    def coeffs(self) -> Mapping[int, int]:
        return MappingProxyType(self._terms)

    def __getitem__(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    @property
    def leading(self) -> int:
        return self._terms[self.max_exp] if self._terms else 0

    def is_ordinary(self) -> bool:
        """True when no negative exponents occur."""
        return not self._terms or self.min_exp >= 0

    def dense(self) -> list[int]:
        """Ascending coefficients from ``t**min_exp`` up to ``t**max_exp``."""
        if not self._terms:
            return []
        lo, hi = self.min_exp, self.max_exp
        return [self._terms.get(e, 0) for e in range(lo, hi + 1)]

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t**k``."""
        if k == 0:
            return self
        return LaurentPoly._from_clean({e + k: c for e, c in self._terms.items()})

    def lowered(self) -> LaurentPoly:
        """Shift so that the minimal exponent is 0 (zero stays zero)."""
        return self.shift(-self.min_exp) if self._terms else self

    # arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return None

    def __add__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in g._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._from_clean(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._from_clean({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return g + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            return LaurentPoly._from_clean({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._from_clean({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._terms) == 1:
                ((e, c),) = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly({e * n: c ** (-n)})
            raise ValueError("only units can be raised to negative powers")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __floordiv__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return divide_exact(self, g)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __call__(self, x):
        return eval_int(self, x)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly('{format_poly(self)}')"


T_ = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


@dataclass(frozen=True)
class UnitClass:
    """A Laurent polynomial modulo units, held by its canonical form.

    The canonical form has minimal exponent 0 and a positive leading
    coefficient; the zero polynomial is its own class. Build instances
    with :func:`normalize`.
    """

    canonical: LaurentPoly

    def __post_init__(self):
        p = self.canonical
        if p and (p.min_exp != 0 or p.leading < 0):
            raise ValueError(f"{p} is not in canonical unit form")

    def __bool__(self) -> bool:
        return bool(self.canonical)

    def __str__(self) -> str:
        return str(self.canonical)

    @classmethod
    def parse(cls, text: str) -> UnitClass:
        return normalize(parse_poly(text))


# text grammar -----------------------------------------------------------

_TERM = re.compile(
    r"(?P<coef>\d+)(?:(?P<star>\*)?t(?:\^(?P<exp>-?\d+))?)?"
    r"|t(?:\^(?P<exp2>-?\d+))?"
)


def parse_poly(text: str) -> LaurentPoly:
    """Parse ``-1+2t+t^2-4t^3``-style text. Whitespace is ignored."""
    s = "".join(text.split())
    if not s:
        raise PolyParseError("empty polynomial text")
    terms: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            if s[pos] == "+" and first:
                raise PolyParseError(f"leading '+' at column {pos} in {text!r}")
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise PolyParseError(f"expected '+' or '-' at column {pos} in {text!r}")
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise PolyParseError(f"malformed term at column {pos} in {text!r}")
        if m.group("coef") is not None:
            coef = int(m.group("coef"))
            if m.end() > m.end("coef"):
                exp = int(m.group("exp")) if m.group("exp") is not None else 1
            else:
                exp = 0
        else:
            coef = 1
            exp = int(m.group("exp2")) if m.group("exp2") is not None else 1
        terms[exp] = terms.get(exp, 0) + sign * coef
        pos = m.end()
        first = False
    return LaurentPoly(terms)


def format_poly(p: LaurentPoly) -> str:
    """Serialize in ascending degree; the output reparses to ``p``."""
    if not p:
        return "0"
    parts = []
    for e in sorted(p.coeffs):
        c = p[e]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = "t" if e == 1 else f"t^{e}"
            body = mono if a == 1 else f"{a}{mono}"
        parts.append(sign + body)
    out = "".join(parts)
    return out[1:] if out[0] == "+" else out


# operations -------------------------------------------------------------

def add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f + g


def mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def eval_int(f: LaurentPoly, x: int) -> int | Fraction:
    """Evaluate exactly at a nonzero integer; returns an int when integral."""
    if x == 0:
        raise ZeroDivisionError("Laurent polynomials cannot be evaluated at 0")
    total = Fraction(0)
    for e, c in f.coeffs.items():
        total += c * (Fraction(x) ** e)
    return int(total) if total.denominator == 1 else total


def normalize(f: LaurentPoly) -> UnitClass:
    if not f:
        return UnitClass(ZERO)
    g = f.lowered()
    if g.leading < 0:
        g = -g
    return UnitClass(g)


def cyclotomic_column(k: int) -> LaurentPoly:
    """``1 + t + ... + t**(k-1)``; its roots are the nontrivial k-th roots of unity."""
    if k < 2:
        raise ValueError(f"cover degree must be >= 2, got {k}")
    return LaurentPoly({i: 1 for i in range(k)})


def divide_exact(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``f == q * g`` in Z[t, 1/t]; raise otherwise."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return ZERO
    a, b = f.min_exp, g.min_exp
    rem = f.lowered().dense()[::-1]  # descending
    div = g.lowered().dense()[::-1]
    lead = div[0]
    n = len(div)
    quot: list[int] = []
    i = 0
    while len(rem) - i >= n:
        c = rem[i]
        if c % lead:
            break
        q = c // lead
        quot.append(q)
        if q:
            for j in range(n):
                rem[i + j] -= q * div[j]
        i += 1
    r = rem[i:]
    if any(r):
        rp = LaurentPoly.from_dense(r[::-1]).shift(a)
        raise InexactDivisionError(f, g, rp)
    # quot holds descending coefficients of the shifted quotient
    return LaurentPoly.from_dense(quot[::-1]).shift(a - b)


R = TypeVar("R")


def bareiss_det(
    matrix: Sequence[Sequence[R]],
    exact_div: Callable[[R, R], R] = operator.floordiv,
    one: R = 1,
) -> R:
    """Fraction-free Gaussian elimination determinant over an integral domain.

    Works for ints and for :class:`LaurentPoly` entries (pass ``one=ONE``);
    every division performed is exact.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return one * 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            lik = ri[k]
            for j in range(k + 1, n):
                ri[j] = exact_div(ri[j] * pk - lik * rk[j], prev)
        prev = pk
    return m[n - 1][n - 1] * sign


def sylvester_matrix(f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    """Sylvester matrix from descending coefficient lists."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g) + [0] * (size - n - 1 - i))
    return rows


def resultant(f: LaurentPoly, g: LaurentPoly) -> int:
    """Resultant of two nonzero ordinary polynomials via the Sylvester determinant."""
    if not f or not g:
        raise ValueError("resultant is undefined for the zero polynomial")
    if not (f.is_ordinary() and g.is_ordinary()):
        raise ValueError("resultant needs ordinary polynomials; shift Laurent inputs first")
    fd = [f[e] for e in range(f.max_exp, -1, -1)]
    gd = [g[e] for e in range(g.max_exp, -1, -1)]
    return bareiss_det(sylvester_matrix(fd, gd))


def poly_det(matrix: Iterable[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant of a square matrix of Laurent polynomials."""
    return bareiss_det([list(r) for r in matrix], divide_exact, ONE)
