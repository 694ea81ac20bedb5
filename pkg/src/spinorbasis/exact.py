"""Exact arithmetic in Q(sqrt(d1), sqrt(d2), ...)(i).

A :class:`SqrtLinear` is a finite sum ``sum q_d * sqrt(d)`` with rational
``q_d`` and square-free ``d >= 1``.  An :class:`ExactComplex` pairs two of
them as real and imaginary parts.  Values are immutable and hashable, and
every instance is kept in canonical form, so ``==`` is exact equality.

The canonical string form is::

    (p/q)*sqrt(d) + (p/q) + i*((p/q)*sqrt(d) + ...)

and :func:`parse` reads it back losslessly.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "SqrtLinear",
    "ExactComplex",
    "ZERO",
    "ONE",
    "I",
    "sqrt",
    "exact",
    "parse",
    "square_free_split",
]


@lru_cache(maxsize=4096)
def square_free_split(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n == k*k*d`` and ``d`` square-free."""
    if n <= 0:
        raise ValueError(f"square_free_split needs a positive integer, got {n}")
    k, d = 1, 1
    rest = n
    p = 2
    while p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    d *= rest
    return k, d


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


class SqrtLinear:
    """Real element ``sum q_d sqrt(d)`` of the radical field.

    ``terms`` maps square-free ``d`` to a nonzero :class:`Fraction`.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        acc: dict[int, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for d, q in items:
                q = _as_fraction(q)
                if q == 0:
                    continue
                k, sf = square_free_split(int(d))
                acc[sf] = acc.get(sf, Fraction(0)) + q * k
        self._terms = tuple(sorted((d, q) for d, q in acc.items() if q != 0))
        self._hash = None

    @classmethod
    def rational(cls, q) -> "SqrtLinear":
        return cls({1: q})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(d == 1 for d, _ in self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, SqrtLinear):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SqrtLinear.rational(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("SqrtLinear", self._terms))
        return self._hash

    def __neg__(self):
        return SqrtLinear({d: -q for d, q in self._terms})

    def __add__(self, other):
        other = _coerce_real(other)
        if other is None:
            return NotImplemented
        return SqrtLinear(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_real(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_real(other)
        if other is None:
            return NotImplemented
        out = []
        for d1, q1 in self._terms:
            for d2, q2 in other._terms:
                g = math.gcd(d1, d2)
                # sqrt(d1) sqrt(d2) = g sqrt(d1 d2 / g^2), both factors square-free
                out.append((d1 // g * (d2 // g), q1 * q2 * g))
        return SqrtLinear(out)

    __rmul__ = __mul__

    def conj_radical(self) -> "SqrtLinear":
        """Flip the sign of the last radical term (two-term rationalization)."""
        if len(self._terms) != 2:
            raise ValueError("conj_radical needs exactly two terms")
        (d1, q1), (d2, q2) = self._terms
        return SqrtLinear({d1: q1, d2: -q2})

    def inverse(self) -> "SqrtLinear":
        n = len(self._terms)
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        if n == 1:
            ((d, q),) = self._terms
            return SqrtLinear({d: 1 / (q * d)})
        if n == 2:
            c = self.conj_radical()
            den = self * c
            if not den.is_rational():
                raise ArithmeticError("rationalization left a radical denominator")
            return c * SqrtLinear.rational(1 / den.terms[1])
        raise ArithmeticError(
            f"division by a value with {n} radical terms is not supported"
        )

    def __truediv__(self, other):
        other = _coerce_real(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce_real(other) * self.inverse()

    def __float__(self):
        return math.fsum(float(q) * math.sqrt(d) for d, q in self._terms)

    def sign(self) -> int:
        """Exact sign; decided by float evaluation with an exact fallback."""
        if not self._terms:
            return 0
        if len(self._terms) == 1:
            return 1 if self._terms[0][1] > 0 else -1
        v = float(self)
        if abs(v) > 1e-9 * sum(abs(float(q)) * math.sqrt(d) for d, q in self._terms):
            return 1 if v > 0 else -1
        if len(self._terms) == 2:
            # a sqrt(d1) + b sqrt(d2) with opposite signs: compare squares
            (d1, q1), (d2, q2) = self._terms
            lhs, rhs = q1 * q1 * d1, q2 * q2 * d2
            if lhs == rhs:
                return 0
            return (1 if q1 > 0 else -1) if lhs > rhs else (1 if q2 > 0 else -1)
        raise ArithmeticError("cannot decide sign of a near-zero multi-radical value")

    def format(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, q in self._terms:
            c = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
            parts.append(f"({c})" if d == 1 else f"({c})*sqrt({d})")
        return " + ".join(parts)

    def pretty(self) -> str:
        """Human form: each term written as a signed square root."""
        if not self._terms:
            return "0"
        out = []
        for i, (d, q) in enumerate(self._terms):
            neg = q < 0
            sq = q * q * d
            if d == 1:
                body = str(abs(q))
            elif sq.numerator == 1:
                body = f"1/√{sq.denominator}"
            elif sq.denominator == 1:
                body = f"√{sq.numerator}"
            else:
                body = f"√({sq.numerator}/{sq.denominator})"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"SqrtLinear({self.format()})"


def _coerce_real(x):
    if isinstance(x, SqrtLinear):
        return x
    if isinstance(x, (int, Fraction)):
        return SqrtLinear.rational(x)
    return None


class ExactComplex:
    """Complex element ``re + i*im`` with :class:`SqrtLinear` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=None, im=None):
        self.re = _coerce_real(re if re is not None else 0)
        self.im = _coerce_real(im if im is not None else 0)
        if self.re is None or self.im is None:
            raise TypeError("ExactComplex parts must be rational or SqrtLinear")

    def __setattr__(self, name, value):
        if hasattr(self, "im"):
            raise AttributeError("ExactComplex is immutable")
        object.__setattr__(self, name, value)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im.is_zero():
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return ExactComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return ExactComplex(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> SqrtLinear:
        """``|z|^2`` as a real radical value."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "ExactComplex":
        inv = self.abs2().inverse()
        c = self.conjugate()
        return ExactComplex(c.re * inv, c.im * inv)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.im.is_zero():
            inv = other.re.inverse()
            return ExactComplex(self.re * inv, self.im * inv)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(e)):
            out = out * base
        return out

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if not self.im.is_zero():
            raise TypeError("value has an imaginary part")
        return float(self.re)

    def to_float(self) -> complex:
        return complex(self)

    def format(self) -> str:
        """Canonical lossless string."""
        if self.im.is_zero():
            return self.re.format()
        im = f"i*({self.im.format()})"
        if self.re.is_zero():
            return im
        return f"{self.re.format()} + {im}"

    def pretty(self) -> str:
        if self.im.is_zero():
            return self.re.pretty()
        ims = self.im.pretty()
        if len(self.im) == 1:
            neg = ims.startswith("-")
            body = ims.lstrip("-")
            if body == "1":
                body = ""
            elif body.startswith("1/"):
                body = body[1:]
            imtxt = ("-" if neg else "") + f"i{body}"
        else:
            imtxt = f"i({ims})"
        if self.re.is_zero():
            return imtxt
        if imtxt.startswith("-"):
            return f"{self.re.pretty()} - {imtxt[1:]}"
        return f"{self.re.pretty()} + {imtxt}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"ExactComplex({self.format()})"


def _coerce(x):
    if isinstance(x, ExactComplex):
        return x
    r = _coerce_real(x)
    if r is not None:
        return ExactComplex(r, 0)
    return None


ZERO = ExactComplex(0, 0)
ONE = ExactComplex(1, 0)
I = ExactComplex(0, 1)


def exact(x) -> ExactComplex:
    """Coerce an int, Fraction, SqrtLinear or ExactComplex."""
    v = _coerce(x)
    if v is None:
        raise TypeError(f"cannot convert {type(x).__name__} to an exact value")
    return v


def sqrt(q) -> ExactComplex:
    """Exact square root of a rational; negative input gives ``i*sqrt(|q|)``."""
    q = _as_fraction(q)
    if q == 0:
        return ZERO
    neg = q < 0
    q = abs(q)
    # sqrt(a/b) = sqrt(a*b)/b
    k, d = square_free_split(q.numerator * q.denominator)
    val = SqrtLinear({d: Fraction(k, q.denominator)})
    return ExactComplex(0, val) if neg else ExactComplex(val, 0)


_TERM = re.compile(r"\(\s*(-?\d+)(?:\s*/\s*(\d+))?\s*\)(?:\s*\*\s*sqrt\(\s*(\d+)\s*\))?")


def _parse_real(text: str) -> SqrtLinear:
    text = text.strip()
    if text == "0":
        return SqrtLinear()
    terms = []
    pos = 0
    while True:
        m = _TERM.match(text, pos)
        if not m:
            raise ValueError(f"malformed exact value near {text[pos:]!r}")
        num, den, d = m.groups()
        terms.append((int(d) if d else 1, Fraction(int(num), int(den) if den else 1)))
        pos = m.end()
        rest = text[pos:].lstrip()
        if not rest:
            break
        if not rest.startswith("+"):
            raise ValueError(f"malformed exact value near {rest!r}")
        pos = len(text) - len(rest) + 1
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return SqrtLinear(terms)


def parse(text: str) -> ExactComplex:
    """Inverse of :meth:`ExactComplex.format`."""
    text = text.strip()
    idx = text.find("i*(")
    if idx < 0:
        return ExactComplex(_parse_real(text), 0)
    if not text.endswith(")"):
        raise ValueError(f"malformed exact value {text!r}")
    im = _parse_real(text[idx + 3 : -1])
    head = text[:idx].rstrip()
    if not head:
        return ExactComplex(0, im)
    if not head.endswith("+"):
        raise ValueError(f"malformed exact value {text!r}")
    return ExactComplex(_parse_real(head[:-1]), im)
