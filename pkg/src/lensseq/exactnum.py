"""Exact scalars: rationals and elements of a real quadratic field Q(sqrt(D)).

Rationals are plain :class:`fractions.Fraction` values.  :class:`QuadExt`
holds ``a + b*sqrt(D)`` with rational ``a, b`` and a square-free ``D``.  Values
with a perfect-square discriminant or a zero radical part collapse to
``b = 0, D = 1`` so that structural equality is value equality.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

import mpmath

from .errors import MixedDiscriminant, NegativeRadicand, ParseError

Rational = Fraction
Scalar = Union[int, Fraction, "QuadExt"]

_TRIAL_BOUND = 1 << 16


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions, rational strings and rational QuadExt values."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, QuadExt):
        if not x.is_rational:
            raise TypeError(f"{x} is irrational")
        return x.rational_part
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot treat {x!r} as an exact rational")


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(m, s)`` with ``n == m*m*s`` and ``s`` square-free."""
    if n < 0:
        raise NegativeRadicand(f"negative discriminant {n}")
    if n == 0:
        return 0, 1
    m, s, rest = 1, 1, n
    p = 2
    while p <= _TRIAL_BOUND and p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            m *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    if rest == 1:
        return m, s
    if p * p > rest:
        # rest has no factor <= sqrt(rest), so it is prime
        return m, s * rest
    r = math.isqrt(rest)
    if r * r == rest:
        return m * r, s
    # large cofactor with several big primes: hand over to sympy
    from sympy import factorint

    for prime, e in factorint(rest).items():
        m *= prime ** (e // 2)
        if e % 2:
            s *= prime
    return m, s


class QuadExt:
    """An element ``rational_part + radical_part*sqrt(discriminant)``.

    Instances are immutable and always canonical; build them through the
    constructor or :func:`quad_normalize`.
    """

    __slots__ = ("rational_part", "radical_part", "discriminant")

    def __init__(self, rational_part=0, radical_part=0, discriminant: int = 1):
        a = as_rational(rational_part)
        b = as_rational(radical_part)
        d = int(discriminant)
        if d < 0:
            raise NegativeRadicand(f"negative discriminant {d}")
        if b == 0 or d == 0:
            b, d = Fraction(0), 1
        else:
            m, d = squarefree_decompose(d)
            b *= m
            if d == 1:
                a, b = a + b, Fraction(0)
        object.__setattr__(self, "rational_part", a)
        object.__setattr__(self, "radical_part", b)
        object.__setattr__(self, "discriminant", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @property
    def is_rational(self) -> bool:
        return self.radical_part == 0

    def to_rational(self) -> Fraction:
        return as_rational(self)

    def conj(self) -> "QuadExt":
        return QuadExt(self.rational_part, -self.radical_part, self.discriminant)

    def norm(self) -> Fraction:
        return self.rational_part ** 2 - self.radical_part ** 2 * self.discriminant

    def trace(self) -> Fraction:
        return 2 * self.rational_part

    def sign(self) -> int:
        a, b = self.rational_part, self.radical_part
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: whichever square dominates wins (D is not a square)
        return sa if a * a > b * b * self.discriminant else sb

    def __neg__(self):
        return QuadExt(-self.rational_part, -self.radical_part, self.discriminant)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        return quad_arith(self, other, "add")

    def __radd__(self, other):
        return quad_arith(other, self, "add")

    def __sub__(self, other):
        return quad_arith(self, other, "sub")

    def __rsub__(self, other):
        return quad_arith(other, self, "sub")

    def __mul__(self, other):
        return quad_arith(self, other, "mul")

    def __rmul__(self, other):
        return quad_arith(other, self, "mul")

    def __truediv__(self, other):
        return quad_arith(self, other, "div")

    def __rtruediv__(self, other):
        return quad_arith(other, self, "div")

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else quad_arith(1, self, "div")
        n = abs(n)
        result = QuadExt(1)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _cmp(self, other) -> int:
        try:
            return (self - other).sign()
        except TypeError:
            return NotImplemented

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.rational_part, self.radical_part, self.discriminant) == (
                other.rational_part,
                other.radical_part,
                other.discriminant,
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational and self.rational_part == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.rational_part)
        return hash((self.rational_part, self.radical_part, self.discriminant))

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __bool__(self):
        return self.rational_part != 0 or self.radical_part != 0

    def __float__(self):
        return float(quad_to_float(self))

    def __repr__(self):
        return f"QuadExt({format_quad(self)!r})"

    def __str__(self):
        return format_quad(self)


def as_quad(x) -> QuadExt:
    if isinstance(x, QuadExt):
        return x
    return QuadExt(as_rational(x))


def quad_normalize(raw_rational_part, raw_radical_part, raw_D: int) -> QuadExt:
    """Canonical form of ``a + b*sqrt(D)``; square factors of ``D`` move into ``b``."""
    return QuadExt(raw_rational_part, raw_radical_part, raw_D)


def _common_discriminant(x: QuadExt, y: QuadExt) -> int:
    if x.is_rational:
        return y.discriminant
    if y.is_rational or x.discriminant == y.discriminant:
        return x.discriminant
    raise MixedDiscriminant(
        f"cannot combine sqrt({x.discriminant}) with sqrt({y.discriminant})"
    )


def quad_arith(x, y, op: str) -> QuadExt:
    """Field operation ``op`` in {add, sub, mul, div} on two compatible values."""
    x, y = as_quad(x), as_quad(y)
    d = _common_discriminant(x, y)
    a1, b1 = x.rational_part, x.radical_part
    a2, b2 = y.rational_part, y.radical_part
    if op == "add":
        return QuadExt(a1 + a2, b1 + b2, d)
    if op == "sub":
        return QuadExt(a1 - a2, b1 - b2, d)
    if op == "mul":
        return QuadExt(a1 * a2 + b1 * b2 * d, a1 * b2 + a2 * b1, d)
    if op == "div":
        n = y.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(D))")
        # multiply through by the conjugate of y
        return QuadExt((a1 * a2 - b1 * b2 * d) / n, (b1 * a2 - a1 * b2) / n, d)
    raise ValueError(f"unknown operation {op!r}")


def quad_conj(x) -> QuadExt:
    return as_quad(x).conj()


def quad_sqrt(q) -> QuadExt:
    """Exact square root of a non-negative rational as a QuadExt."""
    q = as_rational(q)
    if q < 0:
        raise NegativeRadicand(f"sqrt of negative rational {q}")
    # sqrt(n/d) = sqrt(n*d)/d
    return QuadExt(0, Fraction(1, q.denominator), q.numerator * q.denominator)


def quad_to_float(x, precision_bits: int = 53):
    """Evaluate ``x`` to ``precision_bits`` of binary precision.

    Returns a Python float for 53 bits and an ``mpmath.mpf`` otherwise.
    Opposite-signed parts are evaluated through the conjugate so no
    cancellation occurs.
    """
    if precision_bits < 53:
        raise ValueError("precision_bits must be at least 53")
    x = as_quad(x)
    a, b, d = x.rational_part, x.radical_part, x.discriminant
    work = precision_bits + 64
    with mpmath.workprec(work):
        if b == 0:
            val = mpmath.mpf(a.numerator) / a.denominator
        else:
            root = mpmath.sqrt(d)
            bb = mpmath.mpf(b.numerator) / b.denominator
            aa = mpmath.mpf(a.numerator) / a.denominator
            if a != 0 and (a > 0) != (b > 0):
                nrm = x.norm()
                val = (mpmath.mpf(nrm.numerator) / nrm.denominator) / (aa - bb * root)
            else:
                val = aa + bb * root
    with mpmath.workprec(precision_bits):
        rounded = +val
    if precision_bits == 53:
        return float(rounded)
    return rounded


_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^\s*(?P<a>{_RAT})\s*(?:(?P<op>[+-])\s*(?P<b>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\))?\s*$"
)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def format_rational(q) -> str:
    return str(as_rational(q))


def format_quad(x) -> str:
    """Canonical text: ``"p/q"`` or ``"p/q + r/s*sqrt(D)"``."""
    x = as_quad(x)
    if x.is_rational:
        return str(x.rational_part)
    b = x.radical_part
    op = "+" if b > 0 else "-"
    return f"{x.rational_part} {op} {abs(b)}*sqrt({x.discriminant})"


def parse_quad(text: str) -> QuadExt:
    m = _QUAD_RE.match(text)
    if not m:
        raise ParseError(f"not a quadratic number: {text!r}")
    a = Fraction(m.group("a"))
    if m.group("b") is None:
        return QuadExt(a)
    b = Fraction(m.group("b"))
    if m.group("op") == "-":
        b = -b
    return QuadExt(a, b, int(m.group("d")))
