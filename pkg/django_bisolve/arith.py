"""
Exact scalars and dyadic interval arithmetic.

Integers are Python ints, rationals are `fractions.Fraction` (always reduced,
positive denominator). Interval endpoints are dyadic rationals m*2^e; sums,
differences and products of dyadics are dyadic, so add/sub/mul hulls are
exact. Only division rounds, outward, at a caller-chosen precision.
"""
import enum
import functools
import re
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text):
    """Parses "P/Q" or "P" into a reduced Fraction. Raises ValueError."""
    match = _RATIONAL_RE.match(str(text))
    if not match:
        raise ValueError(f"not a rational number: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def _trailing_zeros(m):
    return (m & -m).bit_length() - 1


@functools.total_ordering
@dataclass(frozen=True)
class Dyadic:
    """
    The dyadic rational m * 2**e, stored normalized: m is odd, or m == 0 and
    e == 0. Normalization makes equality and hashing structural.
    """

    m: int
    e: int = 0

    def __post_init__(self):
        m, e = int(self.m), int(self.e)
        if m == 0:
            e = 0
        else:
            tz = _trailing_zeros(m)
            if tz:
                m >>= tz
                e += tz
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "e", e)

    @classmethod
    def from_rational(cls, value):
        """Exact conversion; raises ValueError if the denominator is not a power of two."""
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls(value.numerator, -(den.bit_length() - 1))

    @classmethod
    def floor(cls, value, prec):
        """Largest dyadic with `prec` fractional bits that is <= value."""
        value = Fraction(value)
        return cls((value.numerator << prec) // value.denominator, -prec)

    @classmethod
    def ceil(cls, value, prec):
        """Smallest dyadic with `prec` fractional bits that is >= value."""
        value = Fraction(value)
        return cls(-((-value.numerator << prec) // value.denominator), -prec)

    def to_fraction(self):
        if self.e >= 0:
            return Fraction(self.m << self.e)
        return Fraction(self.m, 1 << -self.e)

    def as_ratio(self):
        """(numerator, denominator) with denominator a positive power of two."""
        if self.e >= 0:
            return self.m << self.e, 1
        return self.m, 1 << -self.e

    def sign(self):
        return (self.m > 0) - (self.m < 0)

    def half(self):
        return Dyadic(self.m, self.e - 1)

    def _align(self, other):
        e = min(self.e, other.e)
        return self.m << (self.e - e), other.m << (other.e - e), e

    def __add__(self, other):
        other = _as_dyadic(other)
        a, b, e = self._align(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_dyadic(other)
        a, b, e = self._align(other)
        return Dyadic(a - b, e)

    def __rsub__(self, other):
        return _as_dyadic(other) - self

    def __mul__(self, other):
        other = _as_dyadic(other)
        return Dyadic(self.m * other.m, self.e + other.e)

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic(-self.m, self.e)

    def __abs__(self):
        return Dyadic(abs(self.m), self.e)

    def __lt__(self, other):
        other = _as_dyadic(other)
        a, b, _ = self._align(other)
        return a < b

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.m == other.m and self.e == other.e
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.m, self.e))

    def __repr__(self):
        return f"Dyadic({self.m}, {self.e})"

    def __str__(self):
        return str(self.to_fraction())


def _as_dyadic(value):
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int):
        return Dyadic(value, 0)
    if isinstance(value, Fraction):
        return Dyadic.from_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as a dyadic")


def midpoint(a, b):
    return (_as_dyadic(a) + _as_dyadic(b)).half()


@dataclass(frozen=True)
class DyadicInterval:
    """Closed interval [lo, hi] with dyadic endpoints; point intervals are legal."""

    lo: Dyadic
    hi: Dyadic

    def __post_init__(self):
        lo, hi = _as_dyadic(self.lo), _as_dyadic(self.hi)
        if hi < lo:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value):
        value = _as_dyadic(value)
        return cls(value, value)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return midpoint(self.lo, self.hi)

    def is_point(self):
        return self.lo == self.hi

    def contains(self, value):
        value = Fraction(value.to_fraction() if isinstance(value, Dyadic) else value)
        return self.lo.to_fraction() <= value <= self.hi.to_fraction()

    def issubset(self, other):
        return other.lo <= self.lo and self.hi <= other.hi

    def __add__(self, other):
        return iv_arith(IntervalOp.ADD, self, _as_interval(other))

    def __sub__(self, other):
        return iv_arith(IntervalOp.SUB, self, _as_interval(other))

    def __mul__(self, other):
        return iv_arith(IntervalOp.MUL, self, _as_interval(other))

    def __neg__(self):
        return DyadicInterval(-self.hi, -self.lo)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def _as_interval(value):
    if isinstance(value, DyadicInterval):
        return value
    return DyadicInterval.point(value)


class IntervalOp(enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"


class Sign(enum.Enum):
    POSITIVE = "POSITIVE"
    NEGATIVE = "NEGATIVE"
    CONTAINS_ZERO = "CONTAINS_ZERO"


def iv_arith(op, a, b):
    """Exact hull of {x op y : x in a, y in b}."""
    op = IntervalOp(op)
    if op is IntervalOp.ADD:
        return DyadicInterval(a.lo + b.lo, a.hi + b.hi)
    if op is IntervalOp.SUB:
        return DyadicInterval(a.lo - b.hi, a.hi - b.lo)
    if a.is_point() and b.is_point():
        return DyadicInterval.point(a.lo * b.lo)
    products = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return DyadicInterval(min(products), max(products))


def iv_sign(a):
    if a.lo.m > 0:
        return Sign.POSITIVE
    if a.hi.m < 0:
        return Sign.NEGATIVE
    return Sign.CONTAINS_ZERO


def _precision_for(value, prec):
    # fractional bits so that `prec` significant bits survive rounding
    value = abs(Fraction(value))
    if value == 0:
        return prec
    return max(0, prec - (value.numerator.bit_length() - value.denominator.bit_length()))


def iv_div(a, b, prec=64):
    """
    Outward-rounded enclosure of {x / y : x in a, y in b}. `b` must not
    contain zero. Each endpoint is rounded to a dyadic keeping about `prec`
    significant bits, downward for lo and upward for hi.
    """
    if iv_sign(b) is Sign.CONTAINS_ZERO:
        raise ZeroDivisionError(f"interval {b} contains zero")
    quotients = []
    for x in (a.lo, a.hi):
        for y in (b.lo, b.hi):
            quotients.append(x.to_fraction() / y.to_fraction())
    lo, hi = min(quotients), max(quotients)
    return DyadicInterval(
        Dyadic.floor(lo, _precision_for(lo, prec)),
        Dyadic.ceil(hi, _precision_for(hi, prec)),
    )
