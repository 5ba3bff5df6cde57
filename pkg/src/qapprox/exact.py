"""Exact arithmetic substrate: reduced rationals, dense polynomials over Q,
truncated power series, and rational-endpoint intervals.

Scalars are `fractions.Fraction`, which already guarantees the reduced form
with positive denominator (gcd(|num|, den) = 1, den >= 1, sign on the
numerator).  Everything in this module is an immutable value and every
operation is pure, so objects can be shared freely between workers.

No floating point enters any arithmetic path.  The only place approximate
numbers appear is `log_interval`, which returns a *certified* enclosure of a
natural logarithm with exact rational endpoints (outward-rounded fixed
precision).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class InputError(ValueError):
    """Malformed user input: bad text, wrong arity, invalid configuration."""


class DomainError(ValueError):
    """Mathematically invalid request: zero denominator, out-of-range index,
    value outside a function's certified domain."""


class PoleError(DomainError):
    """Evaluation at a pole.  Carries the offending point."""

    def __init__(self, x: Fraction, message: str | None = None):
        self.x = Fraction(x)
        super().__init__(message or f"pole at {format_rational(self.x)}")


class ConstructionError(RuntimeError):
    """An internal invariant of a construction failed; carries a diagnostic
    dump.  Should be unreachable on valid inputs."""


# ---------------------------------------------------------------------------
# Rational scalars and their text form
# ---------------------------------------------------------------------------

_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def reduce_rational(num: int, den: int) -> Fraction:
    """Return num/den in reduced form with positive denominator.

    Raises DomainError on a zero denominator.
    """
    if den == 0:
        raise DomainError("zero denominator")
    return Fraction(num, den)


def den_of(r: Scalar) -> int:
    """Denominator of the reduced form of r (1 for integers)."""
    return Fraction(r).denominator


def parse_rational(text: str) -> Fraction:
    """Parse the "p/q" / "p" text form (base 10, optional leading minus,
    no decimals or exponents)."""
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise InputError(f"not a rational in p/q form: {text!r}")
    if "/" in s:
        num_s, den_s = s.split("/")
        if int(den_s) == 0:
            raise InputError(f"zero denominator in {text!r}")
        return Fraction(int(num_s), int(den_s))
    return Fraction(int(s))


def format_rational(r: Scalar) -> str:
    """Render a rational in the "p/q" / "p" text form."""
    f = Fraction(r)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# Dense polynomials over Q
# ---------------------------------------------------------------------------

class Poly:
    """Immutable dense polynomial with Fraction coefficients.

    coeffs[i] is the coefficient of z^i; trailing zeros are stripped, so the
    zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def valuation(self) -> int | None:
        """Smallest degree with a nonzero coefficient; None for the zero
        polynomial."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(out)
        return Poly(Fraction(other) * c for c in self.coeffs)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by z^k."""
        if self.is_zero():
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def divexact_zpow(self, k: int) -> "Poly":
        """Divide by z^k, requiring all coefficients below degree k to vanish."""
        if self.is_zero():
            return self
        if any(c != 0 for c in self.coeffs[:k]):
            raise ConstructionError(f"not divisible by z^{k}: {self!r}")
        return Poly(self.coeffs[k:])

    def trunc(self, n: int) -> "Poly":
        """Drop all terms of degree > n."""
        return Poly(self.coeffs[: n + 1])

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division: self = q*other + r with deg r < deg other."""
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        q = [Fraction(0)] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c / lead
            q[i - d] = f
            for j, oc in enumerate(other.coeffs):
                rem[i - d + j] -= f * oc
        return Poly(q), Poly(rem)

    # -- evaluation -----------------------------------------------------------

    def eval(self, x: Scalar) -> Fraction:
        """Exact Horner evaluation."""
        acc = Fraction(0)
        xf = Fraction(x)
        for c in reversed(self.coeffs):
            acc = acc * xf + c
        return acc

    def eval_interval(self, iv: "Interval") -> "Interval":
        """Naive interval extension via interval Horner."""
        acc = Interval.point(0)
        for c in reversed(self.coeffs):
            acc = acc * iv + Interval.point(c)
        return acc

    # -- dunder plumbing ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            elif mag == 1:
                body = "z" if i == 1 else f"z^{i}"
            else:
                body = f"{format_rational(mag)} z" if i == 1 else f"{format_rational(mag)} z^{i}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def eval_poly(p: Poly, x: Scalar) -> Fraction:
    """Exact polynomial evaluation (free-standing form of Poly.eval)."""
    return p.eval(x)


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------

class TruncSeries:
    """Power series known exactly through degree `order` (inclusive).

    Coefficients beyond the order are unknown, not zero; arithmetic on two
    series therefore only carries the minimum of the operand orders.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise InputError("series order must be >= 0")
        if len(cs) > order + 1:
            raise InputError(
                f"{len(cs)} coefficients exceed order {order}; truncate explicitly"
            )
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "TruncSeries":
        """A polynomial is exactly known to any order."""
        return cls(p.trunc(order).coeffs, order)

    def coeff(self, i: int) -> Fraction:
        if i > self.order:
            raise DomainError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coeffs[i]

    def valuation(self) -> int | None:
        """Smallest degree with nonzero coefficient, or None when the series
        is identically zero up to its order."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n
        )

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries(
            [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n
        )

    def mul(self, other: "TruncSeries", order: int | None = None) -> "TruncSeries":
        """Exact convolution truncated at `order` (default: the largest order
        determined by the operands)."""
        n = min(self.order, other.order)
        if order is None:
            order = n
        if order > n:
            raise InputError(
                f"product order {order} not determined by operands (max {n})"
            )
        out = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a == 0:
                continue
            for j in range(order + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncSeries(out, order)

    def to_poly(self) -> Poly:
        return Poly(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.coeffs, self.order))

    def __repr__(self) -> str:
        return f"TruncSeries({[str(c) for c in self.coeffs]}, order={self.order})"


def series_mul_trunc(a: TruncSeries, b: TruncSeries, order: int) -> TruncSeries:
    """Exact truncated product (free-standing form of TruncSeries.mul)."""
    return a.mul(b, order)


def series_order(s: TruncSeries) -> int | None:
    """Valuation of a truncated series; None means zero up to the order."""
    return s.valuation()


# ---------------------------------------------------------------------------
# Rational-endpoint intervals
# ---------------------------------------------------------------------------

class Interval:
    """Closed interval [lo, hi] with exact rational endpoints.

    Used as a certificate: a returned interval always contains the true real
    value it stands for.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Scalar, hi: Scalar):
        lo_f, hi_f = Fraction(lo), Fraction(hi)
        if lo_f > hi_f:
            raise InputError(f"interval endpoints out of order: [{lo_f}, {hi_f}]")
        object.__setattr__(self, "lo", lo_f)
        object.__setattr__(self, "hi", hi_f)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    @classmethod
    def point(cls, x: Scalar) -> "Interval":
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Scalar) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def __add__(self, other):
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        f = Fraction(other)
        return Interval(self.lo + f, self.hi + f)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        if isinstance(other, Interval):
            return self + (-other)
        return self + (-Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Interval):
            prods = (
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            )
            return Interval(min(prods), max(prods))
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Interval":
        f = Fraction(c)
        if f >= 0:
            return Interval(self.lo * f, self.hi * f)
        return Interval(self.hi * f, self.lo * f)

    def divide(self, other: "Interval") -> "Interval":
        if other.lo <= 0 <= other.hi:
            raise DomainError("interval division by an interval containing 0")
        quots = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return Interval(min(quots), max(quots))

    def abs(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0, max(-self.lo, self.hi))

    def outward(self, digits: int = 12) -> "Interval":
        """Widen to `digits` decimal places (endpoints rounded away from the
        interior), keeping endpoints compact without losing validity."""
        scale = 10**digits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        # never round a positive lower endpoint down to 0
        if lo == 0 and self.lo > 0:
            lo = self.lo
        return Interval(lo, hi)

    def __eq__(self, other) -> bool:
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"Interval({self.lo}, {self.hi})"


# ---------------------------------------------------------------------------
# Certified logarithms
# ---------------------------------------------------------------------------

def _ln_int_interval(n: int, dps: int) -> Interval:
    """Certified enclosure of ln(n) for an integer n >= 1."""
    import mpmath
    from mpmath import libmp

    if n == 1:
        return Interval.point(0)
    with mpmath.mp.workdps(dps):
        v = mpmath.log(n)
        p, q = libmp.to_rational(v._mpf_)
    val = Fraction(int(p), int(q))
    # mpmath's log is correct to ~1 ulp at working precision; widen by a
    # generous relative margin so the enclosure stays valid.
    margin = abs(val) * Fraction(10) ** (6 - dps) + Fraction(10) ** (6 - dps)
    return Interval(val - margin, val + margin)


def log_interval(x: Scalar, dps: int = 64) -> Interval:
    """Certified enclosure of ln(x) for a positive rational x, computed at
    ~dps decimal digits with outward rounding."""
    f = Fraction(x)
    if f <= 0:
        raise DomainError("log of a non-positive value")
    return _ln_int_interval(f.numerator, dps) - _ln_int_interval(f.denominator, dps)


def log_float(x: Scalar) -> float:
    """Plain float ln(x) for positive rationals of any magnitude (report
    quantity, not a certificate)."""
    f = Fraction(x)
    if f <= 0:
        raise DomainError("log of a non-positive value")

    def _ln(n: int) -> float:
        shift = max(n.bit_length() - 53, 0)
        return math.log(n >> shift) + shift * math.log(2)

    return _ln(f.numerator) - _ln(f.denominator)
