"""Candidate functions for the growth harness.

A candidate bundles a name, a prefix of exact Taylor coefficients, an
optional exact rational evaluator (present when the function maps Q to Q on
its domain), and a certified evaluator returning rational-endpoint
enclosures of requested width.  For the transcendental built-ins the
enclosures come from Taylor partial sums with exact remainder majorants, so
they are certificates, not estimates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .exact import DomainError, InputError, Interval, Poly
from .ratfunc import RatFunc, parse_ratfunc

ExactEval = Callable[[Fraction], Fraction]
CertifiedEval = Callable[[Fraction, Fraction], Interval]


@dataclass(frozen=True)
class Candidate:
    """A function under test, presented through its series prefix and
    evaluators.

    When exact_eval is present, certified_eval must bracket it; the built-in
    constructors guarantee this by wrapping exact values as point intervals.
    radius bounds |x| for certified evaluation (None = no restriction).
    """

    name: str
    coeffs: tuple[Fraction, ...]
    certified_eval: CertifiedEval
    exact_eval: Optional[ExactEval] = None
    radius: Optional[Fraction] = None
    note: str = ""

    def coeff_prefix(self, t: int) -> tuple[Fraction, ...]:
        """a_1..a_2t, checking the prefix is long enough."""
        if len(self.coeffs) < 2 * t + 1:
            raise InputError(
                f"candidate {self.name!r} provides {len(self.coeffs)} coefficients; "
                f"need a_0..a_{2 * t}"
            )
        return self.coeffs[1 : 2 * t + 1]


def _exp_m1_enclosure(x: Fraction, eps: Fraction) -> Interval:
    """Enclosure of e^x - 1 of width <= eps via partial sums; the tail is
    majorized by a geometric series, valid for |x| <= 1."""
    ax = abs(x)
    if ax > 1:
        raise DomainError("exp_m1 certified evaluation supports |x| <= 1")
    if eps <= 0:
        raise InputError("error budget must be positive")
    s = Fraction(0)
    term = Fraction(1)
    k = 0
    while True:
        k += 1
        term = term * x / k
        s += term
        head = abs(term) * ax / (k + 1)
        bound = head / (1 - ax / (k + 2))
        # the enclosure is one-sided for x >= 0, symmetric otherwise
        if k >= 2 and (bound if x >= 0 else 2 * bound) <= eps:
            break
    if x >= 0:
        return Interval(s, s + bound)
    return Interval(s - bound, s + bound)


def _log1p_enclosure(x: Fraction, eps: Fraction) -> Interval:
    """Enclosure of log(1+x) of width <= eps for |x| <= 1/2."""
    if abs(x) > Fraction(1, 2):
        raise DomainError("log1p certified evaluation supports |x| <= 1/2")
    if eps <= 0:
        raise InputError("error budget must be positive")
    if x == 0:
        return Interval.point(0)
    s = Fraction(0)
    k = 0
    power = Fraction(1)
    while True:
        k += 1
        power *= x
        term = power / k if k % 2 else -power / k
        s += term
        if x > 0:
            # alternating with strictly decreasing magnitudes: the next term
            # brackets the remainder
            step = power * x / (k + 1)
            if step <= eps:
                return Interval(s - step, s) if term > 0 else Interval(s, s + step)
        else:
            # all terms negative; geometric majorant on the tail
            tail = abs(power * x) / ((k + 1) * (1 - abs(x)))
            if tail <= eps:
                return Interval(s - tail, s)


def _factorial_coeffs(n: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)]
    f = 1
    for k in range(1, n + 1):
        f *= k
        out.append(Fraction(1, f))
    return tuple(out)


def _log1p_coeffs(n: int) -> tuple[Fraction, ...]:
    return (Fraction(0),) + tuple(
        Fraction((-1) ** (k + 1), k) for k in range(1, n + 1)
    )


def exp_m1_candidate(n_coeffs: int) -> Candidate:
    """f = e^z - 1 with coefficients through degree n_coeffs."""
    return Candidate(
        name="exp_m1",
        coeffs=_factorial_coeffs(n_coeffs),
        certified_eval=_exp_m1_enclosure,
        radius=Fraction(1),
    )


def log1p_candidate(n_coeffs: int) -> Candidate:
    """f = log(1+z) with coefficients through degree n_coeffs."""
    return Candidate(
        name="log1p",
        coeffs=_log1p_coeffs(n_coeffs),
        certified_eval=_log1p_enclosure,
        radius=Fraction(1, 2),
    )


def ratfunc_candidate(rf: RatFunc, n_coeffs: int, name: str | None = None) -> Candidate:
    """Candidate backed by an exact rational function (poles excluded row by
    row during scans)."""
    coeffs = rf.series_coeffs(n_coeffs)

    def exact(x: Fraction) -> Fraction:
        return rf.eval(x)

    def certified(x: Fraction, eps: Fraction) -> Interval:
        return Interval.point(rf.eval(x))

    return Candidate(
        name=name if name is not None else str(rf),
        coeffs=coeffs,
        certified_eval=certified,
        exact_eval=exact,
    )


def geom2z_candidate(n_coeffs: int) -> Candidate:
    """f = 2z/(1-z), the stock rational-function candidate."""
    return ratfunc_candidate(parse_ratfunc("2z/(1-z)"), n_coeffs, name="geom2z")


def truncation_candidate(
    coeffs: tuple[Fraction, ...], name: str = "truncation"
) -> Candidate:
    """Treat a finite coefficient list itself as f (documented in the report
    header: the measured function is the truncation, nothing more)."""
    p = Poly(coeffs)

    def exact(x: Fraction) -> Fraction:
        return p.eval(x)

    def certified(x: Fraction, eps: Fraction) -> Interval:
        return Interval.point(p.eval(x))

    return Candidate(
        name=name,
        coeffs=tuple(Fraction(c) for c in coeffs),
        certified_eval=certified,
        exact_eval=exact,
        note="no evaluator supplied; the coefficient truncation itself is treated as f",
    )


BUILTIN_NAMES = ("exp_m1", "log1p", "geom2z", "poly:<expr>")


def builtin_candidate(name: str, n_coeffs: int) -> Candidate:
    """Resolve a harness builtin: exp_m1, log1p, geom2z, or poly:<expr>."""
    if name == "exp_m1":
        return exp_m1_candidate(n_coeffs)
    if name == "log1p":
        return log1p_candidate(n_coeffs)
    if name == "geom2z":
        return geom2z_candidate(n_coeffs)
    if name.startswith("poly:"):
        expr = name[len("poly:") :]
        rf = parse_ratfunc(expr)
        if not rf.is_polynomial():
            raise InputError(f"poly: builtin requires a polynomial, got {expr!r}")
        return ratfunc_candidate(rf, n_coeffs, name=f"poly:{expr}")
    raise InputError(
        f"unknown builtin {name!r}; expected one of {', '.join(BUILTIN_NAMES)}"
    )
