"""Approximant sequences with certified gap enclosures and their exponents.

The classical constant xi = sum 10^(-i!) ships as the built-in: its k-th
approximant is the partial sum p_k/q_k with q_k = 10^(k!), and the omitted
tail lies in (10^(-(k+1)!), 2*10^(-(k+1)!)) exactly (first omitted term
below, geometric majorant above).  xi itself is never stored as a real
number; only partial sums and exact tail enclosures.

The exponent of row k is omega_k = -log(gap)/log(q_k); the sequence is
unbounded exactly when the approximants witness a Liouville number.  The
transport of a sequence through a non-constant rational function f uses the
mean-value estimate |f(xi) - f(x)| in [inf|f'|, sup|f'|] * |xi - x| over the
hull of the data, with both derivative bounds certified by naive interval
evaluation -- crude, but the hulls here are tiny.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exact import DomainError, InputError, Interval, PoleError, log_interval
from .ratfunc import RatFunc

K_MAX = 7  # 10^(8!) is past desk scale


@dataclass(frozen=True)
class ApproximantRow:
    k: int
    p: int
    q: int
    gap: Interval  # encloses |xi - p/q|, strictly positive


@dataclass(frozen=True)
class ApproximantSeq:
    """Rows strictly increasing in k and q, with q > 1 and positive gaps."""

    rows: tuple[ApproximantRow, ...]

    def __post_init__(self):
        for row in self.rows:
            if row.q <= 1:
                raise InputError(f"row k={row.k}: q must exceed 1")
            if row.gap.lo <= 0:
                raise InputError(f"row k={row.k}: gap lower bound must be positive")
        for a, b in zip(self.rows, self.rows[1:]):
            if b.k <= a.k:
                raise InputError("rows must be strictly increasing in k")
            if b.q <= a.q:
                raise InputError("q must be strictly increasing")


def approximant_seq(rows: Iterable[tuple[int, int, int, Interval]]) -> ApproximantSeq:
    """Build a sequence from user (k, p, q, gap) tuples, reducing p/q."""
    out = []
    for k, p, q, gap in rows:
        f = Fraction(p, q)
        out.append(ApproximantRow(k=k, p=f.numerator, q=f.denominator, gap=gap))
    return ApproximantSeq(rows=tuple(out))


# ---------------------------------------------------------------------------
# The classical factorial-exponent constant
# ---------------------------------------------------------------------------

def liouville_constant_approximant(k: int) -> tuple[int, int]:
    """(p_k, q_k) with q_k = 10^(k!) and p_k/q_k the k-term partial sum,
    reduced (the trailing digit 1 keeps p_k coprime to 10)."""
    if not 1 <= k <= K_MAX:
        raise DomainError(f"k must be in 1..{K_MAX}")
    q = 10 ** math.factorial(k)
    p = sum(10 ** (math.factorial(k) - math.factorial(i)) for i in range(1, k + 1))
    f = Fraction(p, q)
    return f.numerator, f.denominator


def tail_bound(k: int) -> Interval:
    """Exact enclosure (10^-(k+1)!, 2*10^-(k+1)!) of xi - p_k/q_k."""
    if not 1 <= k <= K_MAX:
        raise DomainError(f"k must be in 1..{K_MAX}")
    unit = Fraction(1, 10 ** math.factorial(k + 1))
    return Interval(unit, 2 * unit)


def liouville_constant_partial_sum(m: int) -> Fraction:
    """Partial sum of xi with m terms (for refinement cross-checks)."""
    p, q = liouville_constant_approximant(m)
    return Fraction(p, q)


def liouville_constant_enclosure(m: int) -> Interval:
    """Certified enclosure of xi itself from the m-term partial sum."""
    s = liouville_constant_partial_sum(m)
    tail = tail_bound(m)
    return Interval(s + tail.lo, s + tail.hi)


def liouville_constant_seq(k_max: int) -> ApproximantSeq:
    """Rows 1..k_max for the built-in constant."""
    rows = []
    for k in range(1, k_max + 1):
        p, q = liouville_constant_approximant(k)
        rows.append(ApproximantRow(k=k, p=p, q=q, gap=tail_bound(k)))
    return ApproximantSeq(rows=tuple(rows))


# ---------------------------------------------------------------------------
# Exponent estimates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OmegaRow:
    """Certified bounds on the approximation exponent of one row."""

    k: int
    omega_lo: Fraction
    omega_hi: Fraction


def _pow10_exponent(x: Fraction) -> int | None:
    """e when x = 10^e exactly, else None."""
    if x.numerator == 1:
        n, e = x.denominator, 0
        while n % 10 == 0:
            n //= 10
            e += 1
        return -e if n == 1 else None
    if x.denominator == 1:
        n, e = x.numerator, 0
        while n % 10 == 0:
            n //= 10
            e += 1
        return e if n == 1 else None
    return None


def _log_ratio_bounds(g: Fraction, q: int, dps: int) -> tuple[Fraction, Fraction]:
    """Valid enclosure of -log(g)/log(q) for 0 < g, q > 1.

    Exact when both g and q are integer powers of ten; otherwise built from
    outward-rounded log enclosures.
    """
    eg, eq = _pow10_exponent(g), _pow10_exponent(Fraction(q))
    if eg is not None and eq is not None and eq != 0:
        exact = Fraction(-eg, eq)
        return exact, exact
    num = -log_interval(g, dps)  # enclosure of -log g
    den = log_interval(Fraction(q), dps)  # q > 1 so positive
    ratio = num.divide(den)
    return ratio.lo, ratio.hi


def omega_sequence(seq: ApproximantSeq, dps: int = 64) -> list[OmegaRow]:
    """Certified omega bounds per row: -log(gap.hi)/log(q) below,
    -log(gap.lo)/log(q) above."""
    out = []
    for row in seq.rows:
        lo, _ = _log_ratio_bounds(row.gap.hi, row.q, dps)
        _, hi = _log_ratio_bounds(row.gap.lo, row.q, dps)
        out.append(OmegaRow(k=row.k, omega_lo=lo, omega_hi=hi))
    return out


# ---------------------------------------------------------------------------
# Transport through a rational function
# ---------------------------------------------------------------------------

def _abs_bounds(iv: Interval) -> tuple[Fraction, Fraction]:
    a = iv.abs()
    return a.lo, a.hi


def maillet_transform(
    f: RatFunc, seq: ApproximantSeq, value_interval: Interval
) -> ApproximantSeq:
    """Push a sequence for xi forward to one for f(xi).

    value_interval must enclose xi.  The hull of the enclosure and all
    approximants must avoid the poles of f, and |f'| must admit a positive
    certified lower bound there (otherwise the transported gaps could not be
    bounded away from zero).  Rows whose transported denominator fails the
    sequence invariants (q <= 1 or not increasing) are dropped.
    """
    if f.is_constant():
        raise InputError("non-constant rational function required")
    hull = value_interval
    for row in seq.rows:
        hull = hull.hull(Interval.point(Fraction(row.p, row.q)))

    den_iv = f.den.eval_interval(hull)
    if den_iv.contains(0):
        raise PoleError(
            den_iv.mid,
            f"cannot certify {f} pole-free on hull "
            f"[{hull.lo}, {hull.hi}]: denominator range contains 0",
        )
    # f' = (N'D - ND')/D^2 with D^2 bounded through the certified D range
    # (evaluating the expanded square naively would reintroduce 0)
    g = f.num.derivative() * f.den - f.num * f.den.derivative()
    num_lo, num_hi = _abs_bounds(g.eval_interval(hull))
    if num_lo <= 0:
        raise DomainError(
            f"cannot certify a positive lower bound for |f'| of {f} on the hull"
        )
    d_lo, d_hi = _abs_bounds(den_iv)
    deriv_bounds = Interval(num_lo / d_hi**2, num_hi / d_lo**2).outward(12)
    inf_deriv, sup_deriv = deriv_bounds.lo, deriv_bounds.hi

    rows: list[ApproximantRow] = []
    for row in seq.rows:
        y = f.eval(Fraction(row.p, row.q))
        gap = Interval(inf_deriv * row.gap.lo, sup_deriv * row.gap.hi)
        q_new = y.denominator
        if q_new <= 1:
            continue
        if rows and q_new <= rows[-1].q:
            continue
        rows.append(ApproximantRow(k=row.k, p=y.numerator, q=q_new, gap=gap))
    return ApproximantSeq(rows=tuple(rows))
