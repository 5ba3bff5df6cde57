"""Measurement harness for the two colliding decay bounds.

For a candidate f and its approximant R built from a_1..a_2t, the gap
|f(1/M) - R(1/M)| is measured over a range of integers M as a certified
interval.  Scaling by M^(2t+1-j) gives the bounded factor theta_hat; if f
took rational values with denominators <= C1 * M^t, the gap would also obey
the lower bound 1/(C2 * M^(2t-j)) with C2 = 2*C1 wherever it is nonzero.
The report records both envelopes, fits log-log slopes, scans denominator
growth when an exact evaluator exists, and assigns one of three verdicts:

  EqualityBranch      every exact gap is zero on the sampled range;
  HypothesisViolated  the denominator exponent exceeds t;
  BoundCollision      otherwise: the smallest sampled M at which the upper
                      envelope falls strictly below the lower bound.

All verdict-relevant comparisons are exact rational arithmetic; floats only
appear in the fitted exponents, which are report quantities.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .candidates import Candidate
from .exact import InputError, Interval, PoleError, log_float
from .pade import PadeApproximant, build_pade, eval_R

VERDICT_EQUALITY = "EqualityBranch"
VERDICT_HYPOTHESIS_VIOLATED = "HypothesisViolated"
VERDICT_BOUND_COLLISION = "BoundCollision"


def log_spaced_ints(lo: int, hi: int, points: int) -> list[int]:
    """Distinct ascending integers, approximately log-spaced in [lo, hi]."""
    if lo < 2:
        raise InputError("M range must start at 2 or above")
    if hi < lo:
        raise InputError("M range must be ascending")
    if points < 1:
        raise InputError("need at least one sample point")
    if points == 1 or lo == hi:
        return [lo]
    out: set[int] = set()
    ratio = math.log(hi / lo)
    for i in range(points):
        out.add(round(lo * math.exp(ratio * i / (points - 1))))
    return sorted(m for m in out if lo <= m <= hi)


@dataclass(frozen=True)
class GapRow:
    """One sampled M.  A skipped row carries the reason and no measurements."""

    M: int
    f_bounds: Optional[Interval] = None
    r_value: Optional[Fraction] = None
    gap: Optional[Interval] = None
    den_f: Optional[int] = None
    theta: Optional[Interval] = None
    skipped: Optional[str] = None


def default_eps_rule(t: int) -> Callable[[int], Fraction]:
    """Budget 1/M^(4t+4): negligible against both measured envelopes."""

    def rule(m: int) -> Fraction:
        return Fraction(1, m ** (4 * t + 4))

    return rule


def gap_series(
    cand: Candidate,
    pade: PadeApproximant,
    ms: Sequence[int],
    eps_rule: Callable[[int], Fraction] | None = None,
) -> list[GapRow]:
    """Per-M gap measurements, ascending in M.

    R is evaluated exactly; f through the exact evaluator when present
    (point-interval gap) or the certified evaluator with budget eps_rule(M)
    otherwise.  Rows where Q or f has a pole at 1/M, or 1/M leaves the
    candidate's radius, are marked skipped with the reason.
    """
    if any(m < 2 for m in ms):
        raise InputError("all M must be >= 2")
    if list(ms) != sorted(set(ms)):
        raise InputError("M values must be strictly ascending")
    if eps_rule is None:
        eps_rule = default_eps_rule(pade.t)
    rows: list[GapRow] = []
    for m in ms:
        x = Fraction(1, m)
        if cand.radius is not None and x > cand.radius:
            rows.append(GapRow(M=m, skipped="outside evaluation radius"))
            continue
        try:
            r_val = eval_R(pade, x)
        except PoleError as exc:
            rows.append(GapRow(M=m, skipped=f"pole of Q: {exc}"))
            continue
        if cand.exact_eval is not None:
            try:
                f_val = cand.exact_eval(x)
            except PoleError as exc:
                rows.append(GapRow(M=m, skipped=f"pole of f: {exc}"))
                continue
            f_bounds = Interval.point(f_val)
            gap = Interval.point(abs(f_val - r_val))
            den_f = f_val.denominator
        else:
            f_bounds = cand.certified_eval(x, eps_rule(m))
            gap = (f_bounds - r_val).abs()
            den_f = None
        rows.append(
            GapRow(M=m, f_bounds=f_bounds, r_value=r_val, gap=gap, den_f=den_f)
        )
    return rows


def theta_hat(row: GapRow, t: int, j: int) -> Interval:
    """Exact interval scaling M^(2t+1-j) * gap."""
    if row.gap is None:
        raise InputError(f"row M={row.M} was skipped; no gap to scale")
    return row.gap.scale(Fraction(row.M) ** (2 * t + 1 - j))


@dataclass(frozen=True)
class FitResult:
    """Log-log least-squares slope with a conservative uncertainty."""

    slope: float
    uncertainty: float
    intercept: float
    n_points: int


def exponent_fit(points: Sequence[tuple[int, Interval]]) -> FitResult | None:
    """Slope of log(value) against log(M) on interval midpoints.

    Returns None when any interval is exactly [0, 0] (equality-branch
    signal).  The uncertainty adds the worst-case slope shift from the
    interval widths (propagated through the least-squares weights) to the
    residual standard error.
    """
    if any(iv.lo == 0 and iv.hi == 0 for _, iv in points):
        return None
    if len(points) < 3:
        raise InputError("exponent fit needs at least 3 points")
    if any(iv.lo <= 0 for _, iv in points):
        raise InputError("exponent fit needs positive interval lower bounds")
    xs = [math.log(m) for m, _ in points]
    ys = [log_float(iv.mid) for _, iv in points]
    slope, intercept = statistics.linear_regression(xs, ys)
    x_bar = sum(xs) / len(xs)
    sxx = sum((x - x_bar) ** 2 for x in xs)
    # worst-case slope shift if each midpoint moved to an endpoint
    shift = 0.0
    for (m, iv), x in zip(points, xs):
        mid_log = log_float(iv.mid)
        delta = max(log_float(iv.hi) - mid_log, mid_log - log_float(iv.lo))
        shift += abs(x - x_bar) / sxx * delta
    residuals = [y - (slope * x + intercept) for x, y in zip(xs, ys)]
    dof = len(points) - 2
    stderr = math.sqrt(sum(r * r for r in residuals) / dof / sxx) if dof else 0.0
    return FitResult(
        slope=slope,
        uncertainty=shift + stderr,
        intercept=intercept,
        n_points=len(points),
    )


@dataclass(frozen=True)
class DenominatorScan:
    """den f(1/M) per sampled M with its fitted growth exponent."""

    rows: tuple[tuple[int, int], ...]
    fit: FitResult | None
    violated: bool
    note: str = ""


def denominator_scan(
    cand: Candidate, ms: Sequence[int], t: int
) -> DenominatorScan:
    """Fitted exponent of den f(1/M) against M, flagging growth beyond t.

    The flag requires the fitted exponent to exceed t beyond its uncertainty
    *and* the excess ratios den/M^t to climb monotonically, so a large
    constant factor alone never trips it.
    """
    if cand.exact_eval is None:
        return DenominatorScan(
            rows=(),
            fit=None,
            violated=False,
            note="den undefined for this candidate (no exact evaluator)",
        )
    rows: list[tuple[int, int]] = []
    for m in ms:
        try:
            rows.append((m, cand.exact_eval(Fraction(1, m)).denominator))
        except PoleError:
            continue
    if len(rows) < 3:
        return DenominatorScan(
            rows=tuple(rows), fit=None, violated=False, note="too few rows to fit"
        )
    fit = exponent_fit([(m, Interval.point(d)) for m, d in rows])
    excesses = [Fraction(d, m**t) for m, d in rows]
    monotone = all(a <= b for a, b in zip(excesses, excesses[1:]))
    climbing = monotone and excesses[-1] > excesses[0]
    violated = fit is not None and fit.slope - fit.uncertainty > t and climbing
    return DenominatorScan(rows=tuple(rows), fit=fit, violated=violated)


@dataclass(frozen=True)
class GrowthReport:
    """Everything the harness measured for one candidate, plus the verdict."""

    candidate: str
    t: int
    j: int
    rows: tuple[GapRow, ...]
    fitted_gap_exponent: FitResult | None
    fitted_den_exponent: FitResult | None
    den_scan: DenominatorScan
    verdict: str
    m_star: Optional[int]
    collision_threshold: Optional[int]
    c_upper: Optional[Fraction]
    c1: Fraction
    c2: Fraction
    theta_range: Optional[Interval]
    notes: tuple[str, ...]

    def to_dict(self) -> dict:
        """JSON-ready form; rationals as p/q strings."""
        from .exact import format_rational as fr

        def iv(x: Optional[Interval]):
            return None if x is None else [fr(x.lo), fr(x.hi)]

        def fit(f: FitResult | None):
            if f is None:
                return None
            return {
                "slope": f.slope,
                "uncertainty": f.uncertainty,
                "intercept": f.intercept,
                "n_points": f.n_points,
            }

        return {
            "candidate": self.candidate,
            "t": self.t,
            "j": self.j,
            "verdict": self.verdict,
            "m_star": self.m_star,
            "collision_threshold": self.collision_threshold,
            "c_upper": None if self.c_upper is None else fr(self.c_upper),
            "c1": fr(self.c1),
            "c2": fr(self.c2),
            "fitted_gap_exponent": fit(self.fitted_gap_exponent),
            "fitted_den_exponent": fit(self.fitted_den_exponent),
            "theta_range": iv(self.theta_range),
            "notes": list(self.notes),
            "rows": [
                {
                    "M": r.M,
                    "skipped": r.skipped,
                    "f": iv(r.f_bounds),
                    "R": None if r.r_value is None else fr(r.r_value),
                    "gap": iv(r.gap),
                    "den_f": r.den_f,
                    "theta": iv(r.theta),
                }
                for r in self.rows
            ],
        }


def contradiction_report(
    cand: Candidate,
    t: int,
    ms: Sequence[int],
    eps_rule: Callable[[int], Fraction] | None = None,
) -> GrowthReport:
    """Build the approximant, measure everything, and assign the verdict.

    C1 is estimated as the largest observed den f(1/M)/M^t; when the
    candidate has no exact evaluator the hypothesis den <= M^t is taken at
    face value (C1 = 1).  C2 = 2*C1.  The collision point is the smallest
    sampled M at which C*M^-(2t+1-j) drops strictly below 1/(C2*M^(2t-j)),
    equivalently the first sampled M > C*C2 (exact comparison).
    """
    pade = build_pade(cand.coeff_prefix(t), t, a0=cand.coeffs[0])
    j = pade.j
    rows = gap_series(cand, pade, ms, eps_rule)
    rows = [
        r if r.skipped else replace(r, theta=theta_hat(r, t, j)) for r in rows
    ]
    live = [r for r in rows if not r.skipped]
    notes: list[str] = []
    if cand.note:
        notes.append(cand.note)
    skipped = len(rows) - len(live)
    if skipped:
        notes.append(f"{skipped} of {len(rows)} rows skipped")
    notes.append(
        "verdict reflects the sampled range only; no claim beyond max(M)"
    )

    gap_points = [(r.M, r.gap) for r in live]
    gap_fit: FitResult | None = None
    if len(gap_points) >= 3 and all(iv.lo > 0 for _, iv in gap_points):
        gap_fit = exponent_fit(gap_points)
    elif any(iv.lo == 0 and iv.hi == 0 for _, iv in gap_points):
        gap_fit = None
        notes.append("zero gap sampled: no gap exponent fit")
    elif gap_points:
        notes.append("gap intervals touch 0: no gap exponent fit")

    scan = denominator_scan(cand, ms, t)
    if scan.note:
        notes.append(scan.note)

    theta_range: Optional[Interval] = None
    for r in live:
        theta_range = r.theta if theta_range is None else theta_range.hull(r.theta)
    if theta_range is not None:
        notes.append("theta measured range reported; no convergence asserted")

    if scan.rows:
        c1 = max(Fraction(d, m**t) for m, d in scan.rows)
    else:
        c1 = Fraction(1)
        notes.append("no denominator data: C1 defaults to 1 (hypothesis at face value)")
    c2 = 2 * c1
    c_upper = max((r.theta.hi for r in live), default=None)

    exact_gaps = [r.gap for r in live if r.den_f is not None]
    m_star: Optional[int] = None
    threshold: Optional[int] = None
    if (
        cand.exact_eval is not None
        and exact_gaps
        and all(g.lo == 0 and g.hi == 0 for g in exact_gaps)
        and len(exact_gaps) == len(live)
    ):
        verdict = VERDICT_EQUALITY
    elif scan.violated:
        verdict = VERDICT_HYPOTHESIS_VIOLATED
    else:
        verdict = VERDICT_BOUND_COLLISION
        if c_upper is not None:
            # C/M^(2t+1-j) < 1/(C2 M^(2t-j))  <=>  M > C*C2
            cutoff = c_upper * c2
            threshold = math.floor(cutoff) + 1
            m_star = next((r.M for r in live if Fraction(r.M) > cutoff), None)
            if m_star is None:
                notes.append(
                    f"collision beyond sampled range: needs M >= {threshold}"
                )

    return GrowthReport(
        candidate=cand.name,
        t=t,
        j=j,
        rows=tuple(rows),
        fitted_gap_exponent=gap_fit,
        fitted_den_exponent=scan.fit,
        den_scan=scan,
        verdict=verdict,
        m_star=m_star,
        collision_threshold=threshold,
        c_upper=c_upper,
        c1=c1,
        c2=c2,
        theta_range=theta_range,
        notes=tuple(notes),
    )
