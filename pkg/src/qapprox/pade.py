"""Rational approximants R = P/Q built from the first 2t series coefficients.

Given a_1..a_2t, write F(z) = sum a_n z^n.  Choosing Q of degree <= t whose
coefficient vector kills the degree-(t+1)..2t coefficients of Q*F is a
t x (t+1) homogeneous linear system with Hankel structure; any nontrivial
kernel vector yields polynomials P (degree <= t) and S with

    P(z) = Q(z) F(z) + z^(2t+1) S(z)

exactly, so R = P/Q agrees with F through degree 2t - j, where j is the
valuation of Q (normalized so q_j = 1).

The kernel extraction is deterministic: reduced row-echelon form with
leftmost pivot selection, the highest-index free variable set to 1 and all
other free variables to 0.  Any nontrivial kernel vector gives the same
rational function R; the rule only pins down the representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (
    ConstructionError,
    InputError,
    Poly,
    PoleError,
    Scalar,
    TruncSeries,
    format_rational,
)


@dataclass(frozen=True)
class HankelSystem:
    """The t x (t+1) homogeneous system; entry (r, c) = a_{2t-r-c}."""

    t: int
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def rows(self) -> int:
        return self.t

    @property
    def cols(self) -> int:
        return self.t + 1

    def residual(self, q: Sequence[Scalar]) -> tuple[Fraction, ...]:
        """Exact matrix-vector product entries . q (all zero iff q is in the
        kernel)."""
        if len(q) != self.cols:
            raise InputError(f"expected a vector of length {self.cols}")
        return tuple(
            sum((row[c] * Fraction(q[c]) for c in range(self.cols)), Fraction(0))
            for row in self.entries
        )


def hankel_system(a: Sequence[Scalar], t: int) -> HankelSystem:
    """Assemble the system from a_1..a_2t (a[0] holds a_1)."""
    if t < 1:
        raise InputError("t must be >= 1")
    if len(a) != 2 * t:
        raise InputError(f"expected {2 * t} coefficients, got {len(a)}")
    coeffs = [Fraction(c) for c in a]
    entries = tuple(
        tuple(coeffs[2 * t - r - c - 1] for c in range(t + 1)) for r in range(t)
    )
    return HankelSystem(t=t, entries=entries)


def _rref(entries: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form with leftmost pivot selection.

    Plain rational elimination with eager reduction; kept behind
    kernel_vector so a fraction-free variant can be swapped in later.
    """
    m = [list(row) for row in entries]
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def kernel_vector(sys: HankelSystem) -> tuple[Fraction, ...]:
    """A deterministic nontrivial kernel vector (q_0..q_t) of the system.

    RREF with leftmost pivots, highest-index free variable set to 1, all
    other free variables set to 0, back-substitute.  A t x (t+1) homogeneous
    system always leaves at least one free column.
    """
    m, pivots = _rref(sys.entries)
    free = [c for c in range(sys.cols) if c not in pivots]
    chosen = free[-1]
    q = [Fraction(0)] * sys.cols
    q[chosen] = Fraction(1)
    for row, pc in zip(m, pivots):
        q[pc] = -row[chosen]
    return tuple(q)


def normalize_and_j(q: Sequence[Scalar]) -> tuple[int, tuple[Fraction, ...]]:
    """Scale a nonzero vector so its first nonzero entry is 1.

    Returns (j, normalized) with j the index of that entry.
    """
    qf = [Fraction(c) for c in q]
    j = next((i for i, c in enumerate(qf) if c != 0), None)
    if j is None:
        raise InputError("cannot normalize the zero vector")
    pivot = qf[j]
    return j, tuple(c / pivot for c in qf)


@dataclass(frozen=True)
class PadeApproximant:
    """The assembled approximant.

    P, Q, S satisfy P - Q*F = z^(2t+1) * S exactly, where F is the input
    polynomial sum a_n z^n (n = 1..2t), kept as provenance.  The constant
    term a0 of the original series is carried separately; evaluation and
    series expansion add it back, so all structural invariants refer to the
    shifted series.
    """

    t: int
    j: int
    Q: Poly
    P: Poly
    S: Poly
    F: Poly
    a0: Fraction = Fraction(0)

    def validate(self) -> None:
        """Re-check every structural invariant; raises ConstructionError."""
        t, j = self.t, self.j
        problems: list[str] = []
        if not (0 <= j <= t):
            problems.append(f"j={j} outside [0, {t}]")
        if self.Q.valuation() != j or self.Q.coeff(j) != 1:
            problems.append("Q does not start with coefficient 1 at index j")
        if self.Q.degree > t:
            problems.append(f"deg Q = {self.Q.degree} > t")
        if self.P.degree > t:
            problems.append(f"deg P = {self.P.degree} > t")
        if not self.P.is_zero() and (self.P.valuation() or 0) < j + 1:
            problems.append("P has a term of degree <= j")
        if self.S.degree > t - 1:
            problems.append(f"deg S = {self.S.degree} > t-1")
        qf = self.Q * self.F
        for m in range(t + 1, 2 * t + 1):
            if qf.coeff(m) != 0:
                problems.append(f"coefficient {m} of Q*F is nonzero")
        if self.P - qf != self.S.shift(2 * t + 1):
            problems.append("P - Q*F != z^(2t+1) * S")
        if problems:
            raise ConstructionError(
                "approximant invariants violated: "
                + "; ".join(problems)
                + f" [t={t}, j={j}, Q={self.Q!r}, P={self.P!r}, S={self.S!r}, F={self.F!r}]"
            )


def build_pade(a: Sequence[Scalar], t: int, a0: Scalar = 0) -> PadeApproximant:
    """Run the whole construction on a_1..a_2t.

    P is the degree-<= t truncation of Q*F (degrees <= j of Q*F vanish since
    ord(Q) = j and ord(F) >= 1 -- asserted, not assumed); S is the exact
    cofactor of z^(2t+1) in P - Q*F.
    """
    sys = hankel_system(a, t)
    q = kernel_vector(sys)
    residual = sys.residual(q)
    if any(r != 0 for r in residual):
        raise ConstructionError(
            f"kernel vector fails the system: q={q}, residual={residual}"
        )
    j, qn = normalize_and_j(q)
    Q = Poly(qn)
    F = Poly((Fraction(0),) + tuple(Fraction(c) for c in a))
    QF = Q * F
    P = QF.trunc(t)
    S = (P - QF).divexact_zpow(2 * t + 1)
    pade = PadeApproximant(t=t, j=j, Q=Q, P=P, S=S, F=F, a0=Fraction(a0))
    pade.validate()
    return pade


def eval_R(pade: PadeApproximant, x: Scalar) -> Fraction:
    """Exact value of R at x, including the carried constant term.

    Raises PoleError where Q vanishes.
    """
    xf = Fraction(x)
    qv = pade.Q.eval(xf)
    if qv == 0:
        raise PoleError(xf, f"Q({format_rational(xf)}) = 0")
    return pade.a0 + pade.P.eval(xf) / qv


def eval_R_cleared(pade: PadeApproximant, m: int) -> Fraction:
    """R(1/M) through the cleared-denominator form.

    Numerator sum b_{j+i} M^(t-j-i), denominator
    M^(t-j) + q_{j+1} M^(t-j-1) + ... + q_t.  Must agree with eval_R exactly;
    tests exercise both paths.
    """
    if m == 0:
        raise InputError("M must be a nonzero integer")
    t, j = pade.t, pade.j
    num = sum(
        (pade.P.coeff(i) * Fraction(m) ** (t - i) for i in range(j + 1, t + 1)),
        Fraction(0),
    )
    den = sum(
        (pade.Q.coeff(i) * Fraction(m) ** (t - i) for i in range(j, t + 1)),
        Fraction(0),
    )
    if den == 0:
        raise PoleError(Fraction(1, m))
    return pade.a0 + num / den


def series_of_R(pade: PadeApproximant, order: int) -> TruncSeries:
    """Power-series expansion of R to the given order by exact long division.

    z^j is factored out of both P and Q first (P has valuation >= j+1, Q has
    valuation j with unit constant term after the factoring), so the quotient
    is a genuine power series.
    """
    if order < 0:
        raise InputError("order must be >= 0")
    j = pade.j
    p_hat = pade.P.divexact_zpow(j)
    q_hat = pade.Q.divexact_zpow(j)
    # q_hat(0) == 1 by normalization, so the division needs no inversions.
    out = [Fraction(0)] * (order + 1)
    for n in range(order + 1):
        acc = p_hat.coeff(n)
        for i in range(1, min(n, q_hat.degree) + 1):
            acc -= q_hat.coeff(i) * out[n - i]
        out[n] = acc
    out[0] += pade.a0
    return TruncSeries(out, order)
