"""Builder tests: system assembly, kernel extraction, assembled approximants.

The kernel cross-check uses an independent oracle: signed maximal minors via
Laplace-expansion determinants span the null space of a full-rank t x (t+1)
system, and membership is re-verified with a from-scratch matrix-vector
product (no code shared with the implementation under test).
"""

import random
from fractions import Fraction as F

import pytest

from qapprox.exact import ConstructionError, InputError, Poly, PoleError
from qapprox.pade import (
    build_pade,
    eval_R,
    eval_R_cleared,
    hankel_system,
    kernel_vector,
    normalize_and_j,
    series_of_R,
)


def rand_fraction(rng: random.Random) -> F:
    num = rng.randint(-1000, 1000)
    den = rng.randint(1, 1000)
    return F(num, den)


# -- independent oracle helpers -------------------------------------------------

def det_laplace(m):
    """Determinant by first-row Laplace expansion (exact, O(n!))."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = F(0)
    for c, entry in enumerate(m[0]):
        if entry == 0:
            continue
        minor = [row[:c] + row[c + 1 :] for row in m[1:]]
        sign = -1 if c % 2 else 1
        total += sign * entry * det_laplace(minor)
    return total


def signed_minor_kernel(entries):
    """v_c = (-1)^c det(A without column c); spans the kernel when A has
    full rank, zero vector otherwise."""
    t = len(entries)
    out = []
    for c in range(t + 1):
        sub = [list(row[:c]) + list(row[c + 1 :]) for row in entries]
        sign = -1 if c % 2 else 1
        out.append(sign * det_laplace(sub))
    return out


def matvec(entries, v):
    return [sum(row[c] * v[c] for c in range(len(v))) for row in entries]


# -- hankel_system ----------------------------------------------------------------

def test_hankel_exp_example():
    sys = hankel_system([F(1), F(1, 2)], 1)
    assert sys.entries == ((F(1, 2), F(1)),)


def test_hankel_row_layout_t2():
    a1, a2, a3, a4 = F(1), F(2), F(3), F(4)
    sys = hankel_system([a1, a2, a3, a4], 2)
    assert sys.entries == ((a4, a3, a2), (a3, a2, a1))


def test_hankel_zero_series():
    assert hankel_system([F(0), F(0)], 1).entries == ((F(0), F(0)),)


def test_hankel_dimensions():
    for t in range(1, 9):
        rng = random.Random(t)
        a = [rand_fraction(rng) for _ in range(2 * t)]
        sys = hankel_system(a, t)
        assert sys.rows == t and sys.cols == t + 1
        assert len(sys.entries) == t
        assert all(len(row) == t + 1 for row in sys.entries)
        for r in range(t):
            for c in range(t + 1):
                assert sys.entries[r][c] == a[2 * t - r - c - 1]


def test_hankel_arity_error():
    with pytest.raises(InputError, match="expected 4 coefficients"):
        hankel_system([F(1), F(2), F(3)], 2)


# -- kernel_vector -----------------------------------------------------------------

def test_kernel_exp_example():
    sys = hankel_system([F(1), F(1, 2)], 1)
    assert kernel_vector(sys) == (F(-2), F(1))


def test_kernel_zero_system():
    sys = hankel_system([F(0), F(0)], 1)
    assert kernel_vector(sys) == (F(0), F(1))


def test_kernel_structured_t2():
    sys = hankel_system([F(1), F(0), F(0), F(1)], 2)
    assert kernel_vector(sys) == (F(0), F(1), F(0))


def test_kernel_always_nonzero_and_exact():
    rng = random.Random(7)
    for trial in range(120):
        t = rng.randint(1, 8)
        a = [rand_fraction(rng) for _ in range(2 * t)]
        sys = hankel_system(a, t)
        q = kernel_vector(sys)
        assert any(c != 0 for c in q)
        assert all(r == 0 for r in sys.residual(q))


def test_kernel_against_minor_oracle():
    rng = random.Random(11)
    for trial in range(80):
        t = rng.randint(1, 3)
        a = [rand_fraction(rng) for _ in range(2 * t)]
        sys = hankel_system(a, t)
        q = kernel_vector(sys)
        # membership per the oracle's own matrix-vector product
        assert all(v == 0 for v in matvec([list(r) for r in sys.entries], list(q)))
        v = signed_minor_kernel(sys.entries)
        if any(c != 0 for c in v):
            # full rank: kernel is one-dimensional, so q must be parallel to v
            for i in range(t + 1):
                for k in range(t + 1):
                    assert q[i] * v[k] == q[k] * v[i]


# -- normalize_and_j ----------------------------------------------------------------

def test_normalize_examples():
    assert normalize_and_j((F(-2), F(1))) == (0, (F(1), F(-1, 2)))
    assert normalize_and_j((F(0), F(0), F(5))) == (2, (F(0), F(0), F(1)))
    assert normalize_and_j((F(1), F(3))) == (0, (F(1), F(3)))


def test_normalize_rejects_zero_vector():
    with pytest.raises(InputError):
        normalize_and_j((F(0), F(0)))


def test_normalize_scaling_invariance():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 6)
        q = [rand_fraction(rng) for _ in range(n)]
        if all(c == 0 for c in q):
            q[rng.randrange(n)] = F(1)
        lam = F(0)
        while lam == 0:
            lam = rand_fraction(rng)
        assert normalize_and_j(q) == normalize_and_j([lam * c for c in q])


# -- build_pade ----------------------------------------------------------------------

def test_build_exp_fixture():
    pade = build_pade([F(1), F(1, 2)], 1)
    assert pade.Q == Poly([1, F(-1, 2)])
    assert pade.P == Poly([0, 1])
    assert pade.S == Poly([F(1, 4)])
    assert pade.j == 0


def test_build_degree_le_t_is_exact():
    pade = build_pade([F(1), F(0)], 1)  # F = z
    assert pade.Q == Poly([1])
    assert pade.P == Poly([0, 1])
    assert pade.S.is_zero()
    assert pade.j == 0


def test_build_zero_series():
    pade = build_pade([F(0)] * 4, 2)
    assert pade.P.is_zero() and pade.S.is_zero()
    assert eval_R(pade, F(1, 3)) == 0


def test_build_random_invariants():
    rng = random.Random(23)
    for trial in range(80):
        t = rng.randint(1, 6)
        a = [rand_fraction(rng) for _ in range(2 * t)]
        pade = build_pade(a, t)
        pade.validate()
        # P - Q*F = z^(2t+1) S, re-checked from parts
        assert pade.P - pade.Q * pade.F == pade.S.shift(2 * t + 1)


def test_series_matches_input_through_order():
    rng = random.Random(29)
    for trial in range(60):
        t = rng.randint(1, 6)
        a = [rand_fraction(rng) for _ in range(2 * t)]
        pade = build_pade(a, t)
        matched = 2 * t - pade.j
        expansion = series_of_R(pade, matched)
        for i in range(1, matched + 1):
            assert expansion.coeff(i) == pade.F.coeff(i)


# -- evaluation -----------------------------------------------------------------------

def test_eval_exp_example():
    pade = build_pade([F(1), F(1, 2)], 1)
    assert eval_R(pade, F(1, 4)) == F(2, 7)


def test_eval_pole():
    pade = build_pade([F(1), F(1, 2)], 1)
    with pytest.raises(PoleError):
        eval_R(pade, F(2))


def test_eval_at_zero():
    pade = build_pade([F(1), F(1, 2)], 1)
    assert eval_R(pade, F(0)) == 0


def test_eval_cleared_form_agrees():
    pade = build_pade([F(1), F(1, 2)], 1)
    for m in range(2, 101):
        assert eval_R_cleared(pade, m) == eval_R(pade, F(1, m))


def test_eval_cleared_form_agrees_random():
    rng = random.Random(31)
    for trial in range(30):
        t = rng.randint(1, 5)
        a = [rand_fraction(rng) for _ in range(2 * t)]
        a0 = rand_fraction(rng)
        pade = build_pade(a, t, a0=a0)
        for m in (2, 3, 10, 97):
            try:
                direct = eval_R(pade, F(1, m))
            except PoleError:
                with pytest.raises(PoleError):
                    eval_R_cleared(pade, m)
                continue
            assert eval_R_cleared(pade, m) == direct


def test_constant_term_carried():
    pade = build_pade([F(1), F(1, 2)], 1, a0=F(3, 5))
    assert eval_R(pade, F(0)) == F(3, 5)
    assert eval_R(pade, F(1, 4)) == F(3, 5) + F(2, 7)
    expansion = series_of_R(pade, 2)
    assert expansion.coeff(0) == F(3, 5)
    assert expansion.coeff(1) == 1


# -- series expansion ----------------------------------------------------------------

def test_series_of_R_exp():
    pade = build_pade([F(1), F(1, 2)], 1)
    assert series_of_R(pade, 4).coeffs == (F(0), F(1), F(1, 2), F(1, 4), F(1, 8))


def test_series_of_R_polynomial_case():
    pade = build_pade([F(1), F(0)], 1)
    assert series_of_R(pade, 3).coeffs == (F(0), F(1), F(0), F(0))


def test_series_of_R_nonzero_j():
    # F = z with t = 2 forces Q = z (j = 1); the expansion must still be z
    pade = build_pade([F(1), F(0), F(0), F(0)], 2)
    assert pade.j >= 1
    assert series_of_R(pade, 4).coeffs[:2] == (F(0), F(1))
