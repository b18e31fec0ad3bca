"""Exact triangular solving, the two independent solve routes, and the
certified error-bound plumbing."""
from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest

from zetarat.numerics import zeta_reference
from zetarat.polynomials import binomial_poly, explicit_poly, shifted_legendre
from zetarat.rows import row_zeta3
from zetarat.solver import (
    SingularSystemError,
    build_system,
    certified_row_bounds,
    solve_zeta,
    theta_bound,
)
from zetarat.solver import _solve_back_substitution, _solve_cramer


def _structured_system(n: int, s: int, t_coeffs=None):
    P, Q = shifted_legendre(n), binomial_poly(n)
    T = explicit_poly(t_coeffs if t_coeffs is not None else [1])
    return P, Q, T, build_system(P, Q, T, s)


# ------------------------------------------------------------ system shape


def test_build_system_rows_run_from_s_down_to_three():
    _, _, _, system = _structured_system(2, 5)
    assert [row.order for row in system.rows] == [5, 4, 3]
    assert system.row_of_order(4).order == 4
    assert system.n == 2


def test_build_system_pads_the_third_polynomial():
    _, _, _, system = _structured_system(3, 4)
    assert system.T.degree == 3
    assert system.T.coeffs == (1, 0, 0, 0)


def test_build_system_diagonal_and_delta():
    _, _, _, system = _structured_system(2, 4)
    diag = system.diagonal
    assert diag == (system.rows[0].zeta(4), system.rows[1].zeta(3))
    assert system.delta == diag[0] * diag[1]


def test_build_system_validations():
    P, Q = shifted_legendre(2), binomial_poly(2)
    with pytest.raises(ValueError):
        build_system(P, Q, explicit_poly([1]), 2)
    with pytest.raises(ValueError):
        build_system(P, binomial_poly(3), explicit_poly([1]), 3)
    with pytest.raises(ValueError):
        build_system(P, Q, explicit_poly([1, 2, 3, 4]), 3)


# ----------------------------------------------------------------- solving


def test_order_three_solution_matches_the_hand_formula():
    """One row: I_3 = z3*zeta(3) + z2*zeta(2) + c, so
    zeta(3) = (-z2/z3)*zeta(2) + (-c/z3) + (1/z3)*I_3."""
    P, Q, T, system = _structured_system(3, 3)
    row = row_zeta3(P, Q, T_pad := system.T)
    assert T_pad.coeffs[0] == 1
    res = solve_zeta(system, {3: Fraction(1, 4**3)})
    z3, z2, c = row.zeta(3), row.zeta(2), row.constant
    assert res.alpha == -z2 / z3
    assert res.beta == -c / z3
    assert res.weight(3) == 1 / z3
    assert res.theta_bound == abs(1 / z3) * Fraction(1, 4**3)


def test_solution_satisfies_the_defining_linear_identities():
    """Substituting the weights back: sum_q w_q row_q(zeta p) must be
    exactly 1 at p = s and 0 at 3 <= p < s, with alpha and beta absorbing
    the zeta(2) and constant columns."""
    rng = random.Random(1212)
    solved = 0
    for s in (3, 4, 5, 6, 7):
        n = rng.randint(1, 3)
        t = [Fraction(rng.randint(-3, 3)) for _ in range(n)] + [Fraction(1)]
        P, Q, T, system = _structured_system(n, s, t)
        try:
            res = solve_zeta(system, {q: Fraction(1) for q in range(3, s + 1)})
        except SingularSystemError:
            continue  # a random T may legitimately kill a diagonal entry
        solved += 1
        weights = dict(res.weights)
        for p in range(3, s + 1):
            total = sum(
                w * system.row_of_order(q).zeta(p) for q, w in weights.items()
            )
            assert total == (1 if p == s else 0)
        assert res.alpha == -sum(
            w * system.row_of_order(q).zeta(2) for q, w in weights.items()
        )
        assert res.beta == -sum(
            w * system.row_of_order(q).constant for q, w in weights.items()
        )
    assert solved >= 3


def test_back_substitution_and_cramer_agree_exactly():
    rng = random.Random(1313)
    solved = 0
    for _ in range(10):
        n = rng.randint(1, 3)
        s = rng.randint(3, 7)
        t = [Fraction(rng.randint(-2, 2)) for _ in range(n)] + [Fraction(1)]
        _, _, _, system = _structured_system(n, s, t)
        try:
            back = _solve_back_substitution(system)
        except SingularSystemError:
            with pytest.raises(SingularSystemError):
                _solve_cramer(system)
            continue
        assert back == _solve_cramer(system)
        solved += 1
    assert solved >= 6


def test_singular_system_raises_with_a_clear_message():
    P, Q = shifted_legendre(2), binomial_poly(2)
    with pytest.raises(SingularSystemError, match="singular system"):
        system = build_system(P, Q, explicit_poly([0, 1]), 4)
        solve_zeta(system, {3: 1, 4: 1})


def test_singular_system_error_is_a_value_error():
    assert issubclass(SingularSystemError, ValueError)


def test_solve_zeta_requires_a_bound_for_every_order():
    _, _, _, system = _structured_system(2, 4)
    with pytest.raises(ValueError, match="missing theta bound"):
        solve_zeta(system, {4: 1})
    with pytest.raises(ValueError, match="negative"):
        solve_zeta(system, {3: -1, 4: 1})


def test_theta_total_folds_weights_and_bounds():
    _, _, _, system = _structured_system(2, 4)
    bounds = {3: Fraction(1, 7), 4: Fraction(2, 11)}
    res = solve_zeta(system, bounds)
    assert res.theta_bound == sum(
        abs(w) * bounds[q] for q, w in dict(res.weights).items()
    )
    assert res.weight(99) == 0


# ------------------------------------------------------------ theta bounds


def test_theta_bound_frozen_values():
    assert theta_bound(1, 1, 3) == Fraction(1, 4)
    assert theta_bound(10, 1, 5) == Fraction(1, 1048576)
    assert theta_bound(2, Fraction(3, 2), 4) == Fraction(3, 32)


def test_theta_bound_validations():
    with pytest.raises(ValueError):
        theta_bound(0, 1, 3)
    with pytest.raises(ValueError):
        theta_bound(1, 1, 2)
    with pytest.raises(ValueError):
        theta_bound(1, -1, 3)


def test_certified_bounds_never_exceed_the_analytic_bound():
    for n in (1, 2, 4, 6):
        P, Q = shifted_legendre(n), binomial_poly(n)
        T = explicit_poly([1, -1][: min(2, n + 1)])
        bounds = certified_row_bounds(P, Q, T, 6)
        assert sorted(bounds) == [3, 4, 5, 6]
        for order, value in bounds.items():
            assert 0 <= value <= theta_bound(n, T.cstar, order)


def test_certified_bounds_guard_the_polynomial_families():
    with pytest.raises(ValueError, match="shifted-Legendre"):
        certified_row_bounds(explicit_poly([1, -2]), binomial_poly(1), explicit_poly([1]), 3)
    with pytest.raises(ValueError):
        certified_row_bounds(shifted_legendre(2), binomial_poly(3), explicit_poly([1]), 3)


# ------------------------------------------------------- end-to-end checks


def test_certified_containment_for_zeta3_at_degree_four():
    """The final certificate: zeta(3) really lies within theta of
    alpha*zeta(2) + beta, checked in exact interval arithmetic."""
    P, Q, T, system = _structured_system(4, 3)
    res = solve_zeta(system, certified_row_bounds(P, Q, system.T, 3))
    approx = zeta_reference(2, 40).scale(res.alpha).shift(res.beta)
    err = approx - zeta_reference(3, 40)
    assert err.sup_abs <= res.theta_bound
    assert res.theta_bound <= theta_bound(4, 1, 3)


def test_certified_containment_agrees_with_a_float_sanity_check():
    mpmath.mp.dps = 40
    P, Q, T, system = _structured_system(6, 4)
    res = solve_zeta(system, certified_row_bounds(P, Q, system.T, 4))
    approx = mpmath.mpf(res.alpha.numerator) / res.alpha.denominator * mpmath.zeta(2)
    approx += mpmath.mpf(res.beta.numerator) / res.beta.denominator
    err = abs(approx - mpmath.zeta(4))
    assert err <= mpmath.mpf(res.theta_bound.numerator) / res.theta_bound.denominator
