import json
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from hardedge.combinat import partitions_of
from hardedge.mvop import (
    JacobiParams,
    LaguerreParams,
    _MomentTable,
    dumps_poly,
    jack_moment,
    jacobi_jack_coeffs,
    jacobi_poly,
    laguerre_at_zero,
    laguerre_norm_sq,
    laguerre_poly,
    poly_from_json,
    reduce_vars_jacobi,
    reduce_vars_laguerre,
    selberg_const_jacobi,
    selberg_const_laguerre,
    selberg_laguerre_product,
    scalar_matrix_poly,
)
from hardedge.scalar import ParameterError
from hardedge.symfun import evaluate, jack_expand, msym_mul

from quad import as_float, float_poly, gauss_jacobi_pair, gauss_laguerre_pair, integrate_jacobi, integrate_laguerre

POINTS = [[F(1, 2), F(3)], [F(-2), F(5, 7)], [F(0), F(1)], [F(7, 3), F(7, 3)], [F(11, 4), F(-1, 9)]]


def test_selberg_trivial_values():
    assert selberg_const_laguerre(1, 0, 3) == F(1, 2)
    assert selberg_const_jacobi(1, 0, 0, 3) == 1
    expected = 1 / mpmath.beta(mpmath.mpf(5) / 2, mpmath.mpf(3) / 2)
    assert abs(selberg_const_jacobi(1, F(3, 2), F(1, 2), 1) - expected) < mpmath.mpf(10) ** -70


def test_selberg_ratio_stays_exact():
    ratio = selberg_laguerre_product(4, 3, F(1, 2)) / selberg_laguerre_product(3, F(7, 2), F(1, 2))
    assert ratio.value() == F(16, 585)


def test_selberg_constants_match_quadrature():
    lag = integrate_laguerre(lambda x: 1.0, 2, 0, 2)
    assert 1 / lag == pytest.approx(as_float(selberg_const_laguerre(2, 0, 2)), rel=1e-10)
    jac = integrate_jacobi(lambda x: 1.0, 2, 1, 1, 2)
    assert 1 / jac == pytest.approx(as_float(selberg_const_jacobi(2, 1, 1, 2)), rel=1e-10)
    assert selberg_const_laguerre(2, 0, 2) == F(1, 32)
    assert selberg_const_jacobi(2, 1, 1, 2) == 360


def test_laguerre_at_zero_examples():
    assert laguerre_at_zero((), F(2), F(3), 4) == 1
    assert laguerre_at_zero((4, 4, 4), 3, 8, 3) == 1024 * 212837625 == 217945728000
    assert laguerre_at_zero((3, 3, 3), 5, 8, 3) == F(23843635200, 55) == 433520640


@pytest.mark.parametrize("kappa,n,beta,gamma", [((1,), 1, 2, 0), ((2,), 1, 2, 1), ((1,), 2, 2, 0),
                                                  ((2, 1), 2, 1, 1), ((2,), 2, F(1, 2), F(1, 2))])
def test_norm_sq_matches_quadrature(kappa, n, beta, gamma):
    poly = laguerre_poly(kappa, LaguerreParams(n, gamma, beta))
    f = float_poly(poly)
    num = integrate_laguerre(lambda x: f(x) ** 2, n, gamma, beta, rel=1e-10)
    assert num == pytest.approx(as_float(laguerre_norm_sq(kappa, gamma, beta, n)), rel=1e-8)


def test_norm_sq_empty_partition_is_weight_mass():
    for n, gamma, beta in [(1, 0, 2), (2, 1, F(3)), (3, F(1, 2), F(1, 2))]:
        mass = 1 / mpmath.mpf(as_float(selberg_const_laguerre(n, gamma, beta)))
        assert laguerre_norm_sq((), gamma, beta, n) == pytest.approx(float(mass), rel=1e-12)


@pytest.mark.parametrize("n,gamma,beta", [(2, 1, 2), (3, 0, F(1, 2)), (2, F(3, 2), F(5, 2))])
def test_norm_sq_matches_exact_moments(n, gamma, beta):
    params = LaguerreParams(n, gamma, beta)
    table = _MomentTable(params)
    z = selberg_const_laguerre(n, gamma, beta)
    for k in range(4):
        for kappa in partitions_of(k, n):
            poly = laguerre_poly(kappa, params)
            sq = msym_mul(poly, poly)
            mean = sum(c * table.monomial(lam) for lam, c in sq.coeffs.items())
            assert abs(to_mp(mean) / to_mp(z) / to_mp(laguerre_norm_sq(kappa, gamma, beta, n)) - 1) < 1e-40


def to_mp(v):
    return mpmath.mpf(v.numerator) / v.denominator if isinstance(v, F) else mpmath.mpf(v)


def test_jack_moment_matches_quadrature():
    got = jack_moment((1,), LaguerreParams(2, 0, 2))
    c1 = jack_expand((1,), 2, 2)
    num = integrate_laguerre(lambda x: as_float(evaluate(c1, x)), 2, 0, 2)
    assert num == pytest.approx(as_float(got), rel=1e-9)
    got = jack_moment((2,), JacobiParams(2, 0, 0, 1))
    c2 = jack_expand((2,), 1, 2)
    num = integrate_jacobi(lambda x: as_float(evaluate(c2, x)), 2, 0, 0, 1)
    assert num == pytest.approx(as_float(got), rel=1e-9)


def test_jack_moment_empty_is_inverse_selberg():
    assert jack_moment((), LaguerreParams(3, 1, 2)) == 1 / selberg_const_laguerre(3, 1, 2)
    assert jack_moment((), JacobiParams(2, 1, 1, 2)) == F(1, 360)


@pytest.mark.parametrize("beta", [1, 2])
def test_orthogonality_by_quadrature(beta):
    n = 2
    parts = [kp for k in range(4) for kp in partitions_of(k, n)]
    cases = [
        (lambda kp: laguerre_poly(kp, LaguerreParams(n, 1, beta)), lambda f: gauss_laguerre_pair(f, 1, beta)),
        (lambda kp: jacobi_poly(kp, JacobiParams(n, 1, F(1, 2), beta)), lambda f: gauss_jacobi_pair(f, 1, 0.5, beta)),
    ]
    for build, integ in cases:
        polys = {kp: float_poly(build(kp)) for kp in parts}
        norms = {kp: integ(lambda x: p(x) ** 2) for kp, p in polys.items()}
        for i, a in enumerate(parts):
            for b in parts[i + 1:]:
                cross = integ(lambda x: polys[a](x) * polys[b](x))
                assert abs(cross) < 1e-8 * (norms[a] * norms[b]) ** 0.5, (a, b)


@given(st.sampled_from([F(1, 2), F(1), F(2), F(3)]), st.sampled_from([F(0), F(1, 2), F(2)]),
       st.sampled_from([(1,), (2,), (1, 1), (2, 1), (3,), (2, 2)]))
def test_constant_term_anchors(beta, gamma, kappa):
    n = 3
    assert laguerre_poly(kappa, LaguerreParams(n, gamma, beta))[()] == laguerre_at_zero(kappa, gamma, beta, n)
    assert jacobi_poly(kappa, JacobiParams(n, gamma, F(1, 2), beta))[()] == 1


def test_jacobi_scalar_matrix_example():
    jc = jacobi_jack_coeffs((2, 2), JacobiParams(2, F(5, 2), F(3, 2), 3))
    assert scalar_matrix_poly(jc, 3, 2) == [F(c, 135) for c in (135, -918, 2448, -2907, 1292)]


def test_reduce_vars_laguerre():
    kappa, ratio = reduce_vars_laguerre(2, 1, 2, 2, 0)
    assert kappa == (2,) and ratio == 1
    kappa, ratio = reduce_vars_laguerre(2, 1, 2, 2, 1)
    assert kappa == (2, 2)
    assert ratio == laguerre_at_zero((2,), 2, 2, 1) / laguerre_at_zero((2, 2), 1, 2, 2)
    left = laguerre_poly((2,), LaguerreParams(1, 2, 2))
    right = laguerre_poly((2, 2), LaguerreParams(2, 1, 2))
    for pt in POINTS:
        assert evaluate(left, pt[:1]) == ratio * evaluate(right, [pt[0], 0])
    with pytest.raises(ParameterError):
        reduce_vars_laguerre(2, 1, 0, 2, 1)


@pytest.mark.parametrize("a,b", [(0, 0), (1, 0), (0, 1)])
def test_reduce_vars_jacobi(a, b):
    kappa, ratio = reduce_vars_jacobi(2, 1, 2, 2, 2, a, b)
    if a == b == 0:
        assert ratio == 1
    left = jacobi_poly((2,), JacobiParams(1, 2, 2, 2))
    right = jacobi_poly(kappa, JacobiParams(1 + a + b, 2 - a, 2 - b, 2))
    for pt in POINTS:
        assert evaluate(left, pt[:1]) == ratio * evaluate(right, [pt[0]] + [0] * a + [1] * b)


def test_length_exceeding_variables_rejected():
    with pytest.raises((ParameterError, ValueError)):
        laguerre_poly((1, 1, 1), LaguerreParams(2, 0, 2))
    with pytest.raises((ParameterError, ValueError)):
        jacobi_poly((1, 1, 1), JacobiParams(2, 0, 0, 2))


def test_parameter_validation():
    with pytest.raises(ParameterError):
        LaguerreParams(2, -1, 2)
    with pytest.raises(ParameterError):
        JacobiParams(2, 0, 0, 0)


def test_json_round_trip():
    exact = laguerre_poly((2, 1), LaguerreParams(3, 1, 3))
    assert poly_from_json(json.loads(dumps_poly(exact))) == exact
    real = laguerre_poly((2,), LaguerreParams(2, mpmath.e, mpmath.pi))
    back = poly_from_json(json.loads(dumps_poly(real)))
    for lam, c in real.coeffs.items():
        assert abs(back[lam] - c) <= mpmath.mpf(10) ** -70 * abs(c)
    with pytest.raises(ValueError):
        poly_from_json({"n_vars": 1, "basis": "jack", "terms": []})
