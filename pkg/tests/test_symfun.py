import math
from fractions import Fraction as F

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from hardedge.combinat import conjugate, dominance_leq, partitions_of
from hardedge.symfun import (
    SymmetricPoly,
    eval_scalar_matrix,
    evaluate,
    from_jack_basis,
    hypergeometric_pfq,
    jack_at_identity,
    jack_expand,
    msym_mul,
    monomial_product,
    to_jack_basis,
)
from hardedge.scalar import ParameterError

BETAS = [F(1, 2), F(1), F(2), F(3), F(4)]
points = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=3, max_size=3)


def test_monomial_product_examples():
    # m_1 * m_1 = m_2 + 2 m_11
    assert dict(monomial_product((1,), (1,), 3)) == {(2,): 1, (1, 1): 2}
    # m_1 * m_11 = m_21 + 3 m_111 in three variables
    assert dict(monomial_product((1,), (1, 1), 3)) == {(2, 1): 1, (1, 1, 1): 3}
    assert dict(monomial_product((1,), (1, 1), 2)) == {(2, 1): 1}


@given(points)
def test_msym_mul_agrees_with_evaluation(pt):
    f = SymmetricPoly(3, {(2, 1): F(1, 3), (1,): 2, (): -1})
    g = SymmetricPoly(3, {(1, 1, 1): 5, (2,): F(-1, 2)})
    assert evaluate(msym_mul(f, g), pt) == evaluate(f, pt) * evaluate(g, pt)


def test_evaluate_examples():
    f = SymmetricPoly(2, {(2,): 1, (1, 1): 3, (): 4})
    assert evaluate(f, [2, 5]) == 4 + 25 + 30 + 4
    assert eval_scalar_matrix(f, 2) == 8 + 12 + 4
    with pytest.raises(ValueError):
        evaluate(f, [1, 2, 3])


@pytest.mark.parametrize("beta", BETAS)
def test_jack_sum_is_power_of_first_power_sum(beta):
    for n in range(1, 5):
        p1 = SymmetricPoly(n, {(1,): 1})
        power = SymmetricPoly.constant(F(1), n)
        for k in range(7):
            total = SymmetricPoly(n, {})
            for kappa in partitions_of(k, n):
                total = total + jack_expand(kappa, beta, n)
            assert total == power, (n, k)
            power = msym_mul(power, p1)


@pytest.mark.parametrize("beta", BETAS)
def test_jack_triangular_and_homogeneous(beta):
    n = 4
    for k in range(1, 7):
        for kappa in partitions_of(k, n):
            c = jack_expand(kappa, beta, n)
            assert c[kappa] != 0
            for lam in c.coeffs:
                assert sum(lam) == k
                assert dominance_leq(lam, kappa)


def _hook_lengths(kappa):
    conj = conjugate(kappa)
    out = 1
    for i, row in enumerate(kappa):
        for j in range(row):
            out *= (row - j - 1) + (conj[j] - i - 1) + 1
    return out


def test_schur_bialternant_at_beta_two():
    xs = sympy.symbols("x0:3")
    n = 3
    vandermonde = sympy.Matrix(n, n, lambda i, j: xs[i] ** (n - 1 - j)).det()
    pt = {xs[0]: F(2), xs[1]: F(-1, 3), xs[2]: F(5, 7)}
    for k in range(1, 6):
        for kappa in partitions_of(k, n):
            lam = list(kappa) + [0] * (n - len(kappa))
            alt = sympy.Matrix(n, n, lambda i, j: xs[i] ** (lam[j] + n - 1 - j)).det()
            schur = sympy.cancel(alt / vandermonde)
            expected = sympy.Rational(math.factorial(k), _hook_lengths(kappa)) * schur.subs(pt)
            got = evaluate(jack_expand(kappa, 2, n), [pt[x] for x in xs])
            assert sympy.Rational(got.numerator, got.denominator) == expected


def test_jack_at_identity_single_row_beta_two():
    # one-row Schur hook product is k!, so C_(k)(I_n) counts degree-k monomials
    for n in range(1, 4):
        for k in range(5):
            assert jack_at_identity((k,), 2, n) == math.comb(n + k - 1, k)


@given(st.sampled_from(BETAS), st.dictionaries(
    st.sampled_from([(), (1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1), (2, 2)]),
    st.fractions(min_value=-4, max_value=4, max_denominator=6), max_size=5))
def test_jack_basis_round_trip(beta, coeffs):
    f = SymmetricPoly(3, coeffs)
    assert from_jack_basis(to_jack_basis(f, beta), beta, 3) == f


def test_jack_real_beta_matches_rational_limit():
    beta_f = F(7, 3)
    beta_m = mpmath.mpf(7) / 3
    a = jack_expand((2, 1), beta_f, 3)
    b = jack_expand((2, 1), beta_m, 3)
    for lam, c in a.coeffs.items():
        assert abs(b[lam] - mpmath.mpf(c.numerator) / c.denominator) < mpmath.mpf(10) ** -60


def test_pfq_zero_argument_is_one():
    assert hypergeometric_pfq([], [], 2, [0, 0], max_degree=6) == 1


@pytest.mark.parametrize("beta", [F(1, 2), F(2), F(3)])
def test_1f0_terminating_is_determinant_power(beta):
    pt = [F(1, 3), F(-2, 5)]
    m = 3
    res = hypergeometric_pfq([-m], [], beta, pt, max_degree=100, full=True)
    assert res.terminated and res.degree == m * len(pt)
    expected = 1
    for x in pt:
        expected *= (1 - x) ** m
    assert res.value == expected


def test_0f0_approaches_exponential_of_trace():
    pt = [mpmath.mpf("0.3"), mpmath.mpf("-0.2"), mpmath.mpf("0.1")]
    v = hypergeometric_pfq([], [], F(3, 2), pt, max_degree=14)
    assert abs(v - mpmath.exp(sum(pt))) < 1e-12


def test_pfq_requires_degree_for_infinite_series():
    with pytest.raises(ParameterError):
        hypergeometric_pfq([F(1, 2)], [F(3, 2)], 2, [F(1, 2)])
