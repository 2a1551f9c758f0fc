from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hardedge.univariate import UnivariateRational, padd, pderiv, peval, pmul, psubs_one_minus

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.lists(rationals, min_size=1, max_size=9)


@given(polys, polys.filter(lambda p: any(c != 0 for c in p)), st.lists(rationals, min_size=5, max_size=5))
def test_derivative_matches_difference_quotient(p, q, points):
    f = UnivariateRational.make(p, q)
    df = f.deriv()
    h = F(1, 10 ** 12)
    for x in points:
        try:
            left, right, mid = f(x - h), f(x + h), df(x)
        except ZeroDivisionError:
            continue
        central = (right - left) / (2 * h)
        assert abs(central - mid) <= F(1, 10 ** 6) * (1 + abs(mid))


@given(polys, polys)
def test_poly_helpers_agree_with_evaluation(p, q):
    x = F(3, 7)
    assert peval(pmul(p, q), x) == peval(p, x) * peval(q, x)
    assert peval(padd(p, q), x) == peval(p, x) + peval(q, x)
    assert peval(psubs_one_minus(p), x) == peval(p, 1 - x)


def test_canonical_form_and_zero():
    f = UnivariateRational.make([-1, 0, 1], [-2, 2])  # (x^2 - 1)/(2x - 2) = (x + 1)/2
    assert f.num == (F(1, 2), F(1, 2)) and f.den == (F(1),)
    assert (f - f).is_zero()
    assert pderiv([1, 2, 3]) == [2, 6]
    with pytest.raises(ZeroDivisionError):
        UnivariateRational.make([1], [0])
