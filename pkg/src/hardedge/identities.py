"""Exact checks of differentiation formulas and rational Painleve V / VI solutions.

Every check builds a residual as an exact rational function and passes only if
it is identically zero.  Parameters are exact rationals throughout.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .combinat import GammaProduct, square_partition
from .laws import (
    _require_nonneg_int,
    clear_moebius,
    dual_params,
    jacobi_pdf_constant,
    jacobi_smallest_cdf,
    jacobi_square_poly,
    laguerre_pdf_constant,
    laguerre_smallest_cdf,
    laguerre_square_poly,
)
from scipy import integrate

from .mvop import LaguerreParams, laguerre_at_zero, laguerre_poly, selberg_const_laguerre
from .scalar import ParameterError, is_exact, rising, to_mpf
from .symfun import evaluate
from .univariate import UnivariateRational, pshift_x

SAMPLE_POINTS = (Fraction(1, 3), Fraction(1, 2), Fraction(2))


@dataclass(frozen=True)
class DiffReport:
    identity: str
    params: Mapping[str, Fraction]
    residual: UnivariateRational

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    def sample_values(self) -> list:
        out = []
        for x in SAMPLE_POINTS:
            try:
                out.append(str(self.residual(x)))
            except ZeroDivisionError:
                out.append("pole")
        return out

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "params": {k: str(v) for k, v in self.params.items()},
            "pass": self.passed,
            "residual_degree": self.residual.degree(),
            "residual_sample_values": self.sample_values(),
        }

    def line(self) -> str:
        return json.dumps(self.to_json())


def _exact(**kw) -> dict:
    out = {}
    for k, v in kw.items():
        if not is_exact(v):
            raise ParameterError(f"{k} must be rational for exact identity checks, got {v}")
        out[k] = Fraction(v)
    return out


# ---------------------------------------------------------------------------
# Laguerre differentiation formula


def laguerre_diff_constant(n: int, beta, gamma) -> Fraction:
    """R in  d/dx L_A(x I) = R x^gamma L_B(x I) - (n/beta) L_A(x I), derived from the CDF/PDF pair."""
    p = _exact(beta=beta, gamma=gamma)
    beta, g = p["beta"], _require_nonneg_int("gamma", p["gamma"])
    b = 4 / beta
    la0 = laguerre_at_zero(square_partition(n, g), beta / 2 - 1, beta, g) if g else 1
    return (-1) ** g * laguerre_pdf_constant(n, b, g) * la0 * (b / 2) ** (g + 1)


def laguerre_diff_constant_printed(n: int, beta, gamma) -> Fraction:
    """The simplified constant as printed alongside the formula (disagrees with the derived one)."""
    p = _exact(beta=beta, gamma=gamma)
    beta, g = p["beta"], int(p["gamma"])
    return ((-beta) ** g * n * beta / rising(2 * Fraction(n) / beta, g)
            * Fraction(math.factorial(n * g), math.factorial(g * (n - 1))))


def laguerre_diff_constant_closed(n: int, beta, gamma) -> Fraction:
    """Closed form of the derived constant: (-1)^g n / (beta^{g+1} (2n/beta)_g) * (ng)! / (g(n-1))!."""
    p = _exact(beta=beta, gamma=gamma)
    beta, g = p["beta"], int(p["gamma"])
    return ((-1) ** g * n / (beta ** (g + 1) * rising(2 * Fraction(n) / beta, g))
            * Fraction(math.factorial(n * g), math.factorial(g * (n - 1))))


def laguerre_diff_residual(n: int, beta, gamma, constant: Fraction | None = None) -> DiffReport:
    p = _exact(beta=beta, gamma=gamma)
    beta, g = p["beta"], _require_nonneg_int("gamma", p["gamma"])
    if n < 1:
        raise ParameterError("n must be >= 1")
    r = laguerre_diff_constant(n, beta, g) if constant is None else Fraction(constant)
    la = UnivariateRational.poly(laguerre_square_poly(n, g, beta / 2 - 1, beta, 1))
    lb = UnivariateRational.poly(pshift_x(laguerre_square_poly(n - 1, g, beta / 2 + 1, beta, 1), g))
    res = la.deriv() - r * lb + (Fraction(n) / beta) * la
    return DiffReport("laguerre_diff", {"n": Fraction(n), "beta": beta, "gamma": Fraction(g)}, res)


# ---------------------------------------------------------------------------
# Jacobi differentiation formula


def jacobi_diff_constant(n: int, beta, gamma1, gamma2) -> Fraction:
    """C in (1-x) P_A' = C x^{g1} P_B - Q P_A, from the ensemble with parameter 4/beta."""
    p = _exact(beta=beta, gamma1=gamma1, gamma2=gamma2)
    beta, g1, gamma2 = p["beta"], _require_nonneg_int("gamma1", p["gamma1"]), p["gamma2"]
    b = 4 / beta
    g2e = dual_params(beta, gamma2).gamma
    return (-1) ** g1 * jacobi_pdf_constant(n, b, g1, g2e)


def jacobi_diff_constant_printed(n: int, beta, gamma1, gamma2):
    """The simplified Gamma ratio as printed next to the formula."""
    p = _exact(beta=beta, gamma1=gamma1, gamma2=gamma2)
    beta, g1, g2 = p["beta"], p["gamma1"], p["gamma2"]
    t = 2 / beta
    g = (GammaProduct.gamma(1 + t) * GammaProduct.gamma(1 + g1 + t * (g2 + n))
         * GammaProduct.gamma(1 + g1 + t * n))
    g = g / (GammaProduct.gamma(1 + t * n) * GammaProduct.gamma(1 + g1) * GammaProduct.gamma(1 + g1 + t)
             * GammaProduct.gamma(t * (g2 + n)))
    return g.value()


def jacobi_diff_residual(n: int, beta, gamma1, gamma2, constant: Fraction | None = None) -> DiffReport:
    p = _exact(beta=beta, gamma1=gamma1, gamma2=gamma2)
    beta, g1, gamma2 = p["beta"], _require_nonneg_int("gamma1", p["gamma1"]), p["gamma2"]
    if n < 1:
        raise ParameterError("n must be >= 1")
    if gamma2 <= -1:
        raise ParameterError(f"gamma2 must exceed -1, got {gamma2}")
    b = 4 / beta
    g2e = dual_params(beta, gamma2).gamma
    c = jacobi_diff_constant(n, beta, g1, gamma2) if constant is None else Fraction(constant)
    q = n * (1 + g1 + g2e + b * (n - 1) / 2)
    pa = UnivariateRational.poly(jacobi_square_poly(n, g1, beta / 2 - 1, gamma2, beta))
    pb = UnivariateRational.poly(pshift_x(jacobi_square_poly(n - 1, g1, beta / 2 + 1, gamma2, beta), g1))
    one_minus = UnivariateRational.poly([1, -1])
    res = one_minus * pa.deriv() - c * pb + q * pa
    return DiffReport("jacobi_diff", {"n": Fraction(n), "beta": beta, "gamma1": Fraction(g1),
                                      "gamma2": gamma2}, res)


# ---------------------------------------------------------------------------
# Painleve V (beta = 2 Laguerre)


def painleve5_asymptotic_coeff(n: int, gamma: int) -> Fraction:
    return Fraction(math.factorial(n + gamma), math.factorial(n - 1) * math.factorial(gamma)
                    * math.factorial(gamma + 1))


def painleve5_sigma(n: int, gamma) -> UnivariateRational:
    """sigma(x) = 2 x R (-2x)^gamma L_B(-2x I) / L_A(-2x I) at beta = 2."""
    g = _require_nonneg_int("gamma", Fraction(gamma))
    r = laguerre_diff_constant(n, 2, g)
    la = laguerre_square_poly(n, g, 0, 2, -2)
    lb = laguerre_square_poly(n - 1, g, 2, 2, -2)
    num = pshift_x([c * 2 * r * (-2) ** g for c in lb], g + 1)
    return UnivariateRational.make(num, la)


def painleve5_sigma_printed(n: int, gamma) -> UnivariateRational:
    """The explicit solution exactly as printed: no (-2x)^gamma factor and the printed constant."""
    g = _require_nonneg_int("gamma", Fraction(gamma))
    r = laguerre_diff_constant_printed(n, 2, g)
    la = laguerre_square_poly(n, g, 0, 2, -2)
    lb = laguerre_square_poly(n - 1, g, 2, 2, -2)
    return UnivariateRational.make(pshift_x([c * 2 * r for c in lb], 1), la)


def painleve5_residual(sigma: UnivariateRational, n: int, gamma) -> UnivariateRational:
    """(x s'')^2 - [4x s'^3 + s^2 + (2g+4n-2x) s s' + (g^2-2gx-4nx+x^2) s'^2 - 4 s s'^2]."""
    g = Fraction(gamma)
    x = UnivariateRational.x()
    s1 = sigma.deriv()
    s2 = s1.deriv()
    lin = UnivariateRational.poly([2 * g + 4 * n, -2])
    quad = UnivariateRational.poly([g * g, -2 * g - 4 * n, 1])
    rhs = (4 * x * s1 ** 3 + sigma * sigma + lin * sigma * s1 + quad * s1 * s1
           - 4 * sigma * s1 * s1)
    return (x * s2) ** 2 - rhs


def lowest_taylor_term(f: UnivariateRational) -> tuple[int, Fraction]:
    """(k, c) with f(x) = c x^k + O(x^{k+1}) at 0; requires f regular at 0."""
    if f.den[0] == 0:
        raise ArithmeticError("pole at 0")
    for k, c in enumerate(f.num):
        if c != 0:
            return k, c / f.den[0]
    return -1, Fraction(0)


def sigma_consistency_laguerre(n: int, gamma) -> DiffReport:
    """Residual of sigma(t) + t d/dt log(1 - F(2t)) with F the beta = 2 smallest-eigenvalue CDF."""
    g = _require_nonneg_int("gamma", Fraction(gamma))
    law = laguerre_smallest_cdf(n, 2, g)
    # 1 - F(2t) = exp(-n t) * poly(2t) / poly(0)
    p2 = UnivariateRational.poly([c * 2 ** k for k, c in enumerate(law.poly)])
    t = UnivariateRational.x()
    log_deriv = UnivariateRational.const(-n) + p2.deriv() / p2
    res = painleve5_sigma(n, g) + t * log_deriv
    return DiffReport("sigma_consistency_laguerre", {"n": Fraction(n), "gamma": Fraction(g)}, res)


# ---------------------------------------------------------------------------
# Painleve VI (beta = 2 Jacobi)


def painleve6_g_constant(n: int, gamma1: int, gamma2) -> Fraction:
    g = (GammaProduct.gamma(1 + gamma1 + n) * GammaProduct.gamma(1 + n + gamma1 + Fraction(gamma2))
         / (GammaProduct.gamma(n) * GammaProduct.gamma(1 + gamma1) * GammaProduct.gamma(gamma1 + 2)
            * GammaProduct.gamma(Fraction(gamma2) + n)))
    return 2 * g.value()


def painleve6_affine(n: int, gamma1, gamma2) -> UnivariateRational:
    s = Fraction(gamma1) + Fraction(gamma2)
    return UnivariateRational.poly([Fraction(2 * n * n + 2 * s * n + gamma1 * s) / 4,
                                    -Fraction((2 * n + s) ** 2) / 4])


def painleve6_sigma(n: int, gamma1, gamma2) -> UnivariateRational:
    """sigma = g/2 + affine part, with g a ratio of beta = 2 Jacobi polynomials at -x/(1-x)."""
    p = _exact(gamma1=gamma1, gamma2=gamma2)
    g1, g2 = _require_nonneg_int("gamma1", p["gamma1"]), p["gamma2"]
    pa = clear_moebius(jacobi_square_poly(n, g1, 0, g2, 2), n * g1)
    pb = clear_moebius(jacobi_square_poly(n - 1, g1, 2, g2, 2), (n - 1) * g1)
    # P_B/P_A at -x/(1-x) equals (1-x)^{g1} * cleared_B / cleared_A
    k = painleve6_g_constant(n, g1, g2)
    g = UnivariateRational.make(pshift_x([c * k for c in pb], g1 + 1), pa)
    return g * Fraction(1, 2) + painleve6_affine(n, g1, g2)


def sigma_consistency_jacobi(n: int, gamma1, gamma2) -> DiffReport:
    """Residual of sigma(x) + x(1-x) d/dx log(1-F(x)) minus the affine shift; zero iff consistent."""
    p = _exact(gamma1=gamma1, gamma2=gamma2)
    g1, g2 = _require_nonneg_int("gamma1", p["gamma1"]), p["gamma2"]
    law = jacobi_smallest_cdf(n, 2, g1, g2)
    # 1 - F = (1-x)^q * poly(x)
    a = UnivariateRational.poly(law.poly)
    x = UnivariateRational.x()
    one_minus = UnivariateRational.poly([1, -1])
    log_term = -law.one_minus_x_exponent * x + x * one_minus * a.deriv() / a
    res = painleve6_sigma(n, g1, g2) + log_term - painleve6_affine(n, g1, g2)
    return DiffReport("sigma_consistency_jacobi",
                      {"n": Fraction(n), "gamma1": Fraction(g1), "gamma2": g2}, res)


# ---------------------------------------------------------------------------
# Laguerre analogue of Kaneko's integral (numerical check)


def kaneko_laguerre_rhs(n: int, beta, gamma, ys) -> float:
    """D * L_{n^(nu)}(2y/beta) with dual parameters and D = 1 / (Z_{n, gamma+nu} L(0))."""
    nu = len(ys)
    dual = dual_params(beta, gamma)
    kappa = square_partition(n, nu)
    params = LaguerreParams(nu, dual.gamma, dual.beta)
    poly = laguerre_poly(kappa, params)
    lz = laguerre_at_zero(kappa, dual.gamma, dual.beta, nu)
    d = 1 / (to_mpf(selberg_const_laguerre(n, Fraction(gamma) + nu if is_exact(gamma) else gamma + nu, beta))
             * to_mpf(lz))
    pt = [2 * to_mpf(y) / to_mpf(beta) for y in ys]
    return float(d * to_mpf(evaluate(poly, pt)))


def kaneko_laguerre_lhs(n: int, beta, gamma, y) -> float:
    """Quadrature of prod_i (x_i - y) against the Laguerre weight, for n <= 2 and one y."""
    b, g, y = float(beta), float(gamma), float(y)

    def w1(x):
        return x ** g * math.exp(-x / 2)

    if n == 1:
        return integrate.quad(lambda x: (x - y) * w1(x), 0, math.inf, epsabs=0, epsrel=1e-12)[0]
    if n != 2:
        raise ParameterError("quadrature check implemented for n <= 2")

    def inner(x2):
        # integrate x1 over (0, x2); the weight is symmetric so the full integral is twice this
        f = lambda x1: (x1 - y) * (x2 - y) * abs(x2 - x1) ** b * w1(x1) * w1(x2)
        return integrate.quad(f, 0, x2, epsabs=0, epsrel=1e-10, limit=200)[0]

    return 2 * integrate.quad(inner, 0, math.inf, epsabs=0, epsrel=1e-11, limit=200)[0]
