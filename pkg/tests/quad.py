"""Independent numerical integration against the Laguerre and Jacobi weights."""

import math

from scipy import integrate

from hardedge.scalar import to_mpf


def laguerre_weight(xs, gamma, beta):
    w = 1.0
    for i, x in enumerate(xs):
        w *= x ** gamma * math.exp(-x / 2)
        for y in xs[i + 1:]:
            w *= abs(x - y) ** beta
    return w


def jacobi_weight(xs, gamma1, gamma2, beta):
    w = 1.0
    for i, x in enumerate(xs):
        w *= x ** gamma1 * (1 - x) ** gamma2
        for y in xs[i + 1:]:
            w *= abs(x - y) ** beta
    return w


def integrate_laguerre(f, n, gamma, beta, rel=1e-11):
    gamma, beta = float(gamma), float(beta)
    if n == 1:
        return integrate.quad(lambda x: f([x]) * laguerre_weight([x], gamma, beta), 0, math.inf,
                              epsabs=0, epsrel=rel, limit=200)[0]
    # ordered region x < y, doubled by symmetry
    inner = lambda y, x: f([x, y]) * laguerre_weight([x, y], gamma, beta)
    return 2 * integrate.dblquad(inner, 0, math.inf, lambda x: x, math.inf, epsabs=0, epsrel=rel)[0]


def integrate_jacobi(f, n, gamma1, gamma2, beta, rel=1e-11):
    g1, g2, beta = float(gamma1), float(gamma2), float(beta)
    if n == 1:
        return integrate.quad(lambda x: f([x]) * jacobi_weight([x], g1, g2, beta), 0, 1,
                              epsabs=0, epsrel=rel, limit=200)[0]
    inner = lambda y, x: f([x, y]) * jacobi_weight([x, y], g1, g2, beta)
    return 2 * integrate.dblquad(inner, 0, 1, lambda x: x, 1, epsabs=0, epsrel=rel)[0]


def as_float(v) -> float:
    return float(to_mpf(v))


def float_poly(poly):
    """Fast float evaluator for a SymmetricPoly, expanded over monomial orbits once."""
    from hardedge.symfun import orbit

    terms = [(as_float(c), a) for lam, c in poly.coeffs.items() for a in orbit(lam, poly.n_vars)]

    def f(xs):
        total = 0.0
        for c, a in terms:
            t = c
            for x, e in zip(xs, a):
                if e:
                    t *= x ** e
            total += t
        return total

    return f


def gauss_laguerre_pair(f, gamma: int, beta, points=40):
    """Exact-for-polynomials integral of f against the two-variable Laguerre weight, integer gamma.

    On x < y write y = x + s: the weight becomes x^g (x+s)^g s^beta e^{-x} e^{-s/2}, a
    polynomial in (x, s) against a product of generalized Laguerre weights.
    """
    from scipy.special import roots_genlaguerre

    xr, xw = roots_genlaguerre(points, 0)
    tr, tw = roots_genlaguerre(points, float(beta))
    total = 0.0
    for x, wx in zip(xr, xw):
        for t, wt in zip(tr, tw):
            y = x + 2 * t
            total += wx * wt * f([x, y]) * x ** gamma * y ** gamma
    # s = 2t contributes 2^(beta+1); the leading 2 restores the y < x half
    return 2 * total * 2 ** (1 + float(beta))


def _gauss_unit(points, a, b):
    """Nodes and weights for (1-x)^a x^b on [0, 1]."""
    from scipy.special import roots_jacobi

    t, w = roots_jacobi(points, a, b)
    return (1 + t) / 2, w / 2 ** (a + b + 1)


def gauss_jacobi_pair(f, gamma1: int, gamma2, beta, points=40):
    """Exact-for-polynomials integral against the two-variable Jacobi weight, integer gamma1.

    On x < y write y = x + (1-x)u, which factors the weight into x^g1 (1-x)^(2 g2 + beta + 1)
    times u^beta (1-u)^g2 times the polynomial (x + (1-x)u)^g1.
    """
    g2, beta = float(gamma2), float(beta)
    xr, xw = _gauss_unit(points, 2 * g2 + beta + 1, gamma1)
    ur, uw = _gauss_unit(points, g2, beta)
    total = 0.0
    for x, wx in zip(xr, xw):
        for u, wu in zip(ur, uw):
            y = x + (1 - x) * u
            total += wx * wu * f([x, y]) * y ** gamma1
    return 2 * total
