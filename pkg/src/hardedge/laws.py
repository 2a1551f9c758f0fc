"""Closed-form smallest-eigenvalue laws of the beta-Laguerre and beta-Jacobi ensembles.

Every law has the shape

    value(x) = offset + constant * x**p * exp(-r x) * (1 - x)**q * poly(x)

with ``offset`` 1 for smallest-eigenvalue CDFs and 0 otherwise.  The polynomial
comes from a multivariate Laguerre or Jacobi polynomial indexed by a square
partition and evaluated at a multiple of the identity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath
import numpy as np

from .combinat import square_partition
from .mvop import (
    JacobiParams,
    LaguerreParams,
    jacobi_jack_coeffs,
    laguerre_at_zero,
    laguerre_jack_coeffs,
    scalar_matrix_poly,
    selberg_jacobi_product,
    selberg_laguerre_product,
)
from .scalar import ParameterError, Scalar, is_exact, parse_scalar, to_mpf, unify
from .symfun import hypergeometric_pfq
from .univariate import coeff_str, padd, pmul, ppow, pscale, psubs_one_minus, trim

KINDS = ("laguerre_cdf", "laguerre_pdf", "jacobi_cdf", "jacobi_pdf", "jacobi_largest_cdf")


@dataclass(frozen=True)
class DualParams:
    beta: Scalar
    gamma: Scalar


def dual_params(beta, gamma) -> DualParams:
    """beta -> 4/beta, gamma -> (2/beta)(gamma + 1) - 1; an involution."""
    beta, gamma = unify(beta, gamma)
    if beta <= 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    return DualParams(4 / beta, 2 * (gamma + 1) / beta - 1)


def _require_nonneg_int(name: str, v) -> int:
    if not is_exact(v) or Fraction(v).denominator != 1 or v < 0:
        raise ParameterError(f"{name} must be a nonnegative integer (closed form needs an integer "
                             f"exponent of x in the weight), got {v}")
    return int(v)


@dataclass(frozen=True)
class EigLaw:
    kind: str
    params: Mapping[str, Scalar]
    constant: Scalar
    poly: tuple
    power_exponent: Scalar = Fraction(0)
    exp_rate: Scalar = Fraction(0)
    one_minus_x_exponent: Scalar = Fraction(0)
    offset: int = 0

    @property
    def is_cdf(self) -> bool:
        return self.kind.endswith("cdf")

    @property
    def domain(self) -> tuple:
        return (0, None) if self.kind.startswith("laguerre") else (0, 1)

    def _body(self, x):
        p = Fraction(0)
        for c in reversed(self.poly):
            p = p * x + c
        return p

    def __call__(self, x) -> Scalar:
        """Evaluate exactly when possible, otherwise in high precision."""
        pe, r, q = self.power_exponent, self.exp_rate, self.one_minus_x_exponent
        # exp(-r x) is transcendental unless x = 0
        exact = (is_exact(x) and (r == 0 or x == 0) and is_exact(self.constant)
                 and all(is_exact(c) for c in self.poly)
                 and all(is_exact(v) and Fraction(v).denominator == 1 for v in (pe, q)))
        if exact:
            x = Fraction(x)
            return self.offset + self.constant * x ** int(pe) * (1 - x) ** int(q) * self._body(x)
        xm = to_mpf(x)
        body = mpmath.mpf(0)
        for c in reversed(self.poly):
            body = body * xm + to_mpf(c)
        out = to_mpf(self.constant) * body
        if pe != 0:
            out *= mpmath.power(xm, to_mpf(pe))
        if r != 0:
            out *= mpmath.exp(-to_mpf(r) * xm)
        if q != 0:
            out *= mpmath.power(1 - xm, to_mpf(q))
        return self.offset + out

    def evaluate_float(self, xs) -> np.ndarray:
        """Vectorized double-precision evaluation (used for KS statistics and plotting)."""
        xs = np.asarray(xs, dtype=float)
        cs = [float(to_mpf(c)) for c in self.poly]
        out = np.polynomial.polynomial.polyval(xs, cs) * float(to_mpf(self.constant))
        with np.errstate(divide="ignore", invalid="ignore"):
            pe, r, q = float(to_mpf(self.power_exponent)), float(to_mpf(self.exp_rate)), \
                float(to_mpf(self.one_minus_x_exponent))
            if pe:
                out = out * np.power(xs, pe)
            if r:
                out = out * np.exp(-r * xs)
            if q:
                out = out * np.power(np.clip(1 - xs, 0, None), q)
        out = self.offset + out
        # every CDF vanishes at the hard edge; avoid a 1e-16 cancellation residue there
        return np.where(xs <= 0, 0.0, out) if self.is_cdf else out

    def to_json(self) -> dict:
        d = {
            "kind": self.kind,
            "params": {k: coeff_str(v) for k, v in self.params.items()},
            "constant": coeff_str(self.constant),
            "offset": self.offset,
            "power_exponent": coeff_str(self.power_exponent),
            "poly_coeffs": [coeff_str(c) for c in self.poly],
        }
        if self.kind.startswith("laguerre"):
            d["exp_rate"] = coeff_str(self.exp_rate)
        else:
            d["one_minus_x_exponent"] = coeff_str(self.one_minus_x_exponent)
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @staticmethod
    def from_json(d: Mapping) -> "EigLaw":
        def rd(s):
            return parse_scalar(s) if "/" in s or "." not in s else mpmath.mpf(s)
        return EigLaw(
            kind=d["kind"],
            params={k: rd(v) for k, v in d["params"].items()},
            constant=rd(d["constant"]),
            poly=tuple(rd(c) for c in d["poly_coeffs"]),
            power_exponent=rd(d.get("power_exponent", "0")),
            exp_rate=rd(d.get("exp_rate", "0")),
            one_minus_x_exponent=rd(d.get("one_minus_x_exponent", "0")),
            offset=int(d.get("offset", 0)),
        )

    def __str__(self) -> str:
        content, poly = _primitive(self.poly)
        terms = []
        for i in reversed(range(len(poly))):
            c = poly[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            cs = coeff_str(c, STR_DIGITS)
            terms.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
        factors = [f"({coeff_str(self.constant * content, STR_DIGITS)})"]
        if self.power_exponent != 0:
            factors.append(f"x^({_exponent_str(self.power_exponent)})")
        if self.exp_rate != 0:
            factors.append(f"exp(-({coeff_str(self.exp_rate, STR_DIGITS)})*x)")
        if self.one_minus_x_exponent != 0:
            factors.append(f"(1-x)^({_exponent_str(self.one_minus_x_exponent)})")
        body = " * ".join(factors) + " * (" + (" + ".join(terms) or "0").replace("+ -", "- ") + ")"
        return f"{self.offset} + {body}" if self.offset else body


STR_DIGITS = 20


def _exponent_str(v) -> str:
    return str(int(to_mpf(v))) if mpmath.isint(to_mpf(v)) else coeff_str(v, STR_DIGITS)


def _primitive(poly: Sequence) -> tuple:
    """(content, primitive part): coprime integer coefficients, positive leading term; exact input only."""
    if not poly or not all(is_exact(c) for c in poly) or all(c == 0 for c in poly):
        return Fraction(1), tuple(poly)
    fr = [Fraction(c) for c in poly]
    num = math.gcd(*(c.numerator for c in fr))
    den = math.lcm(*(c.denominator for c in fr))
    content = Fraction(num, den) * (1 if fr[-1] > 0 else -1)
    return content, tuple(c / content for c in fr)


# ---------------------------------------------------------------------------
# Laguerre


def _half(n: int, like):
    return Fraction(n, 2) if is_exact(like) else to_mpf(n) / 2


def laguerre_square_poly(n: int, m: int, gamma, beta, scale) -> list:
    """Ascending coefficients of x -> L_{n^(m),gamma}^beta(scale * x * I_m); [1] for the empty partition."""
    gamma, beta, scale = unify(gamma, beta, scale)
    kappa = square_partition(n, m)
    if not kappa:
        return [gamma * 0 + 1]
    jc = laguerre_jack_coeffs(kappa, LaguerreParams(m, gamma, beta))
    return trim(scalar_matrix_poly(jc, beta, m, scale))


def _laguerre_duals(beta, gamma):
    g = _require_nonneg_int("gamma", gamma)
    beta, gamma = unify(beta, gamma)
    if beta <= 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    return beta, gamma, g, 4 / beta


def laguerre_smallest_cdf(n: int, beta, gamma) -> EigLaw:
    """F(x) = 1 - exp(-n x/2) L_A(-(2x/beta) I_gamma) / L_A(0)."""
    beta, gamma, g, bt = _laguerre_duals(beta, gamma)
    if n < 1:
        raise ParameterError("n must be >= 1")
    poly = laguerre_square_poly(n, g, 2 / beta - 1, bt, -2 / beta)
    return EigLaw("laguerre_cdf", {"n": Fraction(n), "beta": beta, "gamma": gamma},
                  constant=-1 / poly[0], poly=tuple(poly), exp_rate=_half(n, beta), offset=1)


def laguerre_pdf_constant(n: int, beta, gamma):
    """n Z_{n,gamma} / (Z_{n-1,gamma+beta} L_B(0)), exact when the Gamma ratio is rational."""
    beta, gamma, g, bt = _laguerre_duals(beta, gamma)
    z = selberg_laguerre_product(n, gamma, beta)
    if n > 1:
        z = z / selberg_laguerre_product(n - 1, gamma + beta, beta)
    lb0 = laguerre_at_zero(square_partition(n - 1, g), 2 / beta + 1, bt, g) if g else 1
    return z.scale(n).value() / lb0


def laguerre_smallest_pdf(n: int, beta, gamma) -> EigLaw:
    """f(x) = K x^gamma exp(-n x/2) L_B(-(2x/beta) I_gamma)."""
    beta, gamma, g, bt = _laguerre_duals(beta, gamma)
    if n < 1:
        raise ParameterError("n must be >= 1")
    poly = laguerre_square_poly(n - 1, g, 2 / beta + 1, bt, -2 / beta)
    k = laguerre_pdf_constant(n, beta, g)
    return EigLaw("laguerre_pdf", {"n": Fraction(n), "beta": beta, "gamma": gamma},
                  constant=k, poly=tuple(poly), power_exponent=gamma, exp_rate=_half(n, beta))


# ---------------------------------------------------------------------------
# Jacobi


def jacobi_square_poly(n: int, m: int, gamma1, gamma2, beta) -> list:
    """Ascending coefficients of y -> P_{n^(m),gamma1,gamma2}^beta(y I_m); [1] for the empty partition."""
    gamma1, gamma2, beta = unify(gamma1, gamma2, beta)
    kappa = square_partition(n, m)
    if not kappa:
        return [beta * 0 + 1]
    jc = jacobi_jack_coeffs(kappa, JacobiParams(m, gamma1, gamma2, beta))
    return trim(scalar_matrix_poly(jc, beta, m))


def clear_moebius(coeffs: Sequence, degree: int) -> list:
    """Coefficients of (1-x)^degree * sum_k a_k (-x/(1-x))^k, a genuine polynomial when deg a <= degree."""
    if len(coeffs) - 1 > degree:
        raise ArithmeticError("polynomial degree exceeds the available (1-x) power")
    out: list = []
    minus_x = [0, -1]
    one_minus = [1, -1]
    for k, a in enumerate(coeffs):
        if a == 0:
            continue
        term = pmul(ppow(minus_x, k), ppow(one_minus, degree - k))
        out = padd(out, pscale(term, a))
    return out


def _jacobi_args(beta, gamma1, gamma2):
    g1 = _require_nonneg_int("gamma1", gamma1)
    beta, gamma1, gamma2 = unify(beta, gamma1, gamma2)
    if beta <= 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    if gamma2 <= -1:
        raise ParameterError(f"gamma2 must exceed -1, got {gamma2}")
    return beta, gamma1, gamma2, g1


def jacobi_smallest_cdf(n: int, beta, gamma1, gamma2) -> EigLaw:
    """F(x) = 1 - (1-x)^{n(1+g1+g2+beta(n-1)/2)} P_A(-x/(1-x) I_{g1}), denominators cleared."""
    beta, gamma1, gamma2, g1 = _jacobi_args(beta, gamma1, gamma2)
    if n < 1:
        raise ParameterError("n must be >= 1")
    dual = dual_params(beta, gamma2)
    pa = jacobi_square_poly(n, g1, 2 / beta - 1, dual.gamma, dual.beta)
    poly = clear_moebius(pa, n * g1)
    q = n * (1 + gamma2 + beta * (n - 1) / 2)
    return EigLaw("jacobi_cdf", {"n": Fraction(n), "beta": beta, "gamma1": gamma1, "gamma2": gamma2},
                  constant=-1 / pa[0], poly=tuple(poly), one_minus_x_exponent=q, offset=1)


def jacobi_pdf_constant(n: int, beta, gamma1, gamma2):
    """n Z^J_{n,g1,g2} / Z^J_{n-1,g1+beta,g2}."""
    beta, gamma1, gamma2, _ = _jacobi_args(beta, gamma1, gamma2)
    z = selberg_jacobi_product(n, gamma1, gamma2, beta)
    if n > 1:
        z = z / selberg_jacobi_product(n - 1, gamma1 + beta, gamma2, beta)
    return z.scale(n).value()


def jacobi_smallest_pdf(n: int, beta, gamma1, gamma2) -> EigLaw:
    """f(x) = K x^{g1} (1-x)^{n-1+n g2+beta n(n-1)/2} * cleared P_B."""
    beta, gamma1, gamma2, g1 = _jacobi_args(beta, gamma1, gamma2)
    if n < 1:
        raise ParameterError("n must be >= 1")
    dual = dual_params(beta, gamma2)
    pb = jacobi_square_poly(n - 1, g1, 2 / beta + 1, dual.gamma, dual.beta)
    poly = clear_moebius(pb, (n - 1) * g1)
    q = n - 1 + n * gamma2 + beta * n * (n - 1) / 2
    return EigLaw("jacobi_pdf", {"n": Fraction(n), "beta": beta, "gamma1": gamma1, "gamma2": gamma2},
                  constant=jacobi_pdf_constant(n, beta, g1, gamma2), poly=tuple(poly),
                  power_exponent=gamma1, one_minus_x_exponent=q)


def jacobi_largest_cdf(n: int, beta, gamma1, gamma2) -> EigLaw:
    """P(x_max <= x) = 1 - F_min(1 - x) with (gamma1, gamma2) exchanged; needs integer gamma2."""
    swapped = jacobi_smallest_cdf(n, beta, gamma2, gamma1)
    beta, gamma1, gamma2 = unify(beta, gamma1, gamma2)
    # 1 - F_swapped(1-x) = -constant * x^q * poly(1-x)
    poly = psubs_one_minus(list(swapped.poly))
    return EigLaw("jacobi_largest_cdf",
                  {"n": Fraction(n), "beta": beta, "gamma1": gamma1, "gamma2": gamma2},
                  constant=-swapped.constant, poly=tuple(poly),
                  power_exponent=swapped.one_minus_x_exponent, offset=0)


# ---------------------------------------------------------------------------
# Independent hypergeometric oracles


def oracle_jacobi_cdf_hypergeometric(n: int, beta, gamma1, gamma2, x) -> Scalar:
    """Smallest-eigenvalue CDF via the terminating 2F1^beta of matrix argument (1-x) I_n."""
    _require_nonneg_int("gamma1", gamma1)
    beta, gamma1, gamma2, x = unify(beta, gamma1, gamma2, x)
    if x == 0:
        return x * 0
    if x == 1:
        return x * 0 + 1
    const = mpmath.mpf(1)
    bf, g1f, g2f = to_mpf(beta), to_mpf(gamma1), to_mpf(gamma2)
    for i in range(n):
        const *= (mpmath.gamma(g1f + g2f + 2 + bf * (2 * n - 2 - i) / 2) * mpmath.gamma(bf * (n - 1 - i) / 2 + 1)
                  / (mpmath.gamma(g2f + 2 + bf * (2 * n - 2 - i) / 2)
                     * mpmath.gamma(g1f + 1 + bf * (n - i - 1) / 2)))
    series = hypergeometric_pfq([gamma2 + 1 + beta * (n - 1) / 2, -gamma1],
                                [gamma2 + 2 + beta * (n - 1)], beta, [1 - x] * n)
    tail = to_mpf(1 - x) ** (n * (to_mpf(gamma2) + 1 + to_mpf(beta) * (n - 1) / 2))
    return 1 - const * tail * to_mpf(series)


def oracle_laguerre_pdf_beta1(n: int, gamma, x) -> Scalar:
    """Unnormalized beta=1 density x^{n gamma} e^{-xn/2} 2F0(-gamma, 1+n/2; -2 I_{n-1}/x)."""
    g = _require_nonneg_int("gamma", parse_scalar(gamma) if isinstance(gamma, str) else gamma)
    (x,) = unify(x)
    if x <= 0:
        raise ParameterError("x must be positive")
    xm = to_mpf(x)
    if n == 1:
        series = mpmath.mpf(1)
    else:
        series = to_mpf(hypergeometric_pfq([-g, 1 + Fraction(n, 2)], [], 1, [-2 / x] * (n - 1)))
    return xm ** (n * g) * mpmath.exp(-xm * n / 2) * series


def law_for(kind: str, n: int, beta, **params) -> EigLaw:
    if kind == "laguerre_cdf":
        return laguerre_smallest_cdf(n, beta, params["gamma"])
    if kind == "laguerre_pdf":
        return laguerre_smallest_pdf(n, beta, params["gamma"])
    if kind == "jacobi_cdf":
        return jacobi_smallest_cdf(n, beta, params["gamma1"], params["gamma2"])
    if kind == "jacobi_pdf":
        return jacobi_smallest_pdf(n, beta, params["gamma1"], params["gamma2"])
    if kind == "jacobi_largest_cdf":
        return jacobi_largest_cdf(n, beta, params["gamma1"], params["gamma2"])
    raise ParameterError(f"unknown law kind {kind!r}")
