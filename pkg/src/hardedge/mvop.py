"""Multivariate Laguerre and Jacobi polynomials, Selberg constants, and special values.

Both families are built the same way: expand in C-normalized Jack polynomials
over the sub-partitions of kappa, impose orthogonality against every Jack
polynomial of a strictly smaller diagram, and fix the free scale by the constant
term.  Inner products reduce to weighted moments of single Jack polynomials,
which are exact for rational parameters.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

import mpmath

from .combinat import (
    GammaProduct,
    Partition,
    as_partition,
    gen_pochhammer,
    hook_product_j,
    partitions_in_box,
    partitions_of,
    square_partition,
    weight,
)
from .scalar import ParameterError, Scalar, is_exact, one_like, to_mpf, unify
from .symfun import (
    SymmetricPoly,
    evaluate,
    jack_at_identity,
    jack_expand,
    jack_table,
    monomial_product,
)

MVOP_CACHE_SIZE = 4096


@dataclass(frozen=True)
class LaguerreParams:
    n_vars: int
    gamma: Scalar
    beta: Scalar

    def __post_init__(self):
        g, b = unify(self.gamma, self.beta)
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "beta", b)
        if b <= 0:
            raise ParameterError(f"beta must be positive, got {b}")
        if g <= -1:
            raise ParameterError(f"gamma must exceed -1, got {g}")
        if self.n_vars < 1:
            raise ParameterError("n_vars must be >= 1")


@dataclass(frozen=True)
class JacobiParams:
    n_vars: int
    gamma1: Scalar
    gamma2: Scalar
    beta: Scalar

    def __post_init__(self):
        g1, g2, b = unify(self.gamma1, self.gamma2, self.beta)
        object.__setattr__(self, "gamma1", g1)
        object.__setattr__(self, "gamma2", g2)
        object.__setattr__(self, "beta", b)
        if b <= 0:
            raise ParameterError(f"beta must be positive, got {b}")
        if g1 <= -1 or g2 <= -1:
            raise ParameterError(f"gamma1, gamma2 must exceed -1, got {g1}, {g2}")
        if self.n_vars < 1:
            raise ParameterError("n_vars must be >= 1")


# ---------------------------------------------------------------------------
# Selberg normalization constants


def selberg_laguerre_product(n: int, gamma, beta) -> GammaProduct:
    """Normalizer of the Laguerre weight as a symbolic Gamma product."""
    gamma, beta = unify(gamma, beta)
    g = GammaProduct(pow2=-n * (gamma + 1 + beta * (n - 1) / 2))
    for i in range(n):
        g = g * GammaProduct.gamma(1 + beta / 2)
        g = g / GammaProduct.gamma(1 + beta * (i + 1) / 2)
        g = g / GammaProduct.gamma(gamma + 1 + beta * i / 2)
    return g


def selberg_jacobi_product(n: int, gamma1, gamma2, beta) -> GammaProduct:
    """Normalizer of the Jacobi weight as a symbolic Gamma product."""
    gamma1, gamma2, beta = unify(gamma1, gamma2, beta)
    g = GammaProduct.one()
    for i in range(n):
        g = g * GammaProduct.gamma(1 + beta / 2)
        g = g * GammaProduct.gamma(gamma1 + gamma2 + beta * (n + i - 1) / 2 + 2)
        g = g / GammaProduct.gamma(1 + beta * (i + 1) / 2)
        g = g / GammaProduct.gamma(1 + gamma1 + beta * i / 2)
        g = g / GammaProduct.gamma(1 + gamma2 + beta * i / 2)
    return g


def selberg_const_laguerre(n: int, gamma, beta) -> Scalar:
    return selberg_laguerre_product(n, gamma, beta).value()


def selberg_const_jacobi(n: int, gamma1, gamma2, beta) -> Scalar:
    return selberg_jacobi_product(n, gamma1, gamma2, beta).value()


# ---------------------------------------------------------------------------
# Closed-form special values


def laguerre_at_zero(kappa, gamma, beta, n_vars: int) -> Scalar:
    """Constant term of L_{kappa,gamma}^beta in n_vars variables."""
    kappa = as_partition(kappa)
    gamma, beta = unify(gamma, beta)
    k = weight(kappa)
    return ((2 / beta) ** (2 * k) * math.factorial(k) / hook_product_j(kappa, beta)
            * gen_pochhammer(beta * n_vars / 2, kappa, beta)
            * gen_pochhammer(1 + gamma + beta * (n_vars - 1) / 2, kappa, beta))


def laguerre_norm_sq(kappa, gamma, beta, n_vars: int) -> Scalar:
    """Closed-form squared norm of L_{kappa,gamma}^beta under the Laguerre weight."""
    kappa = as_partition(kappa)
    gamma, beta = unify(gamma, beta)
    n = n_vars
    k = weight(kappa)
    shift = 1 + gamma + beta * (n - 1) / 2
    rational = (Fraction(math.factorial(k)) ** 2 / (beta ** (2 * k) * hook_product_j(kappa, beta))
                * gen_pochhammer(beta * n / 2, kappa, beta) * gen_pochhammer(shift, kappa, beta))
    # the two multivariate Gamma factors enter without their pi powers (checked by quadrature at n = 2)
    g = GammaProduct(const=rational, pow2=2 * k + n * shift)
    for i in range(1, n + 1):
        g = g * GammaProduct.gamma(1 + beta * n / 2 - beta * (i - 1) / 2)
        g = g * GammaProduct.gamma(shift - beta * (i - 1) / 2)
        g = g / GammaProduct.gamma(1 + beta / 2)
    return g.value()


# ---------------------------------------------------------------------------
# Weighted Jack moments


def laguerre_jack_expectation(kappa: Partition, params: LaguerreParams) -> Scalar:
    """E[C_kappa] under the normalized Laguerre density (exact for rational parameters)."""
    n, gamma, beta = params.n_vars, params.gamma, params.beta
    a = gamma + 1 + beta * (n - 1) / 2
    return 2 ** weight(kappa) * gen_pochhammer(a, kappa, beta) * jack_at_identity(kappa, beta, n)


def jacobi_jack_expectation(kappa: Partition, params: JacobiParams) -> Scalar:
    """E[C_kappa] under the normalized Jacobi density (exact for rational parameters)."""
    n, g1, g2, beta = params.n_vars, params.gamma1, params.gamma2, params.beta
    a = g1 + 1 + beta * (n - 1) / 2
    c = g1 + g2 + 2 + beta * (n - 1)
    return (jack_at_identity(kappa, beta, n) * gen_pochhammer(a, kappa, beta)
            / gen_pochhammer(c, kappa, beta))


def jack_moment(kappa, weight_params: LaguerreParams | JacobiParams) -> Scalar:
    """Integral of C_kappa against the (unnormalized) weight over its domain."""
    kappa = as_partition(kappa)
    p = weight_params
    if isinstance(p, LaguerreParams):
        z = selberg_laguerre_product(p.n_vars, p.gamma, p.beta)
        e = laguerre_jack_expectation(kappa, p)
    else:
        z = selberg_jacobi_product(p.n_vars, p.gamma1, p.gamma2, p.beta)
        e = jacobi_jack_expectation(kappa, p)
    return (z.inverse().scale(e)).value()


def _expectation_fn(params) -> Callable[[Partition], Scalar]:
    if isinstance(params, LaguerreParams):
        return lambda kappa: laguerre_jack_expectation(kappa, params)
    return lambda kappa: jacobi_jack_expectation(kappa, params)


class _MomentTable:
    """Expectations of monomial symmetric functions, filled one degree at a time."""

    def __init__(self, params):
        self.params = params
        self.n = params.n_vars
        self.beta = params.beta
        self.expect = _expectation_fn(params)
        self.mono: dict[Partition, Scalar] = {}
        self.done: set[int] = set()
        self.pair: dict[tuple[Partition, Partition], Scalar] = {}

    def monomial(self, lam: Partition) -> Scalar:
        d = weight(lam)
        if d not in self.done:
            self._fill(d)
        return self.mono[lam]

    def _fill(self, d: int):
        table = jack_table(d, self.n, self.beta)
        # C_kappa is supported on lam <= kappa, so solve from the bottom of reverse-lex order
        for kappa in reversed(partitions_of(d, self.n)):
            ck = table[kappa]
            acc = self.expect(kappa)
            for lam, c in ck.coeffs.items():
                if lam != kappa:
                    acc -= c * self.mono[lam]
            self.mono[kappa] = acc / ck[kappa]
        self.done.add(d)

    def monomial_pair(self, lam: Partition, mu: Partition) -> Scalar:
        key = (lam, mu) if lam >= mu else (mu, lam)
        v = self.pair.get(key)
        if v is None:
            v = 0
            for nu, cnt in monomial_product(lam, mu, self.n):
                v += cnt * self.monomial(nu)
            self.pair[key] = v
        return v


def solve_linear(a: list[list], b: list) -> list:
    """Gaussian elimination over Fractions (first nonzero pivot) or mpf (partial pivoting)."""
    n = len(b)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    exact = all(is_exact(v) for row in m for v in row)
    for col in range(n):
        if exact:
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        else:
            piv = max(range(col, n), key=lambda r: abs(m[r][col]))
            if m[piv][col] == 0:
                piv = None
        if piv is None:
            raise ArithmeticError("singular orthogonality system")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        row_c = m[col]
        for r in range(col + 1, n):
            f = m[r][col]
            if f == 0:
                continue
            f = f / pv
            row_r = m[r]
            for j in range(col, n + 1):
                if row_c[j] != 0:
                    row_r[j] -= f * row_c[j]
    x = [0] * n
    for i in range(n - 1, -1, -1):
        s = m[i][n]
        for j in range(i + 1, n):
            if m[i][j] != 0:
                s -= m[i][j] * x[j]
        x[i] = s / m[i][i]
    return x


def _orthogonal_jack_coeffs(kappa: Partition, params) -> dict[Partition, Scalar]:
    """Jack-basis coefficients (leading coefficient 1) of the orthogonal polynomial for kappa."""
    beta, n = params.beta, params.n_vars
    if not kappa:
        return {(): one_like(beta)}
    subs = list(partitions_in_box(kappa))
    lower = [s for s in subs if s != kappa]
    jacks = {s: jack_expand(s, beta, n) for s in subs}
    moments = _MomentTable(params)
    # B[tau][mu] = sum_lam a_{tau,lam} <m_lam, m_mu>
    support = sorted({lam for s in subs for lam in jacks[s].coeffs})
    gram_rows = []
    rhs = []
    for tau in lower:
        b_row = {}
        for mu in support:
            v = 0
            for lam, a in jacks[tau].coeffs.items():
                v += a * moments.monomial_pair(lam, mu)
            b_row[mu] = v
        row = []
        for sigma in subs:
            g = 0
            for mu, a in jacks[sigma].coeffs.items():
                g += b_row[mu] * a
            row.append(g)
        # subs is ordered by degree, so kappa (the unique top-degree member) is last
        gram_rows.append(row[:-1])
        rhs.append(-row[-1])
    sol = solve_linear(gram_rows, rhs)
    out = {s: c for s, c in zip(lower, sol) if c != 0}
    out[kappa] = one_like(beta)
    return out


@lru_cache(maxsize=MVOP_CACHE_SIZE)
def _laguerre_jack(kappa: Partition, params: LaguerreParams) -> tuple[tuple[Partition, Scalar], ...]:
    coeffs = _orthogonal_jack_coeffs(kappa, params)
    target = laguerre_at_zero(kappa, params.gamma, params.beta, params.n_vars)
    s = target / coeffs[()]
    return tuple((k, v * s) for k, v in coeffs.items())


@lru_cache(maxsize=MVOP_CACHE_SIZE)
def _jacobi_jack(kappa: Partition, params: JacobiParams) -> tuple[tuple[Partition, Scalar], ...]:
    coeffs = _orthogonal_jack_coeffs(kappa, params)
    c0 = coeffs[()]
    return tuple((k, v / c0) for k, v in coeffs.items())


def _check_length(kappa: Partition, n_vars: int):
    if len(kappa) > n_vars:
        raise ParameterError(f"l({list(kappa)}) = {len(kappa)} exceeds n_vars = {n_vars}")


def laguerre_jack_coeffs(kappa, params: LaguerreParams) -> dict[Partition, Scalar]:
    """L_{kappa,gamma}^beta expanded in C-normalized Jack polynomials."""
    kappa = as_partition(kappa)
    _check_length(kappa, params.n_vars)
    return dict(_laguerre_jack(kappa, params))


def jacobi_jack_coeffs(kappa, params: JacobiParams) -> dict[Partition, Scalar]:
    """P_{kappa,gamma1,gamma2}^beta expanded in C-normalized Jack polynomials."""
    kappa = as_partition(kappa)
    _check_length(kappa, params.n_vars)
    return dict(_jacobi_jack(kappa, params))


def _to_monomial(coeffs: Mapping[Partition, Scalar], beta, n: int) -> SymmetricPoly:
    out: dict[Partition, Scalar] = {}
    for kappa, d in coeffs.items():
        for lam, c in jack_expand(kappa, beta, n).coeffs.items():
            out[lam] = out.get(lam, 0) + d * c
    return SymmetricPoly(n, out)


def laguerre_poly(kappa, params: LaguerreParams) -> SymmetricPoly:
    """Multivariate Laguerre polynomial L_{kappa,gamma}^beta in the monomial basis."""
    return _to_monomial(laguerre_jack_coeffs(kappa, params), params.beta, params.n_vars)


def jacobi_poly(kappa, params: JacobiParams) -> SymmetricPoly:
    """Multivariate Jacobi polynomial P_{kappa,gamma1,gamma2}^beta with P(0) = 1."""
    return _to_monomial(jacobi_jack_coeffs(kappa, params), params.beta, params.n_vars)


def scalar_matrix_poly(jack_coeffs: Mapping[Partition, Scalar], beta, n_vars: int, scale=1) -> list:
    """Ascending coefficients of x -> p(scale * x * I_n) for p given in the Jack basis."""
    deg = max((weight(k) for k in jack_coeffs), default=0)
    out = [0] * (deg + 1)
    for kappa, d in jack_coeffs.items():
        k = weight(kappa)
        out[k] += d * jack_at_identity(kappa, beta, n_vars) * scale ** k
    return out


# ---------------------------------------------------------------------------
# Variable reduction for square partitions


def reduce_vars_laguerre(n: int, nu: int, gamma, beta, a: int) -> tuple[Partition, Scalar]:
    """Return (n^(nu+a), ratio) with L_{n^(nu),gamma}(x) = ratio * L_{n^(nu+a),gamma-beta a/2}(x, 0^a)."""
    gamma, beta = unify(gamma, beta)
    new_gamma = gamma - beta * a / 2
    if new_gamma <= -1:
        raise ParameterError(f"reduced gamma {new_gamma} must exceed -1")
    left = laguerre_at_zero(square_partition(n, nu), gamma, beta, nu)
    right = laguerre_at_zero(square_partition(n, nu + a), new_gamma, beta, nu + a)
    return square_partition(n, nu + a), left / right


def reduce_vars_jacobi(n: int, nu: int, gamma1, gamma2, beta, a: int, b: int) -> tuple[Partition, Scalar]:
    """Return (n^(nu+a+b), ratio) with P_{n^(nu)}(x) = ratio * P_{n^(nu+a+b)}(x, 0^a, 1^b)."""
    gamma1, gamma2, beta = unify(gamma1, gamma2, beta)
    g1, g2 = gamma1 - beta * a / 2, gamma2 - beta * b / 2
    if g1 <= -1 or g2 <= -1:
        raise ParameterError(f"reduced parameters ({g1}, {g2}) must exceed -1")
    kappa = square_partition(n, nu + a + b)
    if b == 0:
        return kappa, one_like(beta)
    big = jacobi_poly(kappa, JacobiParams(nu + a + b, g1, g2, beta))
    at = evaluate(big, [0] * (nu + a) + [1] * b)
    return kappa, 1 / at


# ---------------------------------------------------------------------------
# Serialization


def poly_to_json(f: SymmetricPoly, **meta) -> dict:
    exact = all(is_exact(c) for c in f.coeffs.values())
    terms = []
    for lam, c in f.coeffs.items():
        if exact:
            c = Fraction(c)
            terms.append({"partition": list(lam), "num": str(c.numerator), "den": str(c.denominator)})
        else:
            terms.append({"partition": list(lam), "value_decimal": mpmath.nstr(to_mpf(c), mpmath.mp.dps + 3)})
    out = dict(meta)
    out.update({"n_vars": f.n_vars, "basis": "monomial", "field": "rational" if exact else "real",
                "terms": terms})
    return out


def poly_from_json(obj: Mapping) -> SymmetricPoly:
    if obj.get("basis", "monomial") != "monomial":
        raise ValueError(f"unsupported basis {obj.get('basis')!r}")
    coeffs = {}
    for t in obj["terms"]:
        lam = tuple(t["partition"])
        if "num" in t:
            coeffs[lam] = Fraction(int(t["num"]), int(t["den"]))
        else:
            coeffs[lam] = mpmath.mpf(t["value_decimal"])
    return SymmetricPoly(int(obj["n_vars"]), coeffs)


def dumps_poly(f: SymmetricPoly, **meta) -> str:
    return json.dumps(poly_to_json(f, **meta), indent=2)
