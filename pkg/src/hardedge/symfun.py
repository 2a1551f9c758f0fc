"""Symmetric polynomials in the monomial basis, Jack polynomials, and pFq of matrix argument."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Mapping, Sequence

from .combinat import (
    Partition,
    as_partition,
    dominance_leq,
    gen_pochhammer,
    multinomial,
    partitions_of,
    weight,
)
from .scalar import ParameterError, Scalar, coerce_like, is_exact, one_like, unify, zero_like

JACK_CACHE_SIZE = 4096


class DegenerateEigenvalueError(ArithmeticError):
    """Two partitions in one Jack recurrence share an eigenvalue."""


def _pad(lam: Partition, n: int) -> tuple[int, ...]:
    return tuple(lam) + (0,) * (n - len(lam))


@lru_cache(maxsize=None)
def orbit(lam: Partition, n: int) -> tuple[tuple[int, ...], ...]:
    """Distinct exponent vectors of the monomial symmetric function m_lam in n variables."""
    if len(lam) > n:
        return ()
    return tuple(sorted(set(permutations(_pad(lam, n))), reverse=True))


@lru_cache(maxsize=None)
def orbit_size(lam: Partition, n: int) -> int:
    if len(lam) > n:
        return 0
    counts = defaultdict(int)
    for v in _pad(lam, n):
        counts[v] += 1
    out = math.factorial(n)
    for c in counts.values():
        out //= math.factorial(c)
    return out


@lru_cache(maxsize=200_000)
def monomial_product(lam: Partition, mu: Partition, n: int) -> tuple[tuple[Partition, int], ...]:
    """Integer structure constants of m_lam * m_mu in n variables."""
    counts: dict[Partition, int] = defaultdict(int)
    mu_orbit = orbit(mu, n)
    # coefficient of x^nu (nu sorted) = #{(a, b) in orbit(lam) x orbit(mu): a + b = nu}
    for a in orbit(lam, n):
        for b in mu_orbit:
            s = tuple(x + y for x, y in zip(a, b))
            if all(s[i] >= s[i + 1] for i in range(n - 1)):
                counts[as_partition(s)] += 1
    return tuple(sorted(counts.items(), reverse=True))


@dataclass(frozen=True)
class SymmetricPoly:
    """A symmetric polynomial in ``n_vars`` variables, stored in the monomial basis."""

    n_vars: int
    coeffs: Mapping[Partition, Scalar]

    def __post_init__(self):
        if self.n_vars < 1:
            raise ValueError("n_vars must be >= 1")
        clean = {}
        for lam, c in self.coeffs.items():
            lam = as_partition(lam)
            if len(lam) > self.n_vars:
                raise ValueError(f"partition {lam} has more than {self.n_vars} parts")
            if c != 0:
                clean[lam] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), key=_order_key)))

    @staticmethod
    def constant(c, n_vars: int) -> "SymmetricPoly":
        return SymmetricPoly(n_vars, {(): c})

    @staticmethod
    def monomial(lam, n_vars: int, c=Fraction(1)) -> "SymmetricPoly":
        return SymmetricPoly(n_vars, {as_partition(lam): c})

    def __getitem__(self, lam) -> Scalar:
        return self.coeffs.get(as_partition(lam), 0)

    def __iter__(self):
        return iter(self.coeffs.items())

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricPoly):
            return NotImplemented
        return self.n_vars == other.n_vars and self.coeffs == other.coeffs

    __hash__ = None

    def _check(self, other: "SymmetricPoly"):
        if self.n_vars != other.n_vars:
            raise ValueError(f"n_vars mismatch: {self.n_vars} vs {other.n_vars}")

    def __add__(self, other: "SymmetricPoly") -> "SymmetricPoly":
        self._check(other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, 0) + c
        return SymmetricPoly(self.n_vars, out)

    def __neg__(self) -> "SymmetricPoly":
        return SymmetricPoly(self.n_vars, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "SymmetricPoly") -> "SymmetricPoly":
        return self + (-other)

    def scale(self, c) -> "SymmetricPoly":
        return SymmetricPoly(self.n_vars, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymmetricPoly):
            return msym_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    @property
    def degree(self) -> int:
        return max((weight(k) for k in self.coeffs), default=-1)

    def homogeneous(self, k: int) -> "SymmetricPoly":
        return SymmetricPoly(self.n_vars, {lam: c for lam, c in self.coeffs.items() if weight(lam) == k})

    def constant_term(self) -> Scalar:
        return self.coeffs.get((), 0)

    def __repr__(self) -> str:
        terms = ", ".join(f"{list(k)}: {v}" for k, v in self.coeffs.items())
        return f"SymmetricPoly(n_vars={self.n_vars}, {{{terms}}})"


def _order_key(item):
    lam = item[0]
    # by degree descending, then reverse-lex within a degree
    return (-weight(lam), tuple(-p for p in lam))


def msym_mul(f: SymmetricPoly, g: SymmetricPoly) -> SymmetricPoly:
    """Product of two symmetric polynomials via monomial orbit expansion."""
    if f.n_vars != g.n_vars:
        raise ValueError(f"n_vars mismatch: {f.n_vars} vs {g.n_vars}")
    n = f.n_vars
    out: dict[Partition, Scalar] = {}
    for lam, a in f.coeffs.items():
        for mu, b in g.coeffs.items():
            ab = a * b
            for nu, cnt in monomial_product(lam, mu, n):
                out[nu] = out.get(nu, 0) + cnt * ab
    return SymmetricPoly(n, out)


def evaluate(f: SymmetricPoly, point: Sequence) -> Scalar:
    """Evaluate ``f`` at a point by summing monomial orbits."""
    point = list(point)
    if len(point) != f.n_vars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.n_vars} variables")
    total = 0
    for lam, c in f.coeffs.items():
        s = 0
        for a in orbit(lam, f.n_vars):
            term = 1
            for x, e in zip(point, a):
                if e:
                    term = term * x ** e
            s = s + term
        total = total + c * s
    return total


def scalar_matrix_coeffs(f: SymmetricPoly) -> list:
    """Coefficients (ascending) of the univariate polynomial x -> f(x I)."""
    deg = max(f.degree, 0)
    out = [0] * (deg + 1)
    for lam, c in f.coeffs.items():
        out[weight(lam)] += c * orbit_size(lam, f.n_vars)
    return out


def eval_scalar_matrix(f: SymmetricPoly, x) -> Scalar:
    """f(x I_n)."""
    total = 0
    for k, c in enumerate(scalar_matrix_coeffs(f)):
        total = total + c * x ** k
    return total


# ---------------------------------------------------------------------------
# Jack polynomials


def operator_diagonal(mu: Partition, n: int, beta) -> Scalar:
    """Diagonal entry of sum x_i^2 d_i^2 + beta sum_{i!=j} x_i^2/(x_i-x_j) d_i on m_mu."""
    return sum(m * (m - 1) for m in mu) + beta * sum(m * (n - i) for i, m in enumerate(mu, start=1))


@lru_cache(maxsize=None)
def operator_offdiagonal(mu: Partition, n: int) -> tuple[tuple[Partition, int], ...]:
    """Sources nu and integer weights r with [m_mu] (operator m_nu) = beta * r, nu != mu.

    For a variable pair holding exponents (p, q), p > q, the symmetric
    operator term produces r = p - q times every intermediate pair
    (q + k, p - k), 0 < k < r.
    """
    mp_ = _pad(mu, n)
    acc: dict[Partition, int] = defaultdict(int)
    for i in range(n):
        for j in range(i + 1, n):
            s = mp_[i] + mp_[j]
            for q in range(min(mp_[i], mp_[j])):
                p = s - q
                src = list(mp_)
                src[i], src[j] = p, q
                nu = as_partition(sorted(src, reverse=True))
                acc[nu] += p - q
    return tuple(sorted(acc.items(), reverse=True))


@lru_cache(maxsize=JACK_CACHE_SIZE)
def jack_table(k: int, n: int, beta) -> dict[Partition, SymmetricPoly]:
    """C-normalized Jack polynomials for every partition of ``k`` with at most ``n`` parts.

    Each polynomial comes from the triangular recurrence the eigen-operator
    induces on monomials; the global scale per partition is fixed afterwards by
    requiring sum_kappa C_kappa = (x_1 + ... + x_n)^k.
    """
    (beta,) = unify(beta)
    if beta <= 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    parts = partitions_of(k, n)
    one = one_like(beta)
    monic: dict[Partition, dict[Partition, Scalar]] = {}
    for idx, kappa in enumerate(parts):
        e_kappa = operator_diagonal(kappa, n, beta)
        c: dict[Partition, Scalar] = {kappa: one}
        for mu in parts[idx + 1:]:
            if not dominance_leq(mu, kappa):
                continue
            rhs = 0
            for nu, r in operator_offdiagonal(mu, n):
                cv = c.get(nu)
                if cv is not None:
                    rhs = rhs + r * cv
            if rhs == 0:
                continue
            gap = e_kappa - operator_diagonal(mu, n, beta)
            if gap == 0:
                raise DegenerateEigenvalueError(f"eigenvalue collision between {kappa} and {mu}")
            c[mu] = beta * rhs / gap
        monic[kappa] = c
    # scale factors from (sum x)^k = sum_kappa s_kappa P_kappa, triangular in reverse-lex order
    scale: dict[Partition, Scalar] = {}
    for mu in parts:
        target = multinomial(mu) * one
        for kappa, s in scale.items():
            target -= s * monic[kappa].get(mu, 0)
        scale[mu] = target
    return {kappa: SymmetricPoly(n, {lam: v * scale[kappa] for lam, v in monic[kappa].items()})
            for kappa in parts}


def jack_expand(kappa, beta, n_vars: int) -> SymmetricPoly:
    """C-normalized Jack polynomial C_kappa^beta in ``n_vars`` variables."""
    kappa = as_partition(kappa)
    if len(kappa) > n_vars:
        raise ValueError(f"l({kappa}) > n_vars = {n_vars}")
    (beta,) = unify(beta)
    return jack_table(weight(kappa), n_vars, beta)[kappa]


@lru_cache(maxsize=JACK_CACHE_SIZE)
def _jack_at_identity(kappa: Partition, beta, n: int):
    return sum(c * orbit_size(lam, n) for lam, c in jack_expand(kappa, beta, n).coeffs.items())


def jack_at_identity(kappa, beta, n_vars: int) -> Scalar:
    """C_kappa(I_n)."""
    (beta,) = unify(beta)
    return _jack_at_identity(as_partition(kappa), beta, n_vars)


def jack_at_scalar_matrix(kappa, beta, n_vars: int, x) -> Scalar:
    """C_kappa(x I_n) = x^{|kappa|} C_kappa(I_n)."""
    kappa = as_partition(kappa)
    return jack_at_identity(kappa, beta, n_vars) * x ** weight(kappa)


def to_jack_basis(f: SymmetricPoly, beta) -> dict[Partition, Scalar]:
    """Coefficients d with f = sum_kappa d_kappa C_kappa^beta (triangular back-substitution)."""
    (beta,) = unify(beta)
    n = f.n_vars
    out: dict[Partition, Scalar] = {}
    for k in range(max(f.degree, 0) + 1):
        part = f.homogeneous(k)
        if not part.coeffs:
            continue
        table = jack_table(k, n, beta)
        residual = dict(part.coeffs)
        for mu in partitions_of(k, n):
            r = residual.get(mu, 0)
            if r == 0:
                continue
            jm = table[mu]
            d = r / jm[mu]
            out[mu] = d
            for lam, c in jm.coeffs.items():
                residual[lam] = residual.get(lam, 0) - d * c
    return out


def from_jack_basis(coeffs: Mapping[Partition, Scalar], beta, n_vars: int) -> SymmetricPoly:
    """sum_kappa d_kappa C_kappa^beta as a monomial-basis polynomial."""
    (beta,) = unify(beta)
    out: dict[Partition, Scalar] = {}
    for kappa, d in coeffs.items():
        for lam, c in jack_expand(kappa, beta, n_vars).coeffs.items():
            out[lam] = out.get(lam, 0) + d * c
    return SymmetricPoly(n_vars, out)


# ---------------------------------------------------------------------------
# Hypergeometric functions of matrix argument


@dataclass(frozen=True)
class SeriesValue:
    value: Scalar
    terminated: bool
    degree: int


def _termination_degree(a_params, n: int):
    """Highest degree with a nonzero term when some numerator is a nonpositive integer."""
    best = None
    for a in a_params:
        if is_exact(a) and Fraction(a).denominator == 1 and a <= 0:
            m = int(-a)
            best = m * n if best is None else min(best, m * n)
    return best


def hypergeometric_pfq(a: Sequence, b: Sequence, beta, point: Sequence, max_degree: int | None = None,
                       full: bool = False):
    """Truncated (or terminating) pFq^beta of matrix argument with eigenvalues ``point``.

    When a numerator parameter is a nonpositive integer -m the series stops at
    degree m * n; that degree is used even when ``max_degree`` is larger, and
    the result is flagged as exact.
    """
    n = len(point)
    vals = unify(beta, *a, *b, *point)
    beta = vals[0]
    a = vals[1:1 + len(a)]
    b = vals[1 + len(a):1 + len(a) + len(b)]
    point = vals[1 + len(a) + len(b):]
    term_deg = _termination_degree(a, n)
    if term_deg is None and max_degree is None:
        raise ParameterError("non-terminating series needs max_degree")
    degree = term_deg if term_deg is not None and (max_degree is None or term_deg <= max_degree) else max_degree
    terminated = term_deg is not None and degree == term_deg
    total = zero_like(beta)
    kfact = 1
    for k in range(degree + 1):
        if k:
            kfact *= k
        for kappa in partitions_of(k, n):
            num = one_like(beta)
            for ai in a:
                num *= gen_pochhammer(ai, kappa, beta)
            if num == 0:
                continue
            den = coerce_like(kfact, beta)
            for bj in b:
                pb = gen_pochhammer(bj, kappa, beta)
                if pb == 0:
                    raise ParameterError(f"vanishing denominator Pochhammer at kappa={kappa}")
                den *= pb
            total += num / den * evaluate(jack_expand(kappa, beta, n), point)
    if full:
        return SeriesValue(total, terminated, degree)
    return total
