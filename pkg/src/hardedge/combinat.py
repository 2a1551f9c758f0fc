"""Partition combinatorics and scalar special functions.

Partitions are plain tuples of positive ints in non-increasing order; the empty
tuple is the empty partition.  Every enumeration in the package uses the
reverse-lexicographic order produced by :func:`partitions_of`.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import mpmath

from .scalar import ParameterError, Scalar, is_exact, one_like, rising, to_mpf, unify

Partition = tuple[int, ...]


def as_partition(parts: Iterable[int]) -> Partition:
    p = tuple(int(v) for v in parts if int(v) != 0)
    if any(v < 0 for v in p):
        raise ValueError(f"negative part in {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"parts must be non-increasing: {p}")
    return p


def weight(kappa: Partition) -> int:
    return sum(kappa)


def _parts_desc(k: int, max_part: int, max_len: int) -> Iterator[Partition]:
    if k == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(k, max_part), 0, -1):
        # remaining parts are at most `first`; skip when they cannot fill k - first
        if first * max_len < k:
            break
        for rest in _parts_desc(k - first, first, max_len - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions_of(k: int, max_len: int) -> tuple[Partition, ...]:
    """All partitions of ``k`` with at most ``max_len`` parts, reverse-lex order."""
    if k < 0 or max_len < 0:
        raise ValueError("k and max_len must be nonnegative")
    return tuple(_parts_desc(k, k, max_len))


@lru_cache(maxsize=None)
def partitions_in_box(kappa: Partition) -> tuple[Partition, ...]:
    """Partitions whose diagram fits inside ``kappa`` (sub-partitions), by degree then reverse-lex."""
    out = []
    for k in range(weight(kappa) + 1):
        for sigma in partitions_of(k, len(kappa)):
            if all(s <= c for s, c in zip(sigma, kappa)):
                out.append(sigma)
    return tuple(out)


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """True iff ``lam`` is dominated by ``mu`` (both partitions of the same integer)."""
    if weight(lam) != weight(mu):
        raise ValueError(f"dominance needs equal weights: |{lam}| != |{mu}|")
    s_l = s_m = 0
    for i in range(max(len(lam), len(mu))):
        s_l += lam[i] if i < len(lam) else 0
        s_m += mu[i] if i < len(mu) else 0
        if s_l > s_m:
            return False
    return True


def conjugate(kappa: Partition) -> Partition:
    if not kappa:
        return ()
    return tuple(sum(1 for part in kappa if part >= j) for j in range(1, kappa[0] + 1))


def boxes(kappa: Partition) -> Iterator[tuple[int, int]]:
    """Boxes (i, j) of the Ferrers diagram, 1-based."""
    for i, part in enumerate(kappa, start=1):
        for j in range(1, part + 1):
            yield i, j


def arm(kappa: Partition, i: int, j: int) -> int:
    return kappa[i - 1] - j


def leg(kappa: Partition, i: int, j: int) -> int:
    return sum(1 for r in range(i, len(kappa)) if kappa[r] >= j)


def hook_product_j(kappa: Partition, beta) -> Scalar:
    """Product of upper and lower beta-deformed hook lengths j(kappa; beta)."""
    (beta,) = unify(beta)
    if beta <= 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    alpha = 2 / beta
    out = one_like(beta)
    for i, j in boxes(kappa):
        a, l = arm(kappa, i, j), leg(kappa, i, j)
        out *= (l + alpha * (1 + a)) * (l + 1 + alpha * a)
    return out


def gen_pochhammer(a, kappa: Partition, beta) -> Scalar:
    """Generalized Pochhammer symbol prod_i (a - beta (i-1)/2)_{kappa_i}."""
    a, beta = unify(a, beta)
    if beta <= 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    out = one_like(a)
    for i, part in enumerate(kappa, start=1):
        out *= rising(a - beta * (i - 1) / 2, part)
    return out


def multivariate_gamma(a, n: int, beta):
    """Multivariate Gamma function, evaluated in high precision."""
    a, beta = unify(a, beta)
    g = GammaProduct.one()
    g = g * GammaProduct(pi_pow=beta * n * (n - 1) / 4)
    for i in range(1, n + 1):
        g = g * GammaProduct.gamma(a - beta * (i - 1) / 2)
    return to_mpf(g.value()) if not is_exact(g.value()) else g.value()


def square_partition(n: int, m: int) -> Partition:
    """The partition with ``m`` parts all equal to ``n`` (empty when n or m is 0)."""
    if n < 0 or m < 0:
        raise ValueError("square_partition needs n, m >= 0")
    return (n,) * m if n > 0 else ()


def multinomial(parts: Iterable[int]) -> int:
    parts = list(parts)
    out = math.factorial(sum(parts))
    for p in parts:
        out //= math.factorial(p)
    return out


def _is_nonpositive_int(x) -> bool:
    if is_exact(x):
        x = Fraction(x)
        return x.denominator == 1 and x <= 0
    return mpmath.isint(x) and x <= 0


@dataclass(frozen=True)
class GammaProduct:
    """A product  const * 2**pow2 * pi**pi_pow * prod Gamma(arg)**mult.

    Products of Gamma functions whose arguments differ by integers collapse to
    rational Pochhammer ratios, so Selberg-constant ratios stay exact whenever
    the underlying identity is rational.
    """

    const: Scalar = Fraction(1)
    pow2: Scalar = Fraction(0)
    pi_pow: Scalar = Fraction(0)
    gammas: tuple[tuple[Scalar, int], ...] = field(default=())

    @staticmethod
    def one() -> "GammaProduct":
        return GammaProduct()

    @staticmethod
    def gamma(arg, power: int = 1) -> "GammaProduct":
        (arg,) = unify(arg)
        if _is_nonpositive_int(arg):
            raise ParameterError(f"Gamma pole at {arg}")
        return GammaProduct(gammas=((arg, power),)).simplify()

    def __mul__(self, other: "GammaProduct") -> "GammaProduct":
        c, o = unify(self.const, other.const)
        p2a, p2b = unify(self.pow2, other.pow2)
        pia, pib = unify(self.pi_pow, other.pi_pow)
        return GammaProduct(c * o, p2a + p2b, pia + pib, self.gammas + other.gammas).simplify()

    def inverse(self) -> "GammaProduct":
        return GammaProduct(1 / self.const, -self.pow2, -self.pi_pow,
                            tuple((a, -m) for a, m in self.gammas))

    def __truediv__(self, other: "GammaProduct") -> "GammaProduct":
        return self * other.inverse()

    def scale(self, c) -> "GammaProduct":
        a, b = unify(self.const, c)
        return GammaProduct(a * b, self.pow2, self.pi_pow, self.gammas)

    def simplify(self) -> "GammaProduct":
        counts: Counter = Counter()
        for arg, m in self.gammas:
            counts[arg] += m
        const = self.const
        exact_args = [a for a in counts if is_exact(a)]
        # integer arguments become factorials
        for a in exact_args:
            if Fraction(a).denominator == 1 and a > 0 and counts[a]:
                f = math.factorial(int(a) - 1)
                const = const * f ** counts[a] if counts[a] > 0 else const / f ** (-counts[a])
                counts[a] = 0
        # pair up/down exponents whose arguments differ by an integer
        changed = True
        while changed:
            changed = False
            ups = [a for a in counts if counts[a] > 0 and is_exact(a)]
            downs = [a for a in counts if counts[a] < 0 and is_exact(a)]
            for u in ups:
                for d in downs:
                    diff = Fraction(u) - Fraction(d)
                    if diff.denominator != 1:
                        continue
                    k = int(diff)
                    # Gamma(u)/Gamma(d) = (d)_k for k >= 0, else 1/(u)_{-k}
                    const = const * rising(d, k) if k >= 0 else const / rising(u, -k)
                    counts[u] -= 1
                    counts[d] += 1
                    changed = True
                    break
                if changed:
                    break
        gam = tuple(sorted(((a, m) for a, m in counts.items() if m), key=lambda t: str(t[0])))
        return GammaProduct(const, self.pow2, self.pi_pow, gam)

    def is_rational(self) -> bool:
        return (not self.gammas and is_exact(self.const) and is_exact(self.pow2)
                and Fraction(self.pow2).denominator == 1 and self.pi_pow == 0)

    def value(self) -> Scalar:
        """Exact Fraction when the product is rational, otherwise an mpf."""
        if self.is_rational():
            return Fraction(self.const) * Fraction(2) ** int(self.pow2)
        out = to_mpf(self.const) * mpmath.power(2, to_mpf(self.pow2))
        if self.pi_pow != 0:
            out *= mpmath.power(mpmath.pi, to_mpf(self.pi_pow))
        for a, m in self.gammas:
            out *= mpmath.gamma(to_mpf(a)) ** m
        return out
