"""Univariate polynomials (ascending coefficient lists) and exact rational functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
import sympy

from .scalar import is_exact, to_mpf

_X = sympy.Symbol("x")


def trim(p: Sequence) -> list:
    out = list(p)
    while out and out[-1] == 0:
        out.pop()
    return out


def padd(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def pscale(p: Sequence, c) -> list:
    return trim([c * v for v in p])


def psub(p: Sequence, q: Sequence) -> list:
    return padd(p, pscale(q, -1))


def pmul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def ppow(p: Sequence, k: int) -> list:
    out: list = [1]
    for _ in range(k):
        out = pmul(out, p)
    return out


def pderiv(p: Sequence) -> list:
    return trim([i * p[i] for i in range(1, len(p))])


def peval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pshift_x(p: Sequence, k: int) -> list:
    """Multiply by x**k."""
    return trim([0] * k + list(p)) if p else []


def psubs_one_minus(p: Sequence) -> list:
    """Coefficients of p(1 - x)."""
    out: list = []
    base = [1, -1]
    power: list = [1]
    for c in p:
        out = padd(out, pscale(power, c))
        power = pmul(power, base)
    return out


def coeff_str(c, digits: int | None = None) -> str:
    """Exact rational text, or a decimal that round-trips at the working precision."""
    if is_exact(c):
        return str(Fraction(c))
    return mpmath.nstr(to_mpf(c), digits or mpmath.mp.dps + 3)


def _to_sympy(p: Sequence) -> sympy.Poly:
    return sympy.Poly([sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                       for c in reversed(p)] or [0], _X, domain="QQ")


def _from_sympy(p: sympy.Poly) -> list:
    return trim([Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())])


@dataclass(frozen=True)
class UnivariateRational:
    """Exact rational function num/den over Q in canonical form (gcd 1, monic denominator)."""

    num: tuple
    den: tuple

    @staticmethod
    def make(num: Sequence, den: Sequence = (1,)) -> "UnivariateRational":
        n, d = _to_sympy(num), _to_sympy(den)
        if d.is_zero:
            raise ZeroDivisionError("zero denominator")
        return UnivariateRational._canonical(n, d)

    @staticmethod
    def _canonical(n: sympy.Poly, d: sympy.Poly) -> "UnivariateRational":
        g = sympy.gcd(n, d)
        if not g.is_one and not n.is_zero:
            n, d = n.exquo(g), d.exquo(g)
        if n.is_zero:
            d = sympy.Poly(1, _X, domain="QQ")
        lc = d.LC()
        return UnivariateRational(tuple(_from_sympy(n * (1 / lc))), tuple(_from_sympy(d * (1 / lc))))

    @staticmethod
    def poly(p: Sequence) -> "UnivariateRational":
        return UnivariateRational.make(p, (1,))

    @staticmethod
    def const(c) -> "UnivariateRational":
        return UnivariateRational.make((c,), (1,))

    @staticmethod
    def x() -> "UnivariateRational":
        return UnivariateRational.make((0, 1), (1,))

    def _sp(self):
        return _to_sympy(self.num), _to_sympy(self.den)

    def __add__(self, other):
        other = _lift(other)
        a, b = self._sp()
        c, d = other._sp()
        return UnivariateRational._canonical(a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self):
        return UnivariateRational(tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        a, b = self._sp()
        c, d = other._sp()
        return UnivariateRational._canonical(a * c, b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        a, b = self._sp()
        c, d = other._sp()
        return UnivariateRational._canonical(a * d, b * c)

    def __pow__(self, k: int):
        out = UnivariateRational.const(1)
        for _ in range(k):
            out = out * self
        return out

    def deriv(self) -> "UnivariateRational":
        a, b = self._sp()
        return UnivariateRational._canonical(a.diff(_X) * b - a * b.diff(_X), b * b)

    def is_zero(self) -> bool:
        return not self.num

    def __call__(self, x):
        return peval(self.num, x) / peval(self.den, x)

    def degree(self) -> int:
        """Degree of the numerator (-1 for the zero function)."""
        return len(self.num) - 1

    def __str__(self) -> str:
        n = sympy.Poly(list(reversed([sympy.Rational(str(c)) for c in self.num])) or [0], _X).as_expr()
        d = sympy.Poly(list(reversed([sympy.Rational(str(c)) for c in self.den])), _X).as_expr()
        return str(n) if d == 1 else f"({n})/({d})"


def _lift(v) -> UnivariateRational:
    return v if isinstance(v, UnivariateRational) else UnivariateRational.const(v)
