"""Field-generic scalars: exact rationals or high-precision mpmath reals.

A computation runs in exactly one mode.  Exact mode uses :class:`fractions.Fraction`;
high-precision mode uses :class:`mpmath.mpf`.  mpmath does not accept ``Fraction``
operands, so every public entry point passes its parameters through :func:`unify`
before doing arithmetic.
"""

from __future__ import annotations

import os
from fractions import Fraction
from numbers import Rational
from typing import Union

import mpmath
from mpmath import mp, mpf

Scalar = Union[Fraction, mpf]

DEFAULT_PRECISION_BITS = 256


def _env_bits() -> int:
    raw = os.environ.get("HARDEDGE_PRECISION_BITS")
    if not raw:
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if bits < 53:
        raise ValueError(f"HARDEDGE_PRECISION_BITS must be >= 53, got {bits}")
    return bits


def set_precision(bits: int) -> None:
    """Set the mantissa bits used by high-precision mode (process wide)."""
    mp.prec = int(bits)


def precision() -> int:
    return mp.prec


set_precision(_env_bits())


class ParameterError(ValueError):
    """A parameter lies outside the hypotheses of the requested computation."""


def is_exact(x) -> bool:
    return isinstance(x, (int, Rational)) and not isinstance(x, bool)


def parse_scalar(text: str | int | Fraction | mpf) -> Scalar:
    """Parse ``"p/q"``, a decimal string, or ``"e"`` into a scalar.

    Decimal strings are read exactly (``"0.25"`` becomes ``1/4``).
    """
    if isinstance(text, mpf):
        return text
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        return Fraction(text)
    s = str(text).strip()
    if s == "e":
        return +mpmath.e
    if s == "-e":
        return -mpmath.e
    try:
        return Fraction(s)
    except ValueError as exc:
        raise ParameterError(f"cannot parse scalar {text!r}") from exc


def to_mpf(x) -> mpf:
    if isinstance(x, mpf):
        return x
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, Rational):
        return mpf(int(x.numerator)) / int(x.denominator)
    return mpf(x)


def unify(*xs):
    """Bring all arguments into one field.

    Any mpf (or float) argument switches the whole tuple to high-precision mode;
    otherwise every argument becomes a Fraction.
    """
    if any(not is_exact(x) for x in xs):
        return tuple(to_mpf(x) for x in xs)
    return tuple(Fraction(x) for x in xs)


def one_like(x) -> Scalar:
    return mpf(1) if isinstance(x, mpf) else Fraction(1)


def zero_like(x) -> Scalar:
    return mpf(0) if isinstance(x, mpf) else Fraction(0)


def coerce_like(x, ref) -> Scalar:
    """Convert ``x`` into the field of ``ref``."""
    if isinstance(ref, mpf):
        return to_mpf(x)
    if isinstance(x, mpf):
        raise TypeError("cannot move a high-precision value into exact mode")
    return Fraction(x)


def is_integer_value(x) -> bool:
    if is_exact(x):
        return Fraction(x).denominator == 1
    return False


def is_zero(x, rel_tol=None) -> bool:
    if is_exact(x):
        return x == 0
    if rel_tol is None:
        return x == 0
    return abs(x) <= rel_tol


def rising(a, k: int):
    """Rising factorial (a)_k as a finite product."""
    out = one_like(a)
    for j in range(k):
        out *= a + j
    return out


def fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, mpf):
        return mpmath.nstr(x, 30)
    return str(x)
