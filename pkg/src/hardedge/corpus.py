"""Reference polynomial corpus: explicit multivariate polynomials and their scalar-matrix evaluations.

Each entry records how to compute the polynomial and the published reference
coefficients.  Golden fixtures (computed output, frozen) live in ``fixtures/``.
Scalar-matrix evaluations are stored as one-variable polynomials, so a single
JSON schema covers the whole corpus.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction as F
from importlib import resources
from typing import Callable, Mapping

import mpmath

from .mvop import (
    JacobiParams,
    LaguerreParams,
    jacobi_jack_coeffs,
    jacobi_poly,
    laguerre_jack_coeffs,
    laguerre_poly,
    poly_from_json,
    poly_to_json,
    scalar_matrix_poly,
)
from .scalar import is_exact, to_mpf
from .symfun import SymmetricPoly

REAL_RTOL = mpmath.mpf(10) ** -40


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    description: str
    compute: Callable[[], SymmetricPoly]
    reference: Callable[[], SymmetricPoly]


def _univariate(coeffs) -> SymmetricPoly:
    return SymmetricPoly(1, {((k,) if k else ()): c for k, c in enumerate(coeffs)})


def _lag_scalar(kappa, gamma, beta, n_vars, scale) -> SymmetricPoly:
    jc = laguerre_jack_coeffs(kappa, LaguerreParams(n_vars, gamma, beta))
    return _univariate(scalar_matrix_poly(jc, beta, n_vars, scale))


def _jac_scalar(kappa, g1, g2, beta, n_vars) -> SymmetricPoly:
    jc = jacobi_jack_coeffs(kappa, JacobiParams(n_vars, g1, g2, beta))
    return _univariate(scalar_matrix_poly(jc, beta, n_vars))


def _scaled(factor, coeffs) -> list:
    return [factor * c for c in coeffs]


def _e_forms(factor: str, coeffs: list[str]) -> SymmetricPoly:
    # restricted evaluation: only Euler's number is in scope
    env = {"__builtins__": {}, "e": mpmath.e}
    k = eval(factor, env)
    return _univariate([k * eval(c, env) for c in coeffs])


_E = mpmath.e

ENTRIES: tuple[CorpusEntry, ...] = (
    CorpusEntry(
        "laguerre_21_b3_g1", "Laguerre kappa=[2,1], beta=3, gamma=1, three variables",
        lambda: laguerre_poly((2, 1), LaguerreParams(3, 1, 3)),
        lambda: SymmetricPoly(3, {(2, 1): F(-3, 14), (1, 1, 1): F(-27, 56), (2,): F(3), (1, 1): F(27, 2),
                                  (1,): F(-297, 2), (): F(1485)}),
    ),
    CorpusEntry(
        "laguerre_32_b5h_g3h", "Laguerre kappa=[3,2], beta=5/2, gamma=3/2, two variables",
        lambda: laguerre_poly((3, 2), LaguerreParams(2, F(3, 2), F(5, 2))),
        lambda: SymmetricPoly(2, {lam: F(15, 442) * c for lam, c in {
            (3, 2): -4, (3, 1): 56, (2, 2): 236, (3,): -140, (2, 1): -2688, (1, 1): 30268,
            (2,): 6440, (1,): -76475, (): 229425}.items()}),
    ),
    CorpusEntry(
        "jacobi_21_b3", "Jacobi kappa=[2,1], beta=3, gamma1=3/2, gamma2=1/2, two variables",
        lambda: jacobi_poly((2, 1), JacobiParams(2, F(3, 2), F(1, 2), 3)),
        lambda: SymmetricPoly(2, {(2, 1): F(-117, 50), (2,): F(117, 80), (1, 1): F(1083, 600),
                                  (1,): F(-5, 2), (): F(1)}),
    ),
    CorpusEntry(
        "laguerre_333_b8_g5", "L_[3,3,3] gamma=5 beta=8 at -4x I_3",
        lambda: _lag_scalar((3, 3, 3), 5, 8, 3, -4),
        lambda: _univariate(_scaled(F(1, 55), [23843635200, 30656102400, 19211157408, 7709440512,
                                               2124251136, 411844608, 56082432, 5160960, 294912, 8192])),
    ),
    CorpusEntry(
        "worked_example_444", "L_[4,4,4] gamma=3 beta=8 at -4x I_3",
        lambda: _lag_scalar((4, 4, 4), 3, 8, 3, -4),
        lambda: _univariate(_scaled(1024, [212837625, 425675250, 425675250, 283783500, 136070550,
                                           48440700, 13020084, 2644488, 401814, 44604, 3444, 168, 4])),
    ),
    CorpusEntry(
        "lbe_cdf_b5h_n4_g2", "L_[4,4] gamma=-1/5 beta=8/5 at -4x/5 I_2",
        lambda: _lag_scalar((4, 4), F(-1, 5), F(8, 5), 2, F(-4, 5)),
        lambda: _univariate(_scaled(F(1, 21375), [410299200, 823260480, 823260480, 35203200, 7759872,
                                                  921600, 592896, 19440, 256])),
    ),
    CorpusEntry(
        "lbe_pdf_b5h_n4_g2", "L_[3,3] gamma=9/5 beta=8/5 at -4x/5 I_2",
        lambda: _lag_scalar((3, 3), F(9, 5), F(8, 5), 2, F(-4, 5)),
        lambda: _univariate(_scaled(F(256, 9975), [1159500, 773550, 213060, 28920, 2048, 72, 1])),
    ),
    CorpusEntry(
        "lbe_cdf_be_n3_g2", "L_[3,3] gamma=2/e-1 beta=4/e at -2x/e I_2",
        lambda: _lag_scalar((3, 3), 2 / _E - 1, 4 / _E, 2, -2 / _E),
        lambda: _e_forms("60/(e**3*(e+1)*(e+2)*(3*e+2))", [
            "32*(e+1)*(e+2)**2*(e+4)", "48*(e+1)*(e+2)**2*(e+4)", "36*(e+1)*(e+2)**2*(e+4)",
            "8*(e+1)*(9*e+16)*(e+2)", "24*(e+1)*(2*e+3)", "12*(e+1)", "1"]),
    ),
    CorpusEntry(
        "lbe_pdf_be_n3_g2", "L_[2,2] gamma=2/e+1 beta=4/e at -2x/e I_2",
        lambda: _lag_scalar((2, 2), 2 / _E + 1, 4 / _E, 2, -2 / _E),
        lambda: _e_forms("6/(e**2*(e+1)*(e+2))", [
            "4*(e+1)*(e+2)*(3*e+2)*(3*e+4)", "8*(e+1)*(3*e+2)*(3*e+4)", "16*(e+1)*(3*e+2)",
            "4*(3*e+2)", "1"]),
    ),
    CorpusEntry(
        "jbe_cdf_b4t_n3", "P_[3,3] gamma1=1/2 gamma2=3/2 beta=3 at x I_2",
        lambda: _jac_scalar((3, 3), F(1, 2), F(3, 2), 3, 2),
        lambda: _univariate([F(1), F(-15), F(105), F(-374), F(7089, 10), F(-6783, 10), F(1292, 5)]),
    ),
    CorpusEntry(
        "jbe_pdf_b4t_n3", "P_[2,2] gamma1=5/2 gamma2=3/2 beta=3 at x I_2",
        lambda: _jac_scalar((2, 2), F(5, 2), F(3, 2), 3, 2),
        lambda: _univariate(_scaled(F(1, 135), [135, -918, 2448, -2907, 1292])),
    ),
    CorpusEntry(
        "jbe_cdf_bh_n2", "P_[2,2,2] gamma1=3 gamma2=4 beta=8 at x I_3",
        lambda: _jac_scalar((2, 2, 2), 3, 4, 8, 3),
        lambda: _univariate(_scaled(F(1, 208), [208, -1872, 7488, -17472, 24762, -19950, 7315])),
    ),
    CorpusEntry(
        "jbe_pdf_bh_n2", "P_[1,1,1] gamma1=5 gamma2=4 beta=8 at x I_3",
        lambda: _jac_scalar((1, 1, 1), 5, 4, 8, 3),
        lambda: _univariate(_scaled(F(-1, 616), [-616, 2508, -3762, 2299])),
    ),
)

BY_NAME: Mapping[str, CorpusEntry] = {e.name: e for e in ENTRIES}


def _coeff_equal(c, d, rtol=REAL_RTOL) -> bool:
    if is_exact(c) and is_exact(d):
        return c == d
    return abs(to_mpf(c) - to_mpf(d)) <= rtol * abs(to_mpf(d))


def polys_equal(a: SymmetricPoly, b: SymmetricPoly, rtol=REAL_RTOL) -> bool:
    """Exact equality for rational polynomials; per-coefficient relative tolerance otherwise."""
    return a.n_vars == b.n_vars and not mismatched_terms(a, b, rtol)


def mismatched_terms(a: SymmetricPoly, b: SymmetricPoly, rtol=REAL_RTOL) -> list[tuple]:
    """(partition, a coefficient, b coefficient) for every differing monomial."""
    keys = list(a.coeffs) + [k for k in b.coeffs if k not in a.coeffs]
    return [(lam, a[lam], b[lam]) for lam in keys if not _coeff_equal(a[lam], b[lam], rtol)]


def fixture_path(name: str):
    return resources.files("hardedge").joinpath("fixtures", f"{name}.json")


def load_fixture(name: str) -> dict:
    return json.loads(fixture_path(name).read_text())


def fixture_poly(name: str) -> SymmetricPoly:
    return poly_from_json(load_fixture(name)["computed"])


def build_fixture(entry: CorpusEntry) -> dict:
    computed, reference = entry.compute(), entry.reference()
    return {
        "name": entry.name,
        "description": entry.description,
        "computed": poly_to_json(computed),
        "reference": poly_to_json(reference),
        "reference_matches": polys_equal(computed, reference),
    }


@dataclass(frozen=True)
class CorpusResult:
    name: str
    fixture_match: bool
    reference_match: bool

    def line(self) -> str:
        fx = "ok" if self.fixture_match else "MISMATCH"
        ref = "match" if self.reference_match else "differs"
        return f"{self.name}: fixture {fx}; published reference {ref}"


def check_entry(entry: CorpusEntry) -> CorpusResult:
    computed = entry.compute()
    return CorpusResult(entry.name, polys_equal(computed, fixture_poly(entry.name)),
                        polys_equal(computed, entry.reference()))
