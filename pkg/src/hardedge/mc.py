"""Monte Carlo validation: tridiagonal beta-ensemble samplers and KS comparison with exact laws.

Samples are drawn in fixed-size chunks, each with its own Philox stream spawned
from the batch seed, so a batch is bit-identical regardless of worker count.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import mpmath
import numpy as np
from scipy import special, stats

from .laws import EigLaw, jacobi_smallest_cdf, laguerre_smallest_cdf
from .scalar import ParameterError, Scalar, is_exact, parse_scalar, to_mpf

CHUNK = 1 << 14


@dataclass(frozen=True)
class TridiagonalMatrix:
    diagonal: np.ndarray
    off_diagonal: np.ndarray

    def dense(self) -> np.ndarray:
        return (np.diag(self.diagonal) + np.diag(self.off_diagonal, 1)
                + np.diag(self.off_diagonal, -1))


@dataclass(frozen=True)
class SampleBatch:
    kind: str
    params: Mapping[str, Scalar]
    seed: int
    values: np.ndarray = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        desc = " ".join(f"{k}={_param_str(v)}" for k, v in self.params.items())
        buf.write(f"# kind={self.kind} {desc} seed={self.seed} count={self.count}\n")
        buf.write("value\n")
        for v in self.values:
            buf.write(f"{float(v)!r}\n")
        return buf.getvalue()

    @staticmethod
    def from_csv(text: str) -> "SampleBatch":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("#"):
            raise ParameterError("sample file must start with a '# kind=...' header")
        meta = dict(tok.split("=", 1) for tok in lines[0].lstrip("# ").split())
        kind, seed = meta.pop("kind"), int(meta.pop("seed"))
        meta.pop("count", None)
        params = {k: _param_parse(k, v) for k, v in meta.items()}
        values = np.array([float(s) for s in lines[2:] if s.strip()])
        return SampleBatch(kind, params, seed, values)


def _param_str(v) -> str:
    # non-rational parameters are tagged so they are not re-read as exact decimals
    # a few guard digits so the binary value survives the decimal round trip
    return str(v) if is_exact(v) else "real:" + mpmath.nstr(to_mpf(v), mpmath.mp.dps + 3)


def _param_parse(key: str, text: str) -> Scalar:
    if key == "n":
        return int(text)
    if text.startswith("real:"):
        return mpmath.mpf(text[5:])
    return parse_scalar(text)


def _keep(v) -> Scalar:
    return Fraction(v) if is_exact(v) else to_mpf(v)


# ---------------------------------------------------------------------------
# Variates


def chi(rng: np.random.Generator, dof, size) -> np.ndarray:
    """chi_k = sqrt(2 Gamma(k/2)); valid for non-integer k > 0."""
    return np.sqrt(2.0 * rng.standard_gamma(np.asarray(dof, dtype=float) / 2.0, size=size))


def beta_pm1(rng: np.random.Generator, s: float, t: float, size) -> np.ndarray:
    """Variate on [-1, 1] with density proportional to (1-x)^{s-1} (1+x)^{t-1}."""
    g1 = rng.standard_gamma(t, size=size)
    g2 = rng.standard_gamma(s, size=size)
    return 2.0 * g1 / (g1 + g2) - 1.0


# ---------------------------------------------------------------------------
# Matrix models


def lbe_tridiagonal(rng: np.random.Generator, n: int, beta: float, gamma: float, size: int):
    """Diagonal and off-diagonal of B B^T for the bidiagonal Laguerre model, batched on axis 0."""
    a = gamma + 1 + beta * (n - 1) / 2
    i = np.arange(1, n + 1)
    d_dof = 2 * a - beta * (i - 1)
    if np.any(d_dof <= 0):
        raise ParameterError("nonpositive chi degrees of freedom")
    d = chi(rng, d_dof, (size, n))
    s = chi(rng, beta * (n - i[:-1]), (size, n - 1)) if n > 1 else np.zeros((size, 0))
    diag = d ** 2
    diag[:, 1:] += s ** 2
    off = d[:, :-1] * s
    return diag, off


def jbe_tridiagonal(rng: np.random.Generator, n: int, beta: float, gamma1: float, gamma2: float,
                    size: int):
    """Killip-Nenciu Jacobi matrix mapped to [0, 1] by x = (2 + lambda)/4; weight x^gamma1 (1-x)^gamma2."""
    a, b = gamma2, gamma1
    alpha = {-1: np.full(size, -1.0), 2 * n - 1: np.full(size, -1.0)}
    for k in range(2 * n - 1):
        if k % 2 == 0:
            m = (2 * n - k - 2) * beta / 4
            alpha[k] = beta_pm1(rng, m + a + 1, m + b + 1, size)
        else:
            alpha[k] = beta_pm1(rng, (2 * n - k - 3) * beta / 4 + a + b + 2,
                                (2 * n - k - 1) * beta / 4, size)
    diag = np.empty((size, n))
    off = np.empty((size, max(n - 1, 0)))
    for k in range(n):
        prev = alpha[2 * k - 2] if k > 0 else np.zeros(size)
        diag[:, k] = (1 - alpha[2 * k - 1]) * alpha[2 * k] - (1 + alpha[2 * k - 1]) * prev
        if k < n - 1:
            prod = (1 - alpha[2 * k - 1]) * (1 - alpha[2 * k] ** 2) * (1 + alpha[2 * k + 1])
            off[:, k] = np.sqrt(np.clip(prod, 0, None))
    # lambda in [-2, 2] -> x = (2 + lambda) / 4
    return (diag + 2) / 4, off / 4


# ---------------------------------------------------------------------------
# Eigenvalues


def _count_below(diag: np.ndarray, off2: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Number of eigenvalues below sigma, from the signs of the LDL^T pivots (Sturm count)."""
    tiny = np.finfo(float).tiny
    d = diag[:, 0] - sigma
    count = (d < 0).astype(np.int64)
    for i in range(1, diag.shape[1]):
        d = np.where(d == 0, -tiny, d)
        d = diag[:, i] - sigma - off2[:, i - 1] / d
        count += d < 0
    return count


def smallest_eigenvalues(diag: np.ndarray, off: np.ndarray, rtol: float = 1e-13) -> np.ndarray:
    """Smallest eigenvalue of each symmetric tridiagonal row, by Sturm bisection."""
    diag = np.atleast_2d(np.asarray(diag, dtype=float))
    off = np.asarray(off, dtype=float).reshape(diag.shape[0], -1)
    n = diag.shape[1]
    absoff = np.abs(off)
    radius = np.zeros_like(diag)
    if n > 1:
        radius[:, :-1] += absoff
        radius[:, 1:] += absoff
    lo = np.min(diag - radius, axis=1)
    hi = np.min(diag, axis=1)
    off2 = off ** 2
    for _ in range(200):
        width = hi - lo
        if np.all(width <= rtol * np.maximum(np.abs(lo), np.abs(hi)) + 1e-300):
            break
        mid = 0.5 * (lo + hi)
        below = _count_below(diag, off2, mid) >= 1
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
    return 0.5 * (lo + hi)


def smallest_eigenvalue(m: TridiagonalMatrix) -> float:
    return float(smallest_eigenvalues(m.diagonal[None, :], m.off_diagonal[None, :])[0])


# ---------------------------------------------------------------------------
# Batches


def _run_chunks(seed: int, count: int, fn: Callable[[np.random.Generator, int], np.ndarray],
                workers: int) -> np.ndarray:
    sizes = [CHUNK] * (count // CHUNK) + ([count % CHUNK] if count % CHUNK else [])
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))

    def job(args):
        ss, size = args
        return fn(np.random.Generator(np.random.Philox(ss)), size)

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(job, zip(seqs, sizes)))
    else:
        parts = [job(a) for a in zip(seqs, sizes)]
    return np.concatenate(parts) if parts else np.empty(0)


def sample_lbe(n: int, beta, gamma, count: int, seed: int, workers: int = 1) -> SampleBatch:
    b, g = float(to_mpf(beta)), float(to_mpf(gamma))
    if b <= 0 or g <= -1 or n < 1:
        raise ParameterError("need beta > 0, gamma > -1, n >= 1")

    def fn(rng, size):
        return smallest_eigenvalues(*lbe_tridiagonal(rng, n, b, g, size))

    params = {"n": n, "beta": _keep(beta), "gamma": _keep(gamma)}
    return SampleBatch("lbe", params, seed, _run_chunks(seed, count, fn, workers))


def sample_jbe(n: int, beta, gamma1, gamma2, count: int, seed: int, workers: int = 1) -> SampleBatch:
    b, g1, g2 = float(to_mpf(beta)), float(to_mpf(gamma1)), float(to_mpf(gamma2))
    if b <= 0 or g1 <= -1 or g2 <= -1 or n < 1:
        raise ParameterError("need beta > 0, gamma1, gamma2 > -1, n >= 1")

    def fn(rng, size):
        return smallest_eigenvalues(*jbe_tridiagonal(rng, n, b, g1, g2, size))

    params = {"n": n, "beta": _keep(beta), "gamma1": _keep(gamma1), "gamma2": _keep(gamma2)}
    return SampleBatch("jbe", params, seed, _run_chunks(seed, count, fn, workers))


# ---------------------------------------------------------------------------
# Comparison with exact laws

_LAW_FOR_BATCH = {"lbe": "laguerre_cdf", "jbe": "jacobi_cdf"}


def exact_cdf_for(batch: SampleBatch) -> EigLaw:
    """The smallest-eigenvalue CDF matching a batch's ensemble and parameters."""
    p = dict(batch.params)
    n = int(p.pop("n"))
    if batch.kind == "lbe":
        return laguerre_smallest_cdf(n, p["beta"], p["gamma"])
    if batch.kind == "jbe":
        return jacobi_smallest_cdf(n, p["beta"], p["gamma1"], p["gamma2"])
    raise ParameterError(f"unknown ensemble kind {batch.kind!r}")


def ks_critical(count: int, level: float = 0.01) -> float:
    """Asymptotic one-sample KS critical value (1.63/sqrt(N) at the 1% level)."""
    return float(stats.kstwobign.isf(level)) / np.sqrt(count)


def ks_distance(batch: SampleBatch, law: EigLaw | Callable) -> float:
    """sup |empirical CDF - exact CDF| over the batch."""
    if isinstance(law, EigLaw):
        if _LAW_FOR_BATCH.get(batch.kind) != law.kind:
            raise ParameterError(f"law kind {law.kind} does not match batch kind {batch.kind}")
        cdf = law.evaluate_float
    else:
        cdf = law
    xs = np.sort(batch.values)
    f = np.asarray(cdf(xs), dtype=float)
    n = len(xs)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def ks_two_sample(a: np.ndarray, b: np.ndarray) -> float:
    return float(stats.ks_2samp(a, b).statistic)


def law_moments(pdf: EigLaw, orders=(0, 1, 2), points: int = 64) -> list[float]:
    """Moments of a smallest-eigenvalue density by Gauss quadrature matched to its weight."""
    cs = [float(to_mpf(c)) for c in pdf.poly]
    k = float(to_mpf(pdf.constant))
    p = float(to_mpf(pdf.power_exponent))
    if pdf.kind == "laguerre_pdf":
        r = float(to_mpf(pdf.exp_rate))
        t, w = special.roots_genlaguerre(points, p)
        x = t / r
        scale = k * r ** (-(p + 1))
        return [float(scale * np.sum(w * np.polynomial.polynomial.polyval(x, cs) * x ** m)) for m in orders]
    if pdf.kind == "jacobi_pdf":
        q = float(to_mpf(pdf.one_minus_x_exponent))
        u, w = special.roots_jacobi(points, q, p)
        x = (1 + u) / 2
        scale = k * 2.0 ** (-(p + q + 1))
        return [float(scale * np.sum(w * np.polynomial.polynomial.polyval(x, cs) * x ** m)) for m in orders]
    raise ParameterError(f"moments need a pdf law, got {pdf.kind}")


def plot_data_csv(batch: SampleBatch, law: EigLaw, grid: np.ndarray) -> str:
    xs = np.sort(batch.values)
    emp = np.searchsorted(xs, grid, side="right") / len(xs)
    exact = law.evaluate_float(grid)
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["x", "empirical", "exact"])
    for row in zip(grid, emp, exact):
        w.writerow([f"{v:.17g}" for v in row])
    return buf.getvalue()
