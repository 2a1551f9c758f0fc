"""Command-line interface: polynomials, laws, identity suites and Monte Carlo checks.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import mpmath
import numpy as np

from . import corpus, identities, mc
from .laws import law_for
from .mvop import (
    JacobiParams,
    LaguerreParams,
    jacobi_poly,
    laguerre_poly,
    poly_to_json,
)
from .scalar import ParameterError, parse_scalar, set_precision, to_mpf
from .symfun import SymmetricPoly, jack_expand
from .univariate import coeff_str

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
HUMAN_DIGITS = 30

# default grids for the identity suites
DIFF_N = (2, 3, 4)
DIFF_GAMMA = (0, 1, 2, 3)
DIFF_BETA = ("1/2", "1", "2", "3")
DIFF_GAMMA2 = ("1/2", "1", "2")
P5_N = (2, 3, 4)
P5_GAMMA = (1, 2, 3)
P6_N = (2, 3)
P6_GAMMA1 = (0, 1, 2)
P6_GAMMA2 = ("1/2", "1", "2")


def _scalar(text: str):
    try:
        return parse_scalar(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _scalars(text: str) -> list:
    return [_scalar(t) for t in text.split(",") if t.strip()]


def _partition(text: str) -> tuple[int, ...]:
    parts = tuple(int(t) for t in text.split(",") if t.strip())
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise argparse.ArgumentTypeError(f"not a partition: {text!r}")
    return parts


def _grid(text: str) -> list[Fraction]:
    try:
        a, b, step = (Fraction(t) for t in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must be a:b:step, got {text!r}") from exc
    if step <= 0 or b < a:
        raise argparse.ArgumentTypeError("grid needs step > 0 and b >= a")
    count = int((b - a) / step)
    return [a + k * step for k in range(count + 1)]


# ---------------------------------------------------------------------------
# Rendering


def _var(i: int) -> str:
    return f"x{i + 1}"


def _monomials(lam: tuple[int, ...], n: int) -> list[str]:
    exps = list(lam) + [0] * (n - len(lam))
    seen = sorted(set(itertools.permutations(exps)), reverse=True)
    out = []
    for e in seen:
        factors = [_var(i) if k == 1 else f"{_var(i)}^{k}" for i, k in enumerate(e) if k]
        out.append("*".join(factors) or "1")
    return out


def render_poly(f: SymmetricPoly) -> str:
    """Human form: each monomial-symmetric block written out, in the fixed partition order."""
    pieces = []
    for lam, c in f.coeffs.items():
        mons = _monomials(lam, f.n_vars)
        block = " + ".join(mons)
        if not lam:
            pieces.append(coeff_str(c, HUMAN_DIGITS))
        elif c == 1:
            pieces.append(block if len(mons) == 1 or len(f.coeffs) == 1 else f"({block})")
        else:
            text = coeff_str(c, HUMAN_DIGITS)
            pieces.append(f"{text}*{block}" if len(mons) == 1 else f"{text}*({block})")
    return " + ".join(pieces).replace("+ -", "- ") or "0"


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


# ---------------------------------------------------------------------------
# Commands


def cmd_mvop(args) -> int:
    kappa = args.kappa
    if args.kind == "jack":
        f = jack_expand(kappa, args.beta, args.nvars)
    elif args.kind == "laguerre":
        f = laguerre_poly(kappa, LaguerreParams(args.nvars, _need(args, "gamma"), args.beta))
    else:
        f = jacobi_poly(kappa, JacobiParams(args.nvars, _need(args, "gamma1"), _need(args, "gamma2"),
                                            args.beta))
    if args.format == "json":
        _print_json(poly_to_json(f, kind=args.kind, kappa=list(kappa)))
    else:
        print(render_poly(f))
    return EXIT_OK


def _need(args, name: str):
    v = getattr(args, name)
    if v is None:
        raise ParameterError(f"--{name} is required for this command")
    return v


def _law_params(args) -> dict:
    if args.ensemble == "laguerre":
        return {"gamma": _need(args, "gamma")}
    return {"gamma1": _need(args, "gamma1"), "gamma2": _need(args, "gamma2")}


def cmd_law(args) -> int:
    kind = f"{args.ensemble}_{args.stat.replace('-', '_')}"
    law = law_for(kind, args.n, args.beta, **_law_params(args))
    if args.grid is None:
        if args.format == "json":
            _print_json(law.to_json())
        else:
            print(str(law))
        return EXIT_OK
    if args.format == "json":
        _print_json({"law": law.to_json(),
                     "values": [{"x": str(x), "value": mpmath.nstr(to_mpf(law(x)), 20)} for x in args.grid]})
        return EXIT_OK
    print("x,value")
    for x in args.grid:
        v = law(x)
        print(f"{float(x)!r},{float(to_mpf(v))!r}")
    return EXIT_OK


def _report(reports, fmt: str) -> int:
    ok = True
    for r in reports:
        ok &= r.passed
        print(r.line() if fmt == "json" else _human_line(r))
    return EXIT_OK if ok else EXIT_FAIL


def _human_line(r) -> str:
    params = ", ".join(f"{k}={v}" for k, v in r.params.items())
    return f"{'PASS' if r.passed else 'FAIL'} {r.identity}({params})"


def _verify_diff(args) -> list:
    ns = args.n or list(DIFF_N)
    gammas = args.gamma or [Fraction(g) for g in DIFF_GAMMA]
    betas = args.beta or [Fraction(b) for b in DIFF_BETA]
    gamma2s = args.gamma2 or [Fraction(g) for g in DIFF_GAMMA2]
    out = []
    if args.ensemble in ("laguerre", "both"):
        for n, g, b in sorted(itertools.product(ns, gammas, betas)):
            out.append(identities.laguerre_diff_residual(n, b, g))
    if args.ensemble in ("jacobi", "both"):
        for n, g, b, g2 in sorted(itertools.product(ns, gammas, betas, gamma2s)):
            out.append(identities.jacobi_diff_residual(n, b, g, g2))
    return out


class _Check:
    """Adapter giving scalar checks the report interface."""

    def __init__(self, identity: str, params: dict, passed: bool, detail: str = ""):
        self.identity, self.params, self.passed, self.detail = identity, params, passed, detail

    def line(self) -> str:
        return json.dumps({"identity": self.identity, "params": {k: str(v) for k, v in self.params.items()},
                           "pass": self.passed, "detail": self.detail})


def _verify_painleve5(args) -> list:
    out = []
    for n, g in sorted(itertools.product(args.n or list(P5_N), args.gamma or list(P5_GAMMA))):
        sigma = identities.painleve5_sigma(n, g)
        params = {"n": Fraction(n), "gamma": Fraction(g)}
        out.append(identities.DiffReport("painleve5", params, identities.painleve5_residual(sigma, n, g)))
        deg, c = identities.lowest_taylor_term(sigma)
        want = identities.painleve5_asymptotic_coeff(n, int(g))
        out.append(_Check("painleve5_asymptotic", params, deg == g + 1 and c == want,
                          f"degree {deg}, coefficient {c}, expected {want}"))
        out.append(identities.sigma_consistency_laguerre(n, g))
    return out


def _verify_painleve6(args) -> list:
    ns = args.n or list(P6_N)
    g1s = args.gamma or [Fraction(g) for g in P6_GAMMA1]
    g2s = args.gamma2 or [Fraction(g) for g in P6_GAMMA2]
    return [identities.sigma_consistency_jacobi(n, g1, g2)
            for n, g1, g2 in sorted(itertools.product(ns, g1s, g2s))]


def _verify_kaneko(args) -> list:
    out = []
    betas = args.beta or [Fraction(1), Fraction(2)]
    gammas = args.gamma or [Fraction(0), Fraction(1)]
    for b, g, y in itertools.product(betas, gammas, (Fraction(1, 2), Fraction(1), Fraction(2))):
        lhs = identities.kaneko_laguerre_lhs(2, b, g, y)
        rhs = identities.kaneko_laguerre_rhs(2, b, g, [y])
        rel = abs(lhs - rhs) / abs(rhs)
        out.append(_Check("kaneko_laguerre", {"n": 2, "beta": b, "gamma": g, "y": y}, rel < 1e-7,
                          f"relative error {rel:.2e}"))
    return out


def cmd_verify(args) -> int:
    if args.suite == "corpus":
        ok = True
        results = [corpus.check_entry(e) for e in corpus.ENTRIES]
        for r in results:
            ok &= r.fixture_match
            print(json.dumps(r.__dict__) if args.format == "json" else r.line())
        matched = sum(r.fixture_match for r in results)
        print(f"{matched}/{len(results)} fixtures match exactly")
        return EXIT_OK if ok else EXIT_FAIL
    suites = {"diff": _verify_diff, "painleve5": _verify_painleve5,
              "painleve6": _verify_painleve6, "kaneko": _verify_kaneko}
    reports = suites[args.suite](args)
    if args.format == "json":
        return _report(reports, "json")
    ok = True
    for r in reports:
        ok &= r.passed
        line = _human_line(r)
        if isinstance(r, _Check) and r.detail:
            line += f": {r.detail}"
        print(line)
    print(f"{sum(r.passed for r in reports)}/{len(reports)} passed")
    return EXIT_OK if ok else EXIT_FAIL


def _draw(args) -> mc.SampleBatch:
    if args.ensemble == "lbe":
        return mc.sample_lbe(args.n, args.beta, _need(args, "gamma"), args.count, args.seed, args.workers)
    return mc.sample_jbe(args.n, args.beta, _need(args, "gamma1"), _need(args, "gamma2"),
                         args.count, args.seed, args.workers)


def cmd_sample(args) -> int:
    batch = _draw(args)
    text = batch.to_csv()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_kstest(args) -> int:
    if args.samples:
        batch = mc.SampleBatch.from_csv(Path(args.samples).read_text())
    else:
        if args.ensemble is None or args.n is None or args.beta is None:
            raise ParameterError("kstest needs --samples FILE or an ensemble with -n and --beta")
        batch = _draw(args)
    law = mc.exact_cdf_for(batch)
    d = mc.ks_distance(batch, law)
    threshold = args.threshold if args.threshold is not None else mc.ks_critical(batch.count, args.level)
    passed = bool(d < threshold)
    report = {"kind": batch.kind, "count": batch.count, "seed": batch.seed,
              "distance": d, "threshold": threshold, "pass": passed}
    if args.plot_data:
        hi = float(np.max(batch.values))
        Path(args.plot_data).write_text(mc.plot_data_csv(batch, law, np.linspace(0, hi, 201)))
    if args.format == "json":
        _print_json(report)
    else:
        print(f"{'PASS' if passed else 'FAIL'} KS distance {d:.6f} (threshold {threshold:.6f}, N={batch.count})")
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# Parser


def _ensemble_flags(p, lists: bool = False) -> None:
    conv = _scalars if lists else _scalar
    p.add_argument("--gamma", type=conv)
    p.add_argument("--gamma1", type=conv)
    p.add_argument("--gamma2", type=conv)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="hardedge", description=__doc__.splitlines()[0])
    top.add_argument("--precision-bits", type=int, help="mantissa bits for non-rational parameters")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mvop", help="multivariate Jack, Laguerre or Jacobi polynomial")
    p.add_argument("kind", choices=("laguerre", "jacobi", "jack"))
    p.add_argument("--kappa", type=_partition, required=True)
    p.add_argument("--beta", type=_scalar, required=True)
    p.add_argument("--nvars", type=int, required=True)
    _ensemble_flags(p)
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=cmd_mvop)

    p = sub.add_parser("law", help="smallest (or largest) eigenvalue law in closed form")
    p.add_argument("ensemble", choices=("laguerre", "jacobi"))
    p.add_argument("stat", choices=("cdf", "pdf", "largest-cdf"))
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--beta", type=_scalar, required=True)
    _ensemble_flags(p)
    p.add_argument("--grid", type=_grid, help="evaluate on a:b:step")
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")
    p.set_defaults(func=cmd_law)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("suite", choices=("diff", "painleve5", "painleve6", "kaneko", "corpus"))
    p.add_argument("--n", type=_ints)
    p.add_argument("--beta", type=_scalars)
    p.add_argument("--gamma", type=_scalars, help="gamma, or gamma1 for Jacobi suites")
    p.add_argument("--gamma2", type=_scalars)
    p.add_argument("--ensemble", choices=("laguerre", "jacobi", "both"), default="both")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=cmd_verify)

    for name, func, hlp in (("sample", cmd_sample, "draw smallest eigenvalues"),
                            ("kstest", cmd_kstest, "KS distance of samples to the exact CDF")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("ensemble", nargs="?" if name == "kstest" else None, choices=("lbe", "jbe"))
        p.add_argument("-n", type=int, required=name == "sample")
        p.add_argument("--beta", type=_scalar, required=name == "sample")
        _ensemble_flags(p)
        p.add_argument("--count", type=int, default=100000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)
        if name == "sample":
            p.add_argument("--output", "-o")
        else:
            p.add_argument("--samples", help="CSV written by the sample command")
            p.add_argument("--level", type=float, default=0.01)
            p.add_argument("--threshold", type=float)
            p.add_argument("--plot-data", help="write x,empirical,exact CSV here")
            p.add_argument("--format", choices=("human", "json"), default="human")
        p.set_defaults(func=func)
    return top


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision_bits:
        set_precision(args.precision_bits)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
