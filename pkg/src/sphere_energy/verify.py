"""Certification harness: closed form vs compression fixpoints vs gradient ascent.

verify_theorem establishes, for one sphere, that
  (a) the closed-form ratio E(S) / (2^n |S|^2) is what the constant attains,
  (b) compression fixpoints from random non-negative starts reach it and end
      constant, and
  (c) multi-start gradient ascent never exceeds it.
Two independent maximization routes must agree: the compression route mirrors
the structure of the argument being certified, the gradient route knows
nothing about it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .compression import compress, compression_distance, symmetrize_to_fixpoint
from .functionals import (
    NAIVE_MAX_DIMENSION,
    coset_bracket_grid,
    l2_norm,
    l4_fourth,
    mu_constant,
    u2_fourth_fast,
    u2_fourth_naive,
)
from .hypercube import SphereSpec, all_pairs, sphere_points
from .optimize import OptimizerConfig, maximize_ratio, ratio_objective
from .spectral import DenseFunction, Spectrum, fourier_forward, fourier_inverse

DEFAULT_RATIO_TOL = 1e-7
DEFAULT_CONSTANT_TOL = 1e-9
# operational meaning of "ended constant" for a converged fixpoint
CONSTANCY_SPREAD_TOL = 1e-8


@dataclass
class CompressionTrialSummary:
    trial: int
    ratio: float
    spread: float
    sweeps: int
    converged: bool
    reached_mu: bool
    constant: bool

    @property
    def ok(self) -> bool:
        return self.converged and self.reached_mu and self.constant


@dataclass
class GradientStartSummary:
    start: int
    iterations: int
    final_grad_norm: float
    ratio: float
    converged: bool


@dataclass
class VerifyReport:
    """Certification outcome for one sphere; `passed` is serialized as "pass"."""

    spec: SphereSpec
    mu_exact: Fraction
    mu_closed_form: float
    constant_ratio: float
    constant_ok: bool
    best_ratio_compression: float
    best_ratio_gradient: float
    constant_attained: bool
    passed: bool
    trials: int
    seed: int
    tol: float
    constant_tol: float
    compression_trials: list[CompressionTrialSummary]
    gradient_starts: list[GradientStartSummary]
    failures: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "spec": {"n": self.spec.n, "k": self.spec.k},
            "mu_exact": str(self.mu_exact),
            "mu_closed_form": self.mu_closed_form,
            "constant_ratio": self.constant_ratio,
            "constant_ok": self.constant_ok,
            "best_ratio_compression": self.best_ratio_compression,
            "best_ratio_gradient": self.best_ratio_gradient,
            "constant_attained": self.constant_attained,
            "pass": self.passed,
            "trials": self.trials,
            "seed": self.seed,
            "tol": self.tol,
            "constant_tol": self.constant_tol,
            "compression_trials": [vars(t).copy() for t in self.compression_trials],
            "gradient_starts": [vars(t).copy() for t in self.gradient_starts],
            "failures": self.failures,
        }


def _trial_rng(seed: int, spec: SphereSpec, role: int, trial: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence((seed, spec.n, spec.k, role, trial)))
    )


def _function_lines(f: DenseFunction) -> list[str]:
    """FunctionFile-style serialization of the nonzero entries, for replay."""
    lines = [f"n={f.n}"]
    for x in np.flatnonzero(f.values):
        lines.append(f"{int(x):0{max(f.n, 1)}b} {f.values[x]:.17g}")
    return lines


def random_nonnegative_on_sphere(
    spec: SphereSpec, rng: np.random.Generator
) -> DenseFunction:
    """Uniform [0,1) values on the sphere points, zero elsewhere."""
    values = np.zeros(1 << spec.n)
    pts = sphere_points(spec)
    values[pts] = rng.random(len(pts))
    if not values.any():
        values[pts] = 1.0
    return DenseFunction(spec.n, values)


def verify_theorem(
    spec: SphereSpec,
    trials: int = 8,
    seed: int = 0,
    tol: float = DEFAULT_RATIO_TOL,
    constant_tol: float = DEFAULT_CONSTANT_TOL,
    fixpoint_tol: float = 1e-12,
) -> VerifyReport:
    """Numerically certify the extremal claim for one sphere.

    (a) computes the exact closed-form ratio; (b) checks the constant
    function attains it to constant_tol; (c) runs compression fixpoints from
    `trials` random non-negative starts, which must reach it within tol and
    end constant; (d) runs `trials`-start signed gradient ascent, whose best
    ratio must not exceed it by more than tol. Sub-stage failures land in
    the report (with the offending start serialized), never in an exception.
    """
    mu = mu_constant(spec)
    mu_f = float(mu)
    failures: list[dict] = []

    constant_ratio = ratio_objective(DenseFunction.indicator(spec.n, sphere_points(spec)))
    constant_ok = abs(constant_ratio - mu_f) <= constant_tol
    if not constant_ok:
        failures.append(
            {"stage": "constant", "detail": f"ratio {constant_ratio!r} vs mu {mu_f!r}"}
        )

    compression_trials: list[CompressionTrialSummary] = []
    best_comp = -np.inf
    for trial in range(trials):
        start_f = random_nonnegative_on_sphere(spec, _trial_rng(seed, spec, 1, trial))
        final, trace = symmetrize_to_fixpoint(
            start_f, tol=fixpoint_tol, granularity="sweep"
        )
        ratio = ratio_objective(final)
        on_sphere = final.values[sphere_points(spec)]
        spread = float(np.max(on_sphere) - np.min(on_sphere))
        scale = max(1.0, float(np.max(np.abs(on_sphere))))
        summary = CompressionTrialSummary(
            trial=trial,
            ratio=ratio,
            spread=spread,
            sweeps=trace.sweeps_run,
            converged=trace.converged,
            reached_mu=abs(ratio - mu_f) <= tol,
            constant=spread <= CONSTANCY_SPREAD_TOL * scale,
        )
        compression_trials.append(summary)
        best_comp = max(best_comp, ratio)
        if not summary.ok:
            failures.append(
                {
                    "stage": "compression",
                    "trial": trial,
                    "ratio": ratio,
                    "spread": spread,
                    "converged": trace.converged,
                    "start_function": _function_lines(start_f),
                }
            )

    opt_seed = int(np.random.SeedSequence((seed, spec.n, spec.k, 2)).generate_state(1, np.uint64)[0])
    cfg = OptimizerConfig(starts=trials, seed=opt_seed)
    opt = maximize_ratio(spec.n, sphere_points(spec), cfg)
    gradient_starts = [
        GradientStartSummary(t.start, t.iterations, t.final_grad_norm, t.ratio, t.converged)
        for t in opt.starts
    ]
    gradient_ok = opt.best_ratio <= mu_f + tol
    if not gradient_ok:
        failures.append(
            {
                "stage": "gradient",
                "best_ratio": opt.best_ratio,
                "argmax_function": _function_lines(opt.argmax),
            }
        )

    constant_attained = all(t.constant for t in compression_trials)
    passed = (
        constant_ok
        and all(t.ok for t in compression_trials)
        and best_comp <= mu_f + tol
        and gradient_ok
    )
    return VerifyReport(
        spec=spec,
        mu_exact=mu,
        mu_closed_form=mu_f,
        constant_ratio=constant_ratio,
        constant_ok=constant_ok,
        best_ratio_compression=best_comp,
        best_ratio_gradient=opt.best_ratio,
        constant_attained=constant_attained,
        passed=passed,
        trials=trials,
        seed=seed,
        tol=tol,
        constant_tol=constant_tol,
        compression_trials=compression_trials,
        gradient_starts=gradient_starts,
        failures=failures,
    )


@dataclass
class VerifySweep:
    """verify_theorem over every 0 <= k <= n <= n_max."""

    n_max: int
    trials: int
    seed: int
    tol: float
    reports: list[VerifyReport]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "trials": self.trials,
            "seed": self.seed,
            "tol": self.tol,
            "all_pass": self.all_pass,
            "cells": len(self.reports),
            "reports": [r.to_dict() for r in self.reports],
        }


def verify_all(n_max: int, trials: int = 8, seed: int = 0, tol: float = DEFAULT_RATIO_TOL) -> VerifySweep:
    reports = [
        verify_theorem(SphereSpec(n, k), trials=trials, seed=seed, tol=tol)
        for n in range(n_max + 1)
        for k in range(n + 1)
    ]
    return VerifySweep(n_max, trials, seed, tol, reports)


@dataclass
class LemmaSuiteReport:
    """Pass/fail counts and worst margins for the four compression properties
    plus per-coset bracket monotonicity (n <= 6 only)."""

    spec: SphereSpec
    trials: int
    pairs: int
    support_ok: bool
    worst_l2_drift: float
    worst_u2_margin: float
    strict_triggers: int
    strict_violations: int
    bracket_checked: bool
    worst_bracket_margin: float
    l2_tol: float = 1e-12
    u2_tol: float = 1e-12
    strict_distance: float = 1e-8
    bracket_tol: float = 1e-12

    @property
    def passed(self) -> bool:
        ok = (
            self.support_ok
            and self.worst_l2_drift <= self.l2_tol
            and self.worst_u2_margin >= -self.u2_tol
            and self.strict_violations == 0
        )
        if self.bracket_checked:
            ok = ok and self.worst_bracket_margin >= -self.bracket_tol
        return ok

    def to_dict(self) -> dict:
        d = {k: v for k, v in vars(self).items() if k != "spec"}
        d["spec"] = {"n": self.spec.n, "k": self.spec.k}
        d["pass"] = self.passed
        return d


def lemma_suite(spec: SphereSpec, trials: int = 100, seed: int = 0) -> LemmaSuiteReport:
    """Exercise every compression property on random non-negative sphere functions.

    For each trial and every pair: support preserved exactly, l2 drift within
    1e-12, u2^4 (naive oracle) never drops below -1e-12, and a strict increase
    whenever the compression moved the function by more than 1e-8. For n <= 6
    also checks that no coset bracket decreases. Failures are counted, not
    raised.
    """
    if spec.n > NAIVE_MAX_DIMENSION:
        raise ValueError(f"lemma suite uses the naive oracle; n={spec.n} exceeds {NAIVE_MAX_DIMENSION}")
    pairs = all_pairs(spec.n)
    pts = sphere_points(spec)
    outside = np.ones(1 << spec.n, dtype=bool)
    outside[pts] = False

    support_ok = True
    worst_l2 = 0.0
    worst_u2 = np.inf
    strict_triggers = 0
    strict_violations = 0
    check_brackets = 2 <= spec.n <= 6
    worst_bracket = np.inf
    for trial in range(trials):
        f = random_nonnegative_on_sphere(spec, _trial_rng(seed, spec, 3, trial))
        base_u2 = u2_fourth_naive(f)
        base_l2 = l2_norm(f)
        for p in pairs:
            fc = compress(f, p)
            if np.any(fc.values[outside] != 0.0):
                support_ok = False
            worst_l2 = max(worst_l2, abs(l2_norm(fc) - base_l2))
            du = u2_fourth_naive(fc) - base_u2
            worst_u2 = min(worst_u2, du)
            if compression_distance(f, p) > 1e-8:
                strict_triggers += 1
                if not du > 0.0:
                    strict_violations += 1
            if check_brackets:
                margin = float(np.min(coset_bracket_grid(fc, p) - coset_bracket_grid(f, p)))
                worst_bracket = min(worst_bracket, margin)
    if worst_u2 == np.inf:
        worst_u2 = 0.0
    if worst_bracket == np.inf:
        worst_bracket = 0.0
    return LemmaSuiteReport(
        spec=spec,
        trials=trials,
        pairs=len(pairs),
        support_ok=support_ok,
        worst_l2_drift=worst_l2,
        worst_u2_margin=float(worst_u2),
        strict_triggers=strict_triggers,
        strict_violations=strict_violations,
        bracket_checked=check_brackets,
        worst_bracket_margin=float(worst_bracket),
    )


@dataclass
class DualityReport:
    n: int
    support_size: int
    trials: int
    max_relative_deviation: float
    tol: float = 1e-10

    @property
    def passed(self) -> bool:
        return self.max_relative_deviation <= self.tol

    def to_dict(self) -> dict:
        d = vars(self).copy()
        d["pass"] = self.passed
        return d


def remark_duality_check(n: int, support, trials: int = 50, seed: int = 0) -> DualityReport:
    """Check ratio_4(f) = N * ratio_u2(fhat) on random spectra supported on A.

    Draws coefficients as standard normals on the given character set, forms
    f by the inverse transform, and compares the l4/l2 ratio of f against N
    times the u2/l2 ratio of its spectrum viewed as a function.
    """
    chars = sorted(set(support))
    if not chars:
        raise ValueError("character support must be nonempty")
    size = 1 << n
    worst = 0.0
    for trial in range(trials):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, n, 4, trial))))
        coeffs = np.zeros(size)
        coeffs[chars] = rng.standard_normal(len(chars))
        f = fourier_inverse(Spectrum(n, coeffs))
        ratio4 = l4_fourth(f) / l2_norm(f) ** 4
        spec_fn = DenseFunction(n, fourier_forward(f).coeffs)
        ratio_u2 = u2_fourth_fast(spec_fn) / l2_norm(spec_fn) ** 4
        dev = abs(ratio4 - size * ratio_u2) / max(1.0, abs(ratio4))
        worst = max(worst, dev)
    return DualityReport(n=n, support_size=len(chars), trials=trials, max_relative_deviation=worst)


@dataclass
class SignedSearchReport:
    """Findings of the exploratory search for u2 decreases under compression
    of signed sphere-supported functions. Nothing downstream asserts on this."""

    spec: SphereSpec
    trials: int
    worst_u2_margin: float
    decreases_found: int
    strictness_failures: int
    witness: list[str] | None

    def to_dict(self) -> dict:
        d = {k: v for k, v in vars(self).items() if k != "spec"}
        d["spec"] = {"n": self.spec.n, "k": self.spec.k}
        return d


def signed_compression_search(
    spec: SphereSpec, trials: int = 200, seed: int = 0
) -> SignedSearchReport:
    """Randomized hunt for signed counterexamples to compression monotonicity.

    Compression only sees squared values, so u2^4 should not decrease even
    for sign-changing inputs; strictness, however, can fail for signed f
    (e.g. a character times a constant changes under compression without
    changing u2). This search quantifies both over random signed starts.
    """
    pts = sphere_points(spec)
    pairs = all_pairs(spec.n)
    worst = np.inf
    decreases = 0
    strict_failures = 0
    witness: list[str] | None = None
    for trial in range(trials):
        rng = _trial_rng(seed, spec, 5, trial)
        values = np.zeros(1 << spec.n)
        values[pts] = rng.standard_normal(len(pts))
        f = DenseFunction(spec.n, values)
        base = u2_fourth_fast(f)
        for p in pairs:
            fc = compress(f, p)
            du = u2_fourth_fast(fc) - base
            worst = min(worst, du)
            if du < -1e-12 * max(1.0, abs(base)):
                decreases += 1
                if witness is None:
                    witness = _function_lines(f) + [f"pair={p}"]
            if compression_distance(f, p) > 1e-8 and not du > 0.0:
                strict_failures += 1
    if worst == np.inf:
        worst = 0.0
    return SignedSearchReport(
        spec=spec,
        trials=trials,
        worst_u2_margin=float(worst),
        decreases_found=decreases,
        strictness_failures=strict_failures,
        witness=witness,
    )
