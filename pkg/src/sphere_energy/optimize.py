"""Projected gradient ascent for the ratio u2^4 / l2^4 over a fixed support.

The ratio is scale invariant, so we maximize u2^4 on the unit l2 sphere
intersected with {f : supp(f) in A}: iterate f <- project(f + step * grad),
halving the step whenever the objective would decrease. Starts are drawn
from independent seeded streams and merged by max, so runs with the same
seed are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypercube import Point, check_point
from .spectral import DenseFunction, fwht_in_place

STEP_FLOOR = 1e-18


class ZeroRestrictionError(ValueError):
    """The function restricted to the support is identically zero."""


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 32
    step: float = 0.5
    tol: float = 1e-10
    max_iters: int = 50_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.starts < 1:
            raise ValueError(f"starts must be >= 1, got {self.starts}")
        if self.step <= 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")


@dataclass
class StartTrace:
    start: int
    iterations: int
    final_grad_norm: float
    ratio: float
    converged: bool


@dataclass
class OptimizerResult:
    """Best ratio over all starts; argmax has unit l2 and is zero outside A."""

    best_ratio: float
    argmax: DenseFunction
    starts: list[StartTrace]


def u2_gradient(f: DenseFunction) -> DenseFunction:
    """Pointwise gradient of u2^4: g(x) = (4/N^3) sum_{a2,a3} f(a2)f(a3)f(x+a2+a3).

    Evaluated spectrally as (4/N) times the inverse transform of fhat^3;
    matches centered finite differences of the naive oracle.
    """
    w = f.values.copy()
    fwht_in_place(w)
    size = w.shape[0]
    w /= size
    w *= np.square(w)
    fwht_in_place(w)
    w *= 4.0 / size
    return DenseFunction(f.n, w)


def project(f: DenseFunction, support) -> DenseFunction:
    """Zero every entry outside the support, then rescale to unit l2."""
    idx = _support_indices(f.n, support)
    out = np.zeros_like(f.values)
    out[idx] = f.values[idx]
    norm = float(np.sqrt(np.mean(np.square(out))))
    if norm == 0.0:
        raise ZeroRestrictionError("function vanishes on the support")
    out /= norm
    return DenseFunction(f.n, out)


def _support_indices(n: int, support) -> np.ndarray:
    pts = sorted(set(support))
    if not pts:
        raise ValueError("support must be nonempty")
    for x in pts:
        check_point(x, n)
    return np.asarray(pts, dtype=np.intp)


def ratio_objective(f: DenseFunction) -> float:
    """The scale-invariant ratio u2^4(f) / l2(f)^4."""
    w = f.values.copy()
    fwht_in_place(w)
    size = w.shape[0]
    np.square(w, out=w)
    numerator = float(w @ w) / size**4
    mean_sq = float(np.mean(np.square(f.values)))
    return numerator / mean_sq**2


def _ascend_one_start(
    values: np.ndarray, idx: np.ndarray, cfg: OptimizerConfig, start: int
) -> tuple[np.ndarray, StartTrace]:
    """Run projected gradient ascent from one unit-norm start (in place on a copy)."""
    size = values.shape[0]
    f = values
    step = cfg.step

    def spectrum(v: np.ndarray) -> np.ndarray:
        w = v.copy()
        fwht_in_place(w)
        w /= size
        return w

    def restrict_normalize(v: np.ndarray) -> np.ndarray | None:
        out = np.zeros_like(v)
        out[idx] = v[idx]
        norm = float(np.sqrt(np.mean(np.square(out))))
        if norm == 0.0:
            return None
        out /= norm
        return out

    fhat = spectrum(f)
    obj = float(np.sum(fhat**4))
    grad_norm = np.inf
    converged = False
    iterations = 0
    for iterations in range(1, cfg.max_iters + 1):
        grad = np.square(fhat) * fhat
        fwht_in_place(grad)
        grad *= 4.0 / size
        # tangent component of the support-restricted gradient; f is unit norm
        tangent = np.zeros_like(grad)
        tangent[idx] = grad[idx]
        tangent -= float(np.mean(tangent * f)) * f
        grad_norm = float(np.sqrt(np.mean(np.square(tangent))))
        if grad_norm < cfg.tol:
            converged = True
            break
        improved = False
        while step >= STEP_FLOOR:
            trial = restrict_normalize(f + step * grad)
            if trial is not None:
                trial_hat = spectrum(trial)
                trial_obj = float(np.sum(trial_hat**4))
                if trial_obj >= obj:
                    f = trial
                    fhat = trial_hat
                    obj = trial_obj
                    improved = True
                    break
            step /= 2.0
        if not improved:
            break
        step = min(step * 2.0, cfg.step)
    return f, StartTrace(start, iterations, grad_norm, obj, converged)


def maximize_ratio(n: int, support, cfg: OptimizerConfig) -> OptimizerResult:
    """Multi-start projected gradient ascent over functions supported on A.

    Start vectors are standard normals on the support coordinates (projected
    to the unit sphere) drawn from per-start seeded streams; a start that
    happens to vanish after restriction is redrawn, not aborted. The best
    start by final objective wins.
    """
    idx = _support_indices(n, support)
    size = 1 << n
    best_values: np.ndarray | None = None
    best_ratio = -np.inf
    traces: list[StartTrace] = []
    for start in range(cfg.starts):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((cfg.seed, start))))
        values = None
        while values is None:
            raw = np.zeros(size)
            raw[idx] = rng.standard_normal(idx.shape[0])
            norm = float(np.sqrt(np.mean(np.square(raw))))
            if norm > 0.0:
                values = raw / norm
        final, trace = _ascend_one_start(values, idx, cfg, start)
        traces.append(trace)
        if trace.ratio > best_ratio:
            best_ratio = trace.ratio
            best_values = final
    assert best_values is not None
    return OptimizerResult(best_ratio, DenseFunction(n, best_values), traces)
