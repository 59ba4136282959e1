"""First-order perturbation expansion of multiple eigenvalues.

For a cluster of (numerically) equal eigenvalues with orthonormal basis Q1,
the first-order motion under A + eps*E is the spectrum of the compressed
matrix Q1^H E Q1; the trailing term is quadratic in eps because the cluster
is separated from the rest of the spectrum by a positive gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .solvers import eig_dense, spectral_norm
from .types import DenseHermitian

__all__ = [
    "MultipleEigContext",
    "detect_multiple",
    "first_order_eigs",
    "expansion_order",
    "OrderFit",
]


@dataclass(frozen=True)
class MultipleEigContext:
    """A multiple (or tightly clustered) eigenvalue of A with its eigenspace."""

    matrix: DenseHermitian
    lambda0: float                  # cluster mean
    multiplicity: int
    basis: np.ndarray               # n x r orthonormal eigenspace basis
    gap: float                      # distance to the nearest outside eigenvalue
    ranks: tuple                    # 0-based positions in the ascending spectrum


def detect_multiple(A: DenseHermitian,
                    cluster_tol: float = 1e-8) -> list[MultipleEigContext]:
    """Group the oracle spectrum into clusters of diameter
    <= cluster_tol * ||A||_2 and emit a context per cluster of size >= 2."""
    if cluster_tol <= 0.0:
        raise ValueError("cluster_tol must be positive")
    spec = eig_dense(A, want_vectors=True)
    vals = spec.values
    scale = max(abs(float(vals[0])), abs(float(vals[-1])), 1e-300)
    tol = cluster_tol * scale
    contexts = []
    start = 0
    n = vals.size
    while start < n:
        stop = start + 1
        while stop < n and vals[stop] - vals[start] <= tol:
            stop += 1
        r = stop - start
        if r >= 2:
            lam0 = float(np.mean(vals[start:stop]))
            outside = np.concatenate([vals[:start], vals[stop:]])
            gap = float(np.min(np.abs(outside - lam0))) if outside.size else math.inf
            contexts.append(MultipleEigContext(
                matrix=A, lambda0=lam0, multiplicity=r,
                basis=spec.vectors[:, start:stop].copy(),
                gap=gap, ranks=tuple(range(start, stop))))
        start = stop
    return contexts


def _compressed_values(ctx: MultipleEigContext, E: DenseHermitian) -> np.ndarray:
    q1 = ctx.basis
    comp = q1.conj().T @ E.entries @ q1
    return eig_dense(DenseHermitian.from_array(comp, atol=1e-6)).values


def first_order_eigs(ctx: MultipleEigContext, E: DenseHermitian,
                     eps: float) -> np.ndarray:
    """Predicted cluster eigenvalues of A + eps*E: lambda0 + eps * mu_i for
    mu_i the ascending eigenvalues of Q1^H E Q1."""
    if eps < 0.0:
        raise ValueError("eps must be nonnegative")
    return ctx.lambda0 + eps * _compressed_values(ctx, E)


@dataclass(frozen=True)
class OrderFit:
    """Log-log regression of prediction error against eps."""

    eps_grid: np.ndarray
    errors: np.ndarray
    gap_bounds: np.ndarray          # quadratic-gap bound per eps
    slope: float | None             # None when every error is exactly 0
    exact: bool

    @property
    def within_gap_bound(self) -> np.ndarray:
        return self.errors <= self.gap_bounds


def expansion_order(ctx: MultipleEigContext, E: DenseHermitian,
                    eps_grid) -> OrderFit:
    """Measure the order of the first-order expansion's trailing term.

    For each eps, the error is the worst rank-paired difference between the
    oracle cluster eigenvalues of A + eps*E and the first-order predictions;
    the fitted log-log slope should be about 2.  Each error is also compared
    with the quadratic-gap bound 2||eps E||^2 / (gap + sqrt(gap^2 +
    4||eps E||^2)).
    """
    eps_grid = np.asarray(sorted(map(float, eps_grid), reverse=True))
    if eps_grid.size < 2 or eps_grid[-1] <= 0.0:
        raise ValueError("eps grid must hold at least two positive values")
    if eps_grid[0] / eps_grid[-1] < 100.0:
        raise ValueError("eps grid must span at least two decades")
    norm_e = spectral_norm(E)
    if math.isfinite(ctx.gap) and norm_e * eps_grid[0] >= ctx.gap / 4.0:
        raise ValueError("largest eps violates eps*||E|| < gap/4")
    mu = _compressed_values(ctx, E)
    ranks = list(ctx.ranks)
    errors = []
    gap_bounds = []
    for eps in eps_grid:
        perturbed = DenseHermitian.from_array(
            ctx.matrix.entries + eps * E.entries)
        observed = eig_dense(perturbed).values[ranks]
        predicted = ctx.lambda0 + eps * mu
        errors.append(float(np.max(np.abs(observed - predicted))))
        en = eps * norm_e
        gap_bounds.append(2.0 * en * en /
                          (ctx.gap + math.hypot(ctx.gap, 2.0 * en)))
    errors = np.asarray(errors)
    gap_bounds = np.asarray(gap_bounds)
    scale = max(abs(ctx.lambda0), 1.0)
    if np.all(errors <= 64.0 * np.finfo(float).eps * scale):
        return OrderFit(eps_grid, errors, gap_bounds, slope=None, exact=True)
    slope = float(np.polyfit(np.log(eps_grid), np.log(np.maximum(errors, 1e-300)), 1)[0])
    return OrderFit(eps_grid, errors, gap_bounds, slope=slope, exact=False)
