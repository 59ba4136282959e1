"""Perturbation bounds for 2x2-block Hermitian matrices.

All bounds pair the i-th smallest eigenvalue of A with the i-th smallest of
A+E (rank pairing).  Gaps are measured against the oracle spectrum of the
trailing diagonal block A22.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .solvers import eig_dense, spectral_norm
from .types import BlockSplit, DenseHermitian, LogScalar

__all__ = [
    "BoundReport",
    "weyl_bound",
    "quadratic_residual_bound",
    "quadratic_residual_bounds",
    "eigvec_tail_bound",
    "tau",
    "theorem1_bound",
    "theorem1_bounds",
]


@dataclass(frozen=True)
class BoundReport:
    """One eigenvalue index, one bound, with provenance."""

    index: int                      # 1-based rank
    bound: LogScalar
    formula: str                    # weyl | quad_residual | theorem1 | min_of
    gap: float
    valid: bool
    tau: float | None = None
    components: dict = field(default_factory=dict)

    def bound_float(self) -> float:
        return self.bound.float_or_zero()


def weyl_bound(E: DenseHermitian) -> float:
    """||E||_2: the structure-free bound, sound for every index."""
    return spectral_norm(E)


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise IndexError(f"eigenvalue index {i} out of range 1..{n}")


def _gap_to_block(lam: float, block_vals: np.ndarray) -> float:
    return float(np.min(np.abs(lam - block_vals)))


def quadratic_residual_bounds(A: DenseHermitian, split: BlockSplit,
                              E: DenseHermitian,
                              indices=None) -> list[BoundReport]:
    """quadratic_residual_bound for many indices with the shared
    eigendecompositions computed once."""
    split.check(A.n)
    if indices is None:
        indices = range(1, A.n + 1)
    if np.any(A.block(split, "21")):
        raise ValueError("A must be block diagonal (zero off-diagonal blocks)")
    if np.any(E.block(split, "11")) or np.any(E.block(split, "22")):
        raise ValueError("perturbation must have zero diagonal blocks")
    norm_e = spectral_norm(E)
    vals = eig_dense(A).values
    a2_vals = eig_dense(DenseHermitian.from_array(A.block(split, "22"))).values
    out = []
    for i in indices:
        _check_index(i, A.n)
        gap = _gap_to_block(float(vals[i - 1]), a2_vals)
        if gap == 0.0:
            # zero gap: fall back to Weyl, flagged invalid for the
            # quadratic form
            out.append(BoundReport(i, LogScalar.from_float(norm_e), "weyl",
                                   gap=0.0, valid=False,
                                   components={"weyl_fallback": norm_e}))
            continue
        out.append(BoundReport(i, LogScalar.from_float(norm_e ** 2 / gap),
                               "quad_residual", gap=gap, valid=True,
                               components={"norm_E": norm_e}))
    return out


def quadratic_residual_bound(A: DenseHermitian, split: BlockSplit,
                             E: DenseHermitian, i: int) -> BoundReport:
    """Quadratic residual bound for block-diagonal A under an off-diagonal
    perturbation: ||E||^2 / gap, gap measured to the trailing block."""
    return quadratic_residual_bounds(A, split, E, [i])[0]


def eigvec_tail_bound(A: DenseHermitian, split: BlockSplit, lam: float) -> float:
    """Bound on the trailing eigenvector component norm ||x2|| for an
    eigenvalue lam of A: ||A21|| / min_j |lam - lambda_j(A22)|."""
    split.check(A.n)
    a22 = DenseHermitian.from_array(A.block(split, "22"))
    gap = _gap_to_block(lam, eig_dense(a22).values)
    if gap <= 0.0:
        raise ValueError("lam coincides with an eigenvalue of A22 (zero gap)")
    return spectral_norm(A.block(split, "21")) / gap


def tau(A: DenseHermitian, E: DenseHermitian, split: BlockSplit, i: int,
        refined: bool = False) -> float | None:
    """Trailing-component bound along the homotopy from A to A+E.

    tau_i = (||A21|| + ||E21||) / (gap_i - 2||E||), where gap_i is the
    distance from the i-th eigenvalue of A to the spectrum of A22.  The
    refined variant subtracts ||E|| + ||E22|| instead, which the homotopy
    argument justifies.  Returns None when the denominator is not positive.
    """
    split.check(A.n)
    _check_index(i, A.n)
    lam = float(eig_dense(A).values[i - 1])
    a22_vals = eig_dense(DenseHermitian.from_array(A.block(split, "22"))).values
    gap = _gap_to_block(lam, a22_vals)
    norm_e = spectral_norm(E)
    if refined:
        e22 = spectral_norm(DenseHermitian.from_array(E.block(split, "22")))
        denom = gap - norm_e - e22
    else:
        denom = gap - 2.0 * norm_e
    if denom <= 0.0:
        return None
    numer = spectral_norm(A.block(split, "21")) + spectral_norm(E.block(split, "21"))
    return numer / denom


def theorem1_bounds(A: DenseHermitian, E: DenseHermitian, split: BlockSplit,
                    indices=None, refined: bool = False,
                    values=None) -> list[BoundReport]:
    """theorem1_bound for many indices with the shared eigendecompositions
    and block norms computed once.  Callers that already hold the ascending
    eigenvalues of A can pass them as `values` to skip that decomposition."""
    split.check(A.n)
    if indices is None:
        indices = range(1, A.n + 1)
    vals = eig_dense(A).values if values is None else np.asarray(values, dtype=float)
    if vals.shape != (A.n,):
        raise ValueError(f"values must have shape ({A.n},), got {vals.shape}")
    a22_vals = eig_dense(DenseHermitian.from_array(A.block(split, "22"))).values
    weyl = weyl_bound(E)
    a21n = spectral_norm(A.block(split, "21"))
    e11 = spectral_norm(DenseHermitian.from_array(E.block(split, "11")))
    e21 = spectral_norm(E.block(split, "21"))
    e22 = spectral_norm(DenseHermitian.from_array(E.block(split, "22")))
    slack = (weyl + e22) if refined else 2.0 * weyl
    out = []
    for i in indices:
        _check_index(i, A.n)
        gap = _gap_to_block(float(vals[i - 1]), a22_vals)
        denom = gap - slack
        if denom <= 0.0:
            out.append(BoundReport(i, LogScalar.from_float(weyl), "weyl",
                                   gap=gap, valid=False,
                                   components={"weyl": weyl}))
            continue
        t = (a21n + e21) / denom
        term2 = 2.0 * e21 * t
        term3 = e22 * t * t
        thm = e11 + term2 + term3
        out.append(BoundReport(i, LogScalar.from_float(min(thm, weyl)),
                               "min_of", gap=gap, valid=True, tau=t,
                               components={"E11_term": e11,
                                           "cross_term": term2,
                                           "E22_term": term3, "weyl": weyl,
                                           "theorem1": thm}))
    return out


def theorem1_bound(A: DenseHermitian, E: DenseHermitian, split: BlockSplit,
                   i: int, refined: bool = False) -> BoundReport:
    """Three-term eigenvalue movement bound
    ||E11|| + 2 ||E21|| tau_i + ||E22|| tau_i^2, reported together with its
    minimum against the Weyl bound (formula tag min_of)."""
    return theorem1_bounds(A, E, split, [i], refined=refined)[0]
