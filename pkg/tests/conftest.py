"""Shared helpers for randomized matrix construction."""

import numpy as np

from eigbounds import DenseHermitian, SymTridiagonal


def random_hermitian(rng, n, scale=1.0, complex_entries=False):
    """Random Hermitian matrix with entries of the given scale."""
    m = rng.standard_normal((n, n))
    if complex_entries:
        m = m + 1j * rng.standard_normal((n, n))
    return DenseHermitian.from_array(scale * (m + m.conj().T) / 2.0)


def random_tridiagonal(rng, n, diag_scale=10.0, off_scale=1.0):
    """Random symmetric tridiagonal matrix."""
    return SymTridiagonal(diag_scale * rng.standard_normal(n),
                          off_scale * rng.standard_normal(n - 1))


def graded_tridiagonal(rng, n, top=200.0, off_lo=0.05, off_hi=1.0):
    """Tridiagonal with diagonal descending by a factor >= 2 per row."""
    ratios = rng.uniform(2.0, 4.0, n - 1)
    diag = top / np.concatenate([[1.0], np.cumprod(ratios)])
    return SymTridiagonal(diag, rng.uniform(off_lo, off_hi, n - 1))


def dense_shift(A, E):
    """Per-rank eigenvalue movement |lambda_i(A) - lambda_i(A+E)|."""
    from eigbounds import eig_dense
    before = eig_dense(A).values
    after = eig_dense(DenseHermitian.from_array(A.entries + E.entries)).values
    return np.abs(before - after)
