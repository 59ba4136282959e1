"""Test-matrix generators: Wilkinson matrices and the graded deflation fixture."""

from __future__ import annotations

import numpy as np

from .types import SymTridiagonal

__all__ = ["wilkinson_plus", "wilkinson_split", "aed_example"]


def wilkinson_plus(n: int) -> SymTridiagonal:
    """W+ of order 2n+1: diagonal (n, ..., 1, 0, 1, ..., n), unit couplings."""
    if n < 1:
        raise ValueError("wilkinson_plus requires n >= 1")
    diag = np.abs(np.arange(-n, n + 1)).astype(float)
    return SymTridiagonal(diag, np.ones(2 * n))


def wilkinson_split(n: int) -> tuple[SymTridiagonal, SymTridiagonal]:
    """Split W+(2n+1) = A + E with the two center couplings moved into E.

    A decouples into two copies of the same n-by-n block plus the scalar 0,
    so it has n eigenvalues of multiplicity 2 and the simple eigenvalue 0.
    """
    if n < 2:
        raise ValueError("wilkinson_split requires n >= 2")
    w = wilkinson_plus(n)
    off_a = w.offdiag.copy()
    off_e = np.zeros_like(off_a)
    off_a[n - 1] = 0.0
    off_a[n] = 0.0
    off_e[n - 1] = 1.0
    off_e[n] = 1.0
    return (SymTridiagonal(w.diag, off_a),
            SymTridiagonal(np.zeros_like(w.diag), off_e))


def aed_example(n: int = 1000) -> SymTridiagonal:
    """Graded tridiagonal with diagonal (100, n-1, n-2, ..., 1), unit couplings.

    The first diagonal entry is 100 and the rest descend n-1 ... 1, reading
    the printed fixture literally; the trailing window analysis only needs
    the descending tail.
    """
    if n < 2:
        raise ValueError("aed_example requires n >= 2")
    diag = np.concatenate(([100.0], np.arange(n - 1, 0, -1, dtype=float)))
    return SymTridiagonal(diag, np.ones(n - 1))
