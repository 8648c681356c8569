"""Explicit ergodicity coefficients tau_1 and tau_inf.

For a real square matrix A and the all-ones vector e,

    tau_p(A) = max { ||A^T x||_p : x real, x^T e = 0, ||x||_p = 1 }.

On constant row-sum matrices the two coefficients have closed forms:

* ``tau_1(A)`` is half the largest l1 distance between two rows, or
  equivalently ``lambda_A - min_{i,j} sum_k min(a_ik, a_jk)``;
* ``tau_inf(A)`` is the largest column statistic ``cs_j``, the upper half of
  the sorted column minus its lower half (the median entry drops out for
  odd n).

Both formulas are evaluated for any square input, but they coincide with the
max-over-the-sphere definition only for constant row-sum matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .matrix import EMatrix, as_matrix
from .pnorm import BOTH, PNorm

__all__ = [
    "BOTH",
    "ColumnStat",
    "PNorm",
    "column_stat",
    "rho_hat",
    "tau",
    "tau_1",
    "tau_1_minform",
    "tau_inf",
]


@dataclass(frozen=True)
class ColumnStat:
    column_index: int
    cs_value: float


def _cs(sorted_desc: np.ndarray) -> float:
    n = sorted_desc.shape[0]
    half = n // 2
    # odd n: the middle element b_{(n+1)/2} belongs to neither half
    return float(sorted_desc[:half].sum() - sorted_desc[n - half:].sum())


def column_stat(column: Sequence[float], index: int = 0) -> ColumnStat:
    col = np.asarray(column, dtype=float)
    if col.ndim != 1 or col.shape[0] < 1:
        raise ValueError("column must be a nonempty 1-d sequence")
    return ColumnStat(index, _cs(np.sort(col, kind="stable")[::-1]))


def column_stats(m) -> list[ColumnStat]:
    arr = as_matrix(m)
    ordered = np.sort(arr, axis=0, kind="stable")[::-1]
    return [ColumnStat(j, _cs(ordered[:, j])) for j in range(arr.shape[1])]


def rho_hat(m) -> float:
    """Largest column statistic ``max_j cs_j(A)``."""
    arr = as_matrix(m)
    ordered = np.sort(arr, axis=0)[::-1]
    n = arr.shape[0]
    half = n // 2
    cs = ordered[:half].sum(axis=0) - ordered[n - half:].sum(axis=0)
    return float(max(cs.max(), 0.0))


def tau_inf(m) -> float:
    return rho_hat(m)


def tau_1(m) -> float:
    """Half the largest l1 distance between two rows (all unordered pairs)."""
    arr = as_matrix(m)
    dist = np.abs(arr[:, None, :] - arr[None, :, :]).sum(axis=2)
    return 0.5 * float(dist.max())


def tau_1_minform(a: EMatrix) -> float:
    """``lambda_A - min_{i,j} sum_k min(a_ik, a_jk)``; needs constant row sums."""
    if not isinstance(a, EMatrix):
        raise TypeError("tau_1_minform requires an EMatrix")
    arr = a.matrix
    overlap = np.minimum(arr[:, None, :], arr[None, :, :]).sum(axis=2)
    return float(a.trivial_eigenvalue - overlap.min())


def tau(m, p) -> float:
    """Dispatch on the norm selector."""
    if PNorm.parse(p) is PNorm.ONE:
        return tau_1(m)
    return tau_inf(m)
