"""Dense real matrices, e-matrix validation, LU inversion and scaled powers.

A "matrix" throughout the package is a read-only square ``float64`` numpy
array.  An :class:`EMatrix` wraps such an array together with its common row
sum (the trivial eigenvalue, with the all-ones vector as eigenvector).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DimensionMismatch, NotConstantRowSum, ParseError, SingularMatrix
from .pnorm import PNorm

ROW_SUM_RTOL = 1e-9
PIVOT_RTOL = 1e-12


def as_matrix(data) -> np.ndarray:
    """Return a read-only float copy of ``data`` after checking it is square and finite."""
    if isinstance(data, EMatrix):
        return data.matrix
    m = np.array(data, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 1:
        raise DimensionMismatch("matrix dimension must be at least 1")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    m.setflags(write=False)
    return m


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class EMatrix:
    """A square matrix whose rows all sum to ``trivial_eigenvalue``."""

    matrix: np.ndarray
    trivial_eigenvalue: float
    row_sum_tolerance: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix
        return self.matrix.astype(dtype)

    def __repr__(self) -> str:
        return f"EMatrix(n={self.n}, trivial_eigenvalue={self.trivial_eigenvalue!r})"


def default_row_sum_tol(m: np.ndarray) -> float:
    return ROW_SUM_RTOL * max(1.0, float(np.max(np.abs(m))))


def validate_ematrix(m, tol: float | None = None) -> EMatrix:
    """Check that every row of ``m`` has the same sum and wrap it as an :class:`EMatrix`.

    ``tol`` defaults to ``1e-9 * max(1, max|entry|)``.
    """
    arr = as_matrix(m)
    if tol is None:
        tol = default_row_sum_tol(arr)
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    sums = arr.sum(axis=1)
    mean = float(sums.mean())
    dev = np.abs(sums - mean)
    worst = int(np.argmax(dev))
    if dev[worst] > tol:
        raise NotConstantRowSum(worst, float(dev[worst]), tol)
    return EMatrix(arr, mean, float(tol))


def is_ematrix(m, tol: float | None = None) -> bool:
    try:
        validate_ematrix(m, tol)
    except NotConstantRowSum:
        return False
    return True


def ones(n: int) -> np.ndarray:
    """The all-ones matrix J."""
    return _frozen(np.ones((n, n)))


def multiply(a, b):
    """Matrix product.  Two e-matrices multiply to an e-matrix."""
    x, y = as_matrix(a), as_matrix(b)
    if x.shape != y.shape:
        raise DimensionMismatch(f"cannot multiply {x.shape} by {y.shape}")
    prod = _frozen(x @ y)
    if isinstance(a, EMatrix) and isinstance(b, EMatrix):
        return validate_ematrix(prod)
    return prod


def add_rank_one_shift(a: EMatrix, alpha: float) -> EMatrix:
    """A + alpha*J.  Only the trivial eigenvalue moves (by n*alpha)."""
    m = _frozen(a.matrix + alpha)
    return EMatrix(m, a.trivial_eigenvalue + a.n * alpha, a.row_sum_tolerance)


def add_diagonal_shift(a: EMatrix, alpha: float) -> EMatrix:
    """A + alpha*I.  Every eigenvalue moves by alpha."""
    m = _frozen(a.matrix + alpha * np.eye(a.n))
    return EMatrix(m, a.trivial_eigenvalue + alpha, a.row_sum_tolerance)


def deflate(a: EMatrix) -> EMatrix:
    """Shift by -(lambda_A/n) J so the trivial eigenvalue becomes 0.

    Ergodicity coefficients of every power are unchanged by the shift, while
    the powers themselves no longer carry the (possibly dominant) trivial
    component that would otherwise swamp the transverse part in floating point.
    """
    return add_rank_one_shift(a, -a.trivial_eigenvalue / a.n)


def induced_norm(a, p) -> float:
    """Operator norm induced by the l1 (max column sum) or l-inf (max row sum) vector norm."""
    m = np.abs(as_matrix(a))
    if PNorm.parse(p) is PNorm.ONE:
        return float(m.sum(axis=0).max())
    return float(m.sum(axis=1).max())


# -- LU ----------------------------------------------------------------------


def lu_factor(a, check: bool = True):
    """Doolittle LU with partial pivoting.

    Returns ``(lu, perm, sign)`` with ``L`` (unit lower) and ``U`` packed into
    ``lu`` and ``a[perm] == L @ U``.  With ``check`` set, a pivot smaller than
    ``1e-12 * max|entry|`` raises :class:`SingularMatrix`.
    """
    lu = np.array(as_matrix(a), dtype=float)
    n = lu.shape[0]
    perm = np.arange(n)
    sign = 1.0
    threshold = PIVOT_RTOL * float(np.max(np.abs(lu)))
    for j in range(n):
        piv = j + int(np.argmax(np.abs(lu[j:, j])))
        if piv != j:
            lu[[j, piv]] = lu[[piv, j]]
            perm[[j, piv]] = perm[[piv, j]]
            sign = -sign
        pivot = lu[j, j]
        if check and (abs(pivot) <= threshold or pivot == 0.0):
            raise SingularMatrix(j, abs(pivot), threshold)
        if pivot == 0.0:
            continue
        lu[j + 1:, j] /= pivot
        lu[j + 1:, j + 1:] -= np.outer(lu[j + 1:, j], lu[j, j + 1:])
    return lu, perm, sign


def lu_solve(lu: np.ndarray, perm: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    n = lu.shape[0]
    x = np.array(rhs, dtype=float)[perm]
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x


def determinant(a) -> float:
    lu, _, sign = lu_factor(a, check=False)
    return float(sign * np.prod(np.diag(lu)))


def invert(a):
    """Inverse via LU with partial pivoting.

    The inverse of a nonsingular e-matrix is an e-matrix with trivial
    eigenvalue ``1/lambda_A``; for a plain matrix a plain array is returned.
    """
    m = as_matrix(a)
    lu, perm, _ = lu_factor(m)
    inv = _frozen(lu_solve(lu, perm, np.eye(m.shape[0])))
    if not isinstance(a, EMatrix):
        return inv
    # forward error of the computed row sums grows with the condition number
    cond = induced_norm(m, PNorm.INF) * induced_norm(inv, PNorm.INF)
    tol = max(default_row_sum_tol(inv), ROW_SUM_RTOL * max(1.0, cond) * float(np.max(np.abs(inv))))
    return validate_ematrix(inv, tol)


# -- powers ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ScaledPower:
    """``A**k`` stored as ``scaled_matrix * exp(log_scale)``."""

    base: EMatrix | np.ndarray
    exponent: int
    scaled_matrix: np.ndarray
    log_scale: float

    def reconstruct(self) -> np.ndarray:
        """The unscaled power (may overflow for large exponents)."""
        return self.scaled_matrix * math.exp(self.log_scale)

    def root_of(self, value_of_scaled: float) -> float:
        """Turn ``f(scaled_matrix)`` into ``f(A**k) ** (1/k)`` for a positively homogeneous ``f``."""
        if value_of_scaled <= 0.0:
            return 0.0
        k = self.exponent
        return value_of_scaled ** (1.0 / k) * math.exp(self.log_scale / k)


def _normalize(m: np.ndarray, log_scale: float) -> tuple[np.ndarray, float]:
    s = float(np.max(np.abs(m)))
    if s == 0.0:
        return m, log_scale
    return m / s, log_scale + math.log(s)


def scaled_power(a, k: int) -> ScaledPower:
    """``A**k`` by binary exponentiation, renormalizing by the max entry after every product."""
    if k < 1:
        raise ValueError("exponent must be a positive integer")
    m = as_matrix(a)
    if k == 1:
        return ScaledPower(a, 1, m, 0.0)
    base, base_log = _normalize(m, 0.0)
    result = None
    result_log = 0.0
    e = k
    while True:
        if e & 1:
            if result is None:
                result, result_log = base, base_log
            else:
                result, result_log = _normalize(result @ base, result_log + base_log)
        e >>= 1
        if not e:
            break
        base, base_log = _normalize(base @ base, 2.0 * base_log)
    return ScaledPower(a, k, _frozen(result), result_log)


def squaring_chain(a, max_level: int) -> Iterator[ScaledPower]:
    """Yield the scaled powers ``A**(2**m)`` for ``m = 0 .. max_level``.

    Entry ``m`` is bit-identical to ``scaled_power(a, 2**m)``.
    """
    m = as_matrix(a)
    yield ScaledPower(a, 1, m, 0.0)
    cur, log = _normalize(m, 0.0)
    for level in range(1, max_level + 1):
        cur, log = _normalize(cur @ cur, 2.0 * log)
        yield ScaledPower(a, 2 ** level, _frozen(cur), log)


# -- text format -------------------------------------------------------------


def parse_matrix(text: str) -> np.ndarray:
    """Parse the whitespace matrix format.

    An optional first line holding only ``n`` may precede ``n`` rows of ``n``
    numbers; ``#`` starts a comment.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append((lineno, [float(tok) for tok in line.split()]))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ParseError("no matrix rows found")
    if len(rows) > 1 and len(rows[0][1]) == 1:
        declared = rows[0][1][0]
        if declared != int(declared) or declared < 1:
            raise ParseError(f"line {rows[0][0]}: bad dimension header {declared!r}")
        rows = rows[1:]
        if len(rows) != int(declared):
            raise ParseError(f"header declares n={int(declared)} but {len(rows)} rows follow")
    n = len(rows)
    for lineno, vals in rows:
        if len(vals) != n:
            raise ParseError(f"line {lineno}: expected {n} entries, got {len(vals)}")
    try:
        return as_matrix([vals for _, vals in rows])
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_matrix(m, header: bool = True) -> str:
    arr = as_matrix(m)
    lines = [str(arr.shape[0])] if header else []
    lines += [" ".join(f"{x:.17g}" for x in row) for row in arr]
    return "\n".join(lines) + "\n"
