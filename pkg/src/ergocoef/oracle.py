"""Reference eigenvalues for checking the bounds.

This module deliberately shares nothing with the bound code: general
matrices go through the characteristic polynomial (Faddeev-LeVerrier trace
recursion) and simultaneous Aberth-Ehrlich root iteration, symmetric ones
through cyclic Jacobi rotations.  It is meant for desk-sized matrices only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DimensionTooLarge, NonConvergence

MAX_CHARPOLY_DIM = 14
ROOT_TOL = 1e-12
ROOT_MAX_ITER = 500
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
_EPS = np.finfo(float).eps
# irrational offset keeps the starting circle off any symmetry axis of the roots
_ANGLE_OFFSET = math.pi * (math.sqrt(5.0) - 1.0) / 2.0


class SpectrumMethod(enum.Enum):
    CHAR_POLY_ROOTS = "charpoly-roots"
    JACOBI_SYMMETRIC = "jacobi-symmetric"


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted by ascending modulus.

    ``max_residual`` is the largest normalized polynomial residual
    ``|p(z)| / sum_j |c_j| |z|^j`` for the char-poly path, and the remaining
    relative off-diagonal Frobenius mass for the Jacobi path.
    """

    eigenvalues: np.ndarray
    max_residual: float
    method: SpectrumMethod

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.eigenvalues)

    def __len__(self) -> int:
        return len(self.eigenvalues)


class Extremes(NamedTuple):
    smallest_modulus: float
    largest_modulus: float


def _square(m) -> np.ndarray:
    arr = np.array(m, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a nonempty square matrix, got shape {arr.shape}")
    return arr


def characteristic_polynomial(m) -> np.ndarray:
    """Monic coefficients of det(xI - A), highest degree first."""
    a = _square(m)
    n = a.shape[0]
    if n > MAX_CHARPOLY_DIM:
        raise DimensionTooLarge(f"characteristic polynomial limited to n <= {MAX_CHARPOLY_DIM}, got {n}")
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    aux = np.eye(n)
    for k in range(1, n + 1):
        prod = a @ aux
        coeffs[k] = -np.trace(prod) / k
        aux = prod + coeffs[k] * np.eye(n)
    return coeffs


def _horner(coeffs: np.ndarray, z: np.ndarray):
    p = np.full(z.shape, coeffs[0], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    scale = np.full(z.shape, abs(coeffs[0]))
    az = np.abs(z)
    for c in coeffs[1:]:
        dp = dp * z + p
        p = p * z + c
        scale = scale * az + abs(c)
    return p, dp, scale


def polynomial_roots(coeffs: Sequence[float], *, return_residual: bool = False):
    """All complex roots of a real polynomial (coefficients highest degree first).

    Aberth-Ehrlich iteration started on a circle of radius
    ``1 + max|c_i / c_0|``.  A root is accepted once its update drops below
    ``1e-12 * radius`` or its residual reaches rounding level.
    """
    c = np.asarray(coeffs, dtype=float)
    if c.ndim != 1 or c.shape[0] < 1:
        raise ValueError("need at least one coefficient")
    if c[0] == 0.0:
        raise ValueError("leading coefficient must be nonzero")
    if c.shape[0] - 1 > MAX_CHARPOLY_DIM:
        raise DimensionTooLarge(f"degree limited to {MAX_CHARPOLY_DIM}")
    a = c / c[0]
    zeros = 0
    while a.shape[0] > 1 and a[-1] == 0.0:
        a = a[:-1]
        zeros += 1
    deg = a.shape[0] - 1
    found = np.zeros(0, dtype=complex)
    residual = 0.0
    if deg > 0:
        found, residual = _aberth(a, deg)
    roots = np.concatenate([np.zeros(zeros, dtype=complex), found])
    return (roots, residual) if return_residual else roots


def _aberth(a: np.ndarray, deg: int):
    radius = 1.0 + float(np.max(np.abs(a[1:])))
    angles = 2.0 * np.pi * np.arange(deg) / deg + _ANGLE_OFFSET
    z = radius * np.exp(1j * angles)
    done = np.zeros(deg, dtype=bool)
    best, best_res = z.copy(), math.inf
    for _ in range(ROOT_MAX_ITER):
        p, dp, scale = _horner(a, z)
        res = np.abs(p) / np.where(scale > 0, scale, 1.0)
        worst = float(res.max())
        if worst < best_res:
            best, best_res = z.copy(), worst
        done |= res <= 4.0 * (deg + 1) * _EPS
        if done.all():
            return z, worst
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        repel = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = p / dp
            step = newton / (1.0 - newton * repel)
        bad = ~np.isfinite(step)
        # p'(z) == 0: nudge off the critical point
        step[bad] = 1e-3 * radius * np.exp(1j * _ANGLE_OFFSET)
        step[done] = 0.0
        z = z - step
        done |= np.abs(step) < ROOT_TOL * radius
        if done.all():
            p, _, scale = _horner(a, z)
            return z, float((np.abs(p) / np.where(scale > 0, scale, 1.0)).max())
    raise NonConvergence(
        f"Aberth iteration did not converge in {ROOT_MAX_ITER} iterations", best=best, residual=best_res
    )


def _is_symmetric(a: np.ndarray) -> bool:
    scale = max(1.0, float(np.max(np.abs(a))))
    return bool(np.all(np.abs(a - a.T) <= 1e-14 * scale))


def _off_diagonal(a: np.ndarray) -> float:
    # direct sum; subtracting the diagonal from the full norm cancels
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigenvalues(m) -> tuple[np.ndarray, float]:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps.

    Returns ``(eigenvalues, relative_off_diagonal_mass)``.
    """
    a = _square(m)
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    total = float(np.linalg.norm(a))
    if total == 0.0:
        return np.zeros(n), 0.0
    for _ in range(JACOBI_MAX_SWEEPS):
        off = _off_diagonal(a)
        if off < JACOBI_TOL * total:
            return np.diag(a).copy(), off / total
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    off = _off_diagonal(a)
    raise NonConvergence(
        f"Jacobi rotations did not converge in {JACOBI_MAX_SWEEPS} sweeps",
        best=np.diag(a).copy(),
        residual=off / total,
    )


def _sort_by_modulus(vals: np.ndarray) -> np.ndarray:
    vals = np.asarray(vals, dtype=complex)
    order = np.lexsort((vals.imag, vals.real, np.round(np.abs(vals), 12)))
    return vals[order]


def spectrum(m, method: SpectrumMethod | None = None) -> Spectrum:
    """Eigenvalues of ``m`` sorted by ascending modulus.

    Symmetric input goes through Jacobi unless ``method`` forces the
    char-poly path.
    """
    a = _square(m)
    if method is None:
        method = SpectrumMethod.JACOBI_SYMMETRIC if _is_symmetric(a) else SpectrumMethod.CHAR_POLY_ROOTS
    if method is SpectrumMethod.JACOBI_SYMMETRIC:
        if not _is_symmetric(a):
            raise ValueError("Jacobi path needs a symmetric matrix")
        vals, res = jacobi_eigenvalues(a)
        return Spectrum(_sort_by_modulus(vals.astype(complex)), res, method)
    roots, res = polynomial_roots(characteristic_polynomial(a), return_residual=True)
    # real input: snap rounding-level imaginary parts of simple real roots
    scale = max(1.0, float(np.max(np.abs(roots)))) if roots.size else 1.0
    roots = np.where(np.abs(roots.imag) <= 1e-13 * scale, roots.real + 0j, roots)
    return Spectrum(_sort_by_modulus(roots), res, method)


def nontrivial_eigenvalues(m, trivial_eigenvalue: float | None = None) -> np.ndarray:
    """Spectrum with the single eigenvalue nearest the trivial one removed."""
    arr = np.asarray(m, dtype=float)
    if trivial_eigenvalue is None:
        trivial_eigenvalue = getattr(m, "trivial_eigenvalue", None)
        if trivial_eigenvalue is None:
            trivial_eigenvalue = float(arr.sum(axis=1).mean())
    vals = spectrum(arr).eigenvalues
    drop = int(np.argmin(np.abs(vals - trivial_eigenvalue)))
    return np.delete(vals, drop)


def nontrivial_extremes(m, trivial_eigenvalue: float | None = None) -> Extremes:
    """Smallest and largest modulus among the non-trivial eigenvalues."""
    if np.asarray(m).shape[0] < 2:
        raise ValueError("need n >= 2 to have a non-trivial eigenvalue")
    mods = np.abs(nontrivial_eigenvalues(m, trivial_eigenvalue))
    return Extremes(float(mods.min()), float(mods.max()))
