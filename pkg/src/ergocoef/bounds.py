"""Eigenvalue bounds and estimates built from tau_1 / tau_inf.

For an e-matrix A every non-trivial eigenvalue satisfies
``|lambda| <= tau_p(A**k) ** (1/k)`` for all k, the bound converges to the
largest non-trivial modulus as k grows, and along k = 1, 2, 4, 8, ... it is
non-increasing.  Applied to ``A**-1`` (or ``(A + alpha J)**-1`` when A is
singular with a simple zero trivial eigenvalue) the same machinery gives
lower bounds on the smallest non-trivial modulus.

Powers beyond the first are taken of ``A - (lambda_A/n) J``, which has the
same coefficients for every power but no trivial component, and are kept
normalized so that very large k neither overflows nor loses the transverse
part to cancellation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .coefficients import tau
from .errors import DegenerateCoefficient, TrivialEigenvalueNotZero
from .matrix import (
    EMatrix,
    add_rank_one_shift,
    default_row_sum_tol,
    deflate,
    invert,
    scaled_power,
    squaring_chain,
    validate_ematrix,
)
from .pnorm import PNorm

DEFAULT_REL_TOL = 1e-4
DEFAULT_MAX_LEVEL = 20
MAX_DOUBLING_LEVEL = 30
MAX_PROBE_K = 20
_EXACT_LIMIT = 2.0 ** 53


class Mode(enum.Enum):
    ALL_K = "all-k"
    DOUBLING = "doubling"


class Target(enum.Enum):
    LARGEST_NON_TRIVIAL = "largest"
    SMALLEST_NON_TRIVIAL = "smallest"


@dataclass(frozen=True)
class BoundEntry:
    """One bound together with the scaling that produced it.

    For largest-modulus bounds ``bound = tau_scaled**(1/k) * exp(log_scale/k)``;
    for smallest-modulus bounds it is the reciprocal of that quantity taken
    on the inverse.
    """

    k: int
    bound: float
    tau_scaled: float
    log_scale: float


@dataclass(frozen=True)
class BoundSequence:
    p: PNorm
    entries: tuple[BoundEntry, ...]
    mode: Mode
    target: Target
    alpha: float | None = None

    @property
    def ks(self) -> list[int]:
        return [e.k for e in self.entries]

    @property
    def bounds(self) -> list[float]:
        return [e.bound for e in self.entries]


@dataclass(frozen=True)
class SimplicityReport:
    trivial_eigenvalue: float
    tau_value: float
    is_certified_simple: bool
    gap_lower_bound: float


class Estimate(NamedTuple):
    estimate: float
    levels_used: int
    converged: bool


@dataclass(frozen=True)
class ProbeResult:
    p: PNorm
    values: tuple[tuple[int, float], ...]
    constant_all: bool
    first_two_equal: bool

    @property
    def refutes_two_step_conjecture(self) -> bool:
        """tau(A) == tau(A^2) but some later power differs."""
        return self.first_two_equal and not self.constant_all


def _as_ematrix(a) -> EMatrix:
    return a if isinstance(a, EMatrix) else validate_ematrix(a)


def _entry(sp, p: PNorm) -> BoundEntry:
    t = tau(sp.scaled_matrix, p)
    return BoundEntry(sp.exponent, sp.root_of(t), t, sp.log_scale)


def _largest_entry(a: EMatrix, p: PNorm, k: int) -> BoundEntry:
    if k == 1:
        return _entry(scaled_power(a, 1), p)
    return _entry(scaled_power(deflate(a), k), p)


def _doubling_entries(a: EMatrix, p: PNorm, max_level: int) -> Iterator[BoundEntry]:
    if not 0 <= max_level <= MAX_DOUBLING_LEVEL:
        raise ValueError(f"max_level must lie in [0, {MAX_DOUBLING_LEVEL}]")
    yield _entry(scaled_power(a, 1), p)
    chain = squaring_chain(deflate(a), max_level)
    next(chain)
    for sp in chain:
        yield _entry(sp, p)


def largest_bound(a, p, k: int) -> float:
    """Upper bound ``tau_p(A**k)**(1/k)`` on every non-trivial |eigenvalue|.

    It also bounds |lambda_A| whenever the trivial eigenvalue is not simple.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    return _largest_entry(_as_ematrix(a), PNorm.parse(p), k).bound


def bound_sequence(a, p, max_k: int) -> BoundSequence:
    """Largest-modulus bounds for every k in 1..max_k."""
    a, p = _as_ematrix(a), PNorm.parse(p)
    if max_k < 1:
        raise ValueError("max_k must be a positive integer")
    entries = tuple(_largest_entry(a, p, k) for k in range(1, max_k + 1))
    return BoundSequence(p, entries, Mode.ALL_K, Target.LARGEST_NON_TRIVIAL)


def doubling_bounds(a, p, max_level: int) -> BoundSequence:
    """Bounds at k = 1, 2, 4, ..., 2**max_level; the sequence never increases."""
    a, p = _as_ematrix(a), PNorm.parse(p)
    entries = tuple(_doubling_entries(a, p, max_level))
    return BoundSequence(p, entries, Mode.DOUBLING, Target.LARGEST_NON_TRIVIAL)


def estimate_largest(
    a, p, rel_tol: float = DEFAULT_REL_TOL, max_level: int = DEFAULT_MAX_LEVEL
) -> Estimate:
    """Run the doubling sequence until two successive bounds agree to ``rel_tol``.

    The estimate is the smallest bound seen, so it never falls below the
    largest non-trivial modulus.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    a, p = _as_ematrix(a), PNorm.parse(p)
    best, best_level = math.inf, 0
    prev = None
    for level, entry in enumerate(_doubling_entries(a, p, max_level)):
        b = entry.bound
        # levels_used names the earliest k = 2**level that already attains the estimate
        if b < best * (1.0 - 1e-12):
            best_level = level
        best = min(best, b)
        if b == 0.0:
            return Estimate(0.0, best_level, True)
        if prev is not None and abs(prev - b) < rel_tol * prev:
            return Estimate(best, best_level, True)
        prev = b
    return Estimate(best, best_level, False)


def simplicity_check(a, p) -> SimplicityReport:
    """Certify that lambda_A is simple and strictly dominant when |lambda_A| > tau_p(A)."""
    a, p = _as_ematrix(a), PNorm.parse(p)
    t = tau(a.matrix, p)
    lam = a.trivial_eigenvalue
    gap = abs(lam) - t
    return SimplicityReport(lam, t, abs(lam) > t, gap)


def default_alpha(a) -> float:
    """Shift used when the caller gives none: ``max(1, max|entry|)``."""
    return max(1.0, float(np.max(np.abs(np.asarray(a)))))


def _shift_singular(a: EMatrix, alpha: float) -> EMatrix:
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    tol = max(a.row_sum_tolerance, default_row_sum_tol(a.matrix))
    if abs(a.trivial_eigenvalue) > tol:
        raise TrivialEigenvalueNotZero(
            f"trivial eigenvalue {a.trivial_eigenvalue:.6g} is not zero (tolerance {tol:.3g})"
        )
    return add_rank_one_shift(a, alpha)


def _reciprocal(entry: BoundEntry) -> BoundEntry:
    if entry.bound == 0.0:
        raise DegenerateCoefficient(
            f"tau of the inverse power vanished at k={entry.k}; the reciprocal bound is undefined"
        )
    return BoundEntry(entry.k, 1.0 / entry.bound, entry.tau_scaled, entry.log_scale)


def smallest_bound_nonsingular(a, p, k: int) -> float:
    """Lower bound ``1 / tau_p(A**-k)**(1/k)`` on the smallest non-trivial |eigenvalue|."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    inv = invert(_as_ematrix(a))
    return _reciprocal(_largest_entry(inv, PNorm.parse(p), k)).bound


def smallest_bound_singular(a, p, k: int, alpha: float) -> float:
    """Same as :func:`smallest_bound_nonsingular` applied to ``A + alpha J``.

    Requires lambda_A = 0 and, as an unchecked caller assertion, that 0 is a
    simple eigenvalue; otherwise ``A + alpha J`` is singular.
    """
    return smallest_bound_nonsingular(_shift_singular(_as_ematrix(a), alpha), p, k)


def smallest_doubling_bounds(a, p, max_level: int, alpha: float | None = None) -> BoundSequence:
    a, p = _as_ematrix(a), PNorm.parse(p)
    if alpha is not None:
        a = _shift_singular(a, alpha)
    inv = invert(a)
    entries = tuple(_reciprocal(e) for e in _doubling_entries(inv, p, max_level))
    return BoundSequence(p, entries, Mode.DOUBLING, Target.SMALLEST_NON_TRIVIAL, alpha)


def estimate_smallest(
    a,
    p,
    rel_tol: float = DEFAULT_REL_TOL,
    max_level: int = DEFAULT_MAX_LEVEL,
    alpha: float | None = None,
) -> Estimate:
    """Doubling estimate of the smallest non-trivial |eigenvalue|, approached from below.

    Pass ``alpha`` for a singular matrix with a simple zero trivial eigenvalue.
    """
    a = _as_ematrix(a)
    if alpha is not None:
        a = _shift_singular(a, alpha)
    est = estimate_largest(invert(a), p, rel_tol, max_level)
    if est.estimate == 0.0:
        raise DegenerateCoefficient("tau of the inverse powers vanished; no finite lower bound")
    return Estimate(1.0 / est.estimate, est.levels_used, est.converged)


def _exact_powers(m: np.ndarray, max_k: int):
    if not np.all(m == np.round(m)):
        return None
    absm = np.abs(m)
    cur = m
    out = [cur]
    for _ in range(max_k - 1):
        if float(np.max(np.abs(cur) @ absm)) >= _EXACT_LIMIT:
            return None
        cur = cur @ m
        out.append(cur)
    return out


def constancy_probe(a, p, max_k: int = 10) -> ProbeResult:
    """Raw ``tau_p(A**k)`` for k = 1..max_k and whether it stays constant.

    Integer matrices whose powers stay below 2**53 are powered exactly;
    otherwise powers come from the deflated scaled route and are rescaled.
    """
    a, p = _as_ematrix(a), PNorm.parse(p)
    if not 1 <= max_k <= MAX_PROBE_K:
        raise ValueError(f"max_k must lie in [1, {MAX_PROBE_K}]")
    exact = _exact_powers(a.matrix, max_k)
    values = []
    for k in range(1, max_k + 1):
        if exact is not None:
            t = tau(exact[k - 1], p)
        elif k == 1:
            t = tau(a.matrix, p)
        else:
            sp = scaled_power(deflate(a), k)
            t = tau(sp.scaled_matrix, p) * math.exp(sp.log_scale)
        values.append((k, float(t)))
    first = values[0][1]
    tol = 1e-9 * max(1.0, abs(first))
    same = [abs(t - first) <= tol for _, t in values]
    return ProbeResult(p, tuple(values), all(same), len(same) < 2 or same[1])
