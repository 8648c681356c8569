"""Ergodicity coefficients of constant row-sum matrices and the eigenvalue bounds they give."""

from .bounds import (
    BoundEntry,
    BoundSequence,
    Estimate,
    Mode,
    ProbeResult,
    SimplicityReport,
    Target,
    bound_sequence,
    constancy_probe,
    default_alpha,
    doubling_bounds,
    estimate_largest,
    estimate_smallest,
    largest_bound,
    simplicity_check,
    smallest_bound_nonsingular,
    smallest_bound_singular,
    smallest_doubling_bounds,
)
from .coefficients import ColumnStat, column_stat, column_stats, rho_hat, tau, tau_1, tau_1_minform, tau_inf
from .errors import (
    DegenerateCoefficient,
    DimensionMismatch,
    DimensionTooLarge,
    ErgoError,
    GraphDisconnected,
    NoEdges,
    NonConvergence,
    NotConstantRowSum,
    ParseError,
    SingularMatrix,
    TrivialEigenvalueNotZero,
)
from .graph import (
    ConnectivityMethod,
    ConnectivityReport,
    Graph,
    TauComparison,
    connectivity_lower_bound_shift,
    connectivity_lower_bound_sup,
    das_bound,
    is_connected,
    laplacian,
    parse_edge_list,
    spectral_radius_bounds,
    tau1_laplacian,
    tau_comparison,
    tau_inf_laplacian,
)
from .matrix import (
    EMatrix,
    ScaledPower,
    add_diagonal_shift,
    add_rank_one_shift,
    induced_norm,
    invert,
    multiply,
    parse_matrix,
    scaled_power,
    squaring_chain,
    validate_ematrix,
)
from .oracle import Extremes, Spectrum, SpectrumMethod, characteristic_polynomial, nontrivial_extremes, polynomial_roots, spectrum
from .pnorm import PNorm
from .report import AnalysisReport, canonical_json

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
