"""Simple undirected graphs, their Laplacians, and Laplacian eigenvalue bounds.

The Laplacian ``L = D - A`` of a simple graph is a symmetric e-matrix with
trivial eigenvalue 0.  Its coefficients have combinatorial closed forms:

* ``tau_1(L) = max_{i<j} d_i + d_j - |N_i & N_j|``
* ``tau_inf(L) = n`` if the maximum degree d satisfies ``2d >= n``, else ``2d``

Upper bounds on the spectral radius come from the power sequence of L; lower
bounds on the algebraic connectivity come from inverses of ``L + alpha J``
(rank-one shift) or of ``L + alpha I`` (diagonal shift, maximized over alpha).
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .bounds import BoundSequence, bound_sequence, smallest_bound_nonsingular, smallest_bound_singular
from .errors import GraphDisconnected, NoEdges, ParseError
from .matrix import EMatrix, add_diagonal_shift
from .pnorm import PNorm

DEFAULT_ALPHA_GRID = (0.05, 0.1, 0.2, 0.5, 1.0, 2.0)
GOLDEN_ITERATIONS = 10
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], one_based: bool = False) -> "Graph":
        """Build a graph, rejecting repeated edges (in either orientation)."""
        shift = 1 if one_based else 0
        seen = set()
        for u, v in edges:
            key = (min(u, v) - shift, max(u, v) - shift)
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
        return cls(n, frozenset(seen))

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbors(self) -> list[set[int]]:
        nb = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def max_degree(self) -> int:
        return max(self.degrees())


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def laplacian(g: Graph) -> EMatrix:
    lap = np.zeros((g.n, g.n))
    for u, v in g.edges:
        lap[u, v] = lap[v, u] = -1.0
        lap[u, u] += 1.0
        lap[v, v] += 1.0
    lap.setflags(write=False)
    return EMatrix(lap, 0.0, 0.0)


def is_connected(g: Graph) -> bool:
    nb = g.neighbors()
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in nb[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == g.n


def _pair_score(deg, nb, i, j) -> int:
    return deg[i] + deg[j] - len(nb[i] & nb[j])


def _need_two(g: Graph):
    if g.n < 2:
        raise ValueError("closed forms need at least two vertices")


def tau1_laplacian(g: Graph) -> int:
    """tau_1 of the Laplacian from degrees and common neighbours."""
    _need_two(g)
    deg, nb = g.degrees(), g.neighbors()
    return max(_pair_score(deg, nb, i, j) for i, j in combinations(range(g.n), 2))


def tau_inf_laplacian(g: Graph) -> int:
    _need_two(g)
    d = g.max_degree()
    return g.n if 2 * d >= g.n else 2 * d


def das_bound(g: Graph) -> int:
    """Spectral-radius bound maximizing the pair score over edges only."""
    if not g.edges:
        raise NoEdges("the bound needs at least one edge")
    deg, nb = g.degrees(), g.neighbors()
    return max(_pair_score(deg, nb, i, j) for i, j in g.edges)


def spectral_radius_bounds(g: Graph, p, max_k: int) -> BoundSequence:
    """``tau_p(L**k)**(1/k)`` for k = 1..max_k, each an upper bound on lambda_max(L)."""
    _need_two(g)
    return bound_sequence(laplacian(g), p, max_k)


class ConnectivityMethod(enum.Enum):
    RANK_ONE_SHIFT = "rank-one-shift"
    DIAGONAL_SHIFT_SUP = "diagonal-shift-sup"


@dataclass(frozen=True)
class ConnectivityReport:
    p: PNorm
    method: ConnectivityMethod
    k: int
    alpha_used: float
    lower_bound: float
    evaluations: tuple[tuple[float, float], ...] = ()


def _require_connected(g: Graph):
    if not is_connected(g):
        raise GraphDisconnected("algebraic connectivity bounds need a connected graph")


def connectivity_lower_bound_shift(g: Graph, p, k: int, alpha: float = 1.0) -> ConnectivityReport:
    """``1 / tau_p((L + alpha J)**-k)**(1/k)``, a lower bound on lambda_2."""
    _require_connected(g)
    p = PNorm.parse(p)
    lb = smallest_bound_singular(laplacian(g), p, k, alpha)
    return ConnectivityReport(p, ConnectivityMethod.RANK_ONE_SHIFT, k, float(alpha), max(0.0, lb))


def diagonal_shift_value(g: Graph, p, k: int, alpha: float) -> float:
    """``1 / tau_p((L + alpha I)**-k)**(1/k) - alpha``; a lower bound on lambda_2 for any alpha > 0."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return smallest_bound_nonsingular(add_diagonal_shift(laplacian(g), alpha), p, k) - alpha


def connectivity_lower_bound_sup(
    g: Graph, p, k: int, alpha_grid: Sequence[float] | None = None, refine: bool | None = None
) -> ConnectivityReport:
    """Maximize the diagonal-shift bound over alpha.

    Without an explicit grid the default one is used and the best grid point
    is refined by golden-section search between its neighbours; ``refine``
    overrides that choice.
    """
    _require_connected(g)
    p = PNorm.parse(p)
    if refine is None:
        refine = alpha_grid is None
    grid = sorted(DEFAULT_ALPHA_GRID if alpha_grid is None else alpha_grid)
    if not grid or any(a <= 0 for a in grid):
        raise ValueError("alpha grid must be nonempty and strictly positive")

    evals: dict[float, float] = {}

    def f(alpha: float) -> float:
        if alpha not in evals:
            evals[alpha] = diagonal_shift_value(g, p, k, alpha)
        return evals[alpha]

    for a in grid:
        f(a)
    best_i = max(range(len(grid)), key=lambda i: evals[grid[i]])
    if refine:
        lo = grid[best_i - 1] if best_i > 0 else grid[best_i] / 2.0
        hi = grid[best_i + 1] if best_i + 1 < len(grid) else grid[best_i] * 2.0
        x1 = hi - _INV_PHI * (hi - lo)
        x2 = lo + _INV_PHI * (hi - lo)
        for _ in range(GOLDEN_ITERATIONS):
            if f(x1) >= f(x2):
                hi, x2 = x2, x1
                x1 = hi - _INV_PHI * (hi - lo)
            else:
                lo, x1 = x1, x2
                x2 = lo + _INV_PHI * (hi - lo)
    alpha_best = max(evals, key=lambda a: evals[a])
    return ConnectivityReport(
        p,
        ConnectivityMethod.DIAGONAL_SHIFT_SUP,
        k,
        alpha_best,
        max(0.0, evals[alpha_best]),
        tuple(sorted(evals.items())),
    )


class TauComparison(NamedTuple):
    tau1: int
    tau_inf: int
    ordered: bool


def tau_comparison(g: Graph) -> TauComparison:
    t1, ti = tau1_laplacian(g), tau_inf_laplacian(g)
    return TauComparison(t1, ti, t1 <= ti)


# -- edge-list format --------------------------------------------------------


def parse_edge_list(text: str, one_based: bool = False) -> Graph:
    """Parse ``u v`` lines with ``#`` comments and an optional ``n <count>`` header."""
    shift = 1 if one_based else 0
    declared = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0].lower() == "n":
            if len(toks) != 2 or declared is not None:
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                declared = int(toks[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad vertex count {toks[1]!r}") from None
            if declared < 1:
                raise ParseError(f"line {lineno}: vertex count must be positive")
            continue
        if len(toks) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(toks[0]) - shift, int(toks[1]) - shift
        except ValueError:
            raise ParseError(f"line {lineno}: vertices must be integers") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: vertex index below {shift}")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at {toks[0]}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"line {lineno}: duplicate edge {toks[0]} {toks[1]}")
        seen.add(key)
        edges.append(key)
    top = max((v for e in edges for v in e), default=-1) + 1
    if declared is not None and declared < top:
        raise ParseError(f"header declares n={declared} but vertex {top - 1 + shift} appears")
    n = declared if declared is not None else top
    if n < 1:
        raise ParseError("empty edge list with no vertex count")
    return Graph(n, frozenset(edges))


def format_edge_list(g: Graph, one_based: bool = False) -> str:
    shift = 1 if one_based else 0
    lines = [f"n {g.n}"] + [f"{u + shift} {v + shift}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"
