"""Command-line interface.

    ergocoef tau FILE [--p 1|inf|both] [--certify] [--json]
    ergocoef bounds FILE [--target largest|smallest] [--k K] [--max-level M]
                         [--rel-tol R] [--alpha A] [--oracle] [--json]
    ergocoef graph FILE [--one-based] [--k K] [--alpha A] [--alpha-grid a,b,..] [--oracle]
    ergocoef probe FILE [--k K]
    ergocoef verify-paper [--json]

FILE may be ``-`` for standard input.  Exit status: 0 success, 1 usage or
parse error, 2 failed mathematical precondition, 3 regression mismatch.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

import numpy as np

from . import bounds as bd
from . import graph as gr
from . import oracle as orc
from . import worked_examples
from .coefficients import tau
from .errors import DimensionTooLarge, ErgoError, NonConvergence, NotConstantRowSum, ParseError, SingularMatrix
from .matrix import EMatrix, default_row_sum_tol, invert, parse_matrix, validate_ematrix
from .pnorm import BOTH, PNorm
from .report import AnalysisReport, canonical_json

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_MISMATCH = 0, 1, 2, 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _norms(p: str) -> tuple[PNorm, ...]:
    return BOTH if p == "both" else (PNorm.parse(p),)


def _descriptor(path: str) -> str:
    return "<stdin>" if path == "-" else path


def _oracle_extremes(a: EMatrix, report: AnalysisReport) -> dict | None:
    try:
        ex = orc.nontrivial_extremes(a.matrix, a.trivial_eigenvalue)
    except (DimensionTooLarge, NonConvergence) as exc:
        report.warnings.append(f"oracle unavailable: {exc}")
        return None
    return {"smallest_modulus": ex.smallest_modulus, "largest_modulus": ex.largest_modulus}


def cmd_tau(path: str, p: str = "both", certify: bool = False) -> AnalysisReport:
    """tau_1 / tau_inf, the trivial eigenvalue and the simplicity certificate."""
    m = parse_matrix(_read_text(path))
    report = AnalysisReport(_descriptor(path), "tau", p)
    res = report.results
    res["n"] = m.shape[0]
    res["tau"] = {str(q): tau(m, q) for q in _norms(p)}
    try:
        a = validate_ematrix(m)
    except NotConstantRowSum as exc:
        if certify:
            raise
        res["e_matrix"] = False
        report.warnings.append(f"not a constant row-sum matrix ({exc}); coefficients are formula values only")
        return report
    res["e_matrix"] = True
    res["trivial_eigenvalue"] = a.trivial_eigenvalue
    res["certificate"] = {}
    for q in _norms(p):
        rep = bd.simplicity_check(a, q)
        res["certificate"][str(q)] = {
            "tau": rep.tau_value,
            "certified_simple": rep.is_certified_simple,
            "gap_lower_bound": rep.gap_lower_bound,
        }
    return report


def _largest_payload(a: EMatrix, q: PNorm, k: int, max_level: int, rel_tol: float) -> dict:
    seq = bd.bound_sequence(a, q, k)
    dbl = bd.doubling_bounds(a, q, max_level)
    est = bd.estimate_largest(a, q, rel_tol, max_level)
    return {
        "all_k": [{"k": e.k, "alpha": None, "bound": e.bound} for e in seq.entries],
        "doubling": [{"level": i, "k": e.k, "alpha": None, "bound": e.bound} for i, e in enumerate(dbl.entries)],
        "estimate": {
            "value": est.estimate,
            "levels_used": est.levels_used,
            "k": 2 ** est.levels_used,
            "alpha": None,
            "converged": est.converged,
            "rel_tol": rel_tol,
        },
    }


def _smallest_payload(a: EMatrix, q: PNorm, k: int, max_level: int, rel_tol: float, alpha) -> dict:
    if alpha is None:
        all_k = [bd.smallest_bound_nonsingular(a, q, j) for j in range(1, k + 1)]
    else:
        all_k = [bd.smallest_bound_singular(a, q, j, alpha) for j in range(1, k + 1)]
    dbl = bd.smallest_doubling_bounds(a, q, max_level, alpha)
    est = bd.estimate_smallest(a, q, rel_tol, max_level, alpha)
    return {
        "all_k": [{"k": j, "alpha": alpha, "bound": b} for j, b in enumerate(all_k, 1)],
        "doubling": [{"level": i, "k": e.k, "alpha": alpha, "bound": e.bound} for i, e in enumerate(dbl.entries)],
        "estimate": {
            "value": est.estimate,
            "levels_used": est.levels_used,
            "k": 2 ** est.levels_used,
            "alpha": alpha,
            "converged": est.converged,
            "rel_tol": rel_tol,
        },
    }


def cmd_bounds(
    path: str,
    p: str = "both",
    target: str = "largest",
    max_level: int = bd.DEFAULT_MAX_LEVEL,
    rel_tol: float = bd.DEFAULT_REL_TOL,
    alpha: float | None = None,
    k: int = 4,
    oracle: bool = False,
) -> AnalysisReport:
    """Bound sequences and the converged estimate for the largest or smallest non-trivial |eigenvalue|."""
    a = validate_ematrix(parse_matrix(_read_text(path)))
    report = AnalysisReport(_descriptor(path), "bounds", p)
    res = report.results
    res["n"] = a.n
    res["trivial_eigenvalue"] = a.trivial_eigenvalue
    res["target"] = target
    if target == "largest":
        if alpha is not None:
            report.warnings.append("--alpha is ignored for the largest target")
        res["bounds"] = {str(q): _largest_payload(a, q, k, max_level, rel_tol) for q in _norms(p)}
    else:
        try:
            invert(a)
            if alpha is not None:
                report.warnings.append("matrix is nonsingular; --alpha ignored")
                alpha = None
        except SingularMatrix:
            tol = max(a.row_sum_tolerance, default_row_sum_tol(a.matrix))
            if abs(a.trivial_eigenvalue) > tol:
                raise
            if alpha is None:
                alpha = bd.default_alpha(a)
            report.warnings.append(
                f"matrix is singular with zero trivial eigenvalue; assuming 0 is a simple eigenvalue "
                f"and shifting by alpha*J with alpha={alpha:g}"
            )
        res["alpha"] = alpha
        res["bounds"] = {str(q): _smallest_payload(a, q, k, max_level, rel_tol, alpha) for q in _norms(p)}
    if oracle:
        ex = _oracle_extremes(a, report)
        if ex is not None:
            res["oracle"] = ex
            ref = ex["largest_modulus"] if target == "largest" else ex["smallest_modulus"]
            valid = True
            for payload in res["bounds"].values():
                for rec in payload["all_k"] + payload["doubling"]:
                    if target == "largest":
                        valid &= rec["bound"] >= ref - 1e-7
                    else:
                        valid &= rec["bound"] <= ref + 1e-7
            res["oracle"]["bounds_valid"] = bool(valid)
    return report


def cmd_graph(
    path: str,
    p: str = "both",
    one_based: bool = False,
    k: int = 3,
    alpha: float = 1.0,
    alpha_grid: Sequence[float] | None = None,
    oracle: bool = False,
) -> AnalysisReport:
    """Closed-form coefficients, spectral-radius bounds and algebraic-connectivity bounds of a graph."""
    g = gr.parse_edge_list(_read_text(path), one_based=one_based)
    if g.n < 2:
        raise ParseError("graph needs at least two vertices")
    report = AnalysisReport(_descriptor(path), "graph", p)
    res = report.results
    connected = gr.is_connected(g)
    cmp = gr.tau_comparison(g)
    res.update(
        n=g.n,
        edges=len(g.edges),
        max_degree=g.max_degree(),
        connected=connected,
        tau1=cmp.tau1,
        tau_inf=cmp.tau_inf,
        tau1_le_tau_inf=cmp.ordered,
    )
    try:
        das = gr.das_bound(g)
    except ErgoError as exc:
        das = None
        report.warnings.append(str(exc))
    res["edge_bound"] = das
    res["spectral_radius"] = {
        str(q): [{"k": e.k, "bound": e.bound} for e in gr.spectral_radius_bounds(g, q, k).entries]
        for q in _norms(p)
    }
    power = gr.spectral_radius_bounds(g, PNorm.ONE, 3).bounds
    res["edge_bound_comparison"] = {
        "edge_bound": das,
        "sqrt_tau1_L2": power[1],
        "cbrt_tau1_L3": power[2],
        "power_bound_improves": None if das is None else min(power[1], power[2]) < das,
    }
    if connected:
        res["connectivity"] = {}
        for q in _norms(p):
            shift = [gr.connectivity_lower_bound_shift(g, q, j, alpha) for j in range(1, k + 1)]
            sup = [gr.connectivity_lower_bound_sup(g, q, j, alpha_grid) for j in range(1, k + 1)]
            res["connectivity"][str(q)] = {
                "rank_one_shift": [{"k": r.k, "alpha": r.alpha_used, "lower_bound": r.lower_bound} for r in shift],
                "diagonal_shift_sup": [{"k": r.k, "alpha": r.alpha_used, "lower_bound": r.lower_bound} for r in sup],
            }
    else:
        res["connectivity"] = None
        report.warnings.append("GraphDisconnected: algebraic connectivity is 0; connectivity bounds skipped")
    if oracle:
        vals = np.sort(orc.spectrum(gr.laplacian(g).matrix).eigenvalues.real)
        res["oracle"] = {"lambda_2": float(vals[1]), "lambda_max": float(vals[-1])}
    return report


def cmd_probe(path: str, p: str = "both", max_k: int = 10) -> AnalysisReport:
    """Raw tau_p(A^k) for k = 1..max_k and whether it stays constant."""
    a = validate_ematrix(parse_matrix(_read_text(path)))
    report = AnalysisReport(_descriptor(path), "probe", p)
    report.results["n"] = a.n
    for q in _norms(p):
        pr = bd.constancy_probe(a, q, max_k)
        report.results[str(q)] = {
            "values": [{"k": kk, "tau": t} for kk, t in pr.values],
            "constant_all": pr.constant_all,
            "first_two_equal": pr.first_two_equal,
            "two_step_counterexample": pr.refutes_two_step_conjecture,
        }
    return report


def _plain(v):
    arr = np.real_if_close(np.asarray(v))
    if arr.ndim == 0:
        return arr.item()
    return arr.tolist()


def cmd_verify_paper(as_json: bool = False, fixtures=None) -> tuple[str, int]:
    """Re-derive every value reported for the worked examples; exit 3 on any mismatch."""
    checks = worked_examples.run_checks(fixtures)
    bad = [c for c in checks if not c.ok]
    groups = list(dict.fromkeys(c.group for c in checks))
    status = EXIT_MISMATCH if bad else EXIT_OK
    if as_json:
        payload = {
            "checks": [
                {
                    "group": c.group,
                    "check": c.label,
                    "expected": _plain(c.expected),
                    "computed": _plain(c.computed),
                    "tolerance": c.tolerance,
                    "ok": c.ok,
                }
                for c in checks
            ],
            "groups": len(groups),
            "mismatches": len(bad),
        }
        return canonical_json(payload), status

    def show(v) -> str:
        v = _plain(v)
        if isinstance(v, list):
            flat = np.ravel(np.asarray(v, dtype=object))
            return "(" + ", ".join(show(x) for x in flat) + ")"
        if isinstance(v, float):
            return f"{v:.4f}".rstrip("0").rstrip(".")
        return str(v)

    rows = [(c.group, c.label, show(c.expected), show(c.computed), "ok" if c.ok else "MISMATCH") for c in checks]
    head = ("group", "check", "expected", "computed", "status")
    widths = [min(48, max(len(h), *(len(r[i]) for r in rows))) for i, h in enumerate(head)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths))]
    lines += ["  ".join(x.ljust(w) for x, w in zip(r, widths)) for r in rows]
    lines.append(f"{len(checks)} checks in {len(groups)} groups, {len(bad)} mismatches")
    return "\n".join(lines) + "\n", status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _grid(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad alpha grid {text!r}") from None
    if not vals or any(v <= 0 for v in vals):
        raise argparse.ArgumentTypeError("alpha grid values must be positive")
    return vals


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ergocoef", description="Ergodicity-coefficient eigenvalue bounds for constant row-sum matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, with_file=True):
        if with_file:
            sp.add_argument("file", help="input file, or - for stdin")
            sp.add_argument("--p", choices=("1", "inf", "both"), default="both")
        sp.add_argument("--json", action="store_true", help="emit canonical JSON")

    sp = sub.add_parser("tau", help="tau_1 / tau_inf and the simplicity certificate")
    common(sp)
    sp.add_argument("--certify", action="store_true", help="fail unless the input has constant row sums")

    sp = sub.add_parser("bounds", help="bounds on the largest or smallest non-trivial eigenvalue")
    common(sp)
    sp.add_argument("--target", choices=("largest", "smallest"), default="largest")
    sp.add_argument("--k", type=_positive_int, default=4, help="all-k sequence runs over 1..K")
    sp.add_argument("--max-level", type=int, default=bd.DEFAULT_MAX_LEVEL)
    sp.add_argument("--rel-tol", type=float, default=bd.DEFAULT_REL_TOL)
    sp.add_argument("--alpha", type=float, default=None, help="shift for singular input (default max(1, max|a_ij|))")
    sp.add_argument("--oracle", action="store_true", help="append reference eigenvalue extremes")

    sp = sub.add_parser("graph", help="Laplacian spectral-radius and connectivity bounds from an edge list")
    common(sp)
    sp.add_argument("--one-based", action="store_true")
    sp.add_argument("--k", type=_positive_int, default=3)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--alpha-grid", type=_grid, default=None)
    sp.add_argument("--oracle", action="store_true")

    sp = sub.add_parser("probe", help="is tau_p(A^k) constant in k?")
    common(sp)
    sp.add_argument("--k", type=_positive_int, default=10, help="largest power (at most 20)")

    sp = sub.add_parser("verify-paper", help="regression over the published worked examples")
    common(sp, with_file=False)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "verify-paper":
            text, status = cmd_verify_paper(args.json)
            sys.stdout.write(text)
            return status
        if args.command == "tau":
            report = cmd_tau(args.file, args.p, args.certify)
        elif args.command == "bounds":
            if args.rel_tol <= 0:
                raise ParseError("--rel-tol must be positive")
            report = cmd_bounds(
                args.file, args.p, args.target, args.max_level, args.rel_tol, args.alpha, args.k, args.oracle
            )
        elif args.command == "graph":
            report = cmd_graph(args.file, args.p, args.one_based, args.k, args.alpha, args.alpha_grid, args.oracle)
        else:
            report = cmd_probe(args.file, args.p, args.k)
    except ParseError as exc:
        print(f"ergocoef: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ErgoError, ValueError, ArithmeticError) as exc:
        print(f"ergocoef: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    sys.stdout.write(report.to_json() if args.json else report.to_table())
    return EXIT_OK
