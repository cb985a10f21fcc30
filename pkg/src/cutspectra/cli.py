"""Command-line interface: ``cutspectra <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import __version__
from .connmat import (
    degree_diag,
    edge_connectivity_matrix_bruteforce,
    gomory_hu_tree,
    matrix_from_flow_tree,
    render_flow_tree,
    vertex_connectivity_matrix,
)
from .exceptions import CutSpectraError, NumericalError, ParseError
from .graph import WeightedGraph, is_connected, parse_edge_list, render_edge_list
from .matrix import SymMatrix, default_tol, format_number, parse_matrix, row_maxima
from .quotient import equitable_quotient, equivalence_classes
from .search import VERTEX_CHECKS, scan_edge_theorems, scan_vertex_conjectures
from .spectra import eigen_sym, elementary_eigenpairs, is_psd
from .terraced import (
    check_gh_triangle,
    distinct_offdiag_values,
    is_realizable,
    realize_flow_tree,
    terrace_decomposition,
)
from .ultrametric import (
    check_ultrametric,
    from_connectivity,
    ultrametric_min_eig_bound,
    ultrametric_quotient,
)

EXIT_OK, EXIT_USAGE, EXIT_THEOREM, EXIT_NUMERIC = 0, 1, 2, 3

log = logging.getLogger("cutspectra")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class TheoremFailure(Exception):
    def __init__(self, report, failures):
        self.report = report
        self.failures = failures
        super().__init__("; ".join(failures))


# -- report builders ----------------------------------------------------------


def _matrix(a) -> list[list[float]]:
    return np.asarray(a, dtype=float).tolist()


def _triangle(violations, limit=20) -> dict:
    return {
        "holds": not violations,
        "violations": len(violations),
        "examples": [
            {"x": v.x, "y": v.y, "z": v.z, "c_xz": v.lhs, "min_c_xy_c_yz": v.rhs} for v in violations[:limit]
        ],
    }


def _decomposition(c: SymMatrix) -> dict:
    dec = terrace_decomposition(c)
    if dec:
        out = {"terraced": True}
        out.update(dec.to_dict())
        return out
    return {"terraced": False, "failing_level": dec.level, "witness": list(dec.witness), "reason": dec.describe()}


def analyze_graph(g: WeightedGraph, tol: float) -> dict:
    """Connectivity matrix, flow tree, spectrum and quotient of one graph, with theorem verdicts."""
    failures = []
    tree = gomory_hu_tree(g, tol)
    c = matrix_from_flow_tree(tree, tol)
    n = g.n
    spec = eigen_sym(c)
    big = float(c.array.max())
    bound = 2 * (n - 1) * big
    uniform = bool(np.all(np.abs(c.offdiag() - big) <= tol * (1 + big)))
    shift_ok, _ = is_psd(c.with_diagonal(row_maxima(c)))
    min_eig_ok = abs(spec.lambda_min + big) <= 1e-7 * max(1.0, big)
    energy_ok = spec.energy <= bound + 1e-7 * max(1.0, bound)
    equality = abs(spec.energy - bound) <= 1e-7 * max(1.0, bound)
    if not is_realizable(c):
        failures.append("connectivity matrix fails the Gomory-Hu triangle inequality")
    if not shift_ok:
        failures.append("C + diag(m) is not positive semidefinite")
    if not min_eig_ok:
        failures.append(f"smallest eigenvalue {spec.lambda_min!r} differs from -M = {-big!r}")
    if not energy_ok:
        failures.append(f"energy {spec.energy!r} exceeds 2(n-1)M = {bound!r}")
    if equality != uniform:
        failures.append("energy equality does not coincide with uniform edge-connectivity")
    q = equitable_quotient(c)
    if abs(q.energy_C - (q.energy_Q + q.trace_Q)) > 1e-7 * max(1.0, q.energy_C):
        failures.append("energy decomposition E(C) = E(Q) + trace(Q) failed")
    report = {
        "n": n,
        "edges": g.m,
        "connected": is_connected(g),
        "connectivity_matrix": _matrix(c.array),
        "flow_tree": [list(e) for e in tree.tree_edges],
        "distinct_offdiag_values": distinct_offdiag_values(c) if n > 1 else [],
        "spectrum": spec.to_dict(),
        "M": big,
        "energy_bound": bound,
        "energy_attains_bound": equality,
        "uniformly_connected": uniform,
        "uniform_label": f"uniformly {format_number(big)}-edge-connected" if uniform else "not uniformly edge-connected",
        "psd_shift_holds": shift_ok,
        "min_eig_equals_minus_M": min_eig_ok,
        "elementary_pairs": [[p.x, p.y, p.eigenvalue] for p in elementary_eigenpairs(c)],
        "quotient": q.to_dict(),
    }
    if g.is_unweighted(tol) and n > 1:
        p = vertex_connectivity_matrix(g, tol)
        pd = SymMatrix(p.array + degree_diag(g, tol).array, tol)
        psd, _ = is_psd(pd)
        report["vertex_connectivity"] = {
            "matrix": _matrix(p.array),
            "lambda_min_P": eigen_sym(p, vectors=False).lambda_min,
            "energy_P": eigen_sym(p, vectors=False).energy,
            "P_plus_D_psd": psd,
            "lambda_min_P_plus_D": eigen_sym(pd, vectors=False).lambda_min,
        }
    if failures:
        raise TheoremFailure(report, failures)
    return report


def check_matrix_report(c: SymMatrix, out_dir: str | None) -> dict:
    report = {
        "n": c.n,
        "triangle_offdiag": _triangle(check_gh_triangle(c, include_diagonal=False)),
        "triangle_full": _triangle(check_gh_triangle(c, include_diagonal=True)),
        "decomposition": _decomposition(c),
        "realizable": is_realizable(c),
    }
    if report["realizable"]:
        report["shifted_decomposition"] = _decomposition(c.with_diagonal(row_maxima(c)))
        tree = realize_flow_tree(c)
        report["realizing_tree"] = [list(e) for e in tree.edges]
        report["round_trip"] = edge_connectivity_matrix_bruteforce(tree, c.tol).allclose(c.array)
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
            path = os.path.join(out_dir, "realizing_tree.txt")
            with open(path, "w") as fh:
                fh.write(render_edge_list(tree))
            report["realizing_tree_file"] = path
    return report


def quotient_report(c: SymMatrix) -> dict:
    classes = equivalence_classes(c)
    q = equitable_quotient(c, classes)
    return q.to_dict()


def ultrametric_report(d: SymMatrix) -> dict:
    ok, violations = check_ultrametric(d)
    report = {
        "n": d.n,
        "distance_matrix": _matrix(d.array),
        "ultrametric": ok,
        "violations": [
            {"x": v.x, "y": v.y, "z": v.z, "d_xz": v.d_xz, "max_d_xy_d_yz": v.bound} for v in violations[:20]
        ],
    }
    if ok and d.n >= 2:
        report["quotient"] = ultrametric_quotient(d).to_dict()
        report["eigenvalue_bound"] = ultrametric_min_eig_bound(d).to_dict()
    return report


# -- rendering ---------------------------------------------------------------


def _render_table(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, value in obj.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render_table(value, indent + 1))
        elif isinstance(value, list) and value and all(isinstance(r, list) for r in value):
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  " + " ".join(_fmt(x) for x in row) for row in value)
        elif isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(f"{pad}  - " + ", ".join(f"{k}={_fmt(v)}" for k, v in item.items()))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: " + " ".join(_fmt(x) for x in value))
        else:
            lines.append(f"{pad}{key}: {_fmt(value)}")
    return lines


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return format_number(x)
    if isinstance(x, list):
        return "[" + " ".join(_fmt(v) for v in x) + "]"
    return str(x)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(_render_table(report)) + "\n")


# -- subcommands ---------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_matrix_or_graph(args) -> SymMatrix:
    text = _read(args.input)
    if args.graph:
        return edge_connectivity_matrix_bruteforce(parse_edge_list(text), args.tol)
    return parse_matrix(text, args.tol)


def cmd_analyze(args) -> int:
    g = parse_edge_list(_read(args.graph_file))
    try:
        report = analyze_graph(g, args.tol)
    except TheoremFailure as exc:
        exc.report["failures"] = exc.failures
        _emit(exc.report, args.format)
        return EXIT_THEOREM
    _emit(report, args.format)
    return EXIT_OK


def cmd_tree(args) -> int:
    g = parse_edge_list(_read(args.graph_file))
    tree = gomory_hu_tree(g, args.tol)
    if args.format == "json":
        _emit({"n": tree.n, "tree_edges": [list(e) for e in tree.tree_edges]}, "json")
    else:
        sys.stdout.write(render_flow_tree(tree))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "flow_tree.txt"), "w") as fh:
            fh.write(render_flow_tree(tree))
    return EXIT_OK


def cmd_check_matrix(args) -> int:
    c = parse_matrix(_read(args.matrix_file), args.tol)
    _emit(check_matrix_report(c, args.out), args.format)
    return EXIT_OK


def cmd_realize(args) -> int:
    c = parse_matrix(_read(args.matrix_file), args.tol)
    tree = realize_flow_tree(c)
    if args.format == "json":
        _emit({"n": tree.n, "edges": [list(e) for e in tree.edges], "round_trip": True}, "json")
    else:
        sys.stdout.write(render_edge_list(tree))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "realizing_tree.txt"), "w") as fh:
            fh.write(render_edge_list(tree))
    return EXIT_OK


def cmd_quotient(args) -> int:
    _emit(quotient_report(_load_matrix_or_graph(args)), args.format)
    return EXIT_OK


def cmd_ultrametric(args) -> int:
    text = _read(args.input)
    if args.graph:
        c = edge_connectivity_matrix_bruteforce(parse_edge_list(text), args.tol)
        d = from_connectivity(c)
    else:
        d = parse_matrix(text, args.tol)
    _emit(ultrametric_report(d), args.format)
    return EXIT_OK


def cmd_search(args) -> int:
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    vertex = [c for c in checks if c in VERTEX_CHECKS]
    if "vertex" in checks:
        vertex = list(VERTEX_CHECKS)
    edge = "edge" in checks
    unknown = set(checks) - set(VERTEX_CHECKS) - {"edge", "vertex"}
    if unknown:
        raise ParseError(f"unknown checks: {', '.join(sorted(unknown))}")
    extra = [parse_edge_list(_read(p)) for p in args.graph or []]
    out: dict = {}
    status = EXIT_OK
    if vertex or extra:
        rep = scan_vertex_conjectures(
            args.n_max, vertex or VERTEX_CHECKS, labeled=args.labeled, extra_graphs=extra, workers=args.workers
        )
        out["vertex_conjectures"] = rep.to_dict()
        if args.out:
            rep.write_violations(os.path.join(args.out, "vertex_violations"))
    if edge:
        rep = scan_edge_theorems(min(args.n_max, 7), args.trials, args.seed, workers=args.workers)
        out["edge_theorems"] = rep.to_dict()
        if rep.violations:
            status = EXIT_THEOREM
            if args.out:
                rep.write_violations(os.path.join(args.out, "edge_violations"))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "scan_report.json"), "w") as fh:
            fh.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    if args.format == "json":
        _emit(out, "json")
    else:
        for name, rep in out.items():
            sys.stdout.write(f"{name}:\n")
            sys.stdout.write("\n".join(_render_table(rep, 1)) + "\n")
    return status


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--tol", type=float, default=None, help="comparison tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--out", default=None, help="directory for emitted files")

    parser = _Parser(prog="cutspectra", description="Edge-connectivity matrices of weighted graphs and their spectra.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="full spectral report for a graph")
    p.add_argument("graph_file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("tree", parents=[common], help="flow-equivalent tree of a graph")
    p.add_argument("graph_file")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("check-matrix", parents=[common], help="realizability and terrace structure")
    p.add_argument("matrix_file")
    p.set_defaults(func=cmd_check_matrix)

    p = sub.add_parser("realize", parents=[common], help="tree realizing a connectivity matrix")
    p.add_argument("matrix_file")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("quotient", parents=[common], help="equitable quotient and energy split")
    p.add_argument("input")
    p.add_argument("--graph", action="store_true", help="input is an edge list, not a matrix")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("ultrametric", parents=[common], help="ultrametric analogue report")
    p.add_argument("input")
    p.add_argument("--graph", action="store_true", help="input is an edge list; use reciprocal connectivities")
    p.set_defaults(func=cmd_ultrametric)

    p = sub.add_parser("search", parents=[common], help="scan small graphs")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument(
        "--checks",
        default="edge",
        help=f"comma list of 'edge', 'vertex' or any of {', '.join(VERTEX_CHECKS)}",
    )
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--labeled", action="store_true", help="vertex scan over labeled graphs")
    p.add_argument("--graph", action="append", help="extra edge-list file to include (repeatable)")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    saved_tol = os.environ.get("CUTSPECTRA_TOL")
    try:
        if args.tol is None:
            args.tol = default_tol()
        if args.tol <= 0:
            parser.error("--tol must be positive")
        # worker processes and library defaults pick the override up from here
        os.environ["CUTSPECTRA_TOL"] = repr(args.tol)
        if args.workers is not None and args.workers < 1:
            parser.error("--workers must be at least 1")
        return args.func(args)
    except NumericalError as exc:
        print(f"cutspectra: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (CutSpectraError, OSError, ValueError) as exc:
        print(f"cutspectra: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if saved_tol is None:
            os.environ.pop("CUTSPECTRA_TOL", None)
        else:
            os.environ["CUTSPECTRA_TOL"] = saved_tol


if __name__ == "__main__":
    sys.exit(main())
