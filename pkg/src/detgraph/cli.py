"""Command-line front end.

Subcommands: gen-grid, sample, kernel, poly, verify, render.  Exit codes:
0 success, 1 verification failure, 2 usage error, 3 numeric degeneracy.
Forms omitted on the command line are drawn from the seed on dedicated
random streams, so figures are reproducible from (graph, measure, seed).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import dpp, measures, oracle, polynomials
from .errors import (DegenerateForms, DetgraphError, ImpossibleCondition,
                     NumericDegeneracy, RankDeficient)
from .graph import WeightedGraph, grid_graph
from .measures import MeasureSpec
from .render import RenderStyle, render_svg

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


def _read_graph(path: str) -> WeightedGraph:
    return WeightedGraph.from_json(Path(path).read_text())


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _spec_from_args(g: WeightedGraph, args) -> MeasureSpec:
    forms: dict[str, np.ndarray] = {}
    if getattr(args, "forms", None):
        forms = measures.forms_from_json(Path(args.forms).read_text())
    variant = args.measure
    k = getattr(args, "k", 0) or 0
    l = getattr(args, "l", 0) or 0
    seed = getattr(args, "seed", 0) or 0
    if variant == "ust":
        return MeasureSpec.ust()
    if variant == "connected":
        theta = forms.get("theta")
        if theta is None:
            theta = measures.random_theta(g, k, seed)
        return MeasureSpec.connected_k(theta)
    if variant == "forest":
        phi = forms.get("phi")
        if phi is None:
            phi = measures.random_phi(g, k, seed)
        return MeasureSpec.forest_k(phi)
    if variant == "crsf":
        conn = forms.get("connection")
        if conn is None:
            conn = measures.random_connection(g, seed)
        return MeasureSpec.crsf(conn)
    phi = forms.get("phi")
    theta = forms.get("theta")
    if phi is None:
        phi = measures.random_phi(g, k, seed)
    if theta is None:
        theta = measures.random_theta(g, l, seed)
    return MeasureSpec.mixed(phi, theta)


def _cmd_gen_grid(args) -> int:
    g = grid_graph(args.rows, args.cols, args.weight)
    _write(args.output, g.to_json())
    return EXIT_OK


def _cmd_sample(args) -> int:
    g = _read_graph(args.graph)
    spec = _spec_from_args(g, args)
    kernel = measures.build_kernel(g, spec)
    samples = [sorted(dpp.sample(kernel, args.seed + i)) for i in range(args.count)]
    _write(args.output, json.dumps(
        {"samples": samples, "seed": args.seed, "rank": kernel.rank}))
    return EXIT_OK


def _cmd_kernel(args) -> int:
    g = _read_graph(args.graph)
    spec = _spec_from_args(g, args)
    kernel = measures.build_kernel(g, spec)
    _write(args.output, kernel.to_json())
    return EXIT_OK


def _parse_vector(text: str | None, size: int, name: str) -> np.ndarray | None:
    if text is None:
        return None
    vals = np.array([float(v) for v in text.split(",")])
    if len(vals) != size:
        raise DetgraphError(f"{name} needs {size} comma-separated values")
    return vals


def _cmd_poly(args) -> int:
    g = _read_graph(args.graph)
    forms: dict[str, np.ndarray] = {}
    if args.forms:
        forms = measures.forms_from_json(Path(args.forms).read_text())
    x = _parse_vector(args.weights, g.num_edges, "--weights")
    which = args.which
    method = "determinant"
    if which == "T":
        value = polynomials.kirchhoff_T(g, x)
    elif which == "psi1":
        value = polynomials.symanzik_psi1(g, x)
    elif which == "psi2":
        q = _parse_vector(args.q, g.num_vertices, "--q")
        if q is None:
            raise DetgraphError("psi2 needs --q")
        value = polynomials.symanzik_psi2(g, g.weights if x is None else x, q)
    elif which == "C":
        theta = forms.get("theta")
        if theta is None:
            theta = measures.random_theta(g, args.k, args.seed)
        value = polynomials.generalized_C(g, x, theta)
    elif which == "A":
        phi = forms.get("phi")
        if phi is None:
            phi = measures.random_phi(g, args.k, args.seed)
        value = polynomials.generalized_A(g, x, phi)
    else:
        raise DetgraphError(f"unknown polynomial {which!r}")
    value = complex(value)
    _write(args.output, json.dumps(
        {"which": which, "value": [value.real, value.imag], "method": method}))
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    spec = _spec_from_args(g, args)
    report = oracle.compare_measure(g, spec, tolerance=args.tolerance)
    _write(args.output, json.dumps(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def _cmd_render(args) -> int:
    g = _read_graph(args.graph)
    payload = json.loads(Path(args.sample).read_text())
    samples = payload["samples"] if "samples" in payload else [payload]
    edges = samples[args.index]
    style = RenderStyle(thicken=args.style)
    svg = render_svg(g, edges, style, rows=args.rows, cols=args.cols)
    _write(args.output, svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="detgraph",
        description="Sample and verify determinantal random subgraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-grid", help="write a grid graph as JSON")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--weight", type=float, default=1.0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_gen_grid)

    def add_measure_flags(p):
        p.add_argument("--graph", required=True)
        p.add_argument("--measure", required=True,
                       choices=["ust", "connected", "forest", "crsf", "mixed"])
        p.add_argument("--k", type=int, default=0)
        p.add_argument("--l", type=int, default=0)
        p.add_argument("--forms", default=None,
                       help="forms JSON; omitted forms are drawn from the seed")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sample", help="draw exact samples of a measure")
    add_measure_flags(p)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("kernel", help="export the projection kernel as JSON")
    add_measure_flags(p)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("poly", help="evaluate a partition-function polynomial")
    p.add_argument("--graph", required=True)
    p.add_argument("--which", required=True, choices=["T", "psi1", "psi2", "A", "C"])
    p.add_argument("--weights", default=None,
                   help="comma-separated edge weights overriding the graph's")
    p.add_argument("--q", default=None, help="comma-separated vertex charge for psi2")
    p.add_argument("--forms", default=None)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_poly)

    p = sub.add_parser("verify", help="brute-force check of a measure")
    add_measure_flags(p)
    p.add_argument("--tolerance", type=float, default=oracle.DENSITY_TOL)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("render", help="render one sample as SVG")
    p.add_argument("--graph", required=True)
    p.add_argument("--sample", required=True, help="sample JSON from `detgraph sample`")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--style", default="2-core", choices=["2-core", "cycles", "none"])
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DegenerateForms, RankDeficient, NumericDegeneracy, ImpossibleCondition) as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (DetgraphError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
