"""Command line front end: ``curvecomp plane|space FILE [options]``.

Exit codes: 0 success, 2 unreadable or malformed input, 3 no generic
coordinates within the retry budget, 4 wrong number of equations or
variables, 5 the oracle disagrees with the pipeline, 1 anything else.
Nothing is written when the run fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arith.matrix import SingularMatrix, SquareMatrix
from .arith.parse import ParseError, max_var_index, parse_system
from .arith.rational import Q, qstr

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_GENERICITY, EXIT_DIMENSION, EXIT_ORACLE = 0, 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="curvecomp", description="Connected components of real algebraic curves.")
    ap.add_argument("args", nargs="+", metavar="[plane|space] FILE")
    ap.add_argument("--mode", choices=("plane", "space"))
    ap.add_argument("--epsilon", default="1/100", help="failure probability bound for the random charts")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--matrix-a1", help="JSON 3x3 matrix, or a file holding one")
    ap.add_argument("--matrix-a2", help="JSON 3x3 matrix, or a file holding one")
    ap.add_argument("--json", dest="json_out", metavar="PATH", help="write the result here ('-' for stdout)")
    ap.add_argument("--dot", metavar="PATH")
    ap.add_argument("--svg", metavar="PATH")
    ap.add_argument("--retry-budget", type=int, default=None)
    ap.add_argument("--oracle", action="store_true", help="recount components numerically and compare")
    return ap


def _split_args(ns):
    pos = list(ns.args)
    mode = ns.mode
    if pos and pos[0] in ("plane", "space"):
        if mode and mode != pos[0]:
            raise CliError(EXIT_PARSE, "usage", f"--mode {mode} contradicts {pos[0]}")
        mode = pos.pop(0)
    if len(pos) != 1:
        raise CliError(EXIT_PARSE, "usage", "expected exactly one input file")
    return mode, pos[0]


def _epsilon(text: str):
    try:
        eps = Q(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(EXIT_PARSE, "usage", f"bad epsilon {text!r}") from exc
    if not 0 < eps < 1:
        raise CliError(EXIT_PARSE, "usage", "epsilon must lie in (0, 1)")
    return eps


def _matrix(text):
    if text is None:
        return None
    p = Path(text)
    if not text.lstrip().startswith("[") and p.exists():
        text = p.read_text()
    try:
        m = SquareMatrix(json.loads(text), check_invertible=True)
    except (json.JSONDecodeError, TypeError, ValueError, SingularMatrix) as exc:
        raise CliError(EXIT_PARSE, "matrix", f"bad matrix: {exc}") from exc
    if m.n != 3:
        raise CliError(EXIT_DIMENSION, "matrix", "matrices must be 3x3")
    return m


def _read_system(path: str, mode):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, "io", str(exc)) from exc
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    try:
        n = max((max_var_index(ln) for ln in lines), default=0)
        if mode is None:
            mode = "space" if n >= 3 else "plane"
        nvars = 2 if mode == "plane" else 3
        if n > nvars:
            raise CliError(EXIT_DIMENSION, "dimension", f"x{n} appears in {mode} mode")
        system = parse_system(text, nvars)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, "parse", str(exc)) from exc
    want = 1 if mode == "plane" else 2
    if len(system) != want:
        raise CliError(EXIT_DIMENSION, "dimension", f"{mode} mode needs {want} equation(s), got {len(system)}")
    return mode, system


def _chart_components(chart):
    comp = {}
    for j, g in enumerate(chart.groups):
        for k in g.vertices:
            comp[k] = j
    return comp


def _run_plane(system, ns):
    from .sa.planar import GenericityExhausted, plane_curve_components
    from .topo.export import component_map
    f = system[0]
    if f.is_const():
        raise CliError(EXIT_DIMENSION, "dimension", "a constant does not define a curve")
    try:
        r = plane_curve_components(f, seed=ns.seed, budget=ns.retry_budget or 12)
    except GenericityExhausted as exc:
        raise CliError(EXIT_GENERICITY, "genericity", str(exc)) from exc
    extra = {"shear": qstr(r.shear), "attempts": r.attempts}
    return r.components, r.graph, component_map(r.graph), r.shear, extra


def _run_space(system, ns):
    from .space.components import RetryBudgetExhausted, curve_components
    from .space.param import DimensionError
    try:
        r = curve_components(system, _epsilon(ns.epsilon), _matrix(ns.matrix_a1), _matrix(ns.matrix_a2),
                             seed=ns.seed, budget=ns.retry_budget or 8)
    except RetryBudgetExhausted as exc:
        raise CliError(EXIT_GENERICITY, "genericity", str(exc)) from exc
    except DimensionError as exc:
        raise CliError(EXIT_DIMENSION, "dimension", str(exc)) from exc
    extra = {
        "a1": r.a1.to_json(),
        "a2": r.a2.to_json(),
        "rejected": [[t.strip(), p] for t, p in r.attempts],
        "disjoint_first_try": r.disjoint_first_try,
    }
    return r.components, r.chart1.graph, _chart_components(r.chart1), Q(0), extra


def _oracle_count(mode, system):
    from .oracle.grid import OracleInconclusive, sampled_components_plane
    from .oracle.slices import sampled_components_space
    try:
        if mode == "plane":
            return sampled_components_plane(system[0])
        return sampled_components_space(system)
    except OracleInconclusive as exc:
        return str(exc)


def run(argv=None) -> int:
    ns = _parser().parse_args(argv)
    mode, path = _split_args(ns)
    _epsilon(ns.epsilon)
    mode, system = _read_system(path, mode)
    ns.mode = mode
    comps, graph, comp_map, shear, extra = (_run_plane if mode == "plane" else _run_space)(system, ns)

    from .topo.export import graph_dot, graph_json, graph_svg
    result = {
        "mode": mode,
        "seed": ns.seed,
        "epsilon": ns.epsilon,
        "input": [g.to_str() for g in system],
        "count": len(comps),
        "components": [c.to_json() for c in comps],
        "graph": graph_json(graph, comp_map, shear),
    }
    result.update(extra)
    code = EXIT_OK
    if ns.oracle:
        got = _oracle_count(mode, system)
        result["oracle"] = {"count": got, "agrees": got == len(comps)}
        if got != len(comps):
            code = EXIT_ORACLE

    # render everything before touching the file system
    outputs = {}
    text = json.dumps(result, sort_keys=True, indent=1) + "\n"
    if ns.json_out:
        outputs[ns.json_out] = text
    if ns.dot:
        outputs[ns.dot] = graph_dot(graph, comp_map, shear)
    if ns.svg:
        outputs[ns.svg] = graph_svg(graph, comp_map, shear)
    if not outputs:
        outputs["-"] = text
    for dest, body in outputs.items():
        if dest == "-":
            sys.stdout.write(body)
        else:
            Path(dest).write_text(body)
    if ns.json_out != "-" and "-" not in outputs:
        sys.stdout.write(f"{len(comps)} component{'s' if len(comps) != 1 else ''} (seed {ns.seed})\n")
    if code == EXIT_ORACLE:
        _diagnose("oracle", f"oracle found {result['oracle']['count']}, pipeline {len(comps)}")
    return code


def _diagnose(kind: str, message: str):
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")


def main(argv=None) -> int:
    try:
        return run(argv)
    except CliError as exc:
        _diagnose(exc.kind, str(exc))
        return exc.code
    except Exception as exc:  # noqa: BLE001 - last-resort report for batch use
        _diagnose("internal", f"{type(exc).__name__}: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
