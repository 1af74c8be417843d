"""Command-line frontend.

Subcommands: compute (cross-validated Kemeny report), matrices (dump any
walk matrix as CSV), closed-form (exact formula evaluation), sweep
(balanced barbell sweep), census (edge vs non-backtracking comparison),
and generate (emit graph6 for a built-in family).  Output is JSON or CSV,
deterministic byte-for-byte for identical invocations.  Exit codes:
0 success, 1 validation error, 2 internal cross-check failure.

Graphs are given either as a generator spec in a flat ``name:args``
grammar (``complete:5``, ``bipartite:2,3``, ``cycle:5``, ``path:4``,
``necklace:3``, ``barbell:2,15,15``), as a raw graph6 string, or read
from ``--input`` (a path or ``-`` for stdin).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import census as census_mod
from . import chains, engine, formulas, graphs
from .ratmath import format_scalar

EXACT_STATE_CAP = 64


class CliError(ValueError):
    """Validation failure that should exit with status 1."""


# ---------------------------------------------------------------------------
# input handling


def parse_generator_spec(spec: str) -> graphs.Graph:
    """Build a graph from the flat ``name:args`` mini-grammar, falling
    back to graph6 for anything that is not a known family name."""
    name, _, argstr = spec.partition(":")
    builders = {
        "complete": (graphs.gen_complete, 1),
        "bipartite": (graphs.gen_complete_bipartite, 2),
        "cycle": (graphs.gen_cycle, 1),
        "path": (graphs.gen_path, 1),
        "necklace": (graphs.gen_necklace, 1),
        "barbell": (graphs.gen_cycle_barbell, 3),
    }
    if name in builders:
        fn, arity = builders[name]
        parts = [p for p in argstr.split(",") if p] if argstr else []
        if len(parts) != arity:
            raise CliError(
                f"generator {name!r} takes {arity} integer argument(s), "
                f"got {argstr!r}")
        try:
            args = [int(p) for p in parts]
        except ValueError:
            raise CliError(f"generator arguments must be integers: {argstr!r}")
        try:
            return fn(*args)
        except graphs.GraphError as exc:
            raise CliError(str(exc))
    try:
        return graphs.parse_graph6(spec)
    except graphs.GraphError:
        raise CliError(
            f"{spec!r} is neither a known generator spec "
            "(complete, bipartite, cycle, path, necklace, barbell) nor valid graph6")


def _read_input(path: str):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


def _graph_from_args(args) -> graphs.Graph:
    if args.input:
        text = _read_input(args.input)
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise CliError(f"no graph6 line found in {args.input!r}")
        try:
            return graphs.parse_graph6(lines[0])
        except graphs.GraphError as exc:
            raise CliError(f"malformed graph6 in {args.input!r}: {exc}")
    spec = getattr(args, "graph", None)
    if not spec:
        raise CliError("give a generator spec / graph6 string, or --input")
    return parse_generator_spec(spec)


def _render(x) -> str:
    return format_scalar(x)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_compute(args) -> int:
    g = _graph_from_args(args)
    if args.mode == "exact":
        states = max(g.n, 2 * g.m)
        if states > EXACT_STATE_CAP:
            raise CliError(
                f"exact mode needs at most {EXACT_STATE_CAP} states per walk; "
                f"this graph has {states} (use --mode auto or float)")
    report = engine.kemeny_triple(g, mode=args.mode, cap=EXACT_STATE_CAP,
                                  tol=args.tol)
    if report.nb_omitted is not None:
        raise CliError(report.nb_omitted)
    if args.output == "json":
        out = report.to_json()
    else:
        lines = ["quantity,value"]
        lines.append(f"k_vertex,{_render(report.k_vertex)}")
        lines.append(f"k_edge,{_render(report.k_edge)}")
        lines.append(f"k_nb,{_render(report.k_nb)}")
        for walk in sorted(report.residuals):
            lines.append(f"residual_{walk},{report.residuals[walk]:.3g}")
        lines.append(f"identity_residual,{report.identity_residual:.3g}")
        out = "\n".join(lines)
    print(out)
    if report.failed:
        print(f"cross-check failure: a residual exceeds tolerance {args.tol}",
              file=sys.stderr)
        return 2
    return 0


def _cmd_matrices(args) -> int:
    g = _graph_from_args(args)
    exact = args.mode != "float"
    try:
        M = chains.build_matrix(g, args.kind, exact=exact)
    except chains.ChainError as exc:
        raise CliError(str(exc))
    rows = [[_render(x) for x in row] for row in M.data]
    if args.output == "json":
        print(json.dumps(
            {"kind": M.kind, "shape": list(M.shape), "rows": rows}, indent=2))
    else:
        print("\n".join(",".join(row) for row in rows))
    return 0


_FORMULA_NAMES = ("necklace", "barbell", "regular", "biregular",
                  "barbell-edge-max", "barbell-nb-max")


def _closed_form_dict(name: str, arg: Optional[str], args) -> dict:
    if name == "necklace":
        n = _int_arg(name, arg)
        kv, ke, knb = formulas.necklace_kemeny(n)
        return {"formula": "necklace", "n": n, "k_vertex": _render(kv),
                "k_edge": _render(ke), "k_nb": _render(knb)}
    if name == "barbell":
        parts = _int_args(name, arg, 3)
        params = graphs.BarbellParams(*parts)
        kv, ke, knb = formulas.barbell_kemeny(params)
        return {"formula": "barbell", "k": params.k, "a": params.a,
                "b": params.b, "k_vertex": _render(kv),
                "k_edge": _render(ke), "k_nb": _render(knb)}
    if name == "barbell-edge-max":
        n = _int_arg(name, arg)
        params, value = formulas.barbell_edge_max(n)
        return {"formula": "barbell-edge-max", "n": n, "k": params.k,
                "a": params.a, "b": params.b, "k_edge": _render(value)}
    if name == "barbell-nb-max":
        n = _int_arg(name, arg)
        params, value = formulas.barbell_nb_max(n)
        return {"formula": "barbell-nb-max", "n": n, "k": params.k,
                "a": params.a, "b": params.b, "k_nb": _render(value)}
    if name in ("regular", "biregular"):
        if arg:
            g = parse_generator_spec(arg)
        else:
            g = _graph_from_args(args)
        if name == "regular":
            prof = formulas.regular_profile(g)
            ke = formulas.regular_edge_kemeny(prof)
            knb = formulas.regular_nb_kemeny(prof, ke)
            checks = formulas.regular_bounds(prof, ke, knb)
        else:
            prof = formulas.biregular_profile(g)
            ke = formulas.biregular_edge_kemeny(prof)
            knb = formulas.biregular_nb_kemeny(prof, ke)
            checks = formulas.biregular_bounds(prof, ke, knb)
        return {
            "formula": name,
            "n": g.n,
            "m": g.m,
            "k_edge": _render(ke),
            "k_nb": _render(knb),
            "bounds": [
                {"name": c.name, "satisfied": c.satisfied,
                 "margin": _render(c.margin),
                 "known_exception": c.known_exception}
                for c in checks
            ],
        }
    raise CliError(f"unknown formula {name!r}; choose from {_FORMULA_NAMES}")


def _int_arg(name: str, arg: Optional[str]) -> int:
    if arg is None:
        raise CliError(f"formula {name!r} needs one integer argument")
    try:
        return int(arg)
    except ValueError:
        raise CliError(f"formula {name!r} needs an integer, got {arg!r}")


def _int_args(name: str, arg: Optional[str], arity: int) -> list:
    parts = (arg or "").split(",")
    if len(parts) != arity:
        raise CliError(f"formula {name!r} needs {arity} integers like 2,15,15")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise CliError(f"formula {name!r} needs integers, got {arg!r}")


def _cmd_closed_form(args) -> int:
    try:
        payload = _closed_form_dict(args.formula, args.arg, args)
    except (formulas.FormulaError, graphs.GraphError) as exc:
        raise CliError(str(exc))
    if args.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        lines = ["quantity,value"]
        for key, val in payload.items():
            if key == "bounds":
                for c in val:
                    lines.append(f"bound_{c['name']},{c['margin']}")
            else:
                lines.append(f"{key},{val}")
        print("\n".join(lines))
    return 0


def _cmd_sweep(args) -> int:
    try:
        rows = census_mod.barbell_sweep(args.n)
    except census_mod.CensusError as exc:
        raise CliError(str(exc))
    skipped = census_mod.sweep_skipped(args.n)
    if skipped:
        print(f"note: no balanced split for k = {skipped}", file=sys.stderr)
    if args.output == "json":
        print(json.dumps({
            "n": args.n,
            "rows": [{"k": r.k, "a": r.a, "b": r.b,
                      "k_e": _render(r.k_e), "k_nb": _render(r.k_nb)}
                     for r in rows],
            "skipped_k": skipped,
        }, indent=2))
    else:
        print(census_mod.sweep_csv(rows), end="")
    return 0


def _cmd_census(args) -> int:
    if (args.n is None) == (args.input is None):
        raise CliError("census needs exactly one of --n or --input")
    if args.n is not None:
        try:
            result = census_mod.census_nb_vs_edge(args.n)
        except census_mod.CensusError as exc:
            raise CliError(str(exc))
        n_label: Optional[int] = args.n
    else:
        text = _read_input(args.input)
        lines = [ln for ln in text.splitlines() if ln.strip()]
        result = census_mod.census_nb_vs_edge(lines)
        n_label = None
    if result.skipped:
        print(f"note: skipped {len(result.skipped)} unqualified graph(s)",
              file=sys.stderr)
        for entry, reason in result.skipped:
            print(f"  {entry}: {reason}", file=sys.stderr)
    if args.output == "json":
        print(json.dumps(census_mod.census_summary(result, n_label), indent=2))
    else:
        print(census_mod.census_csv(result.records), end="")
    return 0


def _cmd_generate(args) -> int:
    g = parse_generator_spec(args.graph)
    print(graphs.to_graph6(g))
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kemeny",
        description="Kemeny's constant for vertex, edge, and "
                    "non-backtracking walks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph_positional=True):
        if graph_positional:
            p.add_argument("graph", nargs="?", default=None,
                           help="generator spec (name:args) or graph6 string")
        p.add_argument("--mode", choices=("auto", "exact", "float"),
                       default="auto", help="scalar mode (default auto)")
        p.add_argument("--tol", type=float, default=1e-9,
                       help="cross-check tolerance (default 1e-9)")
        p.add_argument("--output", choices=("json", "csv"), default="json",
                       help="serialization format (default json)")
        p.add_argument("--input", default=None,
                       help="read graph6 from this path, or - for stdin")

    p = sub.add_parser("compute", help="cross-validated Kemeny report")
    common(p)

    p = sub.add_parser("matrices", help="dump a walk matrix")
    common(p)
    p.set_defaults(output="csv")
    p.add_argument("--kind", default="vertex",
                   choices=("adjacency", "degree", "vertex", "edge",
                            "non-backtracking", "edge-adjacency",
                            "nb-adjacency", "edge-degree", "incidence-T",
                            "incidence-S", "reversal"),
                   help="which matrix to dump (default vertex)")

    p = sub.add_parser("closed-form", help="evaluate a named closed form")
    p.add_argument("formula", help=f"one of {', '.join(_FORMULA_NAMES)}")
    p.add_argument("arg", nargs="?", default=None,
                   help="formula argument: integers like 10 or 2,15,15, or "
                        "a generator spec for regular/biregular")
    common(p, graph_positional=False)

    p = sub.add_parser("sweep", help="balanced barbell sweep CSV")
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--output", choices=("json", "csv"), default="csv",
                   help="serialization format (default csv)")

    p = sub.add_parser("census", help="edge vs non-backtracking census")
    p.add_argument("--n", type=int, default=None,
                   help="built-in exhaustive corpus on n vertices (4..8)")
    p.add_argument("--output", choices=("json", "csv"), default="json",
                   help="json summary or csv records (default json)")
    p.add_argument("--input", default=None,
                   help="graph6 corpus path, or - for stdin")

    p = sub.add_parser("generate", help="emit graph6 for a family")
    p.add_argument("graph", help="generator spec (name:args)")

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "compute": _cmd_compute,
        "matrices": _cmd_matrices,
        "closed-form": _cmd_closed_form,
        "sweep": _cmd_sweep,
        "census": _cmd_census,
        "generate": _cmd_generate,
    }
    try:
        return handlers[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (graphs.GraphError, chains.ChainError, formulas.FormulaError,
            census_mod.CensusError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except engine.CrossCheckError as exc:
        print(f"cross-check failure: {exc}", file=sys.stderr)
        return 2
    except engine.EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
