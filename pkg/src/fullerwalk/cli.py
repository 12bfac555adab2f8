"""Command-line front end: one subcommand per analysis, data files out.

Every command writes a JSON or CSV data file, never an image; plots are
left to downstream tooling and each output is the table behind one. The
JSON header echoes the exact flag set plus the graph checksum so a run
can be reproduced from its own output. CSV files carry the same metadata
as '#' comment lines. Timing appears only in JSON (timing_seconds); CSV
and graph files are byte-identical across reruns of the same command.

Exit codes: 0 success, 2 usage or validation error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .dynamics import limiting_distribution
from .equilibration import QuadratureError, equilibration_report
from .eth import (
    cluster_averaged_diagonal,
    eth_report,
    eth_symmetry_check,
    haar_entropy_baseline,
    node_entropies,
    observable_in_energy_basis,
    position_observable,
    projector_eth_stats,
)
from .graphs import (
    adjacency,
    build_c60_blocked,
    build_tube_fullerene,
    edge_checksum,
    load_graph,
    save_graph,
)
from .spectral import (
    DEGENERACY_TOL,
    eigendecompose,
    symmetry_adapted_c60_basis,
)
from .thermo import (
    gibbs_node_probability,
    gibbs_partition_function,
    gibbs_vs_limiting,
    pentagon_gibbs,
)

# argparse bookkeeping that is not part of the reproducible configuration
_NOT_CONFIG = {"func", "command"}


def _config_echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_CONFIG}


def _meta(args, checksum) -> dict:
    return {
        "tool": "fullerwalk",
        "version": __version__,
        "command": args.command,
        "config": _config_echo(args),
        "graph_checksum": checksum,
    }


def _jsonify(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)) and not isinstance(obj, bool):
        return int(obj)
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def _write_json(path, meta, payload, t0: float) -> None:
    doc = dict(payload)
    doc["meta"] = dict(meta, timing_seconds=round(time.perf_counter() - t0, 6))
    with open(path, "w") as fh:
        json.dump(_jsonify(doc), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _meta_comment_lines(meta) -> list:
    return [
        f"# tool: {meta['tool']} {meta['version']}",
        f"# command: {meta['command']}",
        "# config: " + json.dumps(_jsonify(meta["config"]), sort_keys=True),
        f"# graph_checksum: {meta['graph_checksum']}",
    ]


def _cell(val, sig17: bool) -> str:
    if isinstance(val, (bool, np.bool_)):
        return "true" if val else "false"
    if isinstance(val, (float, np.floating)):
        return format(float(val), ".17g") if sig17 else repr(float(val))
    return str(val)


def _write_csv(path, meta, columns, rows, sig17=(), extra_comments=()) -> None:
    lines = _meta_comment_lines(meta)
    lines.extend(extra_comments)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(
            ",".join(_cell(v, c in sig17) for c, v in zip(columns, row))
        )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_matrix_csv(path, meta, matrix, extra_comments=()) -> None:
    """Full N x N matrix, one row per line, 17 significant digits."""
    lines = _meta_comment_lines(meta)
    lines.extend(extra_comments)
    for row in np.asarray(matrix, dtype=float):
        lines.append(",".join(format(v, ".17g") for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _resolve_graph(args):
    if args.tube is not None:
        return build_tube_fullerene(args.tube)
    if args.c60:
        return build_c60_blocked()
    return load_graph(args.graph)


def _parse_observable(spec: str, n: int) -> np.ndarray:
    if spec == "position":
        return position_observable(n)
    if spec.startswith("node:"):
        try:
            x = int(spec[5:])
        except ValueError:
            raise ValueError(f"bad node index in observable {spec!r}") from None
        if not 1 <= x <= n:
            raise ValueError(f"observable node {x} out of range 1..{n}")
        o = np.zeros((n, n))
        o[x - 1, x - 1] = 1.0
        return o
    raise ValueError(
        f"observable must be 'position' or 'node:K', got {spec!r}"
    )


def _parse_family(spec: str) -> list:
    """Family size list, either 'LO..HI' (step 10) or comma-separated."""
    try:
        if ".." in spec:
            lo_s, hi_s = spec.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            sizes = list(range(lo, hi + 1, 10))
        else:
            sizes = [int(tok) for tok in spec.split(",") if tok]
    except ValueError:
        raise ValueError(f"bad family spec {spec!r}") from None
    if not sizes:
        raise ValueError(f"empty family spec {spec!r}")
    return sizes


def _linear_grid(lo: float, hi: float, count: int, name: str) -> np.ndarray:
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError(f"{name} grid endpoints must be finite")
    if hi <= lo:
        raise ValueError(f"{name} grid needs max > min, got [{lo}, {hi}]")
    if count < 2:
        raise ValueError(f"{name} grid needs at least 2 points, got {count}")
    return np.linspace(lo, hi, count)


def _log_grid(lo: float, hi: float, count: int, name: str) -> np.ndarray:
    if lo <= 0:
        raise ValueError(f"{name} grid must start above 0, got {lo}")
    _linear_grid(lo, hi, count, name)
    return np.logspace(np.log10(lo), np.log10(hi), count)


def _cmd_gen(args) -> int:
    g = build_tube_fullerene(args.tube) if args.tube is not None else build_c60_blocked()
    meta = _meta(args, edge_checksum(g))
    save_graph(g, args.output, header=_meta_comment_lines(meta))
    return 0


def _cmd_spectrum(args) -> int:
    t0 = time.perf_counter()
    g = _resolve_graph(args)
    s = eigendecompose(adjacency(g), degeneracy_tol=args.tol)
    meta = _meta(args, edge_checksum(g))

    cluster_index = np.empty(s.n, dtype=int)
    for ci, members in enumerate(s.clusters):
        cluster_index[list(members)] = ci

    if args.format == "json":
        payload = {
            "n_nodes": g.n_nodes,
            "eigenvalues": s.eigenvalues,
            "cluster_index": cluster_index,
            "cluster_values": s.cluster_values(),
            "degeneracies": [len(c) for c in s.clusters],
            "n_distinct": s.n_distinct,
            "degeneracy_tol": s.degeneracy_tol,
        }
        _write_json(args.output, meta, payload, t0)
    else:
        rows = [
            (k + 1, s.eigenvalues[k], int(cluster_index[k])) for k in range(s.n)
        ]
        _write_csv(
            args.output,
            meta,
            ("k", "eigenvalue", "cluster"),
            rows,
            sig17=("eigenvalue",),
            extra_comments=["# k is 1-based, clusters 0-based, both ascending"],
        )

    if args.vectors:
        _write_matrix_csv(
            args.vectors,
            meta,
            s.eigenvectors,
            extra_comments=[
                "# rows are vertices 1..N, columns eigenvectors in ascending order"
            ],
        )
    return 0


def _cmd_limiting(args) -> int:
    t0 = time.perf_counter()
    g = _resolve_graph(args)
    s = eigendecompose(adjacency(g), degeneracy_tol=args.tol)
    u = limiting_distribution(s).u
    meta = _meta(args, edge_checksum(g))
    row_dev = float(np.abs(u.sum(axis=1) - 1.0).max())

    if args.format == "json":
        payload = {
            "n_nodes": g.n_nodes,
            "u": u,
            "row_sum_max_dev": row_dev,
        }
        if args.c60:
            payload["mirror_residual"] = float(np.abs(u - u[:, ::-1]).max())
        _write_json(args.output, meta, payload, t0)
    elif args.layout == "matrix":
        _write_matrix_csv(args.output, meta, u)
    else:
        rows = [
            (x + 1, y + 1, u[x, y]) for x in range(s.n) for y in range(s.n)
        ]
        _write_csv(args.output, meta, ("x", "y", "u"), rows, sig17=("u",))
    return 0


def _cmd_bound(args) -> int:
    t0 = time.perf_counter()
    g = _resolve_graph(args)
    if not 1 <= args.start <= g.n_nodes:
        raise ValueError(f"start must be in 1..{g.n_nodes}, got {args.start}")
    obs_spec = args.observable if args.observable else f"node:{args.start}"
    o = _parse_observable(obs_spec, g.n_nodes)
    taus = _log_grid(args.tau_min, args.tau_max, args.tau_count, "tau")

    rep = equilibration_report(
        g,
        args.start,
        o,
        tau_grid=taus,
        epsilon=args.epsilon,
        n_eps_override=args.n_eps_override,
        degeneracy_tol=args.tol,
    )
    meta = _meta(args, edge_checksum(g))
    if args.format == "json":
        payload = {
            "start": rep.start,
            "observable": obs_spec,
            "d_eff": rep.d_eff,
            "n_lambda": rep.n_lambda,
            "log2_n_lambda": math.log2(rep.n_lambda),
            "n_eps": rep.n_eps,
            "n_eps_override": rep.n_eps_override,
            "epsilon": rep.epsilon,
            "operator_norm_sq": rep.operator_norm_sq,
            "rhs_asymptote": rep.rhs_asymptote,
            "bound_holds": bool(np.all(rep.lhs <= rep.rhs)),
            "table": {"tau": rep.tau_grid, "lhs": rep.lhs, "rhs": rep.rhs},
        }
        _write_json(args.output, meta, payload, t0)
    else:
        rows = list(zip(rep.tau_grid, rep.lhs, rep.rhs))
        _write_csv(args.output, meta, ("tau", "lhs", "rhs"), rows)
    return 0


def _cmd_gibbs(args) -> int:
    t0 = time.perf_counter()
    meta = _meta(args, None)

    if args.beta is not None:
        if not math.isfinite(args.beta) or args.beta < 0:
            raise ValueError(f"beta must be finite and >= 0, got {args.beta}")
        pg = pentagon_gibbs(args.beta)
        if args.format == "json":
            payload = {
                "beta": pg.beta,
                "z": pg.z,
                "node_probs": pg.node_probs,
                "state": pg.state,
            }
            _write_json(args.output, meta, payload, t0)
        else:
            rows = [(j, pg.node_probs[j]) for j in range(6)]
            _write_csv(
                args.output,
                meta,
                ("node", "probability"),
                rows,
                extra_comments=["# node 0 is the no-walker state b0"],
            )
        return 0

    betas = _linear_grid(args.beta_min, args.beta_max, args.beta_count, "beta")
    if args.beta_sweep:
        table = []
        for beta in betas:
            p_j = gibbs_node_probability(beta)
            table.append((beta, gibbs_partition_function(beta), p_j, 1.0 - 5.0 * p_j))
        if args.format == "json":
            payload = {
                "table": {
                    "beta": [r[0] for r in table],
                    "z": [r[1] for r in table],
                    "p_j": [r[2] for r in table],
                    "p_0": [r[3] for r in table],
                }
            }
            _write_json(args.output, meta, payload, t0)
        else:
            _write_csv(args.output, meta, ("beta", "z", "p_j", "p_0"), table)
        return 0

    sizes = _parse_family(args.family)
    rows = gibbs_vs_limiting(sizes, betas, degeneracy_tol=args.tol)
    if args.format == "json":
        payload = {
            "rows": [
                {
                    "n": r.n,
                    "u_nn": r.u_nn,
                    "p_beta_min": r.p_beta_min,
                    "p_beta_max": r.p_beta_max,
                    "gibbs_matchable": r.gibbs_matchable,
                }
                for r in rows
            ],
            "any_matchable": bool(any(r.gibbs_matchable for r in rows)),
        }
        _write_json(args.output, meta, payload, t0)
    else:
        _write_csv(
            args.output,
            meta,
            ("N", "u_NN", "p_beta_min", "p_beta_max", "gibbs_matchable"),
            [(r.n, r.u_nn, r.p_beta_min, r.p_beta_max, r.gibbs_matchable) for r in rows],
        )
    return 0


def _cmd_eth(args) -> int:
    t0 = time.perf_counter()
    g = _resolve_graph(args)
    s = eigendecompose(adjacency(g), degeneracy_tol=args.tol)
    o = _parse_observable(args.observable, g.n_nodes)
    meta = _meta(args, edge_checksum(g))

    if args.format == "csv":
        eb = observable_in_energy_basis(s, o)
        _write_matrix_csv(
            args.output,
            meta,
            eb.o_mn,
            extra_comments=[f"# O in the energy eigenbasis, basis {eb.basis_tag}"],
        )
        return 0

    rep = eth_report(s, o)
    eb = observable_in_energy_basis(s, o)
    node_table = [projector_eth_stats(s, x) for x in range(1, s.n + 1)]
    payload = {
        "observable": args.observable,
        "basis": rep.basis_tag,
        "diag_mean": rep.diag_mean,
        "diag_std": rep.diag_std,
        "offdiag_rms": rep.offdiag_rms,
        "diagonal": np.diag(eb.o_mn),
        "cluster_averaged_diagonal": cluster_averaged_diagonal(s, o),
        "node_table": [
            {"x": x + 1, "diag_mean": m, "diag_std": sd}
            for x, (m, sd) in enumerate(node_table)
        ],
    }
    if args.entropies:
        ents = node_entropies(s)
        payload["node_entropies"] = ents
        payload["entropy_mean"] = float(ents.mean())
        payload["entropy_std"] = float(ents.std())
    if args.haar_samples > 0:
        hmean, hstd = haar_entropy_baseline(g.n_nodes, args.haar_samples, seed=args.seed)
        payload["haar_entropy_mean"] = hmean
        payload["haar_entropy_std"] = hstd
    _write_json(args.output, meta, payload, t0)
    return 0


def _cmd_symmetry(args) -> int:
    t0 = time.perf_counter()
    s = symmetry_adapted_c60_basis(degeneracy_tol=args.tol)
    chk = eth_symmetry_check(s)
    u = limiting_distribution(s).u
    u_resid = float(np.abs(u - u[:, ::-1]).max())
    meta = _meta(args, edge_checksum(build_c60_blocked()))
    payload = {
        "basis": s.basis_tag,
        "mirror_residual": chk.mirror_residual,
        "position_diag_deviation": chk.position_diag_deviation,
        "u_mirror_residual": u_resid,
        "passed": bool(chk.passed and u_resid < 1e-9),
        "thresholds": {
            "mirror_residual": 1e-10,
            "position_diag_deviation": 1e-9,
            "u_mirror_residual": 1e-9,
        },
    }
    _write_json(args.output, meta, payload, t0)
    return 0


def _add_graph_source(p, with_file: bool = True) -> None:
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument(
        "--tube",
        type=int,
        metavar="N",
        help="tube-isomer fullerene on N vertices (multiple of 10, N >= 30)",
    )
    grp.add_argument("--c60", action="store_true", help="the C60 buckyball")
    if with_file:
        grp.add_argument("--graph", metavar="PATH", help="read an edge-list graph file")


def _add_output(p, formats=("json", "csv")) -> None:
    p.add_argument("-o", "--output", required=True, metavar="PATH", help="output file")
    if formats:
        p.add_argument(
            "--format", choices=formats, default=formats[0], help="output format"
        )


def _add_tol(p) -> None:
    p.add_argument(
        "--tol",
        type=float,
        default=DEGENERACY_TOL,
        metavar="T",
        help="eigenvalue clustering tolerance",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fullerwalk",
        description="Continuous-time quantum walks on fullerene graphs.",
    )
    parser.add_argument(
        "--version", action="version", version=f"fullerwalk {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("gen", help="generate a fullerene graph file")
    _add_graph_source(p, with_file=False)
    _add_output(p, formats=())
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("spectrum", help="eigenvalues and degeneracy clusters")
    _add_graph_source(p)
    _add_tol(p)
    p.add_argument(
        "--vectors", metavar="PATH", help="also write eigenvectors as CSV"
    )
    _add_output(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("limiting", help="limiting distribution u(x, y)")
    _add_graph_source(p)
    _add_tol(p)
    p.add_argument(
        "--layout",
        choices=("triples", "matrix"),
        default="triples",
        help="CSV layout: (x, y, u) triples or the full N x N matrix",
    )
    _add_output(p)
    p.set_defaults(func=_cmd_limiting)

    p = sub.add_parser("bound", help="equilibration bound versus measured deviation")
    _add_graph_source(p)
    _add_tol(p)
    p.add_argument("--start", type=int, required=True, metavar="X", help="start node")
    p.add_argument(
        "--observable",
        metavar="SPEC",
        help="'position' or 'node:K' (default: projector on the start node)",
    )
    p.add_argument("--epsilon", type=float, default=1.0, help="gap-count window")
    p.add_argument(
        "--n-eps-override",
        type=int,
        default=None,
        metavar="K",
        help="use K instead of the computed N(epsilon) in the rhs",
    )
    p.add_argument("--tau-min", type=float, default=0.1, help="smallest horizon")
    p.add_argument("--tau-max", type=float, default=1000.0, help="largest horizon")
    p.add_argument("--tau-count", type=int, default=60, help="grid size")
    _add_output(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("gibbs", help="pentagon Gibbs states and the family comparison")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--beta", type=float, metavar="B", help="single inverse temperature")
    mode.add_argument(
        "--beta-sweep", action="store_true", help="sweep beta over the grid"
    )
    mode.add_argument(
        "--family",
        metavar="SPEC",
        help="compare u(N, N) against the Gibbs range for sizes 'LO..HI' or a comma list",
    )
    p.add_argument("--beta-min", type=float, default=0.0, help="grid start")
    p.add_argument("--beta-max", type=float, default=200.0, help="grid end")
    p.add_argument("--beta-count", type=int, default=201, help="grid size")
    _add_tol(p)
    _add_output(p)
    p.set_defaults(func=_cmd_gibbs)

    p = sub.add_parser("eth", help="observable statistics in the energy eigenbasis")
    _add_graph_source(p)
    _add_tol(p)
    p.add_argument(
        "--observable",
        required=True,
        metavar="SPEC",
        help="'position' or 'node:K'",
    )
    p.add_argument(
        "--entropies",
        action="store_true",
        help="include per-node measurement entropies",
    )
    p.add_argument(
        "--haar-samples",
        type=int,
        default=0,
        metavar="M",
        help="include a Haar-orthogonal entropy baseline over M samples",
    )
    p.add_argument("--seed", type=int, default=0, help="base seed for the baseline")
    _add_output(p)
    p.set_defaults(func=_cmd_eth)

    p = sub.add_parser("symmetry", help="C60 mirror-symmetry consistency suite")
    _add_tol(p)
    _add_output(p, formats=())
    p.set_defaults(func=_cmd_symmetry)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"fullerwalk: error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"fullerwalk: quadrature did not converge: {exc}", file=sys.stderr)
        return 3
    except ArithmeticError as exc:
        print(f"fullerwalk: numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"fullerwalk: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
