"""Command-line interface.

Subcommands: transition, stationary, spectral, reduce, rankagg, validate,
demo. Every file written with --out gets a companion ``<out>.manifest.json``
recording the command line, input digests, seed, tool version, and PRNG
algorithm, so any seeded run can be reproduced bit-for-bit within one build.

Exit codes: 0 success, 1 domain error (message names the error type),
2 usage error.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .core import (
    demo_hypergraph,
    graph_to_json_dict,
    read_hypergraph,
)
from .errors import HyperwalkError
from .rankagg import experiment, matches_from_json_dict, rank_clique, rank_hypergraph, rank_mc3
from .reduction import (
    edge_independent_to_graph,
    nonlazy_trivial_equivalence,
    reversibility,
    sandwich_check,
    sandwich_weights,
)
from .spectral import check_cheeger, eigenvalues_symmetric, laplacian, spectral_report
from .stationary import stationary_direct, stationary_rho
from .walk import (
    PRNG_ALGORITHM,
    WalkKind,
    build_transition,
    transition_matrix,
)


# -- reproducibility manifest --------------------------------------------------

def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    """What produced an output file: re-running `command` against inputs with
    these digests reproduces the file byte-for-byte within one build."""

    command: list[str]
    inputs: dict[str, str]
    seed: int | None
    version: str
    prng: str
    timestamp: str

    @classmethod
    def capture(cls, argv, inputs, seed):
        return cls(
            command=["hyperwalk"] + list(argv),
            inputs={p: _sha256(p) for p in inputs},
            seed=seed,
            version=__version__,
            prng=PRNG_ALGORITHM,
            timestamp=datetime.datetime.now(datetime.timezone.utc).isoformat(),
        )


def write_manifest(out_path: str, argv: list[str], inputs: list[str],
                   seed: int | None) -> None:
    manifest = RunManifest.capture(argv, inputs, seed)
    with open(out_path + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest.__dict__, fh, indent=2)
        fh.write("\n")


def _emit(text: str, out: str | None, argv: list[str], inputs: list[str],
          seed: int | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        write_manifest(out, argv, inputs, seed)
    else:
        sys.stdout.write(text)


def _matrix_csv(vertices, matrix) -> str:
    lines = ["vertex," + ",".join(vertices)]
    for v, row in zip(vertices, matrix):
        lines.append(v + "," + ",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


# -- subcommand handlers ---------------------------------------------------------

def _cmd_validate(args, argv) -> int:
    read_hypergraph(args.input)
    print(f"{args.input}: ok")
    return 0


def _cmd_transition(args, argv) -> int:
    H = read_hypergraph(args.input)
    if args.kind == "restart":
        restart = None
        if args.restart_vertex is not None:
            r = np.zeros(H.n_vertices)
            r[H.index(args.restart_vertex)] = 1.0
            restart = tuple(r)
        kind = WalkKind.restart_walk(args.beta, restart)
    elif args.kind == "nonlazy":
        kind = WalkKind.nonlazy()
    else:
        kind = WalkKind.lazy()
    P = build_transition(H, kind)
    if args.json:
        payload = {
            "vertices": list(P.vertices),
            "matrix": [[float(x) for x in row] for row in P.matrix],
            "kind": args.kind,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out, argv, [args.input], None)
    else:
        _emit(_matrix_csv(P.vertices, P.matrix), args.out, argv, [args.input], None)
    return 0


def _cmd_stationary(args, argv) -> int:
    H = read_hypergraph(args.input)
    if args.method == "direct":
        result = stationary_direct(transition_matrix(H))
    elif args.method == "rho":
        result = stationary_rho(H)
    else:  # auto: prefer the rho route, fall back to the direct solve
        try:
            result = stationary_rho(H)
        except HyperwalkError:
            result = stationary_direct(transition_matrix(H))
    _emit(json.dumps(result.as_dict(), indent=2) + "\n",
          args.out, argv, [args.input], None)
    return 0


def _cmd_spectral(args, argv) -> int:
    H = read_hypergraph(args.input)
    report = spectral_report(H, eps=args.eps)
    payload = report.as_dict()
    if args.check_cheeger:
        verdict = check_cheeger(H)
        payload["cheeger_inequality"] = {
            "lambda": verdict.lam,
            "lambda_unnormalized": verdict.lam_unnormalized,
            "phi": verdict.phi,
            "holds": verdict.holds,
        }
    _emit(json.dumps(payload, indent=2) + "\n", args.out, argv, [args.input], None)
    return 0


def _cmd_reduce(args, argv) -> int:
    H = read_hypergraph(args.input)
    if args.mode == "eqind":
        G = edge_independent_to_graph(H)
        verdict = {"mode": "eqind", "walks_equal": True}
    elif args.mode == "nonlazy":
        eq = nonlazy_trivial_equivalence(H)
        G = eq.graph
        verdict = {"mode": "nonlazy", "max_dev": eq.max_dev}
    else:
        G = sandwich_weights(H)
        chk = sandwich_check(H)
        verdict = {
            "mode": "sandwich",
            "lambda_hypergraph": chk.lam_h,
            "lambda_graph": chk.lam_g,
            "c": chk.c,
            "holds": chk.holds,
            "stationary_deviation": chk.pi_dev,
        }
    payload = {"graph": graph_to_json_dict(G), "verdict": verdict}
    _emit(json.dumps(payload, indent=2) + "\n", args.out, argv, [args.input], None)
    return 0


def _cmd_rankagg(args, argv) -> int:
    if args.matches:
        with open(args.matches, "r", encoding="utf-8") as fh:
            data = matches_from_json_dict(json.load(fh))
        out_rows = []
        for ranker in (rank_hypergraph, rank_clique, rank_mc3):
            r = ranker(data, beta=args.beta)
            out_rows.append({"method": r.method, "order": list(r.order)})
        _emit(json.dumps({"rankings": out_rows}, indent=2) + "\n",
              args.out, argv, [args.matches], args.seed)
        return 0
    p_values = [float(x) for x in args.p.split(",")]
    result = experiment(args.n, args.sigma, p_values, args.trials, args.seed,
                        beta=args.beta)
    if args.json:
        payload = {"params": result.params, "summary": result.summary,
                   "trials": result.trials}
        _emit(json.dumps(payload, indent=2) + "\n", args.out, argv, [], args.seed)
        return 0
    _emit(result.to_csv(), args.out, argv, [], args.seed)
    if args.out:
        print(f"{'method':15s} {'p':>6s} {'mean tau_w':>11s} {'std':>8s}")
        for row in result.summary:
            print(f"{row['method']:15s} {row['p']:6.3f} "
                  f"{row['mean_tau_weighted']:11.4f} {row['std_tau_weighted']:8.4f}")
    return 0


def _cmd_demo(args, argv) -> int:
    H = demo_hypergraph()
    P = transition_matrix(H)
    pi = stationary_rho(H)
    verdict = reversibility(P, pi.pi)
    evals = eigenvalues_symmetric(laplacian(H).L)
    cheeger = check_cheeger(H)
    if args.json:
        payload = {
            "vertices": list(H.vertices),
            "transition_matrix": [[float(x) for x in row] for row in P.matrix],
            "pi": {v: float(x) for v, x in zip(H.vertices, pi.pi)},
            "reversible": verdict.reversible,
            "worst_pair": list(verdict.worst_pair),
            "violation": verdict.violation,
            "laplacian_eigenvalues": [float(x) for x in evals],
            "cheeger": cheeger.phi,
            "cheeger_inequality_holds": cheeger.holds,
        }
        print(json.dumps(payload, indent=2))
        return 0
    print("demo hypergraph: 4 vertices, 2 overlapping edges, gamma(v1 in edge 0) = 2")
    print("\ntransition matrix P:")
    print(_matrix_csv(P.vertices, P.matrix), end="")
    print("\nstationary distribution (rho route, residual %.2e):" % pi.residual)
    for v, x in zip(H.vertices, pi.pi):
        print(f"  pi({v}) = {x:.12f}")
    print(f"\nreversible: {verdict.reversible} "
          f"(worst pair {verdict.worst_pair}, violation {verdict.violation:.6e})")
    print("\nLaplacian spectrum:", " ".join(f"{x:.10f}" for x in evals))
    print(f"\nCheeger constant: {cheeger.phi:.10f}")
    print(f"Cheeger inequality phi^2/2 <= lambda <= 2 phi: "
          f"lambda={cheeger.lam:.10f}, holds={cheeger.holds}")
    return 0


# -- parser ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperwalk",
        description="Random walks, spectra, and rank aggregation on hypergraphs "
                    "with per-edge vertex weights.",
    )
    parser.add_argument("--config", help="JSON file of default flag values (explicit flags win)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable stdout")
        p.add_argument("--out", help="write output to this file (plus a .manifest.json)")

    p = sub.add_parser("validate", help="parse and validate a hypergraph file")
    p.add_argument("--input", required=True)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("transition", help="emit a walk transition matrix as CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=["lazy", "nonlazy", "restart"], default="lazy")
    p.add_argument("--beta", type=float, default=0.4)
    p.add_argument("--restart-vertex", help="restart to this vertex instead of uniform")
    common(p)
    p.set_defaults(handler=_cmd_transition)

    p = sub.add_parser("stationary", help="stationary distribution as JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=["rho", "direct", "auto"], default="auto")
    common(p)
    p.set_defaults(handler=_cmd_stationary)

    p = sub.add_parser("spectral", help="Laplacian spectrum, Cheeger constant, mixing bound")
    p.add_argument("--input", required=True)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--check-cheeger", action="store_true")
    common(p)
    p.set_defaults(handler=_cmd_spectral)

    p = sub.add_parser("reduce", help="clique-graph reductions")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=["eqind", "sandwich", "nonlazy"], required=True)
    common(p)
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("rankagg", help="synthetic rank-aggregation experiment")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--p", default="0.03,0.05,0.07", help="comma-separated inclusion rates")
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--beta", type=float, default=0.4)
    p.add_argument("--matches", help="rank externally supplied matches (JSON) instead")
    common(p)
    p.set_defaults(handler=_cmd_rankagg)

    p = sub.add_parser("demo", help="run everything on the built-in fixture")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_demo)

    return parser


def _config_path(argv: list[str]) -> str | None:
    for j, tok in enumerate(argv):
        if tok == "--config":
            return argv[j + 1] if j + 1 < len(argv) else None
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def dispatch(argv: list[str]) -> int:
    parser = _build_parser()
    # Config values become parser defaults for the optional flags, so
    # explicitly passed flags still win; required flags stay on the command
    # line.
    config = _config_path(argv)
    if config:
        with open(config, "r", encoding="utf-8") as fh:
            parser.set_defaults(**json.load(fh))
    args = parser.parse_args(argv)
    try:
        return args.handler(args, argv)
    except HyperwalkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:  # out-of-range parameters are usage errors
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
