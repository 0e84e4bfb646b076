"""Command line front end.

Verbs: space, blocking, color, solve, verify, bounds, run, recheck.
All machine-readable output is canonical JSON (sorted keys, no floats).
"""

from __future__ import annotations

import argparse
import json
import sys

from .blocking import WeightedPointSet, is_minimal, is_t_fold_blocking, is_t_mod_p_set
from .certificates import (canonical_json, load_certificate, make_certificate,
                           recheck, write_certificate)
from .coloring import Coloring, is_proper, is_trivial_coloring, trivial_coloring
from .experiments import ExperimentConfig, default_grid, run_experiments
from .geometry import (ProjectiveSpace, count_subspaces, hypergraph_from_file,
                       hypergraph_to_file, theta)
from .solvers import bounds_report, exact_tau, exact_ucn, verify_tmodp_theorem


def _emit(data):
    print(canonical_json(data))


def cmd_space(args):
    space = ProjectiveSpace.of_order(args.n, args.q)
    info = {"n": args.n, "q": args.q, "field": space.field.descriptor(),
            "num_points": space.num_points,
            "subspace_counts": {str(m): count_subspaces(args.n, m, args.q)
                                for m in range(args.n + 1)}}
    if args.export_hypergraph:
        hypergraph_to_file(space.hypergraph(args.k), args.export_hypergraph)
        info["exported"] = args.export_hypergraph
    _emit(info)
    return 0


def cmd_blocking(args):
    space = ProjectiveSpace.of_order(args.n, args.q)
    with open(args.weights) as fh:
        weights = json.load(fh)
    B = WeightedPointSet(space, weights)
    blocking, witness = is_t_fold_blocking(B, args.t, args.k)
    modp, _ = is_t_mod_p_set(B, args.t, args.k)
    claims = [{"type": "t_fold_blocking", "t": args.t, "k": args.k, "verified": blocking},
              {"type": "t_mod_p", "t": args.t, "k": args.k, "verified": modp}]
    if blocking:
        claims.append({"type": "minimal", "t": args.t, "k": args.k,
                       "verified": is_minimal(B, args.t, args.k)})
    payload = {"space": {"n": args.n, "q": args.q}, "weights": weights, "claims": claims}
    cert = make_certificate("blocking_set", payload)
    if args.out:
        write_certificate(cert, args.out)
    _emit({"size": B.size, "claims": claims})
    return 0 if blocking else 1


def cmd_color(args):
    H = hypergraph_from_file(args.hypergraph)
    if args.mode == "trivialize":
        with open(args.transversal) as fh:
            T = json.load(fh)
        coloring = trivial_coloring(T, H)
        _emit({"assignment": list(coloring.assignment), "N": coloring.N})
        return 0
    with open(args.coloring) as fh:
        data = json.load(fh)
    coloring = Coloring(tuple(data["assignment"]))
    proper, edge = is_proper(coloring, H)
    out = {"N": coloring.N, "proper": proper}
    if args.mode == "analyze":
        trivial, cls = is_trivial_coloring(coloring, H)
        out.update({"trivial": trivial, "witness_class": cls})
    _emit(out)
    return 0 if proper else 1


def cmd_solve(args):
    H = hypergraph_from_file(args.hypergraph)
    if args.problem == "tau":
        res = exact_tau(H, args.t)
        out = {"problem": "tau", "t": args.t, "objective": res.objective,
               "status": res.status, "nodes": res.nodes,
               "witness": list(res.witness) if res.witness is not None else None}
        if H.params is not None and res.status == "optimal":
            n, k, q = H.params
            payload = {"n": n, "k": k, "q": q, "t": args.t,
                       "points": list(res.witness), "objective": res.objective}
            if args.out:
                write_certificate(make_certificate("transversal", payload), args.out)
    else:
        res = exact_ucn(H)
        witness = res.witness
        out = {"problem": "ucn", "objective": res.objective, "status": res.status,
               "nodes": res.nodes,
               "witness": list(witness.assignment) if witness is not None else None}
        if H.params is not None and res.status == "optimal" and args.out:
            n, k, q = H.params
            triv, _ = is_trivial_coloring(witness, H)
            payload = {"n": n, "k": k, "q": q,
                       "assignment": list(witness.assignment), "N": witness.N,
                       "trivial": bool(triv)}
            write_certificate(make_certificate("coloring", payload), args.out)
    _emit(out)
    return 0


def cmd_verify(args):
    rep = verify_tmodp_theorem(args.p, args.t, max_size=args.max_size, seed=args.seed)
    if args.out:
        write_certificate(make_certificate("tmodp_report", rep.to_json()), args.out)
    _emit({"p": rep.p, "t": rep.t, "max_size": rep.max_size,
           "kernel_dim": rep.kernel_dim,
           "num_solution_classes": rep.num_solution_classes,
           "num_found": rep.num_found, "num_unions": rep.num_unions,
           "exhaustive": rep.exhaustive, "verified": rep.verified,
           "violations": rep.violations})
    return 0 if rep.verified else 1


def cmd_bounds(args):
    rep = bounds_report(args.n, args.k, args.q, args.t)
    if args.out:
        payload = {"n": args.n, "k": args.k, "q": args.q, "t": args.t,
                   "report": rep.to_json()}
        write_certificate(make_certificate("bounds", payload), args.out)
    _emit(rep.to_json())
    return 0


def cmd_run(args):
    grid = default_grid()
    if args.config:
        with open(args.config) as fh:
            grid = json.load(fh)["grid"]
    config = ExperimentConfig(grid=grid, outdir=args.out, seed=args.seed)
    rows, ok = run_experiments(config)
    for row in rows:
        print(f"RESULT {row.instance} {row.quantity} value={row.value} "
              f"expected={row.expected} match={row.match}")
    return 0 if ok else 1


def cmd_recheck(args):
    try:
        cert = load_certificate(args.certificate)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"VERDICT false malformed: {exc}")
        return 1
    ok, detail = recheck(cert)
    print(f"VERDICT {'true' if ok else 'false'} {detail}")
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="pgws",
                                     description="Finite projective space workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("space", help="enumerate PG(n,q) and export hypergraphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--export-hypergraph", metavar="FILE")
    p.set_defaults(func=cmd_space)

    p = sub.add_parser("blocking", help="verify blocking-set claims for a weight file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--weights", required=True, help="JSON array of point weights")
    p.add_argument("--out", help="certificate output file")
    p.set_defaults(func=cmd_blocking)

    p = sub.add_parser("color", help="verify or analyze colorings")
    p.add_argument("--mode", choices=["verify", "trivialize", "analyze"], default="verify")
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--coloring", help="JSON coloring file (verify/analyze)")
    p.add_argument("--transversal", help="JSON point list (trivialize)")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("solve", help="exact tau / UCN")
    p.add_argument("problem", choices=["tau", "ucn"])
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--out", help="certificate output file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="theorem verification drivers")
    p.add_argument("target", choices=["tmodp"])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--max-size", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="certificate output file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="bound formulas and applicability flags")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--out", help="certificate output file")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("run", help="run an experiment grid")
    p.add_argument("--config", help="JSON file with a 'grid' list")
    p.add_argument("--out", default="certificates")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("recheck", help="re-verify a certificate without solving")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_recheck)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
