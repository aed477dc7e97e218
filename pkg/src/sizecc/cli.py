"""Command-line front end.

Every command writes JSON lines to stdout and a short human summary to
stderr.  Exit codes: 0 ok, 2 parse error, 3 validation error, 4 runtime
guard (iteration limit, oracle or search guard, broken guarantee).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .instance import INF, WeightedInstance, clustering_cost, validate_unweighted, validate_weighted
from .io import ParseError, read_instance
from .lp import build_lp
from .oracle import ORACLE_GUARD, OracleGuard, optimal_clustering
from .pivot import GuardExceeded, SignedGraph, cc_pivot, make_rng, removal_set
from .rounding import (AlphaDomainError, PivotOrder, c_alpha, mu_star, optimal_alpha,
                       round_solution)
from .simplex import SimplexConfig, SimplexError, solve

EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_GUARD = 4
GUARANTEE_SLACK = 1e-6


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _tau(tau: float):
    return "INF" if math.isinf(tau) else tau


def _emit(record: dict) -> None:
    print(json.dumps(record, sort_keys=True), flush=True)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load(path: str) -> WeightedInstance:
    try:
        return read_instance(path)
    except ParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_PARSE) from exc
    except ValueError as exc:
        raise CliError(f"{path}: {exc}", EXIT_VALIDATION) from exc


def _require_weighted(instance: WeightedInstance) -> None:
    report = validate_weighted(instance)
    if not report.ok:
        raise CliError("instance violates the weight assumptions: "
                       + "; ".join(map(str, report.violations[:5])), EXIT_VALIDATION)


def _digest(instance: WeightedInstance) -> dict:
    return {"n": instance.n, "K": instance.K, "tau": _tau(instance.tau),
            "mu_star": mu_star(instance) if instance.n >= 2 else 0.0}


def _solve(instance: WeightedInstance, args):
    cfg = SimplexConfig(eps_feas=args.eps) if args.eps else SimplexConfig()
    try:
        return solve(build_lp(instance), cfg)
    except SimplexError as exc:
        raise CliError(f"LP solver failed: {exc}", EXIT_GUARD) from exc


def cmd_solve_lp(args) -> None:
    instance = _load(args.instance)
    _require_weighted(instance)
    t0 = time.perf_counter()
    sol = _solve(instance, args)
    n = instance.n
    iu = np.triu_indices(n, 1)
    xe = sol.x[iu]
    _emit({"command": "solve-lp", "instance": _digest(instance),
           "lp_objective": sol.objective,
           "x_integral_fraction": float(np.mean(np.minimum(xe, 1 - xe) < 1e-9)) if n > 1 else 1.0,
           "y_total": float(sol.y.sum()),
           "x": {f"{u}_{v}": float(sol.x[u, v]) for u, v in zip(*iu)},
           "y": sol.y.tolist(),
           "wall_time": time.perf_counter() - t0})
    _say(f"LP objective {sol.objective:.10g} on n={n}")


def _parse_pivot(spec: str) -> PivotOrder:
    if spec == "lowest":
        return PivotOrder.lowest()
    if spec.startswith("seed:"):
        try:
            return PivotOrder.seeded(int(spec[5:]))
        except ValueError:
            pass
    raise CliError(f"--pivot must be 'lowest' or 'seed:N', got {spec!r}", EXIT_VALIDATION)


def cmd_round(args) -> None:
    instance = _load(args.instance)
    _require_weighted(instance)
    order = _parse_pivot(args.pivot)
    ms = mu_star(instance) if instance.n >= 2 else 0.0
    try:
        if args.alpha == "auto":
            alpha = optimal_alpha(instance.tau, ms).alpha
        else:
            try:
                alpha = float(args.alpha)
            except ValueError:
                raise CliError(f"--alpha must be 'auto' or a number, got {args.alpha!r}",
                               EXIT_VALIDATION) from None
        bound = c_alpha(instance.tau, ms, alpha)
    except AlphaDomainError as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from exc
    t0 = time.perf_counter()
    sol = _solve(instance, args)
    clustering = round_solution(instance, sol, alpha, order)
    cost = clustering_cost(instance, clustering)
    record = {"command": "round", "instance": _digest(instance),
              "algorithm": "region_rounding", "alpha": alpha, "pivot": order.describe(),
              "clusters": clustering.clusters, "cost": cost.as_dict(),
              "lp_objective": sol.objective, "c_alpha": bound,
              "wall_time": time.perf_counter() - t0}
    _emit(record)
    _say(f"{len(clustering.clusters)} clusters, cost {cost.total:.10g}, "
         f"LP {sol.objective:.10g}, c_alpha {bound:.6g}")
    if cost.total > bound * sol.objective + GUARANTEE_SLACK:
        raise CliError(f"guarantee violated: cost {cost.total} > {bound} * {sol.objective}",
                       EXIT_GUARD)


def cmd_pivot(args) -> None:
    instance = _load(args.instance)
    report = validate_unweighted(instance, require_unit_mu=args.bounded is not None)
    if not report.ok:
        raise CliError("pivot needs a +/- instance with mu = 1 when bounded: "
                       + "; ".join(map(str, report.violations[:5])), EXIT_VALIDATION)
    if args.trials <= 0:
        raise CliError("--trials must be positive", EXIT_VALIDATION)
    graph = SignedGraph.from_instance(instance)
    t0 = time.perf_counter()
    X = frozenset()
    if args.bounded is not None:
        if args.bounded < 0:
            raise CliError("--bounded must be nonnegative", EXIT_VALIDATION)
        try:
            X = removal_set(graph, args.bounded, args.removal)
        except GuardExceeded as exc:
            raise CliError(f"{exc}; use --removal greedy", EXIT_GUARD) from exc
        scored = instance.with_K(args.bounded)
    else:
        scored = instance.with_mu(0.0)
    H = graph.without(X)
    costs = []
    for i in range(args.trials):
        seed = args.seed + i
        clustering = cc_pivot(H, make_rng(seed))
        if args.bounded is not None and max(clustering.sizes()) > args.bounded + 1:
            raise CliError(f"trial {i}: cluster larger than K + 1", EXIT_GUARD)
        cost = clustering_cost(scored, clustering)
        costs.append(cost.total)
        if args.trials == 1 or args.per_trial:
            _emit({"command": "pivot", "trial": i, "seed": seed,
                   "clusters": clustering.clusters, "cost": cost.as_dict()})
    summary = {"command": "pivot", "summary": True, "instance": _digest(instance),
               "algorithm": "bounded_cc_pivot" if args.bounded is not None else "cc_pivot",
               "K": args.bounded, "removal": args.removal if args.bounded is not None else None,
               "removed_edges": sorted(map(list, X)), "seed": args.seed,
               "trials": args.trials, "mean_cost": float(np.mean(costs)),
               "max_cost": float(np.max(costs))}
    if args.with_opt:
        if instance.n > args.guard_n:
            raise CliError(f"n = {instance.n} exceeds --guard-n {args.guard_n}", EXIT_GUARD)
        opt = optimal_clustering(scored, hard_bound=args.bounded is not None,
                                 guard=args.guard_n).best_cost.total
        summary["opt"] = opt
        summary["mean_ratio"] = summary["mean_cost"] / opt if opt > 0 else None
    summary["wall_time"] = time.perf_counter() - t0
    _emit(summary)
    _say(f"{args.trials} trial(s): mean cost {summary['mean_cost']:.6g}, "
         f"max {summary['max_cost']:.6g}")


def table1_cells(grid_points: int = 20) -> list[dict]:
    """Approximation ratios at the special parameter values, plus bisected cells."""
    cells = []

    def add(row: str, tau: float, ms: float, closed_form=None):
        plan = optimal_alpha(tau, ms)
        column = "tau=1" if tau == 1.0 else "tau->inf" if math.isinf(tau) else "tau in [1,inf)"
        cell = {"row": row, "column": column, "tau": _tau(tau), "mu_star": ms,
                "alpha": plan.alpha, "ratio": plan.c_alpha, "starred": closed_form is None}
        if closed_form is not None:
            cell["closed_form"] = closed_form
        cells.append(cell)

    for tau in (1.0, 2.0, 4.0, INF):
        add("no size bound", tau, 0.0, 5.0 - (0.0 if math.isinf(tau) else 1.0 / tau))
    for k in range(1, grid_points + 1):
        ms = 2.0 * k / (grid_points + 1)
        add("soft size bound", INF, ms, 8 * ms / (-5 + math.sqrt(25 + 16 * ms)))
    for tau in (1.0, 2.0, 4.0):
        add("soft size bound", tau, 1.0)
    add("hard size bound", 1.0, 2.0, 6.0)
    add("hard size bound", INF, 2.0, 8 * 2.0 / (-5 + math.sqrt(57.0)))
    for tau in (2.0, 4.0):
        add("hard size bound", tau, 2.0)
    return cells


def cmd_table1(args) -> None:
    for cell in table1_cells():
        _emit({"command": "table1", **cell})
        _say(f"{cell['row']:>16}  tau={str(cell['tau']):>4}  mu*={cell['mu_star']:.4f}  "
             f"ratio={cell['ratio']:.6f}")


def cmd_oracle(args) -> None:
    instance = _load(args.instance)
    try:
        res = optimal_clustering(instance, hard_bound=args.hard, guard=args.guard_n)
    except OracleGuard as exc:
        raise CliError(str(exc), EXIT_GUARD) from exc
    _emit({"command": "oracle", "instance": _digest(instance), "hard_bound": args.hard,
           "clusters": res.best_clustering.clusters, "cost": res.best_cost.as_dict(),
           "partitions_examined": res.partitions_examined})
    _say(f"optimum {res.best_cost.total:.10g} over {res.partitions_examined} partitions")


def cmd_dump_lp(args) -> None:
    instance = _load(args.instance)
    _require_weighted(instance)
    sys.stdout.write(build_lp(instance).dump())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sizecc",
                                description="Correlation clustering with cluster-size bounds.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--eps", type=float, default=None, help="LP feasibility tolerance")
    p.add_argument("--guard-n", type=int, default=ORACLE_GUARD,
                   help="largest n for the exhaustive oracle (at your own risk)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve-lp", help="solve the LP relaxation")
    s.add_argument("instance")
    s.set_defaults(func=cmd_solve_lp)

    s = sub.add_parser("round", help="solve the LP and round it by region growing")
    s.add_argument("instance")
    s.add_argument("--alpha", default="auto", help="'auto' or a threshold in (0, 1/2]")
    s.add_argument("--pivot", default="lowest", help="'lowest' or 'seed:N'")
    s.set_defaults(func=cmd_round)

    s = sub.add_parser("pivot", help="random pivoting, optionally size-bounded")
    s.add_argument("instance")
    s.add_argument("--bounded", type=int, default=None, metavar="K")
    s.add_argument("--removal", choices=("exact", "greedy"), default="exact")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--per-trial", action="store_true", help="emit one line per trial")
    s.add_argument("--with-opt", action="store_true",
                   help="compare against the exhaustive optimum")
    s.set_defaults(func=cmd_pivot)

    s = sub.add_parser("table1", help="approximation ratios at special parameter values")
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("oracle", help="exhaustive optimum (small n only)")
    s.add_argument("instance")
    s.add_argument("--hard", action="store_true", help="forbid clusters above K + 1")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("dump-lp", help="print the LP one row per line")
    s.add_argument("instance")
    s.set_defaults(func=cmd_dump_lp)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        _say(f"error: {exc}")
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
