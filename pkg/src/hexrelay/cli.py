"""Command-line front end.

Commands: ``generate`` a scenario file, ``place`` relays with a chosen
algorithm, ``sweep`` cluster counts into a CSV of costs and robustness, and
``render`` a placement to SVG.  All outputs embed the tool version, the
resolved configuration, and every seed used, so a rerun with the same
arguments reproduces them (the CSV ``runtime_ms`` column is the one wall-
clock measurement and the only field that may differ between reruns).

Exit codes: 0 success, 2 configuration error, 3 search budget exceeded,
4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .baselines import DEFAULT_BUDGET, dyn_smt, exhaustive_search, sta_smt, smt_in_hcs
from .errors import BudgetExceededError, ConfigError, InternalInvariantError
from .experiments import (
    robustness_factor,
    scenario_seed,
    survival_trials,
)
from .placement import Placement, run_egdo, run_gdo
from .render import render_svg
from .scenario import (
    Scenario,
    generate_scenario,
    read_scenario,
    scale_for_big_radius,
    write_scenario,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4

ALGORITHMS = {
    "egdo": run_egdo,
    "gdo": run_gdo,
    "stasmt": sta_smt,
    "dynsmt": dyn_smt,
    "smt-hcs": smt_in_hcs,
}

CSV_COLUMNS = "scenario_id,clusters,algorithm,eta,runtime_ms,mode,trials,pr,rf"


def _meta(command: str, config: dict) -> dict:
    return {"tool": "hexrelay", "version": __version__, "command": command, "config": config}


def _resolve_scale(args) -> int:
    if args.n is not None and args.big_radius is not None:
        raise ConfigError("give either --n or --big-radius, not both")
    if args.n is not None:
        if args.n < 0:
            raise ConfigError("--n must be a non-negative integer")
        return args.n
    if args.big_radius is not None:
        return scale_for_big_radius(args.big_radius, args.r)
    raise ConfigError("one of --n or --big-radius is required")


def cmd_generate(args) -> int:
    n = _resolve_scale(args)
    sc = generate_scenario(args.field[0], args.field[1], args.r, n, args.clusters, args.seed)
    config = {
        "field_m": list(args.field),
        "r_m": args.r,
        "n": n,
        "clusters": args.clusters,
        "seed": args.seed,
    }
    write_scenario(args.out, sc, meta=_meta("generate", config))
    print(f"generate: wrote {args.out} ({args.clusters} clusters, n={n})")
    return EXIT_OK


def _write_placement(path: str, placement: Placement, meta: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(placement.to_json_dict(meta), fh, indent=1)
        fh.write("\n")


def cmd_place(args) -> int:
    sc = read_scenario(args.scenario)
    config = {
        "algorithm": args.algorithm,
        "scenario": args.scenario,
        "seed": sc.seed,
        "budget": args.budget,
        "prune_hull": args.prune_hull,
    }
    if args.algorithm == "exhaustive":
        try:
            placement = exhaustive_search(sc, pruning=args.prune_hull, budget=args.budget)
        except BudgetExceededError as exc:
            # keep a partial log so the failed run is still inspectable
            with open(args.out + ".log", "w", encoding="utf-8") as fh:
                json.dump(
                    {
                        "meta": _meta("place", config),
                        "status": "budget-exceeded",
                        "kappa": exc.kappa,
                        "combos_tested": exc.combos_tested,
                    },
                    fh,
                    indent=1,
                )
            print(f"place: budget exceeded at kappa={exc.kappa}", file=sys.stderr)
            return EXIT_BUDGET
    elif args.algorithm in ALGORITHMS:
        placement = ALGORITHMS[args.algorithm](sc)
    else:
        raise ConfigError(f"unknown algorithm {args.algorithm!r}")
    _write_placement(args.out, placement, _meta("place", config))
    print(
        f"place: algorithm={placement.algorithm} eta={placement.eta} "
        f"iterations={placement.iterations} nodes={len(placement.nodes)} "
        f"wall_ms={placement.wall_time_s * 1e3:.2f} out={args.out}"
    )
    return EXIT_OK


def cmd_sweep(args) -> int:
    n = _resolve_scale(args)
    lo, hi, step = args.counts
    if lo < 1 or step < 1 or hi < lo:
        raise ConfigError("--counts must satisfy 1 <= LO <= HI and STEP >= 1")
    counts = list(range(lo, hi + 1, step))
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {a!r} in --algorithms")
    config = {
        "field_m": list(args.field),
        "r_m": args.r,
        "n": n,
        "counts": counts,
        "scenarios": args.scenarios,
        "trials": args.trials,
        "mode": args.mode,
        "seed": args.seed,
        "algorithms": algorithms,
    }
    lines = [
        f"# hexrelay v{__version__}",
        f"# config: {json.dumps(config, sort_keys=True)}",
        CSV_COLUMNS,
    ]
    for count in counts:
        for idx in range(args.scenarios):
            seed = scenario_seed(args.seed, count, idx)
            sc = generate_scenario(args.field[0], args.field[1], args.r, n, count, seed)
            placements = {a: ALGORITHMS[a](sc) for a in algorithms}
            prs = {}
            if args.trials > 0:
                for a, pl in placements.items():
                    prs[a] = float(
                        survival_trials(pl, args.mode, args.trials, seed).mean()
                    )
            for a in algorithms:
                pl = placements[a]
                pr = f"{prs[a]:.6f}" if a in prs else ""
                rf = ""
                if a == "egdo" and "stasmt" in placements and args.trials > 0:
                    report = robustness_factor(
                        placements["egdo"], placements["stasmt"], args.mode,
                        args.trials, seed,
                    )
                    rf = "" if report.rf is None else f"{report.rf:.6f}"
                lines.append(
                    f"{seed},{count},{a},{pl.eta},{pl.wall_time_s * 1e3:.3f},"
                    f"{args.mode},{args.trials},{pr},{rf}"
                )
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"sweep: wrote {len(lines) - 3} rows to {args.out}")
    return EXIT_OK


def cmd_render(args) -> int:
    with open(args.placement, encoding="utf-8") as fh:
        doc = json.load(fh)
    placement = _placement_from_json(doc)
    svg = render_svg(placement, draw_cells=not args.no_cells)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"render: wrote {args.out}")
    return EXIT_OK


def _placement_from_json(doc: dict) -> Placement:
    from .hcs import HcsFrame, HexCoord
    from .mst import NodeRecord

    try:
        frame = HcsFrame(
            (doc["frame"]["origin_m"][0], doc["frame"]["origin_m"][1]),
            doc["frame"]["r_m"],
            doc["frame"]["n"],
        )
        nodes = [
            NodeRecord(
                nd["id"], nd["kind"], HexCoord(*nd["hex"]), (nd["cart_m"][0], nd["cart_m"][1])
            )
            for nd in doc["nodes"]
        ]
        edges = [(u, v) for u, v in doc["edges"]]
        return Placement(
            algorithm=doc["algorithm"],
            frame=frame,
            nodes=nodes,
            edges=edges,
            eta=doc["eta"],
            iterations=doc["iterations"],
            wall_time_s=0.0,
            tree=None,
        )
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed placement document: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hexrelay", description="Hexagonal-lattice relay placement toolkit"
    )
    parser.add_argument("--version", action="version", version=f"hexrelay {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_geometry(p):
        p.add_argument("--field", nargs=2, type=float, metavar=("W", "H"), required=True,
                       help="field size in meters")
        p.add_argument("--r", type=float, required=True, help="cell edge (SN radius), meters")
        p.add_argument("--n", type=int, default=None, help="coverage scale (edge = (12n+7)r)")
        p.add_argument("--big-radius", type=float, default=None,
                       help="coverage hexagon edge in meters; must equal (12n+7)r")

    g = sub.add_parser("generate", help="write a random scenario file")
    add_geometry(g)
    g.add_argument("--clusters", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    p = sub.add_parser("place", help="run a placement algorithm on a scenario")
    p.add_argument("--algorithm", required=True,
                   choices=sorted(ALGORITHMS) + ["exhaustive"])
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="combination budget for exhaustive search")
    p.add_argument("--prune-hull", action="store_true",
                   help="restrict exhaustive candidates to the dilated cluster hull")
    p.set_defaults(func=cmd_place)

    s = sub.add_parser("sweep", help="sweep cluster counts into a CSV")
    add_geometry(s)
    s.add_argument("--counts", nargs=3, type=int, metavar=("LO", "HI", "STEP"), required=True)
    s.add_argument("--scenarios", type=int, default=10, help="scenarios per count")
    s.add_argument("--trials", type=int, default=0, help="perturbation trials per scenario")
    s.add_argument("--mode", choices=["partial", "global"], default="partial")
    s.add_argument("--seed", type=int, default=0, help="master seed")
    s.add_argument("--algorithms", default="egdo,stasmt",
                   help="comma-separated algorithm list")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("render", help="draw a placement file as SVG")
    r.add_argument("--placement", required=True)
    r.add_argument("--out", required=True)
    r.add_argument("--no-cells", action="store_true", help="skip the cell lattice")
    r.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
