"""Command line front end.

Subcommands: gen, prim, theta, verify, times, render, pipeline. Every run
can be reproduced from the config embedded in (or sidecarred next to) its
outputs. Exit codes: 0 success, 1 verification below threshold, 2 usage
error, 3 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

import numpy as np

from . import dynamics, percolation, render, spanning
from .generators import GenSpec
from .graph import load_graph, save_graph

DEFAULT_THRESHOLD = 0.9


def _float_list(raw: str):
    return [float(x) for x in raw.split(",") if x.strip()]


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--family",
        choices=["grid", "triangular", "random-regular", "erdos-renyi", "union"],
        default="random-regular",
    )
    p.add_argument("--side", type=int, default=0, help="lattice side length")
    p.add_argument("--boundary", choices=["torus", "open"], default="torus")
    p.add_argument("--n", type=int, default=0, help="vertex count")
    p.add_argument("--d", type=int, default=3, help="degree for random-regular")
    p.add_argument(
        "--lambda", dest="lam", type=float, default=0.0, help="mean degree"
    )
    p.add_argument(
        "--union-family",
        choices=["grid", "triangular", "random-regular", "erdos-renyi"],
        default="random-regular",
        help="family of both halves of a union graph",
    )
    p.add_argument("--bridges", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)


def build_spec(args) -> GenSpec:
    fam = args.family
    if fam == "union":
        child = GenSpec(
            family=args.union_family,
            side=args.side,
            boundary=args.boundary,
            n=args.n,
            d=args.d,
            lam=args.lam,
        )
        return GenSpec(
            family="union",
            child_a=child,
            child_b=child,
            bridges=args.bridges,
            seed=args.seed,
        ).with_seed(args.seed)
    return GenSpec(
        family=fam,
        seed=args.seed,
        side=args.side,
        boundary=args.boundary,
        n=args.n,
        d=args.d,
        lam=args.lam,
    )


def _config_dict(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    return cfg


def cmd_gen(args) -> int:
    g = build_spec(args).generate()
    save_graph(g, args.out)
    render.write_sidecar(args.out, _config_dict(args))
    print(f"wrote {args.out}: n={g.n} m={g.m}")
    return 0


def _obtain_graph(args):
    if getattr(args, "graph", None):
        return load_graph(args.graph)
    return build_spec(args).generate()


def cmd_prim(args) -> int:
    g = _obtain_graph(args)
    trace = spanning.prim_trace(g, g.root if g.root is not None else 0)
    spanning.save_trace(trace, args.out)
    render.write_sidecar(args.out, _config_dict(args))
    print(f"wrote {args.out}: {trace.num_steps} steps, complete={trace.complete}")
    return 0


def cmd_theta(args) -> int:
    spec = build_spec(args)
    p_list = _float_list(args.p_list) if args.p_list else None
    profile = percolation.empirical_theta(spec, p_list=p_list, trials=args.trials)
    profile.to_csv(args.out)
    render.write_sidecar(args.out, _config_dict(args))
    print(f"wrote {args.out}: p_c estimate {profile.p_c_estimate:.4g}")
    return 0


def cmd_verify(args) -> int:
    spec = build_spec(args)
    if args.mode == "marginal":
        t_list = _float_list(args.t) if args.t else [0.5]
        report = dynamics.verify_marginals(
            spec, t_list, args.r, args.trials, args.alpha
        )
        worst = min(report["success"])
    elif args.mode == "exact":
        frac = dynamics.verify_exact_step(spec, args.p, args.r, args.trials)
        report = {"mode": "exact", "p": args.p, "r": args.r, "success": frac}
        worst = frac
    elif args.mode == "process":
        t_list = _float_list(args.t) if args.t else [0.0, 0.5, 1.0]
        deltas = _float_list(args.delta) if args.delta else [0.0, 0.01]
        report = dynamics.verify_process_conditions(
            spec, t_list, args.r, deltas, args.trials, args.alpha
        )
        worst = report["joint_success"]
    else:
        frac = dynamics.two_phase_check(spec, args.r, args.trials, args.alpha)
        report = {"mode": "two-phase", "r": args.r, "success": frac}
        worst = frac
    report["config"] = _config_dict(args)
    with open(args.out, "w") as f:
        json.dump(report, f, indent=2, sort_keys=True)
        f.write("\n")
    print(f"wrote {args.out}: worst success {worst:.3f}")
    return 0 if worst >= args.threshold else 1


def cmd_times(args) -> int:
    spec = build_spec(args)
    g = _obtain_graph(args)
    trace = spanning.prim_trace(g, g.root if g.root is not None else 0)
    mst = spanning.kruskal_mst(g)
    profile = percolation.empirical_theta(spec, trials=args.profile_trials)
    report = dynamics.times_report(g, trace, mst, profile, args.r, args.alpha)
    report.to_csv(args.out)
    render.write_sidecar(args.out, _config_dict(args))
    print(
        f"wrote {args.out}: completion {report.completion:.4g}, "
        f"prediction {report.prediction:.4g}"
    )
    return 0


def cmd_render(args) -> int:
    if args.family not in ("grid", "triangular"):
        raise SystemExit2("render requires a lattice family (grid or triangular)")
    g = _obtain_graph(args)
    side = args.side
    trace = spanning.prim_trace(g, g.root if g.root is not None else 0)
    fractions = _float_list(args.fractions) if args.fractions else [1.0]
    crop = None
    if args.crop:
        crop = [int(x) for x in args.crop.split(",")]
    outputs = []
    for i, frac in enumerate(fractions):
        path = args.out if len(fractions) == 1 else f"{args.out}.{i}.ppm"
        info = render.render_ppm(trace, side, path, fraction=frac, crop=crop)
        cfg = _config_dict(args)
        cfg["render"] = info
        render.write_sidecar(path, cfg)
        outputs.append(path)
    print("wrote " + " ".join(outputs))
    return 0


class SystemExit2(Exception):
    """Usage error discovered after argparse (maps to exit code 2)."""


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def cmd_pipeline(args) -> int:
    stages = [s.strip() for s in args.stages.split(",") if s.strip()]
    known = {"gen", "prim", "theta", "verify", "times", "render"}
    bad = [s for s in stages if s not in known]
    if bad:
        raise SystemExit2(f"unknown pipeline stages: {', '.join(bad)}")
    manifest = {"config": _config_dict(args), "outputs": []}
    prefix = args.out
    status = 0

    def record(stage, path, start):
        manifest["outputs"].append(
            {
                "stage": stage,
                "path": path,
                "sha256": _sha256(path),
                "seconds": round(time.time() - start, 3),
            }
        )

    ns = argparse.Namespace(**vars(args))
    ns.graph = None
    try:
        for stage in stages:
            start = time.time()
            if stage == "gen":
                ns.out = f"{prefix}.graph"
                cmd_gen(ns)
                ns.graph = ns.out
            elif stage == "prim":
                ns.out = f"{prefix}.trace"
                cmd_prim(ns)
            elif stage == "theta":
                ns.out = f"{prefix}.theta.csv"
                cmd_theta(ns)
            elif stage == "verify":
                ns.out = f"{prefix}.verify.json"
                status = max(status, cmd_verify(ns))
            elif stage == "times":
                ns.out = f"{prefix}.times.csv"
                cmd_times(ns)
            elif stage == "render":
                ns.out = f"{prefix}.ppm"
                cmd_render(ns)
                if args.fractions and len(_float_list(args.fractions)) > 1:
                    for i in range(len(_float_list(args.fractions))):
                        record("render", f"{prefix}.ppm.{i}.ppm", start)
                    continue
            record(stage, ns.out, start)
    except Exception as exc:
        manifest["failed_stage"] = stage
        manifest["error"] = str(exc)
        with open(f"{prefix}.manifest.json", "w") as f:
            json.dump(manifest, f, indent=2, sort_keys=True)
            f.write("\n")
        raise
    with open(f"{prefix}.manifest.json", "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    print(f"wrote {prefix}.manifest.json ({len(manifest['outputs'])} outputs)")
    return status


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="primlocal",
        description="Prim traces, percolation curves, and local verification",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, graph_input=False):
        _add_family_args(p)
        p.add_argument("--out", required=True)
        if graph_input:
            p.add_argument("--graph", default=None, help="read this graph file")

    p = sub.add_parser("gen", help="generate a weighted graph file")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("prim", help="run Prim and write the trace")
    common(p, graph_input=True)
    p.set_defaults(func=cmd_prim)

    p = sub.add_parser("theta", help="estimate the survival curve")
    common(p)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--p-list", default=None, help="comma separated levels")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("verify", help="run a verification experiment")
    common(p)
    p.add_argument(
        "--mode",
        choices=["marginal", "exact", "process", "two-phase"],
        default="marginal",
    )
    p.add_argument("--t", default=None, help="comma separated time points")
    p.add_argument("--p", type=float, default=0.7)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--alpha", type=float, default=spanning.DEFAULT_ALPHA)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--delta", default=None, help="comma separated deltas")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("times", help="addition and completion times")
    common(p, graph_input=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--alpha", type=float, default=spanning.DEFAULT_ALPHA)
    p.add_argument("--profile-trials", type=int, default=10)
    p.set_defaults(func=cmd_times)

    p = sub.add_parser("render", help="render a lattice trace to PPM")
    common(p, graph_input=True)
    p.add_argument("--fractions", default=None, help="comma separated fractions")
    p.add_argument("--crop", default=None, help="x0,y0,width,height")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("pipeline", help="run several stages with a manifest")
    common(p)
    p.add_argument("--stages", default="gen,prim,render")
    p.add_argument(
        "--mode",
        choices=["marginal", "exact", "process", "two-phase"],
        default="marginal",
    )
    p.add_argument("--t", default=None)
    p.add_argument("--p", type=float, default=0.7)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--alpha", type=float, default=spanning.DEFAULT_ALPHA)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--delta", default=None)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--p-list", default=None)
    p.add_argument("--profile-trials", type=int, default=10)
    p.add_argument("--fractions", default=None)
    p.add_argument("--crop", default=None)
    p.set_defaults(func=cmd_pipeline)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
