"""Command line entry point: ``nbisect {gen,refine,check,quality,info}``.

Exit codes: 0 success, 1 verification failure, 2 structural or parse error.
Set ``NBISECT_LOG`` to a logging level name (e.g. ``INFO``) for progress output.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from collections import Counter

from .bisect import MaubachSimplex, TreeSimplex
from .campaign import CampaignConfig, VerificationError, run_campaign
from .core import MeshError
from .io import read_mesh, write_mesh
from .meshgen import GridSpec, kuhn_mesh, random_simplex_mesh, regular_simplex_mesh, tagged_mesh
from .quality import CSV_HEADER, quality_stats
from .verify import is_reflected, non_conformal_boundary_faces

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def cmd_gen(args) -> int:
    if args.kind == "kuhn":
        mesh = kuhn_mesh(GridSpec(args.n, args.k, args.origin, args.extent))
    elif args.kind == "regular":
        mesh = regular_simplex_mesh(args.n, args.edge)
    else:
        mesh = random_simplex_mesh(args.n, args.seed, args.min_quality)
    if args.tag:
        mesh = tagged_mesh(mesh, args.tag)
    write_mesh(mesh, args.output)
    print(f"{args.kind}: {len(mesh.elements)} elements, {len(mesh.vertices)} vertices -> {args.output}")
    return EXIT_OK


def cmd_refine(args) -> int:
    cfg = CampaignConfig.from_file(args.config, args.set or ())
    result = run_campaign(cfg)
    if not cfg.csv:
        sys.stdout.write(result.csv())
    return EXIT_OK


def cmd_check(args) -> int:
    mesh = read_mesh(args.mesh)
    reference = read_mesh(args.against) if args.against else mesh
    ok = True
    bad = non_conformal_boundary_faces(mesh, reference)
    if bad:
        ok = False
        print(f"conformity: FAIL ({len(bad)} boundary faces off the reference boundary, e.g. {bad[0]})")
    else:
        print("conformity: ok")
    if args.reflected:
        refl = is_reflected(mesh)
        ok &= refl
        print(f"reflected: {'ok' if refl else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_quality(args) -> int:
    report = quality_stats(read_mesh(args.mesh))
    print(CSV_HEADER)
    print(report.csv_row())
    return EXIT_OK


def cmd_info(args) -> int:
    mesh = read_mesh(args.mesh)
    kinds = Counter(type(e).__name__ if not isinstance(e, tuple) else "plain" for e in mesh.elements)
    levels = Counter(e.level for e in mesh.elements if isinstance(e, (TreeSimplex, MaubachSimplex)))
    print(f"dimension: {mesh.n}")
    print(f"vertices: {len(mesh.vertices)}")
    print(f"elements: {len(mesh.elements)}")
    for kind, count in sorted(kinds.items()):
        print(f"  {kind}: {count}")
    if levels:
        print("levels: " + ", ".join(f"{lvl}:{c}" for lvl, c in sorted(levels.items())))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nbisect", description="n-dimensional marked bisection")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated mesh")
    g.add_argument("kind", choices=("kuhn", "regular", "random"))
    g.add_argument("-n", type=int, required=True, help="dimension")
    g.add_argument("-k", type=int, default=1, help="cells per axis (kuhn)")
    g.add_argument("--origin", type=float, default=0.0)
    g.add_argument("--extent", type=float, default=1.0)
    g.add_argument("--edge", type=float, default=1.0, help="edge length (regular)")
    g.add_argument("--seed", type=int, default=0, help="PCG64 seed (random)")
    g.add_argument("--min-quality", type=float, default=0.01)
    g.add_argument("--tag", type=int, default=0, help="store elements as Maubach simplices with this tag")
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("refine", help="run a refinement campaign from a config file")
    r.add_argument("config")
    r.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config entry")
    r.set_defaults(func=cmd_refine)

    c = sub.add_parser("check", help="verify conformity (and reflectivity)")
    c.add_argument("mesh")
    c.add_argument("--against", help="conformal mesh the input was refined from (ids must descend from it)")
    c.add_argument("--reflected", action="store_true")
    c.set_defaults(func=cmd_check)

    q = sub.add_parser("quality", help="min/max shape quality as CSV")
    q.add_argument("mesh")
    q.set_defaults(func=cmd_quality)

    i = sub.add_parser("info", help="mesh summary")
    i.add_argument("mesh")
    i.set_defaults(func=cmd_info)
    return p


def main(argv=None) -> int:
    level = os.environ.get("NBISECT_LOG")
    if level:
        logging.basicConfig(level=level.upper(), format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (MeshError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
