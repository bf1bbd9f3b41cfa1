"""Command-line front end: builds, verifications, experiments, exports.

Commands emit a single JSON report on stdout (or a DOT export with
--format dot where one exists) and optionally write both to --out DIR.
Reports are byte-identical across runs with the same config and seed:
all internal orderings are canonical and the only randomness is the
seeded chamber coloring of the rigidity command.

Exit codes: 0 when every check passed, 1 when some check failed,
2 on usage errors and exceeded budgets.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from .autoeng import (
    automorphism_order,
    automorphisms_fixing,
    is_isomorphic,
    panel_flip_check,
    verify_permutation,
)
from .errors import BudgetExceededError, CapExceededError
from .projmat import (
    cayley_ball,
    determinant,
    lsv_generators,
    projective_plane_orbit,
    symmetrize,
)
from .qlat import (
    color_automorphism_count,
    free_group_check,
    lift_coloring,
    quotient_graph,
    ray_flip,
)
from .scx import (
    InteriorMark,
    chamber_count,
    clique_complex,
    color_chambers,
    fano_incidence_graph,
    link,
    purity_report,
)

SCHEMA = "arithcx-report/1"

__all__ = ["main", "build_parser", "cmd_lsv", "cmd_tree", "cmd_rigidity_contrast"]


def _check(name: str, value, expected, ok: bool) -> dict:
    return {
        "name": name,
        "status": "pass" if ok else "fail",
        "value": value,
        "expected": expected,
    }


def _config(args: argparse.Namespace) -> dict:
    keys = ("radius", "fix_radius", "colors", "seed", "budget", "format", "out")
    return {k: getattr(args, k, None) for k in keys}


def _report(command: str, args: argparse.Namespace, checks: list, data: dict) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "config": _config(args),
        "checks": checks,
        "data": data,
    }


def _render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _lsv_ball_complex(args: argparse.Namespace):
    ball = cayley_ball(symmetrize(lsv_generators()), args.radius, args.budget)
    verts, edges = ball.graph()
    return ball, clique_complex(list(verts), edges, max_dim=3)


# ----------------------------------------------------------------------
# lsv


def cmd_lsv(args: argparse.Namespace) -> tuple[dict, str | None]:
    if args.subcmd == "ball":
        return _lsv_ball(args)
    return _lsv_verify(args)


def _lsv_verify(args: argparse.Namespace) -> tuple[dict, str | None]:
    r = args.radius
    gens = lsv_generators()
    sym = symmetrize(gens)
    ball, cx = _lsv_ball_complex(args)
    dets_ok = all(bool(determinant(m)) for m in gens.matrices)
    distinct = len({m.encode() for m in sym.matrices})
    checks = [
        _check("generator-count", len(gens), 7, len(gens) == 7),
        _check("determinants-nonzero", dets_ok, True, dets_ok),
        _check("symmetrized-distinct", distinct, 14, distinct == 14),
    ]
    orbit = projective_plane_orbit(sym)
    checks.append(_check("plane-orbit-sizes", orbit, [273], orbit == [273]))

    skipped = []
    if r >= 1:
        witness = is_isomorphic(link(cx, 0), fano_incidence_graph())
        checks.append(_check("link-heawood", witness is not None, True, witness is not None))
    else:
        skipped.append("link-heawood")

    data: dict = {
        "vertex_count": len(ball),
        "sphere_sizes": list(ball.sphere_sizes()),
        "edge_count": len(ball.edges),
        "triangle_count": cx.simplex_count(2),
        "generator_determinants": [str(determinant(m)) for m in gens.matrices],
        "collision": None
        if ball.collision is None
        else {
            "vertex": ball.collision.vertex,
            "word_a": list(ball.collision.word_a),
            "word_b": list(ball.collision.word_b),
        },
    }

    if r >= 2:
        marks = InteriorMark.from_distances(
            {i: d for i, d in enumerate(ball.dist)}, r
        )
        purity = purity_report(cx, marks)
        checks.append(
            _check(
                "interior-purity",
                {"pure": purity.pure, "dimension": purity.dimension},
                {"pure": True, "dimension": 2},
                purity.pure and purity.dimension == 2,
            )
        )
        thickness = sorted(
            {
                chamber_count(cx, e)
                for e in cx.simplices(1)
                if marks.simplex_interior(e)
            }
        )
        checks.append(_check("interior-thickness", thickness, [3], thickness == [3]))
        flips = panel_flip_check(cx, marks, hops=1)
        checks.append(
            _check("panel-flip-fraction", flips.fraction, 1.0, flips.fraction == 1.0)
        )
        data["panel_flips"] = {
            "edges_eligible": flips.edges_eligible,
            "edges_skipped": flips.edges_skipped,
            "choices_satisfied": flips.choices_satisfied,
        }
        data["interior_maximal_by_dim"] = {
            str(k): v for k, v in purity.interior_maximal_by_dim.items()
        }
    else:
        skipped += ["interior-purity", "interior-thickness", "panel-flip-fraction"]

    # checks that need an interior are omitted below this radius, which
    # counts as passing: there is nothing to test yet
    data["skipped_checks"] = skipped
    return _report("lsv-verify", args, checks, data), None


def _lsv_ball(args: argparse.Namespace) -> tuple[dict, str | None]:
    ball, cx = _lsv_ball_complex(args)
    data = {"ball": ball.to_json_dict(), "triangle_count": cx.simplex_count(2)}
    dot = ball.to_dot() if args.format == "dot" else None
    return _report("lsv-ball", args, [], data), dot


# ----------------------------------------------------------------------
# tree


def cmd_tree(args: argparse.Namespace) -> tuple[dict, str | None]:
    if args.subcmd == "quotient":
        return _tree_quotient(args)
    if args.subcmd == "flip":
        return _tree_flip(args)
    return _tree_experiment(args)


def _quotient_checks() -> list:
    qg = quotient_graph()
    degrees = [qg.degree(v) for v in qg.vertices]
    parallels = sorted(
        qg.parallel_count(u, v)
        for i, u in enumerate(qg.vertices)
        for v in qg.vertices[i + 1 :]
    )
    klein = automorphisms_fixing(
        qg.to_complex(), (), respect_colors=True, cap=1000
    ).order
    return [
        _check("quotient-vertices", len(qg.vertices), 4, len(qg.vertices) == 4),
        _check("quotient-edge-orbits", len(qg.edges), 12, len(qg.edges) == 12),
        _check("quotient-degrees", degrees, [6, 6, 6, 6], degrees == [6] * 4),
        _check(
            "quotient-parallel-pairs", parallels, [2] * 6, parallels == [2] * 6
        ),
        _check(
            "quotient-simple-is-k4",
            list(map(list, qg.simple_edges())),
            [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
            qg.simple_edges()
            == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)),
        ),
        _check("quotient-color-group-order", klein, 4, klein == 4),
    ]


def _flip_checks(ball, cx, s: int) -> tuple[list, dict]:
    v = next(i for i, d in enumerate(ball.dist) if d == s)
    flip = ray_flip(ball, v)
    fixes_inner = all(
        flip(i) == i for i in range(ball.vertex_count()) if ball.dist[i] <= s
    )
    verified = verify_permutation(cx, flip, respect_colors=True)
    checks = [
        _check("flip-nontrivial", not flip.is_identity(), True, not flip.is_identity()),
        _check(
            "flip-involution",
            flip.compose(flip).is_identity(),
            True,
            flip.compose(flip).is_identity(),
        ),
        _check("flip-fixes-inner-ball", fixes_inner, True, fixes_inner),
        _check("flip-color-preserving", verified, True, verified),
    ]
    data = {
        "witness_flip": flip.to_json_dict(),
        "flip_vertex": {
            "index": v,
            "word": list(ball.words[v]),
            "distance": ball.dist[v],
            "moved_vertices": len(flip.moved()),
        },
    }
    return checks, data


def _tree_experiment(args: argparse.Namespace) -> tuple[dict, str | None]:
    r, s = args.radius, args.fix_radius
    ball = lift_coloring(r, vertex_budget=args.budget)
    cx = ball.to_complex()

    limit = min(r, 7)
    counts = free_group_check(limit)
    expected_counts = {l: 6 * 5 ** (l - 1) for l in range(1, limit + 1)}
    checks = [
        _check(
            "free-group-counts",
            counts,
            expected_counts,
            counts == expected_counts,
        )
    ]
    checks += _quotient_checks()

    sweep = []
    for rr in range(s + 1, r + 1):
        c = color_automorphism_count(rr, s)
        sweep.append(c)
        checks.append(
            _check(
                f"count-r{rr}-s{s}-consistent",
                c.to_json_dict(),
                {"consistent": True},
                c.consistent,
            )
        )
        if (rr, s) == (2, 1):
            checks.append(_check("count-r2-s1", str(c.count), "4096", c.count == 4096))
    growing = all(a.count < b.count for a, b in zip(sweep, sweep[1:]))
    checks.append(
        _check(
            "count-strict-growth",
            [c.log2_count for c in sweep],
            "strictly increasing",
            growing,
        )
    )

    flip_checks, flip_data = _flip_checks(ball, cx, s)
    checks += flip_checks
    data = {
        "ball": {
            "radius": r,
            "vertex_count": ball.vertex_count(),
            "sphere_sizes": list(ball.sphere_sizes()),
        },
        "counts": [c.to_json_dict() for c in sweep],
        **flip_data,
    }
    dot = ball.to_dot() if args.format == "dot" else None
    return _report("tree-experiment", args, checks, data), dot


def _tree_quotient(args: argparse.Namespace) -> tuple[dict, str | None]:
    qg = quotient_graph()
    data = {
        "edges": [
            {
                "u": e.u,
                "v": e.v,
                "gen_from_u": e.gen_from_u,
                "gen_from_v": e.gen_from_v,
                "color": e.color,
            }
            for e in qg.edges
        ]
    }
    dot = qg.to_complex().to_dot() if args.format == "dot" else None
    return _report("tree-quotient", args, _quotient_checks(), data), dot


def _tree_flip(args: argparse.Namespace) -> tuple[dict, str | None]:
    r, s = args.radius, args.fix_radius
    ball = lift_coloring(r, vertex_budget=args.budget)
    cx = ball.to_complex()
    checks, data = _flip_checks(ball, cx, s)
    data["ball"] = {"radius": r, "vertex_count": ball.vertex_count()}
    dot = ball.to_dot() if args.format == "dot" else None
    return _report("tree-flip", args, checks, data), dot


# ----------------------------------------------------------------------
# rigidity contrast


def cmd_rigidity_contrast(args: argparse.Namespace) -> tuple[dict, str | None]:
    ball, cx = _lsv_ball_complex(args)
    center = 0
    data: dict = {
        "vertex_count": len(ball),
        "chamber_count": len(cx.chambers()),
        "center": center,
    }
    if args.colors == 1:
        grp = automorphism_order(cx, fixed=[center])
        order = grp.order
        checks = [
            _check(
                "color-group-nontrivial",
                str(order),
                ">= 2",
                order >= 2,
            )
        ]
        data["coloring"] = "constant"
    else:
        rng = random.Random(args.seed)
        assignment = {t: rng.randrange(args.colors) for t in cx.chambers()}
        colored = color_chambers(cx, assignment)
        sizes: dict[int, int] = {}
        for c in assignment.values():
            sizes[c] = sizes.get(c, 0) + 1
        grp = automorphisms_fixing(
            colored, [center], respect_colors=True, cap=args.budget
        )
        order = grp.order
        checks = [_check("color-group-order", order, 1, order == 1)]
        data["coloring"] = {"classes": {str(k): v for k, v in sorted(sizes.items())}}
    data["group_order"] = str(order)
    data["tree_growth"] = [
        color_automorphism_count(rr, 1, check=False).to_json_dict()
        for rr in (2, 3, 4)
    ]
    return _report("rigidity", args, checks, data), None


# ----------------------------------------------------------------------
# plumbing


def _add_common(
    p: argparse.ArgumentParser,
    *,
    radius: int | None = None,
    fix_radius: int | None = None,
    colors: bool = False,
    dot: bool = False,
) -> None:
    if radius is not None:
        p.add_argument(
            "--radius", "-r", "--r", dest="radius", type=int, default=radius,
            help=f"ball radius (default {radius})",
        )
    if fix_radius is not None:
        p.add_argument(
            "--fix-radius", "-s", "--s", dest="fix_radius", type=int,
            default=fix_radius,
            help=f"radius of the pointwise-fixed inner ball (default {fix_radius})",
        )
    if colors:
        p.add_argument(
            "--colors", type=int, default=2,
            help="number of chamber colors; 1 means the constant coloring (default 2)",
        )
        p.add_argument(
            "--seed", type=int, default=0,
            help="seed for the random chamber coloring (default 0)",
        )
    p.add_argument(
        "--budget", type=int, default=10**6,
        help="vertex and enumeration budget (default 1000000)",
    )
    p.add_argument(
        "--out", type=str, default=None, metavar="DIR",
        help="directory to write the report (and DOT export) into",
    )
    p.add_argument(
        "--format", choices=("json", "dot"), default="json",
        help="stdout format; dot is available for export commands",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arithcx",
        description="builds and experiments on arithmetic quotient complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    lsv = sub.add_parser("lsv", help="rank-two building ball commands")
    lsv_sub = lsv.add_subparsers(dest="subcmd", required=True)
    p = lsv_sub.add_parser("verify", help="build the ball and run all checks")
    _add_common(p, radius=2)
    p.set_defaults(handler=cmd_lsv, name="lsv-verify", has_dot=False)
    p = lsv_sub.add_parser("ball", help="export the Cayley ball")
    _add_common(p, radius=2, dot=True)
    p.set_defaults(handler=cmd_lsv, name="lsv-ball", has_dot=True)

    tree = sub.add_parser("tree", help="rank-one tree commands")
    tree_sub = tree.add_subparsers(dest="subcmd", required=True)
    p = tree_sub.add_parser("experiment", help="growth of color automorphisms")
    _add_common(p, radius=3, fix_radius=1, dot=True)
    p.set_defaults(handler=cmd_tree, name="tree-experiment", has_dot=True)
    p = tree_sub.add_parser("quotient", help="the Z/4Z quotient multigraph")
    _add_common(p, dot=True)
    p.set_defaults(handler=cmd_tree, name="tree-quotient", has_dot=True)
    p = tree_sub.add_parser("flip", help="an explicit subtree-swap witness")
    _add_common(p, radius=3, fix_radius=1, dot=True)
    p.set_defaults(handler=cmd_tree, name="tree-flip", has_dot=True)

    p = sub.add_parser(
        "rigidity", help="colored building ball vs the flexible tree"
    )
    _add_common(p, radius=2, colors=True)
    p.set_defaults(handler=cmd_rigidity_contrast, name="rigidity", has_dot=False)
    return parser


def _validate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    if getattr(args, "budget", 1) < 1:
        parser.error("--budget must be positive")
    if getattr(args, "radius", 0) < 0:
        parser.error("--radius must be nonnegative")
    if getattr(args, "colors", 1) < 1:
        parser.error("--colors must be at least 1")
    fix = getattr(args, "fix_radius", None)
    if fix is not None:
        if not 0 <= fix < args.radius:
            parser.error("--fix-radius must satisfy 0 <= s < r")
    if args.format == "dot" and not args.has_dot:
        parser.error(f"{args.name} has no DOT export")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    try:
        report, dot = args.handler(args)
    except (BudgetExceededError, CapExceededError) as exc:
        diagnostic = {
            "schema": SCHEMA,
            "command": args.name,
            "config": _config(args),
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        sys.stdout.write(_render(diagnostic))
        return 2
    text = _render(report)
    sys.stdout.write(dot if dot is not None else text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{args.name}.json").write_text(text)
        if dot is not None:
            (out / f"{args.name}.dot").write_text(dot)
    return 0 if all(c["status"] == "pass" for c in report["checks"]) else 1


if __name__ == "__main__":
    sys.exit(main())
