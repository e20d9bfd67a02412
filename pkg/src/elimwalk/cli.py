"""Command line entry point: ``elimwalk <command> <file> ...``.

Exit codes: 0 success, 2 parse error, 3 precondition violation, 4 dimension guard.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .cone import ConePreconditionError
from .fan import (
    DimensionGuardError,
    check_star_shaped,
    cross_validate,
    enumerate_fan,
    ev_region,
    section_polygons,
)
from .groebner import (
    NotIdealSpecificError,
    NotReducedError,
    ZeroIdealError,
    is_ideal_specific_eo,
    lead_x,
    reduced_gb,
)
from .order import parse_order
from .parser import ParseError, ProblemFile, parse_problem
from .walk import WalkPreconditionError, eliminate_walk

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_DIMENSION = 0, 2, 3, 4


def _load(path: str) -> ProblemFile:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_problem(text)


def _order(spec: str, ctx):
    try:
        return parse_order(spec, ctx)
    except ValueError as e:
        raise ParseError(f"--order: {e}") from None


def _weight(prob: ProblemFile, name: str):
    if name not in prob.weights:
        known = ", ".join(prob.weights) or "none"
        raise ParseError(f"no weight named {name!r} (defined: {known})")
    return prob.weights[name]


def _dump(record, dest: str | None):
    text = json.dumps(record, indent=2, sort_keys=True) + "\n"
    if dest in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text)


def cmd_gb(args) -> int:
    prob = _load(args.file)
    order = _order(args.order, prob.context)
    G = reduced_gb(prob.polys, order)
    if args.json:
        _dump({"format": 1, "order": order.to_text(prob.context), "gb": G.texts()}, None)
    else:
        for line in G.texts():
            print(line)
    return EXIT_OK


def cmd_eliminate(args) -> int:
    prob = _load(args.file)
    ctx = prob.context
    sigma, tau = _weight(prob, args.sigma), _weight(prob, args.tau)
    elim, trace = eliminate_walk(prob.polys, ctx, sigma, tau, mode=args.mode)
    order = trace.final.gb.order
    print("{" + ", ".join(g.to_text(order) for g in elim) + "}")
    print(f"conversions: {trace.conversions}; stop: {trace.stop_reason.value}", file=sys.stderr)
    if args.trace_json:
        rec = trace.to_record(ctx)
        rec["elimination_basis"] = [g.to_text(order) for g in elim]
        _dump(rec, args.trace_json)
    return EXIT_OK


def _fan_record(fan, ctx) -> dict:
    labels = fan.labels()
    ev = {c.key for c in ev_region(fan, ctx)}
    cells = []
    for cell in sorted(fan, key=lambda c: labels[c.key]):
        rec = cell.cone.to_record()
        rec.update(
            label=labels[cell.key],
            gb=cell.gb.texts(),
            order=cell.gb.order.to_text(ctx),
            ieo=cell.key in ev,
        )
        cells.append(rec)
    return {
        "format": 1,
        "variables": {"x": list(ctx.x_vars), "u": list(ctx.u_vars)},
        "cells": cells,
        "ev_region": sorted(labels[k] for k in ev),
    }


def cmd_fan(args) -> int:
    prob = _load(args.file)
    ctx = prob.context
    fan = enumerate_fan(prob.polys)
    rec = _fan_record(fan, ctx)
    for c in rec["cells"]:
        tag = "EV" if c["ieo"] else "--"
        rays = " ".join("(" + ",".join(str(v) for v in r) + ")" for r in c["rays"])
        print(f"{c['label']} {tag} {c['boundary_class']:<22} rays {rays}")
        print("    {" + ", ".join(c["gb"]) + "}")
    print(f"{len(fan)} cells; ev_region = {{{', '.join(rec['ev_region'])}}}")
    if args.grid_check:
        steps = tuple(args.grid_steps)
        cc = cross_validate(prob.polys, fan, steps=steps)
        rec["grid_check"] = {"agree": cc.agree, "grid_cells": cc.grid_cells, "steps": cc.steps}
        print(f"grid check (steps {cc.steps}): {'agree' if cc.agree else 'DISAGREE'}")
        if not cc.agree:
            if args.json:
                _dump(rec, args.json)
            return 1
    if args.json:
        _dump(rec, args.json)
    if args.section_csv:
        with open(args.section_csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["cell", "vertex"] + list(ctx.names))
            for label, verts in section_polygons(fan):
                for i, v in enumerate(verts):
                    w.writerow([label, i] + [str(c) for c in v])
    return EXIT_OK


def cmd_check_ieo(args) -> int:
    prob = _load(args.file)
    ctx = prob.context
    order = _order(args.order, ctx)
    G = reduced_gb(prob.polys, order)
    ok = is_ideal_specific_eo(G, ctx)
    lx = sorted(lead_x(G.polys, order, ctx), key=lambda g: g.to_text(order))
    if args.json:
        _dump({"format": 1, "ieo": ok, "lead_x": [g.to_text(order) for g in lx], "gb": G.texts()}, None)
    else:
        print("true" if ok else "false")
        for g in lx:
            print(f"  {g.to_text(order)}")
    return EXIT_OK


def cmd_star_check(args) -> int:
    prob = _load(args.file)
    fan = enumerate_fan(prob.polys)
    rep = check_star_shaped(
        fan, n_samples=args.samples, seed=args.seed, points_per_segment=args.points_per_segment
    )
    if args.json:
        _dump(rep.to_record(prob.context), None)
    else:
        print(f"samples {rep.samples_tested}; points {rep.points_tested}; violations {len(rep.violations)}")
        print("passed" if rep.passed else "FAILED")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elimwalk", description="Elimination by Groebner walks over Q.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gb", help="reduced Groebner basis")
    g.add_argument("file")
    g.add_argument("--order", default="lex", help='"lex", "elim" or "rows=[[...]];tiebreak=a>b"')
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_gb)

    e = sub.add_parser("eliminate", help="walk from sigma towards tau and eliminate U")
    e.add_argument("file")
    e.add_argument("--sigma", required=True, help="name of a weight in the file")
    e.add_argument("--tau", required=True, help="name of a weight in the file")
    e.add_argument("--mode", choices=["improved", "tran"], default="improved")
    e.add_argument("--trace-json", metavar="OUT")
    e.set_defaults(func=cmd_eliminate)

    f = sub.add_parser("fan", help="enumerate the Groebner fan")
    f.add_argument("file")
    f.add_argument("--json", metavar="OUT")
    f.add_argument("--section-csv", metavar="OUT")
    f.add_argument("--grid-check", action="store_true", help="cross-check against the simplex grid")
    f.add_argument("--grid-steps", type=int, nargs="+", default=[16, 32, 64])
    f.set_defaults(func=cmd_fan)

    c = sub.add_parser("check-ieo", help="is the order an elimination order for this ideal?")
    c.add_argument("file")
    c.add_argument("--order", required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check_ieo)

    s = sub.add_parser("star-check", help="sample the star-shapedness of the elimination region")
    s.add_argument("file")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--points-per-segment", type=int, default=4)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_star_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionGuardError as e:
        print(f"dimension guard: {e}", file=sys.stderr)
        return EXIT_DIMENSION
    except (
        WalkPreconditionError,
        ConePreconditionError,
        NotIdealSpecificError,
        NotReducedError,
        ZeroIdealError,
    ) as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
