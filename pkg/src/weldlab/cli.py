"""weldlab command-line driver.

Subcommands: group {info,check}, bs {eval,orbit,partition,conjugacy,tiles},
mate {build,report,verify-poly}, surface {report,graph,zip},
corr {fibers,branches,tiling,recover}.  JSON goes to stdout with sorted keys;
--svg writes figures.  WELDLAB_TOL overrides the default tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bowen_series as bs
from . import correspondence as corr
from . import fuchsian
from . import mating_schema as ms
from . import render
from . import welding
from .errors import UsageError, WeldlabError

SCHEMA_VERSION = 1


def _tolerance():
    raw = os.environ.get("WELDLAB_TOL")
    if raw is None:
        return 1e-9
    try:
        tol = float(raw)
    except ValueError as exc:
        raise UsageError(f"WELDLAB_TOL={raw!r} is not a number") from exc
    if not (1e-14 <= tol <= 1e-3):
        raise UsageError(f"WELDLAB_TOL={tol} outside [1e-14, 1e-3]")
    return tol


def _emit(doc):
    doc = {"schema_version": SCHEMA_VERSION, **doc}
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2, allow_nan=False))
    sys.stdout.write("\n")


def _write_svg(path, scene):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render.render_svg(scene))


def _mobius_json(m):
    return [[m.a.real, m.a.imag], [m.b.real, m.b.imag],
            [m.c.real, m.c.imag], [m.d.real, m.d.imag]]


def _preset(args):
    case = {"I": fuchsian.CASE_I, "II": fuchsian.CASE_II}.get(args.case)
    if case is None:
        raise UsageError(f"unknown case {args.case!r}")
    return fuchsian.build_group(args.n, args.p, case)


def _load_schema_arg(path):
    if not os.path.exists(path):
        if path in ms.PAPER_EXAMPLES or path.startswith("5.6"):
            return ms.paper_example(path)
        raise UsageError(f"file not found: {path}")
    try:
        return ms.load_schema(path)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read schema {path}: {exc}") from exc


# -- group ------------------------------------------------------------------

def cmd_group_info(args):
    preset = _preset(args)
    sig = fuchsian.orbifold_signature(preset, extended=not args.plain)
    _emit({
        "group": preset.name,
        "n": preset.n, "p": preset.p, "case": preset.case,
        "signature": {"genus": sig.genus, "punctures": sig.punctures,
                      "cone_orders": list(sig.cone_orders)},
        "generators": {f"g{s}": _mobius_json(preset.first_sector[s - 1])
                       for s in range(1, preset.p + 1)},
        "rotation": _mobius_json(preset.rotation),
        "sigma": {str(s): preset.sigma[s] for s in preset.sigma},
    })
    return 0


def cmd_group_check(args):
    preset = _preset(args)
    pairing = fuchsian.side_pairing_check(preset)
    poincare = fuchsian.poincare_check(preset)
    _emit({
        "group": preset.name,
        "pairing_max_residual": pairing["max_residual"],
        "cycles": [{"vertices": c["vertices"],
                    "trace_sq_residual": c["trace_sq_residual"]}
                   for c in poincare["cycles"]],
        "rotation_order": poincare["rotation_order"],
        "ok": True,
    })
    return 0


# -- bs ---------------------------------------------------------------------

def _bsmap(args):
    preset = _preset(args)
    return bs.bowen_series_from_preset(preset, factor=args.factor)


def cmd_bs_eval(args):
    m = _bsmap(args)
    _emit({"map": m.name, "theta": args.theta,
           "image": bs.eval_circle(m, args.theta)})
    return 0


def cmd_bs_orbit(args):
    m = _bsmap(args)
    _emit({"map": m.name, "theta": args.theta, "steps": args.steps,
           "orbit": bs.circle_orbit(m, args.theta, args.steps)})
    return 0


def cmd_bs_partition(args):
    m = _bsmap(args)
    part = bs.markov_partition(m)
    _emit({
        "map": m.name,
        "degree": bs.circle_degree(m),
        "breakpoints": list(part.breakpoints),
        "transition": [list(r) for r in part.transition],
    })
    return 0


def cmd_bs_conjugacy(args):
    m = _bsmap(args)
    h = bs.ConjugacyH(m)
    val, rad = h.value(args.theta, args.depth)
    _emit({"map": m.name, "theta": args.theta, "depth": args.depth,
           "value": val, "radius": rad, "cuts": list(h.cuts)})
    return 0


def cmd_bs_tiles(args):
    if args.rank > bs.MAX_RANK:
        raise UsageError(f"--rank must be <= {bs.MAX_RANK}")
    m = _bsmap(args)
    levels = bs.tiles(m, args.rank)
    if args.svg:
        _write_svg(args.svg, render.tiles_scene(levels, factor=m.factor,
                                                n=m.preset.n))
    _emit({
        "map": m.name, "rank": args.rank,
        "counts": [len(lv) for lv in levels],
        "tiles": [[{"word": ["%d,%d" % rs for rs in t.word],
                    "vertices": [[v.real, v.imag] for v in t.vertices]}
                   for t in lv] for lv in levels],
    })
    return 0


# -- mate ---------------------------------------------------------------------

def _complex_json(bc):
    return {
        "faces": [[[[a, d] for (a, d) in cyc] for cyc in face] for face in bc.faces],
        "arcs": [{"index": a.index, "hole": a.hole, "side": a.side,
                  "piece": a.piece, "start": a.start, "end": a.end}
                 for a in bc.arcs],
        "involution": {str(a): b for a, b in bc.s_action.items()},
        "vertices": [{"kind": v["kind"], "incidences": [list(i) for i in v["incidences"]]}
                     for v in bc.vertices],
        "components": bc.components,
        "s_fixed_boundary_points": bc.s_fixed_boundary_points(),
        "order2_points": bc.order2_total(),
    }


def cmd_mate_build(args):
    slots, contact, poly = _load_schema_arg(args.schema)
    bc = ms.assemble(slots, contact)
    doc = {"schema": ms.schema_to_dict(slots, contact, poly),
           "complex": _complex_json(bc)}
    if args.svg:
        _write_svg(args.svg, render.hole_diagram_scene(bc))
    _emit(doc)
    return 0


def cmd_mate_report(args):
    slots, contact, poly = _load_schema_arg(args.schema)
    report = ms.validate_degrees(slots)
    _emit({"schema": ms.schema_to_dict(slots, contact, poly),
           "degrees": report})
    return 0


def cmd_mate_verify_poly(args):
    reg = ms.polynomial_registry()
    if args.name not in reg:
        raise UsageError(f"unknown polynomial {args.name!r}; "
                         f"known: {sorted(reg)}")
    rep = ms.verify_polynomial(reg[args.name])
    _emit(rep)
    return 0


# -- surface ---------------------------------------------------------------------

def _surface(args):
    slots, contact, poly = _load_schema_arg(args.schema)
    bc = ms.assemble(slots, contact)
    wc = welding.weld(bc)
    return bc, wc, welding.surface_report(wc)


def cmd_surface_report(args):
    bc, wc, sr = _surface(args)
    _emit({
        "components": [{
            "euler_characteristic": c.euler_characteristic,
            "genus": c.genus,
            "eta_invariant": c.eta_invariant,
            "fix_eta": c.fix_eta,
            "faces": [list(fc) for fc in c.faces],
        } for c in sr.components],
        "connected": sr.connected(),
        "welding_graph": {
            "vertices": [f"v{i}{'+' if s > 0 else '-'}"
                         for (i, s) in sr.welding_graph.vertices()],
            "edges": sorted([f"v{a}-", f"v{b}+"] for (a, b) in sr.welding_graph.edges),
            "components": len(sr.welding_graph.components()),
        },
        "zipped": list(sr.zipped),
    })
    return 0


def cmd_surface_graph(args):
    bc, wc, sr = _surface(args)
    if args.svg:
        _write_svg(args.svg, render.welding_graph_scene(sr.welding_graph))
    _emit({"edges": sorted([a, b] for (a, b) in sr.welding_graph.edges),
           "components": len(sr.welding_graph.components())})
    return 0


def cmd_surface_zip(args):
    slots, contact, poly = _load_schema_arg(args.schema)
    bc = ms.assemble(slots, contact)
    _emit({"zipped": welding.zipped_report(bc)})
    return 0


# -- corr ---------------------------------------------------------------------

def cmd_corr_fibers(args):
    m = corr.ModelMaps(args.n, args.p)
    pt = m.point(complex(args.w_re, args.w_im), args.j)
    fib = corr.fiber(m, pt)
    _emit({"n": args.n, "p": args.p,
           "point": {"w": [args.w_re, args.w_im], "j": args.j},
           "fiber": [{"w": [q.value(args.n).real, q.value(args.n).imag], "j": q.j}
                     for q in fib],
           "cardinality": len(fib)})
    return 0


def cmd_corr_branches(args):
    case = {"I": fuchsian.CASE_I, "II": fuchsian.CASE_II}[args.case]
    mt = corr.model_tiling_set(args.n, args.p, case)
    words, ident_ok = corr.branch_words(mt)
    _emit({"n": args.n, "p": args.p, "case": args.case,
           "branches": [str(w) for w in words],
           "count": len(words),
           "tau_generating_identity": ident_ok,
           "k_exponents": list(mt.k_exponents)})
    return 0


def cmd_corr_tiling(args):
    preset = _preset(args)
    if args.length > corr.MAX_WORD_LENGTH:
        raise UsageError(f"--len must be <= {corr.MAX_WORD_LENGTH}")
    rep = corr.group_tiling(preset, args.length)
    if args.svg:
        sc = render.polygon_scene(preset)
        sty = render.Style(stroke="#1f77b4", width=0.8)
        for tile in rep["tiles"]:
            g = tile["map"]
            for side in preset.polygon.sides:
                pts = [g(side.point_at(i / 16)) for i in range(17)]
                sc.add(render.Polyline(pts, sty))
        _write_svg(args.svg, sc)
    _emit({"group": preset.name, "length": args.length,
           "tiles": rep["count"], "overlaps": rep["overlaps"],
           "words": ["".join(t["word"]) if t["word"] else "1"
                     for t in rep["tiles"]]})
    return 0


def cmd_corr_recover(args):
    case = {"I": fuchsian.CASE_I, "II": fuchsian.CASE_II}[args.case]
    mt = corr.model_tiling_set(args.n, args.p, case)
    rep = corr.recover_representation(mt)
    _emit({
        "n": args.n, "p": args.p, "case": args.case,
        "generators": [{
            "side": g.j, "k": g.k, "word": str(g.word),
            "stabilizes_component_1": g.stabilizes_component_1,
            "order": g.order,
        } for g in rep["generators"]],
        "rotation_word": str(rep["rotation_word"]),
        "rotation_order": rep["rotation_order"],
    })
    return 0


# -- parser ---------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_group_args(p, factor=False):
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--case", default="I", choices=["I", "II"])
    if factor:
        p.add_argument("--factor", action="store_true")


def build_parser():
    top = _Parser(prog="weldlab", description=__doc__)
    sub = top.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("group").add_subparsers(dest="sub", required=True)
    gi = g.add_parser("info")
    _add_group_args(gi)
    gi.add_argument("--plain", action="store_true",
                    help="signature of D/Gamma instead of D/Gamma-hat")
    gi.set_defaults(fn=cmd_group_info)
    gc = g.add_parser("check")
    _add_group_args(gc)
    gc.set_defaults(fn=cmd_group_check)

    b = sub.add_parser("bs").add_subparsers(dest="sub", required=True)
    for name, fn, extra in [
        ("eval", cmd_bs_eval, [("--theta", float, True, None)]),
        ("orbit", cmd_bs_orbit, [("--theta", float, True, None),
                                 ("--steps", int, False, 10)]),
        ("partition", cmd_bs_partition, []),
        ("conjugacy", cmd_bs_conjugacy, [("--theta", float, True, None),
                                         ("--depth", int, False, 10)]),
        ("tiles", cmd_bs_tiles, [("--rank", int, False, 2)]),
    ]:
        sp = b.add_parser(name)
        _add_group_args(sp, factor=True)
        for flag, typ, req, dflt in extra:
            sp.add_argument(flag, type=typ, required=req, default=dflt)
        if name == "tiles":
            sp.add_argument("--svg")
        sp.set_defaults(fn=fn)

    m = sub.add_parser("mate").add_subparsers(dest="sub", required=True)
    mb = m.add_parser("build")
    mb.add_argument("schema")
    mb.add_argument("--svg")
    mb.set_defaults(fn=cmd_mate_build)
    mr = m.add_parser("report")
    mr.add_argument("schema")
    mr.set_defaults(fn=cmd_mate_report)
    mv = m.add_parser("verify-poly")
    mv.add_argument("name")
    mv.set_defaults(fn=cmd_mate_verify_poly)

    s = sub.add_parser("surface").add_subparsers(dest="sub", required=True)
    for name, fn, svg in [("report", cmd_surface_report, False),
                          ("graph", cmd_surface_graph, True),
                          ("zip", cmd_surface_zip, False)]:
        sp = s.add_parser(name)
        sp.add_argument("schema")
        if svg:
            sp.add_argument("--svg")
        sp.set_defaults(fn=fn)

    c = sub.add_parser("corr").add_subparsers(dest="sub", required=True)
    cf = c.add_parser("fibers")
    cf.add_argument("--n", type=int, required=True)
    cf.add_argument("--p", type=int, required=True)
    cf.add_argument("--w-re", type=float, default=0.5)
    cf.add_argument("--w-im", type=float, default=0.0)
    cf.add_argument("--j", type=int, default=1)
    cf.set_defaults(fn=cmd_corr_fibers)
    cb = c.add_parser("branches")
    _add_group_args(cb)
    cb.set_defaults(fn=cmd_corr_branches)
    ct = c.add_parser("tiling")
    _add_group_args(ct)
    ct.add_argument("--len", dest="length", type=int, default=4)
    ct.add_argument("--svg")
    ct.set_defaults(fn=cmd_corr_tiling)
    cr = c.add_parser("recover")
    _add_group_args(cr)
    cr.set_defaults(fn=cmd_corr_recover)
    return top


def main(argv=None) -> int:
    try:
        _tolerance()
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"weldlab: usage error: {exc}", file=sys.stderr)
        return 2
    except WeldlabError as exc:
        print(f"weldlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
