"""Command-line entry point.

Every command prints exact values; floating approximations appear only
with --approx and are labelled.  Exit status is 0 on success, 1 on a domain
error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .descartes import place_quad
from .errors import GasketError
from .ford import FriendlyTriplet, farey_sequence, ford_circle, friendly_triplets
from .gasket import enumerate_gasket, stats, verify
from .geometry import X_AXIS, circle_to_json, signed_curvature
from .kaleido import symmetric_orbit, symmetric_partner
from .mobius import apply_circle
from .numerics import format_fraction, parse_fraction
from .pythagoras import (
    PythTriplet,
    apply_hword,
    curvatures_to_lorentz,
    ford_to_pythagorean,
    lorentz_orderings,
    tree_enumerate,
)
from .render import RenderSpec, render_svg
from .schema import (
    SCHEMAS,
    gasket_to_json,
    hierarchy_to_json,
    mirror_to_json,
    symmetric_to_json,
)
from .selfsim import boundary_map, build_fstar, conjugate, rebase_root

_VALUE_OPTIONS = {"--root", "--quad", "--target", "--start", "--root-quad", "--from-ford", "--fraction"}
_NEGATIVE = re.compile(r"^-\d")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Let ``--root -1,2,2,3`` through argparse, which would read the value as a flag."""
    out: list[str] = []
    it = iter(range(len(argv)))
    for i in it:
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(tok)
    return out


def _int_list(n: int | None = None):
    def parse(text: str) -> list[int]:
        try:
            vals = [int(x) for x in text.replace(" ", "").strip("()[]").split(",") if x]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
        if n is not None and len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} integers, got {len(vals)}")
        return vals
    return parse


def _fraction_list(text: str) -> list[Fraction]:
    try:
        return [parse_fraction(x) for x in text.replace(" ", "").strip("()[]").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated fractions, got {text!r}")


def _fraction(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}")


def _triplet(text: str) -> tuple[Fraction, ...]:
    # syntax only; whether the fractions are friendly is a domain question
    vals = _fraction_list(text)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected three fractions, got {text!r}")
    return tuple(vals)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def _table(rows: list[Sequence], header: Sequence[str]) -> str:
    cols = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cols]
    return "\n".join(lines) + "\n"


# Commands ------------------------------------------------------------------------------


def cmd_gasket(args) -> str:
    root = place_quad(*args.root)
    g = enumerate_gasket(root, args.bound, order=args.order, workers=args.workers,
                         allow_rational=args.rational)
    if args.svg:
        spec = RenderSpec(size=args.size, min_radius=args.min_radius, color=args.color)
        return render_svg(g.records, spec)
    report = verify(g)
    st = stats(g)
    if args.json:
        data = gasket_to_json(g)
        if args.approx:
            for entry, rec in zip(data["circles"], g.to_json(approx=True)["circles"]):
                entry["approx"] = rec["approx"]
        data["stats"] = st.to_json()
        data["verify"] = report.to_json()
        return _dump(data)
    rows = []
    for r in g.records:
        row = [format_fraction(Fraction(r.curvature)), str(r.weighted_center), r.level, " ".join(r.word) or "-"]
        rows.append(row)
    head = f"root {tuple(g.root.curvatures)}  bound {g.bound}  circles {st.count}  primes {st.prime_count}  "
    head += f"verify {'ok' if report.ok else 'FAILED'}\n"
    return head + _table(rows, ["curvature", "curvature*center", "level", "word"])


def cmd_ford(args) -> str:
    fracs = farey_sequence(args.max_q)
    circles = [ford_circle(f) for f in fracs]
    triplets = list(friendly_triplets(args.max_q))
    if args.svg:
        return render_svg([fc.circle for fc in circles] + [X_AXIS],
                          RenderSpec(size=args.size, center=(0.5, 0.25), half_width=0.55, color="mono"))
    if args.json:
        return _dump({
            "max_q": args.max_q,
            "circles": [{"fraction": format_fraction(fc.fraction), "label": fc.label,
                         "circle": circle_to_json(fc.circle)} for fc in circles],
            "triplets": [str(t) for t in triplets],
        })
    rows = [[format_fraction(fc.fraction), fc.label, str(fc.circle)] for fc in circles]
    out = _table(rows, ["fraction", "label q^2", "circle"])
    out += "friendly triplets: " + "  ".join(str(t) for t in triplets) + "\n"
    return out


def cmd_hierarchy(args) -> str:
    hmap = build_fstar(FriendlyTriplet(*args.target))
    start = FriendlyTriplet(*args.start) if args.start else FriendlyTriplet.root()
    data = hierarchy_to_json(hmap, start, args.levels, approx=args.approx)
    frames = []
    if args.boundary is not None:
        b, mirror = boundary_map(args.boundary)
        frames.append(("boundary", b, {"fraction": format_fraction(args.boundary), "map": b.to_json(),
                                       "map_text": str(b), "mirror": circle_to_json(mirror)}))
    if args.root_quad is not None:
        b = rebase_root(place_quad(*args.root_quad)).inverse()
        frames.append(("rebased", b, {"root": [format_fraction(Fraction(k)) for k in args.root_quad],
                                      "map": b.to_json(), "map_text": str(b)}))
    for name, b, meta in frames:
        ch = conjugate(b, hmap)
        images = ch.image_levels(start, args.levels)
        meta["levels"] = [
            {"level": i, "curvatures": [format_fraction(Fraction(signed_curvature(c))) for c in lvl],
             "circles": [circle_to_json(c) for c in lvl]}
            for i, lvl in enumerate(images)
        ]
        data[name] = meta
    if args.json:
        return _dump(data)
    out = (f"F* = {data['fstar']}  n* = {data['n_star']}  zeta = "
           f"{hmap.zeta if hmap.zeta is not None else '-'}  cf = {hmap.cf if hmap.cf else '-'}  "
           f"parity {'conserving' if data['parity_conserving'] else 'alternating'} (n* rule)\n")
    header = ["level", "triplet", "kappa_c", "kappa_R", "kappa_L", "ratio"]
    rows = []
    for lvl in data["levels"]:
        row = [lvl["level"], lvl["triplet"], *lvl["labels"], lvl["ratio"] or "-"]
        if args.approx:
            row.append("-" if lvl["ratio_approx"] is None else f"{lvl['ratio_approx']:.6f}")
        rows.append(row)
    if args.approx:
        header.append("ratio~")
    out += _table(rows, header)
    if args.approx and hmap.zeta is not None:
        out += f"zeta^2 ~ {float(hmap.zeta * hmap.zeta):.6f}\n"
    for name, _b, meta in frames:
        out += f"{name} map {meta['map_text']}\n"
        for lvl in meta["levels"]:
            out += f"  level {lvl['level']}: curvatures {', '.join(lvl['curvatures'])}\n"
    return out


def cmd_symmetric(args) -> str:
    orbit = symmetric_orbit(symmetric_partner(args.quad), args.levels)
    if args.json:
        data = symmetric_to_json(orbit)
        if args.approx:
            for prev, cur, lvl in zip(orbit, orbit[1:], data["levels"][1:]):
                lvl["outer_ratio_approx"] = cur.ka / prev.ka
        return _dump(data)
    rows = []
    for i, s in enumerate(orbit):
        ratio = "-" if i == 0 else format_fraction(Fraction(s.ka, orbit[i - 1].ka))
        row = [i, -s.ka, s.kb, s.kb, s.kc, s.delta, s.eta, ratio]
        if args.approx:
            row.append("-" if i == 0 else f"{s.ka / orbit[i - 1].ka:.6f}")
        rows.append(row)
    header = ["level", "outer", "inner", "inner", "inner", "delta", "eta", "outer ratio"]
    if args.approx:
        header.append("ratio~")
    return _table(rows, header)


def cmd_pyth(args) -> str:
    if args.from_ford is not None:
        t = ford_to_pythagorean(args.from_ford)
        if args.json:
            return _dump({"ford": list(args.from_ford), "triplet": list(t.values)})
        return f"{tuple(args.from_ford)} -> {t}\n"
    root = PythTriplet(*args.root) if args.root else None
    if args.word:
        root = root or PythTriplet(1, 0, 1)
        orbit = apply_hword(args.word, root, args.depth)
        if args.json:
            return _dump({"word": args.word, "orbit": [list(t.values) for t in orbit]})
        return "".join(f"{i}: {t}\n" for i, t in enumerate(orbit))
    root = root or PythTriplet(3, 4, 5)
    letters = ("H3", "H2", "H1") if args.odd else ("H1", "H2", "H3")
    tree = tree_enumerate(root, args.depth, letters)
    if args.json:
        return _dump({"tree": tree.to_json()})
    return "".join(f"{'  ' * len(n.word)}{' '.join(n.word) or 'root'}: {n.triplet}\n" for n in tree.walk())


def cmd_mirror(args) -> str:
    m, mirror = boundary_map(args.fraction)
    image = apply_circle(m, X_AXIS)
    if args.json:
        return _dump(mirror_to_json(args.fraction, m, mirror, image))
    return (f"map     {m}\n"
            f"mirror  {mirror}\n"
            f"image   {image}\n")


def cmd_lorentz(args) -> str:
    lq = curvatures_to_lorentz(args.quad)
    orderings = lorentz_orderings(args.quad)
    if args.json:
        return _dump({"quad": list(args.quad), "lorentz": list(lq.values), "valid": lq.valid,
                      "valid_orderings": [list(p) for p in orderings]})
    out = f"{tuple(args.quad)} -> {lq.values}  {'valid' if lq.valid else 'not a Lorentz quadruple'}\n"
    out += "valid orderings: " + (", ".join(str(p) for p in orderings) or "none") + "\n"
    return out


def cmd_schema(args) -> str:
    return _dump(SCHEMAS[args.kind])


# Parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--approx", action="store_true", help="add labelled floating-point columns")
    common.add_argument("--out", metavar="PATH", help="write to a file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="reserved; no command is randomized")

    p = argparse.ArgumentParser(prog="apollonian", description="Exact integral Apollonian gaskets.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gasket", parents=[common], help="enumerate a packing from a root quadruple")
    g.add_argument("--root", type=_int_list(4), required=True, metavar="k1,k2,k3,k4")
    g.add_argument("--bound", type=int, required=True)
    g.add_argument("--svg", action="store_true")
    g.add_argument("--order", choices=("bfs", "dfs"), default="bfs")
    g.add_argument("--workers", type=int, default=1)
    g.add_argument("--rational", action="store_true", help="allow non-integral roots")
    g.add_argument("--size", type=int, default=800)
    g.add_argument("--min-radius", type=float, default=0.0)
    g.add_argument("--color", choices=("level", "residue", "mono"), default="level")
    g.set_defaults(func=cmd_gasket)

    f = sub.add_parser("ford", parents=[common], help="Ford circles and friendly triplets")
    f.add_argument("--max-q", type=int, required=True)
    f.add_argument("--svg", action="store_true")
    f.add_argument("--size", type=int, default=800)
    f.set_defaults(func=cmd_ford)

    h = sub.add_parser("hierarchy", parents=[common], help="self-similar hierarchy of a target triplet")
    h.add_argument("--target", type=_triplet, required=True, metavar="pL/qL,pc/qc,pR/qR")
    h.add_argument("--levels", type=int, default=3)
    h.add_argument("--start", type=_triplet, help="starting triplet (default 0,1/2,1)")
    h.add_argument("--boundary", type=_fraction, metavar="p/q", help="carry the hierarchy onto a Ford circle")
    h.add_argument("--root-quad", type=_int_list(4), metavar="k1,k2,k3,k4",
                   help="carry the hierarchy onto the packing with this root")
    h.set_defaults(func=cmd_hierarchy)

    s = sub.add_parser("symmetric", parents=[common], help="symmetric-partner orbit")
    s.add_argument("--quad", type=_fraction_list, required=True,
                   metavar="-k0,k1,k2,k3 | kc,kR,kL")
    s.add_argument("--levels", type=int, default=4)
    s.set_defaults(func=cmd_symmetric)

    t = sub.add_parser("pyth", parents=[common], help="Pythagorean tree and Ford correspondence")
    t.add_argument("--word", help='matrix word such as "H3 H1"')
    t.add_argument("--depth", type=int, default=2)
    t.add_argument("--root", type=_int_list(3), metavar="nx,ny,nt")
    t.add_argument("--odd", action="store_true", help="children in the order H3, H2, H1")
    t.add_argument("--from-ford", type=_int_list(3), metavar="kc,kR,kL")
    t.set_defaults(func=cmd_pyth)

    m = sub.add_parser("mirror", parents=[common], help="boundary map and mirror of a Ford circle")
    m.add_argument("--fraction", type=_fraction, required=True, metavar="p/q")
    m.set_defaults(func=cmd_mirror)

    lo = sub.add_parser("lorentz", parents=[common], help="Lorentz quadruple of a Descartes quadruple")
    lo.add_argument("--quad", type=_int_list(4), required=True, metavar="k1,k2,k3,k4")
    lo.set_defaults(func=cmd_lorentz)

    sc = sub.add_parser("schema", parents=[common], help="print the JSON schema of a command's output")
    sc.add_argument("kind", choices=sorted(SCHEMAS))
    sc.set_defaults(func=cmd_schema)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except GasketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(args, text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
