"""JSON documents produced by the command line: schemas, emitters and the
parsers that read them back into library objects."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

import jsonschema

from .descartes import AugmentedCircle, ExtendedQuad
from .ford import FriendlyTriplet, ford_circle
from .gasket import CircleRecord, Gasket
from .geometry import circle_from_json, circle_to_json
from .kaleido import SymmetricQuad
from .mobius import MobiusMap
from .numerics import GaussianRational, PeriodicCF, QuadraticSurd, format_fraction, parse_fraction
from .pythagoras import LorentzQuad, PythTriplet, TreeNode
from .selfsim import HierarchyMap, iterate

FRACTION = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
GAUSSIAN = {"type": "string"}
SURD = {
    "type": "object",
    "properties": {"a": FRACTION, "b": FRACTION, "d": {"type": "integer", "minimum": 0}},
    "required": ["a", "b", "d"],
}
CF = {
    "type": "object",
    "properties": {
        "head": {"type": "array", "items": {"type": "integer"}},
        "period": {"type": "array", "items": {"type": "integer"}},
    },
    "required": ["head", "period"],
}
POINT = {"type": "array", "items": FRACTION, "minItems": 2, "maxItems": 2}
CIRCLE = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"center": POINT, "radius_sq": FRACTION, "orientation": {"enum": [1, -1]}},
            "required": ["center", "radius_sq", "orientation"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"line": {"type": "array", "items": POINT, "minItems": 2, "maxItems": 2}},
            "required": ["line"],
            "additionalProperties": False,
        },
    ]
}
MOBIUS = {
    "type": "object",
    "properties": {"a": GAUSSIAN, "b": GAUSSIAN, "c": GAUSSIAN, "d": GAUSSIAN,
                   "conjugating": {"type": "boolean"}},
    "required": ["a", "b", "c", "d", "conjugating"],
}
AUGMENTED = {
    "type": "object",
    "properties": {"curvature": FRACTION, "weighted_center": GAUSSIAN, "cocurvature": FRACTION},
    "required": ["curvature", "weighted_center", "cocurvature"],
}

SCHEMAS: dict[str, dict] = {
    "gasket": {
        "type": "object",
        "properties": {
            "root": {"type": "array", "items": AUGMENTED, "minItems": 4, "maxItems": 4},
            "bound": FRACTION,
            "circles": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "curvature": FRACTION,
                        "weighted_center": GAUSSIAN,
                        "cocurvature": FRACTION,
                        "level": {"type": "integer", "minimum": 0},
                        "word": {"type": "string"},
                        "parents": {"type": "array", "items": {"type": "integer"}},
                    },
                    "required": ["curvature", "weighted_center", "cocurvature", "level", "word", "parents"],
                },
            },
            "stats": {"type": "object"},
            "verify": {"type": "object"},
        },
        "required": ["root", "bound", "circles"],
    },
    "ford": {
        "type": "object",
        "properties": {
            "max_q": {"type": "integer"},
            "circles": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {"fraction": FRACTION, "label": {"type": "integer"}, "circle": CIRCLE},
                    "required": ["fraction", "label", "circle"],
                },
            },
            "triplets": {"type": "array", "items": {"type": "string"}},
        },
        "required": ["max_q", "circles", "triplets"],
    },
    "hierarchy": {
        "type": "object",
        "properties": {
            "target": {"type": "string"},
            "start": {"type": "string"},
            "fstar": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            "n_star": {"type": "integer"},
            "zeta": {"anyOf": [SURD, {"type": "null"}]},
            "cf": {"anyOf": [CF, {"type": "null"}]},
            "parity_conserving": {"type": "boolean"},
            "levels": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "level": {"type": "integer"},
                        "triplet": {"type": "string"},
                        "labels": {"type": "array", "items": {"type": "integer"}},
                        "ratio": {"anyOf": [FRACTION, {"type": "null"}]},
                    },
                    "required": ["level", "triplet", "labels", "ratio"],
                },
            },
            "boundary": {"type": "object"},
            "rebased": {"type": "object"},
        },
        "required": ["target", "start", "fstar", "n_star", "zeta", "cf", "parity_conserving", "levels"],
    },
    "symmetric": {
        "type": "object",
        "properties": {
            "quad": {"type": "array", "items": FRACTION},
            "levels": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "outer": FRACTION,
                        "inner": {"type": "array", "items": FRACTION, "minItems": 3, "maxItems": 3},
                        "delta": FRACTION,
                        "eta": {"enum": [1, 2]},
                    },
                    "required": ["outer", "inner", "delta"],
                },
            },
        },
        "required": ["quad", "levels"],
    },
    "pyth": {
        "type": "object",
        "properties": {
            "word": {"type": "string"},
            "orbit": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            "tree": {"$ref": "#/$defs/node"},
            "ford": {"type": "array", "items": {"type": "integer"}},
            "triplet": {"type": "array", "items": {"type": "integer"}},
        },
        "anyOf": [{"required": ["orbit"]}, {"required": ["tree"]}, {"required": ["triplet"]}],
        "$defs": {
            "node": {
                "type": "object",
                "properties": {
                    "triplet": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3},
                    "word": {"type": "string"},
                    "children": {"type": "array", "items": {"$ref": "#/$defs/node"}},
                },
                "required": ["triplet", "children"],
            }
        },
    },
    "mirror": {
        "type": "object",
        "properties": {
            "fraction": FRACTION,
            "map": MOBIUS,
            "mirror": CIRCLE,
            "image": CIRCLE,
            "map_text": {"type": "string"},
            "mirror_text": {"type": "string"},
        },
        "required": ["fraction", "map", "mirror", "image"],
    },
    "lorentz": {
        "type": "object",
        "properties": {
            "quad": {"type": "array", "items": {"type": "integer"}},
            "lorentz": {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4},
            "valid": {"type": "boolean"},
            "valid_orderings": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        },
        "required": ["quad", "lorentz", "valid", "valid_orderings"],
    },
}


def validate(kind: str, data: Any) -> None:
    """Raise jsonschema.ValidationError if ``data`` does not fit ``kind``."""
    if kind not in SCHEMAS:
        raise KeyError(f"no schema named {kind!r}")
    jsonschema.validate(data, SCHEMAS[kind])


def _num(text: str):
    f = parse_fraction(text)
    return f.numerator if f.denominator == 1 else f


# Gasket ------------------------------------------------------------------------------


def augmented_to_json(c: AugmentedCircle) -> dict:
    return {"curvature": format_fraction(c.curvature), "weighted_center": str(c.w),
            "cocurvature": format_fraction(c.cocurvature)}


def augmented_from_json(data: dict) -> AugmentedCircle:
    return AugmentedCircle(parse_fraction(data["cocurvature"]), parse_fraction(data["curvature"]),
                           GaussianRational.parse(data["weighted_center"]))


def gasket_to_json(g: Gasket) -> dict:
    data = g.to_json()
    data["root"] = [augmented_to_json(c) for c in g.root.circles]
    return data


def gasket_from_json(data: dict) -> Gasket:
    validate("gasket", data)
    root = ExtendedQuad(tuple(augmented_from_json(c) for c in data["root"]))
    raw = data["circles"]
    keys = [augmented_from_json(c).key() for c in raw]
    records = []
    for entry in raw:
        aug = augmented_from_json(entry)
        records.append(CircleRecord(
            _num(entry["curvature"]), aug.w, aug.cocurvature, entry["level"],
            tuple(entry["word"].split()), tuple(keys[i] for i in entry["parents"]),
        ))
    rational = any(Fraction(r.curvature).denominator != 1 for r in records)
    return Gasket(root, _num(data["bound"]), records, [], rational=rational)


# Hierarchies --------------------------------------------------------------------------


def hierarchy_to_json(hmap: HierarchyMap, start: FriendlyTriplet, levels: int,
                      approx: bool = False) -> dict:
    data = hmap.to_json()
    data["target"] = str(hmap.target) if hmap.target is not None else ""
    data["start"] = str(start)
    rows = []
    prev = None
    for lvl in iterate(hmap, start, levels):
        kc = lvl.kappa_c
        ratio = None if prev is None else Fraction(kc, prev)
        row = {"level": lvl.level, "triplet": str(lvl.triplet), "labels": list(lvl.labels),
               "ratio": None if ratio is None else format_fraction(ratio)}
        if approx:
            row["ratio_approx"] = None if ratio is None else float(ratio)
        rows.append(row)
        prev = kc
    data["levels"] = rows
    if approx and hmap.zeta is not None:
        data["zeta_sq_approx"] = float(hmap.zeta * hmap.zeta)
    return data


def hierarchy_from_json(data: dict) -> tuple[HierarchyMap, FriendlyTriplet, int]:
    validate("hierarchy", data)
    (a, b), (c, d) = data["fstar"]
    target = FriendlyTriplet.parse(data["target"]) if data["target"] else None
    hmap = HierarchyMap(a, b, c, d, target)
    if data["zeta"] is not None and QuadraticSurd.from_json(data["zeta"]) != hmap.zeta:
        raise ValueError("zeta does not match the recursion matrix")
    if data["cf"] is not None and PeriodicCF.from_json(data["cf"]) != hmap.cf:
        raise ValueError("continued fraction does not match the recursion matrix")
    return hmap, FriendlyTriplet.parse(data["start"]), len(data["levels"]) - 1


# Symmetric orbits ---------------------------------------------------------------------


def symmetric_to_json(orbit: list[SymmetricQuad]) -> dict:
    return {
        "quad": [str(k) for k in orbit[0].curvatures],
        "levels": [{**s.to_json(), "eta": s.eta} for s in orbit],
    }


def symmetric_from_json(data: dict) -> list[SymmetricQuad]:
    validate("symmetric", data)
    out = []
    for lvl in data["levels"]:
        ka = -_num(lvl["outer"])
        kb, kb2, kc = (_num(x) for x in lvl["inner"])
        if kb != kb2:
            raise ValueError("inner pair must be equal")
        s = SymmetricQuad(ka, kb, kc, lvl.get("eta", 1))
        if s.delta != _num(lvl["delta"]):
            raise ValueError("delta does not match the curvatures")
        out.append(s)
    return out


# Pythagorean data ---------------------------------------------------------------------


def tree_from_json(data: dict) -> TreeNode:
    word = tuple(data.get("word", "").split())
    node = TreeNode(PythTriplet(*data["triplet"]), word)
    node.children = [tree_from_json(c) for c in data["children"]]
    return node


def pyth_from_json(data: dict) -> dict:
    validate("pyth", data)
    out: dict = {}
    if "orbit" in data:
        out["orbit"] = [PythTriplet(*t) for t in data["orbit"]]
    if "tree" in data:
        out["tree"] = tree_from_json(data["tree"])
    if "triplet" in data:
        out["triplet"] = PythTriplet(*data["triplet"])
    return out


# Mirrors and Lorentz quadruples -------------------------------------------------------


def mirror_to_json(fraction: Fraction, m: MobiusMap, mirror, image) -> dict:
    return {
        "fraction": format_fraction(fraction),
        "map": m.to_json(),
        "map_text": str(m),
        "mirror": circle_to_json(mirror),
        "mirror_text": str(mirror),
        "image": circle_to_json(image),
    }


def mirror_from_json(data: dict):
    validate("mirror", data)
    return (parse_fraction(data["fraction"]), MobiusMap.from_json(data["map"]),
            circle_from_json(data["mirror"]), circle_from_json(data["image"]))


def lorentz_from_json(data: dict) -> tuple[tuple[int, ...], LorentzQuad]:
    validate("lorentz", data)
    lq = LorentzQuad(*data["lorentz"])
    if lq.valid != data["valid"]:
        raise ValueError("validity flag does not match the quadruple")
    return tuple(data["quad"]), lq


def ford_from_json(data: dict) -> dict:
    validate("ford", data)
    circles = []
    for entry in data["circles"]:
        f = parse_fraction(entry["fraction"])
        c = circle_from_json(entry["circle"])
        if c != ford_circle(f).circle:
            raise ValueError(f"circle for {entry['fraction']} is not its Ford circle")
        circles.append(ford_circle(f))
    return {"max_q": data["max_q"], "circles": circles,
            "triplets": [FriendlyTriplet.parse(t) for t in data["triplets"]]}
