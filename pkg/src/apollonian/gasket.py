"""Exact enumeration of integral Apollonian packings.

A packing is grown from a root quadruple in curvature-center coordinates.
At the root every position whose twin is at least as curved is reflected;
below the root only reflections that strictly increase curvature are taken,
so pruning at the curvature bound is safe.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .descartes import (
    AugmentedCircle,
    ExtendedQuad,
    _reflect_coord,
    check_descartes,
    dual_extended,
    place_quad,
)
from .errors import GasketError, NonRealizableError
from .geometry import Circle, Line, circle_to_json, is_tangent
from .numerics import GaussianRational, format_fraction

G = GaussianRational

Key = tuple  # AugmentedCircle.key()


@dataclass(frozen=True)
class CircleRecord:
    curvature: int | Fraction
    weighted_center: GaussianRational  # curvature * center; unit normal for lines
    cocurvature: Fraction
    level: int
    word: tuple[str, ...]  # reflections, last one applied first in the tuple
    parents: tuple[Key, ...] = ()

    @property
    def augmented(self) -> AugmentedCircle:
        return AugmentedCircle(self.cocurvature, self.curvature, self.weighted_center)

    @property
    def key(self) -> Key:
        return self.augmented.key()

    def circle(self):
        return self.augmented.to_circle()

    def sort_key(self) -> tuple:
        k = Fraction(self.curvature)
        if k == 0:
            return (k, self.weighted_center.re, self.weighted_center.im, self.cocurvature)
        c = self.weighted_center / k
        return (k, c.re, c.im, self.cocurvature)


def _int_or_fraction(x: Fraction):
    return x.numerator if x.denominator == 1 else x


@dataclass
class Gasket:
    root: ExtendedQuad
    bound: int | Fraction
    records: list[CircleRecord]
    quads: list[tuple[Key, Key, Key, Key]] = field(default_factory=list)
    rational: bool = False

    def __len__(self):
        return len(self.records)

    def curvatures(self) -> list:
        return [r.curvature for r in self.records]

    def index(self) -> dict[Key, int]:
        return {r.key: i for i, r in enumerate(self.records)}

    def to_json(self, approx: bool = False) -> dict:
        idx = self.index()
        circles = []
        for r in self.records:
            entry = {
                "curvature": format_fraction(Fraction(r.curvature)),
                "weighted_center": str(r.weighted_center),
                "cocurvature": format_fraction(r.cocurvature),
                "level": r.level,
                "word": " ".join(r.word),
                "parents": [idx[p] for p in r.parents],
            }
            if approx:
                entry["approx"] = _approx(r)
            circles.append(entry)
        return {
            "root": [format_fraction(Fraction(k)) for k in self.root.curvatures],
            "bound": format_fraction(Fraction(self.bound)),
            "circles": circles,
        }


def _approx(r: CircleRecord) -> dict:
    k = float(r.curvature)
    if k == 0:
        return {"line_normal": [float(r.weighted_center.re), float(r.weighted_center.im)]}
    c = complex(r.weighted_center) / k
    return {"x": c.real, "y": c.imag, "radius": abs(1 / k)}


# Enumeration ----------------------------------------------------------------------


def _reflect(cs: Sequence[AugmentedCircle], i: int) -> AugmentedCircle:
    return AugmentedCircle(
        _reflect_coord([c.cocurvature for c in cs], i),
        _reflect_coord([c.curvature for c in cs], i),
        _reflect_coord([c.w for c in cs], i),
    )


# (quad, index of newest circle, level of the newest circle, word)
_Node = tuple[tuple[AugmentedCircle, ...], int, int, tuple[str, ...]]


def _children(node: _Node, bound) -> list[_Node]:
    cs, newest, level, word = node
    out = []
    for i in range(4):
        if i == newest:
            continue
        new = _reflect(cs, i)
        if new.curvature <= cs[i].curvature or new.curvature > bound:
            continue
        quad = cs[:i] + (new,) + cs[i + 1:]
        out.append((quad, i, level + 1, (f"S{i + 1}",) + word))
    return out


def _root_children(cs: tuple[AugmentedCircle, ...], bound) -> list[_Node]:
    out = []
    for i in range(4):
        new = _reflect(cs, i)
        if new.curvature < cs[i].curvature or new.curvature > bound:
            continue
        out.append((cs[:i] + (new,) + cs[i + 1:], i, 1, (f"S{i + 1}",)))
    return out


def _walk(starts: list[_Node], bound, order: str) -> tuple[list[CircleRecord], list[tuple]]:
    records: list[CircleRecord] = []
    quads: list[tuple] = []
    pending = deque(starts)
    pop = pending.popleft if order == "bfs" else pending.pop
    while pending:
        node = pop()
        cs, newest, level, word = node
        quads.append(tuple(c.key() for c in cs))
        new = cs[newest]
        parents = tuple(cs[j].key() for j in range(4) if j != newest)
        records.append(CircleRecord(_int_or_fraction(new.curvature), new.w, new.cocurvature,
                                    level, word, parents))
        pending.extend(_children(node, bound))
    return records, quads


def _walk_job(args):
    starts, bound, order = args
    return _walk(starts, bound, order)


def _coerce_root(root) -> ExtendedQuad:
    if isinstance(root, ExtendedQuad):
        return root
    return place_quad(*root)


def enumerate_gasket(root, max_curvature, order: str = "bfs", workers: int = 1,
                     allow_rational: bool = False) -> Gasket:
    """All circles of the packing generated by ``root`` with curvature at
    most ``max_curvature``, sorted by curvature then center."""
    if order not in ("bfs", "dfs"):
        raise ValueError("order must be 'bfs' or 'dfs'")
    root = _coerce_root(root)
    cs = root.circles
    integral = all(c.curvature.denominator == 1 for c in cs)
    if not integral and not allow_rational:
        raise NonRealizableError(
            f"root {root.curvatures} is not integral; pass allow_rational to enumerate it anyway")
    bound = Fraction(max_curvature)
    records = [
        CircleRecord(_int_or_fraction(c.curvature), c.w, c.cocurvature, 0, (),
                     tuple(cs[j].key() for j in range(4) if j != i))
        for i, c in enumerate(cs) if c.curvature <= bound
    ]
    quads = [tuple(c.key() for c in cs)]
    starts = _root_children(tuple(cs), bound)
    if workers > 1 and len(starts) > 1:
        # the root's subtrees are independent; merge afterwards
        jobs = [([s], bound, order) for s in starts]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for recs, qs in pool.map(_walk_job, jobs):
                records.extend(recs)
                quads.extend(qs)
    else:
        recs, qs = _walk(starts, bound, order)
        records.extend(recs)
        quads.extend(qs)
    # the same circle may be reached twice only through root ties; keep the
    # shallowest, then lexicographically smallest, derivation
    best: dict[Key, CircleRecord] = {}
    for r in records:
        cur = best.get(r.key)
        if cur is None or (r.level, r.word) < (cur.level, cur.word):
            best[r.key] = r
    ordered = sorted(best.values(), key=CircleRecord.sort_key)
    quads = sorted(set(quads))
    return Gasket(root, _int_or_fraction(bound), ordered, quads, rational=not integral)


# Statistics and verification ----------------------------------------------------


@dataclass(frozen=True)
class GasketStats:
    count: int
    curvatures: tuple[tuple[int | Fraction, int], ...]  # (curvature, multiplicity), sorted
    prime_count: int

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "curvatures": [[format_fraction(Fraction(k)), m] for k, m in self.curvatures],
            "prime_count": self.prime_count,
        }


def stats(g: Gasket) -> GasketStats:
    from sympy import isprime

    counts = Counter(g.curvatures())
    primes = sum(m for k, m in counts.items()
                 if Fraction(k).denominator == 1 and k > 1 and isprime(int(k)))
    return GasketStats(len(g.records), tuple(sorted(counts.items())), primes)


@dataclass
class VerifyReport:
    checked_quads: int = 0
    checked_records: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked_quads": self.checked_quads,
                "checked_records": self.checked_records, "failures": self.failures}


def _dual_passes_through_contacts(cs: Sequence[AugmentedCircle]) -> bool:
    from .geometry import tangency_point

    geo = [c.to_circle() for c in cs]
    duals = [d.to_circle() for d in dual_extended(ExtendedQuad(tuple(cs)))]
    for j in range(4):
        others = [i for i in range(4) if i != j]
        for a, b in itertools.combinations(others, 2):
            p = tangency_point(geo[a], geo[b])
            if not duals[j].contains_point(p):
                return False
    return True


def verify(g: Gasket, sample: Iterable[int] | None = None) -> VerifyReport:
    """Independent re-check of a gasket: Descartes on every quadruple,
    tangency of each circle to its parents, integrality (unless rational),
    unique keys and the dual overlay on the root."""
    rep = VerifyReport()
    by_key = {r.key: r for r in g.records}
    if len(by_key) != len(g.records):
        rep.failures.append("duplicate circle keys")
    for q in g.quads:
        rep.checked_quads += 1
        ks = [k[0] for k in q]
        if not check_descartes(*ks):
            rep.failures.append(f"quadruple {tuple(ks)} violates Descartes")
    indices = range(len(g.records)) if sample is None else sample
    for i in indices:
        r = g.records[i]
        rep.checked_records += 1
        if not g.rational and Fraction(r.curvature).denominator != 1:
            rep.failures.append(f"record {i}: curvature {r.curvature} is not an integer")
        try:
            c = r.circle()
        except GasketError as exc:
            rep.failures.append(f"record {i}: {exc}")
            continue
        for pk in r.parents:
            parent = by_key.get(pk)
            pc = parent.circle() if parent is not None else AugmentedCircle(pk[3], pk[0], G(pk[1], pk[2])).to_circle()
            try:
                ok = is_tangent(c, pc)
            except GasketError:
                ok = False
            if not ok:
                rep.failures.append(f"record {i} (curvature {r.curvature}) is not tangent to a parent")
                break
    if not _dual_passes_through_contacts(g.root.circles):
        rep.failures.append("dual circles of the root miss its tangency points")
    return rep


def closure_curvatures(root: Sequence[int], bound: int) -> Counter:
    """Curvature multiset by plain integer reflection (no geometry)."""
    root = tuple(root)
    counts = Counter(k for k in root if k <= bound)
    stack = []
    for i in range(4):
        new = 2 * (sum(root) - root[i]) - root[i]
        if root[i] <= new <= bound:
            stack.append((root[:i] + (new,) + root[i + 1:], i))
    while stack:
        q, newest = stack.pop()
        counts[q[newest]] += 1
        for i in range(4):
            if i == newest:
                continue
            new = 2 * (sum(q) - q[i]) - q[i]
            if q[i] < new <= bound:
                stack.append((q[:i] + (new,) + q[i + 1:], i))
    return counts


def records_to_circles(records: Iterable[CircleRecord]) -> list[Circle | Line]:
    return [r.circle() for r in records]


def record_to_json(r: CircleRecord) -> dict:
    return circle_to_json(r.circle())
