"""Exact geometric kernel.

Point configurations over arbitrary-precision rationals, with the
orientation predicate, brute-force facet enumeration, face lattice
extraction, and the visibility predicates used by lifting construction.
Every function is pure and every value immutable, so concurrent callers
need no locking.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .errors import NotAFace, NotFullDimensional
from .linprog import solve_lp

Rational = Fraction


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    return Fraction(str(s))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PointConfiguration:
    """An ordered, labeled sequence of exact-rational points.

    Labels are the permanent identity of each point: configurations
    derived by deletion or contraction carry the original labels.
    """

    dim: int
    points: tuple[tuple[Fraction, ...], ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.points) != len(self.labels):
            raise ValueError("points/labels length mismatch")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")
        for p in self.points:
            if len(p) != self.dim:
                raise ValueError("point dimension mismatch")
        if self.dim > 0 and len(set(self.points)) != len(self.points):
            raise ValueError("duplicate points")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], labels=None) -> "PointConfiguration":
        pts = tuple(tuple(parse_rational(x) for x in row) for row in rows)
        dim = len(pts[0]) if pts else 0
        if labels is None:
            labels = tuple(range(1, len(pts) + 1))
        return cls(dim=dim, points=pts, labels=tuple(labels))

    @property
    def n(self) -> int:
        return len(self.points)

    def index(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"label {label} not in configuration") from None

    def point(self, label: int) -> tuple[Fraction, ...]:
        return self.points[self.index(label)]

    def delete(self, labels: Iterable[int]) -> "PointConfiguration":
        drop = set(labels)
        for lab in drop:
            self.index(lab)
        keep = [(p, l) for p, l in zip(self.points, self.labels) if l not in drop]
        return PointConfiguration(
            self.dim, tuple(p for p, _ in keep), tuple(l for _, l in keep)
        )

    def restrict(self, labels: Iterable[int]) -> "PointConfiguration":
        keep = set(labels)
        kept = [(p, l) for p, l in zip(self.points, self.labels) if l in keep]
        return PointConfiguration(
            self.dim, tuple(p for p, _ in kept), tuple(l for _, l in kept)
        )

    def relabel(self, mapping: dict[int, int]) -> "PointConfiguration":
        return PointConfiguration(
            self.dim,
            self.points,
            tuple(mapping.get(l, l) for l in self.labels),
        )

    def replace_point(self, label: int, new_point) -> "PointConfiguration":
        i = self.index(label)
        pts = list(self.points)
        pts[i] = tuple(parse_rational(x) for x in new_point)
        return PointConfiguration(self.dim, tuple(pts), self.labels)

    def append_point(self, point, label=None) -> "PointConfiguration":
        if label is None:
            label = max(self.labels, default=0) + 1
        return PointConfiguration(
            self.dim,
            self.points + (tuple(parse_rational(x) for x in point),),
            self.labels + (label,),
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "dim": self.dim,
                "labels": list(self.labels),
                "points": [
                    [[str(x.numerator), str(x.denominator)] for x in p]
                    for p in self.points
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "PointConfiguration":
        data = json.loads(text)
        pts = tuple(
            tuple(Fraction(int(num), int(den)) for num, den in row)
            for row in data["points"]
        )
        labels = tuple(data.get("labels") or range(1, len(pts) + 1))
        return cls(dim=data["dim"], points=pts, labels=labels)


@dataclass(frozen=True)
class FaceRecord:
    """A facet given by its label set and a certified supporting
    functional: normal.x - offset vanishes on the face and is strictly
    negative on every other configuration point."""

    labels: frozenset[int]
    normal: tuple[Fraction, ...]
    offset: Fraction

    def value(self, point) -> Fraction:
        return sum(a * x for a, x in zip(self.normal, point)) - self.offset


def homogeneous_rows(config: PointConfiguration, labels: Sequence[int]):
    return [list(config.point(l)) + [Fraction(1)] for l in labels]


def orientation(config: PointConfiguration, labels: Sequence[int]) -> int:
    """Sign of the determinant of the homogenized (d+1)-tuple, in the
    given label order; 0 iff affinely dependent."""
    labels = tuple(labels)
    if len(labels) != config.dim + 1:
        raise ValueError(f"need {config.dim + 1} labels, got {len(labels)}")
    if len(set(labels)) != len(labels):
        return 0
    return linalg.det_sign(homogeneous_rows(config, labels))


def affine_dim(config: PointConfiguration) -> int:
    if config.n == 0:
        return -1
    base = config.points[0]
    diffs = [[x - b for x, b in zip(p, base)] for p in config.points[1:]]
    return linalg.rank(diffs)


def hyperplane_functional(config: PointConfiguration, labels: Sequence[int]):
    """Affine functional vanishing on the span of the given d labels,
    or None when they do not span a hyperplane.  Returned as
    (normal, offset) with f(x) = normal.x - offset."""
    labels = tuple(labels)
    d = config.dim
    if len(labels) != d:
        raise ValueError(f"need {d} labels for a hyperplane in dim {d}")
    pts = [config.point(l) for l in labels]

    def f(x):
        rows = [list(x) + [Fraction(1)]] + [list(p) + [Fraction(1)] for p in pts]
        return linalg.det(rows)

    zero = tuple(Fraction(0) for _ in range(d))
    f0 = f(zero)
    normal = []
    for j in range(d):
        e = list(zero)
        e[j] = Fraction(1)
        normal.append(f(e) - f0)
    if all(a == 0 for a in normal):
        return None
    return tuple(normal), -f0


@lru_cache(maxsize=4096)
def facets(config: PointConfiguration):
    """All facets of the convex hull, by brute force over d-subsets.

    Points lying on a facet hyperplane are merged into the facet's label
    set, so non-simplicial facets come out as maximal coplanar sets.
    """
    d = config.dim
    if affine_dim(config) != d:
        raise NotFullDimensional(f"configuration does not span dimension {d}")
    found: dict[frozenset, FaceRecord] = {}
    for subset in itertools.combinations(config.labels, d):
        fn = hyperplane_functional(config, subset)
        if fn is None:
            continue
        normal, offset = fn
        on, neg, pos = [], False, False
        for lab, p in zip(config.labels, config.points):
            v = sum(a * x for a, x in zip(normal, p)) - offset
            if v == 0:
                on.append(lab)
            elif v > 0:
                pos = True
            else:
                neg = True
            if pos and neg:
                break
        if pos and neg:
            continue
        if pos:
            normal = tuple(-a for a in normal)
            offset = -offset
        key = frozenset(on)
        if key not in found:
            found[key] = FaceRecord(key, normal, offset)
    return tuple(sorted(found.values(), key=lambda f: sorted(f.labels)))


@lru_cache(maxsize=1024)
def proper_faces(config: PointConfiguration) -> set[frozenset]:
    """Label sets of all proper nonempty faces of the hull, obtained by
    closing the facet family under intersection."""
    sets = {f.labels for f in facets(config)}
    frontier = set(sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in sets:
                c = a & b
                if c and c not in sets and c not in new:
                    new.add(c)
        sets |= new
        frontier = new
    return frozenset(sets)


def face_lattice_faces(config: PointConfiguration, k: int) -> set[frozenset]:
    """Vertex-label sets of the k-dimensional faces of the hull."""
    if not 0 <= k <= config.dim - 1:
        raise ValueError(f"k={k} outside [0, {config.dim - 1}]")
    out = set()
    for s in proper_faces(config):
        if affine_dim(config.restrict(s)) == k:
            out.add(s)
    return out


def is_face(config: PointConfiguration, labels: Iterable[int]) -> bool:
    """Whether the label set is exactly the set of configuration points
    of some proper face of the hull."""
    s = frozenset(labels)
    if not s:
        return False
    meet = None
    for f in facets(config):
        if s <= f.labels:
            meet = f.labels if meet is None else meet & f.labels
    return meet == s


def visibility(config: PointConfiguration, face: Iterable[int], p) -> tuple[bool, bool]:
    """(visible, hidden) for a face of the hull viewed from p.

    Visible means some affine functional is zero on the face, strictly
    positive at p, strictly negative on the remaining configuration
    points; hidden asks for strictly negative at p instead.  A face that
    is not a facet can be both.  Decided by exact LP feasibility with a
    maximized margin.
    """
    face = frozenset(face)
    if not is_face(config, face):
        raise NotAFace(f"{sorted(face)} is not a face")
    p = tuple(parse_rational(x) for x in p)
    d = config.dim

    def side(sign_at_p: int) -> bool:
        # variables: a_1..a_d, b, delta; maximize delta
        nv = d + 2
        a_eq, b_eq, a_ub, b_ub = [], [], [], []
        for lab in sorted(face):
            q = config.point(lab)
            a_eq.append(list(q) + [Fraction(-1), Fraction(0)])
            b_eq.append(Fraction(0))
        # sign_at_p * f(p) >= delta
        a_ub.append([-sign_at_p * x for x in p] + [Fraction(sign_at_p), Fraction(1)])
        b_ub.append(Fraction(0))
        for lab, q in zip(config.labels, config.points):
            if lab in face:
                continue
            a_ub.append(list(q) + [Fraction(-1), Fraction(1)])
            b_ub.append(Fraction(0))
        for j in range(d):
            row = [Fraction(0)] * nv
            row[j] = Fraction(1)
            a_ub.append(row)
            b_ub.append(Fraction(1))
            row = [Fraction(0)] * nv
            row[j] = Fraction(-1)
            a_ub.append(row)
            b_ub.append(Fraction(1))
        row = [Fraction(0)] * nv
        row[-1] = Fraction(-1)
        a_ub.append(row)
        b_ub.append(Fraction(0))
        c = [Fraction(0)] * nv
        c[-1] = Fraction(1)
        res = solve_lp(c, a_ub, b_ub, a_eq, b_eq)
        return res.optimal and res.value > 0

    return side(+1), side(-1)


def classify_visibility(config: PointConfiguration, face, p) -> str:
    vis, hid = visibility(config, face, p)
    if vis and hid:
        return "both"
    if vis:
        return "visible"
    if hid:
        return "hidden"
    return "neither"


def is_general_position(config: PointConfiguration, q) -> bool:
    """True iff no hyperplane spanned by d configuration points
    contains q."""
    q = tuple(parse_rational(x) for x in q)
    d = config.dim
    qrow = list(q) + [Fraction(1)]
    for subset in itertools.combinations(config.labels, d):
        rows = homogeneous_rows(config, subset)
        if linalg.rank(rows) < d:
            continue  # does not span a hyperplane
        if linalg.det_sign([qrow] + rows) == 0:
            return False
    return True


def configuration_in_general_position(config: PointConfiguration) -> bool:
    """No d+1 points on a common hyperplane."""
    for subset in itertools.combinations(config.labels, config.dim + 1):
        if orientation(config, subset) == 0:
            return False
    return True


def is_vertex(config: PointConfiguration, label: int) -> bool:
    """Exact test for p being a vertex of the hull."""
    if config.dim == 0:
        return config.n == 1
    p = config.point(label)
    d = config.dim
    # maximize delta s.t. a.(p' - p) <= -delta for all p' != p, |a_j| <= 1
    nv = d + 1
    a_ub, b_ub = [], []
    for lab, q in zip(config.labels, config.points):
        if lab == label:
            continue
        a_ub.append([x - y for x, y in zip(q, p)] + [Fraction(1)])
        b_ub.append(Fraction(0))
    for j in range(d):
        for s in (1, -1):
            row = [Fraction(0)] * nv
            row[j] = Fraction(s)
            a_ub.append(row)
            b_ub.append(Fraction(1))
    row = [Fraction(0)] * nv
    row[-1] = Fraction(-1)
    a_ub.append(row)
    b_ub.append(Fraction(0))
    c = [Fraction(0)] * nv
    c[-1] = Fraction(1)
    res = solve_lp(c, a_ub, b_ub)
    return res.optimal and res.value > 0


def in_convex_position(config: PointConfiguration) -> bool:
    if config.dim == 0:
        return True
    return all(is_vertex(config, lab) for lab in config.labels)


def centroid(config: PointConfiguration) -> tuple[Fraction, ...]:
    n = config.n
    return tuple(
        sum(p[j] for p in config.points) / n for j in range(config.dim)
    )


def moment_curve_point(t: Fraction, d: int) -> tuple[Fraction, ...]:
    t = parse_rational(t)
    return tuple(t ** (j + 1) for j in range(d))


def cyclic_configuration(d: int, params: Sequence) -> PointConfiguration:
    """Points on the moment curve at the given (distinct, increasing)
    parameters; the standard realization of the cyclic polytope."""
    ts = [parse_rational(t) for t in params]
    if sorted(ts) != ts or len(set(ts)) != len(ts):
        raise ValueError("moment curve parameters must be strictly increasing")
    return PointConfiguration.from_rows([moment_curve_point(t, d) for t in ts])
