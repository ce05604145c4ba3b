"""Triangulations and regular subdivisions.

Construction from lifting vectors, placing and pulling triangulations,
links, exact regularity certification, and the f/h-vector machinery
behind the neighborly cell bound.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import (
    DegenerateStep,
    NonPureComplex,
    NotATriangulation,
    NotConvexPosition,
    NotFullDimensional,
    PointUnused,
)
from .geometry import (
    PointConfiguration,
    affine_dim,
    facets,
    format_rational,
    in_convex_position,
    orientation,
    parse_rational,
)
from .linprog import solve_lp

Cells = frozenset  # of frozensets of labels


def make_cells(cells) -> frozenset:
    return frozenset(frozenset(c) for c in cells)


@dataclass(frozen=True)
class Subdivision:
    """A polyhedral subdivision given by its cells as label sets; cells
    may be non-simplicial."""

    cells: frozenset

    @property
    def used_labels(self) -> frozenset:
        return frozenset(l for c in self.cells for l in c)

    def is_simplicial(self, dim: int) -> bool:
        return all(len(c) == dim + 1 for c in self.cells)


@dataclass(frozen=True)
class Triangulation:
    """A triangulation given by its maximal cells (sorted label sets of
    size d+1 each)."""

    cells: frozenset

    def __post_init__(self):
        object.__setattr__(self, "cells", make_cells(self.cells))

    @property
    def used_labels(self) -> frozenset:
        return frozenset(l for c in self.cells for l in c)

    def link(self, p_label: int) -> "Triangulation":
        link_cells = [c - {p_label} for c in self.cells if p_label in c]
        if not link_cells:
            raise PointUnused(f"label {p_label} unused by the triangulation")
        return Triangulation(make_cells(link_cells))

    def relabel(self, mapping: dict[int, int]) -> "Triangulation":
        return Triangulation(
            make_cells({frozenset(mapping.get(l, l) for l in c) for c in self.cells})
        )

    def faces(self) -> frozenset:
        """Downward closure: all nonempty faces of the complex."""
        out = set()
        for c in self.cells:
            cs = sorted(c)
            for k in range(1, len(cs) + 1):
                out.update(frozenset(s) for s in itertools.combinations(cs, k))
        return frozenset(out)

    def restriction(self, labels) -> frozenset:
        """Faces of the complex contained in the given label set."""
        keep = frozenset(labels)
        return frozenset(f for f in self.faces() if f <= keep)

    def to_json(self, config_id=None) -> str:
        return json.dumps(
            {
                "config": config_id,
                "cells": sorted(sorted(c) for c in self.cells),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Triangulation":
        return cls(make_cells(json.loads(text)["cells"]))


def heights_to_json(w: dict) -> str:
    return json.dumps(
        {"heights": {str(l): format_rational(v) for l, v in sorted(w.items())}}
    )


def heights_from_json(text: str) -> dict:
    data = json.loads(text)
    return {int(l): parse_rational(v) for l, v in data["heights"].items()}


def lifted_configuration(config: PointConfiguration, w: dict) -> PointConfiguration:
    rows = []
    for lab, p in zip(config.labels, config.points):
        rows.append(tuple(p) + (parse_rational(w[lab]),))
    return PointConfiguration(config.dim + 1, tuple(rows), config.labels)


def regular_subdivision(config: PointConfiguration, w: dict) -> Subdivision:
    """Project the lower faces of the lifted hull; cells are simplicial
    exactly when the heights are generic for the configuration."""
    if affine_dim(config) != config.dim:
        raise NotFullDimensional("configuration must be full-dimensional")
    lifted = lifted_configuration(config, w)
    if affine_dim(lifted) < lifted.dim:
        # heights are an affine function of position: trivial subdivision
        return Subdivision(make_cells([config.labels]))
    cells = []
    for f in facets(lifted):
        if f.normal[-1] < 0:
            cells.append(f.labels)
    return Subdivision(make_cells(cells))


def barycentric(config: PointConfiguration, cell, label: int):
    """Affine coordinates of the point `label` with respect to the d+1
    affinely independent points of `cell`; None if the cell is
    degenerate."""
    cell = sorted(cell)
    cols = [list(config.point(l)) + [Fraction(1)] for l in cell]
    a = [[cols[j][i] for j in range(len(cell))] for i in range(config.dim + 1)]
    b = list(config.point(label)) + [Fraction(1)]
    sol = linalg.solve(a, b)
    if sol is None:
        return None
    return dict(zip(cell, sol))


def simplices_properly_intersect(config: PointConfiguration, s1, s2) -> bool:
    """Whether two simplices meet in a common face (possibly empty).

    Exact LP on barycentric weights: the simplices meet improperly iff a
    common point can put positive weight on a vertex outside the shared
    label set.
    """
    s1, s2 = sorted(s1), sorted(s2)
    shared = set(s1) & set(s2)
    d = config.dim
    n1, n2 = len(s1), len(s2)
    nv = n1 + n2
    a_eq, b_eq = [], []
    for i in range(d):
        row = [config.point(l)[i] for l in s1] + [-config.point(l)[i] for l in s2]
        a_eq.append(row)
        b_eq.append(Fraction(0))
    a_eq.append([Fraction(1)] * n1 + [Fraction(0)] * n2)
    b_eq.append(Fraction(1))
    a_eq.append([Fraction(0)] * n1 + [Fraction(1)] * n2)
    b_eq.append(Fraction(1))
    c = [Fraction(1) if l not in shared else Fraction(0) for l in s1]
    c += [Fraction(0)] * n2
    res = solve_lp(c, [], [], a_eq, b_eq, nonneg=True)
    if not res.optimal:
        return True  # disjoint simplices intersect properly (empty face)
    return res.value == 0


def is_triangulation(cells, config: PointConfiguration):
    """Exact check of the two triangulation conditions; returns
    (ok, witness) where the witness names a violating ridge or pair."""
    cells = make_cells(cells)
    d = config.dim
    if not cells:
        return False, "empty cell set"
    for c in cells:
        if len(c) != d + 1:
            return False, ("non-simplicial cell", tuple(sorted(c)))
        if orientation(config, sorted(c)) == 0:
            return False, ("degenerate cell", tuple(sorted(c)))
    boundary = {frozenset(f.labels) for f in facets(config)}
    ridge_count: dict[frozenset, list] = {}
    for c in cells:
        for r in itertools.combinations(sorted(c), d):
            ridge_count.setdefault(frozenset(r), []).append(c)
    for ridge, owners in ridge_count.items():
        if len(owners) > 2:
            return False, ("overcrowded ridge", tuple(sorted(ridge)))
        if len(owners) == 1 and not any(ridge <= b for b in boundary):
            return False, ("uncovered ridge", tuple(sorted(ridge)))
        if len(owners) == 2 and any(ridge <= b for b in boundary):
            return False, ("boundary ridge shared twice", tuple(sorted(ridge)))
    ordered = sorted(cells, key=sorted)
    for i, c1 in enumerate(ordered):
        for c2 in ordered[i + 1 :]:
            if not simplices_properly_intersect(config, c1, c2):
                return False, ("improper pair", tuple(sorted(c1)), tuple(sorted(c2)))
    return True, None


@dataclass(frozen=True)
class RegularityResult:
    regular: bool
    witness: dict | None = None  # heights inducing T when regular
    margin: Fraction | None = None
    # duals proving the margin cannot exceed zero when not regular
    certificate: tuple | None = field(default=None, repr=False)
    certificate_valid: bool | None = None


def _regularity_lp(t: Triangulation, config: PointConfiguration):
    """Build the margin-maximization LP over shifted heights in [0, 2].

    One row per (cell, outside point): the lifted point must clear the
    cell's lifted hyperplane by at least the margin.  The constraint is
    invariant under a common shift of all heights, so the [0, 2] box is
    just a normalization of [-1, 1].
    """
    labels = sorted(config.labels)
    idx = {l: i for i, l in enumerate(labels)}
    nv = len(labels) + 1  # heights + margin, all nonnegative
    a_ub, b_ub = [], []
    for cell in sorted(t.cells, key=sorted):
        for lab in labels:
            if lab in cell:
                continue
            coords = barycentric(config, cell, lab)
            if coords is None:
                raise NotATriangulation(("degenerate cell", tuple(sorted(cell))))
            row = [Fraction(0)] * nv
            row[idx[lab]] = Fraction(-1)
            for l, lam in coords.items():
                row[idx[l]] += lam
            row[-1] = Fraction(1)
            a_ub.append(row)
            b_ub.append(Fraction(0))
    for i in range(nv):
        # boxes on the heights and on the margin keep the LP bounded
        # even when no separation rows exist (the simplex case)
        row = [Fraction(0)] * nv
        row[i] = Fraction(1)
        a_ub.append(row)
        b_ub.append(Fraction(2) if i < len(labels) else Fraction(1))
    c = [Fraction(0)] * nv
    c[-1] = Fraction(1)
    return labels, c, a_ub, b_ub


def _check_certificate(c, a_ub, b_ub, dual) -> bool:
    """Independent recheck: nonnegative duals that dominate the
    objective and price out to a nonpositive bound prove that no height
    vector achieves a positive margin."""
    if any(y < 0 for y in dual):
        return False
    nv = len(c)
    for j in range(nv):
        if sum(dual[i] * a_ub[i][j] for i in range(len(a_ub))) < c[j]:
            return False
    return sum(y * b for y, b in zip(dual, b_ub)) <= 0


def is_regular(
    t: Triangulation, config: PointConfiguration, validate: bool = False
) -> RegularityResult:
    """Certify regularity by exact LP: maximize the margin by which
    every lifted outside point clears every cell hyperplane.  Returns a
    witness height vector, or duals refuting any positive margin."""
    if validate:
        ok, witness = is_triangulation(t.cells, config)
        if not ok:
            raise NotATriangulation(witness)
    labels, c, a_ub, b_ub = _regularity_lp(t, config)
    res = solve_lp(c, a_ub, b_ub, nonneg=True)
    if not res.optimal:  # cannot happen: zero heights are feasible
        raise NotATriangulation("regularity LP unsolvable")
    if res.value > 0:
        w = {lab: res.x[i] - 1 for i, lab in enumerate(labels)}
        return RegularityResult(True, witness=w, margin=res.value)
    cert = (c, a_ub, b_ub, res.dual)
    return RegularityResult(
        False,
        margin=res.value,
        certificate=tuple(res.dual),
        certificate_valid=_check_certificate(c, a_ub, b_ub, res.dual),
    )


def placing_triangulation(config: PointConfiguration, order=None) -> Triangulation:
    """Insert points in the given label order, coning each new point
    over the facets visible from it.  Interior points are skipped, as
    the visibility rule adds nothing for them."""
    if order is None:
        order = list(config.labels)
    d = config.dim
    if len(order) < d + 1:
        raise NotFullDimensional("too few points to span")
    first = list(order[: d + 1])
    if orientation(config, first) == 0:
        raise DegenerateStep(order[d])
    cells = {frozenset(first)}
    used = list(first)
    for lab in order[d + 1 :]:
        p = config.point(lab)
        sub = config.restrict(used)
        new_cells = set()
        for f in facets(sub):
            v = f.value(p)
            if v == 0:
                raise DegenerateStep(lab)
            if v > 0:  # facet visible from the new point
                if len(f.labels) != d:
                    raise DegenerateStep(lab)
                new_cells.add(frozenset(f.labels | {lab}))
        cells |= new_cells
        used.append(lab)
    return Triangulation(make_cells(cells))


def pulling_triangulation(config: PointConfiguration) -> Triangulation:
    """Cone the last-labeled point over the hull facets avoiding it;
    valid for configurations in convex and general position."""
    if not in_convex_position(config):
        raise NotConvexPosition("pulling needs a configuration in convex position")
    last = config.labels[-1]
    cells = []
    for f in facets(config):
        if last in f.labels:
            continue
        if len(f.labels) != config.dim:
            raise NotFullDimensional("non-simplicial facet; not in general position")
        cells.append(f.labels | {last})
    return Triangulation(make_cells(cells))


def f_vector(cells) -> list[int]:
    """Face counts (f_0, ..., f_dim) of the pure complex generated by
    the given cells."""
    cells = make_cells(cells)
    sizes = {len(c) for c in cells}
    if len(sizes) != 1:
        raise NonPureComplex(f"cell sizes {sorted(sizes)}")
    size = sizes.pop()
    faces = [set() for _ in range(size)]
    for c in cells:
        cs = sorted(c)
        for k in range(1, size + 1):
            faces[k - 1].update(itertools.combinations(cs, k))
    return [len(s) for s in faces]


def h_vector(cells) -> list[int]:
    """h-vector by the alternating-sum transform of the f-vector."""
    f = f_vector(cells)
    big_d = len(f)  # cells have big_d vertices; complex dim = big_d - 1
    full = [1] + f  # f_{-1} = 1 for the empty face
    h = []
    for j in range(big_d + 1):
        h.append(
            sum(
                (-1) ** (j - k) * math.comb(big_d - k, big_d - j) * full[k]
                for k in range(j + 1)
            )
        )
    return h


def min_cells_bound(n: int, d: int, k: int) -> int:
    """Lower bound on the number of cells in any triangulation of a
    k-neighborly simplicial d-polytope with n vertices."""
    if not (1 <= k <= d // 2):
        raise ValueError(f"k={k} outside [1, {d // 2}]")
    if n <= d:
        raise ValueError("need n > d")
    return math.comb(n - d - 1 + k, k)
