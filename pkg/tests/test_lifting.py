import random
from fractions import Fraction as F

import pytest

from regtri.errors import NotAVertex, NotConvexPosition, ValidationFailed
from regtri.geometry import (
    PointConfiguration,
    centroid,
    cyclic_configuration,
    facets,
    is_general_position,
    orientation,
)
from regtri.lifting import (
    LiftSpec,
    auto_epsilons,
    contraction,
    double_contraction,
    lex_lift,
    perturb_general,
)


def pentagon():
    return PointConfiguration.from_rows(
        [[0, 0], [4, 0], [5, 3], [2, 5], [-1, 3]]
    )


def apex_over(cfg):
    return tuple(centroid(cfg)) + (F(1),)


def test_liftspec_invariants():
    LiftSpec.make(["0", "1"], ["1/2", "1/4", "1/8"])
    with pytest.raises(ValueError):
        LiftSpec.make(["0", "-1"], ["1/2"])  # apex must sit above
    with pytest.raises(ValueError):
        LiftSpec.make(["0", "1"], ["1/4", "1/2"])  # not decreasing
    with pytest.raises(ValueError):
        LiftSpec.make(["0", "1"], ["1", "1/2"])  # outside (0,1)


def test_liftspec_json_roundtrip():
    spec = LiftSpec.make(["1/3", "1"], ["1/2", "1/4"])
    assert LiftSpec.from_json(spec.to_json()) == spec


def test_lift_segment_base():
    base = PointConfiguration.from_rows([[0], [1], [2]])
    spec = auto_epsilons(base, (1, 1))
    lc = lex_lift(base, spec)
    assert lc.lifted.dim == 2
    assert lc.lifted.n == 4
    assert lc.apex_label == 4
    # lifted points lie on the open segment apex -> (p_i, 0)
    for lab, eps in zip(base.labels, spec.epsilons):
        lp = lc.lifted.point(lab)
        expect = tuple(
            (1 - eps) * a + eps * x
            for a, x in zip(spec.apex, tuple(base.point(lab)) + (F(0),))
        )
        assert lp == expect


def test_lift_simplex_gives_simplex():
    base = PointConfiguration.from_rows([[0, 0], [1, 0], [0, 1]])
    lc = lex_lift(base, auto_epsilons(base, apex_over(base)))
    # 4 generic points in dim 3: every triple is a facet
    assert len(facets(lc.lifted)) == 4


def test_large_epsilons_fail_validation():
    # near-flat chain on a pentagon in an adversarial insertion order
    rows = [[0, 0], [4, 0], [5, 3], [2, 5], [-1, 3]]
    base = PointConfiguration.from_rows([rows[i] for i in (0, 1, 4, 2, 3)])
    bad = LiftSpec(
        apex_over(base), tuple(F(99, 100) - F(i, 1000) for i in range(base.n))
    )
    with pytest.raises(ValidationFailed) as exc_info:
        lex_lift(base, bad)
    assert exc_info.value.label in base.labels
    assert len(exc_info.value.hyperplane_labels) == 3


def test_auto_epsilons_validates_pentagon():
    base = pentagon()
    spec = auto_epsilons(base, apex_over(base))
    lex_lift(base, spec)  # must not raise


def test_lift_requires_convex_position():
    cfg = pentagon().append_point((2, 2))
    with pytest.raises(NotConvexPosition):
        lex_lift(cfg, LiftSpec(apex_over(cfg), tuple(F(1, 2) ** (i + 1) for i in range(6))))


def test_lift_orientation_preserved_under_apex_contraction():
    base = pentagon()
    lc = lex_lift(base, auto_epsilons(base, apex_over(base)))
    back = contraction(lc.lifted, lc.apex_label)
    assert back.labels == base.labels
    for triple in [(1, 2, 3), (2, 4, 5), (1, 3, 5), (3, 4, 5)]:
        assert orientation(back, triple) == orientation(base, triple)


def test_contraction_triangle():
    tri = PointConfiguration.from_rows([[0, 0], [4, 0], [0, 4]])
    out = contraction(tri, 1)
    assert out.dim == 1
    assert out.labels == (2, 3)
    assert out.point(2) != out.point(3)


def test_contraction_requires_vertex():
    cfg = pentagon().append_point((2, 2))
    with pytest.raises(NotAVertex):
        contraction(cfg, 6)


def test_contraction_cyclic_gives_lower_cyclic():
    # vertex figure of the last vertex of cyclic(d, n) has the labeled
    # facet structure of cyclic(d-1, n-1) under the positional relabel
    for d, n in [(3, 6), (4, 7)]:
        cfg = cyclic_configuration(d, list(range(1, n + 1)))
        fig = contraction(cfg, n)
        low = cyclic_configuration(d - 1, list(range(1, n)))
        got = {frozenset(f.labels) for f in facets(fig)}
        expect = {frozenset(f.labels) for f in facets(low)}
        assert got == expect, (d, n)


def test_double_contraction_of_double_lift_recovers_base_facets():
    base = pentagon()
    lc1 = lex_lift(base, auto_epsilons(base, apex_over(base)))
    mid = lc1.lifted
    lc2 = lex_lift(mid, auto_epsilons(mid, apex_over(mid), check_convex=False),
                   check_convex=False)
    back = double_contraction(lc2.lifted, lc1.apex_label, lc2.apex_label)
    assert {f.labels for f in facets(back)} == {f.labels for f in facets(base)}


def test_perturb_general():
    cfg = PointConfiguration.from_rows(
        [[0, 0], [2, 0], [0, 2], [2, 2], [1, 1]]
    )
    rest = cfg.delete([5])
    assert not is_general_position(rest, cfg.point(5))
    out = perturb_general(cfg, 5, seed=2)
    assert is_general_position(out.delete([5]), out.point(5))
    # already generic points come back unchanged
    again = perturb_general(out, 5, seed=3)
    assert again == out


def test_perturb_deterministic():
    cfg = PointConfiguration.from_rows([[0, 0], [2, 0], [0, 2], [2, 2], [1, 1]])
    assert perturb_general(cfg, 5, seed=9) == perturb_general(cfg, 5, seed=9)
