import random
from fractions import Fraction as F

from regtri.linprog import lp_feasible, solve_lp


def test_simple_max():
    # max x + y st x <= 2, y <= 3, x + y <= 4, x,y >= 0
    res = solve_lp(
        [1, 1],
        [[1, 0], [0, 1], [1, 1]],
        [2, 3, 4],
        nonneg=True,
    )
    assert res.optimal
    assert res.value == 4


def test_free_variables():
    # max x st x <= 5 with x free
    res = solve_lp([1], [[1]], [5])
    assert res.optimal and res.value == 5 and res.x == [F(5)]
    # free variable can go negative
    res = solve_lp([-1], [[-1]], [5])
    assert res.optimal and res.value == 5 and res.x == [F(-5)]


def test_equality_constraints():
    # max x st x + y = 3, x - y = 1
    res = solve_lp([1, 0], [], [], [[1, 1], [1, -1]], [3, 1])
    assert res.optimal
    assert res.x == [F(2), F(1)]


def test_infeasible():
    res = solve_lp([1], [[1], [-1]], [1, -2], nonneg=True)
    assert res.status == "infeasible"
    res = solve_lp([0, 0], [], [], [[1, 1], [1, 1]], [1, 2])
    assert res.status == "infeasible"


def test_unbounded():
    res = solve_lp([1], [], [])
    assert res.status == "unbounded"
    res = solve_lp([1], [[-1]], [0], nonneg=True)
    assert res.status == "unbounded"


def test_negative_rhs_handling():
    # max -x st -x <= -3  (x >= 3)
    res = solve_lp([-1], [[-1]], [-3], nonneg=True)
    assert res.optimal
    assert res.x == [F(3)]
    assert res.value == -3


def test_redundant_equality_rows():
    res = solve_lp([1, 1], [[1, 1]], [4], [[1, -1], [2, -2]], [0, 0], nonneg=True)
    assert res.optimal
    assert res.value == 4


def test_duals_certify_optimality():
    # weak-duality check: y >= 0, y^T A >= c, and y^T b == optimal value
    rng = random.Random(19)
    for _ in range(30):
        nv = rng.randint(1, 4)
        nr = rng.randint(nv, nv + 3)
        a = [[F(rng.randint(0, 6)) for _ in range(nv)] for _ in range(nr)]
        b = [F(rng.randint(1, 9)) for _ in range(nr)]
        c = [F(rng.randint(0, 5)) for _ in range(nv)]
        # ensure boundedness: every variable capped
        for j in range(nv):
            row = [F(0)] * nv
            row[j] = F(1)
            a.append(row)
            b.append(F(10))
        res = solve_lp(c, a, b, nonneg=True)
        assert res.optimal
        y = res.dual
        assert all(v >= 0 for v in y)
        for j in range(nv):
            assert sum(y[i] * a[i][j] for i in range(len(a))) >= c[j]
        assert sum(yi * bi for yi, bi in zip(y, b)) == res.value


def test_dual_signs_with_flipped_rows():
    # max x st -x <= -2, x <= 5: optimum 5, dual of first row 0
    res = solve_lp([1], [[-1], [1]], [-2, 5], nonneg=True)
    assert res.optimal and res.value == 5
    assert res.dual[0] == 0
    assert res.dual[1] == 1


def test_lp_feasible():
    assert lp_feasible([[1]], [3], nonneg=True) is not None
    assert lp_feasible([[1], [-1]], [1, -2], nonneg=True) is None


def test_random_feasibility_agrees_with_vertex_scan():
    # 2-variable systems: compare feasibility with a brute scan over
    # constraint intersections and axis points
    rng = random.Random(23)
    for _ in range(40):
        rows = []
        rhs = []
        for _ in range(4):
            rows.append([F(rng.randint(-4, 4)), F(rng.randint(-4, 4))])
            rhs.append(F(rng.randint(-4, 6)))
        got = lp_feasible(rows, rhs, nonneg=True) is not None
        # brute: candidate points = origin, single-constraint boundary
        # points on axes, and pairwise intersections
        cands = [(F(0), F(0))]
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                a1, b1 = rows[i], rhs[i]
                a2, b2 = rows[j], rhs[j]
                det = a1[0] * a2[1] - a1[1] * a2[0]
                if det != 0:
                    x = (b1 * a2[1] - a1[1] * b2) / det
                    y = (a1[0] * b2 - b1 * a2[0]) / det
                    cands.append((x, y))
            for ax in range(2):
                if rows[i][ax] != 0:
                    pt = [F(0), F(0)]
                    pt[ax] = rhs[i] / rows[i][ax]
                    cands.append(tuple(pt))
        brute = any(
            x >= 0
            and y >= 0
            and all(r[0] * x + r[1] * y <= b for r, b in zip(rows, rhs))
            for x, y in cands
        )
        if brute:
            assert got  # a feasible candidate point certifies feasibility
