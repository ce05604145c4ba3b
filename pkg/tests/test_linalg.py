import random
from fractions import Fraction

from regtri import linalg

from oracles import naive_det


def random_matrix(rng, n, scale=20):
    return [
        [Fraction(rng.randint(-scale, scale), rng.randint(1, 5)) for _ in range(n)]
        for _ in range(n)
    ]


def test_det_matches_cofactor_expansion():
    rng = random.Random(7)
    for n in range(1, 6):
        for _ in range(20):
            m = random_matrix(rng, n)
            assert linalg.det(m) == naive_det(m)


def test_det_sign():
    rng = random.Random(11)
    for _ in range(50):
        m = random_matrix(rng, 4)
        d = naive_det(m)
        assert linalg.det_sign(m) == (d > 0) - (d < 0)


def test_det_singular():
    m = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert linalg.det(m) == 0
    assert linalg.det_sign(m) == 0


def test_solve_roundtrip():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n)
        if naive_det(m) == 0:
            continue
        x = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
        b = [sum(m[i][j] * x[j] for j in range(n)) for i in range(n)]
        assert linalg.solve(m, b) == x


def test_solve_singular_returns_none():
    assert linalg.solve([[1, 1], [2, 2]], [1, 2]) is None


def test_rank():
    assert linalg.rank([[1, 0], [0, 1]]) == 2
    assert linalg.rank([[1, 2], [2, 4]]) == 1
    assert linalg.rank([[0, 0], [0, 0]]) == 0
    assert linalg.rank([[1, 2, 3], [4, 5, 6], [5, 7, 9]]) == 2


def test_kernel_vector_nullity_one():
    # columns of a 2x3 rank-2 matrix: one-dimensional kernel
    cols = [[1, 0], [0, 1], [1, 1]]
    v = linalg.kernel_vector(cols)
    assert v is not None
    assert any(x != 0 for x in v)
    for i in range(2):
        assert sum(cols[j][i] * v[j] for j in range(3)) == 0


def test_kernel_vector_rejects_other_nullities():
    assert linalg.kernel_vector([[1, 0], [0, 1]]) is None  # trivial kernel
    assert linalg.kernel_vector([[1, 0], [2, 0], [3, 0], [0, 1]]) is None


def test_kernel_vector_random_dependences():
    rng = random.Random(5)
    for _ in range(20):
        d = rng.randint(2, 4)
        # d+2 random points homogenized: affine dependence is the kernel
        pts = [[Fraction(rng.randint(-9, 9)) for _ in range(d)] for _ in range(d + 2)]
        cols = [p + [Fraction(1)] for p in pts]
        v = linalg.kernel_vector(cols)
        if v is None:
            continue  # degenerate sample
        for i in range(d + 1):
            assert sum(cols[j][i] * v[j] for j in range(d + 2)) == 0
