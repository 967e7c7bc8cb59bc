import random

import pytest
from hypothesis import given, strategies as st

from nicehf import f2
from nicehf.f2 import F2Matrix, homology_rank, rank, rank_naive

BACKENDS = ["python"] + (["cython"] if f2._f2core is not None else [])


def random_matrix(rng: random.Random, rows: int, cols: int, density: float) -> F2Matrix:
    bits = []
    for _ in range(rows):
        v = 0
        for j in range(cols):
            if rng.random() < density:
                v |= 1 << j
        bits.append(v)
    return F2Matrix(rows, cols, bits)


@pytest.mark.parametrize("backend", BACKENDS)
def test_thousand_random_matrices(backend):
    rng = random.Random(12345)
    for _ in range(1000):
        rows, cols = rng.randint(0, 40), rng.randint(0, 140)
        m = random_matrix(rng, rows, cols, rng.choice((0.02, 0.1, 0.5)))
        before = list(m.bits)
        assert rank(m, backend) == rank_naive(m)
        assert m.bits == before


@pytest.mark.parametrize("backend", BACKENDS)
def test_structured(backend):
    assert rank(F2Matrix.identity(200), backend) == 200
    assert rank(F2Matrix.zeros(5, 70), backend) == 0
    assert rank(F2Matrix(0, 0), backend) == 0
    # all-ones has rank one; wide rows cross several 64-bit words
    full = (1 << 130) - 1
    assert rank(F2Matrix(7, 130, [full] * 7), backend) == 1


def test_backend_is_selected():
    assert f2.BACKEND in ("python", "cython")


@given(st.integers(1, 30), st.integers(1, 30), st.randoms(use_true_random=False))
def test_transpose_preserves_rank(r, c, rnd):
    m = random_matrix(rnd, r, c, 0.3)
    assert rank(m) == rank(m.transpose())
    assert m.transpose().transpose() == m


@given(st.integers(1, 12), st.randoms(use_true_random=False))
def test_matmul_against_dense(n, rnd):
    a = random_matrix(rnd, n, n + 1, 0.4)
    b = random_matrix(rnd, n + 1, n, 0.4)
    da, db = a.to_dense(), b.to_dense()
    want = [[sum(da[i][k] * db[k][j] for k in range(n + 1)) % 2 for j in range(n)] for i in range(n)]
    assert (a @ b).to_dense() == want


def test_from_entries_toggles():
    m = F2Matrix.from_entries(2, 2, [(0, 1), (0, 1), (1, 0)])
    assert m.to_dense() == [[0, 0], [1, 0]]


def test_rejects_bad_shapes():
    with pytest.raises(ValueError):
        F2Matrix(1, 2, [0b100])
    with pytest.raises(ValueError):
        F2Matrix(2, 2) @ F2Matrix(3, 3)


def test_homology_of_a_cone():
    # 0 -> F2 --id--> F2 -> 0 is acyclic
    d = F2Matrix.identity(1)
    assert homology_rank(d, F2Matrix.zeros(0, 1)) == 0
    assert homology_rank(F2Matrix.zeros(1, 0), F2Matrix.zeros(0, 1)) == 1
    with pytest.raises(ValueError):
        homology_rank(F2Matrix.identity(1), F2Matrix.identity(1))
