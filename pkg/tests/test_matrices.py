import random

import pytest

from unilcalc.matrices import (Matrix, NotInvertibleError, kernel_summand_basis,
                               left_inverse, linear_solve, random_unimodular,
                               right_inverse)
from unilcalc.rings import F2, ZX, ZZ, Zmod, poly_ring

Z4 = Zmod(4)
Z4X = poly_ring(Z4)


def M(ring, data):
    return Matrix.from_literal(ring, data)


def test_matmul_and_blocks():
    a = M(ZZ, [[1, 2], [3, 4]])
    b = M(ZZ, [[0, 1], [1, 0]])
    assert a @ b == M(ZZ, [[2, 1], [4, 3]])
    blk = Matrix.block([[a, Matrix.zeros(ZZ, 2, 1)],
                        [Matrix.zeros(ZZ, 1, 2), Matrix.identity(ZZ, 1)]])
    assert blk == M(ZZ, [[1, 2, 0], [3, 4, 0], [0, 0, 1]])


def test_det_examples():
    assert M(ZZ, [[0, 1], [-1, 0]]).det() == ZZ.element(1)
    assert M(ZX, [[[0, 2], [1]], [[1], []]]).det() == ZX.element([-1])
    assert M(Z4, [[2, 1], [1, 2]]).det() == Z4.element(3)
    d = M(Z4X, [[[1, 2], [0]], [[0], [1]]]).det()
    assert d == Z4X.element([1, 2]) and d.is_unit()


def test_det_subset_expansion_matches_bareiss():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randrange(1, 5)
        data = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)]
        over_z = M(ZZ, data).det().data
        over_z4 = M(Z4, data).det().data
        assert over_z4 == over_z % 4


def test_inverse_examples():
    j = M(ZZ, [[0, 1], [-1, 0]])
    assert j.inverse() == M(ZZ, [[0, -1], [1, 0]])
    p = M(ZX, [[[0, 2], [1]], [[1], []]])
    assert p.inverse() == M(ZX, [[[], [1]], [[1], [0, -2]]])
    with pytest.raises(NotInvertibleError):
        M(ZZ, [[2]]).inverse()


def test_inverse_mod_2k():
    rng = random.Random(9)
    for q in (2, 4, 8, 16):
        ring = Zmod(q)
        for _ in range(50):
            n = rng.randrange(1, 5)
            m = random_unimodular(ring, n, rng, steps=8)
            assert m.inverse() @ m == Matrix.identity(ring, n)


def test_inverse_roundtrip_triangular_products():
    rng = random.Random(13)
    for _ in range(200):
        n = rng.randrange(1, 5)
        m = random_unimodular(ZZ, n, rng, steps=10)
        assert m.inverse() @ m == Matrix.identity(ZZ, n)


def test_linear_solve_over_z():
    a = M(ZZ, [[2, 0], [0, 3]])
    b = M(ZZ, [[4], [9]])
    x = linear_solve(a, b)
    assert a @ x == b
    assert linear_solve(M(ZZ, [[2]]), M(ZZ, [[1]])) is None


def test_linear_solve_mod():
    a = M(Z4, [[2]])
    assert linear_solve(a, M(Z4, [[2]])) is not None
    assert linear_solve(a, M(Z4, [[1]])) is None


def test_linear_solve_poly():
    a = M(ZX, [[[0, 1]]])          # multiplication by x
    b = M(ZX, [[[0, 0, 3]]])       # 3x^2
    x = linear_solve(a, b)
    assert a @ x == b
    assert linear_solve(a, M(ZX, [[[1]]])) is None  # 1 not divisible by x


def test_left_right_inverse():
    inc = M(ZZ, [[1], [0]])
    li = left_inverse(inc)
    assert li @ inc == Matrix.identity(ZZ, 1)
    proj = M(ZZ, [[1, 0]])
    ri = right_inverse(proj)
    assert proj @ ri == Matrix.identity(ZZ, 1)
    assert left_inverse(M(ZZ, [[2], [0]])) is None


def test_kernel_summand_basis():
    k = kernel_summand_basis(M(ZZ, [[1, 1]]))
    assert k.cols == 1
    assert (M(ZZ, [[1, 1]]) @ k).is_zero
    k = kernel_summand_basis(M(F2, [[1, 1, 0]]))
    assert k.cols == 2
    assert (M(F2, [[1, 1, 0]]) @ k).is_zero
    k = kernel_summand_basis(M(Z4, [[1, 2]]))
    assert k.cols == 1
    assert (M(Z4, [[1, 2]]) @ k).is_zero
