import random

from unilcalc.forms import (in_coboundary_image, is_nonsingular_quadratic,
                            is_skew_zero_diagonal, quad_class_normalize,
                            quad_classes_equal, sym_quotient_reduce, symmetrize)
from unilcalc.matrices import Matrix
from unilcalc.rings import F2, F2X, ZX, ZZ, Zmod

Z4 = Zmod(4)


def M(ring, data):
    return Matrix.from_literal(ring, data)


def test_symmetrize_examples():
    assert symmetrize(M(ZZ, [[0, 1], [0, 0]]), 1) == M(ZZ, [[0, 1], [1, 0]])
    assert symmetrize(M(ZZ, [[0, 1], [0, 0]]), -1) == M(ZZ, [[0, 1], [-1, 0]])
    assert symmetrize(M(ZZ, [[1]]), 1) == M(ZZ, [[2]])


def test_quad_class_normalize_examples():
    c = quad_class_normalize(M(ZZ, [[0, 0], [1, 0]]), 1)
    assert c.representative == M(ZZ, [[0, 1], [0, 0]])
    c = quad_class_normalize(M(ZZ, [[0, 0], [0, 0]]), -1)
    assert c.is_zero
    c = quad_class_normalize(M(ZZ, [[2, 0], [0, 0]]), -1)
    assert c.is_zero


def test_quad_class_well_defined():
    rng = random.Random(21)
    for ring in (ZZ, Z4, F2):
        for eps in (1, -1):
            for _ in range(50):
                n = rng.randrange(1, 4)
                psi = M(ring, [[rng.randrange(-3, 4) for _ in range(n)]
                               for _ in range(n)])
                chi = M(ring, [[rng.randrange(-3, 4) for _ in range(n)]
                               for _ in range(n)])
                shift = chi - (chi.transpose() if eps == 1 else -chi.transpose())
                assert quad_classes_equal(psi, psi + shift, eps)


def test_symmetrize_factors_through_classes():
    rng = random.Random(22)
    for eps in (1, -1):
        for _ in range(50):
            psi = M(ZZ, [[rng.randrange(-4, 5) for _ in range(3)] for _ in range(3)])
            chi = M(ZZ, [[rng.randrange(-4, 5) for _ in range(3)] for _ in range(3)])
            shift = chi - (chi.transpose() if eps == 1 else -chi.transpose())
            assert symmetrize(psi, eps) == symmetrize(psi + shift, eps)
            can = quad_class_normalize(psi, eps).representative
            assert symmetrize(can, eps) == symmetrize(psi, eps)


def test_coboundary_membership_two_routes_agree():
    rng = random.Random(23)
    for ring in (Z4, F2):
        for _ in range(100):
            m = M(ring, [[rng.randrange(4) for _ in range(3)] for _ in range(3)])
            assert in_coboundary_image(m, 1) == is_skew_zero_diagonal(m)


def test_sym_quotient_examples():
    assert sym_quotient_reduce(M(ZZ, [[5]]), "Quad").representative == M(ZZ, [[1]])
    assert sym_quotient_reduce(M(ZZ, [[5]]), "2Quad").representative == M(ZZ, [[1]])
    assert sym_quotient_reduce(M(F2X, [[[], [1]], [[1], []]]), "Quad").is_zero


def test_sym_quotient_idempotent_and_additive():
    rng = random.Random(24)
    for ring in (ZZ, ZX, F2X):
        for kind in ("Quad", "2Quad", "2Sym", "4Sym"):
            for _ in range(25):
                n = rng.randrange(1, 3)

                def sym(ring=ring, n=n):
                    raw = [[0] * n for _ in range(n)]
                    for i in range(n):
                        for j in range(i, n):
                            v = rng.randrange(-8, 9)
                            raw[i][j] = raw[j][i] = v
                    data = [[[v] if ring.is_poly else v for v in row] for row in raw]
                    return M(ring, data)

                a, b = sym(), sym()
                ra = sym_quotient_reduce(a, kind)
                assert sym_quotient_reduce(ra.representative, kind) == ra
                lhs = sym_quotient_reduce(a + b, kind)
                assert (ra + sym_quotient_reduce(b, kind)) == lhs


def test_is_nonsingular_quadratic_examples():
    assert is_nonsingular_quadratic(M(ZZ, [[0, 1], [0, 0]]), -1)
    assert not is_nonsingular_quadratic(M(ZZ, [[1]]), 1)
    psi = M(ZX, [[[0, 1], [1]], [[], []]])
    assert is_nonsingular_quadratic(psi, 1)
