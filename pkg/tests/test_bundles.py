import random

import pytest

from unilcalc.bundles import (NonCycleError, UnsupportedQueryError,
                              build_universal_bundle, c_group,
                              coker_frobenius_presentation,
                              decompose_hypothesis_check,
                              frobenius_coker_reduce,
                              frobenius_coker_reduce_with_witness,
                              frobenius_kernel, i_group, j_map, j_map_reduced,
                              k_group, ker_coker_j, segment_q_groups,
                              square_decompose, wu_class, wu_universality)
from unilcalc.forms import sym_quotient_reduce
from unilcalc.matrices import Matrix
from unilcalc.rings import F2, F2X, ZX, ZZ, UnsupportedRingError, frobenius, poly_ring, Zmod


def F(coeffs):
    return F2X.element(coeffs)


def test_build_universal_bundle():
    b = build_universal_bundle(ZZ)
    assert (b.family, b.rank) == ("order2free", 1)
    assert b.x_matrix == Matrix.from_literal(ZZ, [[1]])
    b = build_universal_bundle(ZX)
    assert (b.family, b.rank) == ("order2free", 2)
    assert b.x_matrix == Matrix.from_literal(ZX, [[[1], []], [[], [0, 1]]])
    b = build_universal_bundle(F2X)
    assert (b.family, b.rank) == ("char2", 2)
    with pytest.raises(UnsupportedRingError):
        build_universal_bundle(Zmod(4))


def test_wu_class_values():
    bz = build_universal_bundle(ZZ)
    assert wu_class(bz, 0, [1]) == ZZ.element(1)
    assert wu_class(bz, 0, [2]) == ZZ.element(0)
    with pytest.raises(NonCycleError):
        wu_class(bz, 1, [1])
    assert wu_class(bz, 1, [0]).is_zero
    bzx = build_universal_bundle(ZX)
    assert wu_class(bzx, 0, [0, 1]) == ZX.x
    assert wu_class(bzx, 0, [1, 0]) == ZX.one
    # well-defined on degree-0 homology: shifting by 2 does not change it
    assert wu_class(bzx, 0, [2, 1]) == wu_class(bzx, 0, [0, 1])


def test_wu_universality():
    for ring in (ZZ, ZX, F2, F2X):
        assert wu_universality(build_universal_bundle(ring))


def test_j_map_values():
    for a in range(4):
        assert j_map(ZZ, "J0", Matrix.from_literal(ZZ, [[a]])).is_zero
    m = Matrix.from_literal(ZX, [[[0], [1]], [[1], [0]]])
    image = j_map(ZX, "J0", m)
    expected = sym_quotient_reduce(
        Matrix.from_literal(ZX, [[[0, -1], [1]], [[1], [-1]]]), "Quad")
    assert image == expected
    # char-2 level: the two diagonal entries follow the closed formulas
    a, b, d = F([0, 1]), F([1]), F([1, 1])
    m2 = Matrix(F2X, [[a, b], [b, d]])
    image2 = j_map(F2X, "C2", m2)
    diag0 = frobenius(a) + a + F2X.x * frobenius(b)
    diag1 = frobenius(b) + d + F2X.x * frobenius(d)
    assert image2.representative.entry(0, 0) == diag0
    assert image2.representative.entry(1, 1) == diag1
    assert image2.representative.entry(0, 1).is_zero


def test_j_map_domain_validation():
    with pytest.raises(ValueError):
        j_map(ZZ, "J0", Matrix.from_literal(ZZ, [[5]]))  # out of residue range
    with pytest.raises(ValueError):
        j_map(ZZ, "J1", Matrix.from_literal(ZZ, [[2]]))
    with pytest.raises(ValueError):
        j_map(ZX, "J0", Matrix.from_literal(ZX, [[[0], [1]], [[2], [0]]]))
    with pytest.raises(UnsupportedRingError):
        j_map(F2X, "J0", Matrix.from_literal(F2X, [[[0], []], [[], []]]))


def test_j_map_well_defined_on_cosets():
    rng = random.Random(41)
    for level, diag_scale, off_scale in (("J0", 4, 2), ("J1", 2, 2)):
        for _ in range(40):
            lit = [[0, 0], [0, 0]]
            for i in range(2):
                for j in range(i, 2):
                    scale = diag_scale if i == j else off_scale
                    lit[i][j] = lit[j][i] = rng.randrange(scale)
            m = Matrix.from_literal(ZZ, [[lit[0][0]]])
            base = j_map(ZZ, level, m)
            shift = (diag_scale * rng.randrange(-2, 3))
            shifted = Matrix.from_literal(ZZ, [[lit[0][0] + shift]])
            assert j_map_reduced(ZZ, level, shifted) == base


def test_j_map_well_defined_rank2():
    rng = random.Random(43)
    for _ in range(25):
        lit = [[[0], [0]], [[0], [0]]]
        for i in range(2):
            for j in range(i, 2):
                scale = 4 if i == j else 2
                coeffs = [rng.randrange(scale) for _ in range(2)]
                lit[i][j] = lit[j][i] = coeffs
        m = Matrix.from_literal(ZX, lit)
        base = j_map(ZX, "J0", m)
        chi = Matrix.from_literal(
            ZX, [[[rng.randrange(-2, 3)] for _ in range(2)] for _ in range(2)])
        denom = (chi + chi.transpose()).scale(ZX.element(2))
        assert j_map_reduced(ZX, "J0", m + denom) == base


def test_square_decompose_examples():
    b, d = square_decompose(F([]))
    assert b.is_zero and d.is_zero
    b, d = square_decompose(F([0, 1]))
    assert (b, d) == (F([1]), F([1]))
    b, d = square_decompose(F([0, 0, 0, 1]))
    assert (b, d) == (F([1]), F([1, 1]))


def test_square_decompose_round_trip_random():
    rng = random.Random(47)
    for _ in range(200):
        p = F([rng.randrange(2) for _ in range(rng.randrange(20))])
        b, d = square_decompose(p)
        assert frobenius(b) + d + F2X.x * frobenius(d) == p


def test_decompose_hypothesis_check():
    assert decompose_hypothesis_check(5)


def test_frobenius_coker_reduce_examples():
    assert frobenius_coker_reduce(F([0, 0, 1])) == F([0, 1])
    assert frobenius_coker_reduce(F([0, 0, 0, 1, 1])) == F([0, 1, 0, 1])
    assert frobenius_coker_reduce(F([1, 0, 1]), mod_constants=True) == F([0, 1])
    nf = frobenius_coker_reduce(F([0, 0, 0, 0, 1]))
    assert nf == F([0, 1])  # x^4 -> x^2 -> x


def test_frobenius_coker_reduce_witness():
    rng = random.Random(53)
    for _ in range(100):
        p = F([rng.randrange(2) for _ in range(rng.randrange(24))])
        nf, q = frobenius_coker_reduce_with_witness(p)
        assert p + nf == frobenius(q) + q
        # idempotent and even-free above degree 0
        assert frobenius_coker_reduce(nf) == nf
        assert all(i % 2 == 1 or i == 0
                   for i, c in enumerate(nf.coeffs()) if c)


def test_frobenius_kernel():
    basis = frobenius_kernel(16)
    assert [k.coeffs() for k in basis] == [(1,)]


def test_coker_presentation_exponents():
    pres = coker_frobenius_presentation(9)
    assert pres.families[0].exponents == (0, 1, 3, 5, 7, 9)
    pres = coker_frobenius_presentation(9, mod_constants=True)
    assert pres.families[0].exponents == (1, 3, 5, 7, 9)
    assert pres.f2_dimension() == 5


def test_ker_coker_values():
    ker, coker = ker_coker_j(ZZ, "J0")
    assert ker.orders == (4,) and coker.orders == (2,)
    ker, coker = ker_coker_j(ZZ, "J1")
    assert ker.orders == (2,) and coker.orders == (2,)
    ker, coker = ker_coker_j(F2, "C2")
    assert ker.orders == (2,) and coker.orders == (2,)
    ker, coker = ker_coker_j(F2X, "C2", degree=9)
    assert ker.orders == (2,)
    assert coker.families[0].exponents == (0, 1, 3, 5, 7, 9)
    ker, coker = ker_coker_j(ZX, "J0", degree=5)
    assert ker.orders == (4,)
    assert [f.exponents for f in ker.families] == [(1, 2, 3, 4, 5),
                                                   (0, 1, 2, 3, 4, 5)]
    assert coker.families[0].exponents == (0, 1, 3, 5)
    ker, _ = ker_coker_j(ZX, "J1", degree=5)
    assert ker.orders == (2,)


def test_relative_families():
    k0 = k_group(0, degree=6)
    assert len(k0.families) == 2
    assert all(f.order == 2 and f.exponents == tuple(range(7))
               for f in k0.families)
    assert k_group(1).is_trivial
    for n in (-1, 0):
        cn = c_group(n, degree=9)
        assert cn.families[0].exponents == (1, 3, 5, 7, 9)
    assert i_group(2).is_trivial
    with pytest.raises(UnsupportedQueryError):
        k_group(2)


def test_segment_q_groups_closed_forms():
    assert segment_q_groups(ZZ, 0, "sym").orders == (4,)
    assert segment_q_groups(ZZ, 1, "sym").orders == (2,)
    assert segment_q_groups(ZZ, 3, "sym").is_trivial
    assert segment_q_groups(ZZ, -1, "sym").orders == (2,)
    assert segment_q_groups(ZZ, 2, "hyper").orders == (2,)
    assert segment_q_groups(ZZ, -2, "quad").is_trivial
    assert segment_q_groups(ZZ, 0, "quad").orders == (2,)
    assert segment_q_groups(ZZ, 2, "quad").orders == (2,)
    pres = segment_q_groups(ZX, 0, "sym", degree=3)
    orders = sorted(f.order for f in pres.families)
    assert orders == [2, 4, 4]
    with pytest.raises(UnsupportedQueryError):
        segment_q_groups(ZX, 1, "quad")
    with pytest.raises(UnsupportedRingError):
        segment_q_groups(F2, 0, "sym")
