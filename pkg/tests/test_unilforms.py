import random

import pytest

from unilcalc.matrices import Matrix
from unilcalc.nilforms import InvalidFormError
from unilcalc.rings import F2, ZZ, Zmod
from unilcalc.unilforms import (SubLagrangianPair, check_lagrangian,
                                check_sublagrangian, direct_sum, empty_pair,
                                make_unilform, random_unilform,
                                sublagrangian_reduction, unilforms_equal,
                                validate_unilform)

Z4 = Zmod(4)


def M(ring, data):
    return Matrix.from_literal(ring, data)


def U(ring, eps, mu1, mum):
    return make_unilform(ring, eps, M(ring, mu1), M(ring, mum))


def test_validate_examples():
    report = validate_unilform(U(ZZ, 1, [[1]], [[0]]))
    assert report.ok and report.least_power == 1
    assert not validate_unilform(U(ZZ, 1, [[1]], [[1]])).ok
    assert validate_unilform(U(ZZ, -1, [[2]], [[3]])).ok
    assert validate_unilform(U(Z4, 1, [[1]], [[1]])).ok  # 4ab = 0 mod 4


def test_check_sublagrangian_examples():
    u = U(ZZ, 1, [[1]], [[0]])
    assert check_sublagrangian(u, empty_pair(u))
    full = SubLagrangianPair(M(ZZ, [[1]]), Matrix.zeros(ZZ, 1, 0))
    assert not check_sublagrangian(u, full)  # mu_1 restricts nontrivially
    u0 = U(ZZ, 1, [[0]], [[0]])
    assert check_sublagrangian(u0, full)


def test_check_lagrangian_examples():
    u0 = U(ZZ, 1, [[0]], [[0]])
    full = SubLagrangianPair(M(ZZ, [[1]]), Matrix.zeros(ZZ, 1, 0))
    assert check_lagrangian(u0, full)
    assert not check_lagrangian(u0, empty_pair(u0))


def test_reduction_of_lagrangian_gives_rank_zero():
    u0 = U(ZZ, 1, [[0]], [[0]])
    full = SubLagrangianPair(M(ZZ, [[1]]), Matrix.zeros(ZZ, 1, 0))
    reduced = sublagrangian_reduction(u0, full)
    assert reduced.rank == 0


def test_reduction_by_zero_pair_is_identity():
    for ring in (ZZ, F2, Z4):
        for seed in range(10):
            u = random_unilform(ring, 3, -1, seed)
            assert unilforms_equal(sublagrangian_reduction(u, empty_pair(u)), u)


def test_reduction_rejects_non_sublagrangian():
    u = U(ZZ, 1, [[1]], [[0]])
    full = SubLagrangianPair(M(ZZ, [[1]]), Matrix.zeros(ZZ, 1, 0))
    with pytest.raises(InvalidFormError):
        sublagrangian_reduction(u, full)


def test_direct_sum():
    a = U(ZZ, 1, [[1]], [[0]])
    b = U(ZZ, 1, [[2]], [[0]])
    s = direct_sum(a, b)
    assert s.rank == 2
    assert s.mu1.representative.to_literal() == [[1, 0], [0, 2]]
    zero_rank = make_unilform(ZZ, 1, Matrix.zeros(ZZ, 0, 0),
                              Matrix.zeros(ZZ, 0, 0))
    assert unilforms_equal(direct_sum(a, zero_rank), a)
    assert validate_unilform(s).ok


def test_direct_sum_commutative_up_to_permutation():
    a = U(Z4, -1, [[1]], [[2]])
    b = U(Z4, -1, [[3]], [[1]])
    ab = direct_sum(a, b)
    ba = direct_sum(b, a)
    swap = M(Z4, [[0, 1], [1, 0]])
    swapped = make_unilform(
        Z4, -1,
        swap.transpose() @ ba.mu1.representative @ swap,
        swap.inverse() @ ba.mu_minus1.representative @ swap.inverse().transpose())
    assert unilforms_equal(ab, swapped)


def test_random_unilforms_are_valid():
    for ring in (ZZ, F2, Z4):
        for seed in range(30):
            for rank in (1, 2, 3, 4):
                u = random_unilform(ring, rank, -1 if seed % 2 else 1, seed)
                assert u.rank == rank
                assert validate_unilform(u).ok


def test_stabilization_exponent_growth_report(capsys):
    # empirical observation on the corpus, reported rather than asserted
    from unilcalc.correspondences import map_c, map_k, map_r
    grew = 0
    total = 0
    for seed in range(20):
        u = random_unilform(ZZ, 2, 1, seed)
        base = validate_unilform(u).least_power
        stab = map_c(map_k(map_r(u)))
        stabilized = validate_unilform(stab).least_power
        total += 1
        if stabilized > base + 1:
            grew += 1
    print(f"stabilization exponent grew by more than one in {grew}/{total} cases")
