import random

from unilcalc import intlinalg
from unilcalc.bundles import CHAR2, ChainBundle, build_universal_bundle, ker_coker_j
from unilcalc.presentations import GroupPresentation
from unilcalc.qoracle import (FinChainComplex, UnsupportedComplexError,
                              _assembled_d, _chain_dims, oracle_q_group,
                              oracle_twisted_q, segment_complex,
                              smith_normal_form)
from unilcalc.rings import F2, ZZ

import pytest


def seg_z():
    return segment_complex(build_universal_bundle(ZZ).segment(0))


def G(*orders):
    return GroupPresentation.from_invariant_factors(orders)


def test_smith_normal_form_reexport():
    d, u, v = smith_normal_form([[2, 0], [0, 3]])
    assert intlinalg.diagonal(d) == [1, 6]


def test_point_complex_matches_hom_identities():
    # single module of rank 2 in degree 0: the degree-0 groups are the
    # classical invariants of 2x2 integer matrices under transposition
    c = FinChainComplex(0, {0: 2}, {})
    sym = oracle_q_group(c, 0, "sym")       # ker(1 - T) = Sym_2(Z), free rank 3
    assert sym.orders == (0, 0, 0)
    quad = oracle_q_group(c, 0, "quad")     # coker(1 - T), free rank 3
    assert quad.orders == (0, 0, 0)
    hyper = oracle_q_group(c, 0, "hyper")   # Sym/Quad = Z/2 x Z/2
    assert hyper.orders == (2, 2)


def test_segment_table_over_z():
    c = seg_z()
    expected_sym = {-2: (2,), -1: (2,), 0: (4,), 1: (2,), 2: (), 3: ()}
    for n, orders in expected_sym.items():
        assert oracle_q_group(c, n, "sym").orders == orders
    for n in range(-2, 4):
        assert oracle_q_group(c, n, "hyper").orders == (2,)
    expected_quad = {-2: (), -1: (), 0: (2,), 1: (2,), 2: (2,), 3: (2,)}
    for n, orders in expected_quad.items():
        assert oracle_q_group(c, n, "quad").orders == orders


def test_complex_validation():
    with pytest.raises(UnsupportedComplexError):
        FinChainComplex(0, {0: 1, 5: 1}, {})
    with pytest.raises(UnsupportedComplexError):
        FinChainComplex(0, {0: 1, 1: 1, 2: 1},
                        {1: [[1]], 2: [[1]]})  # d^2 = 1 != 0


def _random_two_term(rng, modulus):
    r0 = rng.randrange(1, 3)
    r1 = rng.randrange(1, 3)
    d = [[rng.randrange(modulus) if modulus else rng.randrange(-2, 3)
          for _ in range(r1)] for _ in range(r0)]
    return FinChainComplex(modulus, {0: r0, 1: r1}, {1: d})


def test_assembled_differentials_square_to_zero():
    rng = random.Random(31)
    for _ in range(40):
        modulus = rng.choice([0, 2])
        c = _random_two_term(rng, modulus)
        for flavor in ("sym", "hyper", "quad"):
            for m in range(-2, 4):
                d1 = _assembled_d(c, m, flavor)
                d2 = _assembled_d(c, m + 1, flavor)
                prod = intlinalg.mat_mult(d1, d2)
                assert all((x % modulus if modulus else x) == 0
                           for row in prod for x in row)


def test_vanishing_above_twice_top_degree():
    # complexes concentrated in degrees <= 1 have no symmetric classes above 2
    rng = random.Random(33)
    for _ in range(25):
        c = _random_two_term(rng, 2)
        for k in (3, 4, 5):
            assert oracle_q_group(c, k, "sym").is_trivial


def test_twisted_f2_segments_and_exactness_orders():
    bundle = build_universal_bundle(F2)
    ker, coker = ker_coker_j(F2, "C2")
    for r in (0, 1, 2):
        seg = bundle.segment(r)
        top = oracle_twisted_q(seg, 2 * r)
        below = oracle_twisted_q(seg, 2 * r - 1)
        # boundary exact sequence: the orders multiply out
        assert top.order == 2 * ker.order()      # |Sym/Quad| * |ker|
        assert below.order == coker.order()
        assert top.presentation.orders == (4,)   # enumeration resolves the extension
        assert below.presentation.orders == (2,)
        assert oracle_twisted_q(seg, 2 * r + 1).order == 1


def test_twisted_rank2_f2_segment():
    bundle = ChainBundle(F2, CHAR2, 2, (F2.one, F2.one))
    seg = bundle.segment(1)
    top = oracle_twisted_q(seg, 2)
    assert top.order == 16 and top.exponent == 4
    below = oracle_twisted_q(seg, 1)
    assert below.order == 2 and below.presentation.orders == (2,)


def test_twisted_z_segment_via_boundary_route():
    seg = build_universal_bundle(ZZ).segment(0)
    assert oracle_twisted_q(seg, 2).order == 1
    assert oracle_twisted_q(seg, 1).presentation.orders == (2,)
    middle = oracle_twisted_q(seg, 0)
    assert middle.order == 8 and middle.extension is not None
    assert middle.extension.quotient.orders == (4,)
    assert middle.extension.sub.orders == (2,)
    assert oracle_twisted_q(seg, -1).presentation.orders == (2,)
    assert oracle_twisted_q(seg, -2).order == 1


def test_oracle_agrees_with_kernel_cokernel_route():
    # the degree-0 defect map over Z vanishes, so its kernel is the whole
    # degree-0 symmetric group and its cokernel the whole hyperquadratic one
    c = seg_z()
    ker, coker = ker_coker_j(ZZ, "J0")
    assert oracle_q_group(c, 0, "sym").same_group(ker)
    assert oracle_q_group(c, 0, "hyper").same_group(coker)
