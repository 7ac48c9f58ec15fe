import pytest

from unilcalc.correspondences import (PolyQuadraticForm,
                                      augmentation_lagrangian_check,
                                      map_c, map_c_inverse, map_j, map_k,
                                      map_r, verify_ckr, verify_rc_equals_j)
from unilcalc.forms import quad_classes_equal, symmetrize
from unilcalc.matrices import Matrix
from unilcalc.nilforms import (InvalidFormError, LagrangianWitness, NilForm,
                               hyperbolic_nilform_generator)
from unilcalc.rings import F2, ZZ, Zmod, poly_ring
from unilcalc.unilforms import make_unilform, random_unilform

Z4 = Zmod(4)


def M(ring, data):
    return Matrix.from_literal(ring, data)


def worked_unilform():
    return make_unilform(ZZ, 1, M(ZZ, [[1]]), M(ZZ, [[0]]))


def worked_nilform():
    return NilForm(ZZ, 2, -1, Matrix.zeros(ZZ, 2, 2), Matrix.zeros(ZZ, 2, 2),
                   M(ZZ, [[0, 1], [0, 0]]))


def rank_zero_unilform(ring=ZZ, eps=1):
    z = Matrix.zeros(ring, 0, 0)
    return make_unilform(ring, eps, z, z)


def test_map_r_worked_example():
    f = map_r(worked_unilform())
    assert f.psi0.to_literal() == [[0, 1], [0, 0]]
    assert f.psi1.to_literal() == [[1, 0], [0, 0]]
    assert f.rank == 2 and f.epsilon == 1


def test_map_r_rank_zero():
    f = map_r(rank_zero_unilform())
    assert f.rank == 0


def test_map_r_rejects_invalid():
    bad = make_unilform(ZZ, 1, M(ZZ, [[1]]), M(ZZ, [[1]]))
    with pytest.raises(InvalidFormError):
        map_r(bad)


def test_map_c_worked_example():
    u = map_c(worked_nilform())
    assert u.mu1.is_zero
    assert u.mu_minus1.representative.to_literal() == [[0, -1], [0, 0]]


def test_map_c_rank_zero():
    z = NilForm(ZZ, 0, 1, Matrix.zeros(ZZ, 0, 0), Matrix.zeros(ZZ, 0, 0),
                Matrix.zeros(ZZ, 0, 0))
    assert map_c(z).rank == 0


def test_map_j_factorization():
    z = worked_nilform()
    f = map_j(z)
    assert f.psi0 == z.psi and f.psi1.is_zero
    # with a nonzero endomorphism the symmetrization acquires the x-factor
    for seed in range(5):
        z2, _ = hyperbolic_nilform_generator(seed, 4, -1, ZZ)
        f2 = map_j(z2)  # the factorization identity is asserted inside
        rx = poly_ring(ZZ)
        phi = symmetrize(z2.psi, z2.epsilon).promote(rx)
        factor = Matrix.identity(rx, 4) - z2.nu.promote(rx).scale(rx.x)
        assert f2.symmetrization() == phi @ factor


def test_map_k_examples():
    f = map_r(worked_unilform())
    z = map_k(f)
    assert z.nu.to_literal() == [[0, 0], [-2, 0]]
    assert z.psi == f.psi0
    # psi1 = 0 gives the zero endomorphism
    f0 = PolyQuadraticForm(ZZ, 2, -1, M(ZZ, [[0, 1], [0, 0]]),
                           Matrix.zeros(ZZ, 2, 2))
    z0 = map_k(f0)
    assert z0.nu.is_zero and z0.delta_psi.is_zero
    with pytest.raises(InvalidFormError):
        map_k(PolyQuadraticForm(ZZ, 1, 1, M(ZZ, [[1]]), M(ZZ, [[0]])))


def test_jk_round_trip_is_identity_on_linear_forms():
    for ring in (ZZ, F2, Z4):
        for seed in range(25):
            u = random_unilform(ring, 2, -1 if seed % 2 else 1, seed)
            f = map_r(u)
            z = map_k(f)
            g = map_j(z)
            assert g.psi0 == f.psi0 and g.psi1 == f.psi1


def test_map_c_inverse_examples():
    assert map_c_inverse(rank_zero_unilform()).rank == 0
    z = map_c_inverse(worked_unilform())
    assert z.nu.to_literal() == [[0, 0], [-2, 0]]


def test_map_c_inverse_equals_k_after_r():
    for ring in (ZZ, F2, Z4):
        for seed in range(25):
            for rank in (1, 2, 3):
                u = random_unilform(ring, rank, -1 if seed % 2 else 1, seed)
                assert map_k(map_r(u)) == map_c_inverse(u)


def test_augmentation_lagrangian_witness():
    u = worked_unilform()
    f = map_r(u)
    inc = Matrix.block([[Matrix.identity(ZZ, 1)], [Matrix.zeros(ZZ, 1, 1)]])
    assert augmentation_lagrangian_check(f, inc)
    # with mu_-1 = 1 the dual summand carries a nontrivial restricted class
    u2 = make_unilform(ZZ, 1, M(ZZ, [[0]]), M(ZZ, [[1]]))
    f2 = map_r(u2)
    assert augmentation_lagrangian_check(f2, inc)
    wrong = Matrix.block([[Matrix.zeros(ZZ, 1, 1)], [Matrix.identity(ZZ, 1)]])
    assert not augmentation_lagrangian_check(f2, wrong)


def test_verify_ckr_worked_and_rank_zero():
    assert verify_ckr(worked_unilform()).passed
    assert verify_ckr(rank_zero_unilform()).passed


def test_verify_ckr_fuzz_small():
    for ring in (F2, ZZ, Z4):
        for seed in range(15):
            for rank in (1, 2, 3, 4):
                u = random_unilform(ring, rank, -1 if seed % 2 else 1, seed)
                report = verify_ckr(u)
                assert report.passed, (ring.name, seed, rank, report.to_json())


def test_verify_rc_worked_and_rank_zero():
    z = worked_nilform()
    lag = LagrangianWitness(M(ZZ, [[1], [0]]))
    assert verify_rc_equals_j(z, lag).passed
    z0 = NilForm(ZZ, 0, 1, Matrix.zeros(ZZ, 0, 0), Matrix.zeros(ZZ, 0, 0),
                 Matrix.zeros(ZZ, 0, 0))
    assert verify_rc_equals_j(z0, LagrangianWitness(Matrix.zeros(ZZ, 0, 0))).passed


def test_verify_rc_fuzz_small():
    for ring in (ZZ, F2):
        for seed in range(10):
            for rank in (2, 4):
                eps = 1 if seed % 2 == 0 else -1
                z, lag = hyperbolic_nilform_generator(seed, rank, eps, ring)
                report = verify_rc_equals_j(z, lag)
                assert report.passed, (ring.name, seed, rank, report.to_json())


def test_verify_rc_rejects_non_lagrangian():
    z = worked_nilform()
    report = verify_rc_equals_j(z, LagrangianWitness(M(ZZ, [[1], [1]])))
    assert not report.passed
    assert any(s.name == "input_lagrangian" and not s.passed
               for s in report.stages)
