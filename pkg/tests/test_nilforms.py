import random

import pytest

from unilcalc.matrices import Matrix, random_unimodular
from unilcalc.nilforms import (InvalidFormError, LagrangianWitness, NilForm,
                               check_nil_lagrangian,
                               hyperbolic_nilform_generator, is_nilpotent,
                               least_vanishing_power, nilcomplex_to_cone,
                               validate_nilform)
from unilcalc.rings import F2, ZZ, Zmod, poly_ring

Z4 = Zmod(4)
Z4X = poly_ring(Z4)


def M(ring, data):
    return Matrix.from_literal(ring, data)


def test_is_nilpotent_examples():
    assert is_nilpotent(M(ZZ, [[0, 1], [0, 0]]))
    assert not is_nilpotent(M(ZZ, [[1, 0], [0, 0]]))
    assert is_nilpotent(M(Z4X, [[[2]]]))
    assert least_vanishing_power(M(Z4X, [[[2]]])) == 2
    assert least_vanishing_power(M(ZZ, [[1]])) is None


def test_is_nilpotent_agrees_with_power_iteration():
    rng = random.Random(61)
    for ring, exponent in ((ZZ, 1), (F2, 1), (Z4, 2)):
        for _ in range(40):
            k = rng.randrange(1, 4)
            strict = [[rng.randrange(-2, 3) if j > i else 0 for j in range(k)]
                      for i in range(k)]
            u = random_unimodular(ring, k, rng)
            nu = u.inverse() @ M(ring, strict) @ u
            assert is_nilpotent(nu)
            brute = any(nu.power(n).is_zero for n in range(1, 2 * k * exponent + 1))
            assert brute
            # a unipotent conjugate is never nilpotent
            ident = Matrix.identity(ring, k)
            assert not is_nilpotent(nu + ident)


def test_validate_nilform_examples():
    z = NilForm(ZZ, 2, -1, M(ZZ, [[0, 0], [0, 0]]), M(ZZ, [[0, 0], [0, 0]]),
                M(ZZ, [[0, 1], [0, 0]]))
    assert validate_nilform(z).ok
    z = NilForm(ZZ, 1, 1, M(ZZ, [[0]]), M(ZZ, [[0]]), M(ZZ, [[1]]))
    report = validate_nilform(z)
    assert not report.ok and not report.checks["nonsingular"]
    z = NilForm(ZZ, 2, -1, M(ZZ, [[0, 1], [0, 0]]), M(ZZ, [[0, 0], [0, 0]]),
                M(ZZ, [[0, 1], [0, 0]]))
    report = validate_nilform(z)
    assert not report.ok and not report.checks["compatibility"]


def test_check_nil_lagrangian_examples():
    z = NilForm(ZZ, 2, -1, M(ZZ, [[0, 0], [0, 0]]), M(ZZ, [[0, 0], [0, 0]]),
                M(ZZ, [[0, 1], [0, 0]]))
    assert check_nil_lagrangian(z, LagrangianWitness(M(ZZ, [[1], [0]])))
    assert not check_nil_lagrangian(z, LagrangianWitness(M(ZZ, [[1], [1]])))
    assert not check_nil_lagrangian(z, LagrangianWitness(Matrix.zeros(ZZ, 2, 0)))


def test_nilcomplex_to_cone_examples():
    cone = nilcomplex_to_cone({0: 1}, {}, {0: M(ZZ, [[0]])})
    assert cone.ranks == {0: 1, 1: 1}
    assert cone.differentials[1].to_literal() == [[[0, 1]]]
    cone = nilcomplex_to_cone({0: 2}, {}, {0: M(ZZ, [[0, 1], [0, 0]])})
    assert cone.differentials[1].to_literal() == [[[0, 1], [-1]], [[], [0, 1]]]
    cone = nilcomplex_to_cone({0: 1}, {}, {0: M(F2, [[0]])})
    assert cone.differentials[1].to_literal() == [[[0, 1]]]


def test_nilcomplex_to_cone_two_term():
    d = M(ZZ, [[2]])
    nu = {0: M(ZZ, [[0]]), 1: M(ZZ, [[0]])}
    cone = nilcomplex_to_cone({0: 1, 1: 1}, {1: d}, nu)
    assert cone.ranks == {0: 1, 1: 2, 2: 1}
    assert (cone.differentials[1] @ cone.differentials[2]).is_zero


def test_nilcomplex_to_cone_rejects_non_chain_map():
    d = M(ZZ, [[2]])
    nu = {0: M(ZZ, [[1]]), 1: M(ZZ, [[0]])}
    with pytest.raises(InvalidFormError):
        nilcomplex_to_cone({0: 1, 1: 1}, {1: d}, nu)
    with pytest.raises(InvalidFormError):
        nilcomplex_to_cone({0: 1}, {}, {0: M(ZZ, [[1]])})


def test_cone_d_squared_random():
    rng = random.Random(67)
    for _ in range(60):
        ring = rng.choice([ZZ, F2, Z4])
        r0, r1 = rng.randrange(1, 3), rng.randrange(1, 3)
        # nilpotent chain map: strictly-triangular blocks commuting with d = 0
        nu0 = [[rng.randrange(-2, 3) if j > i else 0 for j in range(r0)]
               for i in range(r0)]
        nu1 = [[rng.randrange(-2, 3) if j > i else 0 for j in range(r1)]
               for i in range(r1)]
        zero_d = Matrix.zeros(ring, r0, r1)
        cone = nilcomplex_to_cone({0: r0, 1: r1}, {1: zero_d},
                                  {0: M(ring, nu0), 1: M(ring, nu1)})
        for r, dmat in cone.differentials.items():
            upper = cone.differentials.get(r + 1)
            if upper is not None:
                assert (dmat @ upper).is_zero


def test_generator_validates_with_lagrangians():
    for ring in (ZZ, F2, Z4):
        for seed in range(12):
            for rank in (2, 4, 6):
                eps = 1 if seed % 2 == 0 else -1
                z, lag = hyperbolic_nilform_generator(seed, rank, eps, ring)
                assert validate_nilform(z).ok
                assert check_nil_lagrangian(z, lag)
