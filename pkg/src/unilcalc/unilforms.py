"""Quadratic unilforms over a scalar ring, sublagrangian and lagrangian
verification, and the sublagrangian quotient construction.

A unilform of rank k is a pair of quadratic classes (mu_1 on P_1, mu_-1 on
its dual P_-1) whose symmetrizations lambda_d compose nilpotently:
(lambda_-1 lambda_1)^N = 0 for some N.  A sublagrangian is a pair of direct
summands V_1 in P_1, V_-1 in P_-1 that pair to zero, are swapped into each
other by the lambda's, and carry trivial restricted classes; passing to
(annihilator of V_-1)/V_1 and (annihilator of V_1)/V_-1 with the induced
classes preserves the stable equivalence class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from . import intlinalg
from .forms import QuadraticClass, quad_class_normalize, symmetrize
from .matrices import (DimensionMismatchError, Matrix, NonFreeQuotientError,
                       kernel_summand_basis, left_inverse, linear_solve)
from .nilforms import InvalidFormError, is_nilpotent, least_vanishing_power
from .rings import RingDescriptor


@dataclass(frozen=True)
class UnilForm:
    """(P_1, P_-1, mu_1, mu_-1) with P_-1 the dual of P_1 (both rank k)."""

    ring: RingDescriptor
    rank: int
    epsilon: int
    mu1: QuadraticClass
    mu_minus1: QuadraticClass

    def __post_init__(self):
        for mu in (self.mu1, self.mu_minus1):
            if mu.ring != self.ring or mu.rank != self.rank \
                    or mu.epsilon != self.epsilon:
                raise DimensionMismatchError("class does not match the unilform")

    @property
    def lambda1(self) -> Matrix:
        return self.mu1.symmetrization()

    @property
    def lambda_minus1(self) -> Matrix:
        return self.mu_minus1.symmetrization()

    def to_json(self):
        return {"ring": self.ring.name, "epsilon": self.epsilon,
                "mu1": self.mu1.representative.to_literal(),
                "muMinus1": self.mu_minus1.representative.to_literal()}

    @staticmethod
    def from_json(data, ring: Optional[RingDescriptor] = None) -> "UnilForm":
        from .rings import ring_from_name
        ring = ring or ring_from_name(data["ring"])
        eps = data["epsilon"]
        mu1 = quad_class_normalize(Matrix.from_literal(ring, data["mu1"]), eps)
        mu_minus1 = quad_class_normalize(
            Matrix.from_literal(ring, data["muMinus1"]), eps)
        return UnilForm(ring, mu1.rank, eps, mu1, mu_minus1)


def make_unilform(ring: RingDescriptor, epsilon: int, mu1: Matrix,
                  mu_minus1: Matrix) -> UnilForm:
    """Normalize the two representatives and assemble the record."""
    c1 = quad_class_normalize(mu1, epsilon)
    c2 = quad_class_normalize(mu_minus1, epsilon)
    return UnilForm(ring, c1.rank, epsilon, c1, c2)


@dataclass(frozen=True)
class UnilValidation:
    checks: Dict[str, bool]
    least_power: Optional[int]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self):
        return {"checks": dict(self.checks), "ok": self.ok,
                "least_vanishing_power": self.least_power}


def validate_unilform(u: UnilForm) -> UnilValidation:
    """The one condition beyond bookkeeping: lambda_-1 lambda_1 is nilpotent."""
    composite = u.lambda_minus1 @ u.lambda1
    nilpotent = is_nilpotent(composite)
    power = least_vanishing_power(composite) if nilpotent else None
    return UnilValidation({"composite_nilpotent": nilpotent}, power)


def require_valid(u: UnilForm):
    report = validate_unilform(u)
    if not report.ok:
        raise InvalidFormError(f"invalid unilform: {report.checks}")


@dataclass(frozen=True)
class SubLagrangianPair:
    """Inclusion matrices of the two candidate summands."""

    v1: Matrix
    v_minus1: Matrix


def empty_pair(u: UnilForm) -> SubLagrangianPair:
    z = Matrix.zeros(u.ring, u.rank, 0)
    return SubLagrangianPair(z, z)


def check_sublagrangian(u: UnilForm, pair: SubLagrangianPair) -> bool:
    """Zero pairing, lambda-invariance into the opposite summand, split
    inclusions, and trivial restricted classes."""
    require_valid(u)
    v1, vm = pair.v1, pair.v_minus1
    if v1.rows != u.rank or vm.rows != u.rank:
        raise DimensionMismatchError("inclusion heights do not match the form")
    for v in (v1, vm):
        if v.cols and left_inverse(v) is None:
            return False
    if not (v1.transpose() @ vm).is_zero:
        return False
    if linear_solve(vm, u.lambda1 @ v1) is None:
        return False
    if linear_solve(v1, u.lambda_minus1 @ vm) is None:
        return False
    if not quad_class_normalize(v1.transpose() @ u.mu1.representative @ v1,
                                u.epsilon).is_zero:
        return False
    if not quad_class_normalize(vm.transpose() @ u.mu_minus1.representative @ vm,
                                u.epsilon).is_zero:
        return False
    return True


def _annihilator(ring, inclusion: Matrix) -> Matrix:
    """Free basis of {x : <x, column> = 0 for all columns}."""
    if inclusion.cols == 0:
        return Matrix.identity(ring, inclusion.rows)
    return kernel_summand_basis(inclusion.transpose())


def _spans_equal(a: Matrix, b: Matrix) -> bool:
    if a.cols != b.cols:
        return False
    return (linear_solve(a, b) is not None) and (linear_solve(b, a) is not None)


def check_lagrangian(u: UnilForm, pair: SubLagrangianPair) -> bool:
    """A sublagrangian with V_1 equal to the annihilator of V_-1 (and the
    complementary ranks forced by the perfect evaluation pairing)."""
    if not check_sublagrangian(u, pair):
        return False
    if pair.v1.cols + pair.v_minus1.cols != u.rank:
        return False
    perp = _annihilator(u.ring, pair.v_minus1)
    return _spans_equal(pair.v1, perp)


def _complement_in_span(span: Matrix, sub: Matrix) -> Matrix:
    """Columns completing ``sub`` to a basis of the span; raises
    NonFreeQuotientError when span/sub is not free."""
    ring = span.ring
    if sub.cols == 0:
        return span
    coords = linear_solve(span, sub)
    if coords is None:
        raise NonFreeQuotientError("submodule does not lie in the span")
    raw = [[e.data for e in row] for row in coords.entries]
    d, u_mat, _ = intlinalg.smith_normal_form(raw)
    diag = intlinalg.diagonal(d)
    modulus = ring.modulus
    keep = []
    for j in range(coords.rows):
        dj = diag[j] if j < len(diag) else 0
        unit = (dj in (1, -1)) if modulus == 0 else (dj % 2 == 1)
        zero = (dj == 0) if modulus == 0 else (dj % modulus == 0)
        if zero:
            keep.append(j)
        elif not unit:
            raise NonFreeQuotientError("quotient by the submodule is not free")
    u_inv = intlinalg.invert_unimodular(u_mat)
    basis_change = Matrix.from_literal(ring, u_inv)
    new_basis = span @ basis_change
    return new_basis.submatrix(range(new_basis.rows), keep)


def sublagrangian_reduction(u: UnilForm, pair: SubLagrangianPair) -> UnilForm:
    """The quotient unilform on (ann V_-1)/V_1 and (ann V_1)/V_-1.

    Bases: complete V_1 to a basis of the annihilator of V_-1, dualize the
    complement on the other side so the evaluation pairing becomes the
    identity, and restrict the class representatives.  A lagrangian pair
    reduces to the rank-0 form.
    """
    if not check_sublagrangian(u, pair):
        raise InvalidFormError("pair is not a sublagrangian")
    ring = u.ring
    perp_m = _annihilator(ring, pair.v_minus1)   # inside P_1
    perp_1 = _annihilator(ring, pair.v1)         # inside P_-1
    c1 = _complement_in_span(perp_m, pair.v1)
    cm = _complement_in_span(perp_1, pair.v_minus1)
    if c1.cols != cm.cols:
        raise NonFreeQuotientError("quotient ranks disagree")
    if c1.cols:
        gram = c1.transpose() @ cm
        gram_inv = gram.inverse()
        cm = cm @ gram_inv
    mu1 = c1.transpose() @ u.mu1.representative @ c1
    mum = cm.transpose() @ u.mu_minus1.representative @ cm
    return make_unilform(ring, u.epsilon, mu1, mum)


def direct_sum(u: UnilForm, v: UnilForm) -> UnilForm:
    if u.ring != v.ring or u.epsilon != v.epsilon:
        raise DimensionMismatchError("direct sum over mixed rings or parities")
    ring = u.ring

    def blockdiag(a: Matrix, b: Matrix) -> Matrix:
        return Matrix.block([
            [a, Matrix.zeros(ring, a.rows, b.cols)],
            [Matrix.zeros(ring, b.rows, a.cols), b]])

    return make_unilform(ring, u.epsilon,
                         blockdiag(u.mu1.representative, v.mu1.representative),
                         blockdiag(u.mu_minus1.representative,
                                   v.mu_minus1.representative))


def unilforms_equal(u: UnilForm, v: UnilForm) -> bool:
    """Entrywise equality of canonical representatives."""
    return (u.ring == v.ring and u.epsilon == v.epsilon and u.rank == v.rank
            and u.mu1.representative == v.mu1.representative
            and u.mu_minus1.representative == v.mu_minus1.representative)


# -- seeded generator ----------------------------------------------------------


def random_unilform(ring: RingDescriptor, rank: int, epsilon: int,
                    seed: int) -> UnilForm:
    """Deterministic valid unilform: rank-1 seeds (where the nilpotency
    condition is a condition on a product of two scalars) are grown by
    direct sums, doubling with an off-diagonal unit (the stabilized shape),
    and unimodular changes of basis; a rejection-sampled sparse candidate is
    mixed in when it happens to be valid."""
    rng = random.Random(f"unilform:{ring.name}:{rank}:{epsilon}:{seed}")

    def rank1() -> UnilForm:
        a = rng.randrange(-2, 3)
        b = rng.randrange(-2, 3)
        if epsilon == 1 and ring.kind == "int" and a * b != 0:
            if rng.randrange(2):
                a = 0
            else:
                b = 0
        return make_unilform(ring, epsilon,
                             Matrix.from_literal(ring, [[a]]),
                             Matrix.from_literal(ring, [[b]]))

    def doubled(base: UnilForm) -> UnilForm:
        k = base.rank
        zero = Matrix.zeros(ring, k, k)
        ident = Matrix.identity(ring, k)
        mu1 = Matrix.block([[base.mu1.representative, zero], [zero, zero]])
        mum = Matrix.block([[base.mu_minus1.representative, -ident],
                            [zero, zero]])
        return make_unilform(ring, epsilon, mu1, mum)

    def rebased(base: UnilForm) -> UnilForm:
        from .matrices import random_unimodular
        t = random_unimodular(ring, base.rank, rng, steps=3)
        t_inv = t.inverse()
        return make_unilform(
            ring, epsilon,
            t.transpose() @ base.mu1.representative @ t,
            t_inv @ base.mu_minus1.representative @ t_inv.transpose())

    def sparse_candidate(k: int) -> Optional[UnilForm]:
        for _ in range(8):
            lit1 = [[rng.randrange(-2, 3) if rng.randrange(3) == 0 else 0
                     for _ in range(k)] for _ in range(k)]
            lit2 = [[rng.randrange(-2, 3) if rng.randrange(3) == 0 else 0
                     for _ in range(k)] for _ in range(k)]
            cand = make_unilform(ring, epsilon,
                                 Matrix.from_literal(ring, lit1),
                                 Matrix.from_literal(ring, lit2))
            if validate_unilform(cand).ok:
                return cand
        return None

    form = rank1()
    while form.rank < rank:
        move = rng.randrange(4)
        if move == 0 and 2 * form.rank <= rank:
            form = doubled(form)
        elif move == 1:
            form = direct_sum(form, rank1())
        elif move == 2:
            cand = sparse_candidate(min(2, rank - form.rank))
            extra = cand if cand is not None else rank1()
            if extra.rank + form.rank <= rank:
                form = direct_sum(form, extra)
            else:
                form = direct_sum(form, rank1())
        else:
            form = rebased(direct_sum(form, rank1()))
    if rng.randrange(2):
        form = rebased(form)
    require_valid(form)
    return form
