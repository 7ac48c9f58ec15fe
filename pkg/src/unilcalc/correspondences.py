"""The passage between unilforms, nilforms, and linear quadratic forms over
R[x], together with machine verification of the two composition identities
(round trip through all three descriptions, and agreement of the two routes
into the polynomial forms).

All three maps are exact matrix recipes:

  * r sends a unilform to the form psi_0 + x psi_1 on (P_1 + P_-1)[x] with
    psi_0 = [[0, 1], [0, mu_-1]] and psi_1 = [[mu_1, 0], [0, 0]];
  * c sends a nilform to the unilform (P, P*, delta_psi - nu^t psi,
    -phi^{-1} psi^t phi^{-1}) with phi the symmetrization of psi;
  * j sends a nilform to the form psi + x(delta_psi - nu^t psi);
  * k inverts j on forms in linearized position (symmetrization of the
    constant term invertible): psi = psi_0, nu = -N(psi_0)^{-1} N(psi_1),
    delta_psi = nu^t psi_0 + psi_1.

The sign of nu in k is forced: with +N(psi_0)^{-1}N(psi_1) the compatibility
relation of the output fails (see the round-trip tests).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .forms import quad_class_normalize, quad_classes_equal, symmetrize
from .matrices import Matrix, left_inverse, linear_solve
from .nilforms import (InvalidFormError, LagrangianWitness, NilForm,
                       validate_nilform)
from .rings import RingDescriptor, poly_ring
from .unilforms import (SubLagrangianPair, UnilForm, check_sublagrangian,
                        make_unilform, require_valid, sublagrangian_reduction,
                        unilforms_equal, validate_unilform)


@dataclass(frozen=True)
class PolyQuadraticForm:
    """A form psi_0 + x psi_1 over R[x], stored by its R-matrix parts."""

    base_ring: RingDescriptor
    rank: int
    epsilon: int
    psi0: Matrix
    psi1: Matrix

    @property
    def ring(self) -> RingDescriptor:
        return poly_ring(self.base_ring)

    def psi_matrix(self) -> Matrix:
        rx = self.ring
        x = Matrix.identity(rx, self.rank).scale(rx.x)
        return self.psi0.promote(rx) + x @ self.psi1.promote(rx)

    def symmetrization(self) -> Matrix:
        return symmetrize(self.psi_matrix(), self.epsilon)


def map_r(u: UnilForm) -> PolyQuadraticForm:
    """Unilform -> polynomial form.  The symmetrization factors through
    1 + (a nilpotent), so the output is nonsingular with an explicit inverse
    witness; its value at x = 0 carries the first summand as a lagrangian."""
    require_valid(u)
    ring = u.ring
    k = u.rank
    zero = Matrix.zeros(ring, k, k)
    ident = Matrix.identity(ring, k)
    psi0 = Matrix.block([[zero, ident], [zero, u.mu_minus1.representative]])
    psi1 = Matrix.block([[u.mu1.representative, zero], [zero, zero]])
    f = PolyQuadraticForm(ring, 2 * k, u.epsilon, psi0, psi1)
    assert _nonsingular_witness(f) is not None
    return f


def _nonsingular_witness(f: PolyQuadraticForm) -> Optional[Matrix]:
    """Exact inverse of the symmetrization, built from the finite geometric
    series of its nilpotent part instead of a determinant computation."""
    rx = f.ring
    n = f.symmetrization()
    n0 = symmetrize(f.psi0, f.epsilon)
    try:
        const_inv = n0.inverse()
    except Exception:
        return None
    remainder = n - n0.promote(rx)  # x times the symmetrization of psi1
    # N = N0 (1 + N0^{-1} remainder); the tail is nilpotent when the form is
    # in linearized position, so the series ends
    tail = const_inv.promote(rx) @ remainder
    acc = Matrix.identity(rx, f.rank)
    term = Matrix.identity(rx, f.rank)
    for _ in range(2 * f.rank * rx.nilradical_exponent + 1):
        term = -(tail @ term)
        if term.is_zero:
            break
        acc = acc + term
    else:
        return None
    inv = acc @ const_inv.promote(rx)
    if (f.symmetrization() @ inv) == Matrix.identity(rx, f.rank):
        return inv
    return None


def augmentation_lagrangian_check(f: PolyQuadraticForm, inclusion: Matrix) -> bool:
    """Does the value of f at x = 0 admit the given lagrangian?  (This is the
    membership witness for the kernel of the augmentation on forms.)"""
    psi0 = f.psi0
    i = inclusion
    if 2 * i.cols != f.rank or left_inverse(i) is None:
        return False
    if not quad_class_normalize(i.transpose() @ psi0 @ i, f.epsilon).is_zero:
        return False
    projection = i.transpose() @ symmetrize(psi0, f.epsilon)
    if not (projection @ i).is_zero:
        return False
    return linear_solve(projection,
                        Matrix.identity(f.base_ring, i.cols)) is not None


def map_c(z: NilForm) -> UnilForm:
    """Nilform -> unilform; the symmetrizations obey lambda_1 = -phi nu and
    lambda_-1 = -eps phi^{-1}, so the composite is eps nu, nilpotent."""
    report = validate_nilform(z)
    if not report.ok:
        raise InvalidFormError(f"invalid nilform: {report.checks}")
    phi = symmetrize(z.psi, z.epsilon)
    phi_inv = phi.inverse()
    mu1 = z.delta_psi - z.nu.transpose() @ z.psi
    mu_minus1 = -(phi_inv @ z.psi.transpose() @ phi_inv)
    u = make_unilform(z.ring, z.epsilon, mu1, mu_minus1)
    eps = Matrix.identity(z.ring, z.rank).scale(z.ring.element(z.epsilon))
    assert (u.lambda1 + phi @ z.nu).is_zero
    assert (u.lambda_minus1 @ u.lambda1 - eps @ z.nu).is_zero
    return u


def map_j(z: NilForm) -> PolyQuadraticForm:
    """Nilform -> polynomial form psi + x (delta_psi - nu^t psi)."""
    report = validate_nilform(z)
    if not report.ok:
        raise InvalidFormError(f"invalid nilform: {report.checks}")
    psi1 = z.delta_psi - z.nu.transpose() @ z.psi
    f = PolyQuadraticForm(z.ring, z.rank, z.epsilon, z.psi, psi1)
    # the symmetrization factors as phi (1 - x nu)
    rx = f.ring
    phi = symmetrize(z.psi, z.epsilon).promote(rx)
    x_nu = z.nu.promote(rx).scale(rx.x)
    factor = Matrix.identity(rx, z.rank) - x_nu
    assert f.symmetrization() == phi @ factor
    return f


def map_k(f: PolyQuadraticForm) -> NilForm:
    """Polynomial form in linearized position -> nilform."""
    n0 = symmetrize(f.psi0, f.epsilon)
    n1 = symmetrize(f.psi1, f.epsilon)
    try:
        n0_inv = n0.inverse()
    except Exception as exc:
        raise InvalidFormError(
            "constant part is singular: form not in linearized position") from exc
    nu = -(n0_inv @ n1)
    delta_psi = nu.transpose() @ f.psi0 + f.psi1
    z = NilForm(f.base_ring, f.rank, f.epsilon, nu, delta_psi, f.psi0)
    report = validate_nilform(z)
    if not report.ok:
        raise InvalidFormError(f"linearization produced an invalid nilform: "
                               f"{report.checks}")
    return z


def map_c_inverse(u: UnilForm) -> NilForm:
    """Unilform -> nilform by the explicit block recipe; coincides with
    map_k(map_r(u)) matrix for matrix."""
    require_valid(u)
    ring = u.ring
    k = u.rank
    zero = Matrix.zeros(ring, k, k)
    ident = Matrix.identity(ring, k)
    psi = Matrix.block([[zero, ident], [zero, u.mu_minus1.representative]])
    psi1 = Matrix.block([[u.mu1.representative, zero], [zero, zero]])
    lam1, lam_m = u.lambda1, u.lambda_minus1
    eps_block = (lam_m @ lam1) if u.epsilon == 1 else -(lam_m @ lam1)
    nu = Matrix.block([[eps_block, zero], [-lam1, zero]])
    delta_psi = nu.transpose() @ psi + psi1
    z = NilForm(ring, 2 * k, u.epsilon, nu, delta_psi, psi)
    report = validate_nilform(z)
    assert report.ok, f"explicit inverse recipe failed validation: {report.checks}"
    return z


# -- verification reports -------------------------------------------------------


@dataclass
class Stage:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        out = {"stage": self.name, "pass": self.passed}
        if self.detail:
            out["counterexample" if not self.passed else "note"] = self.detail
        return out


@dataclass
class Report:
    stages: List[Stage] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.stages)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.stages.append(Stage(name, bool(ok), detail))
        return bool(ok)

    def to_json(self):
        return {"pass": self.passed, "stages": [s.to_json() for s in self.stages]}


def verify_ckr(u: UnilForm) -> Report:
    """Round trip unilform -> polynomial form -> nilform -> unilform, check
    the doubled shape (with the computed off-diagonal sign -1, which is a
    diag(1, -1) change of basis away from the +1 convention and invisible in
    characteristic 2), then reduce by the evident sublagrangian and compare
    with the input."""
    report = Report()
    ring = u.ring
    k = u.rank
    if not report.add("valid_input", validate_unilform(u).ok):
        return report
    f = map_r(u)
    report.add("r_nonsingular", _nonsingular_witness(f) is not None)
    top = Matrix.block([[Matrix.identity(ring, k)], [Matrix.zeros(ring, k, k)]])
    report.add("r_augmentation_lagrangian", augmentation_lagrangian_check(f, top))
    try:
        z = map_k(f)
    except InvalidFormError as exc:
        report.add("k_linearization", False, str(exc))
        return report
    report.add("k_linearization", validate_nilform(z).ok)
    report.add("k_matches_explicit_recipe",
               z == map_c_inverse(u))
    u2 = map_c(z)
    report.add("ckr_valid", validate_unilform(u2).ok)
    zero = Matrix.zeros(ring, k, k)
    ident = Matrix.identity(ring, k)
    expected_mu1 = Matrix.block([[u.mu1.representative, zero], [zero, zero]])
    expected_mum = Matrix.block([[u.mu_minus1.representative, -ident],
                                 [zero, zero]])
    report.add("doubled_shape_mu1",
               quad_classes_equal(u2.mu1.representative, expected_mu1, u.epsilon))
    report.add("doubled_shape_mu_minus1",
               quad_classes_equal(u2.mu_minus1.representative, expected_mum,
                                  u.epsilon))
    v1 = Matrix.block([[Matrix.zeros(ring, k, k)], [Matrix.identity(ring, k)]])
    v_minus1 = Matrix.zeros(ring, 2 * k, 0)
    pair = SubLagrangianPair(v1, v_minus1)
    if not report.add("stabilization_sublagrangian",
                      check_sublagrangian(u2, pair)):
        return report
    reduced = sublagrangian_reduction(u2, pair)
    report.add("reduction_returns_input", unilforms_equal(reduced, u),
               "" if unilforms_equal(reduced, u) else
               f"got {reduced.to_json()}, wanted {u.to_json()}")
    return report


def verify_rc_equals_j(z: NilForm, lag: LagrangianWitness) -> Report:
    """Build the two polynomial forms attached to a nilform whose underlying
    form has a lagrangian N: the round trip r(c(z)) and the direct map j(z).
    The image of N under the symmetrization is a sublagrangian of r(c(z)),
    and the defining pairing identity

        <(psi + x(delta_psi - nu^t psi)) u, v>
            = {(Psi_0 + x Psi_1)(u, phi u), (v, phi v)}

    holds entry by entry on basis vectors, which is what makes the quotient
    construction an isometry onto j(z)."""
    report = Report()
    ring = z.ring
    k = z.rank
    if not report.add("valid_input", validate_nilform(z).ok):
        return report
    phi = symmetrize(z.psi, z.epsilon)
    i = lag.inclusion
    lag_ok = (2 * i.cols == k and left_inverse(i) is not None
              and (i.transpose() @ phi @ i).is_zero
              and quad_class_normalize(i.transpose() @ z.psi @ i,
                                       z.epsilon).is_zero)
    if not report.add("input_lagrangian", lag_ok):
        return report
    u = map_c(z)
    f_rc = map_r(u)
    # the two descriptions of the round trip agree up to coset representatives
    raw_psi0 = Matrix.block([
        [Matrix.zeros(ring, k, k), Matrix.identity(ring, k)],
        [Matrix.zeros(ring, k, k), -(phi.inverse() @ z.psi.transpose()
                                     @ phi.inverse())]])
    raw_psi1 = Matrix.block([
        [z.delta_psi - z.nu.transpose() @ z.psi, Matrix.zeros(ring, k, k)],
        [Matrix.zeros(ring, k, k), Matrix.zeros(ring, k, k)]])
    report.add("rc_matches_block_formula",
               quad_classes_equal(f_rc.psi0, raw_psi0, z.epsilon)
               and quad_classes_equal(f_rc.psi1, raw_psi1, z.epsilon))
    rx = poly_ring(ring)
    psi_rc = raw_psi0.promote(rx) + \
        Matrix.identity(rx, 2 * k).scale(rx.x) @ raw_psi1.promote(rx)
    # V = (phi N)[x] sitting in the dual summand
    v = Matrix.block([[Matrix.zeros(ring, k, i.cols)], [phi @ i]]).promote(rx)
    sub_ok = (left_inverse(v) is not None
              and _poly_class_zero(v.transpose() @ psi_rc @ v, z.epsilon)
              and (v.transpose() @ symmetrize(psi_rc, z.epsilon) @ v).is_zero)
    report.add("image_sublagrangian", sub_ok)
    # graph vectors (e_a, phi e_a) lie in the orthogonal complement of V
    big_phi = symmetrize(psi_rc, z.epsilon)
    graph = Matrix.block([[Matrix.identity(ring, k)], [phi]]).promote(rx)
    pairing_rows = v.transpose() @ big_phi @ graph
    report.add("graph_in_complement", pairing_rows.is_zero)
    # the pairing identity on all pairs of basis vectors
    psi_j = map_j(z).psi_matrix()
    lhs = psi_j  # <psi_j e_a, e_b> is just the (b, a) entry pattern
    phi_x = phi.promote(rx)
    rhs_matrix = _pairing_matrix(psi_rc, phi_x, k)
    report.add("pairing_identity", lhs == rhs_matrix,
               "" if lhs == rhs_matrix else
               f"lhs {lhs.to_literal()} rhs {rhs_matrix.to_literal()}")
    report.add("isometry_conclusion", report.passed)
    return report


def _poly_class_zero(m: Matrix, epsilon: int) -> bool:
    return quad_class_normalize(m, epsilon).is_zero


def _pairing_matrix(psi_rc: Matrix, phi_x: Matrix, k: int) -> Matrix:
    """Matrix of (u, v) -> {Psi(u, phi u), (v, phi v)} on basis vectors.

    With w_a = (e_a, phi e_a), the value is <xi, e_b> + bar<phi e_b, eta>
    where (xi, eta) = Psi(w_a); assembled for all a, b at once.
    """
    rx = psi_rc.ring
    graph = Matrix.block([[Matrix.identity(rx.base, k)],
                          [phi_x.evaluate_at_zero()]]).promote(rx)
    image = psi_rc @ graph  # columns are Psi(w_a) = (xi_a, eta_a)
    xi = image.submatrix(range(k), range(k))
    eta = image.submatrix(range(k, 2 * k), range(k))
    # <xi_a, e_b> contributes xi[b][a]; bar<phi e_b, eta_a> = (phi^t eta)[b][a]
    return xi + phi_x.transpose() @ eta
