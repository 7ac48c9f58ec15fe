"""Modules with nilpotent endomorphisms, quadratic nilforms, lagrangian
verification, and the passage from a nilpotent chain complex to a
polynomial-ring mapping cone.

A quadratic nilform (P, nu, delta_psi, psi) of rank k over R consists of a
nilpotent endomorphism nu and a pair of k x k matrices subject to the exact
compatibility

    nu^t psi - psi nu = delta_psi + eps delta_psi^t,

with psi + eps psi^t invertible.  A lagrangian is a nu-invariant direct
summand L of half rank on which both psi and delta_psi restrict to the
trivial coset: the restriction (delta_chi, chi) witness solves

    i^t psi i = chi - eps chi^t,
    i^t delta_psi i = delta_chi - eps delta_chi^t + nu_L^t chi - chi nu_L.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .forms import is_nonsingular_quadratic, symmetrize, t_dual
from .matrices import (DimensionMismatchError, Matrix, left_inverse,
                       linear_solve, random_unimodular, right_inverse)
from .rings import RingDescriptor, poly_ring


class InvalidFormError(ValueError):
    pass


def is_nilpotent(nu: Matrix) -> bool:
    """Exact nilpotency test: nu is nilpotent iff nu^(k*m) = 0, where k is
    the size and m the nilpotency exponent of the ring's nilradical."""
    if not nu.is_square:
        raise DimensionMismatchError("nilpotency of a non-square matrix")
    if nu.rows == 0:
        return True
    bound = nu.rows * nu.ring.nilradical_exponent
    return nu.power(bound).is_zero


def least_vanishing_power(nu: Matrix) -> Optional[int]:
    """Smallest N with nu^N = 0, or None if nu is not nilpotent."""
    if nu.rows == 0:
        return 1
    bound = nu.rows * nu.ring.nilradical_exponent
    acc = Matrix.identity(nu.ring, nu.rows)
    for n in range(1, bound + 1):
        acc = acc @ nu
        if acc.is_zero:
            return n
    return None


@dataclass(frozen=True)
class NilModule:
    """Free module of finite rank with a nilpotent endomorphism."""

    ring: RingDescriptor
    rank: int
    nu: Matrix

    def __post_init__(self):
        if self.nu.rows != self.rank or self.nu.cols != self.rank:
            raise DimensionMismatchError("endomorphism has the wrong size")
        if not is_nilpotent(self.nu):
            raise InvalidFormError("endomorphism is not nilpotent")


@dataclass(frozen=True)
class NilForm:
    """Record (P, nu, delta_psi, psi); validity is checked separately so that
    invalid candidates can be examined."""

    ring: RingDescriptor
    rank: int
    epsilon: int
    nu: Matrix
    delta_psi: Matrix
    psi: Matrix

    def to_json(self):
        return {"ring": self.ring.name, "epsilon": self.epsilon,
                "nu": self.nu.to_literal(), "deltaPsi": self.delta_psi.to_literal(),
                "psi": self.psi.to_literal()}

    @staticmethod
    def from_json(data, ring: Optional[RingDescriptor] = None) -> "NilForm":
        from .rings import ring_from_name
        ring = ring or ring_from_name(data["ring"])
        nu = Matrix.from_literal(ring, data["nu"])
        return NilForm(ring, nu.rows, data["epsilon"], nu,
                       Matrix.from_literal(ring, data["deltaPsi"]),
                       Matrix.from_literal(ring, data["psi"]))


@dataclass(frozen=True)
class ValidationReport:
    checks: Dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self):
        return {"checks": dict(self.checks), "ok": self.ok}


def validate_nilform(z: NilForm) -> ValidationReport:
    """Pass/fail for nilpotency, the compatibility relation, nonsingularity."""
    checks = {}
    sizes_ok = all(m.rows == z.rank and m.cols == z.rank
                   for m in (z.nu, z.delta_psi, z.psi))
    checks["shape"] = sizes_ok
    if not sizes_ok:
        return ValidationReport(checks)
    checks["nilpotent"] = is_nilpotent(z.nu)
    lhs = z.nu.transpose() @ z.psi - z.psi @ z.nu
    rhs = symmetrize(z.delta_psi, z.epsilon)
    checks["compatibility"] = (lhs - rhs).is_zero
    checks["nonsingular"] = is_nonsingular_quadratic(z.psi, z.epsilon)
    return ValidationReport(checks)


@dataclass(frozen=True)
class LagrangianWitness:
    """Columns of ``inclusion`` span the candidate summand; ``witness`` is an
    optional precomputed (delta_chi, chi) pair for the restriction coset."""

    inclusion: Matrix
    witness: Optional[Tuple[Matrix, Matrix]] = None


def check_nil_lagrangian(z: NilForm, lag: LagrangianWitness) -> bool:
    """Invariance, exactness of 0 -> L -> P -> L* -> 0 through the
    symmetrization, and triviality of the restricted coset."""
    val = validate_nilform(z)
    if not val.ok:
        raise InvalidFormError(f"nilform invalid: {val.checks}")
    i = lag.inclusion
    if i.rows != z.rank:
        raise DimensionMismatchError("inclusion has the wrong height")
    m = i.cols
    if 2 * m != z.rank:
        return False
    if left_inverse(i) is None:
        return False
    nu_restricted = linear_solve(i, z.nu @ i)
    if nu_restricted is None:
        return False
    phi = symmetrize(z.psi, z.epsilon)
    projection = i.transpose() @ phi
    if not (projection @ i).is_zero:
        return False
    if right_inverse(projection) is None:
        return False
    return _restriction_coset_trivial(
        i.transpose() @ z.delta_psi @ i,
        i.transpose() @ z.psi @ i,
        nu_restricted, z.epsilon)


def _restriction_coset_trivial(delta_res: Matrix, psi_res: Matrix,
                               nu_res: Matrix, epsilon: int) -> bool:
    """Solve the pair of witness equations for (delta_chi, chi) exactly."""
    ring = delta_res.ring
    m = delta_res.rows
    if m == 0:
        return True
    cols = []
    # equations stacked: entries of psi_res = chi - eps chi^t, then entries of
    # delta_res = delta_chi - eps delta_chi^t + nu^t chi - chi nu
    basis_mats = []
    zero = Matrix.zeros(ring, m, m)
    for a in range(m):
        for b in range(m):
            lit = zero.to_literal()
            lit[a][b] = ring.one.to_literal()
            basis_mats.append(Matrix.from_literal(ring, lit))
    for e in basis_mats:  # delta_chi directions
        img1 = zero
        img2 = e - t_dual(e, epsilon)
        cols.append((img1, img2))
    for e in basis_mats:  # chi directions
        img1 = e - t_dual(e, epsilon)
        img2 = nu_res.transpose() @ e - e @ nu_res
        cols.append((img1, img2))
    rows = []
    for img1, img2 in cols:
        rows.append([img1.entry(i, j) for i in range(m) for j in range(m)] +
                    [img2.entry(i, j) for i in range(m) for j in range(m)])
    op = Matrix(ring, list(zip(*rows)))
    target = Matrix(ring, [[psi_res.entry(i, j)] for i in range(m) for j in range(m)] +
                    [[delta_res.entry(i, j)] for i in range(m) for j in range(m)])
    return linear_solve(op, target) is not None


# -- nilpotent complexes and their polynomial mapping cones -------------------


@dataclass(frozen=True)
class PolynomialComplex:
    """Bounded complex of free modules over R[x] with exact d^2 = 0."""

    ring: RingDescriptor
    ranks: Dict[int, int]
    differentials: Dict[int, Matrix]

    def __post_init__(self):
        for r, d in self.differentials.items():
            expected = (self.ranks.get(r - 1, 0), self.ranks.get(r, 0))
            if (d.rows, d.cols) != expected:
                raise DimensionMismatchError(f"differential at {r} has shape "
                                             f"{(d.rows, d.cols)}, wanted {expected}")
        for r, d in self.differentials.items():
            upper = self.differentials.get(r + 1)
            if upper is not None and not (d @ upper).is_zero:
                raise InvalidFormError("d^2 != 0")


def nilcomplex_to_cone(ranks: Dict[int, int], differentials: Dict[int, Matrix],
                       nu: Dict[int, Matrix]) -> PolynomialComplex:
    """Mapping cone of (x - nu) on C[x]: the cone has C[x]_r + C[x]_{r-1} in
    degree r, with differential [[d, x - nu], [0, -d]]."""
    if not ranks:
        raise ValueError("empty complex")
    base = None
    for mat in list(differentials.values()) + list(nu.values()):
        base = mat.ring if base is None else base
        if mat.ring != base:
            raise InvalidFormError("mixed rings in the complex data")
    if base is None:
        raise ValueError("need at least one matrix to infer the ring")
    degrees = sorted(ranks)
    for r in degrees:
        n_r = nu.get(r)
        if n_r is None or n_r.rows != ranks[r]:
            raise DimensionMismatchError(f"missing or misshaped endomorphism at {r}")
        if not is_nilpotent(n_r):
            raise InvalidFormError("endomorphism is not nilpotent")
        d_r = differentials.get(r)
        if d_r is not None and ranks.get(r - 1, 0):
            if not (d_r @ n_r - nu[r - 1] @ d_r).is_zero:
                raise InvalidFormError("endomorphism is not a chain map")
    rx = poly_ring(base) if not base.is_poly else base
    x = rx.x

    def promote(m: Matrix) -> Matrix:
        return m.promote(rx)

    cone_ranks = {}
    cone_diffs = {}
    for r in range(min(degrees), max(degrees) + 2):
        cone_ranks[r] = ranks.get(r, 0) + ranks.get(r - 1, 0)
    for r in sorted(cone_ranks):
        rows_b, rows_a = ranks.get(r - 1, 0), ranks.get(r - 2, 0)
        cols_b, cols_a = ranks.get(r, 0), ranks.get(r - 1, 0)
        if rows_b + rows_a == 0 or cols_b + cols_a == 0:
            continue
        d_b = promote(differentials[r]) if differentials.get(r) is not None \
            and cols_b and rows_b else Matrix.zeros(rx, rows_b, cols_b)
        d_a = promote(differentials[r - 1]) if differentials.get(r - 1) is not None \
            and cols_a and rows_a else Matrix.zeros(rx, rows_a, cols_a)
        if cols_a:
            x_minus_nu = Matrix.identity(rx, cols_a).scale(x) - promote(nu[r - 1])
        else:
            x_minus_nu = Matrix.zeros(rx, 0, 0)
        top = Matrix.block([[d_b, x_minus_nu]]) if rows_b else \
            Matrix.zeros(rx, 0, cols_b + cols_a)
        bottom = Matrix.block([[Matrix.zeros(rx, rows_a, cols_b), -d_a]]) \
            if rows_a else Matrix.zeros(rx, 0, cols_b + cols_a)
        cone_diffs[r] = Matrix.block([[top], [bottom]]) if rows_b or rows_a \
            else Matrix.zeros(rx, 0, cols_b + cols_a)
    cone_ranks = {r: n for r, n in cone_ranks.items() if n}
    cone_diffs = {r: d for r, d in cone_diffs.items()
                  if d.rows and d.cols}
    return PolynomialComplex(rx, cone_ranks, cone_diffs)


# -- seeded generator of valid nilforms with exhibited lagrangians -------------


def hyperbolic_nilform_generator(seed: int, rank: int, epsilon: int,
                                 ring: RingDescriptor
                                 ) -> Tuple[NilForm, LagrangianWitness]:
    """Deterministic valid nilform of even rank whose underlying form admits
    the exhibited lagrangian.

    Construction: on L + L* take psi = [[0, I], [0, 0]], an endomorphism
    [[alpha, beta], [0, alpha^t]] with alpha strictly upper triangular and
    beta = chi + eps chi^t, and delta_psi = [[0, 0], [0, eps chi]]; then
    conjugate everything by a random unimodular change of basis.
    """
    if rank % 2:
        raise ValueError("hyperbolic construction needs even rank")
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +-1")
    m = rank // 2
    rng = random.Random(f"nilform:{ring.name}:{rank}:{epsilon}:{seed}")

    def rand_elem():
        if ring.is_poly:
            return [rng.randrange(-2, 3) for _ in range(rng.randrange(1, 3))]
        return rng.randrange(-2, 3)

    alpha_lit = [[rand_elem() if j > i else 0 for j in range(m)] for i in range(m)]
    chi_lit = [[rand_elem() for _ in range(m)] for _ in range(m)]
    alpha = Matrix.from_literal(ring, alpha_lit)
    chi = Matrix.from_literal(ring, chi_lit)
    beta = symmetrize(chi, epsilon)
    zero = Matrix.zeros(ring, m, m)
    ident = Matrix.identity(ring, m)
    psi = Matrix.block([[zero, ident], [zero, zero]])
    nu = Matrix.block([[alpha, beta], [zero, alpha.transpose()]])
    eps_chi = chi if epsilon == 1 else -chi
    delta_psi = Matrix.block([[zero, zero], [zero, eps_chi]])
    inclusion = Matrix.block([[ident], [zero]])

    u = random_unimodular(ring, rank, rng, steps=4)
    u_inv = u.inverse()
    z = NilForm(ring, rank, epsilon,
                u_inv @ nu @ u,
                u.transpose() @ delta_psi @ u,
                u.transpose() @ psi @ u)
    lag = LagrangianWitness(u_inv @ inclusion,
                            witness=(Matrix.zeros(ring, m, m),
                                     Matrix.zeros(ring, m, m)))
    report = validate_nilform(z)
    assert report.ok, f"generator produced an invalid form: {report.checks}"
    return z, lag
