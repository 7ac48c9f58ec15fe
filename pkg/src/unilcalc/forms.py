"""Quadratic and symmetric form algebra on matrices.

With the trivial involution the duality on a matrix is transposition, and
for epsilon = +-1:

  * symmetrize(psi, eps) = psi + eps * psi^t;
  * a quadratic class is psi modulo {chi - eps chi^t};
  * the symmetric quotients Sym_r / (denominator) carry the diagonal-vs-
    off-diagonal residue arithmetic used by the chain-bundle calculations.

Canonical representatives (unique in each coset):

  * quadratic class, eps = +1: zero strictly-lower part (fold the lower
    triangle into the upper one);
  * quadratic class, eps = -1: additionally the diagonal is reduced mod 2R;
  * symmetric quotient: off-diagonal entries mod s*R and diagonal entries
    mod t*R, where (t, s) is (2,1) for Quad, (4,2) for 2Quad, (2,2) for
    2Sym, (4,4) for 4Sym; mod 1*R means the entry is dropped entirely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .matrices import DimensionMismatchError, Matrix, linear_solve
from .rings import RingDescriptor, RingElement


def t_dual(phi: Matrix, epsilon: int) -> Matrix:
    """The duality involution phi -> eps * phi^t."""
    _check_eps(epsilon)
    t = phi.transpose()
    return t if epsilon == 1 else -t


def symmetrize(psi: Matrix, epsilon: int) -> Matrix:
    """psi -> psi + eps*psi^t; the result N satisfies N = eps*N^t."""
    if not psi.is_square:
        raise DimensionMismatchError("symmetrize needs a square matrix")
    _check_eps(epsilon)
    return psi + t_dual(psi, epsilon)


def is_eps_symmetric(m: Matrix, epsilon: int) -> bool:
    return m.is_square and (m - t_dual(m, epsilon)).is_zero


def _check_eps(epsilon: int):
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}")


def _entry_mod(e: RingElement, scale: int) -> RingElement:
    """Canonical representative of e modulo scale*R (scale 0: no reduction)."""
    ring = e.ring
    if scale == 0:
        return e
    base = ring.scalar_base
    modulus = base.modulus
    eff = scale if modulus == 0 else min(scale, modulus)
    if eff == 1:
        return ring.zero
    coeffs = [c % eff for c in e.coeffs()]
    return ring.element(coeffs if ring.is_poly else (coeffs[0] if coeffs else 0))


@dataclass(frozen=True)
class QuadraticClass:
    """A coset psi + {chi - eps chi^t}, held by its canonical representative."""

    ring: RingDescriptor
    rank: int
    epsilon: int
    representative: Matrix

    @property
    def is_zero(self) -> bool:
        return self.representative.is_zero

    def matrix(self) -> Matrix:
        return self.representative

    def symmetrization(self) -> Matrix:
        """The associated eps-symmetric matrix (class-independent)."""
        return symmetrize(self.representative, self.epsilon)

    def __add__(self, other: "QuadraticClass") -> "QuadraticClass":
        if (self.ring, self.rank, self.epsilon) != (other.ring, other.rank, other.epsilon):
            raise DimensionMismatchError("incompatible quadratic classes")
        return quad_class_normalize(self.representative + other.representative,
                                    self.epsilon)

    def __neg__(self) -> "QuadraticClass":
        return quad_class_normalize(-self.representative, self.epsilon)

    def to_json(self):
        return {"ring": self.ring.name, "epsilon": self.epsilon,
                "matrix": self.representative.to_literal()}


def quad_class_normalize(psi: Matrix, epsilon: int) -> QuadraticClass:
    """Canonical representative of psi mod {chi - eps chi^t}.

    Subtracting chi - eps*chi^t for chi = strict lower part empties the lower
    triangle; for eps = -1 the diagonal is then reduced mod {c + c} = 2R.
    """
    if not psi.is_square:
        raise DimensionMismatchError("quadratic class of a non-square matrix")
    _check_eps(epsilon)
    ring = psi.ring
    n = psi.rows
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < j:
                row.append(psi.entry(i, j) + (psi.entry(j, i) if epsilon == 1
                                              else -psi.entry(j, i)))
            elif i == j:
                d = psi.entry(i, i)
                row.append(_entry_mod(d, 2) if epsilon == -1 else d)
            else:
                row.append(ring.zero)
        rows.append(row)
    return QuadraticClass(ring, n, epsilon, Matrix(ring, rows))


def quad_classes_equal(a: Matrix, b: Matrix, epsilon: int) -> bool:
    return quad_class_normalize(a, epsilon).representative == \
        quad_class_normalize(b, epsilon).representative


def in_coboundary_image(m: Matrix, epsilon: int,
                        degree_cap: Optional[int] = None) -> bool:
    """Is m of the form chi - eps*chi^t?  Decided by an exact linear solve."""
    if not m.is_square:
        raise DimensionMismatchError("coboundary test needs a square matrix")
    n = m.rows
    ring = m.ring
    # unknown chi as a stacked vector: build the linear map chi -> chi - eps chi^t
    cols = []
    for a in range(n):
        for b in range(n):
            basis = Matrix.zeros(ring, n, n).to_literal()
            basis[a][b] = ring.one.to_literal()
            e = Matrix.from_literal(ring, basis)
            image = e - t_dual(e, epsilon)
            cols.append([image.entry(i, j) for i in range(n) for j in range(n)])
    op = Matrix(ring, [[cols[c][r] for c in range(n * n)] for r in range(n * n)])
    target = Matrix(ring, [[m.entry(i, j)] for i in range(n) for j in range(n)])
    return linear_solve(op, target, degree_cap=degree_cap) is not None


def is_skew_zero_diagonal(m: Matrix) -> bool:
    """Closed form for the eps=+1 coboundary image over trivial involutions."""
    if not m.is_square:
        return False
    if not (m + m.transpose()).is_zero:
        return False
    return all(m.entry(i, i).is_zero for i in range(m.rows))


_DENOMINATORS = {
    "Quad": (2, 1),
    "2Quad": (4, 2),
    "2Sym": (2, 2),
    "4Sym": (4, 4),
    "none": (0, 0),
}


@dataclass(frozen=True)
class SymQuotientElem:
    """Symmetric matrix modulo one of the standard denominators."""

    ring: RingDescriptor
    rank: int
    denominator: str
    representative: Matrix

    @property
    def is_zero(self) -> bool:
        return self.representative.is_zero

    def __add__(self, other: "SymQuotientElem") -> "SymQuotientElem":
        if (self.ring, self.rank, self.denominator) != \
                (other.ring, other.rank, other.denominator):
            raise DimensionMismatchError("incompatible quotient elements")
        return sym_quotient_reduce(self.representative + other.representative,
                                   self.denominator)

    def to_json(self):
        return {"ring": self.ring.name, "denominator": self.denominator,
                "matrix": self.representative.to_literal()}


def sym_quotient_reduce(m: Matrix, denominator: str) -> SymQuotientElem:
    """Canonical coset representative in Sym_r / denominator.

    The denominator Quad = {N + N^t} consists of the symmetric matrices with
    diagonal in 2R and unconstrained off-diagonal part, so scaled versions
    reduce diagonals mod (2*scale)R and off-diagonals mod (scale)R.
    """
    if denominator not in _DENOMINATORS:
        raise ValueError(f"unknown denominator {denominator!r}")
    if not m.is_square or not (m - m.transpose()).is_zero:
        raise DimensionMismatchError("symmetric quotient of a non-symmetric matrix")
    diag_scale, off_scale = _DENOMINATORS[denominator]
    ring = m.ring
    n = m.rows
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(_entry_mod(m.entry(i, i), diag_scale))
            elif i < j:
                row.append(_entry_mod(m.entry(i, j), off_scale))
            else:
                row.append(_entry_mod(m.entry(j, i), off_scale))
        rows.append(row)
    return SymQuotientElem(ring, n, denominator, Matrix(ring, rows))


def is_nonsingular_quadratic(psi: Matrix, epsilon: int) -> bool:
    """True iff the symmetrization psi + eps psi^t is invertible."""
    if not psi.is_square:
        raise DimensionMismatchError("nonsingularity of a non-square matrix")
    return symmetrize(psi, epsilon).det().is_unit()
