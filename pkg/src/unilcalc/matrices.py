"""Dense matrices over the supported rings, with exact inversion and
exact linear solving.

Solving reduces everything to integer lattice arithmetic: modular rings add
congruence columns, polynomial entries are expanded coefficient by
coefficient up to a degree cap (solution degrees in the intended uses never
exceed the input degree plus two).
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from . import intlinalg
from .rings import (NotAUnitError, RingDescriptor, RingElement,
                    RingMismatchError, poly_ring)


class DimensionMismatchError(ValueError):
    pass


class NotInvertibleError(ArithmeticError):
    pass


class NonFreeQuotientError(ArithmeticError):
    """A quotient that the calculation requires to be free is not."""


class Matrix:
    """Immutable dense matrix with entries in one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: RingDescriptor, entries, cols: Optional[int] = None):
        entries = tuple(tuple(row) for row in entries)
        rows = len(entries)
        ncols = len(entries[0]) if rows else (cols or 0)
        for row in entries:
            if len(row) != ncols:
                raise DimensionMismatchError("ragged rows")
            for e in row:
                if not isinstance(e, RingElement) or e.ring != ring:
                    raise RingMismatchError(f"entry {e!r} not in {ring}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", entries)

    def _same_shape(self, entries) -> "Matrix":
        return Matrix(self.ring, entries, cols=self.cols)

    def __setattr__(self, *args):
        raise AttributeError("Matrix is immutable")

    # -- construction --------------------------------------------------------

    @staticmethod
    def from_literal(ring: RingDescriptor, data) -> "Matrix":
        """Row-major nested lists; entries are ints or coefficient lists."""
        return Matrix(ring, [[ring.element(e) for e in row] for row in data])

    @staticmethod
    def zeros(ring: RingDescriptor, rows: int, cols: int) -> "Matrix":
        z = ring.zero
        return Matrix(ring, [[z] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(ring: RingDescriptor, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return Matrix(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def diagonal(ring: RingDescriptor, entries: Sequence[RingElement]) -> "Matrix":
        z = ring.zero
        n = len(entries)
        return Matrix(ring, [[entries[i] if i == j else z for j in range(n)]
                             for i in range(n)])

    @staticmethod
    def block(blocks) -> "Matrix":
        """Assemble from a 2D grid of matrices with matching edge sizes."""
        ring = blocks[0][0].ring
        width = sum(b.cols for b in blocks[0])
        rows = []
        for block_row in blocks:
            height = block_row[0].rows
            if sum(b.cols for b in block_row) != width:
                raise DimensionMismatchError("block widths disagree")
            for r in range(height):
                row = []
                for b in block_row:
                    if b.rows != height:
                        raise DimensionMismatchError("block heights disagree")
                    row.extend(b.entries[r])
                rows.append(row)
        return Matrix(ring, rows, cols=width)

    @staticmethod
    def column(ring: RingDescriptor, vec) -> "Matrix":
        return Matrix(ring, [[ring.element(v)] for v in vec])

    def to_literal(self):
        return [[e.to_literal() for e in row] for row in self.entries]

    # -- basic algebra ---------------------------------------------------------

    def _check_same(self, other: "Matrix"):
        if self.ring != other.ring:
            raise RingMismatchError("matrices over different rings")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(
                f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ring == other.ring
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.ring, self.entries))

    def __add__(self, other):
        self._check_same(other)
        return self._same_shape([[a + b for a, b in zip(ra, rb)]
                                 for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check_same(other)
        return self._same_shape([[a - b for a, b in zip(ra, rb)]
                                 for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return self._same_shape([[-a for a in row] for row in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ring != other.ring:
            raise RingMismatchError("matrices over different rings")
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ring = self.ring
        if not ring.is_poly:
            # fast path on raw int data
            reduce = ring._reduce_scalar
            bdata = [[e.data for e in row] for row in other.entries]
            out = []
            for row in self.entries:
                adata = [e.data for e in row]
                out_row = []
                for j in range(other.cols):
                    s = 0
                    for k in range(self.cols):
                        a = adata[k]
                        if a:
                            s += a * bdata[k][j]
                    out_row.append(RingElement(ring, reduce(s)))
                out.append(out_row)
            return Matrix(ring, out, cols=other.cols)
        zero = ring.zero
        out = []
        for i in range(self.rows):
            out_row = []
            for j in range(other.cols):
                s = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if not a.is_zero:
                        s = s + a * other.entries[k][j]
                out_row.append(s)
            out.append(out_row)
        return Matrix(ring, out, cols=other.cols)

    def scale(self, c: RingElement) -> "Matrix":
        return self._same_shape([[c * a for a in row] for row in self.entries])

    def transpose(self) -> "Matrix":
        if self.rows and self.cols:
            return Matrix(self.ring, list(zip(*self.entries)))
        return Matrix(self.ring, [[] for _ in range(self.cols)], cols=self.rows) \
            if self.cols else Matrix(self.ring, [], cols=self.rows)

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.entries for e in row)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> RingElement:
        return self.entries[i][j]

    def power(self, n: int) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatchError("power of non-square matrix")
        result = Matrix.identity(self.ring, self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base if n > 1 else base
            n >>= 1
        return result

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        col_idx = list(col_idx)
        return Matrix(self.ring, [[self.entries[i][j] for j in col_idx]
                                  for i in row_idx], cols=len(col_idx))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack heights disagree")
        return Matrix(self.ring, [ra + rb for ra, rb in
                                  zip(self.entries, other.entries)],
                      cols=self.cols + other.cols)

    def map_entries(self, fn) -> "Matrix":
        return self._same_shape([[fn(e) for e in row] for row in self.entries])

    def promote(self, ring: RingDescriptor) -> "Matrix":
        """Reinterpret entries in a larger ring (scalar base into its R[x])."""
        return Matrix(ring, [[ring.element(e) for e in row]
                             for row in self.entries], cols=self.cols)

    def evaluate_at_zero(self) -> "Matrix":
        """Entrywise augmentation R[x] -> R."""
        base = self.ring.scalar_base
        return Matrix(base, [[e.evaluate_at_zero() for e in row]
                             for row in self.entries], cols=self.cols)

    def __repr__(self):
        return f"Matrix({self.ring}, {self.to_literal()})"

    # -- determinant and inverse ------------------------------------------------

    def det(self) -> RingElement:
        if not self.is_square:
            raise DimensionMismatchError("determinant of non-square matrix")
        if self.rows == 0:
            return self.ring.one
        if self.ring.is_domain:
            return self._det_bareiss()
        return self._det_subset_expansion()

    def _det_bareiss(self) -> RingElement:
        """Fraction-free elimination; all divisions are exact in the domain."""
        ring = self.ring
        n = self.rows
        a = [[e for e in row] for row in self.entries]
        sign = 1
        prev = ring.one
        for k in range(n - 1):
            if a[k][k].is_zero:
                pivot_row = next((i for i in range(k + 1, n) if not a[i][k].is_zero),
                                 None)
                if pivot_row is None:
                    return ring.zero
                a[k], a[pivot_row] = a[pivot_row], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                    a[i][j] = _exact_divide(num, prev)
                a[i][k] = ring.zero
            prev = a[k][k]
        det = a[n - 1][n - 1]
        return -det if sign < 0 else det

    def _det_subset_expansion(self) -> RingElement:
        """Column-subset dynamic programming over the Leibniz expansion;
        exact over non-domains where Bareiss division is unavailable."""
        ring = self.ring
        n = self.rows
        states = {0: ring.one}
        for i in range(n):
            nxt = {}
            row = self.entries[i]
            for mask, acc in states.items():
                if acc.is_zero:
                    continue
                for j in range(n):
                    bit = 1 << j
                    if mask & bit:
                        continue
                    e = row[j]
                    if e.is_zero:
                        continue
                    term = acc * e
                    # parity of inversions added: columns already used above j
                    if bin(mask >> (j + 1)).count("1") % 2:
                        term = -term
                    key = mask | bit
                    nxt[key] = nxt.get(key, ring.zero) + term
            states = nxt
        return states.get((1 << n) - 1, ring.zero)

    def is_invertible(self) -> bool:
        return self.is_square and self.det().is_unit()

    def inverse(self) -> "Matrix":
        """Exact inverse; raises NotInvertibleError when det is not a unit."""
        if not self.is_square:
            raise DimensionMismatchError("inverse of non-square matrix")
        ring = self.ring
        n = self.rows
        if n == 0:
            return self
        base = ring.scalar_base
        if not ring.is_poly and base.modulus:
            return self._inverse_mod2k()
        if ring.kind == "int":
            ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            raw = [[e.data for e in row] for row in self.entries]
            sol = intlinalg.solve(raw, ident)
            if sol is None:
                raise NotInvertibleError("determinant is not a unit")
            return Matrix.from_literal(ring, sol)
        return self._inverse_adjugate()

    def _inverse_mod2k(self) -> "Matrix":
        """Invert mod 2, then Newton-lift X <- X(2I - MX) up to 2^k."""
        ring = self.ring
        n = self.rows
        q = ring.modulus
        a2 = [[e.data % 2 for e in row] for row in self.entries]
        x2 = _gf2_inverse(a2)
        if x2 is None:
            raise NotInvertibleError("not invertible (singular mod 2)")
        x = Matrix.from_literal(ring, x2)
        two_i = Matrix.identity(ring, n).scale(ring.element(2))
        steps = q.bit_length() - 2  # one lift doubles the precision
        for _ in range(max(0, steps)):
            x = x @ (two_i - self @ x)
        assert (self @ x) == Matrix.identity(ring, n)
        return x

    def _inverse_adjugate(self) -> "Matrix":
        ring = self.ring
        n = self.rows
        det = self.det()
        if not det.is_unit():
            raise NotInvertibleError(f"determinant {det!r} is not a unit")
        det_inv = det.inverse()
        idx = list(range(n))
        cof = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = self.submatrix([r for r in idx if r != i],
                                       [c for c in idx if c != j])
                c = minor.det()
                if (i + j) % 2:
                    c = -c
                cof[j][i] = det_inv * c  # adjugate = transposed cofactors
        return Matrix(ring, cof)


def _exact_divide(a: RingElement, b: RingElement) -> RingElement:
    """a / b when the division is exact (Bareiss guarantees it)."""
    ring = a.ring
    if b == ring.one:
        return a
    if not ring.is_poly:
        if ring.kind == "int":
            q, r = divmod(a.data, b.data)
            if r:
                raise ArithmeticError("inexact division in Bareiss step")
            return ring.element(q)
        return a * b.inverse()  # F2 scalars
    # polynomial long division, remainder must vanish
    base = ring.base
    num = list(a.coeffs())
    den = list(b.coeffs())
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    lead = base.element(den[-1])
    if not lead.is_unit():
        raise ArithmeticError("Bareiss division needs a unit leading coefficient")
    lead_inv = lead.inverse()
    out = [0] * max(0, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        factor = (base.element(num[-1]) * lead_inv).data
        out[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] = base._reduce_scalar(num[shift + i] - factor * c)
    if any(num):
        raise ArithmeticError("inexact polynomial division in Bareiss step")
    return ring.element(out)


def _gf2_inverse(a: List[List[int]]) -> Optional[List[List[int]]]:
    n = len(a)
    aug = [[a[i][j] % 2 for j in range(n)] + [1 if i == j else 0 for j in range(n)]
           for i in range(n)]
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[row], aug[pivot] = aug[pivot], aug[row]
        for r in range(n):
            if r != row and aug[r][col]:
                aug[r] = [(x + y) % 2 for x, y in zip(aug[r], aug[row])]
        row += 1
    return [r[n:] for r in aug]


# -- exact linear solving over the rings -------------------------------------


def _int_encoding(ring: RingDescriptor, degree_cap: int):
    """Number of integer coordinates per ring element and the modulus."""
    if ring.is_poly:
        return degree_cap + 1, ring.base.modulus
    return 1, ring.modulus


def _element_coords(e: RingElement, width: int) -> List[int]:
    coeffs = e.coeffs()
    if len(coeffs) > width:
        raise ValueError(f"element degree exceeds encoding width {width - 1}")
    return list(coeffs) + [0] * (width - len(coeffs))


def linear_solve(a: Matrix, b: Matrix, degree_cap: Optional[int] = None
                 ) -> Optional[Matrix]:
    """Exact X with a @ X = b, or None.

    Over R[x] the unknown entries are capped at ``degree_cap`` (default:
    max input degree + 2, enough for all the witness solves used here).
    """
    if a.ring != b.ring:
        raise RingMismatchError("solve over mixed rings")
    if a.rows != b.rows:
        raise DimensionMismatchError("solve shape mismatch")
    ring = a.ring
    n_unknown_entries = a.cols * b.cols
    if a.cols == 0:
        return Matrix.zeros(ring, 0, b.cols) if b.is_zero else None
    if degree_cap is None:
        max_deg = max([e.degree for row in a.entries for e in row] +
                      [e.degree for row in b.entries for e in row] + [0])
        degree_cap = max_deg + 2
    width, modulus = _int_encoding(ring, degree_cap)
    # polynomial products raise degrees: equations track up to eq_width - 1
    if ring.is_poly:
        a_deg = max([e.degree for row in a.entries for e in row] + [0])
        eq_width = max(width + max(a_deg, 0), width)
    else:
        eq_width = width

    n_eq = a.rows * b.cols * eq_width
    n_var = n_unknown_entries * width
    m = intlinalg.zeros(n_eq, n_var)
    rhs = intlinalg.zeros(n_eq, 1)

    def eq_index(i, j, c):
        return (i * b.cols + j) * eq_width + c

    def var_index(k, j, c):
        return (k * b.cols + j) * width + c

    for i in range(a.rows):
        for j in range(b.cols):
            for c, coeff in enumerate(_element_coords(b.entry(i, j), eq_width)):
                rhs[eq_index(i, j, c)][0] = coeff
            for k in range(a.cols):
                a_coeffs = a.entry(i, k).coeffs()
                for d_a, ca in enumerate(a_coeffs):
                    if ca == 0:
                        continue
                    for d_x in range(width):
                        if d_a + d_x < eq_width:
                            m[eq_index(i, j, d_a + d_x)][var_index(k, j, d_x)] += ca
    if modulus:
        # unknowns live mod 2^k: allow each equation to absorb multiples of it
        for r in range(n_eq):
            col = [0] * n_eq
            col[r] = modulus
            for rr in range(n_eq):
                m[rr].append(col[rr])
    sol = intlinalg.solve(m, rhs)
    if sol is None:
        return None
    out = []
    for k in range(a.cols):
        row = []
        for j in range(b.cols):
            coords = [sol[var_index(k, j, c)][0] for c in range(width)]
            row.append(ring.element(coords if ring.is_poly else coords[0]))
        out.append(row)
    return Matrix(ring, out)


def left_inverse(a: Matrix, degree_cap: Optional[int] = None) -> Optional[Matrix]:
    """P with P @ a = identity, or None (a split injection witness)."""
    sol = linear_solve(a.transpose(), Matrix.identity(a.ring, a.cols),
                       degree_cap=degree_cap)
    return sol.transpose() if sol is not None else None


def right_inverse(a: Matrix, degree_cap: Optional[int] = None) -> Optional[Matrix]:
    """S with a @ S = identity, or None (a split surjection witness)."""
    return linear_solve(a, Matrix.identity(a.ring, a.rows), degree_cap=degree_cap)


def kernel_summand_basis(a: Matrix) -> Matrix:
    """Columns freely generating ker(a) over a scalar ring.

    Over Z the kernel of any matrix is free; over Z/2^k this raises
    NonFreeQuotientError unless the kernel is a free direct summand (which
    holds whenever the relevant inclusions are direct summands).
    """
    ring = a.ring
    if ring.is_poly:
        raise NotImplementedError("kernels over polynomial rings are out of scope")
    raw = [[e.data for e in row] for row in a.entries]
    if ring.kind == "int":
        cols = intlinalg.kernel_basis(raw, a.cols)
        return Matrix.from_literal(ring, transpose_cols(cols, a.cols))
    q = ring.modulus
    if not raw:
        return Matrix.identity(ring, a.cols)
    d, _, v = intlinalg.smith_normal_form(raw)
    diag = intlinalg.diagonal(d)
    basis_cols = []
    for j in range(a.cols):
        dj = diag[j] if j < len(diag) else 0
        if dj % q == 0:
            basis_cols.append([v[i][j] for i in range(a.cols)])
        elif dj % 2 == 0:
            raise NonFreeQuotientError(
                f"kernel over {ring} is not a free direct summand")
    return Matrix.from_literal(ring, transpose_cols(basis_cols, a.cols))


def transpose_cols(cols: List[List[int]], height: int) -> List[List[int]]:
    """Column vectors -> row-major literal of the matrix with those columns."""
    if not cols:
        return [[] for _ in range(height)]
    return [[col[i] for col in cols] for i in range(height)]


def random_unimodular(ring: RingDescriptor, n: int, rng, steps: int = 6) -> Matrix:
    """Product of random elementary matrices (always determinant +-1)."""
    m = Matrix.identity(ring, n)
    if n <= 1:
        return m
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        c = ring.element(rng.choice([-1, 1, 2]))
        elem = Matrix.identity(ring, n).to_literal()
        elem[i][j] = c.to_literal()
        m = m @ Matrix.from_literal(ring, elem)
    return m
