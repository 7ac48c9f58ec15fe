"""Exact integer linear algebra: Smith normal form, kernels, solving.

Matrices are lists of row lists of Python ints.  Everything here is plain
unimodular row/column reduction; sizes stay small (desk scale), so no
effort is spent on pivoting heuristics beyond picking a least nonzero pivot.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

IntMatrix = List[List[int]]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def mat_mult(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cols):
                    oi[j] += aik * bk[j]
    return out


def transpose(a: IntMatrix) -> IntMatrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def smith_normal_form(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with U*m*V = D, U and V unimodular, D diagonal with
    each nonzero d_i dividing d_{i+1}, all d_i >= 0."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [row[:] for row in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst += q*row_src
        drow, dsrc = d[dst], d[src]
        for j in range(cols):
            drow[j] += q * dsrc[j]
        urow, usrc = u[dst], u[src]
        for j in range(rows):
            urow[j] += q * usrc[j]

    def add_col(src, dst, q):  # col_dst += q*col_src
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < rows and t < cols:
        # find least-magnitude nonzero pivot in the remaining block
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        done = False
            # clear row t
            for j in range(t + 1, cols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if d[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(min(rows, cols) - 1):
            a, b = d[i][i], d[i + 1][i + 1]
            if a and b % a != 0:
                # fold d[i+1][i+1] into position (i, i) and re-clear
                add_col(i + 1, i, 1)
                while True:
                    done = True
                    if d[i + 1][i]:
                        q = d[i + 1][i] // d[i][i] if d[i][i] else 0
                        add_row(i, i + 1, -q)
                        if d[i + 1][i]:
                            swap_rows(i, i + 1)
                            done = False
                    if d[i][i + 1]:
                        q = d[i][i + 1] // d[i][i] if d[i][i] else 0
                        add_col(i, i + 1, -q)
                        if d[i][i + 1]:
                            swap_cols(i, i + 1)
                            done = False
                    if done:
                        break
                if d[i][i] < 0:
                    negate_row(i)
                if d[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
            elif a == 0 and b != 0:
                swap_rows(i, i + 1)
                swap_cols(i, i + 1)
                changed = True
    return d, u, v


def diagonal(d: IntMatrix) -> List[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def det_unimodular(m: IntMatrix) -> int:
    d, _, _ = smith_normal_form(m)
    det = 1
    for x in diagonal(d):
        det *= x
    return det


def invert_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix."""
    n = len(m)
    d, u, v = smith_normal_form(m)
    if diagonal(d) != [1] * n:
        raise ValueError("matrix is not unimodular")
    return mat_mult(v, u)  # m = U^-1 D V^-1 = U^-1 V^-1, so m^-1 = V U


def kernel_basis(m: IntMatrix, cols: Optional[int] = None) -> List[List[int]]:
    """Basis (as column vectors) of the saturated integer kernel of m."""
    rows = len(m)
    if cols is None:
        cols = len(m[0]) if rows else 0
    if rows == 0 or cols == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    d, _, v = smith_normal_form(m)
    diag = diagonal(d)
    rank = sum(1 for x in diag if x != 0)
    return [[v[i][j] for i in range(cols)] for j in range(rank, cols)]


def solve(m: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """Integer solution X of m @ X = b (b given by columns), else None."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    nrhs = len(b[0]) if b and b[0] is not None else 0
    if rows == 0:
        return zeros(cols, nrhs)
    if len(b) != rows:
        raise ValueError("shape mismatch in solve")
    if cols == 0:
        return zeros(0, nrhs) if all(all(x == 0 for x in row) for row in b) else None
    d, u, v = smith_normal_form(m)
    diag = diagonal(d)
    ub = mat_mult(u, b)
    y = zeros(cols, nrhs)
    for i in range(rows):
        di = diag[i] if i < len(diag) else 0
        for j in range(nrhs):
            rhs = ub[i][j]
            if di == 0:
                if rhs != 0:
                    return None
            else:
                if rhs % di != 0:
                    return None
                if i < cols:
                    y[i][j] = rhs // di
    return mat_mult(v, y)


def lattice_column_basis(gens: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the lattice spanned by the columns of ``gens``."""
    rows = len(gens)
    cols = len(gens[0]) if rows else 0
    if rows == 0 or cols == 0:
        return [[] for _ in range(rows)]
    d, u, _ = smith_normal_form(gens)
    uinv = invert_unimodular(u)
    diag = diagonal(d)
    rank = sum(1 for x in diag if x != 0)
    # columns of U^-1 * D restricted to the nonzero diagonal part
    basis = [[uinv[i][j] * diag[j] for j in range(rank)] for i in range(rows)]
    return basis


def invariant_factors_of_quotient(gen_count: int, relations: IntMatrix) -> List[int]:
    """Invariant factors of Z^gen_count / (column span of relations).

    0 entries denote free Z summands; unit factors are dropped.
    """
    if gen_count == 0:
        return []
    if not relations or not relations[0]:
        return [0] * gen_count
    d, _, _ = smith_normal_form(relations)
    diag = diagonal(d)
    factors = [x for x in diag if x != 0]
    factors += [0] * (gen_count - len(factors))
    return [f for f in factors if f != 1]
