"""Brute-force computation of the symmetric, hyperquadratic and quadratic
groups of bounded chain complexes over Z and Z/2^k, plus the twisted groups
of bundle segments.

A complex C with support in [0, 3] has C tensor C supported in [0, 6], so at
any fixed total degree only finitely many resolution slots contribute.  The
oracle assembles those finite pieces literally and takes homology by Smith
normal form; nothing here shares code with the closed-form route, which is
the point.

Conventions (signed transposition with epsilon = +1 throughout):

  * slot s of a degree-m chain of the symmetric complex holds a component in
    (C tensor C)_{m+s}, s >= 0 (all integer s for the hyperquadratic
    complex, and (C tensor C)_{m-s} for the quadratic one);
  * the involution acts on x tensor y by (-1)^{|x||y|} y tensor x;
  * differentials alternate 1 - T and 1 + T between consecutive slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import intlinalg
from .bundles import CHAR2, ORDER2FREE, BundleSegment, build_universal_bundle
from .matrices import Matrix
from .presentations import ExtensionDescription, GroupPresentation
from .rings import F2, ZZ, RingDescriptor, UnsupportedRingError, Zmod

IntMatrix = List[List[int]]


class UnsupportedComplexError(ValueError):
    pass


@dataclass(frozen=True)
class FinChainComplex:
    """Bounded complex of free modules over Z (modulus 0) or Z/2^k."""

    modulus: int
    ranks: Dict[int, int]
    differentials: Dict[int, IntMatrix]  # degree r -> matrix C_r -> C_{r-1}

    def __post_init__(self):
        degrees = sorted(d for d, r in self.ranks.items() if r)
        if degrees and (degrees[0] < 0 or degrees[-1] > 3):
            raise UnsupportedComplexError("support must lie within [0, 3]")
        if len(degrees) > 4:
            raise UnsupportedComplexError("support too wide (> 4 degrees)")
        for r, d in self.differentials.items():
            if len(d) != self.rank(r - 1) or (d and len(d[0]) != self.rank(r)):
                raise UnsupportedComplexError(f"differential at degree {r} has wrong shape")
        for r in self.differentials:
            if r - 1 in self.differentials:
                square = intlinalg.mat_mult(self.differentials[r - 1],
                                            self.differentials[r])
                if any(x % self.modulus if self.modulus else x
                       for row in square for x in row):
                    raise UnsupportedComplexError("d^2 != 0")

    @staticmethod
    def from_matrices(ring: RingDescriptor, diffs: Dict[int, Matrix],
                      ranks: Dict[int, int]) -> "FinChainComplex":
        if ring.is_poly or ring.kind not in ("int", "intmod", "gf2"):
            raise UnsupportedRingError(f"oracle works over Z and Z/2^k, not {ring}")
        modulus = ring.modulus
        raw = {r: [[e.data for e in row] for row in m.entries]
               for r, m in diffs.items()}
        return FinChainComplex(modulus, dict(ranks), raw)

    def rank(self, r: int) -> int:
        return self.ranks.get(r, 0)

    @property
    def top(self) -> int:
        live = [d for d, r in self.ranks.items() if r]
        return max(live) if live else 0


def _tensor_basis(c: FinChainComplex, m: int) -> List[Tuple[int, int, int, int]]:
    basis = []
    for p, rp in sorted(c.ranks.items()):
        q = m - p
        rq = c.rank(q)
        if rp and rq:
            basis.extend((p, i, q, j) for i in range(rp) for j in range(rq))
    return basis


def _tensor_d(c: FinChainComplex, m: int) -> IntMatrix:
    """(C tensor C)_m -> (C tensor C)_{m-1}: d(x ox y) = dx ox y + (-1)^p x ox dy."""
    src = _tensor_basis(c, m)
    dst = _tensor_basis(c, m - 1)
    index = {b: k for k, b in enumerate(dst)}
    out = intlinalg.zeros(len(dst), len(src))
    for col, (p, i, q, j) in enumerate(src):
        dp = c.differentials.get(p)
        if dp:
            for r in range(len(dp)):
                coef = dp[r][i]
                if coef:
                    out[index[(p - 1, r, q, j)]][col] += coef
        dq = c.differentials.get(q)
        if dq:
            sign = -1 if p % 2 else 1
            for r in range(len(dq)):
                coef = dq[r][j]
                if coef:
                    out[index[(p, i, q - 1, r)]][col] += sign * coef
    return out


def _tensor_involution(c: FinChainComplex, m: int) -> IntMatrix:
    basis = _tensor_basis(c, m)
    index = {b: k for k, b in enumerate(basis)}
    out = intlinalg.zeros(len(basis), len(basis))
    for col, (p, i, q, j) in enumerate(basis):
        sign = -1 if (p * q) % 2 else 1
        out[index[(q, j, p, i)]][col] = sign
    return out


def _slots(c: FinChainComplex, m: int, flavor: str) -> List[int]:
    width = 2 * c.top
    if flavor == "sym":
        return [s for s in range(max(0, -m), width - m + 1)]
    if flavor == "hyper":
        return list(range(-m, width - m + 1))
    if flavor == "quad":
        return [s for s in range(max(0, m - width), m + 1)]
    raise ValueError(f"unknown flavor {flavor!r}")


def _slot_degree(m: int, s: int, flavor: str) -> int:
    return m - s if flavor == "quad" else m + s


def _chain_dims(c: FinChainComplex, m: int, flavor: str) -> List[int]:
    return [len(_tensor_basis(c, _slot_degree(m, s, flavor)))
            for s in _slots(c, m, flavor)]


def _assembled_d(c: FinChainComplex, m: int, flavor: str) -> IntMatrix:
    """Differential from the degree-m chains to the degree-(m-1) chains."""
    src_slots = _slots(c, m, flavor)
    dst_slots = _slots(c, m - 1, flavor)
    src_dims = _chain_dims(c, m, flavor)
    dst_dims = _chain_dims(c, m - 1, flavor)
    src_off = [0]
    for d in src_dims:
        src_off.append(src_off[-1] + d)
    dst_off = [0]
    for d in dst_dims:
        dst_off.append(dst_off[-1] + d)
    out = intlinalg.zeros(dst_off[-1], src_off[-1])

    def paste(block: IntMatrix, di: int, si: int, scale: int = 1):
        r0, c0 = dst_off[di], src_off[si]
        for r, row in enumerate(block):
            for cc, val in enumerate(row):
                if val:
                    out[r0 + r][c0 + cc] += scale * val

    src_pos = {s: k for k, s in enumerate(src_slots)}
    for di, t in enumerate(dst_slots):
        if flavor in ("sym", "hyper"):
            # d_T on slot t, and -(-1)^m (1 + (-1)^t T) from slot t - 1
            if t in src_pos:
                paste(_tensor_d(c, m + t), di, src_pos[t])
            if (t - 1) in src_pos:
                deg = m - 1 + t
                invol = _tensor_involution(c, deg)
                n = len(invol)
                sign_t = -1 if t % 2 else 1
                block = [[(1 if r == cc else 0) + sign_t * invol[r][cc]
                          for cc in range(n)] for r in range(n)]
                paste(block, di, src_pos[t - 1], scale=-(1 if m % 2 == 0 else -1))
        else:
            # (-1)^t d_T on slot t, and (1 + (-1)^{t+1} T) from slot t + 1
            if t in src_pos:
                paste(_tensor_d(c, m - t), di, src_pos[t],
                      scale=(1 if t % 2 == 0 else -1))
            if (t + 1) in src_pos:
                deg = m - 1 - t
                invol = _tensor_involution(c, deg)
                n = len(invol)
                sign = -1 if (t + 1) % 2 else 1
                block = [[(1 if r == cc else 0) + sign * invol[r][cc]
                          for cc in range(n)] for r in range(n)]
                paste(block, di, src_pos[t + 1])
    return out


def _fp_homology(modulus: int, d_out: IntMatrix, d_in: IntMatrix,
                 dim: int) -> GroupPresentation:
    """Homology ker(d_out)/im(d_in) for free modules over Z or Z/modulus."""
    if dim == 0:
        return GroupPresentation.trivial()
    if modulus == 0:
        if d_out and len(d_out) > 0:
            kernel_cols = intlinalg.kernel_basis(d_out, dim)
        else:
            kernel_cols = intlinalg.kernel_basis([[0] * dim], dim)
        if not kernel_cols:
            return GroupPresentation.trivial()
        k = [[col[i] for col in kernel_cols] for i in range(dim)]
        rels = [row[:] for row in d_in] if d_in and d_in[0] else None
        if rels is None:
            factors = [0] * len(kernel_cols)
        else:
            coords = intlinalg.solve(k, rels)
            assert coords is not None, "image does not lie in the kernel"
            factors = intlinalg.invariant_factors_of_quotient(len(kernel_cols),
                                                              coords)
        return GroupPresentation.from_invariant_factors(factors)
    # modular case: kernel mod q as a sublattice of Z^dim containing q Z^dim
    rows = len(d_out)
    if rows:
        aug = [d_out[r][:] + [modulus if c == r else 0 for c in range(rows)]
               for r in range(rows)]
        kernel_cols = intlinalg.kernel_basis(aug, dim + rows)
        gens = [[col[i] for col in kernel_cols] for i in range(dim)]
    else:
        gens = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    for i in range(dim):
        gens[i].extend(modulus if j == i else 0 for j in range(dim))
    lattice = intlinalg.lattice_column_basis(gens)
    width = len(lattice[0]) if lattice and lattice[0] else 0
    if width == 0:
        return GroupPresentation.trivial()
    rels = [(d_in[r][:] if d_in and d_in[0] else []) +
            [modulus if c == r else 0 for c in range(dim)] for r in range(dim)]
    coords = intlinalg.solve(lattice, rels)
    assert coords is not None, "relations do not lie in the kernel lattice"
    factors = intlinalg.invariant_factors_of_quotient(width, coords)
    return GroupPresentation.from_invariant_factors(factors)


def oracle_q_group(c: FinChainComplex, n: int, flavor: str) -> GroupPresentation:
    """H_n of the assembled symmetric / hyperquadratic / quadratic complex."""
    dim = sum(_chain_dims(c, n, flavor))
    d_out = _assembled_d(c, n, flavor)
    d_in = _assembled_d(c, n + 1, flavor)
    return _fp_homology(c.modulus, d_out, d_in, dim)


def segment_complex(segment: BundleSegment) -> FinChainComplex:
    """The segment as a finite complex (order2free over Z only, placed at
    degrees {0, 1}; char2 over F2 as a single module at its degree)."""
    bundle = segment.bundle
    if bundle.family == ORDER2FREE:
        if bundle.ring != ZZ:
            raise UnsupportedRingError("oracle segments over Z only (finite ring side: F2)")
        r = bundle.rank
        two_i = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
        return FinChainComplex(0, {0: r, 1: r}, {1: two_i})
    if bundle.ring != F2:
        raise UnsupportedRingError("char2 oracle segments live over F2")
    return FinChainComplex(2, {segment.index: bundle.rank}, {})


# -- twisted structures on segments -------------------------------------------


@dataclass(frozen=True)
class TwistedQResult:
    """Twisted group of a bundle segment: order and exponent always, a
    presentation when the isomorphism type is forced, an extension
    description otherwise."""

    order: Optional[int]
    exponent: Optional[int]
    presentation: Optional[GroupPresentation]
    extension: Optional[ExtensionDescription]
    route: str
    notes: str = ""


def _sym_f2(rank: int) -> List[Tuple[Tuple[int, ...], ...]]:
    mats = []
    positions = [(i, j) for i in range(rank) for j in range(i, rank)]
    for bits in range(1 << len(positions)):
        m = [[0] * rank for _ in range(rank)]
        for k, (i, j) in enumerate(positions):
            if (bits >> k) & 1:
                m[i][j] = m[j][i] = 1
        mats.append(tuple(tuple(row) for row in m))
    return mats


def _mat_mult2(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) % 2
                       for j in range(n)) for i in range(n))


def _mat_add2(a, b):
    return tuple(tuple((x + y) % 2 for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def _diag(m):
    return tuple(m[i][i] for i in range(len(m)))


def oracle_twisted_q(segment: BundleSegment, n: int,
                     degree: Optional[int] = None) -> TwistedQResult:
    """Twisted group of a bundle segment.

    Over F2 (char2 family, rank <= 2) the group is enumerated literally:
    structures are pairs (cycle, bounding chain), the addition carries the
    X-twisted correction, and the equivalence closure is walked exhaustively.
    Over Z the group is read off the boundary exact sequence relating it to
    the kernel and cokernel of the defect maps; the degree-0 group is an
    extension whose class the enumeration cannot see, and is reported as
    such.
    """
    bundle = segment.bundle
    if bundle.family == CHAR2:
        return _twisted_char2(segment, n)
    if bundle.ring != ZZ or segment.index != 0:
        raise UnsupportedRingError("twisted groups over Z: degree-zero segment only")
    return _twisted_order2free_z(n, degree)


def _twisted_char2(segment: BundleSegment, n: int) -> TwistedQResult:
    bundle = segment.bundle
    if bundle.ring != F2 or bundle.rank > 2:
        raise UnsupportedRingError("enumeration needs an F2 segment of rank <= 2")
    rank = bundle.rank
    r2 = 2 * segment.index
    x = tuple(tuple(1 if (i == j and not bundle.x_entries[i].is_zero) else 0
                    for j in range(rank)) for i in range(rank))
    if n > r2:
        return TwistedQResult(1, 1, GroupPresentation.trivial(), None,
                              "enumeration", "no chains above twice the degree")
    if n == r2:
        return _enumerate_top(rank, x)
    if n == r2 - 1:
        return _enumerate_top_minus_one(rank, x)
    # below the quadratic range the twist is invisible: plain quadratic group
    pres = oracle_q_group(segment_complex(segment), n, "quad")
    return TwistedQResult(pres.order(), _exponent_of(pres), pres, None,
                          "enumeration", "untwisted below the quadratic range")


def _enumerate_top(rank: int, x) -> TwistedQResult:
    """Degree 2r: pairs (M symmetric with M + MXM symmetrized-trivial, theta
    mod symmetrized chains tracked by its diagonal), with twisted addition."""
    elements = []
    for m in _sym_f2(rank):
        defect = _mat_add2(m, _mat_mult2(_mat_mult2(m, x), m))
        if any(_diag(defect)):
            continue
        for dbits in range(1 << rank):
            delta = tuple((dbits >> i) & 1 for i in range(rank))
            elements.append((m, delta))

    def add(a, b):
        (m1, d1), (m2, d2) = a, b
        xi = _diag(_mat_mult2(_mat_mult2(m1, x), m2))
        return (_mat_add2(m1, m2),
                tuple((p + q + r) % 2 for p, q, r in zip(d1, d2, xi)))

    return _group_from_table(elements, add, "enumeration")


def _enumerate_top_minus_one(rank: int, x) -> TwistedQResult:
    """Degree 2r - 1: pairs (phi in the symmetrized image, theta with
    theta + theta^t = phi), modulo moves by arbitrary zeta (which shift phi
    by zeta + zeta^t and theta by zeta + zeta X zeta^t) and by symmetrized
    shifts of theta."""
    all_mats = []
    for bits in range(1 << (rank * rank)):
        m = tuple(tuple((bits >> (i * rank + j)) & 1 for j in range(rank))
                  for i in range(rank))
        all_mats.append(m)
    quad = [m for m in all_mats if m == tuple(zip(*m)) and not any(_diag(m))]
    elements = []
    for phi in quad:
        for theta in all_mats:
            if _mat_add2(theta, tuple(zip(*theta))) == phi:
                elements.append((phi, theta))
    index = {e: k for k, e in enumerate(elements)}
    parent = list(range(len(elements)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for e in elements:
        phi, theta = e
        for zeta in all_mats:
            phi2 = _mat_add2(phi, _mat_add2(zeta, tuple(zip(*zeta))))
            corr = _mat_mult2(_mat_mult2(zeta, x), tuple(zip(*zeta)))
            theta2 = _mat_add2(theta, _mat_add2(zeta, corr))
            union(index[e], index[(phi2, theta2)])
        for eta in all_mats:
            shift = _mat_add2(eta, tuple(zip(*eta)))
            union(index[e], index[(phi, _mat_add2(theta, shift))])

    reps = {}
    for k, e in enumerate(elements):
        reps.setdefault(find(k), e)
    classes = list(reps.values())

    def add(a, b):
        summed = (_mat_add2(a[0], b[0]), _mat_add2(a[1], b[1]))
        return reps[find(index[summed])]

    canonical = {e: reps[find(index[e])] for e in elements}
    return _group_from_table([canonical[e] for e in classes], add, "enumeration")


def _group_from_table(elements, add, route) -> TwistedQResult:
    order = len(elements)
    zero = next(e for e in elements
                if all(all(v == 0 for v in row) for row in e[0])
                and all(v == 0 for v in (e[1] if isinstance(e[1][0], int)
                                         else [x for row in e[1] for x in row])))
    exponent = 1
    for e in elements:
        k, acc = 1, e
        while acc != zero:
            acc = add(acc, e)
            k += 1
            assert k <= order
        exponent = exponent * k // _gcd(exponent, k)
    pres = _abelian_type(order, exponent)
    return TwistedQResult(order, exponent, pres, None, route)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _abelian_type(order: int, exponent: int) -> Optional[GroupPresentation]:
    """Isomorphism type when (order, exponent) pins it down (2-groups of
    order <= 8 and a few more); None otherwise."""
    if order == 1:
        return GroupPresentation.trivial()
    if order == exponent:
        return GroupPresentation(name=f"Z/{order}", orders=(order,))
    if exponent == 2:
        k = order.bit_length() - 1
        return GroupPresentation(name=f"(Z/2)^{k}", orders=(2,) * k)
    if order == 8 and exponent == 4:
        return GroupPresentation(name="Z/4 + Z/2", orders=(2, 4))
    return None


def _exponent_of(pres: GroupPresentation) -> Optional[int]:
    if pres.order() is None:
        return None
    exp = 1
    for o in list(pres.orders) + [f.order for f in pres.families
                                  for _ in f.exponents]:
        exp = exp * o // _gcd(exp, o)
    return exp


def _twisted_order2free_z(n: int, degree: Optional[int]) -> TwistedQResult:
    from .bundles import ker_coker_j, segment_q_groups

    route = "boundary exact sequence"
    if n == 2:
        domain = segment_q_groups(ZZ, 2, "sym", degree)
        assert domain.is_trivial
        return TwistedQResult(1, 1, GroupPresentation.trivial(), None, route,
                              "image of the defect map on a vanishing group")
    if n == 1:
        ker, _ = ker_coker_j(ZZ, "J1", degree)
        return TwistedQResult(ker.order(), _exponent_of(ker), ker, None, route)
    if n == 0:
        _, coker1 = ker_coker_j(ZZ, "J1", degree)
        ker0, _ = ker_coker_j(ZZ, "J0", degree)
        ext = ExtensionDescription(
            sub=coker1, quotient=ker0, resolved=False,
            notes="extension class not computed by the boundary route")
        return TwistedQResult(ext.order(), None, None, ext, route)
    if n == -1:
        _, coker0 = ker_coker_j(ZZ, "J0", degree)
        return TwistedQResult(coker0.order(), _exponent_of(coker0), coker0,
                              None, route)
    if n == -2:
        return TwistedQResult(1, 1, GroupPresentation.trivial(), None, route,
                              "defect maps are isomorphisms below the segment range")
    raise UnsupportedQueryRange(n)


class UnsupportedQueryRange(ValueError):
    def __init__(self, n):
        super().__init__(f"twisted group at degree {n} outside [-2, 2]")


def smith_normal_form(m: IntMatrix):
    """Re-export of the integer Smith normal form (D, U, V with U m V = D)."""
    return intlinalg.smith_normal_form(m)
