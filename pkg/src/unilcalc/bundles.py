"""Universal chain bundles over Z, Z[x], F2, F2[x] and the calculations
attached to them: Wu classes, the quadratic defect maps on symmetric
matrices, kernel/cokernel bookkeeping, and closed-form Q-groups of the
degree-zero two-term segment.

The two bundle families:

  * ``char2``: over a ring A with 2A = 0 whose squaring map makes A a free
    module of finite rank over itself; every chain module is that module and
    all differentials vanish.
  * ``order2free``: over A with no 2-torsion such that A/2A is free of rank
    r over A via squaring; chain modules are A^r, with multiplication by 2
    from odd to even degrees and zero from even to odd.

In both cases the only piece of the bundle data any calculation consumes is
the diagonal matrix X whose entries are the module basis {x_1, ..., x_r}
(namely {1} over Z and F2, {1, x} over Z[x] and F2[x]).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .forms import SymQuotientElem, sym_quotient_reduce
from .matrices import Matrix
from .presentations import GroupPresentation, PolyFamily
from .rings import (F2, F2X, ZX, ZZ, RingDescriptor, RingElement,
                    UnsupportedRingError, default_degree_cap, frobenius)


class UnsupportedQueryError(ValueError):
    """The requested group is not determined by the implemented identities."""


class NonCycleError(ValueError):
    """Wu classes are only defined on cycles."""


CHAR2 = "char2"
ORDER2FREE = "order2free"


@dataclass(frozen=True)
class ChainBundle:
    """A universal chain bundle presented by its family, rank and X matrix."""

    ring: RingDescriptor
    family: str
    rank: int
    x_entries: Tuple[RingElement, ...]

    @property
    def x_matrix(self) -> Matrix:
        return Matrix.diagonal(self.ring, list(self.x_entries))

    def segment(self, index: int) -> "BundleSegment":
        return BundleSegment(self, index)


@dataclass(frozen=True)
class BundleSegment:
    """For the order2free family, the two-term piece multiplication-by-2:
    degree 2i+1 -> degree 2i; for char2, the single module in degree i."""

    bundle: ChainBundle
    index: int

    @property
    def degrees(self) -> Tuple[int, ...]:
        if self.bundle.family == ORDER2FREE:
            return (2 * self.index, 2 * self.index + 1)
        return (self.index,)


def build_universal_bundle(ring: RingDescriptor) -> ChainBundle:
    """The universal bundle for Z, Z[x], F2 or F2[x]."""
    if ring == ZZ:
        return ChainBundle(ring, ORDER2FREE, 1, (ring.one,))
    if ring == ZX:
        return ChainBundle(ring, ORDER2FREE, 2, (ring.one, ring.x))
    if ring == F2:
        return ChainBundle(ring, CHAR2, 1, (ring.one,))
    if ring == F2X:
        return ChainBundle(ring, CHAR2, 2, (ring.one, ring.x))
    raise UnsupportedRingError(f"no universal bundle implemented over {ring}")


# -- Wu classes ---------------------------------------------------------------


def wu_class(bundle: ChainBundle, r: int, h) -> RingElement:
    """Evaluate the degree-r Wu class on a cycle h in the degree-r module.

    Returns sum_i x_i h_i^2 as a canonical representative of the parity-r
    Tate group (coefficients reduced mod 2 in the order2free family).
    """
    ring = bundle.ring
    coords = [ring.element(c) for c in h]
    if len(coords) != bundle.rank:
        raise ValueError(f"expected {bundle.rank} coordinates, got {len(coords)}")
    if bundle.family == ORDER2FREE and r % 2 == 1:
        # odd-degree cycles are the kernel of multiplication by 2, i.e. zero
        if any(not c.is_zero for c in coords):
            raise NonCycleError("nonzero chain in an odd degree is not a cycle")
        return ring.zero
    value = ring.zero
    for x_i, h_i in zip(bundle.x_entries, coords):
        value = value + x_i * h_i * h_i
    if bundle.family == ORDER2FREE:
        value = ring.element([c % 2 for c in value.coeffs()]
                             if ring.is_poly else value.data % 2)
    return value


def wu_universality(bundle: ChainBundle) -> bool:
    """The standard basis of the degree-0 homology must map bijectively onto
    the designated module basis of the parity-0 Tate group."""
    ring = bundle.ring
    images = []
    for i in range(bundle.rank):
        h = [1 if j == i else 0 for j in range(bundle.rank)]
        images.append(wu_class(bundle, 0, h))
    expected = list(bundle.x_entries)
    if bundle.family == ORDER2FREE:
        expected = [ring.element([c % 2 for c in x.coeffs()] if ring.is_poly
                                 else x.data % 2) for x in expected]
    return images == expected and len(set(images)) == bundle.rank


# -- the quadratic defect map on symmetric matrices --------------------------

_LEVELS = {
    "J0": (ORDER2FREE, "2Quad"),
    "J1": (ORDER2FREE, "2Sym"),
    "C2": (CHAR2, "none"),
}


def j_map(ring: RingDescriptor, level: str, m: Matrix) -> SymQuotientElem:
    """The defect map M -> M - M X M (order2free) or M X M - M (char2),
    landing in Sym_r / Quad_r.

    The input must be a canonical representative of the level's domain:
    Sym/2Quad for J0, Sym/2Sym for J1, plain Sym for C2.
    """
    if level not in _LEVELS:
        raise ValueError(f"unknown level {level!r}; expected J0, J1 or C2")
    family, domain = _LEVELS[level]
    bundle = build_universal_bundle(ring)
    if bundle.family != family:
        raise UnsupportedRingError(f"level {level} does not apply over {ring}")
    if m.ring != ring or m.rows != bundle.rank or m.cols != bundle.rank:
        raise ValueError(f"expected a {bundle.rank}x{bundle.rank} matrix over {ring}")
    if not (m - m.transpose()).is_zero:
        raise ValueError("input must be symmetric")
    if domain != "none" and sym_quotient_reduce(m, domain).representative != m:
        raise ValueError(f"entry outside the canonical {domain} residue range")
    x = bundle.x_matrix
    mxm = m @ x @ m
    image = (mxm - m) if family == CHAR2 else (m - mxm)
    return sym_quotient_reduce(image, "Quad")


def j_map_reduced(ring: RingDescriptor, level: str, m: Matrix) -> SymQuotientElem:
    """j_map after reducing m into the level's canonical domain."""
    family, domain = _LEVELS[level]
    if domain != "none":
        m = sym_quotient_reduce(m, domain).representative
    return j_map(ring, level, m)


# -- unique decomposition p = b^2 + d + x d^2 over F2[x] ----------------------


def square_decompose(p: RingElement) -> Tuple[RingElement, RingElement]:
    """The unique (b, d) with p = b^2 + d + x*d^2 over F2[x].

    Matching coefficients of p at even and odd exponents gives
    d_i + d_{2i+1} = a_{2i+1} and b_i + d_{2i} = a_{2i}, solved from the top
    index downwards.
    """
    if p.ring != F2X:
        raise UnsupportedRingError("square decomposition lives over F2[x]")
    a = list(p.coeffs())
    n = len(a)
    d = [0] * (n + 1)
    for i in range(n, -1, -1):
        a_odd = a[2 * i + 1] if 2 * i + 1 < n else 0
        d_high = d[2 * i + 1] if 2 * i + 1 <= n else 0
        d[i] = (a_odd + d_high) % 2
    b = [0] * (n + 1)
    for i in range(n + 1):
        a_even = a[2 * i] if 2 * i < n else 0
        d_even = d[2 * i] if 2 * i <= n else 0
        b[i] = (a_even + d_even) % 2
    bb, dd = F2X.element(b), F2X.element(d)
    assert frobenius(bb) + dd + F2X.x * frobenius(dd) == p
    return bb, dd


# -- the squaring-minus-one cokernel over F2[x] -------------------------------


def frobenius_coker_reduce(p: RingElement, mod_constants: bool = False
                           ) -> RingElement:
    """Normal form of p modulo the image of q -> q^2 - q on F2[x].

    Repeatedly rewrites x^{2i} as x^i for i > 0 (their difference is the
    image of x^i); with ``mod_constants`` the constant term is dropped as
    well.  The result has no even exponents above 0 (resp. at all).
    """
    result, _ = frobenius_coker_reduce_with_witness(p, mod_constants)
    return result


def frobenius_coker_reduce_with_witness(p: RingElement,
                                        mod_constants: bool = False
                                        ) -> Tuple[RingElement, RingElement]:
    """Also return q with p - normal_form = q^2 - q (+ a constant when
    ``mod_constants`` is set)."""
    if p.ring != F2X:
        raise UnsupportedRingError("reduction lives over F2[x]")
    coeffs = list(p.coeffs())
    witness = []
    i = len(coeffs) - 1
    while i > 0:
        if i % 2 == 0 and coeffs[i]:
            half = i // 2
            coeffs[i] = 0
            if half >= len(coeffs):
                coeffs.extend([0] * (half - len(coeffs) + 1))
            coeffs[half] ^= 1
            witness.append(half)
            i = len(coeffs) - 1  # re-trim from the top after a rewrite
            while i > 0 and not coeffs[i]:
                i -= 1
        else:
            i -= 1
    if mod_constants and coeffs:
        coeffs[0] = 0
    q = [0] * (max(witness) + 1 if witness else 0)
    for w in witness:
        q[w] ^= 1
    return F2X.element(coeffs), F2X.element(q)


def frobenius_kernel(degree: Optional[int] = None) -> List[RingElement]:
    """Basis of ker(q -> q^2 - q) on F2[x], computed by F2 linear algebra on
    the monomials of degree <= cap (the kernel is the constants {0, 1})."""
    degree = default_degree_cap() if degree is None else degree
    cols = degree + 1
    rows = 2 * degree + 1
    matrix = [[0] * cols for _ in range(rows)]
    for i in range(cols):
        matrix[2 * i][i] ^= 1
        matrix[i][i] ^= 1
    # F2 Gaussian elimination for the null space
    pivots = {}
    m = [row[:] for row in matrix]
    rank_row = 0
    for col in range(cols):
        pivot = next((r for r in range(rank_row, rows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank_row], m[pivot] = m[pivot], m[rank_row]
        for r in range(rows):
            if r != rank_row and m[r][col]:
                m[r] = [(x + y) % 2 for x, y in zip(m[r], m[rank_row])]
        pivots[col] = rank_row
        rank_row += 1
    basis = []
    for col in range(cols):
        if col in pivots:
            continue
        vec = [0] * cols
        vec[col] = 1
        for pc, pr in pivots.items():
            if m[pr][col]:
                vec[pc] = 1
        basis.append(F2X.element(vec))
    return basis


def coker_frobenius_presentation(degree: Optional[int] = None,
                                 mod_constants: bool = False
                                 ) -> GroupPresentation:
    """Presentation of coker(q -> q^2 - q) on F2[x] (or on F2[x]/F2),
    truncated at the degree cap.  The basis exponents are computed by
    reducing every monomial of degree <= cap to normal form."""
    degree = default_degree_cap() if degree is None else degree
    exponents = set()
    for e in range(degree + 1):
        mono = F2X.element([0] * e + [1])
        nf = frobenius_coker_reduce(mono, mod_constants)
        for i, c in enumerate(nf.coeffs()):
            if c:
                exponents.add(i)
    name = ("coker(squaring - 1 on F2[x]/F2)" if mod_constants
            else "coker(squaring - 1 on F2[x])")
    return GroupPresentation(
        name=name,
        families=(PolyFamily(2, tuple(sorted(exponents))),),
        truncation_degree=degree)


def decompose_hypothesis_check(max_degree: int = 7) -> bool:
    """Machine check that (b, d) -> b^2 + d + x d^2 is a bijection on the
    degree-truncated cosets: every p of degree <= max_degree decomposes, and
    distinct (b, d) pairs of bounded degree give distinct values."""
    seen = {}
    bound = max_degree // 2 + 1
    for b_bits in range(1 << bound):
        for d_bits in range(1 << bound):
            b = F2X.element([(b_bits >> i) & 1 for i in range(bound)])
            d = F2X.element([(d_bits >> i) & 1 for i in range(bound)])
            p = frobenius(b) + d + F2X.x * frobenius(d)
            key = p.coeffs()
            if key in seen and seen[key] != (b.coeffs(), d.coeffs()):
                return False
            seen[key] = (b.coeffs(), d.coeffs())
    for bits in range(1 << (max_degree + 1)):
        p = F2X.element([(bits >> i) & 1 for i in range(max_degree + 1)])
        b, d = square_decompose(p)
        if frobenius(b) + d + F2X.x * frobenius(d) != p:
            return False
    return True


# -- kernels and cokernels of the defect maps ---------------------------------


def _cyclic_subgroup_presentation(size: int, name: str) -> GroupPresentation:
    if size <= 1:
        return GroupPresentation.trivial()
    return GroupPresentation(name=name, orders=(size,))


def _scalar_domain_reps(ring: RingDescriptor, level: str) -> List[Matrix]:
    if level == "J0":
        values = range(4)
    elif level == "J1":
        values = range(2)
    else:  # C2 over F2
        values = range(2)
    return [Matrix.from_literal(ring, [[v]]) for v in values]


def ker_coker_j(ring: RingDescriptor, level: str,
                degree: Optional[int] = None
                ) -> Tuple[GroupPresentation, GroupPresentation]:
    """Kernel and cokernel of the defect map, computed live.

    Rank-1 cases (Z, F2) go by direct enumeration of the finite residue
    groups.  Rank-2 cases (Z[x], F2[x]) go through the diagonal reduction:
    the off-diagonal cosets are matched bijectively by the unique
    decomposition p = b^2 + d + x d^2, so kernel and cokernel live on the
    corner embeddings and reduce to the squaring-minus-one map on F2[x].
    """
    degree = default_degree_cap() if degree is None else degree
    bundle = build_universal_bundle(ring)
    if bundle.rank == 1:
        reps = _scalar_domain_reps(ring, level)
        kernel = [m for m in reps if j_map(ring, level, m).is_zero]
        image = {j_map(ring, level, m).representative for m in reps}
        codomain_size = 2  # Sym_1/Quad_1 is one entry mod 2 over these rings
        ker = _cyclic_subgroup_presentation(
            len(kernel), f"ker of the {level} defect map over {ring}")
        coker = _cyclic_subgroup_presentation(
            codomain_size // len(image),
            f"coker of the {level} defect map over {ring}")
        return ker, coker

    # rank 2: verify the off-diagonal matching on a desk-scale window, then
    # compute on the corner embeddings
    if not decompose_hypothesis_check(5):
        raise AssertionError("square decomposition failed its bijectivity check")
    kernel_consts = frobenius_kernel(degree)
    assert [k.coeffs() for k in kernel_consts] == [(1,)], \
        "squaring fixes only the constants in F2[x]"
    coker = coker_frobenius_presentation(degree, mod_constants=False)

    if ring == ZX:
        if level == "J0":
            # {(a, d): a mod 2 constant} x F2[x]: a Z/4 from each kernel
            # constant, a 2*Z/4[x] tail, and a free F2[x] coordinate
            ker = GroupPresentation(
                name="{(a, d): a in Z/4 + 2Z/4[x], d in F2[x]}",
                orders=(4,) * len(kernel_consts),
                families=(PolyFamily(2, tuple(range(1, degree + 1)), "2a"),
                          PolyFamily(2, tuple(range(degree + 1)), "d")),
                truncation_degree=degree)
            return ker, coker
        if level == "J1":
            # b^2 + d + x d^2 = 0 forces b = d = 0; then a^2 + a = 0
            ker = GroupPresentation(
                name="constants fixed by squaring",
                orders=(2,) * len(kernel_consts))
            return ker, coker
        raise UnsupportedQueryError(f"level {level} undefined over {ring}")
    if ring == F2X:
        if level != "C2":
            raise UnsupportedQueryError(f"level {level} undefined over {ring}")
        ker = GroupPresentation(name="constants fixed by squaring",
                                orders=(2,) * len(kernel_consts))
        return ker, coker
    raise UnsupportedRingError(f"no defect-map calculation over {ring}")


# -- the relative (augmentation-kernel) families ------------------------------


def k_group(n: int, degree: Optional[int] = None) -> GroupPresentation:
    """Kernel of the augmentation on ker(defect map): K_0 and K_1."""
    degree = default_degree_cap() if degree is None else degree
    if n == 0:
        ker_zx, _ = ker_coker_j(ZX, "J0", degree)
        ker_z, _ = ker_coker_j(ZZ, "J0", degree)
        assert ker_z.order() == 4 and ker_zx.orders == (4,)
        # evaluation at x = 0 maps the Z/4 summand isomorphically onto the
        # scalar kernel; what survives is 2*Z/4[x] (one F2[x]) and the free
        # F2[x] coordinate
        return GroupPresentation(
            name="F2[x] x F2[x]",
            families=(PolyFamily(2, tuple(range(degree + 1)), "2a"),
                      PolyFamily(2, tuple(range(degree + 1)), "d")),
            truncation_degree=degree)
    if n == 1:
        ker_zx, _ = ker_coker_j(ZX, "J1", degree)
        ker_z, _ = ker_coker_j(ZZ, "J1", degree)
        # both kernels are the constants {0, 1}; evaluation at x = 0 is a
        # bijection between them, so nothing survives
        assert ker_zx.order() == ker_z.order() == 2
        return GroupPresentation.trivial()
    raise UnsupportedQueryError(f"K_{n} is not in the computed range")


def c_group(n: int, degree: Optional[int] = None) -> GroupPresentation:
    """Kernel of the augmentation on coker(defect map): C_{-1} and C_0."""
    degree = default_degree_cap() if degree is None else degree
    level = "J0" if n == -1 else "J1" if n == 0 else None
    if level is None:
        raise UnsupportedQueryError(f"C_{n} is not in the computed range")
    _, coker_zx = ker_coker_j(ZX, level, degree)
    _, coker_z = ker_coker_j(ZZ, level, degree)
    assert coker_z.order() == 2
    assert coker_zx.families and coker_zx.families[0].order == 2
    # evaluation at x = 0 sends the class of p to its constant term; the
    # kernel is the mod-constants cokernel
    return coker_frobenius_presentation(degree, mod_constants=True)


def i_group(n: int, degree: Optional[int] = None) -> GroupPresentation:
    """Kernel of the augmentation on im(defect map): only I_2 is needed,
    and it vanishes because the degree-2 symmetric group of the segment is
    already zero."""
    if n != 2:
        raise UnsupportedQueryError(f"I_{n} is not in the computed range")
    for ring in (ZX, ZZ):
        domain = segment_q_groups(ring, 2, "sym", degree)
        if not domain.is_trivial:
            raise AssertionError("degree-2 symmetric group expected to vanish")
    return GroupPresentation.trivial()


# -- closed-form Q-groups of the degree-zero segment --------------------------


def _sym_quotient_presentation(ring: RingDescriptor, kind: str,
                               degree: int) -> GroupPresentation:
    rank = build_universal_bundle(ring).rank
    diag_mod, off_mod = {"Quad": (2, 1), "2Quad": (4, 2),
                         "2Sym": (2, 2), "4Sym": (4, 4)}[kind]
    name = f"Sym_{rank}({ring})/{kind}"
    if rank == 1:
        return GroupPresentation(name=name, orders=(diag_mod,))
    exps = tuple(range(degree + 1))
    families = [PolyFamily(diag_mod, exps, "a"), PolyFamily(diag_mod, exps, "d")]
    if off_mod > 1:
        families.insert(1, PolyFamily(off_mod, exps, "b"))
    return GroupPresentation(name=name, families=tuple(families),
                             truncation_degree=degree)


def segment_q_groups(ring: RingDescriptor, n: int, flavor: str,
                     degree: Optional[int] = None) -> GroupPresentation:
    """Closed forms for the symmetric / hyperquadratic / quadratic groups of
    the two-term degree-zero segment over Z or Z[x].

    Symmetric: Sym/2Quad in degree 0, Sym/2Sym in degree 1, zero in degrees
    >= 2, and equal to the hyperquadratic group (always Sym/Quad) below 0.
    Quadratic: zero below degree 0, Quad/2Quad in degree 0, Sym/Quad in
    degrees >= 1 (over Z[x] the degree-1 group is a non-split-determined
    extension and is refused).
    """
    if ring not in (ZZ, ZX):
        raise UnsupportedRingError(f"segment groups implemented over Z and Z[x], not {ring}")
    degree = default_degree_cap() if degree is None else degree
    if flavor == "hyper":
        return _sym_quotient_presentation(ring, "Quad", degree)
    if flavor == "sym":
        if n >= 2:
            return GroupPresentation.trivial()
        if n == 0:
            return _sym_quotient_presentation(ring, "2Quad", degree)
        if n == 1:
            return _sym_quotient_presentation(ring, "2Sym", degree)
        return _sym_quotient_presentation(ring, "Quad", degree)
    if flavor == "quad":
        if n <= -1:
            return GroupPresentation.trivial()
        if n == 0:
            # Quad/2Quad: diagonals 2a mod 4, off-diagonals mod 2
            if ring == ZZ:
                return GroupPresentation(name="Quad_1(Z)/2Quad_1(Z)", orders=(2,))
            exps = tuple(range(degree + 1))
            return GroupPresentation(
                name="Quad_2(Z[x])/2Quad_2(Z[x])",
                families=(PolyFamily(2, exps, "2a"), PolyFamily(2, exps, "b"),
                          PolyFamily(2, exps, "2d")),
                truncation_degree=degree)
        if ring == ZX and n == 1:
            raise UnsupportedQueryError(
                "degree-1 quadratic group over Z[x]: extension not determined")
        return _sym_quotient_presentation(ring, "Quad", degree)
    raise ValueError(f"unknown flavor {flavor!r}")
