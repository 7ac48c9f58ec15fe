"""Assembly of the UNil groups over Z and F2 in every degree, with
element-level normal forms in the infinitely generated degree-2 case.

Everything is recomputed from the kernel/cokernel machinery on each call:
degree 0 vanishes because the two squaring-fixed-constant kernels match up,
degree 1 because the degree-2 symmetric group of the segment already
vanishes, degree 2 is the mod-constants cokernel of squaring-minus-one, and
degree 3 is an extension of two polynomial families whose extension class
the boundary route does not determine (every element has order dividing 4).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .bundles import (c_group, coker_frobenius_presentation, i_group,
                      k_group, ker_coker_j, segment_q_groups)
from .presentations import ExtensionDescription, GroupPresentation
from .rings import (F2, F2X, ZX, ZZ, RingDescriptor, RingElement,
                    UnsupportedRingError, default_degree_cap)


@dataclass(frozen=True)
class UNilDescription:
    coefficient_ring: str
    n: int
    residue: int
    presentation: Union[GroupPresentation, ExtensionDescription]
    provenance: str
    notes: str = ""
    truncation_degree: Optional[int] = None

    @property
    def short_name(self) -> str:
        if isinstance(self.presentation, ExtensionDescription):
            return self.presentation.describe()
        return self.presentation.describe()

    def to_json(self):
        body = (self.presentation.to_json()
                if isinstance(self.presentation, ExtensionDescription)
                else {"presentation": self.presentation.to_json()})
        return {"coeff": self.coefficient_ring, "n": self.n,
                "residue": self.residue, "group": self.short_name,
                "provenance": self.provenance, "notes": self.notes,
                "truncation_degree": self.truncation_degree, **body}


def unil_group(coeff: RingDescriptor, n: int,
               degree: Optional[int] = None) -> UNilDescription:
    """UNil_n over Z (4-periodic) or F2 (2-periodic), computed live."""
    degree = default_degree_cap() if degree is None else degree
    if coeff == ZZ:
        return _unil_over_z(n, degree)
    if coeff == F2:
        return _unil_over_f2(n, degree)
    raise UnsupportedRingError(f"UNil implemented for Z and F2, not {coeff}")


def _unil_over_z(n: int, degree: int) -> UNilDescription:
    m = n % 4
    if m == 0:
        pres = k_group(1, degree)
        assert pres.is_trivial
        return UNilDescription(
            "Z", n, m, pres,
            provenance="kernel side of the degree-1 defect maps (both kernels "
                       "are the squaring-fixed constants, matched by evaluation)")
    if m == 1:
        pres = i_group(2, degree)
        assert pres.is_trivial
        return UNilDescription(
            "Z", n, m, pres,
            provenance="image side in degree 2 (the degree-2 symmetric group "
                       "of the segment vanishes)")
    if m == 2:
        pres = c_group(-1, degree)
        return UNilDescription(
            "Z", n, m, pres,
            provenance="cokernel side of the degree-0 defect maps, via "
                       "periodicity from degree -2",
            notes="basis: classes of x^e for odd e",
            truncation_degree=degree)
    sub = c_group(0, degree)
    quotient = k_group(0, degree)
    ext = ExtensionDescription(
        sub=sub, quotient=quotient, resolved=False,
        notes="not finitely generated; every element has order dividing 4")
    return UNilDescription(
        "Z", n, m, ext,
        provenance="cokernel of the degree-1 defect maps extended by the "
                   "kernel of the degree-0 ones, via periodicity from degree -1",
        notes="extension class not determined",
        truncation_degree=degree)


def _unil_over_f2(n: int, degree: int) -> UNilDescription:
    m = n % 2
    ker_zx, coker_zx = ker_coker_j(F2X, "C2", degree)
    ker_z, coker_z = ker_coker_j(F2, "C2", degree)
    if m == 1:
        # both kernels are the constants {0, 1}; evaluation matches them up
        assert ker_zx.order() == ker_z.order() == 2
        return UNilDescription(
            "F2", n, m, GroupPresentation.trivial(),
            provenance="kernel side: squaring fixes only the constants on "
                       "both polynomial and scalar levels")
    assert coker_z.order() == 2 and coker_zx.families
    pres = coker_frobenius_presentation(degree, mod_constants=True)
    return UNilDescription(
        "F2", n, m, pres,
        provenance="cokernel side: evaluation kills exactly the constants "
                   "in coker(squaring - 1)",
        notes="basis: classes of x^e for odd e",
        truncation_degree=degree)


# -- degree-2 elements over Z ---------------------------------------------------


@dataclass(frozen=True)
class UNil2Element:
    """Normal form in coker(squaring - 1 on F2[x]/F2): only odd exponents."""

    coeffs: tuple

    def __post_init__(self):
        for i, c in enumerate(self.coeffs):
            if c and (i % 2 == 0):
                raise ValueError("normal form may only carry odd exponents")

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_poly(self) -> RingElement:
        return F2X.element(list(self.coeffs))

    def to_json(self):
        return {"normal_form": list(self.coeffs)}


def unil2_normalize(p: RingElement) -> UNil2Element:
    """Reduce an F2[x] element to its degree-2 normal form (idempotent)."""
    from .bundles import frobenius_coker_reduce
    if p.ring != F2X:
        p = F2X.element(p.coeffs())
    reduced = frobenius_coker_reduce(p, mod_constants=True)
    return UNil2Element(reduced.coeffs())


def unil2_add(a: UNil2Element, b: UNil2Element) -> UNil2Element:
    return unil2_normalize(a.to_poly() + b.to_poly())


# -- the boundary sequences in low degrees --------------------------------------


@dataclass(frozen=True)
class SequenceReport:
    n: int
    sub: dict
    middle: dict
    quotient: dict
    notes: str

    def to_json(self):
        return {"n": self.n, "sub": self.sub, "middle": self.middle,
                "quotient": self.quotient, "notes": self.notes}


def _twisted_bundle_group(ring: RingDescriptor, m: int, degree: int) -> dict:
    """The degree-m twisted group of the full bundle over Z or Z[x], read off
    the defect maps: zero in degree 2, the degree-1 kernel in degree 1, an
    extension in degree 0, the degree-0 cokernel in degree -1."""
    label = f"twisted degree-{m} group of the bundle over {ring}"
    if m == 2:
        domain = segment_q_groups(ring, 2, "sym", degree)
        assert domain.is_trivial
        return {**GroupPresentation.trivial().to_json(), "role": label}
    if m == 1:
        ker, _ = ker_coker_j(ring, "J1", degree)
        return {**ker.to_json(), "role": label}
    if m == 0:
        _, coker1 = ker_coker_j(ring, "J1", degree)
        ker0, _ = ker_coker_j(ring, "J0", degree)
        ext = ExtensionDescription(sub=coker1, quotient=ker0, resolved=False)
        return {**ext.to_json(), "role": label}
    if m == -1:
        _, coker0 = ker_coker_j(ring, "J0", degree)
        return {**coker0.to_json(), "role": label}
    raise ValueError(f"degree {m} outside the covered window")


def nq_sequence(n: int, degree: Optional[int] = None) -> SequenceReport:
    """The short exact sequence presenting UNil_n(Z) between the twisted
    bundle groups over Z[x] and Z, for n in [-2, 1]."""
    if n not in (-2, -1, 0, 1):
        raise ValueError(f"n = {n} outside the covered range [-2, 1]")
    degree = default_degree_cap() if degree is None else degree
    sub = unil_group(ZZ, n, degree).to_json()
    middle = _twisted_bundle_group(ZX, n + 1, degree)
    quotient = _twisted_bundle_group(ZZ, n + 1, degree)
    notes = ("short exact: 0 -> UNil_n(Z) -> [middle] -> [quotient] -> 0; "
             "for n in {-1, 0} the same sequence holds with the degree-(n+1) "
             "groups of the degree-zero segments in place of the bundles")
    return SequenceReport(n, sub, middle, quotient, notes)
