"""unilcalc: exact quadratic-form algebra and UNil-group calculations
over Z, Z/2^k, F2 and their one-variable polynomial extensions."""

from .rings import (F2, F2X, ZX, ZZ, RingDescriptor, RingElement, Zmod,
                    frobenius, poly_ring, ring_arith, ring_from_name,
                    tate_cohomology)
from .matrices import Matrix
from .presentations import ExtensionDescription, GroupPresentation, PolyFamily

__all__ = [
    "F2", "F2X", "ZX", "ZZ", "RingDescriptor", "RingElement", "Zmod",
    "frobenius", "poly_ring", "ring_arith", "ring_from_name",
    "tate_cohomology", "Matrix", "ExtensionDescription", "GroupPresentation",
    "PolyFamily",
]
