"""Exact arithmetic in the supported coefficient rings.

Rings in scope: the integers Z, the 2-power modular rings Z/2^k (1 <= k <= 4),
the field F2, and a single level of polynomial extension R[x].  The involution
is trivial everywhere, so dualising a matrix is plain transposition.

Scalars are Python ints (arbitrary precision for Z, canonically reduced for
the modular rings).  Polynomials are coefficient tuples, low degree first,
with trailing zeros trimmed; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .presentations import GroupPresentation, PolyFamily

DEGREE_CAP_ENV = "UNILCALC_DEGREE"
DEFAULT_DEGREE_CAP = 64


def default_degree_cap() -> int:
    """Truncation degree used when presenting infinitely generated groups."""
    raw = os.environ.get(DEGREE_CAP_ENV)
    if raw is None:
        return DEFAULT_DEGREE_CAP
    value = int(raw)
    if value < 1:
        raise ValueError(f"{DEGREE_CAP_ENV} must be positive, got {value}")
    return value


class RingMismatchError(ValueError):
    """Two operands do not share a ring."""


class UnsupportedRingError(ValueError):
    """The requested ring (or ring/operation pair) is out of scope."""


class NotAUnitError(ArithmeticError):
    """Inversion was requested for a non-unit."""


@dataclass(frozen=True)
class RingDescriptor:
    """One of Z, Z/2^k, F2, or R[x] over those scalar rings.

    ``modulus`` is 0 for Z, 2^k for Z/2^k, and 2 for F2.  ``base`` is set only
    for polynomial rings and is never itself polynomial.
    """

    kind: str  # "int" | "intmod" | "gf2" | "poly"
    modulus: int = 0
    base: Optional["RingDescriptor"] = None

    def __post_init__(self):
        if self.kind == "int":
            if self.modulus != 0 or self.base is not None:
                raise UnsupportedRingError("malformed integer ring descriptor")
        elif self.kind == "intmod":
            if self.modulus not in (2, 4, 8, 16):
                raise UnsupportedRingError(
                    f"modulus must be 2^k with 1 <= k <= 4, got {self.modulus}")
        elif self.kind == "gf2":
            if self.modulus != 2:
                raise UnsupportedRingError("F2 must have modulus 2")
        elif self.kind == "poly":
            if self.base is None or self.base.kind == "poly":
                raise UnsupportedRingError("polynomial rings nest at most once")
        else:
            raise UnsupportedRingError(f"unknown ring kind {self.kind!r}")

    # -- structure ---------------------------------------------------------

    @property
    def is_poly(self) -> bool:
        return self.kind == "poly"

    @property
    def scalar_base(self) -> "RingDescriptor":
        return self.base if self.is_poly else self

    @property
    def is_char2(self) -> bool:
        return self.scalar_base.modulus == 2

    @property
    def is_domain(self) -> bool:
        return self.scalar_base.kind in ("int", "gf2") or self.scalar_base.modulus == 2

    @property
    def nilradical_exponent(self) -> int:
        """Least m with N^m = 0 for the nilradical N (1 for domains)."""
        base = self.scalar_base
        if base.kind == "intmod":
            return base.modulus.bit_length() - 1  # 2^k -> k
        return 1

    @property
    def name(self) -> str:
        if self.kind == "int":
            return "Z"
        if self.kind == "gf2":
            return "F2"
        if self.kind == "intmod":
            return f"Z/{self.modulus}"
        return f"{self.base.name}[x]"

    def __str__(self) -> str:
        return self.name

    # -- element construction ----------------------------------------------

    def _reduce_scalar(self, value: int) -> int:
        if self.modulus:
            return value % self.modulus
        return value

    def element(self, data: Union[int, Sequence[int], "RingElement"]) -> "RingElement":
        """Canonical element from an int, a low-to-high coefficient list,
        or an element of this ring / of the scalar base (promoted)."""
        if isinstance(data, RingElement):
            if data.ring == self:
                return data
            if self.is_poly and data.ring == self.base:
                return self.element([data.data])
            raise RingMismatchError(f"cannot place {data.ring} element into {self}")
        if self.is_poly:
            if isinstance(data, int):
                data = [data]
            coeffs = [self.base._reduce_scalar(int(c)) for c in data]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            return RingElement(self, tuple(coeffs))
        if not isinstance(data, int):
            raise ValueError(f"scalar ring {self} takes integer literals")
        return RingElement(self, self._reduce_scalar(data))

    @property
    def zero(self) -> "RingElement":
        return self.element(0)

    @property
    def one(self) -> "RingElement":
        return self.element(1)

    @property
    def x(self) -> "RingElement":
        if not self.is_poly:
            raise UnsupportedRingError(f"{self} has no indeterminate")
        return self.element([0, 1])


ZZ = RingDescriptor("int")
F2 = RingDescriptor("gf2", 2)


def Zmod(modulus: int) -> RingDescriptor:
    return RingDescriptor("intmod", modulus)


def poly_ring(base: RingDescriptor) -> RingDescriptor:
    return RingDescriptor("poly", base=base)


ZX = poly_ring(ZZ)
F2X = poly_ring(F2)

_RING_NAMES = {
    "Z": ZZ,
    "F2": F2,
    "Z/2": Zmod(2),
    "Z/4": Zmod(4),
    "Z/8": Zmod(8),
    "Z/16": Zmod(16),
    "Z[x]": ZX,
    "F2[x]": F2X,
    "Z/4[x]": poly_ring(Zmod(4)),
}


def ring_from_name(name: str) -> RingDescriptor:
    try:
        return _RING_NAMES[name]
    except KeyError:
        raise UnsupportedRingError(
            f"unknown ring {name!r}; expected one of {sorted(_RING_NAMES)}") from None


class RingElement:
    """Immutable element of a :class:`RingDescriptor`."""

    __slots__ = ("ring", "data")

    def __init__(self, ring: RingDescriptor, data):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "data", data)

    def __setattr__(self, *args):
        raise AttributeError("RingElement is immutable")

    def __repr__(self):
        return f"<{self.ring} {self.to_literal()!r}>"

    def __eq__(self, other):
        return (isinstance(other, RingElement)
                and self.ring == other.ring and self.data == other.data)

    def __hash__(self):
        return hash((self.ring, self.data))

    def _check(self, other: "RingElement"):
        if not isinstance(other, RingElement) or other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self!r} vs {other!r}")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        ring = self.ring
        if not ring.is_poly:
            return RingElement(ring, ring._reduce_scalar(self.data + other.data))
        a, b = self.data, other.data
        n = max(len(a), len(b))
        coeffs = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                  for i in range(n)]
        return ring.element(coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        ring = self.ring
        if not ring.is_poly:
            return RingElement(ring, ring._reduce_scalar(-self.data))
        return ring.element([-c for c in self.data])

    def __mul__(self, other):
        self._check(other)
        ring = self.ring
        if not ring.is_poly:
            return RingElement(ring, ring._reduce_scalar(self.data * other.data))
        a, b = self.data, other.data
        if not a or not b:
            return ring.zero
        coeffs = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    coeffs[i + j] += ca * cb
        return ring.element(coeffs)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers: use inverse()")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.data == 0 if not self.ring.is_poly else not self.data

    def coeffs(self) -> tuple:
        """Low-to-high coefficient tuple (a scalar is its own degree-0 list)."""
        if self.ring.is_poly:
            return self.data
        return (self.data,) if self.data else ()

    def coefficient(self, i: int) -> int:
        c = self.coeffs()
        return c[i] if i < len(c) else 0

    @property
    def degree(self) -> int:
        """Degree, with deg(0) = -1 by convention."""
        return len(self.coeffs()) - 1

    def constant_term(self) -> "RingElement":
        base = self.ring.scalar_base
        return base.element(self.coefficient(0))

    def evaluate_at_zero(self) -> "RingElement":
        """Augmentation R[x] -> R, x -> 0 (identity on scalars)."""
        return self.constant_term()

    def to_literal(self):
        """JSON-friendly literal: int for scalars, coefficient list for polys."""
        if self.ring.is_poly:
            return list(self.data)
        return self.data

    # -- units and nilpotents --------------------------------------------------

    def _scalar_is_unit(self) -> bool:
        ring = self.ring
        if ring.kind == "int":
            return self.data in (1, -1)
        return self.data % 2 == 1

    def _scalar_is_nilpotent(self) -> bool:
        ring = self.ring
        if ring.kind == "int":
            return self.data == 0
        return self.data % 2 == 0

    def is_unit(self) -> bool:
        """Units: +-1 in Z, odd residues mod 2^k; in R[x] a unit constant
        term plus a nilpotent tail (valid over commutative rings)."""
        if not self.ring.is_poly:
            return self._scalar_is_unit()
        coeffs = self.coeffs()
        if not coeffs:
            return False
        base = self.ring.base
        if not base.element(coeffs[0])._scalar_is_unit():
            return False
        return all(base.element(c)._scalar_is_nilpotent() for c in coeffs[1:])

    def is_nilpotent(self) -> bool:
        if not self.ring.is_poly:
            return self._scalar_is_nilpotent()
        base = self.ring.base
        return all(base.element(c)._scalar_is_nilpotent() for c in self.data)

    def inverse(self) -> "RingElement":
        ring = self.ring
        if not self.is_unit():
            raise NotAUnitError(f"{self!r} is not a unit")
        if not ring.is_poly:
            if ring.kind == "int":
                return ring.element(self.data)  # +-1 are self-inverse
            return ring.element(pow(self.data, -1, ring.modulus))
        a0_inv = ring.base.element(self.coeffs()[0]).inverse()
        a0_inv_poly = ring.element([a0_inv.data])
        # a = a0 (1 + n) with n nilpotent: invert by the finite geometric series.
        n = ring.one - a0_inv_poly * self
        result, term = ring.one, ring.one
        for _ in range(64):
            term = term * n
            if term.is_zero:
                break
            result = result + term
        else:
            raise NotAUnitError(f"{self!r}: nilpotent tail did not terminate")
        inv = a0_inv_poly * result
        assert (inv * self) == ring.one
        return inv


def ring_arith(op: str, a: RingElement, b: Optional[RingElement] = None) -> RingElement:
    """Dispatch {add, sub, mul, neg}; raises RingMismatchError on mixed rings."""
    if op == "neg":
        return -a
    if b is None:
        raise ValueError(f"binary op {op!r} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def frobenius(a: RingElement) -> RingElement:
    """Squaring a -> a^2; a ring homomorphism in characteristic 2."""
    if not a.ring.is_char2:
        raise UnsupportedRingError(f"{a.ring} does not have characteristic 2")
    return a * a


# -- Tate cohomology of the order-2 group acting trivially -------------------

_TATE_RINGS = ("Z", "F2", "Z/2", "Z/4", "Z/8", "Z/16", "Z[x]", "F2[x]")


@dataclass(frozen=True)
class TateGroup:
    """Parity-r Tate cohomology of the trivial involution on a ring.

    Parity 1 is the 2-torsion of the ring; parity 0 is R/2R.  The module
    structure (a, x) -> a^2 x on the parity-0 group is recorded in
    ``action_note``; ``basis`` lists monomial generators over that action.
    """

    ring: RingDescriptor
    parity: int
    presentation: GroupPresentation
    basis: tuple
    action_note: str


def tate_cohomology(ring: RingDescriptor, r: int,
                    degree: Optional[int] = None) -> TateGroup:
    if ring.name not in _TATE_RINGS:
        raise UnsupportedRingError(
            f"Tate cohomology over {ring} is out of scope (2-torsion polynomial ring)")
    if r not in (0, 1):
        r = r % 2
    degree = default_degree_cap() if degree is None else degree
    action = "module action a.x = a^2 x"

    def quotient_mod2() -> TateGroup:
        if ring.is_poly:
            pres = GroupPresentation(
                name=f"{ring.base.name}/2[x] (additive)",
                families=(PolyFamily(2, tuple(range(degree + 1))),),
                truncation_degree=degree)
            basis = ("1", "x")
        else:
            pres = GroupPresentation(name="Z/2", orders=(2,))
            basis = ("1",)
        return TateGroup(ring, r, pres, basis, action)

    if ring.is_char2:
        # Both parities equal the whole ring (x = -x and 2y = 0 in char 2).
        return quotient_mod2()
    if r == 1:
        torsion = GroupPresentation.trivial() if ring.scalar_base.kind == "int" \
            else GroupPresentation(name="Z/2", orders=(2,))
        return TateGroup(ring, 1, torsion, (), "2-torsion subgroup")
    return quotient_mod2()
