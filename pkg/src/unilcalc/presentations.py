"""Presentations of the finitely and infinitely generated abelian groups
that come out of the calculations.

A group is a finite part (invariant factors, with 0 standing for a free Z
summand) plus zero or more "polynomial families": for each family, one cyclic
summand of the given order per listed monomial exponent.  Families are always
truncated at a recorded degree; structural equality means equality of the
finite parts and of the families degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple


@dataclass(frozen=True)
class PolyFamily:
    """One cyclic summand of order ``order`` for each exponent in ``exponents``."""

    order: int
    exponents: Tuple[int, ...]
    label: str = "x"

    def count_up_to(self, degree: Optional[int] = None) -> int:
        if degree is None:
            return len(self.exponents)
        return sum(1 for e in self.exponents if e <= degree)

    def describe(self) -> str:
        if not self.exponents:
            return "0"
        return (f"sum of Z/{self.order} over {self.label}^e, "
                f"e in {{{_exponent_blurb(self.exponents)}}}")


def _exponent_blurb(exponents: Tuple[int, ...]) -> str:
    if len(exponents) <= 6:
        return ", ".join(str(e) for e in exponents)
    return f"{exponents[0]}, {exponents[1]}, ..., {exponents[-1]}"


@dataclass(frozen=True)
class GroupPresentation:
    """Finitely presented abelian group, possibly with truncated families."""

    name: str = ""
    orders: Tuple[int, ...] = ()
    families: Tuple[PolyFamily, ...] = ()
    truncation_degree: Optional[int] = None

    @staticmethod
    def trivial() -> "GroupPresentation":
        return GroupPresentation(name="0")

    @staticmethod
    def from_invariant_factors(factors, name: str = "") -> "GroupPresentation":
        """Drop unit factors, sort the rest (0 = free summand sorts last)."""
        kept = sorted((abs(f) for f in factors if abs(f) != 1),
                      key=lambda f: (f == 0, f))
        pres = GroupPresentation(name=name, orders=tuple(kept))
        if not name:
            pres = GroupPresentation(name=pres.describe(), orders=pres.orders)
        return pres

    @property
    def is_trivial(self) -> bool:
        return not self.orders and all(not f.exponents for f in self.families)

    def order(self) -> Optional[int]:
        """Group order; None when infinite."""
        if any(o == 0 for o in self.orders):
            return None
        total = 1
        for o in self.orders:
            total *= o
        for fam in self.families:
            total *= fam.order ** len(fam.exponents)
        return total

    def f2_dimension(self, degree: Optional[int] = None) -> int:
        """Dimension over F2 of the degree <= ``degree`` truncation.

        Only meaningful when every summand has order 2; raises otherwise.
        """
        if any(o != 2 for o in self.orders):
            raise ValueError(f"{self.name or self.orders}: not an F2 vector space")
        dim = len(self.orders)
        for fam in self.families:
            if fam.order != 2:
                raise ValueError(f"{fam}: not an F2 vector space")
            dim += fam.count_up_to(degree)
        return dim

    def same_group(self, other: "GroupPresentation") -> bool:
        """Structural equality, ignoring names and labels."""
        if sorted(self.orders) != sorted(other.orders):
            return False
        mine = sorted((f.order, f.exponents) for f in self.families)
        theirs = sorted((f.order, f.exponents) for f in other.families)
        return mine == theirs

    def describe(self) -> str:
        parts = []
        for o in self.orders:
            parts.append("Z" if o == 0 else f"Z/{o}")
        for fam in self.families:
            if fam.exponents:
                parts.append(fam.describe())
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "name": self.name or self.describe(),
            "orders": list(self.orders),
            "families": [
                {"order": f.order, "exponents": list(f.exponents), "label": f.label}
                for f in self.families
            ],
            "truncation_degree": self.truncation_degree,
        }


@dataclass(frozen=True)
class ExtensionDescription:
    """A group known only as an extension 0 -> sub -> G -> quotient -> 0."""

    sub: GroupPresentation
    quotient: GroupPresentation
    resolved: bool = False
    notes: str = ""

    def order(self) -> Optional[int]:
        s, q = self.sub.order(), self.quotient.order()
        if s is None or q is None:
            return None
        return s * q

    def describe(self) -> str:
        return (f"extension of {self.quotient.describe()} "
                f"by {self.sub.describe()} (unresolved)")

    def to_json(self) -> dict:
        return {
            "extension": {
                "sub": self.sub.to_json(),
                "quotient": self.quotient.to_json(),
                "resolved": self.resolved,
                "notes": self.notes,
            }
        }
