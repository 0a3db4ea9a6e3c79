"""Land-use categories: five parent uses, their nine training subcategories,
and the NonClassified abstention label."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional


class Parent(str, Enum):
    RESIDENTIAL = "Residential"
    COMMERCIAL = "Commercial"
    INDUSTRIAL_OFFICES = "IndustrialOffices"
    INSTITUTIONAL_GOVERNMENTAL = "InstitutionalGovernmental"
    UNBUILT_LAND = "UnbuiltLand"
    NON_CLASSIFIED = "NonClassified"


class Sub(str, Enum):
    COMMERCIAL = "Commercial"
    COMMERCIAL_RESTAURANT = "CommercialRestaurant"
    COMMERCIAL_SERVICE = "CommercialService"
    INSTITUTIONAL = "Institutional"
    INSTITUTIONAL_EDUCATION = "InstitutionalEducation"
    INSTITUTIONAL_CULTURAL = "InstitutionalCultural"
    INDUSTRIAL_OFFICES = "IndustrialOffices"
    RESIDENTIAL = "Residential"
    UNBUILT_LAND = "UnbuiltLand"


SUB_TO_PARENT: dict[Sub, Parent] = {
    Sub.COMMERCIAL: Parent.COMMERCIAL,
    Sub.COMMERCIAL_RESTAURANT: Parent.COMMERCIAL,
    Sub.COMMERCIAL_SERVICE: Parent.COMMERCIAL,
    Sub.INSTITUTIONAL: Parent.INSTITUTIONAL_GOVERNMENTAL,
    Sub.INSTITUTIONAL_EDUCATION: Parent.INSTITUTIONAL_GOVERNMENTAL,
    Sub.INSTITUTIONAL_CULTURAL: Parent.INSTITUTIONAL_GOVERNMENTAL,
    Sub.INDUSTRIAL_OFFICES: Parent.INDUSTRIAL_OFFICES,
    Sub.RESIDENTIAL: Parent.RESIDENTIAL,
    Sub.UNBUILT_LAND: Parent.UNBUILT_LAND,
}

# Reporting order for the five land uses (NonClassified is appended when needed).
PARENTS: tuple[Parent, ...] = (
    Parent.COMMERCIAL,
    Parent.INSTITUTIONAL_GOVERNMENTAL,
    Parent.INDUSTRIAL_OFFICES,
    Parent.RESIDENTIAL,
    Parent.UNBUILT_LAND,
)

SUBS: tuple[Sub, ...] = tuple(Sub)

# Subcategory sizes of the original corpus (they total 4539; the corpus is quoted as 4538).
ORIGINAL_SUB_COUNTS: dict[Sub, int] = {
    Sub.COMMERCIAL: 1177,
    Sub.COMMERCIAL_RESTAURANT: 874,
    Sub.COMMERCIAL_SERVICE: 488,
    Sub.INSTITUTIONAL: 497,
    Sub.INSTITUTIONAL_EDUCATION: 371,
    Sub.INSTITUTIONAL_CULTURAL: 344,
    Sub.INDUSTRIAL_OFFICES: 138,
    Sub.RESIDENTIAL: 219,
    Sub.UNBUILT_LAND: 431,
}
ORIGINAL_PARENT_COUNTS: dict[Parent, int] = {
    Parent.COMMERCIAL: 2539,
    Parent.INSTITUTIONAL_GOVERNMENTAL: 1212,
    Parent.INDUSTRIAL_OFFICES: 138,
    Parent.RESIDENTIAL: 219,
    Parent.UNBUILT_LAND: 431,
}


@dataclass(frozen=True)
class LandUseClass:
    parent: Parent
    sub: Optional[Sub] = None

    def __post_init__(self) -> None:
        if self.sub is None:
            return
        if self.parent is Parent.NON_CLASSIFIED:
            raise ValueError("NonClassified cannot carry a subcategory")
        if SUB_TO_PARENT[self.sub] is not self.parent:
            raise ValueError(
                f"subcategory {self.sub.value} belongs to "
                f"{SUB_TO_PARENT[self.sub].value}, not {self.parent.value}"
            )

    @classmethod
    def from_sub(cls, sub: Sub | str) -> "LandUseClass":
        sub = Sub(sub)
        return cls(SUB_TO_PARENT[sub], sub)

    @classmethod
    def parse(cls, parent: str, sub: str | None = None) -> "LandUseClass":
        return cls(Parent(parent), Sub(sub) if sub else None)


NON_CLASSIFIED = LandUseClass(Parent.NON_CLASSIFIED)
