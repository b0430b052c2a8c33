"""The five classification dimensions shared by documents and queries."""

from __future__ import annotations

from enum import Enum

from .errors import UnknownFacet


class Facet(str, Enum):
    TECHNOLOGY_SCIENCE = "technology_science"
    APPLICATION = "application"
    OPERATING_MODE = "operating_mode"
    PROBLEM = "problem"
    SOLUTION = "solution"

    @classmethod
    def parse(cls, name: str) -> "Facet":
        try:
            return cls(name)
        except ValueError:
            raise UnknownFacet(f"unknown facet {name!r}") from None


#: Canonical evaluation order; every per-facet iteration uses this order
#: so that floating-point accumulation is reproducible.
FACET_ORDER: tuple[Facet, ...] = tuple(Facet)
