"""Covers: antichains of non-empty measurement (or information-set) sets."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from ._maps import format_set
from .errors import SpacetimeError


class CoverError(SpacetimeError, ValueError):
    pass


def facets(sets: Iterable[Iterable]) -> frozenset[frozenset]:
    """Maximal elements of a family of sets, with duplicates and empties dropped."""
    family = {frozenset(s) for s in sets}
    family.discard(frozenset())
    return frozenset(s for s in family if not any(s < other for other in family))


@dataclass(frozen=True)
class Cover:
    facets: frozenset[frozenset]

    def __post_init__(self):
        fs = frozenset(frozenset(f) for f in self.facets)
        object.__setattr__(self, "facets", fs)
        for f in fs:
            if not f:
                raise CoverError("cover facets must be non-empty")
        for f in fs:
            for g in fs:
                if f < g:
                    raise CoverError(f"cover is not an antichain: {format_set(f)} is contained in {format_set(g)}")

    @classmethod
    def of(cls, *facet_lists: Iterable) -> "Cover":
        return cls(frozenset(frozenset(f) for f in facet_lists))

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable]) -> "Cover":
        """Cover generated by arbitrary faces (non-maximal ones are absorbed)."""
        return cls(facets(faces))

    @property
    def vertices(self) -> frozenset:
        return frozenset().union(*self.facets) if self.facets else frozenset()

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.facets)

    def __contains__(self, item) -> bool:
        return frozenset(item) in self.facets

    def sorted(self, order: Mapping | None = None) -> list[frozenset]:
        def vkey(v):
            return (order.get(v, len(order)), str(v)) if order is not None else (0, str(v))

        return sorted(self.facets, key=lambda f: [vkey(v) for v in sorted(f, key=vkey)])

    def contains_face(self, face: Iterable) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def restrict(self, vertices: Iterable) -> "Cover":
        """Facets of the subcomplex induced on ``vertices``."""
        vs = frozenset(vertices)
        return Cover(facets(f & vs for f in self.facets))

    def format(self, order: Mapping | None = None) -> str:
        return " ".join(format_set(f, order) for f in self.sorted(order))

    def __str__(self) -> str:
        return self.format()
