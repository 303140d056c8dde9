# pdgrid/clusters/classify.py
"""Recognising cluster kinds up to rotation, reflection and translation."""

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from pdgrid.clusters.atlas import (
    BASIC_KINDS, KIND_ORDER, TRANSIT_KINDS, DFamilyKind, SeedSpecies, generate,
)
from pdgrid.clusters.polyomino import SYMMETRIES, Cell, Polyomino
from pdgrid.errors import InvalidParams

SHAPE_SPECIES = {
    1: (SeedSpecies.DEFECTOR1,),
    2: (SeedSpecies.DEFECTOR2,),
    3: (SeedSpecies.LINE3, SeedSpecies.CORNER3),
    4: (SeedSpecies.LINE4, SeedSpecies.CORNER4, SeedSpecies.HAT4,
        SeedSpecies.TURN4, SeedSpecies.SQUARE4),
}


@dataclass(frozen=True)
class Classification:
    """A recognised kind and the symmetry mapping its generated shape onto the cells."""

    kind: Union[DFamilyKind, SeedSpecies]
    symmetry: int

    def label(self) -> str:
        if isinstance(self.kind, SeedSpecies):
            return self.kind.value
        return self.kind.label()


def _candidates(images) -> Iterator[DFamilyKind]:
    seen = set()
    for name in KIND_ORDER:
        for image in images:
            columns = image.columns()
            width, tallest = len(columns), max(columns)
            if name in BASIC_KINDS:
                widths, heights = (width,), range(tallest, tallest + 2)
            else:
                # a transit spans its base rectangle give or take a column and a row
                widths, heights = range(width - 3, width + 2), range(tallest - 3, tallest + 2)
            for h in heights:
                for w in widths:
                    ells = range(0, w + 1) if name in TRANSIT_KINDS else (0,)
                    for ell in ells:
                        key = (name, w, h, ell)
                        if key in seen:
                            continue
                        seen.add(key)
                        try:
                            yield DFamilyKind(name, w, h, ell)
                        except InvalidParams:
                            continue


def classify(cells: Iterable[Cell]) -> Optional[Classification]:
    """The kind whose generated shape equals cells up to symmetry, or None.

    Shapes of at most four cells are reported as seed species.
    """
    poly = Polyomino.of(cells)
    target = poly.canonical_form()

    for species in SHAPE_SPECIES.get(poly.size, ()):
        shape = generate(species)
        if shape.canonical_form() == target:
            return Classification(species, shape.symmetry_to(poly))
    if poly.size <= 4:
        return None

    images = [poly.image(s) for s in range(len(SYMMETRIES))]
    for kind in _candidates(images):
        try:
            shape = generate(kind)
        except InvalidParams:
            continue
        if shape.size == poly.size and shape.canonical_form() == target:
            return Classification(kind, shape.symmetry_to(poly))
    return None
