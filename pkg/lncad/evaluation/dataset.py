# -*- coding: utf-8 -*-

"""Validated annotation collection."""

__author__ = "LNCAD developers"
__copyright__ = "Copyright (C) 2022"
__license__ = "AGPL"

from typing import Tuple, List, Dict, Mapping, Iterator, Set
from dataclasses import dataclass, field
from lncad.errors import ReferentialError, ValidationError
from .annotation import LesionAnnotation


def check_lesion(a: LesionAnnotation, volume_index: Mapping[str, int]) -> None:
    """Lesion extent must lie inside a known volume."""
    if a.volume_id not in volume_index:
        raise ReferentialError(f"unknown volume_id {a.volume_id!r}",
                               field='volume_id')
    for s, _ in a.extent:
        if s >= volume_index[a.volume_id]:
            raise ReferentialError(
                f"slice {s} of lesion {a.lesion_id!r} out of range for volume "
                f"{a.volume_id!r} with {volume_index[a.volume_id]} slices",
                field='slice_index'
            )


@dataclass(frozen=True)
class AnnotationDataset:
    """Lesions plus the volume inventory."""
    lesions: Tuple[LesionAnnotation, ...]
    volume_index: Mapping[str, int]
    row_order: Tuple[Tuple[str, str, int], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        seen: Set[Tuple[str, str]] = set()
        for a in self.lesions:
            key = (a.volume_id, a.lesion_id)
            if key in seen:
                raise ValidationError(
                    f"duplicate lesion {a.lesion_id!r} in volume {a.volume_id!r}",
                    field='lesion_id'
                )
            seen.add(key)
            check_lesion(a, self.volume_index)

    def __len__(self) -> int:
        return len(self.lesions)

    @property
    def box_count(self) -> int:
        return sum(len(a.extent) for a in self.lesions)

    def by_volume(self) -> Dict[str, List[LesionAnnotation]]:
        """Lesions of every inventory volume, volumes without lesions included."""
        out: Dict[str, List[LesionAnnotation]] = {
            v: [] for v in sorted(self.volume_index)}
        for a in sorted(self.lesions, key=lambda a: (a.volume_id, a.lesion_id)):
            out[a.volume_id].append(a)
        return out

    def rows(self) -> Iterator[Tuple[LesionAnnotation, int]]:
        """(lesion, slice) pairs in file order."""
        if self.row_order:
            lookup = {(a.volume_id, a.lesion_id): a for a in self.lesions}
            for vid, lid, s in self.row_order:
                yield lookup[vid, lid], s
            return
        for a in self.lesions:
            for s, _ in a.extent:
                yield a, s
