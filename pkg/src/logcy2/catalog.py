"""Symbolic catalogs attached to a surface datum: the ordered exceptional
collection on the compact side and the matching distinguished collection of
vanishing cycles, tracked at the level of orders, counts and exact twist
integers.  No sheaves or curves are materialized; the combinatorial shadow
is what the consistency checks exercise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .diagrams import visible_spheres
from .surfaces import (
    Surface,
    TooFewRaysError,
    numeric_invariants,
    require_valid,
    toric_self_intersections,
)


@dataclass(frozen=True)
class SheafOnException:
    """Twisted sheaf on the j-th exceptional curve over boundary component i."""

    ray_index: int  # 1-based, in the stored ccw ray order
    blowup_index: int  # 1-based, 1 <= j <= m_i


@dataclass(frozen=True)
class StructureSheaf:
    pass


@dataclass(frozen=True)
class LineBundle:
    """Pullback of the sum of the first ``prefix_length`` boundary divisors."""

    prefix_length: int


ExceptionalItem = SheafOnException | StructureSheaf | LineBundle


@dataclass(frozen=True)
class Meridian:
    ray_index: int
    blowup_index: int


@dataclass(frozen=True)
class Longitude:
    index: int
    twist_vector: tuple[int, ...]


VanishingCycleItem = Meridian | Longitude


def exceptional_collection(s: Surface) -> list[ExceptionalItem]:
    """Exceptional sheaves (descending through the blow-ups), O, then line bundles."""
    require_valid(s)
    k = len(s.rays)
    if k < 3:
        raise TooFewRaysError(f"need at least 3 rays, got {k}")
    items: list[ExceptionalItem] = []
    for i in range(k, 0, -1):
        for j in range(s.m[i - 1], 0, -1):
            items.append(SheafOnException(i, j))
    items.append(StructureSheaf())
    for ell in range(1, k):
        items.append(LineBundle(ell))
    return items


def _pairing_matrix(s: Surface) -> list[list[int]]:
    """Products of the toric boundary components: self = a_i, adjacent = 1."""
    k = len(s.rays)
    selfints = toric_self_intersections(s)
    mat = [[0] * k for _ in range(k)]
    for i in range(k):
        mat[i][i] = selfints[i]
        mat[i][(i + 1) % k] += 1
        mat[(i + 1) % k][i] += 1
    if k == 3:
        mat = [[1 if i != j else mat[i][i] for j in range(k)] for i in range(k)]
    return mat


def vanishing_cycles(s: Surface) -> list[VanishingCycleItem]:
    """Meridians mirroring the exceptional sheaves one-for-one, then longitudes.

    Longitude ``ell`` carries the twist vector whose i-th entry is the product
    of boundary component i with the sum of the first ``ell`` components.
    """
    require_valid(s)
    k = len(s.rays)
    if k < 3:
        raise TooFewRaysError(f"need at least 3 rays, got {k}")
    pairing = _pairing_matrix(s)
    items: list[VanishingCycleItem] = []
    for i in range(k, 0, -1):
        for j in range(s.m[i - 1], 0, -1):
            items.append(Meridian(i, j))
    for ell in range(k):
        twists = tuple(sum(pairing[i][jj] for jj in range(ell)) for i in range(k))
        items.append(Longitude(ell, twists))
    return items


@dataclass(frozen=True)
class CountReport:
    exceptional_count: int
    vanishing_count: int
    chi_y: int
    sphere_count: int
    expected_spheres: int

    @property
    def ok(self) -> bool:
        return (
            self.exceptional_count == self.chi_y
            and self.vanishing_count == self.chi_y
            and self.sphere_count == self.expected_spheres
        )


def check_counts(s: Surface) -> CountReport:
    """Collection lengths against chi(Y); sphere count against sum of (m-1)+."""
    inv = numeric_invariants(s)
    return CountReport(
        exceptional_count=len(exceptional_collection(s)),
        vanishing_count=len(vanishing_cycles(s)),
        chi_y=inv.chi_y,
        sphere_count=len(visible_spheres(s)),
        expected_spheres=sum(max(m - 1, 0) for m in s.m),
    )


def _item_dict(item) -> dict:
    if isinstance(item, SheafOnException):
        return {"kind": "sheaf_on_exception", "ray_index": item.ray_index, "blowup_index": item.blowup_index}
    if isinstance(item, StructureSheaf):
        return {"kind": "structure_sheaf"}
    if isinstance(item, LineBundle):
        return {"kind": "line_bundle", "prefix_length": item.prefix_length}
    if isinstance(item, Meridian):
        return {"kind": "meridian", "ray_index": item.ray_index, "blowup_index": item.blowup_index}
    if isinstance(item, Longitude):
        return {"kind": "longitude", "index": item.index, "twist_vector": list(item.twist_vector)}
    raise TypeError(f"unknown item {item!r}")


def collections_to_json(s: Surface) -> str:
    """Both ordered catalogs as one JSON document."""
    return json.dumps(
        {
            "exceptional_collection": [_item_dict(i) for i in exceptional_collection(s)],
            "vanishing_cycles": [_item_dict(i) for i in vanishing_cycles(s)],
        }
    )
