"""Linear-time monochrome simplicial depth and half-space counts on sorted angles."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from ._instrument import NULL
from .geom import AngularKey, DegenerateInputError, Point, angular_key, cross_sign


@dataclass(frozen=True)
class SortedAngles:
    keys: tuple
    origin: Point | None = None

    @classmethod
    def around(cls, origin, points) -> "SortedAngles":
        keys = sorted(angular_key(origin, p) for p in points)
        return cls(tuple(keys), origin)


@dataclass(frozen=True)
class HalfspaceCounts:
    left: tuple
    total: int

    @property
    def right(self) -> tuple:
        return tuple(self.total - c - 1 for c in self.left)


class GeneralPositionError(DegenerateInputError):
    """Two sorted directions coincide or are exactly opposite.

    ``indices`` are the positions of the two keys in the sorted sequence.
    """

    def __init__(self, i: int, j: int, opposite: bool):
        kind = "antipodal" if opposite else "coincident"
        super().__init__(f"{kind} directions at sorted positions {i} and {j}")
        self.indices = (i, j)
        self.opposite = opposite


def _keys(angles) -> Sequence[AngularKey]:
    return angles.keys if isinstance(angles, SortedAngles) else angles


def half_turn_counts(keys: Sequence[AngularKey], counter=NULL) -> list:
    """For each key, the number of keys strictly inside its counter-clockwise half-turn.

    One circular two-pointer pass.  Raises :class:`GeneralPositionError` on
    equal or antipodal keys.
    """
    n = len(keys)
    counts = [0] * n
    j = 1
    steps = 0
    for i in range(n):
        ki = keys[i]
        if j <= i:
            j = i + 1
        elif j > i + 1 and cross_sign(ki, keys[(i + 1) % n]) == 0:
            # the pointer already passed the next key, so test it directly
            raise GeneralPositionError(i, (i + 1) % n, opposite=False)
        limit = i + n
        while j < limit:
            s = cross_sign(ki, keys[j % n])
            steps += 1
            if s > 0:
                j += 1
                continue
            if s == 0:
                raise GeneralPositionError(i, j % n, opposite=ki.quadrant != keys[j % n].quadrant)
            break
        counts[i] = j - i - 1
    counter.add(steps + n)
    return counts


def simplicial_depth_sorted(angles, counter=NULL) -> int:
    """Number of closed triangles on the sorted points that contain the origin."""
    keys = _keys(angles)
    n = len(keys)
    if n < 3:
        return 0
    u = half_turn_counts(keys, counter)
    return comb(n, 3) - sum(c * (c - 1) // 2 for c in u)


def halfspace_counts(angles, counter=NULL) -> HalfspaceCounts:
    keys = _keys(angles)
    return HalfspaceCounts(tuple(half_turn_counts(keys, counter)), len(keys))


def hsd(x, points) -> int:
    """Half-space (Tukey) depth of ``x``: fewest points strictly inside a half-plane through ``x``."""
    points = list(points)
    if not points:
        return 0
    counts = halfspace_counts(SortedAngles.around(x, points))
    n = counts.total
    return min(min(c, n - c - 1) for c in counts.left)
