"""Colourful segments and their side counts.

Every point gets the other points sorted around it.  One half-turn counting
pass around the tail ``A`` over all points of other colours gives, for each
head ``B``, how many of them lie left and right of ``A -> B``; a second pass
over the points of ``B``'s colour alone removes those, leaving the counts of
third-colour points on each side.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ._instrument import NULL
from .depth_mono import GeneralPositionError, half_turn_counts
from .geom import ColourConfiguration, DegenerateInputError, Point, angular_key


@dataclass(frozen=True)
class ColourfulSegment:
    """Directed segment from ``tail`` to ``head``, ``colour of tail < colour of head``.

    ``r`` counts third-colour points strictly right of ``tail -> head``
    (the positive side), ``l`` those strictly left.
    """

    id: tuple  # (tail colour, tail index, head colour, head index)
    tail: Point
    head: Point
    r: int
    l: int

    @property
    def colours(self) -> tuple:
        return self.id[0], self.id[2]

    def opposite_count(self, side: int) -> int:
        """Side count of the half-plane not containing a point with ``orient(tail, head, .) == side``."""
        if side < 0:
            return self.l
        if side > 0:
            return self.r
        raise ValueError("point lies on the segment's line")


@dataclass(frozen=True)
class RadialOrder:
    """``orders[i]`` lists the flat indices of all other points, counter-clockwise around point ``i``.

    Flat indices follow :meth:`ColourConfiguration.points`.
    """

    points: tuple  # (colour, index, point)
    orders: tuple

    def around(self, i: int) -> tuple:
        return self.orders[i]


def sort_around_all(config: ColourConfiguration, counter=NULL) -> RadialOrder:
    """Exact comparison sort of the other points around each point, O(n^2 log n)."""
    pts = tuple(config.points())
    orders = []
    n = len(pts)
    for i, (_, _, origin) in enumerate(pts):
        keys = {j: angular_key(origin, p) for j, (_, _, p) in enumerate(pts) if j != i}
        orders.append(tuple(sorted(keys, key=keys.__getitem__)))
    counter.add(n * n * max(1, n.bit_length()))
    return RadialOrder(pts, tuple(orders))


def _left_counts(origin, members: Sequence[int], pts, counter) -> dict:
    keys = [angular_key(origin, pts[j][2]) for j in members]
    try:
        left = half_turn_counts(keys, counter)
    except GeneralPositionError as err:
        a, b = (pts[members[t]][2] for t in err.indices)
        raise DegenerateInputError(f"points {origin}, {a} and {b} are collinear", [origin, a, b]) from None
    return dict(zip(members, left))


def side_counts(config: ColourConfiguration, radial: RadialOrder | None = None, counter=NULL) -> list:
    """All colourful segments with ``r`` and ``l``, in lexicographic ``id`` order.

    Raises :class:`DegenerateInputError` when a point of a colour other than
    the tail's lies on the line through the tail and another such point.
    """
    if radial is None:
        radial = sort_around_all(config, counter)
    pts = radial.points

    segments = []
    for a, (ca, ia, A) in enumerate(pts):
        order = radial.around(a)
        others = [j for j in order if pts[j][0] != ca]
        # run even without heads: the pass also rejects collinear triples through A
        left_all = _left_counts(A, others, pts, counter)
        total_all = len(others)
        by_colour = {}
        for j in others:
            by_colour.setdefault(pts[j][0], []).append(j)
        for cb in sorted(by_colour):
            if cb < ca:
                continue
            members = by_colour[cb]
            left_b = _left_counts(A, members, pts, counter)
            for b in sorted(members, key=lambda f: pts[f][1]):
                lb = left_all[b]
                rb = total_all - 1 - lb
                lc = left_b[b]
                rc = len(members) - 1 - lc
                segments.append(ColourfulSegment((ca, ia, cb, pts[b][1]), A, pts[b][2], rb - rc, lb - lc))
    segments.sort(key=lambda s: s.id)
    return segments
