"""Colourful simplicial depth of a query point in O(n log n + kn).

The colourful depth is obtained from the monochrome depth by removing every
containing triangle that repeats a colour.  For colour ``i`` the triangles
with at least two vertices of colour ``i`` are counted by walking the sorted
angles of that colour and counting, with prefix sums, the antipodes that
fall between pairs of colour-``i`` points less than a half-turn apart.
"""
from __future__ import annotations

import heapq
from bisect import bisect_left
from dataclasses import dataclass
from operator import itemgetter
from typing import Sequence

from ._instrument import NULL
from .depth_mono import GeneralPositionError, simplicial_depth_sorted
from .geom import (
    AngularKey,
    ColourConfiguration,
    DegenerateInputError,
    Point,
    angular_key,
    antipode,
    as_point,
    cross_sign,
    generic_direction,
    orient,
)


@dataclass(frozen=True)
class ColourPrefixTables:
    """Per-colour tables feeding the closed-form count of ``D^i_*``."""

    merged: tuple
    pointer: tuple
    gap_counts: tuple
    prefix: tuple
    prefix2: tuple
    reach: tuple


@dataclass(frozen=True)
class DepthBreakdown:
    total_mono: int
    per_colour_star: tuple
    same_colour_sum: int
    colourful: int

    @property
    def star_sum(self) -> int:
        return sum(self.per_colour_star)


@dataclass(frozen=True)
class ColourAngles:
    """Sorted angles of one colour class around the query point.

    ``order[j]`` is the index, inside the colour class, of the point with the
    ``j``-th smallest angle.
    """

    keys: tuple
    antipodes: tuple
    order: tuple


def _first_at_least_half_turn(keys: Sequence[AngularKey]) -> int:
    return bisect_left(keys, 2, key=lambda k: k.quadrant)


def antipodes_of_sorted(keys: Sequence[AngularKey], counter=NULL) -> list:
    """Antipodes of sorted keys, themselves sorted, by rotation instead of re-sorting."""
    h = _first_at_least_half_turn(keys)
    counter.add(len(keys))
    return [antipode(k) for k in keys[h:]] + [antipode(k) for k in keys[:h]]


def _colour_angles(keys: list, order: list, counter) -> ColourAngles:
    return ColourAngles(tuple(keys), tuple(antipodes_of_sorted(keys, counter)), tuple(order))


def build_sorted_colour_angles(x, config: ColourConfiguration, perturbation=None, counter=NULL) -> list:
    """Sorted angles and antipodes of every colour class around ``x``."""
    out = []
    for cls in config.classes:
        raw = [angular_key(x, p, perturbation) for p in cls]
        order = sorted(range(len(raw)), key=raw.__getitem__)
        n_i = len(raw)
        counter.add(n_i * max(1, n_i.bit_length()))
        out.append(_colour_angles([raw[j] for j in order], order, counter))
    return out


def sorted_colour_angles_presorted(x, config: ColourConfiguration, counter=NULL) -> list:
    """Like :func:`build_sorted_colour_angles` for classes already in counter-clockwise order.

    Checks the order in linear time and raises ``ValueError`` if a class is
    not sorted around ``x``.
    """
    out = []
    for c, cls in enumerate(config.classes):
        keys = [angular_key(x, p) for p in cls]
        for j in range(1, len(keys)):
            if not keys[j - 1] < keys[j]:
                if keys[j - 1] == keys[j]:
                    a, b = as_point(cls[j - 1]), as_point(cls[j])
                    raise DegenerateInputError(
                        f"points {a} and {b} are collinear with the query point {as_point(x)} "
                        "(on one ray from it)",
                        [a, b],
                    )
                raise ValueError(
                    f"colour {c + 1} is not sorted counter-clockwise around {as_point(x)} "
                    f"(positions {j - 1} and {j})"
                )
        counter.add(2 * len(keys))
        out.append(_colour_angles(keys, list(range(len(keys))), counter))
    return out


def merge_antipodes(arrays: Sequence[Sequence[AngularKey]], counter=NULL) -> list:
    """k-way heap merge of sorted antipode arrays into one sorted array."""
    tagged = [[(key, c, j) for j, key in enumerate(arr)] for c, arr in enumerate(arrays)]
    n = sum(len(a) for a in arrays)
    k = sum(1 for a in arrays if a)
    counter.add(n * max(1, k.bit_length()))
    return list(heapq.merge(*tagged, key=itemgetter(0)))


def merge_with_pointers(merged_antipodes: Sequence[AngularKey], theta: Sequence[AngularKey], counter=NULL):
    """Merge antipodes ``A`` with one colour's angles; return ``(A_i, p)``.

    ``p[j]`` is the position of ``theta[j]`` in the merged array.  An angle
    equal to an antipode means two data points are collinear with the query
    point on opposite sides; :class:`GeneralPositionError` is raised with the
    positions ``(index in A, index in theta)``.
    """
    merged = []
    pointer = []
    a, t = 0, 0
    na, nt = len(merged_antipodes), len(theta)
    while a < na and t < nt:
        ka, kt = merged_antipodes[a], theta[t]
        if kt < ka:
            pointer.append(len(merged))
            merged.append(kt)
            t += 1
        elif ka < kt:
            merged.append(ka)
            a += 1
        else:
            raise GeneralPositionError(a, t, opposite=True)
    while t < nt:
        pointer.append(len(merged))
        merged.append(theta[t])
        t += 1
    merged.extend(merged_antipodes[a:])
    counter.add(na + nt)
    return merged, pointer


def gap_counts(p: Sequence[int], n: int, n_i: int) -> list:
    """``C[h]``: antipodes strictly between ``theta[h-1]`` and ``theta[h]`` going counter-clockwise."""
    c = [0] * n_i
    for h in range(n_i):
        prev, cur = p[h - 1], p[h]
        if prev < cur:
            c[h] = cur - prev - 1
        else:
            c[h] = n + n_i - prev + cur - 1
    return c


def reach_indices(theta: Sequence[AngularKey], counter=NULL) -> list:
    """``l[j]``: last index, going counter-clockwise from ``j``, inside the open half-turn at ``theta[j]``.

    ``l[j] == j`` when the half-turn holds no other point.  The first entry
    comes from a binary search, the rest from a monotone scan.
    """
    n = len(theta)
    if n == 0:
        return []
    k0 = theta[0]
    end = bisect_left(range(1, n), True, key=lambda t: cross_sign(k0, theta[t]) <= 0)
    e = end  # absolute index of the last point inside the half-turn of theta[0]
    reach = [e % n]
    steps = n.bit_length()
    for j in range(1, n):
        kj = theta[j]
        if e < j:
            e = j
        limit = j + n - 1
        while e < limit and cross_sign(kj, theta[(e + 1) % n]) > 0:
            e += 1
            steps += 1
        reach.append(e % n)
    counter.add(steps + n)
    return reach


def prefix_sums(values: Sequence[int]) -> list:
    out = []
    acc = 0
    for v in values:
        acc += v
        out.append(acc)
    return out


def d_i_star(C: Sequence[int], S: Sequence[int], T: Sequence[int], reach: Sequence[int]) -> int:
    """Containing triangles with at least two vertices of one colour (same-colour ones thrice).

    For each ``j`` with reach ``l`` and window length ``m = (l - j) mod n_i``
    the inner double sum is ``T[l] - T[j] - m*S[j]``; when the window wraps
    past the end of the array the wrapped prefix adds ``T[-1] + (l+1)*S[-1]``.
    """
    n_i = len(C)
    if n_i < 2:
        return 0
    s_last, t_last = S[-1], T[-1]
    total = 0
    for j in range(n_i):
        lj = reach[j]
        m = (lj - j) % n_i
        if m == 0:
            continue
        total += T[lj] - T[j] - m * S[j]
        if lj < j:
            total += t_last + (lj + 1) * s_last
    return total


def colour_tables(A: Sequence[AngularKey], theta: Sequence[AngularKey], counter=NULL) -> ColourPrefixTables:
    n = len(A)
    merged, p = merge_with_pointers(A, theta, counter)
    C = gap_counts(p, n, len(theta))
    S = prefix_sums(C)
    T = prefix_sums(S)
    reach = reach_indices(theta, counter)
    counter.add(3 * len(theta))
    return ColourPrefixTables(tuple(merged), tuple(p), tuple(C), tuple(S), tuple(T), tuple(reach))


def _raise_named(err: GeneralPositionError, pts: Sequence[Point], x) -> None:
    named = [pts[i] for i in err.indices]
    kind = "on opposite sides of" if err.opposite else "on one ray from"
    raise DegenerateInputError(
        f"points {named[0]} and {named[1]} are collinear with the query point {as_point(x)} ({kind} it)",
        named,
    ) from None


def _breakdown(x, config: ColourConfiguration, angles: list, counter) -> DepthBreakdown:
    """Algorithm body shared by the sorting and presorted entry points."""
    # points in sorted order, to name the culprits of a general position failure
    sorted_pts = [[config.classes[c][j] for j in ca.order] for c, ca in enumerate(angles)]

    same_colour = 0
    for c, ca in enumerate(angles):
        try:
            same_colour += simplicial_depth_sorted(ca.keys, counter)
        except GeneralPositionError as err:
            _raise_named(err, sorted_pts[c], x)

    merged = merge_antipodes([ca.antipodes for ca in angles], counter)
    A = [key for key, _, _ in merged]
    # the j-th antipode of colour c belongs to sorted point (j + h_c) mod n_c
    splits = [_first_at_least_half_turn(ca.keys) for ca in angles]
    owners = [sorted_pts[c][(j + splits[c]) % len(sorted_pts[c])] for _, c, j in merged]
    try:
        total = simplicial_depth_sorted(A, counter)
    except GeneralPositionError as err:
        _raise_named(err, owners, x)

    stars = []
    for c, ca in enumerate(angles):
        try:
            if len(ca.keys) < 2:
                # no pair of this colour, but antipodal pairs still need checking
                merge_with_pointers(A, ca.keys, counter)
                stars.append(0)
                continue
            tables = colour_tables(A, ca.keys, counter)
        except GeneralPositionError as err:
            a, t = err.indices
            _raise_named(GeneralPositionError(0, 1, True), [owners[a], sorted_pts[c][t]], x)
        stars.append(d_i_star(tables.gap_counts, tables.prefix, tables.prefix2, tables.reach))
        del tables

    colourful = total - (sum(stars) - 2 * same_colour)
    return DepthBreakdown(total, tuple(stars), same_colour, colourful)


def csd(x, config: ColourConfiguration, counter=NULL) -> DepthBreakdown:
    """Colourful simplicial depth of ``x``, with the intermediate counts.

    Requires general position: ``x`` is not a data point and no two data
    points are collinear with ``x``; otherwise :class:`DegenerateInputError`.
    """
    x = as_point(x)
    return _breakdown(x, config, build_sorted_colour_angles(x, config, counter=counter), counter)


def csd_sorted(x, config: ColourConfiguration, counter=NULL) -> DepthBreakdown:
    """:func:`csd` for classes already sorted counter-clockwise around ``x`` (O(kn))."""
    x = as_point(x)
    return _breakdown(x, config, sorted_colour_angles_presorted(x, config, counter), counter)


def csd_from_angles(x, config: ColourConfiguration, angles: list, counter=NULL) -> DepthBreakdown:
    """:func:`csd` from precomputed per-colour :class:`ColourAngles`."""
    return _breakdown(as_point(x), config, angles, counter)


def vertex_pair_count(sizes: Sequence[int], colour: int) -> int:
    """Pairs of points of two distinct colours, both different from ``colour``.

    Uses running prefix sums of the class sizes, so the cost is O(k).
    """
    others = [s for c, s in enumerate(sizes) if c != colour]
    total = sum(others)
    acc = 0
    pairs = 0
    for s in others:
        acc += s
        pairs += s * (total - acc)
    return pairs


def csd_at_data_point(q, config: ColourConfiguration, counter=NULL, closed: bool = False) -> int:
    """Colourful depth of a data point: depth w.r.t. the other points plus triangles having it as a vertex.

    With ``closed=True`` other data points collinear with ``q`` are allowed.
    """
    q = as_point(q)
    try:
        colour, index = config.locate(q)
    except KeyError:
        raise ValueError(f"{q} is not a data point of the configuration") from None
    rest = config.without(colour, index)
    inner = csd_closed(q, rest, counter) if closed else csd(q, rest, counter).colourful
    return inner + vertex_pair_count(rest.sizes, colour)


def _primitive(dx, dy) -> tuple:
    from math import gcd

    from .geom import _integral_direction

    dx, dy = _integral_direction(dx, dy)
    g = gcd(dx, dy)
    return dx // g, dy // g


def csd_closed(x, config: ColourConfiguration, counter=NULL) -> int:
    """Colourful depth of any point ``x``, degenerate positions included.

    Data points go through :func:`csd_at_data_point`.  Otherwise the depth of
    ``x`` displaced infinitesimally along a generic direction ``d`` is
    computed with perturbed angular keys, and the closed triangles lost by
    the displacement are added back: those with an edge through ``x`` whose
    third vertex lies on the side away from ``d``, plus flat colourful
    triples whose hull contains ``x``.
    """
    x = as_point(x)
    pts = config.points()
    if any(p == x for _, _, p in pts):
        return csd_at_data_point(x, config, counter, closed=True)
    try:
        return csd(x, config, counter).colourful
    except DegenerateInputError:
        pass

    d = generic_direction(x, (p for _, _, p in pts))
    base = _breakdown(x, config, build_sorted_colour_angles(x, config, perturbation=d, counter=counter), counter)
    depth = base.colourful

    # group points by line through x
    lines = {}
    for c, _, p in pts:
        u = _primitive(p.x - x.x, p.y - x.y)
        side = 1
        if u[0] < 0 or (u[0] == 0 and u[1] < 0):
            u = (-u[0], -u[1])
            side = -1
        lines.setdefault(u, []).append((side, c, p))
    counter.add(len(pts))

    for group in lines.values():
        if len({side for side, _, _ in group}) < 2:
            continue
        for s1, c1, a in group:
            if s1 != 1:
                continue
            for s2, c2, b in group:
                if s2 != -1 or c1 == c2:
                    continue
                # x lies in the open segment ab; count apexes off the line, away from d
                toward_d = orient(a, b, (a.x + d[0], a.y + d[1]))
                for c3, _, q in pts:
                    if c3 == c1 or c3 == c2:
                        continue
                    o = orient(a, b, q)
                    if o != 0 and o != toward_d:
                        depth += 1
                counter.add(len(pts))
        # flat colourful triples on this line whose hull contains x
        n_g = len(group)
        for i in range(n_g):
            for j in range(i + 1, n_g):
                for t in range(j + 1, n_g):
                    trio = (group[i], group[j], group[t])
                    if len({c for _, c, _ in trio}) == 3 and len({s for s, _, _ in trio}) == 2:
                        depth += 1
    return depth
