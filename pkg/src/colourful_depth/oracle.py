"""Brute-force references for every fast path.

Nothing here imports a predicate from the fast modules: orientation,
containment and crossing tests are re-derived locally so that a bug in the
fast code cannot hide behind a shared helper.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple, Sequence


class OracleReport(NamedTuple):
    value: int
    witnesses: tuple = ()
    work: int = 0


class _Work:
    def __init__(self):
        self.n = 0


def _det(ax, ay, bx, by):
    return ax * by - ay * bx


def _turn(a, b, c) -> int:
    v = _det(b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1])
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def _between(p, q, x) -> bool:
    """``x`` on the closed segment pq, assuming collinearity."""
    return min(p[0], q[0]) <= x[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= x[1] <= max(p[1], q[1])


def triangle_contains(a, b, c, x) -> bool:
    """Closed containment of ``x`` in the convex hull of ``a, b, c`` by orientation signs."""
    s1, s2, s3 = _turn(a, b, x), _turn(b, c, x), _turn(c, a, x)
    if _turn(a, b, c) == 0:
        if s1 or s2 or s3:
            return False
        return _between(a, b, x) or _between(b, c, x) or _between(a, c, x)
    return (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0)


def triangle_contains_by_antipode(a, b, c, x):
    """Containment through the opposite direction of ``a``: it must fall on the short arc b..c.

    Returns ``None`` when ``b`` and ``c`` are collinear with ``x`` (the arc
    is undefined); otherwise a bool.
    """
    ux, uy = x[0] - a[0], x[1] - a[1]  # direction opposite to a, seen from x
    vx, vy = b[0] - x[0], b[1] - x[1]
    wx, wy = c[0] - x[0], c[1] - x[1]
    s = _det(vx, vy, wx, wy)
    if s == 0 or (ux == 0 and uy == 0):
        return None
    if s < 0:
        vx, vy, wx, wy = wx, wy, vx, vy
    return _det(vx, vy, ux, uy) >= 0 and _det(ux, uy, wx, wy) >= 0


def _colourful_triangles(config):
    for i, j, l in combinations(range(config.k), 3):
        yield from product(config.classes[i], config.classes[j], config.classes[l])


def csd_bruteforce(x, config, work: _Work | None = None) -> int:
    """Count colourful triangles whose closed hull contains ``x``, one by one."""
    count = 0
    tests = 0
    for a, b, c in _colourful_triangles(config):
        tests += 1
        if triangle_contains(a, b, c, x):
            count += 1
    if work is not None:
        work.n += 4 * tests
    return count


def mono_depth_bruteforce(x, points: Sequence) -> int:
    return sum(1 for a, b, c in combinations(points, 3) if triangle_contains(a, b, c, x))


def hsd_bruteforce(x, points: Sequence) -> int:
    """Fewest points strictly on one side of a line through ``x`` and a data point."""
    points = list(points)
    if not points:
        return 0
    best = len(points)
    for p in points:
        left = sum(1 for q in points if _turn(x, p, q) > 0)
        right = sum(1 for q in points if _turn(x, p, q) < 0)
        best = min(best, left, right)
    return best


def colour_of(config, point):
    for c, cls in enumerate(config.classes):
        if point in cls:
            return c
    raise KeyError(point)


def side_counts_bruteforce(segment, config) -> tuple:
    """``(r, l)`` for the directed segment ``(tail, head)``: other-colour points right and left of it."""
    tail, head = segment
    skip = {colour_of(config, tail), colour_of(config, head)}
    r = l = 0
    for c, cls in enumerate(config.classes):
        if c in skip:
            continue
        for q in cls:
            t = _turn(tail, head, q)
            if t < 0:
                r += 1
            elif t > 0:
                l += 1
    return r, l


def colourful_segments_bruteforce(config) -> list:
    """All ``(tail, head)`` pairs with the tail's colour index below the head's."""
    segs = []
    for i, j in combinations(range(config.k), 2):
        for a in config.classes[i]:
            for b in config.classes[j]:
                segs.append((a, b))
    return segs


def proper_crossing(s, t):
    """Crossing point of two segments meeting in both relative interiors, else ``None``."""
    (a, b), (c, d) = s, t
    if len({a, b, c, d}) < 4:
        return None
    if _turn(a, b, c) * _turn(a, b, d) >= 0 or _turn(c, d, a) * _turn(c, d, b) >= 0:
        return None
    # a + t (b - a) on line cd
    den = _det(b[0] - a[0], b[1] - a[1], d[0] - c[0], d[1] - c[1])
    num = _det(c[0] - a[0], c[1] - a[1], d[0] - c[0], d[1] - c[1])
    t_ = Fraction(num) / Fraction(den)
    return (a[0] + t_ * (b[0] - a[0]), a[1] + t_ * (b[1] - a[1]))


def _norm(p):
    out = []
    for v in p:
        v = Fraction(v)
        out.append(v.numerator if v.denominator == 1 else v)
    return tuple(out)


def crossing_points(config) -> list:
    """Distinct interior crossing points of the colourful segments."""
    segs = colourful_segments_bruteforce(config)
    seen = {}
    for s, t in combinations(segs, 2):
        v = proper_crossing(s, t)
        if v is not None:
            seen.setdefault(_norm(v), None)
    return list(seen)


def median_bruteforce(config) -> OracleReport:
    """Maximum colourful depth over data points and segment crossings, with every maximiser.

    Witness order: data points first (in class order), then crossings.
    """
    work = _Work()
    candidates = [_norm(p) for cls in config.classes for p in cls]
    candidates += crossing_points(config)
    best = -1
    witnesses = []
    for v in candidates:
        d = csd_bruteforce(v, config, work)
        if d > best:
            best, witnesses = d, [v]
        elif d == best:
            witnesses.append(v)
    return OracleReport(max(best, 0), tuple(witnesses), work.n)
