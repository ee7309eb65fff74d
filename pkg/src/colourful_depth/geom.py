"""Exact planar primitives.

Every predicate here works on integers or :class:`fractions.Fraction` values,
so no decision ever depends on floating point rounding.  Angular order around
an origin is represented by :class:`AngularKey`, which compares quadrants
first and then the sign of an exact cross product.
"""
from __future__ import annotations

import math
import random
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class DegenerateInputError(ValueError):
    """Raised when input violates the general position assumption.

    ``points`` holds the offending points (possibly empty when the violation
    is not attributable to particular points).
    """

    def __init__(self, message: str, points: Sequence["Point"] = ()):
        super().__init__(message)
        self.points = tuple(points)


def exact(value) -> Scalar:
    """Convert ``value`` to an exact scalar, preferring ``int`` when integral."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite coordinate {value!r}")
        f = Fraction(value)
    elif isinstance(value, str):
        f = Fraction(value.strip())
    else:
        # numpy integers, Decimal and friends
        f = Fraction(value)
    return f.numerator if f.denominator == 1 else f


class Point(namedtuple("_Point", "x y")):
    """Immutable point with exact coordinates (``int`` or ``Fraction``)."""

    __slots__ = ()

    def __new__(cls, x, y):
        return super().__new__(cls, exact(x), exact(y))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


def as_point(p) -> Point:
    return p if isinstance(p, Point) else Point(*p)


@dataclass(frozen=True)
class ColourConfiguration:
    """Points partitioned into ``k >= 3`` colour classes.

    Colour classes are indexed from 0 internally; empty classes are allowed.
    """

    classes: tuple

    def __post_init__(self):
        classes = tuple(tuple(as_point(p) for p in cls) for cls in self.classes)
        object.__setattr__(self, "classes", classes)
        if len(classes) < 3:
            raise ValueError(f"need at least 3 colour classes, got {len(classes)}")
        seen = {}
        for c, cls in enumerate(classes):
            for j, p in enumerate(cls):
                if p in seen:
                    raise DegenerateInputError(
                        f"coincident points {p} (colour {seen[p][0]} and colour {c})",
                        [p],
                    )
                seen[p] = (c, j)

    @classmethod
    def from_points(cls, points: Iterable, colours: Iterable[int], k: int | None = None):
        """Build from parallel sequences of points and 0-based colour labels."""
        points = [as_point(p) for p in points]
        colours = [int(c) for c in colours]
        if len(points) != len(colours):
            raise ValueError("points and colours differ in length")
        if k is None:
            k = max(colours, default=-1) + 1
        buckets = [[] for _ in range(k)]
        for p, c in zip(points, colours):
            if not 0 <= c < k:
                raise ValueError(f"colour {c} out of range 0..{k - 1}")
            buckets[c].append(p)
        return cls(tuple(buckets))

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple:
        return tuple(len(c) for c in self.classes)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def points(self) -> list:
        """All points as ``(colour, index, point)`` triples in class order."""
        return [(c, j, p) for c, cls in enumerate(self.classes) for j, p in enumerate(cls)]

    def locate(self, q) -> tuple:
        """Return ``(colour, index)`` of data point ``q``; raise ``KeyError`` if absent."""
        q = as_point(q)
        for c, cls in enumerate(self.classes):
            for j, p in enumerate(cls):
                if p == q:
                    return c, j
        raise KeyError(f"{q} is not a data point")

    def without(self, colour: int, index: int) -> "ColourConfiguration":
        classes = list(self.classes)
        cls = classes[colour]
        classes[colour] = cls[:index] + cls[index + 1:]
        return ColourConfiguration(tuple(classes))

    def relabel(self, permutation: Sequence[int]) -> "ColourConfiguration":
        """Class ``i`` of the result is class ``permutation[i]`` of ``self``."""
        return ColourConfiguration(tuple(self.classes[i] for i in permutation))


def orient(a, b, c) -> int:
    """Sign of the turn a -> b -> c: +1 left (counter-clockwise), -1 right, 0 collinear."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def _integral_direction(dx: Scalar, dy: Scalar) -> tuple:
    # positive rescaling keeps the direction and clears denominators
    den = 1
    if isinstance(dx, Fraction):
        den = dx.denominator
    if isinstance(dy, Fraction):
        den = den * dy.denominator // math.gcd(den, dy.denominator)
    if den != 1:
        dx, dy = int(dx * den), int(dy * den)
    return dx, dy


class AngularKey:
    """Exact, totally ordered polar angle of a direction vector.

    The order is counter-clockwise from the positive x axis, angles in
    ``[0, 2*pi)``.  A key may carry a first-order perturbation ``(ex, ey)``:
    it then stands for the direction ``(dx + t*ex, dy + t*ey)`` as ``t -> 0+``.
    """

    __slots__ = ("quadrant", "dx", "dy", "ex", "ey")

    def __init__(self, dx, dy, ex=0, ey=0):
        if dx == 0 and dy == 0 and ex == 0 and ey == 0:
            raise DegenerateInputError("zero direction vector")
        self.dx, self.dy, self.ex, self.ey = dx, dy, ex, ey
        sx = _sgn(dx) or _sgn(ex)
        sy = _sgn(dy) or _sgn(ey)
        if sx > 0 and sy >= 0:
            q = 0
        elif sx <= 0 and sy > 0:
            q = 1
        elif sx < 0 and sy <= 0:
            q = 2
        else:
            q = 3
        self.quadrant = q

    def __lt__(self, other: "AngularKey") -> bool:
        if self.quadrant != other.quadrant:
            return self.quadrant < other.quadrant
        return cross_sign(self, other) > 0

    def __gt__(self, other: "AngularKey") -> bool:
        return other.__lt__(self)

    def __le__(self, other: "AngularKey") -> bool:
        return not other.__lt__(self)

    def __ge__(self, other: "AngularKey") -> bool:
        return not self.__lt__(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AngularKey):
            return NotImplemented
        return self.quadrant == other.quadrant and cross_sign(self, other) == 0

    def __hash__(self):
        raise TypeError("AngularKey is not hashable")

    @property
    def perturbed(self) -> bool:
        return bool(self.ex or self.ey)

    def __repr__(self):
        if self.perturbed:
            return f"AngularKey(q{self.quadrant}, {self.dx}, {self.dy}; {self.ex}, {self.ey})"
        return f"AngularKey(q{self.quadrant}, {self.dx}, {self.dy})"


def cross_sign(a: AngularKey, b: AngularKey) -> int:
    """Sign of the cross product of two key directions (perturbation aware)."""
    c = a.dx * b.dy - a.dy * b.dx
    if c:
        return 1 if c > 0 else -1
    if not (a.ex or a.ey or b.ex or b.ey):
        return 0
    c = a.dx * b.ey + a.ex * b.dy - a.dy * b.ex - a.ey * b.dx
    if c:
        return 1 if c > 0 else -1
    c = a.ex * b.ey - a.ey * b.ex
    return (c > 0) - (c < 0)


def in_open_half_turn(a: AngularKey, b: AngularKey) -> bool:
    """True iff ``b`` lies strictly inside the half-turn counter-clockwise from ``a``."""
    return cross_sign(a, b) > 0


def angular_key(origin, p, perturbation=None) -> AngularKey:
    """Key of the direction from ``origin`` to ``p``.

    ``perturbation`` is a direction ``d``; the key then describes the
    direction from ``origin + t*d`` to ``p`` for infinitesimal ``t > 0``.
    """
    dx, dy = _integral_direction(p[0] - origin[0], p[1] - origin[1])
    if perturbation is None:
        if dx == 0 and dy == 0:
            raise DegenerateInputError(f"point {as_point(p)} coincides with the origin", [as_point(p)])
        return AngularKey(dx, dy)
    ex, ey = perturbation
    return AngularKey(dx, dy, -ex, -ey) if (dx or dy) else AngularKey(0, 0, -ex, -ey)


def antipode(key: AngularKey) -> AngularKey:
    return AngularKey(-key.dx, -key.dy, -key.ex, -key.ey)


def minor_arc_contains(b: AngularKey, c: AngularKey, q: AngularKey) -> bool:
    """True iff ``q`` lies on the closed arc shorter than a half-turn between ``b`` and ``c``."""
    s = cross_sign(b, c)
    if s < 0:
        b, c = c, b
    elif s == 0:
        if b == c:
            return q == b
        raise DegenerateInputError("arc endpoints are antipodal")
    # antipodes of b and c fail one of the two tests
    return cross_sign(b, q) >= 0 and cross_sign(q, c) >= 0


def sort_keys(keys: Sequence[AngularKey]) -> list:
    """Indices of ``keys`` in counter-clockwise order."""
    return sorted(range(len(keys)), key=keys.__getitem__)


def generic_direction(origin, points: Iterable) -> tuple:
    """An integer direction with both components nonzero, parallel to no ``p - origin``."""
    slopes = set()
    for p in points:
        dx, dy = p[0] - origin[0], p[1] - origin[1]
        if dx != 0:
            slopes.add(Fraction(dy) / Fraction(dx))
    t = 1
    while Fraction(t) in slopes:
        t += 1
    return (1, t)


def jitter(config: ColourConfiguration, seed: int, scale: Fraction | None = None) -> ColourConfiguration:
    """Deterministically move every point by a small random rational offset.

    The default offset bound is 1/1000 of the smallest nonzero coordinate
    difference, so the configuration keeps its coarse shape.
    """
    rng = random.Random(seed)
    if scale is None:
        coords = sorted({p.x for _, _, p in config.points()} | {p.y for _, _, p in config.points()})
        gaps = [b - a for a, b in zip(coords, coords[1:]) if b != a]
        scale = Fraction(min(gaps, default=1)) / 1000
    denom = 1 << 20
    classes = []
    for cls in config.classes:
        moved = []
        for p in cls:
            ox = Fraction(rng.randint(-denom, denom), denom) * scale
            oy = Fraction(rng.randint(-denom, denom), denom) * scale
            moved.append(Point(p.x + ox, p.y + oy))
        classes.append(tuple(moved))
    return ColourConfiguration(tuple(classes))
