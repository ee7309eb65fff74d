"""Seeded instance generators and fixtures shared by the test modules."""
from fractions import Fraction
import random

from colourful_depth.geom import ColourConfiguration, DegenerateInputError, Point, orient
from colourful_depth.depth_colourful import csd

FIG1 = ColourConfiguration((
    ((2, 2), ("-3.5", "0.8"), (2, "-1.5")),
    (("-1.5", 2), ("2.3", "0.97"), (0, "-2.4")),
    ((-1, "-2.3"), ("-2.5", 0)),
))
FIG4 = ColourConfiguration((
    ((20, 32), (24, 4), (24, 12)),
    ((4, 24), (16, 20)),
    ((32, 24), (8, 8)),
))
# the seven fixture points in class order: reds, greens, blues
FIG4_NAMES = ("R1", "R2", "R3", "G1", "G2", "B1", "B2")


def general_position_config(rng: random.Random, sizes, radius: int = 50, distinct_x: bool = True):
    """Lattice points with no three collinear (and no shared abscissa unless told otherwise)."""
    pts, xs = [], set()
    classes = []
    for size in sizes:
        cls = []
        while len(cls) < size:
            p = Point(rng.randint(-radius, radius), rng.randint(-radius, radius))
            if p in pts or (distinct_x and p.x in xs):
                continue
            if any(orient(pts[i], pts[j], p) == 0 for i in range(len(pts)) for j in range(i + 1, len(pts))):
                continue
            pts.append(p)
            xs.add(p.x)
            cls.append(p)
        classes.append(tuple(cls))
    return ColourConfiguration(tuple(classes))


def random_sizes(rng: random.Random, k: int, n: int):
    sizes = [1] * k
    for _ in range(n - k):
        sizes[rng.randrange(k)] += 1
    return sizes


def lattice_config(rng: random.Random, kmax: int = 6, nmax: int = 25, radius: int = 50):
    """Random lattice points, collinearities allowed, some classes possibly empty."""
    k = rng.randint(3, kmax)
    n = rng.randint(3, nmax)
    classes = [[] for _ in range(k)]
    seen = set()
    for _ in range(n):
        p = (rng.randint(-radius, radius), rng.randint(-radius, radius))
        if p not in seen:
            seen.add(p)
            classes[rng.randrange(k)].append(p)
    return ColourConfiguration(tuple(map(tuple, classes)))


def generic_query(rng: random.Random, config, radius: int = 50) -> Point:
    """A rational query point in general position with respect to ``config``."""
    while True:
        x = Point(Fraction(rng.randint(-radius * 997, radius * 997), 997),
                  Fraction(rng.randint(-radius * 991, radius * 991), 991))
        try:
            csd(x, config)
        except DegenerateInputError:
            continue
        return x
