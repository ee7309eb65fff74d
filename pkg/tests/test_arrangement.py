import random

import pytest

from colourful_depth.arrangement import ColourfulSegment, side_counts, sort_around_all
from colourful_depth.geom import ColourConfiguration, DegenerateInputError, angular_key
from colourful_depth.oracle import side_counts_bruteforce

from helpers import FIG4, general_position_config, random_sizes


def test_radial_order_is_counter_clockwise():
    radial = sort_around_all(FIG4)
    for i, (_, _, p) in enumerate(radial.points):
        order = radial.around(i)
        assert i not in order and len(order) == FIG4.n - 1
        keys = [angular_key(p, radial.points[j][2]) for j in order]
        assert keys == sorted(keys)


def test_segment_count_and_ids():
    segs = side_counts(FIG4)
    assert len(segs) == 3 * 2 + 3 * 2 + 2 * 2
    assert [s.id for s in segs] == sorted(s.id for s in segs)
    assert all(s.colours[0] < s.colours[1] for s in segs)


@pytest.mark.parametrize("seed", range(25))
def test_matches_bruteforce(seed):
    rng = random.Random(seed)
    cfg = general_position_config(rng, random_sizes(rng, rng.randint(3, 6), rng.randint(4, 20)), distinct_x=False)
    segs = side_counts(cfg)
    assert len(segs) == sum(a * b for i, a in enumerate(cfg.sizes) for b in cfg.sizes[i + 1:])
    for s in segs:
        assert (s.r, s.l) == side_counts_bruteforce((s.tail, s.head), cfg)
        assert s.r + s.l == cfg.n - cfg.sizes[s.id[0]] - cfg.sizes[s.id[2]]


def test_mirror_swaps_sides():
    rng = random.Random(3)
    cfg = general_position_config(rng, [3, 3, 3])
    mirrored = ColourConfiguration(tuple(tuple((-p.x, p.y) for p in cls) for cls in cfg.classes))
    for s, t in zip(side_counts(cfg), side_counts(mirrored)):
        assert s.id == t.id and (s.r, s.l) == (t.l, t.r)


def test_opposite_count():
    s = ColourfulSegment((0, 0, 1, 0), (0, 0), (1, 0), r=2, l=5)
    assert s.opposite_count(-1) == 5
    assert s.opposite_count(1) == 2
    with pytest.raises(ValueError):
        s.opposite_count(0)


def test_third_colour_on_segment_line_rejected():
    cfg = ColourConfiguration((((0, 0),), ((4, 4),), ((2, 2), (0, 5))))
    with pytest.raises(DegenerateInputError):
        side_counts(cfg)


def test_collinear_same_colour_pair_rejected():
    # the highest colour still anchors a collinearity check
    cfg = ColourConfiguration((((0, 0), (2, 0)), ((9, 7),), ((5, 0),)))
    with pytest.raises(DegenerateInputError):
        side_counts(cfg)
