"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
import gc
import random
import sys
import time
import tracemalloc
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from colourful_depth._instrument import OpCounter  # noqa: E402
from colourful_depth.cli import _csd_case, _median_case  # noqa: E402
from colourful_depth.depth_colourful import csd, csd_sorted  # noqa: E402
from colourful_depth.geom import ColourConfiguration, Point  # noqa: E402
from colourful_depth.arrangement import side_counts  # noqa: E402
from colourful_depth.median_sweep import VertexKind, sweep_median, update_depth_across_vertex  # noqa: E402
from colourful_depth.oracle import (  # noqa: E402
    csd_bruteforce,
    median_bruteforce,
    mono_depth_bruteforce,
    triangle_contains,
)

from helpers import FIG1, FIG4, general_position_config, generic_query, random_sizes  # noqa: E402


def _pt(v):
    X, Y, W = v
    return (Fraction(X, W), Fraction(Y, W))


def _star_bruteforce(x, config, colour):
    """Containing triangles with two vertices of ``colour``, plus three times those with three."""
    pts = [(c, p) for c, _, p in config.points()]
    total = 0
    for (ca, a), (cb, b), (cc, c) in combinations(pts, 3):
        m = (ca, cb, cc).count(colour)
        if m >= 2 and triangle_contains(a, b, c, x):
            total += 1 if m == 2 else 3
    return total


# ---------------------------------------------------------------- criteria


def criterion_1():
    b = csd((0, 0), FIG1)
    best = min(_timed(lambda: csd((0, 0), FIG1)) for _ in range(20))
    ok = b.colourful == 6 and csd_bruteforce((0, 0), FIG1) == 6 and best < 0.010
    return ok, f"depth {b.colourful}, brute force {csd_bruteforce((0, 0), FIG1)}, best of 20 runs {best * 1e3:.2f} ms"


def fig4_facts():
    t = time.perf_counter()
    res = sweep_median(FIG4, all_witnesses=True)
    ref = median_bruteforce(FIG4)
    elapsed = time.perf_counter() - t
    data = {p for cls in FIG4.classes for p in cls}
    from colourful_depth.oracle import crossing_points

    at6 = sorted(v for v in crossing_points(FIG4) if csd_bruteforce(v, FIG4) == 6 and v not in data)
    data6 = {p for p in data if csd_bruteforce(p, FIG4) == 6}
    return res, ref, at6, data6, elapsed


def criterion_2():
    res, ref, at6, data6, elapsed = fig4_facts()
    named = {Point(32, 24), Point(4, 24), Point(8, 8), Point(16, 20)}
    ok = res.depth == 6 and named <= set(res.witnesses) and elapsed < 1.0
    detail = (f"sweep depth {res.depth} at {', '.join(f'({w.x}, {w.y})' for w in res.witnesses)}; "
              f"brute force agrees ({ref.value}); expected 6 with (32,24), (4,24), (8,8), (16,20); "
              f"{len(at6)} non-data crossings and {len(data6)} data points have depth 6; "
              f"{elapsed * 1e3:.0f} ms")
    return ok, detail


@lru_cache(maxsize=None)
def depth_instances():
    rng = random.Random(20240)
    out = []
    for _ in range(200):
        k = rng.randint(3, 6)
        n = rng.randint(k, 25)
        cfg = general_position_config(rng, random_sizes(rng, k, n), distinct_x=False)
        out.append((cfg, generic_query(rng, cfg)))
    return tuple(out)


def criterion_3():
    t = time.perf_counter()
    bad = 0
    for cfg, x in depth_instances():
        if csd(x, cfg).colourful != csd_bruteforce(x, cfg):
            bad += 1
    elapsed = time.perf_counter() - t
    ks = sorted({cfg.k for cfg, _ in depth_instances()})
    return bad == 0 and elapsed < 30, f"{200 - bad}/200 exact matches, k in {ks}, {elapsed:.1f} s"


def criterion_4():
    rng = random.Random(4242)
    t = time.perf_counter()
    bad = 0
    for _ in range(50):
        k = rng.randint(3, 4)
        cfg = general_position_config(rng, random_sizes(rng, k, rng.randint(k, 12)), radius=40)
        res = sweep_median(cfg)
        ref = median_bruteforce(cfg)
        if res.depth != ref.value or csd_bruteforce(res.witness, cfg) != ref.value:
            bad += 1
    elapsed = time.perf_counter() - t
    return bad == 0 and elapsed < 60, f"{50 - bad}/50 depth and witness matches, {elapsed:.1f} s"


def criterion_5():
    bad = 0
    for cfg, x in depth_instances():
        b = csd(x, cfg)
        pts = [p for _, _, p in cfg.points()]
        stars = tuple(_star_bruteforce(x, cfg, c) for c in range(cfg.k))
        same = sum(mono_depth_bruteforce(x, cls) for cls in cfg.classes)
        terms_ok = (b.total_mono == mono_depth_bruteforce(x, pts) and b.per_colour_star == stars
                    and b.same_colour_sum == same)
        nonneg = min(b.total_mono, b.same_colour_sum, b.colourful, *b.per_colour_star) >= 0
        identity = b.colourful == b.total_mono - sum(s - 2 * mono_depth_bruteforce(x, cls)
                                                    for s, cls in zip(b.per_colour_star, cfg.classes))
        if not (terms_ok and nonneg and identity):
            bad += 1
    return bad == 0, f"{200 - bad}/200 instances satisfy the identity with every term matching brute force"


def criterion_6():
    rng = random.Random(66)
    bad = 0
    for _ in range(20):
        n = rng.randint(3, 15)
        cfg = general_position_config(rng, [1] * n)
        x = generic_query(rng, cfg)
        b = csd(x, cfg)
        if b.colourful != b.total_mono or b.total_mono != csd_bruteforce(x, cfg):
            bad += 1
    for _ in range(20):
        k = rng.randint(3, 6)
        sizes = [0] * k
        sizes[rng.randrange(k)] = rng.randint(3, 15)
        cfg = general_position_config(rng, sizes)
        x = generic_query(rng, cfg)
        if csd(x, cfg).colourful != 0:
            bad += 1
    return bad == 0, f"{40 - bad}/40 instances at the limits"


def criterion_7():
    rng = random.Random(77)
    bad = 0
    for _ in range(50):
        k = rng.randint(3, 6)
        cfg = general_position_config(rng, random_sizes(rng, k, rng.randint(k, 20)), distinct_x=False)
        x = generic_query(rng, cfg)
        before = csd(x, cfg).colourful
        moved = []
        for cls in cfg.classes:
            row = []
            for p in cls:
                t = Fraction(rng.randint(1, 10**4), rng.randint(1, 10**4))
                row.append(Point(x.x + t * (p.x - x.x), x.y + t * (p.y - x.y)))
            moved.append(tuple(row))
        perm = list(range(k))
        rng.shuffle(perm)
        after = csd(x, ColourConfiguration(tuple(moved)).relabel(perm)).colourful
        if before != after:
            bad += 1
    return bad == 0, f"{50 - bad}/50 instances unchanged under radial moves and relabelling"


def criterion_8(target=100):
    rng = random.Random(88)
    pairs = []
    while len(pairs) < target:
        k = rng.randint(3, 4)
        cfg = general_position_config(rng, random_sizes(rng, k, rng.randint(k + 2, 10)), radius=30)
        segs = side_counts(cfg)
        last = {}

        def watch(kind, v, d, lines):
            if kind is not VertexKind.INTERIOR:
                return
            for t in lines:
                if t in last:
                    p, sj = last[t]
                    sk = next(u for u in lines if u != t)
                    pairs.append((cfg, p, _pt(v), segs[sj], segs[sk]))
            for t in lines:
                last[t] = (_pt(v), next(u for u in lines if u != t))

        sweep_median(cfg, observer=watch)
    bad = 0
    for cfg, p, v, sj, sk in pairs[:target]:
        if update_depth_across_vertex(csd_bruteforce(p, cfg), p, v, sj, sk) != csd_bruteforce(v, cfg):
            bad += 1
    return bad == 0, f"{target - bad}/{target} adjacent interior pairs reproduce the brute-force depth"


def _csd_ops(n):
    x, cfg = _csd_case(n, 5, 9)
    c = OpCounter()
    csd_sorted(x, cfg, c)
    return c.ops


def _sweep_ops(n):
    c = OpCounter()
    sweep_median(_median_case(n, 3, 9), counter=c, perturb=9)
    return c.ops


def criterion_9():
    a, b = _csd_ops(2000), _csd_ops(4000)
    s1, s2 = _sweep_ops(60), _sweep_ops(120)
    r1, r2 = b / a, s2 / s1
    ok = 1.8 <= r1 <= 2.6 and r2 <= 24
    return ok, f"csd ops {a} -> {b} (x{r1:.2f}); median ops {s1} -> {s2} (x{r2:.2f})"


def _peak(fn):
    # warm up once so one-time allocations (imports, caches) are not charged to the run,
    # then start from a clean heap so leftover cyclic garbage cannot be freed mid-run
    fn()
    gc.collect()
    tracemalloc.start()
    try:
        tracemalloc.reset_peak()
        base = tracemalloc.get_traced_memory()[0]
        fn()
        return tracemalloc.get_traced_memory()[1] - base
    finally:
        tracemalloc.stop()


def criterion_10():
    cases = {n: _csd_case(n, 5, 10) for n in (2000, 4000)}
    m1, m2 = (_peak(lambda n=n: csd_sorted(*cases[n])) for n in (2000, 4000))
    meds = {n: _median_case(n, 3, 10) for n in (40, 80)}
    w1, w2 = (_peak(lambda n=n: sweep_median(meds[n], perturb=10)) for n in (40, 80))
    ok = m2 / m1 <= 2.5 and w2 / w1 <= 5
    return ok, (f"csd peak {m1} -> {m2} bytes (x{m2 / m1:.2f}); "
                f"median peak {w1} -> {w2} bytes (x{w2 / w1:.2f})")


def _timed(fn):
    t = time.perf_counter()
    fn()
    return time.perf_counter() - t


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 11)}


def _line(i, ok, detail):
    return f"criterion {i:2d} {'PASS' if ok else 'FAIL'}: {detail}"


# ---------------------------------------------------------------- pytest


@pytest.mark.parametrize("i", [1, 3, 4, 5, 6, 7, 8])
def test_criterion(i, acceptance_log):
    ok, detail = CRITERIA[i]()
    line = _line(i, ok, detail)
    acceptance_log(line)
    print(line)
    assert ok, line


def test_criterion_2(acceptance_log):
    res, ref, at6, data6, elapsed = fig4_facts()
    # facts derived from the vertex-enumeration oracle
    assert res.depth == ref.value == 8
    assert set(res.witnesses) == set(ref.witnesses) == {Point(16, 20)}
    assert len(at6) == 3
    assert data6 == {Point(8, 8), Point(4, 24), Point(32, 24), Point(24, 12)}
    assert elapsed < 1.0
    ok, detail = criterion_2()
    line = _line(2, ok, detail)
    acceptance_log(line)
    print(line)
    if not ok:
        pytest.xfail("the fixture's maximum depth is 8, not 6; see the README")


@pytest.mark.slow
@pytest.mark.parametrize("i", [9, 10])
def test_scaling_criterion(i, acceptance_log):
    ok, detail = CRITERIA[i]()
    line = _line(i, ok, detail)
    acceptance_log(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for i, check in CRITERIA.items():
        ok, detail = check()
        failed += not ok
        print(_line(i, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
