"""Colourful median by sweeping the arrangement of colourful segment lines.

A point of maximum colourful depth is a data point or a crossing of two
colourful segments.  Data points are evaluated first, each in O(kn) from its
precomputed radial order.  The lines supporting the segments are then swept
left to right.  Along each segment the depth changes only where another
segment crosses it, so the depth at a crossing follows from the depth at the
previous crossing on the same segment and the side counts of the segments
through both points.  Only the first crossing seen on a pair of fresh
segments needs a full depth evaluation.

Two engines share the vertex processing: ``"xsweep"`` visits vertices in
order of exact abscissa with a priority queue, ``"topsweep"`` advances a
topological line with upper and lower horizon trees.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

from ._instrument import NULL, OpCounter
from .arrangement import ColourfulSegment, RadialOrder, side_counts, sort_around_all
from .depth_colourful import (
    csd_closed,
    csd_from_angles,
    sorted_colour_angles_presorted,
    vertex_pair_count,
)
from .geom import ColourConfiguration, DegenerateInputError, Point, as_point, orient

ENGINES = ("xsweep", "topsweep")


class VertexKind(str, Enum):
    INTERIOR = "interior"
    PHANTOM = "phantom"
    DATA_POINT = "data_point"


@dataclass(frozen=True)
class SweepVertex:
    """Crossing of the lines of two colourful segments."""

    location: Point
    seg_a: ColourfulSegment
    seg_b: ColourfulSegment

    @property
    def interior_flags(self) -> tuple:
        return (_strictly_inside(self.seg_a, self.location), _strictly_inside(self.seg_b, self.location))


def _strictly_inside(seg: ColourfulSegment, v) -> bool:
    a, b = seg.tail, seg.head
    if orient(a, b, v) != 0:
        return False
    return (a.x - v[0]) * (b.x - v[0]) + (a.y - v[1]) * (b.y - v[1]) < 0


def classify_vertex(v: SweepVertex) -> VertexKind:
    ends = {v.seg_a.tail, v.seg_a.head} & {v.seg_b.tail, v.seg_b.head}
    if v.location in ends:
        return VertexKind.DATA_POINT
    if all(v.interior_flags):
        return VertexKind.INTERIOR
    return VertexKind.PHANTOM


def update_depth_across_vertex(depth_p: int, p, v, s_j: ColourfulSegment, s_k: ColourfulSegment) -> int:
    """Depth at ``v`` from the depth at the previous crossing ``p`` on the same segment.

    ``p`` is where the walked segment crosses ``s_j``; ``v`` is where it
    crosses ``s_k``.  Leaving ``p`` drops the triangles with an edge on
    ``s_j`` whose apex is on the side away from ``v``; reaching ``v`` adds
    those with an edge on ``s_k`` whose apex is away from ``p``.
    """
    p, v = as_point(p), as_point(v)
    if not _strictly_inside(s_j, p):
        raise ValueError(f"{p} is not interior to segment {s_j.id}")
    if not _strictly_inside(s_k, v):
        raise ValueError(f"{v} is not interior to segment {s_k.id}")
    return depth_p - s_j.opposite_count(orient(s_j.tail, s_j.head, v)) + s_k.opposite_count(
        orient(s_k.tail, s_k.head, p)
    )


def depth_all_data_points(config: ColourConfiguration, radial: RadialOrder | None = None, counter=NULL) -> list:
    """Colourful depth of every data point, in :meth:`ColourConfiguration.points` order.

    Each point's other points come presorted from ``radial``, so no query
    sorts.  Same-colour points collinear with the query fall back to the
    exact closed evaluation.
    """
    if radial is None:
        radial = sort_around_all(config, counter)
    pts = radial.points
    depths = []
    for i, (c, _, q) in enumerate(pts):
        classes = [[] for _ in range(config.k)]
        for j in radial.around(i):
            classes[pts[j][0]].append(pts[j][2])
        rest = ColourConfiguration(tuple(tuple(cls) for cls in classes))
        try:
            inner = csd_from_angles(q, rest, sorted_colour_angles_presorted(q, rest, counter), counter).colourful
        except DegenerateInputError:
            inner = csd_closed(q, rest, counter)
        depths.append(inner + vertex_pair_count(rest.sizes, c))
    return depths


@dataclass
class VerRecord:
    """Last interior vertex on a segment: exact point ``(X, Y, W)``, depth, and all segments crossing there."""

    point: tuple
    depth: int
    crossing: tuple


@dataclass
class SweepStats:
    lines: int = 0
    crossings: int = 0
    interior: int = 0
    phantom: int = 0
    data_point: int = 0
    csd_calls: int = 0
    ops: int = 0
    peak_events: int = 0


@dataclass
class SweepState:
    """Mutable state of one sweep: cut order, pending steps, per-segment records, best depth."""

    cut: list
    step_stack: list = field(default_factory=list)
    ver: list = field(default_factory=list)
    best: int = -1
    witnesses: list = field(default_factory=list)


@dataclass(frozen=True)
class MedianResult:
    depth: int
    witness: Point
    witnesses: tuple
    data_depths: tuple
    stats: SweepStats
    shear: Fraction | None = None


class _Transform:
    """Integer scaling, optionally followed by the shear ``x -> x + e*y``."""

    def __init__(self, scale: int, shear: Fraction | None = None):
        self.scale = scale
        self.shear = shear
        self.p, self.q = (shear.numerator, shear.denominator) if shear is not None else (0, 1)

    def forward(self, pt) -> Point:
        s, p, q = self.scale, self.p, self.q
        return Point(s * (q * pt[0] + p * pt[1]), s * q * pt[1])

    def backward(self, pt) -> Point:
        s, p, q = self.scale, self.p, self.q
        y = Fraction(pt[1]) / (s * q)
        x = (Fraction(pt[0]) / s - p * y) / q
        return Point(x, y)


def _denominator(v) -> int:
    return v.denominator if isinstance(v, Fraction) else 1


def _pick_shear(points: Sequence[Point], seed: int) -> Fraction:
    rng = random.Random(seed)
    pts = list(points)
    bad = set()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dy = pts[j].y - pts[i].y
            if dy:
                bad.add(Fraction(pts[i].x - pts[j].x) / dy)
    while True:
        e = Fraction(rng.randint(1, 997), 1024)
        if e not in bad:
            return e


def _prepare(config: ColourConfiguration, perturb: int | None):
    coords = [v for _, _, p in config.points() for v in p]
    scale = lcm(*(_denominator(v) for v in coords)) if coords else 1
    shear = None
    if perturb is not None:
        shear = _pick_shear([p for _, _, p in config.points()], perturb)
    tf = _Transform(scale, shear)
    work = ColourConfiguration(tuple(tuple(tf.forward(p) for p in cls) for cls in config.classes))
    return tf, work


class _Lines:
    """Segment lines ``a x + b y = c`` with ``b > 0``, plus segment extents, as flat int lists."""

    def __init__(self, segments: Sequence[ColourfulSegment], flat_of: dict):
        self.a, self.b, self.c = [], [], []
        self.xmin, self.xmax = [], []
        self.tx, self.ty, self.hx, self.hy = [], [], [], []
        self.r, self.l = [], []
        self.ends = []
        for s in segments:
            A, B = s.tail, s.head
            a, b = B.y - A.y, A.x - B.x
            if b == 0:
                raise DegenerateInputError(
                    f"segment {A} - {B} is vertical; rerun with a perturbation seed", [A, B]
                )
            if b < 0:
                a, b = -a, -b
            self.a.append(a)
            self.b.append(b)
            self.c.append(a * A.x + b * A.y)
            self.xmin.append(min(A.x, B.x))
            self.xmax.append(max(A.x, B.x))
            self.tx.append(A.x)
            self.ty.append(A.y)
            self.hx.append(B.x)
            self.hy.append(B.y)
            self.r.append(s.r)
            self.l.append(s.l)
            self.ends.append((flat_of[s.id[0], s.id[1]], flat_of[s.id[2], s.id[3]]))

    def __len__(self):
        return len(self.a)

    def initial_order(self) -> list:
        # bottom to top far to the left: decreasing slope, then increasing intercept
        a, b, c = self.a, self.b, self.c
        return sorted(range(len(a)), key=lambda t: (Fraction(a[t], b[t]), Fraction(c[t], b[t])))

    def opposite(self, t: int, X: int, Y: int, W: int) -> int:
        """Side count of line ``t`` away from the point ``(X/W, Y/W)``."""
        tx, ty = self.tx[t], self.ty[t]
        side = (self.hx[t] - tx) * (Y - ty * W) - (self.hy[t] - ty) * (X - tx * W)
        if side < 0:
            return self.l[t]
        if side > 0:
            return self.r[t]
        raise AssertionError("vertex on the line it is measured against")


def _same_point(p, q) -> bool:
    return p[0] * q[2] == q[0] * p[2] and p[1] * q[2] == q[1] * p[2]


class _VertexProcessor:
    """Depth bookkeeping shared by both engines."""

    def __init__(self, lines: _Lines, work: ColourConfiguration, state: SweepState, stats: SweepStats,
                 counter, all_witnesses: bool, skip_phantoms: bool, observer: Callable | None,
                 reject_concurrent: bool):
        self.L = lines
        self.work = work
        self.state = state
        self.stats = stats
        self.counter = counter
        self.all_witnesses = all_witnesses
        self.skip_phantoms = skip_phantoms
        self.observer = observer
        self.reject_concurrent = reject_concurrent
        state.ver = [None] * len(lines)

    def _offer(self, depth: int, X: int, Y: int, W: int):
        st = self.state
        if depth > st.best:
            st.best = depth
            st.witnesses = [(X, Y, W)]
        elif depth == st.best and self.all_witnesses:
            st.witnesses.append((X, Y, W))

    def _closed(self, X, Y, W) -> int:
        self.stats.csd_calls += 1
        return csd_closed(Point(Fraction(X, W), Fraction(Y, W)), self.work, self.counter)

    def visit(self, block: Sequence[int], X: int, Y: int, W: int):
        """All lines in ``block`` pass through ``(X/W, Y/W)``."""
        L, stats = self.L, self.stats
        t0 = block[0]
        if (L.tx[t0] * W == X and L.ty[t0] * W == Y) or (L.hx[t0] * W == X and L.hy[t0] * W == Y):
            stats.data_point += 1
            if self.observer:
                self.observer(VertexKind.DATA_POINT, (X, Y, W), None, tuple(block))
            return
        lo, hi = L.xmin, L.xmax
        inside = [t for t in block if lo[t] * W < X < hi[t] * W]
        if len(inside) < 2:
            stats.phantom += 1
            depth = None
            if not self.skip_phantoms:
                depth = self._closed(X, Y, W)
                self._offer(depth, X, Y, W)
            if self.observer:
                self.observer(VertexKind.PHANTOM, (X, Y, W), depth, tuple(block))
            return
        stats.interior += 1
        ver = self.state.ver
        base = rec = None
        for t in inside:
            if ver[t] is not None:
                base, rec = t, ver[t]
                break
        if self.reject_concurrent:
            for t in inside:
                if ver[t] is not None and _same_point(ver[t].point, (X, Y, W)):
                    raise DegenerateInputError(
                        f"three or more segments cross at ({Fraction(X, W)}, {Fraction(Y, W)}); "
                        "use the xsweep engine"
                    )
        if rec is None:
            depth = self._closed(X, Y, W)
        else:
            depth = rec.depth
            px, py, pw = rec.point
            for u in rec.crossing:
                if u != base:
                    depth -= L.opposite(u, X, Y, W)
            for t in inside:
                if t != base:
                    depth += L.opposite(t, px, py, pw)
        new = VerRecord((X, Y, W), depth, tuple(inside))
        for t in inside:
            ver[t] = new
        self._offer(depth, X, Y, W)
        if self.observer:
            self.observer(VertexKind.INTERIOR, (X, Y, W), depth, tuple(inside))


def _xsweep(L: _Lines, proc: _VertexProcessor, stats: SweepStats) -> int:
    a, b, c = L.a, L.b, L.c
    xmin, xmax, ends = L.xmin, L.xmax, L.ends
    m = len(a)
    order = L.initial_order()
    proc.state.cut = order
    pos = [0] * m
    for i, t in enumerate(order):
        pos[t] = i
    push = heapq.heappush
    pop = heapq.heappop
    # simple phantom crossings need no callback unless someone is watching
    quiet = proc.skip_phantoms and proc.observer is None

    heap = []
    for i in range(m - 1):
        lo, hi = order[i], order[i + 1]
        # lines cross to the right iff the lower one is steeper
        w = a[hi] * b[lo] - a[lo] * b[hi]
        if w > 0:
            heap.append(((c[hi] * b[lo] - c[lo] * b[hi]) / w, lo, hi))
    heapq.heapify(heap)
    ops = 0
    peak = len(heap)
    limit = 2 * m + 64
    phantom = crossings = 0

    while heap:
        fx, lo, hi = pop(heap)
        ops += 1
        if pos[hi] != pos[lo] + 1:
            continue
        if heap and heap[0][0] == fx:
            # equal rounded abscissae: pick the exact leftmost among the distinct live pairs
            group = {(lo, hi)}
            while heap and heap[0][0] == fx:
                _, l2, h2 = pop(heap)
                ops += 1
                if pos[h2] == pos[l2] + 1:
                    group.add((l2, h2))
            if len(group) > 1:
                best = None
                for pr in group:
                    pl, ph = pr
                    xw = (c[ph] * b[pl] - c[pl] * b[ph], a[ph] * b[pl] - a[pl] * b[ph])
                    if best is None or xw[0] * best[1][1] < best[1][0] * xw[1]:
                        best = (pr, xw)
                lo, hi = best[0]
                group.discard(best[0])
                for pl, ph in group:
                    push(heap, (fx, pl, ph))
        W = a[hi] * b[lo] - a[lo] * b[hi]
        X = c[hi] * b[lo] - c[lo] * b[hi]
        Y = a[hi] * c[lo] - a[lo] * c[hi]
        i, j = pos[lo], pos[hi]
        if (i > 0 and a[order[i - 1]] * X + b[order[i - 1]] * Y == c[order[i - 1]] * W) or (
            j < m - 1 and a[order[j + 1]] * X + b[order[j + 1]] * Y == c[order[j + 1]] * W
        ):
            while i > 0:
                t = order[i - 1]
                if a[t] * X + b[t] * Y != c[t] * W:
                    break
                i -= 1
            while j < m - 1:
                t = order[j + 1]
                if a[t] * X + b[t] * Y != c[t] * W:
                    break
                j += 1
            block = order[i:j + 1]
            block.reverse()
            order[i:j + 1] = block
            for q in range(i, j + 1):
                pos[order[q]] = q
            size = j - i + 1
            crossings += size * (size - 1) // 2
            ops += 2 * size
            proc.visit(block, X, Y, W)
        else:
            order[i] = hi
            order[j] = lo
            pos[hi] = i
            pos[lo] = j
            crossings += 1
            e0, e1 = ends[lo], ends[hi]
            if (
                quiet
                and e0[0] not in e1
                and e0[1] not in e1
                and not (xmin[lo] * W < X < xmax[lo] * W and xmin[hi] * W < X < xmax[hi] * W)
            ):
                phantom += 1
            else:
                proc.visit((hi, lo), X, Y, W)
        if i > 0:
            lo2, hi2 = order[i - 1], order[i]
            w = a[hi2] * b[lo2] - a[lo2] * b[hi2]
            if w > 0:
                push(heap, ((c[hi2] * b[lo2] - c[lo2] * b[hi2]) / w, lo2, hi2))
        if j < m - 1:
            lo2, hi2 = order[j], order[j + 1]
            w = a[hi2] * b[lo2] - a[lo2] * b[hi2]
            if w > 0:
                push(heap, ((c[hi2] * b[lo2] - c[lo2] * b[hi2]) / w, lo2, hi2))
        if len(heap) > limit:
            if len(heap) > peak:
                peak = len(heap)
            # drop stale entries once they outnumber the live ones
            heap = [e for e in heap if pos[e[2]] == pos[e[1]] + 1]
            heapq.heapify(heap)
    stats.crossings += crossings
    stats.phantom += phantom
    stats.peak_events = max(stats.peak_events, peak, limit)
    return ops + crossings


def _topsweep(L: _Lines, proc: _VertexProcessor, stats: SweepStats, seed: int = 0x5EED) -> int:
    a, b, c = L.a, L.b, L.c
    m = len(a)
    rng = random.Random(seed)
    # symbolic upward shifts, one per line, separate concurrent crossings
    delta = [rng.getrandbits(48) for _ in range(m)]
    E = L.initial_order()
    proc.state.cut = E
    ops = 0

    def cross(lo, hi):
        """Perturbed abscissa ``(x0, x1, w)`` where ``lo`` (now below) meets ``hi``, or None."""
        w = a[hi] * b[lo] - a[lo] * b[hi]
        if w <= 0:
            return None
        return (c[hi] * b[lo] - c[lo] * b[hi], b[lo] * b[hi] * (delta[hi] - delta[lo]), w)

    def before(p, q):
        u = p[0] * q[2] - q[0] * p[2]
        if u:
            return u < 0
        u = p[1] * q[2] - q[1] * p[2]
        if u == 0:
            raise DegenerateInputError("perturbation failed to separate two crossings")
        return u < 0

    uterm = [None] * m
    lterm = [None] * m

    def walk_up(line, k):
        nonlocal ops
        while k is not None:
            ops += 1
            x = cross(line, k)
            if x is not None:
                nxt = uterm[k]
                if nxt is None or before(x, cross(k, nxt)):
                    return k
            k = uterm[k]
        return None

    def walk_down(line, k):
        nonlocal ops
        while k is not None:
            ops += 1
            x = cross(k, line)
            if x is not None:
                nxt = lterm[k]
                if nxt is None or before(x, cross(nxt, k)):
                    return k
            k = lterm[k]
        return None

    for i in range(m - 2, -1, -1):
        uterm[E[i]] = walk_up(E[i], E[i + 1])
    for i in range(1, m):
        lterm[E[i]] = walk_down(E[i], E[i - 1])

    def ready(i):
        return 0 <= i < m - 1 and uterm[E[i]] == E[i + 1] and lterm[E[i + 1]] == E[i]

    stack = [i for i in range(m - 1) if ready(i)]
    proc.state.step_stack = stack
    peak = len(stack)
    while stack:
        i = stack.pop()
        if not ready(i):
            continue
        lo, hi = E[i], E[i + 1]
        W = a[hi] * b[lo] - a[lo] * b[hi]
        X = c[hi] * b[lo] - c[lo] * b[hi]
        Y = a[hi] * c[lo] - a[lo] * c[hi]
        E[i], E[i + 1] = hi, lo
        stats.crossings += 1
        ops += 1
        proc.visit((lo, hi), X, Y, W)
        uterm[lo] = walk_up(lo, E[i + 2] if i + 2 < m else None)
        lterm[hi] = walk_down(hi, E[i - 1] if i >= 1 else None)
        if ready(i - 1):
            stack.append(i - 1)
        if ready(i + 1):
            stack.append(i + 1)
        if len(stack) > peak:
            peak = len(stack)
    stats.peak_events = peak
    return ops


def sweep_median(
    config: ColourConfiguration,
    engine: str = "xsweep",
    all_witnesses: bool = False,
    perturb: int | None = None,
    skip_phantoms: bool = True,
    observer: Callable | None = None,
    counter: OpCounter | None = None,
) -> MedianResult:
    """Maximum colourful depth over the plane and a point (or points) attaining it.

    ``perturb`` is a seed for a shear that removes vertical segment lines;
    results are mapped back to the input coordinates.  ``observer`` is
    called at every vertex with ``(kind, (X, Y, W), depth, lines)`` in the
    working (scaled, sheared) coordinates.
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")
    counter = counter if counter is not None else OpCounter()
    tf, work = _prepare(config, perturb)
    radial = sort_around_all(work, counter)
    segments = side_counts(work, radial, counter)
    flat_of = {(cc, j): f for f, (cc, j, _) in enumerate(radial.points)}
    lines = _Lines(segments, flat_of)

    stats = SweepStats(lines=len(lines))
    data_depths = depth_all_data_points(work, radial, counter)
    state = SweepState(cut=[])
    for (_, _, p), d in zip(radial.points, data_depths):
        if d > state.best:
            state.best, state.witnesses = d, [(p.x, p.y, 1)]
        elif d == state.best and all_witnesses:
            state.witnesses.append((p.x, p.y, 1))

    proc = _VertexProcessor(lines, work, state, stats, counter, all_witnesses, skip_phantoms, observer,
                            reject_concurrent=engine == "topsweep")
    if len(lines) > 1:
        ops = _xsweep(lines, proc, stats) if engine == "xsweep" else _topsweep(lines, proc, stats)
        counter.add(ops)
    stats.ops = counter.ops

    witnesses = tuple(tf.backward((Fraction(X, W), Fraction(Y, W))) for X, Y, W in state.witnesses)
    back_depths = tuple(data_depths)
    return MedianResult(max(state.best, 0), witnesses[0] if witnesses else None, witnesses, back_depths, stats,
                        tf.shear)
