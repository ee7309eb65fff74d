"""``colourful-depth`` command line tool.

Exit codes: 0 success, 1 usage or input error, 2 degenerate input,
3 verification mismatch.
"""
from __future__ import annotations

import argparse
import math
import os
import random
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from ._instrument import OpCounter
from .depth_colourful import csd, csd_closed, csd_sorted
from .geom import ColourConfiguration, DegenerateInputError, Point, angular_key, orient
from .io import ParseError, format_config, format_scalar, parse_scalar, read_config
from .median_sweep import ENGINES, sweep_median
from .oracle import csd_bruteforce, median_bruteforce

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_MISMATCH = 0, 1, 2, 3
WORKERS_ENV = "COLOURFUL_DEPTH_WORKERS"
BENCH_HEADER = "# colourful-depth bench v1"
SVG_VERSION = "colourful-depth svg v1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _scalar(text: str):
    try:
        return parse_scalar(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _int_list(text: str) -> list:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals or any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError(f"expected nonnegative integers, got {text!r}")
    return vals


def _fmt_point(p) -> str:
    return f"{format_scalar(p[0])} {format_scalar(p[1])}"


def resolve_workers(flag: int | None) -> int:
    if flag is not None:
        return max(1, flag)
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
    return 1


# ---------------------------------------------------------------- depth / median


def cmd_depth(args, out) -> int:
    cfg = read_config(args.file).config
    x = Point(args.x, args.y)
    if args.closed and not args.breakdown:
        print(csd_closed(x, cfg), file=out)
        return EXIT_OK
    res = (csd_sorted if args.sorted else csd)(x, cfg)
    if args.breakdown:
        print(f"D: {res.total_mono}", file=out)
        print(f"sum D*: {res.star_sum}", file=out)
        print(f"sum D(x,P^i): {res.same_colour_sum}", file=out)
        print(f"colourful: {res.colourful}", file=out)
    else:
        print(res.colourful, file=out)
    return EXIT_OK


def cmd_median(args, out) -> int:
    cfg = read_config(args.file).config
    res = sweep_median(cfg, engine=args.engine, all_witnesses=args.all, perturb=args.perturb)
    print(f"depth: {res.depth}", file=out)
    for w in res.witnesses if args.all else res.witnesses[:1]:
        print(f"at: {_fmt_point(w)}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------- generation


def _in_general_position(p, pts, xs) -> bool:
    if p in pts or p[0] in xs:
        return False
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            if orient(pts[i], pts[j], p) == 0:
                return False
    return True


def generate(sizes, distribution: str = "uniform-disc", seed: int = 0, radius: int = 1000,
             check: bool = True) -> ColourConfiguration:
    """Seeded random configuration with no three collinear points and no shared abscissa."""
    rng = random.Random(seed)
    k = len(sizes)
    if distribution == "clustered":
        centres = [(rng.uniform(-0.6, 0.6) * radius, rng.uniform(-0.6, 0.6) * radius) for _ in range(k)]
        spread = radius / 5
    pts, xs = [], set()
    classes = []
    for c, size in enumerate(sizes):
        cls = []
        while len(cls) < size:
            if distribution == "uniform-disc":
                x, y = rng.randint(-radius, radius), rng.randint(-radius, radius)
                if x * x + y * y > radius * radius:
                    continue
            elif distribution == "clustered":
                cx, cy = centres[c]
                x, y = round(rng.gauss(cx, spread)), round(rng.gauss(cy, spread))
            else:
                raise UsageError(f"unknown distribution {distribution!r}")
            p = Point(x, y)
            if check and not _in_general_position(p, pts, xs):
                continue
            if not check and (p in set(pts) or x in xs):
                continue
            pts.append(p)
            xs.add(x)
            cls.append(p)
        classes.append(tuple(cls))
    return ColourConfiguration(tuple(classes))


def cmd_gen(args, out) -> int:
    if args.sizes is not None:
        sizes = args.sizes
    elif args.n is not None and args.k is not None:
        sizes = [args.n // args.k + (1 if c < args.n % args.k else 0) for c in range(args.k)]
    else:
        raise UsageError("give --sizes, or both --n and --k")
    if args.k is not None and len(sizes) != args.k:
        raise UsageError(f"--k {args.k} does not match {len(sizes)} sizes")
    if len(sizes) < 3:
        raise UsageError("need at least 3 colours")
    cfg = generate(sizes, args.distribution, args.seed, args.radius)
    out.write(format_config(cfg, f"gen sizes={','.join(map(str, sizes))} distribution={args.distribution} "
                                 f"seed={args.seed} radius={args.radius}"))
    return EXIT_OK


# ---------------------------------------------------------------- verification


def _random_query(rng: random.Random, cfg: ColourConfiguration) -> Point:
    xs = [p.x for _, _, p in cfg.points()]
    ys = [p.y for _, _, p in cfg.points()]
    den = 1009
    return Point(Fraction(rng.randint(int(min(xs)) * den, int(max(xs)) * den + den), den),
                 Fraction(rng.randint(int(min(ys)) * den, int(max(ys)) * den + den), den))


def _fast_depth(x, cfg) -> int:
    try:
        return csd(x, cfg).colourful
    except DegenerateInputError:
        return csd_closed(x, cfg)


def _depth_mismatch(cfg, x) -> bool:
    return _fast_depth(x, cfg) != csd_bruteforce(x, cfg)


def _median_mismatch(cfg, perturb: int) -> bool | None:
    try:
        res = sweep_median(cfg, perturb=None)
    except DegenerateInputError:
        try:
            res = sweep_median(cfg, perturb=perturb)
        except DegenerateInputError:
            return None
    ref = median_bruteforce(cfg)
    return res.depth != ref.value or csd_bruteforce(res.witness, cfg) != ref.value


def _shrink(cfg: ColourConfiguration, still_fails) -> ColourConfiguration:
    """Greedily drop points while the failure persists."""
    changed = True
    while changed:
        changed = False
        for c in range(cfg.k):
            for j in reversed(range(len(cfg.classes[c]))):
                if len(cfg.classes[c]) == 1:
                    break  # keep every colour so the reproducer parses back
                smaller = cfg.without(c, j)
                try:
                    if still_fails(smaller):
                        cfg = smaller
                        changed = True
                except DegenerateInputError:
                    pass
    return cfg


def _verify_instance(task):
    """One fuzz instance; returns ``(index, report or None, skipped_median)``."""
    index, cfg, seed, queries, check_median = task
    rng = random.Random(seed)
    for _ in range(queries):
        x = _random_query(rng, cfg)
        if _depth_mismatch(cfg, x):
            small = _shrink(cfg, lambda c: _depth_mismatch(c, x))
            return index, ("depth", small, x, _fast_depth(x, small), csd_bruteforce(x, small)), False
    if check_median:
        bad = _median_mismatch(cfg, seed)
        if bad is None:
            return index, None, True
        if bad:
            small = _shrink(cfg, lambda c: bool(_median_mismatch(c, seed)))
            return index, ("median", small, None, None, None), False
    return index, None, False


def _fuzz_tasks(args) -> list:
    rng = random.Random(args.seed)
    tasks = []
    for i in range(args.instances):
        k = rng.randint(3, args.kmax)
        n = rng.randint(k, max(k, args.max_n))
        sizes = [1] * k
        for _ in range(n - k):
            sizes[rng.randrange(k)] += 1
        cfg = generate(sizes, "uniform-disc", rng.randrange(2 ** 31), radius=50, check=False)
        tasks.append((i, cfg, rng.randrange(2 ** 31), args.queries, n <= args.median_max_n))
    return tasks


def cmd_verify(args, out) -> int:
    if args.file:
        cfg = read_config(args.file).config
        tasks = [(0, cfg, args.seed, args.queries, cfg.n <= args.median_max_n)]
    else:
        tasks = _fuzz_tasks(args)
    workers = resolve_workers(args.workers)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_verify_instance, tasks))
    else:
        results = [_verify_instance(t) for t in tasks]
    results.sort(key=lambda r: r[0])
    skipped = sum(1 for r in results if r[2])
    failures = [r for r in results if r[1] is not None]
    if not failures:
        print(f"PASS {len(results)} instance(s), {skipped} median check(s) skipped as degenerate", file=out)
        return EXIT_OK
    index, (kind, small, x, fast, ref), _ = failures[0]
    print(f"FAIL {len(failures)} of {len(results)} instance(s); first at instance {index} ({kind})", file=out)
    if kind == "depth":
        print(f"query: {_fmt_point(x)}  fast: {fast}  brute force: {ref}", file=out)
    print("minimized reproducer:", file=out)
    out.write(format_config(small))
    return EXIT_MISMATCH


# ---------------------------------------------------------------- benchmark


def _csd_case(n: int, k: int, seed: int):
    """Configuration sorted counter-clockwise around the origin in each class."""
    rng = random.Random(seed)
    origin = Point(0, 0)
    seen = set()
    classes = [[] for _ in range(k)]
    while len(seen) < n:
        p = Point(rng.randint(-10 ** 9, 10 ** 9), rng.randint(-10 ** 9, 10 ** 9))
        if p in seen or p == origin:
            continue
        seen.add(p)
        classes[len(seen) % k].append(p)
    classes = [tuple(sorted(cls, key=lambda p: angular_key(origin, p))) for cls in classes]
    return origin, ColourConfiguration(tuple(classes))


def _median_case(n: int, k: int, seed: int):
    sizes = [n // k + (1 if c < n % k else 0) for c in range(k)]
    return generate(sizes, "uniform-disc", seed, radius=10 ** 6, check=False)


def bench_row(engine: str, n: int, k: int, seed: int):
    counter = OpCounter()
    if engine == "csd":
        x, cfg = _csd_case(n, k, seed)
        t = time.perf_counter()
        csd_sorted(x, cfg, counter)
    else:
        cfg = _median_case(n, k, seed)
        t = time.perf_counter()
        sweep_median(cfg, engine=engine, counter=counter, perturb=seed)
    return n, k, engine, time.perf_counter() - t, counter.ops


def _slope(rows, column: int) -> float:
    xs = [math.log(r[0]) for r in rows]
    ys = [math.log(max(r[column], 1e-12)) for r in rows]
    if len(set(xs)) < 2:
        return float("nan")
    return statistics.linear_regression(xs, ys).slope


def cmd_bench(args, out) -> int:
    jobs = [("csd", n, args.k) for n in args.sizes]
    for engine in args.engines:
        jobs += [(engine, n, args.median_k) for n in args.median_sizes]
    workers = resolve_workers(args.workers)
    call = [(e, n, k, args.seed) for e, n, k in jobs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(bench_row, *zip(*call)))
    else:
        rows = [bench_row(*c) for c in call]
    print(BENCH_HEADER, file=out)
    print("n,k,engine,seconds,ops", file=out)
    for n, k, engine, secs, ops in rows:
        print(f"{n},{k},{engine},{secs:.6f},{ops}", file=out)
    for engine in ["csd"] + list(args.engines):
        sub = [r for r in rows if r[2] == engine]
        if len(sub) >= 2:
            print(f"# slope {engine}: ops {_slope(sub, 4):.3f} seconds {_slope(sub, 3):.3f}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------- plot

_PALETTE = ("#d62728", "#2ca02c", "#1f77b4", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")


def _marker(shape: int, x: float, y: float, r: float, fill: str) -> str:
    s = shape % 3
    if s == 0:
        return f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="{fill}" stroke="black"/>'
    if s == 1:
        return (f'<rect x="{x - r:.2f}" y="{y - r:.2f}" width="{2 * r:.2f}" height="{2 * r:.2f}" '
                f'fill="{fill}" stroke="black"/>')
    pts = f"{x:.2f},{y - r * 1.3:.2f} {x + r * 1.3:.2f},{y:.2f} {x:.2f},{y + r * 1.3:.2f} {x - r * 1.3:.2f},{y:.2f}"
    return f'<polygon points="{pts}" fill="{fill}" stroke="black"/>'


def render_svg(cfg: ColourConfiguration, witnesses=(), query=None, segments: bool = False,
               size: int = 480) -> str:
    pts = [p for _, _, p in cfg.points()] + list(witnesses) + ([query] if query is not None else [])
    xs = [float(p[0]) for p in pts]
    ys = [float(p[1]) for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    pad = 0.08 * span
    scale = (size - 2) / (span + 2 * pad)
    x0, y1 = min(xs) - pad, max(ys) + pad

    def tx(p):
        return (float(p[0]) - x0) * scale + 1, (y1 - float(p[1])) * scale + 1

    r = size / 80
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f"<!-- {SVG_VERSION} -->",
           f'<rect width="{size}" height="{size}" fill="white"/>']
    if segments:
        for ci in range(cfg.k):
            for cj in range(ci + 1, cfg.k):
                for a in cfg.classes[ci]:
                    for b in cfg.classes[cj]:
                        (ax, ay), (bx, by) = tx(a), tx(b)
                        out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
                                   f'stroke="#bbbbbb" stroke-width="0.6"/>')
    for c, _, p in cfg.points():
        px, py = tx(p)
        out.append(_marker(c, px, py, r, _PALETTE[c % len(_PALETTE)]))
    if query is not None:
        qx, qy = tx(query)
        out.append(f'<circle cx="{qx:.2f}" cy="{qy:.2f}" r="{r / 2:.2f}" fill="black"/>')
        out.append(f'<text x="{qx + r:.2f}" y="{qy - r:.2f}" font-size="{2 * r:.0f}">x</text>')
    for w in witnesses:
        wx, wy = tx(w)
        d = r * 1.2
        out.append(f'<path d="M{wx - d:.2f},{wy - d:.2f}L{wx + d:.2f},{wy + d:.2f}M{wx - d:.2f},{wy + d:.2f}'
                   f'L{wx + d:.2f},{wy - d:.2f}" stroke="black" stroke-width="1.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_plot(args, out) -> int:
    cfg = read_config(args.file).config
    witnesses = ()
    if args.median:
        witnesses = sweep_median(cfg, all_witnesses=True, perturb=args.perturb).witnesses
    query = Point(*args.query) if args.query else None
    svg = render_svg(cfg, witnesses, query, args.segments)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        out.write(svg)
    return EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="colourful-depth", description="Colourful simplicial depth and medians in the plane.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("depth", help="colourful depth of a query point")
    d.add_argument("file", help="point file ('-' for stdin)")
    d.add_argument("x", type=_scalar)
    d.add_argument("y", type=_scalar)
    d.add_argument("--breakdown", action="store_true", help="also print the intermediate counts")
    d.add_argument("--sorted", action="store_true", help="classes are sorted counter-clockwise around the query")
    d.add_argument("--closed", action="store_true", help="count closed triangles exactly at degenerate queries")
    d.set_defaults(func=cmd_depth)

    m = sub.add_parser("median", help="deepest point of the configuration")
    m.add_argument("file")
    m.add_argument("--all", action="store_true", help="print every maximiser met by the sweep")
    m.add_argument("--engine", choices=ENGINES, default="xsweep")
    m.add_argument("--perturb", type=int, metavar="SEED", help="shear seed to remove vertical segment lines")
    m.set_defaults(func=cmd_median)

    g = sub.add_parser("gen", help="random configuration in general position")
    g.add_argument("--sizes", type=_int_list, help="class sizes, e.g. 3,3,2")
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--distribution", choices=("uniform-disc", "clustered"), default="uniform-disc")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--radius", type=int, default=1000)
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="compare fast paths with brute force")
    v.add_argument("file", nargs="?", help="point file; fuzz random instances when omitted")
    v.add_argument("--instances", type=int, default=200)
    v.add_argument("--max-n", type=int, default=20)
    v.add_argument("--kmax", type=int, default=6)
    v.add_argument("--queries", type=int, default=3, help="random query points per instance")
    v.add_argument("--median-max-n", type=int, default=12, help="check medians on instances up to this size")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, help=f"worker processes (default: ${WORKERS_ENV} or 1)")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="operation-count and timing table")
    b.add_argument("--sizes", type=_int_list, default=[500, 1000, 2000, 4000], help="csd sizes")
    b.add_argument("--k", type=int, default=5)
    b.add_argument("--median-sizes", type=_int_list, default=[15, 30, 60])
    b.add_argument("--median-k", type=int, default=3)
    b.add_argument("--engines", type=lambda s: s.split(","), default=list(ENGINES))
    b.add_argument("--seed", type=int, default=1)
    b.add_argument("--workers", type=int)
    b.set_defaults(func=cmd_bench)

    pl = sub.add_parser("plot", help="SVG drawing of a configuration")
    pl.add_argument("file")
    pl.add_argument("--median", action="store_true", help="mark the median witnesses")
    pl.add_argument("--segments", action="store_true", help="draw the colourful segments")
    pl.add_argument("--query", nargs=2, type=_scalar, metavar=("X", "Y"))
    pl.add_argument("--perturb", type=int, metavar="SEED")
    pl.add_argument("-o", "--output")
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "engines", None):
        bad = [e for e in args.engines if e not in ENGINES]
        if bad:
            parser.error(f"unknown engine(s): {', '.join(bad)}")
    try:
        return args.func(args, out)
    except DegenerateInputError as err:
        print(f"degenerate input: {err}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ParseError, UsageError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
