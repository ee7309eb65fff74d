"""Point files: one ``colour x y`` record per line.

Colours are 1-based and must cover ``1..k`` without gaps.  Coordinates are
integers, exact decimals (``-3.5``, ``1e-3``) or rationals (``7/3``); they
are read into ``Fraction`` without passing through binary floating point.
``#`` starts a comment.  Files written here begin with a versioned header.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .geom import ColourConfiguration, DegenerateInputError, Point, exact

FORMAT_VERSION = 1
HEADER = f"# colourful-depth points v{FORMAT_VERSION}"
_HEADER_RE = re.compile(r"#\s*colourful-depth points v(\d+)\s*$")
_NUMBER_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$|[+-]?\d+/\d+$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class ConfigFile:
    config: ColourConfiguration
    lines: dict  # point -> 1-based line number


def parse_scalar(text: str):
    """Exact value of a decimal or ``p/q`` token; ``ValueError`` otherwise."""
    t = text.strip()
    if not _NUMBER_RE.match(t):
        raise ValueError(f"not an exact number: {text!r}")
    f = Fraction(t)
    return f.numerator if f.denominator == 1 else f


def format_scalar(v) -> str:
    v = exact(v)
    if isinstance(v, int):
        return str(v)
    return f"{v.numerator}/{v.denominator}"


def _tokens(line: str):
    for m in re.finditer(r"\S+", line):
        yield m.group(), m.start() + 1


def parse_config(text: str, source: str = "<input>") -> ConfigFile:
    records = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        hm = _HEADER_RE.match(raw.strip())
        if hm and int(hm.group(1)) != FORMAT_VERSION:
            raise ParseError(f"unsupported format version {hm.group(1)}", lineno, 1, source)
        line = raw.split("#", 1)[0]
        toks = list(_tokens(line))
        if not toks:
            continue
        if len(toks) != 3:
            col = toks[3][1] if len(toks) > 3 else len(line.rstrip()) + 1
            raise ParseError(f"expected 'colour x y', got {len(toks)} field(s)", lineno, col, source)
        (ctext, ccol), (xtext, xcol), (ytext, ycol) = toks
        if not re.fullmatch(r"\d+", ctext) or int(ctext) < 1:
            raise ParseError(f"colour must be a positive integer, got {ctext!r}", lineno, ccol, source)
        try:
            x = parse_scalar(xtext)
        except ValueError as err:
            raise ParseError(str(err), lineno, xcol, source) from None
        try:
            y = parse_scalar(ytext)
        except ValueError as err:
            raise ParseError(str(err), lineno, ycol, source) from None
        p = Point(x, y)
        if p in seen:
            raise DegenerateInputError(
                f"{source}: duplicate point ({format_scalar(x)}, {format_scalar(y)}) on lines {seen[p]} and {lineno}",
                [p],
            )
        seen[p] = lineno
        records.append((int(ctext), p))

    if not records:
        raise ParseError("no points", 1, 1, source)
    colours = sorted({c for c, _ in records})
    k = colours[-1]
    missing = sorted(set(range(1, k + 1)) - set(colours))
    if missing:
        raise ParseError(f"colours must be 1..{k}; missing {', '.join(map(str, missing))}", 1, 1, source)
    if k < 3:
        raise ParseError(f"need at least 3 colours, got {k}", 1, 1, source)
    config = ColourConfiguration.from_points([p for _, p in records], [c - 1 for c, _ in records], k)
    return ConfigFile(config, seen)


def read_config(path: str) -> ConfigFile:
    if path == "-":
        import sys

        return parse_config(sys.stdin.read(), "<stdin>")
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), path)


def format_config(config: ColourConfiguration, comment: str | None = None) -> str:
    out = [HEADER]
    if comment:
        out.append(f"# {comment}")
    for c, _, p in config.points():
        out.append(f"{c + 1} {format_scalar(p.x)} {format_scalar(p.y)}")
    return "\n".join(out) + "\n"
