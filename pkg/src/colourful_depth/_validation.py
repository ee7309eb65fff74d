"""Input checks for the estimator layer.

Coordinates stay exact: integers, fractions and decimal strings are taken
as they are, and binary floats are converted to the rational they encode.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Integral

import numpy as np

from .geom import ColourConfiguration, Point, exact


def check_points(X, name: str = "X") -> list:
    """Return ``X`` as a list of :class:`Point`, rejecting anything that is not ``(n, 2)``."""
    if isinstance(X, np.ndarray):
        if X.ndim != 2 or X.shape[1] != 2:
            raise ValueError(f"{name} must have shape (n_samples, 2), got {X.shape}")
        rows = X.tolist()
    else:
        rows = list(X)
    out = []
    for i, row in enumerate(rows):
        try:
            x, y = row
        except (TypeError, ValueError):
            raise ValueError(f"{name}[{i}] is not a coordinate pair: {row!r}") from None
        try:
            out.append(Point(exact(x), exact(y)))
        except (TypeError, ValueError, ZeroDivisionError) as err:
            raise ValueError(f"{name}[{i}] has a non-exact coordinate: {err}") from None
    return out


def check_point(x, name: str = "x") -> Point:
    pts = check_points([x], name)
    return pts[0]


def encode_labels(y, n_samples: int):
    """Map labels to ``0..k-1`` in sorted label order; returns ``(codes, classes)``."""
    labels = list(y.tolist() if isinstance(y, np.ndarray) else y)
    if len(labels) != n_samples:
        raise ValueError(f"y has {len(labels)} labels for {n_samples} points")
    try:
        classes = sorted(set(labels))
    except TypeError:
        raise ValueError("colour labels must be mutually comparable") from None
    index = {c: i for i, c in enumerate(classes)}
    return [index[c] for c in labels], classes


def check_configuration(X, y, min_colours: int = 3) -> tuple:
    """Validate points and colour labels; return ``(config, classes)``."""
    pts = check_points(X)
    codes, classes = encode_labels(y, len(pts))
    if len(classes) < min_colours:
        raise ValueError(f"need at least {min_colours} colours, got {len(classes)}")
    return ColourConfiguration.from_points(pts, codes, len(classes)), classes


def check_choice(value, name: str, choices) -> None:
    if value not in choices:
        opts = ", ".join(repr(c) for c in choices)
        raise ValueError(f"{name}={value!r} is not one of {opts}")


def check_seed(value, name: str = "perturb"):
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise ValueError(f"{name} must be an integer seed or None, got {value!r}")
    return int(value)


def as_output(points) -> np.ndarray:
    """Exact points as an object array of :class:`Fraction` pairs."""
    arr = np.empty((len(points), 2), dtype=object)
    for i, p in enumerate(points):
        arr[i, 0] = Fraction(p[0])
        arr[i, 1] = Fraction(p[1])
    return arr
