"""Colourful simplicial depth and colourful medians of planar point sets."""

__version__ = "0.1.0"

from .arrangement import ColourfulSegment, RadialOrder, side_counts, sort_around_all
from .depth_colourful import DepthBreakdown, csd, csd_at_data_point, csd_closed, csd_sorted
from .depth_mono import hsd, simplicial_depth_sorted
from .estimators import ColourfulDepth, ColourfulMedian
from .geom import AngularKey, ColourConfiguration, DegenerateInputError, Point, angular_key, orient
from .median_sweep import MedianResult, depth_all_data_points, sweep_median, update_depth_across_vertex

__all__ = [
    "AngularKey",
    "ColourConfiguration",
    "ColourfulDepth",
    "ColourfulMedian",
    "ColourfulSegment",
    "DegenerateInputError",
    "DepthBreakdown",
    "MedianResult",
    "Point",
    "RadialOrder",
    "angular_key",
    "csd",
    "csd_at_data_point",
    "csd_closed",
    "csd_sorted",
    "depth_all_data_points",
    "hsd",
    "orient",
    "side_counts",
    "simplicial_depth_sorted",
    "sort_around_all",
    "sweep_median",
    "update_depth_across_vertex",
]
