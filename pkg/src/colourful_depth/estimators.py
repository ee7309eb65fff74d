"""scikit-learn style front end.

``fit(X, y)`` takes points and their colour labels.  ``ColourfulDepth``
then scores query points; ``ColourfulMedian`` finds the deepest point.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_output, check_choice, check_configuration, check_point, check_points, check_seed
from .depth_colourful import csd, csd_closed, csd_sorted
from .geom import DegenerateInputError
from .median_sweep import ENGINES, sweep_median


class ColourfulDepth(TransformerMixin, BaseEstimator):
    """Colourful simplicial depth of query points with respect to a fitted coloured sample.

    Parameters
    ----------
    on_degenerate : {"raise", "closed"}
        What to do when a query is collinear with two data points or is a
        data point: raise :class:`DegenerateInputError`, or count closed
        triangles exactly anyway.
    presorted : bool
        Each colour class of the fitted sample is already in
        counter-clockwise order around every query (useful for one query).
    """

    def __init__(self, on_degenerate="raise", presorted=False):
        self.on_degenerate = on_degenerate
        self.presorted = presorted

    def fit(self, X, y):
        check_choice(self.on_degenerate, "on_degenerate", ("raise", "closed"))
        self.config_, self.classes_ = check_configuration(X, y)
        self.n_features_in_ = 2
        return self

    def _one(self, q) -> int:
        fn = csd_sorted if self.presorted else csd
        try:
            return fn(q, self.config_).colourful
        except DegenerateInputError:
            if self.on_degenerate == "raise":
                raise
        return csd_closed(q, self.config_)

    def score_samples(self, X) -> np.ndarray:
        check_is_fitted(self, "config_")
        return np.array([self._one(q) for q in check_points(X)], dtype=np.int64)

    def transform(self, X) -> np.ndarray:
        return self.score_samples(X).reshape(-1, 1)

    def breakdown(self, x):
        """Intermediate counts at one query point."""
        check_is_fitted(self, "config_")
        return csd(check_point(x), self.config_)


class ColourfulMedian(BaseEstimator):
    """Point of maximum colourful depth of a coloured sample.

    Fitted attributes: ``depth_``, ``median_`` (one exact point),
    ``witnesses_`` (object array of exact points; all encountered maximisers
    when ``all_witnesses``), ``data_depths_`` and ``stats_``.
    """

    def __init__(self, engine="xsweep", all_witnesses=False, perturb=None):
        self.engine = engine
        self.all_witnesses = all_witnesses
        self.perturb = perturb

    def fit(self, X, y):
        check_choice(self.engine, "engine", ENGINES)
        seed = check_seed(self.perturb)
        config, self.classes_ = check_configuration(X, y)
        res = sweep_median(config, engine=self.engine, all_witnesses=bool(self.all_witnesses), perturb=seed)
        self.depth_ = res.depth
        self.median_ = res.witness
        self.witnesses_ = as_output(res.witnesses)
        # data depths come back in colour-class order; report them in input order
        order = {p: d for (_, _, p), d in zip(config.points(), res.data_depths)}
        self.data_depths_ = np.array([order[p] for p in check_points(X)], dtype=np.int64)
        self.stats_ = res.stats
        self.n_features_in_ = 2
        return self
