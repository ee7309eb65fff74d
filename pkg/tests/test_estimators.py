from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from colourful_depth import ColourfulDepth, ColourfulMedian, DegenerateInputError
from colourful_depth.oracle import csd_bruteforce

from helpers import FIG1, FIG4


def _xy(cfg, labels=None):
    X, y = [], []
    for c, _, p in cfg.points():
        X.append((p.x, p.y))
        y.append(labels[c] if labels else c)
    return X, y


def test_depth_scores_fig1():
    X, y = _xy(FIG1, ["red", "green", "blue"])
    est = ColourfulDepth().fit(X, y)
    assert est.classes_ == ["blue", "green", "red"]
    assert est.score_samples([(0, 0)]).tolist() == [6]
    assert est.transform([(0, 0), (100, 100)]).shape == (2, 1)
    b = est.breakdown((0, 0))
    assert (b.total_mono, b.colourful) == (20, 6)


def test_numpy_input():
    X, y = _xy(FIG4)
    est = ColourfulDepth().fit(np.array(X, dtype=float), np.array(y))
    assert est.score_samples(np.array([[16.5, 20.25]])).tolist() == [csd_bruteforce((Fraction(33, 2), Fraction(81, 4)), FIG4)]


def test_degenerate_policy():
    X, y = _xy(FIG4)
    with pytest.raises(DegenerateInputError):
        ColourfulDepth().fit(X, y).score_samples([(16, 20)])
    closed = ColourfulDepth(on_degenerate="closed").fit(X, y)
    assert closed.score_samples([(16, 20)]).tolist() == [8]


def test_validation_errors():
    with pytest.raises(ValueError, match="shape"):
        ColourfulDepth().fit(np.zeros((3, 3)), [0, 1, 2])
    with pytest.raises(ValueError, match="labels"):
        ColourfulDepth().fit([(0, 0), (1, 1)], [0])
    with pytest.raises(ValueError, match="at least 3"):
        ColourfulDepth().fit([(0, 0), (1, 1)], [0, 1])
    with pytest.raises(ValueError, match="non-exact"):
        ColourfulDepth().fit([(0, float("nan")), (1, 1), (2, 0)], [0, 1, 2])
    with pytest.raises(ValueError, match="on_degenerate"):
        ColourfulDepth(on_degenerate="ignore").fit([(0, 0), (1, 1), (2, 0)], [0, 1, 2])
    with pytest.raises(ValueError, match="engine"):
        ColourfulMedian(engine="fast").fit([(0, 0), (1, 1), (2, 0)], [0, 1, 2])
    with pytest.raises(ValueError, match="perturb"):
        ColourfulMedian(perturb=1.5).fit([(0, 0), (1, 1), (2, 0)], [0, 1, 2])


def test_not_fitted():
    with pytest.raises(NotFittedError):
        ColourfulDepth().score_samples([(0, 0)])


def test_params_and_clone():
    est = ColourfulMedian(engine="topsweep", all_witnesses=True, perturb=3)
    assert est.get_params() == {"engine": "topsweep", "all_witnesses": True, "perturb": 3}
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est
    assert clone(ColourfulDepth(presorted=True)).presorted is True


def test_median_fig4():
    X, y = _xy(FIG4)
    est = ColourfulMedian(all_witnesses=True).fit(X[::-1], y[::-1])
    assert est.depth_ == 8
    assert est.median_ == (16, 20)
    assert est.witnesses_.dtype == object and est.witnesses_.shape == (1, 2)
    assert est.data_depths_.tolist() == [6, 6, 8, 6, 6, 4, 4]
    assert est.stats_.interior > 0
