"""Estimator-style wrapper around the pipeline.

Nothing is learned: ``fit`` only validates the configuration, so the
wrapper composes with tooling that expects fit/transform/predict and
``get_params``.  Each sample is one quadric ideal.
"""
from __future__ import annotations

from typing import Any, Iterable

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .conic import DEFAULT_HEIGHT
from .formats import ideal_from_json
from .linalg import as_matrix
from .models import QuadricIdeal
from .pipeline import PipelineResult, classify_and_parametrize


def check_ideal(obj: Any) -> QuadricIdeal:
    """Coerce a QuadricIdeal, JSON document or list of symmetric matrices."""
    if isinstance(obj, QuadricIdeal):
        return obj
    if isinstance(obj, dict):
        return ideal_from_json(obj)
    if isinstance(obj, (list, tuple)) and obj:
        return QuadricIdeal.from_matrices([as_matrix(A) for A in obj])
    raise TypeError(f"cannot interpret {type(obj).__name__} as a quadric ideal")


def check_height(height: Any) -> int:
    if isinstance(height, bool) or not isinstance(height, (int, np.integer)) or height < 1:
        raise ValueError(f"height must be a positive integer, got {height!r}")
    return int(height)


def _samples(X: Iterable) -> list[QuadricIdeal]:
    if isinstance(X, (QuadricIdeal, dict)):
        X = [X]
    return [check_ideal(x) for x in X]


class DelPezzoParametrizer(TransformerMixin, BaseEstimator):
    """fit validates, transform parametrizes, predict returns result tags."""

    def __init__(self, height: int = DEFAULT_HEIGHT):
        self.height = height

    def fit(self, X=None, y=None):
        self.height_ = check_height(self.height)
        return self

    def run(self, X) -> list[PipelineResult]:
        check_is_fitted(self, "height_")
        return [classify_and_parametrize(I, self.height_) for I in _samples(X)]

    def transform(self, X) -> list[dict]:
        return [r.to_json() for r in self.run(X)]

    def predict(self, X) -> np.ndarray:
        return np.array([r.tag for r in self.run(X)], dtype=object)


__all__ = ["DelPezzoParametrizer", "check_height", "check_ideal"]
