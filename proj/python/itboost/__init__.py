"""Gradient boosting with complexity-based trust weights (C++ core)."""

from ._itboost import (  # noqa: F401
    DataError,
    Dataset,
    IncrementalLz76,
    Model,
    cross_validate,
    friedman_from_mean_ranks,
    load_csv,
    lz76_complexity,
    make_two_gaussians,
    normalize_complexities,
    required_sample_size,
    train,
    trust_weights,
)

__version__ = "0.1.0"
