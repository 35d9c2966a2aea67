"""Exact computer algebra for iterated integrals and Rota–Baxter algebras."""
from .core import (
    AlgebraError,
    CutoffError,
    LinComb,
    MalformedInput,
    NotLieError,
    Tensor,
    TruncatedSeries,
    UnsupportedInstance,
    bernoulli,
    bilinear,
    series_exp,
    series_log,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "CutoffError",
    "LinComb",
    "MalformedInput",
    "NotLieError",
    "Tensor",
    "TruncatedSeries",
    "UnsupportedInstance",
    "bernoulli",
    "bilinear",
    "series_exp",
    "series_log",
]
