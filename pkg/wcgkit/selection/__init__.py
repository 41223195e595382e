"""Representative content selection"""
from .clustering import KMeansResult, kmeans
from .selector import (
    colorfulness,
    select_representative,
    robustness_protocol,
    compare_robustness,
    sweep_k,
)

__all__ = [
    "KMeansResult",
    "kmeans",
    "colorfulness",
    "select_representative",
    "robustness_protocol",
    "compare_robustness",
    "sweep_k",
]
