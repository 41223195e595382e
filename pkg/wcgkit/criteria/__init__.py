"""Dataset characterization criteria"""
from .hull import convex_hull, polygon_area, hull_area
from .dataset_criteria import (
    FeatureMatrix,
    bin_indices,
    coverage,
    total_coverage,
    uniformity,
    total_uniformity,
    report,
)

__all__ = [
    "convex_hull",
    "polygon_area",
    "hull_area",
    "FeatureMatrix",
    "bin_indices",
    "coverage",
    "total_coverage",
    "uniformity",
    "total_uniformity",
    "report",
]
