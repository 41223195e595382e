"""
Dataset characterization criteria: coverage, uniformity and their totals
"""
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.stats import entropy

from wcgkit.config import settings
from wcgkit.exceptions import DegenerateInputError, DomainError, ResourceLimitError, UnsupportedDimensionError
from wcgkit.models import CriteriaReport, TargetCriteria
from wcgkit.criteria.hull import hull_area


class FeatureMatrix(BaseModel):
    """Rows are images, columns are target gamuts, entries are raw MOS predictions"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray
    target_names: List[str]
    scale: float = Field(default_factory=lambda: settings.mos_scale, gt=0)

    @field_validator("values", mode="before")
    @classmethod
    def _as_matrix(cls, value) -> np.ndarray:
        matrix = np.array(value, dtype=np.float64, ndmin=2, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
            raise ValueError(f"Feature matrix needs at least one row and column, got {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise ValueError("Feature values must be finite")
        matrix.setflags(write=False)
        return matrix

    @model_validator(mode="after")
    def _check_shape(self) -> "FeatureMatrix":
        if len(self.target_names) != self.values.shape[1]:
            raise ValueError("One target name per column is required")
        if self.values.min() < 0 or self.values.max() > self.scale:
            raise ValueError(f"Feature values must lie in [0, {self.scale}]")
        return self

    @property
    def normalized(self) -> np.ndarray:
        """Z~ = d / s, entries in [0, 1]"""
        return self.values / self.scale

    @property
    def dimensions(self) -> int:
        return int(self.values.shape[1])

    @classmethod
    def from_table(cls, table: pd.DataFrame, target_names: Optional[Sequence[str]] = None,
                   scale: Optional[float] = None) -> "FeatureMatrix":
        """Build from a characterize table (columns d_1..d_N)"""
        columns = sorted((c for c in table.columns if c.startswith("d_")), key=lambda c: int(c[2:]))
        if not columns:
            raise DegenerateInputError("Table has no d_n columns")
        names = list(target_names) if target_names else columns
        kwargs = {} if scale is None else {"scale": scale}
        return cls(values=table[columns].to_numpy(dtype=np.float64), target_names=names, **kwargs)


def _check_column(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64).ravel()
    if z.size == 0:
        raise DegenerateInputError("Empty feature column")
    if z.min() < 0 or z.max() > 1:
        raise DomainError("Normalized features must lie in [0, 1]")
    return z


def _check_bins(bins: int) -> int:
    if int(bins) < 2:
        raise DomainError(f"At least 2 bins are required, got {bins}")
    return int(bins)


def bin_indices(z: np.ndarray, bins: int) -> np.ndarray:
    """Equal-width bins on [0, 1]; 1.0 falls into the last bin"""
    return np.minimum(np.floor(z * bins).astype(np.int64), bins - 1)


def _entropy(counts: np.ndarray, base: int) -> float:
    counts = counts[counts > 0]
    if counts.size <= 1:
        return 0.0
    return float(entropy(counts, base=base))


def coverage(z: np.ndarray) -> float:
    """C = max(z) - min(z)"""
    z = _check_column(z)
    return float(z.max() - z.min())


def total_coverage(Z: np.ndarray) -> float:
    """
    Square root of the convex hull area of two-dimensional normalized rows

    Raises:
        UnsupportedDimensionError: rows are not two-dimensional
    """
    Z = np.asarray(Z, dtype=np.float64)
    if Z.ndim != 2 or Z.shape[1] != 2:
        raise UnsupportedDimensionError(
            f"Total coverage is defined for two target gamuts, got {Z.shape[-1] if Z.ndim else 0}"
        )
    if Z.shape[0] == 0:
        raise DegenerateInputError("Empty feature matrix")
    return float(np.sqrt(hull_area(Z)))


def uniformity(z: np.ndarray, bins: int = 10) -> float:
    """
    Histogram entropy with logarithm base B

    Args:
        z: Normalized feature column
        bins: Bin count B

    Returns:
        U in [0, 1], 1 for equally populated bins
    """
    z = _check_column(z)
    bins = _check_bins(bins)
    counts = np.bincount(bin_indices(z, bins), minlength=bins)
    return min(1.0, _entropy(counts, bins))


def total_uniformity(Z: np.ndarray, bins: int = 10) -> float:
    """
    Joint-histogram entropy over the B^N cells, base B, divided by N

    Raises:
        ResourceLimitError: B^N exceeds settings.max_histogram_cells
    """
    Z = np.asarray(Z, dtype=np.float64)
    if Z.ndim == 1:
        Z = Z[:, None]
    if Z.size == 0:
        raise DegenerateInputError("Empty feature matrix")
    bins = _check_bins(bins)
    n_dims = Z.shape[1]
    cells = bins ** n_dims
    if cells > settings.max_histogram_cells:
        raise ResourceLimitError(f"Joint histogram needs {cells} cells (cap {settings.max_histogram_cells})")
    for column in Z.T:
        _check_column(column)

    flat = np.ravel_multi_index(tuple(bin_indices(Z, bins).T), (bins,) * n_dims)
    _, counts = np.unique(flat, return_counts=True)
    return min(1.0, _entropy(counts, bins) / n_dims)


def report(Z: FeatureMatrix, bins: Optional[int] = None) -> CriteriaReport:
    """
    All four criteria of a feature matrix

    Args:
        Z: Feature matrix (raw MOS predictions)
        bins: Histogram bins per dimension (default from settings)

    Returns:
        CriteriaReport
    """
    bins = _check_bins(bins if bins is not None else settings.histogram_bins)
    normalized = Z.normalized
    per_target: Dict[str, TargetCriteria] = {}
    for name, column in zip(Z.target_names, normalized.T):
        per_target[name] = TargetCriteria(coverage=coverage(column), uniformity=uniformity(column, bins))

    total = TargetCriteria(
        coverage=min(1.0, total_coverage(normalized)),
        uniformity=total_uniformity(normalized, bins),
    )
    logger.info(
        f"Criteria over {normalized.shape[0]} images: C_total={total.coverage:.4f}, U_total={total.uniformity:.4f}"
    )
    return CriteriaReport(per_target=per_target, total=total, bins=bins, images=int(normalized.shape[0]))
