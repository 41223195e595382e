"""
Pydantic models for colorimetric values, images, features and reports
"""
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class BuiltinGamut(str, Enum):
    """Gamuts shipped with the toolkit"""
    P3 = "P3"
    REC709 = "Rec709"
    REC2020 = "Rec2020"
    TOY = "Toy"


class ImageEncoding(str, Enum):
    """What the three planes of a LinearImage hold"""
    RGB = "rgb"
    XYZ = "xyz"


class TransferKind(str, Enum):
    """Electro-optical transfer function families"""
    SRGB = "srgb"
    GAMMA = "gamma"
    LINEAR = "linear"


class MapperKind(str, Enum):
    """Gamut mapping operators"""
    CLIP = "clip"
    COMPRESS = "compress"


class SelectionFeature(str, Enum):
    """Feature used to cluster candidates"""
    FRAMEWORK = "framework"
    COLORFULNESS = "colorfulness"
    RANDOM = "random"


class Alternative(str, Enum):
    """Hypothesis test sidedness"""
    TWO_SIDED = "two-sided"
    GREATER = "greater"
    LESS = "less"


class Chromaticity(BaseModel):
    """CIE 1931 xy chromaticity"""
    model_config = ConfigDict(frozen=True)

    x: float = Field(..., ge=0.0, le=1.0)
    y: float = Field(..., gt=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_sum(self) -> "Chromaticity":
        if self.x + self.y > 1.0 + 1e-12:
            raise ValueError(f"x + y must not exceed 1 (got {self.x + self.y})")
        return self

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=np.float64)

    @classmethod
    def from_pair(cls, pair) -> "Chromaticity":
        x, y = pair
        return cls(x=float(x), y=float(y))


def _triangle_area(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    return 0.5 * float((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))


class Gamut(BaseModel):
    """RGB primaries plus white point in the CIE 1931 xy plane"""
    model_config = ConfigDict(frozen=True)

    name: str
    red: Chromaticity
    green: Chromaticity
    blue: Chromaticity
    white: Chromaticity

    @model_validator(mode="after")
    def _check_geometry(self) -> "Gamut":
        r, g, b, w = (p.as_array() for p in (self.red, self.green, self.blue, self.white))
        area = _triangle_area(r, g, b)
        if abs(area) <= 1e-12:
            raise ValueError(f"Primaries of gamut '{self.name}' are collinear")
        # White must sit strictly inside: all three sub-triangles share the sign of the whole
        sub = (_triangle_area(w, g, b), _triangle_area(r, w, b), _triangle_area(r, g, w))
        if not all(s * area > 0 for s in sub):
            raise ValueError(f"White point of gamut '{self.name}' is not inside its primary triangle")
        return self

    @property
    def primaries(self) -> np.ndarray:
        """3x2 array of primary chromaticities (R, G, B rows)"""
        return np.array([self.red.as_array(), self.green.as_array(), self.blue.as_array()])

    @property
    def area(self) -> float:
        return abs(_triangle_area(*self.primaries))

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "red": [self.red.x, self.red.y],
            "green": [self.green.x, self.green.y],
            "blue": [self.blue.x, self.blue.y],
            "white": [self.white.x, self.white.y],
        }


class LinearImage(BaseModel):
    """Planar linear-light tristimulus image, shape (3, height, width)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    planes: np.ndarray
    encoding: ImageEncoding = ImageEncoding.RGB
    gamut: Optional[Gamut] = None

    @field_validator("planes", mode="before")
    @classmethod
    def _as_planes(cls, value: Any) -> np.ndarray:
        planes = np.array(value, dtype=np.float64, copy=True)
        if planes.ndim != 3 or planes.shape[0] != 3:
            raise ValueError(f"Expected planes of shape (3, H, W), got {planes.shape}")
        if planes.shape[1] < 1 or planes.shape[2] < 1:
            raise ValueError("Image must have at least one pixel")
        if not np.all(np.isfinite(planes)):
            raise ValueError("Image values must be finite")
        planes.setflags(write=False)
        return planes

    @model_validator(mode="after")
    def _check_tag(self) -> "LinearImage":
        if self.encoding == ImageEncoding.RGB and self.gamut is None:
            raise ValueError("RGB images must be tagged with a gamut")
        if self.encoding == ImageEncoding.XYZ and self.gamut is not None:
            raise ValueError("XYZ images carry no gamut tag")
        return self

    @classmethod
    def from_hwc(cls, array: np.ndarray, gamut: Optional[Gamut] = None,
                 encoding: ImageEncoding = ImageEncoding.RGB) -> "LinearImage":
        """Build from an interleaved (H, W, 3) array"""
        array = np.asarray(array, dtype=np.float64)
        if array.ndim != 3 or array.shape[2] != 3:
            raise ValueError(f"Expected (H, W, 3) array, got {array.shape}")
        return cls(planes=np.moveaxis(array, 2, 0), encoding=encoding, gamut=gamut)

    @classmethod
    def solid(cls, rgb, gamut: Gamut, height: int = 16, width: int = 16) -> "LinearImage":
        """Constant-color image"""
        planes = np.broadcast_to(np.asarray(rgb, dtype=np.float64).reshape(3, 1, 1), (3, height, width))
        return cls(planes=planes, gamut=gamut)

    def to_hwc(self) -> np.ndarray:
        return np.moveaxis(self.planes, 0, 2).copy()

    def flat(self) -> np.ndarray:
        """(3, N) view of the pixels"""
        return self.planes.reshape(3, -1)

    @property
    def height(self) -> int:
        return int(self.planes.shape[1])

    @property
    def width(self) -> int:
        return int(self.planes.shape[2])


class TransferFunction(BaseModel):
    """Per-channel EOTF description"""
    model_config = ConfigDict(frozen=True)

    kind: TransferKind = TransferKind.SRGB
    exponent: Optional[float] = Field(None, ge=1.0, le=4.0)

    @model_validator(mode="after")
    def _check_exponent(self) -> "TransferFunction":
        if self.kind == TransferKind.GAMMA and self.exponent is None:
            raise ValueError("Gamma transfer requires an exponent in [1, 4]")
        return self

    def label(self) -> str:
        if self.kind == TransferKind.GAMMA:
            return f"gamma:{self.exponent:g}"
        return self.kind.value


class SigmoidParams(BaseModel):
    """Parameters of the cssim-to-MOS logistic"""
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(2.0, gt=0.0)
    beta: float = -3.5
    gamma: float = 1.9

    @field_validator("beta")
    @classmethod
    def _nonzero_beta(cls, value: float) -> float:
        if value == 0:
            raise ValueError("beta must be non-zero")
        return value


class FeatureVector(BaseModel):
    """Predicted perceptual differences d_1..d_N of one image"""
    values: List[float] = Field(..., min_length=1)
    target_names: List[str] = Field(..., min_length=1)
    cssim_values: List[float] = Field(default_factory=list)
    alpha: float = 2.0

    @model_validator(mode="after")
    def _check_values(self) -> "FeatureVector":
        if len(self.values) != len(self.target_names):
            raise ValueError("One value per target gamut is required")
        for v in self.values:
            if not (0.0 <= v <= self.alpha):
                raise ValueError(f"Feature value {v} outside [0, {self.alpha}]")
        return self

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


class TargetCriteria(BaseModel):
    """Coverage and uniformity for one target gamut"""
    coverage: float = Field(..., ge=0.0, le=1.0)
    uniformity: float = Field(..., ge=0.0, le=1.0)


class CriteriaReport(BaseModel):
    """The four dataset characterization criteria"""
    per_target: Dict[str, TargetCriteria]
    total: TargetCriteria
    bins: int = Field(..., ge=2)
    images: int = Field(..., ge=1)


class SelectionConfig(BaseModel):
    """How representative content is drawn"""
    k: int = Field(3, ge=1)
    per_cluster: int = Field(3, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)
    feature: SelectionFeature = SelectionFeature.FRAMEWORK


class ClusterSelection(BaseModel):
    """Members drawn from one cluster"""
    rank: int
    centroid: List[float]
    size: int
    selected: List[int]
    shortfall: bool = False


class SelectionResult(BaseModel):
    """Selected candidate indices grouped by cluster (sorted by centroid)"""
    clusters: List[ClusterSelection]
    seed: int
    feature: SelectionFeature

    @model_validator(mode="after")
    def _unique(self) -> "SelectionResult":
        flat = self.selected
        if len(flat) != len(set(flat)):
            raise ValueError("Selected indices must be unique")
        return self

    @property
    def selected(self) -> List[int]:
        return [i for cluster in self.clusters for i in cluster.selected]


class RobustnessResult(BaseModel):
    """PCCs of repeated selections"""
    feature: SelectionFeature
    pcc: List[float]
    excluded_trials: List[int] = Field(default_factory=list)
    trials: int


class TestResult(BaseModel):
    """Outcome of a hypothesis test"""
    __test__ = False  # not a pytest class

    test: str
    statistic: float
    df: Tuple[float, ...]
    p_value: float = Field(..., ge=0.0, le=1.0)
    alternative: Alternative

    @field_validator("df")
    @classmethod
    def _positive_df(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if not value or any(d <= 0 for d in value):
            raise ValueError("Degrees of freedom must be positive")
        return value


class CidGainRecord(BaseModel):
    """CID gain of one image for one target gamut"""
    image_id: str
    target: str
    cid_a: float
    cid_b: float
    gain: float

    @field_validator("gain", "cid_a", "cid_b")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not np.isfinite(value):
            raise ValueError("CID values must be finite")
        return value


class TrialStatistic(BaseModel):
    """Mean and standard deviation of CID gains over one selection"""
    trial: int
    method: SelectionFeature
    target: str
    mean: float
    std: float
    selected: List[str]


class MethodComparison(BaseModel):
    """Framework vs another selection method for one target and statistic"""
    target: str
    statistic: str
    baseline: SelectionFeature
    f_test: TestResult
    t_test: TestResult
    f_significant: bool
    t_significant: bool


class BenchmarkReport(BaseModel):
    """Everything the benchmark emits"""
    records: List[CidGainRecord]
    trial_statistics: List[TrialStatistic]
    comparisons: List[MethodComparison]
    bonferroni_threshold: Optional[float] = None
    pool: List[str]
    filtered_out: List[str]
    seed: int
    metric_version: str


class CorpusSpec(BaseModel):
    """Synthetic corpus recipe"""
    sweeps: int = Field(24, ge=0)
    in_gamut: int = Field(8, ge=0)
    noise: int = Field(8, ge=0)
    mosaics: int = Field(4, ge=0)
    size: int = Field(256, ge=16)
    seed: int = Field(0, ge=0)
    gamut: str = "P3"
    inner_gamut: str = "Rec709"
    bit_depth: int = 16

    @field_validator("bit_depth")
    @classmethod
    def _depth(cls, value: int) -> int:
        if value not in (8, 16):
            raise ValueError("bit_depth must be 8 or 16")
        return value


class RunConfig(BaseModel):
    """Echo of a CLI invocation embedded in reports"""
    subcommand: str
    options: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None


class RobustnessComparison(BaseModel):
    """Framework-feature robustness against a baseline for one cluster count"""
    k: int
    framework: RobustnessResult
    baseline: RobustnessResult
    t_test: TestResult
