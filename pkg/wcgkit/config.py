"""
Configuration settings for the WCG characterization toolkit
"""
from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from WCG_* environment variables"""

    model_config = SettingsConfigDict(
        env_prefix="WCG_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Parallelism
    threads: int = Field(4, ge=1, description="Upper bound on worker threads")

    # Logging
    log_level: str = Field("INFO")
    log_file: Optional[Path] = Field(None)

    # Sigmoid MOS predictor (fitted constants, overridable for research use)
    sigmoid_alpha: float = Field(2.0, gt=0)
    sigmoid_beta: float = Field(-3.5)
    sigmoid_gamma: float = Field(1.9)

    # Dataset criteria
    mos_scale: float = Field(2.0, gt=0, description="Normalization factor s_i")
    histogram_bins: int = Field(10, ge=2)
    max_histogram_cells: int = Field(1_000_000, ge=1)

    # Candidate pool filtering: minimum fraction of pixels outside Rec.709
    wcg_pixel_threshold: float = Field(0.005, ge=0, le=1)

    # CID stabilizers: c = (K * dynamic range)^2
    cid_k_lightness: float = Field(0.2236, gt=0)
    cid_k_contrast: float = Field(0.03, gt=0)
    cid_k_chroma: float = Field(0.1242, gt=0)
    cid_k_hue: float = Field(0.0311, gt=0)

    # Randomized procedures
    default_seed: int = Field(0, ge=0)
    default_trials: int = Field(100, ge=2)


# Global settings instance
settings = Settings()


class PipelineConfig:
    """Fixed algorithm constants"""

    # SSIM (canonical Gaussian formulation)
    SSIM_SIGMA = 1.5
    SSIM_WINDOW = 11
    SSIM_K1 = 0.01
    SSIM_K2 = 0.03

    # cssim dynamic ranges for L*, a*, b*
    CSSIM_RANGES = (100.0, 255.0, 255.0)

    # CID dynamic ranges: L*, C*ab, hue residual
    CID_RANGE_LIGHTNESS = 100.0
    CID_RANGE_CHROMA = 180.0
    CID_RANGE_HUE = 360.0
    CID_METRIC_VERSION = "cid-cielab-5factor/2"

    # Gamut geometry
    IN_GAMUT_EPS = 1e-9
    NEGATIVE_RGB_TOLERANCE = 1e-9

    # Clustering
    KMEANS_MAX_ITER = 100

    # Special functions
    BETA_CF_TOLERANCE = 1e-12
    BETA_CF_MAX_ITER = 300

    # Reports
    SIGNIFICANT_DIGITS = 9
    CHARACTERIZE_FORMAT = "wcg-characterize/1"
    CRITERIA_FORMAT = "wcg-criteria/1"
    SELECTION_FORMAT = "wcg-selection/1"
    BENCHMARK_FORMAT = "wcg-benchmark/1"
    STATS_FORMAT = "wcg-stats/1"
    CORPUS_FORMAT = "wcg-corpus/1"

    # Experiment defaults
    CHARACTERIZE_REF = "P3"
    CHARACTERIZE_TARGETS = ("Rec709", "Toy")
    BENCHMARK_REF = "Rec2020"
    BENCHMARK_TARGETS = ("P3", "Rec709", "Toy")
    SELECTION_K = 3
    SELECTION_PER_CLUSTER = 3
    SIGNIFICANCE_ALPHA = 0.05


pipeline_config = PipelineConfig()
