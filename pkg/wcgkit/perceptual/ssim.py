"""
Structural similarity on single planes and its CIELAB color extension
"""
import numpy as np
from scipy.ndimage import gaussian_filter

from wcgkit.config import pipeline_config
from wcgkit.exceptions import DimensionMismatchError, EncodingMismatchError
from wcgkit.models import Chromaticity, LinearImage
from wcgkit.colorimetry import D65, to_lab

_RADIUS = pipeline_config.SSIM_WINDOW // 2


def windowed_moments(a: np.ndarray, b: np.ndarray) -> tuple:
    """
    Gaussian-weighted local means, variances and covariance (valid region only)

    The 11x11 window (sigma 1.5) is the truncated, renormalized Gaussian;
    border pixels whose window would leave the image are cropped.

    Returns:
        (mu_a, mu_b, var_a, var_b, cov_ab) each of shape (H - 10, W - 10)
    """
    sigma = pipeline_config.SSIM_SIGMA
    truncate = _RADIUS / sigma

    def blur(x):
        return gaussian_filter(x, sigma=sigma, truncate=truncate, mode="reflect")[
            _RADIUS:-_RADIUS, _RADIUS:-_RADIUS
        ]

    mu_a, mu_b = blur(a), blur(b)
    var_a = blur(a * a) - mu_a * mu_a
    var_b = blur(b * b) - mu_b * mu_b
    cov = blur(a * b) - mu_a * mu_b
    return mu_a, mu_b, var_a, var_b, cov


def check_planes(a: np.ndarray, b: np.ndarray) -> tuple:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or a.shape != b.shape:
        raise DimensionMismatchError(f"Planes must be 2-D and equal in size ({a.shape} vs {b.shape})")
    window = pipeline_config.SSIM_WINDOW
    if a.shape[0] < window or a.shape[1] < window:
        raise DimensionMismatchError(f"Planes must be at least {window}x{window}, got {a.shape}")
    return a, b


def ssim_channel(a: np.ndarray, b: np.ndarray, dynamic_range: float) -> float:
    """
    Mean SSIM of two planes

    Args:
        a: First plane (H, W)
        b: Second plane (H, W)
        dynamic_range: L in C1 = (K1 L)^2, C2 = (K2 L)^2

    Returns:
        Mean of the SSIM map over the valid region
    """
    a, b = check_planes(a, b)
    c1 = (pipeline_config.SSIM_K1 * dynamic_range) ** 2
    c2 = (pipeline_config.SSIM_K2 * dynamic_range) ** 2

    mu_a, mu_b, var_a, var_b, cov = windowed_moments(a, b)
    numerator = (2 * mu_a * mu_b + c1) * (2 * cov + c2)
    denominator = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
    return float(np.mean(numerator / denominator))


def cssim(a: LinearImage, b: LinearImage, white: Chromaticity = D65) -> float:
    """
    Color SSIM: SSIM(L*) + SSIM(a*) + SSIM(b*), ranging over [-3, 3]

    Both images go through XYZ to CIELAB, so only their color content counts,
    not the primaries they are expressed in.
    """
    if a.encoding != b.encoding:
        raise EncodingMismatchError(f"Cannot compare {a.encoding.value} with {b.encoding.value} images")
    if a.planes.shape != b.planes.shape:
        raise DimensionMismatchError(f"Image sizes differ: {a.planes.shape[1:]} vs {b.planes.shape[1:]}")
    lab_a, lab_b = to_lab(a, white), to_lab(b, white)
    return float(sum(
        ssim_channel(lab_a[i], lab_b[i], rng)
        for i, rng in enumerate(pipeline_config.CSSIM_RANGES)
    ))
