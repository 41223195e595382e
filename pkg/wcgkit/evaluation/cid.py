"""
Color image difference: five windowed CIELAB comparison factors
"""
import numpy as np
from scipy.ndimage import gaussian_filter

from wcgkit.config import pipeline_config, settings
from wcgkit.exceptions import DimensionMismatchError, EncodingMismatchError
from wcgkit.models import Chromaticity, LinearImage
from wcgkit.colorimetry import D65, to_lab
from wcgkit.perceptual.ssim import check_planes, windowed_moments

_RADIUS = pipeline_config.SSIM_WINDOW // 2


def _local_mean(plane: np.ndarray) -> np.ndarray:
    sigma = pipeline_config.SSIM_SIGMA
    return gaussian_filter(plane, sigma=sigma, truncate=_RADIUS / sigma, mode="reflect")[
        _RADIUS:-_RADIUS, _RADIUS:-_RADIUS
    ]


def cid_factors(lab_ref: np.ndarray, lab_test: np.ndarray) -> dict:
    """
    Per-window comparison maps, each in [0, 1] and equal to 1 for identical input

    Args:
        lab_ref: (3, H, W) CIELAB planes
        lab_test: (3, H, W) CIELAB planes

    Returns:
        Maps keyed lightness, contrast, structure, chroma, hue
    """
    L1, L2 = check_planes(lab_ref[0], lab_test[0])
    c_lightness = (settings.cid_k_lightness * pipeline_config.CID_RANGE_LIGHTNESS) ** 2
    c_contrast = (settings.cid_k_contrast * pipeline_config.CID_RANGE_LIGHTNESS) ** 2
    c_structure = c_contrast / 2.0
    c_chroma = (settings.cid_k_chroma * pipeline_config.CID_RANGE_CHROMA) ** 2
    c_hue = (settings.cid_k_hue * pipeline_config.CID_RANGE_HUE) ** 2

    mu1, mu2, var1, var2, cov = windowed_moments(L1, L2)
    sd1, sd2 = np.sqrt(np.maximum(var1, 0.0)), np.sqrt(np.maximum(var2, 0.0))

    chroma1 = np.hypot(lab_ref[1], lab_ref[2])
    chroma2 = np.hypot(lab_test[1], lab_test[2])
    mc1, mc2 = _local_mean(chroma1), _local_mean(chroma2)
    d_chroma = mc1 - mc2
    d_a = _local_mean(lab_ref[1]) - _local_mean(lab_test[1])
    d_b = _local_mean(lab_ref[2]) - _local_mean(lab_test[2])
    d_hue_sq = np.maximum(d_a * d_a + d_b * d_b - d_chroma * d_chroma, 0.0)

    return {
        "lightness": c_lightness / ((mu1 - mu2) ** 2 + c_lightness),
        "contrast": (2 * sd1 * sd2 + c_contrast) / (var1 + var2 + c_contrast),
        "structure": np.maximum(0.0, (cov + c_structure) / (sd1 * sd2 + c_structure)),
        # Compares mean chroma like SSIM compares mean luminance
        "chroma": (2 * mc1 * mc2 + c_chroma) / (mc1 ** 2 + mc2 ** 2 + c_chroma),
        "hue": c_hue / (d_hue_sq + c_hue),
    }


def cid(ref: LinearImage, test: LinearImage, white: Chromaticity = D65) -> float:
    """
    CID = 1 - mean over windows of the product of the five factors, clipped to [0, 1]

    Args:
        ref: Reference image
        test: Distorted image (any gamut tag; compared through XYZ)
        white: CIELAB reference white

    Returns:
        Difference in [0, 1], 0 for identical images
    """
    if ref.encoding != test.encoding:
        raise EncodingMismatchError(f"Cannot compare {ref.encoding.value} with {test.encoding.value} images")
    if ref.planes.shape != test.planes.shape:
        raise DimensionMismatchError(f"Image sizes differ: {ref.planes.shape[1:]} vs {test.planes.shape[1:]}")
    factors = cid_factors(to_lab(ref, white), to_lab(test, white))
    product = np.prod(np.stack(list(factors.values())), axis=0)
    return float(np.clip(1.0 - product.mean(), 0.0, 1.0))
