"""Perceptual difference package: SSIM, cssim and WCG characterization"""
from .ssim import ssim_channel, cssim, windowed_moments
from .characterizer import (
    WCGCharacterizer,
    characterize,
    check_nesting,
    default_sigmoid,
    predict_mos,
)

__all__ = [
    "ssim_channel",
    "cssim",
    "windowed_moments",
    "WCGCharacterizer",
    "characterize",
    "check_nesting",
    "default_sigmoid",
    "predict_mos",
]
