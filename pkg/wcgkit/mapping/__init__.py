"""Gamut mapping package"""
from .gamut_mapper import (
    GamutMapper,
    apply,
    clip_to_gamut,
    compress_to_gamut,
    compression_scale,
    get_mapper,
)

__all__ = [
    "GamutMapper",
    "apply",
    "clip_to_gamut",
    "compress_to_gamut",
    "compression_scale",
    "get_mapper",
]
