"""Imaging package: transfer functions and file I/O"""
from .transfer import SRGB, LINEAR, parse_transfer, eotf, oetf
from .io import default_transfer, load_image, save_image, quantize, list_images, IMAGE_SUFFIXES

__all__ = [
    "SRGB",
    "LINEAR",
    "parse_transfer",
    "eotf",
    "oetf",
    "default_transfer",
    "load_image",
    "save_image",
    "quantize",
    "list_images",
    "IMAGE_SUFFIXES",
]
