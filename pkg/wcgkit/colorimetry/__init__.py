"""Colorimetry package: gamuts, chromaticity geometry and linear conversions"""
from .gamuts import D65, builtin_gamut, load_gamut, resolve_gamut
from .geometry import (
    barycentric,
    inside_mask,
    in_gamut,
    gamut_contains,
    nearest_boundary_points,
    ray_exit_ratio,
)
from .conversions import (
    rgb_to_xyz_matrix,
    xyz_to_rgb_matrix,
    convert_gamut,
    to_xyz,
    xyz_to_xy,
    xyY_to_XYZ,
    pixel_chromaticity,
    out_of_gamut_fraction,
    xyz_to_lab,
    to_lab,
)

__all__ = [
    "D65",
    "builtin_gamut",
    "load_gamut",
    "resolve_gamut",
    "barycentric",
    "inside_mask",
    "in_gamut",
    "gamut_contains",
    "nearest_boundary_points",
    "ray_exit_ratio",
    "rgb_to_xyz_matrix",
    "xyz_to_rgb_matrix",
    "convert_gamut",
    "to_xyz",
    "xyz_to_xy",
    "xyY_to_XYZ",
    "pixel_chromaticity",
    "out_of_gamut_fraction",
    "xyz_to_lab",
    "to_lab",
]
