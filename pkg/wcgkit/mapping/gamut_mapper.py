"""
Gamut mapping operators: clipping and uniform compression toward white
"""
from functools import cached_property

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from wcgkit.config import pipeline_config
from wcgkit.exceptions import EncodingMismatchError, GamutMappingError, GeometryError
from wcgkit.models import Gamut, ImageEncoding, LinearImage, MapperKind
from wcgkit.colorimetry import (
    convert_gamut,
    inside_mask,
    nearest_boundary_points,
    ray_exit_ratio,
    rgb_to_xyz_matrix,
    xyY_to_XYZ,
    xyz_to_rgb_matrix,
    xyz_to_xy,
)


def _require_rgb(img: LinearImage, src: Gamut) -> None:
    if img.encoding != ImageEncoding.RGB or img.gamut != src:
        raise EncodingMismatchError(f"Mapper expects linear RGB in '{src.name}'")


def _rebuild(img: LinearImage, xyz: np.ndarray, moved: np.ndarray, target: Gamut) -> LinearImage:
    """
    Re-express XYZ in target primaries; moved pixels get the round-off clamp

    Pixels that were not moved keep their plain primary re-expression.
    """
    rgb = convert_gamut(img, img.gamut, target).flat().copy()
    if moved.any():
        mapped = xyz_to_rgb_matrix(target) @ xyz[:, moved]
        worst = float(mapped.min())
        if worst < -pipeline_config.NEGATIVE_RGB_TOLERANCE:
            raise GeometryError(f"Mapped color left gamut '{target.name}' (component {worst:.3e})")
        rgb[:, moved] = np.maximum(mapped, 0.0)
    return LinearImage(planes=rgb.reshape(img.planes.shape), gamut=target)


def clip_to_gamut(img: LinearImage, src: Gamut, target: Gamut) -> LinearImage:
    """
    Move out-of-gamut chromaticities to the nearest point of the target boundary

    Luminance Y is kept; in-gamut and black pixels pass through unchanged.

    Args:
        img: Linear RGB in src
        src: Source primaries
        target: Target primaries

    Returns:
        Linear RGB in target
    """
    _require_rgb(img, src)
    xyz = rgb_to_xyz_matrix(src) @ img.flat()
    xy, valid = xyz_to_xy(xyz)
    valid &= xyz[1] > 0

    moved = np.zeros(xy.shape[0], dtype=bool)
    if valid.any():
        moved[valid] = ~inside_mask(xy[valid], target)
    if moved.any():
        projected = nearest_boundary_points(xy[moved], target)
        xyz = xyz.copy()
        xyz[:, moved] = xyY_to_XYZ(projected, xyz[1, moved])
        logger.debug(f"Clipped {int(moved.sum())} of {moved.size} pixels into {target.name}")
    return _rebuild(img, xyz, moved, target)


def compression_scale(src: Gamut, target: Gamut) -> float:
    """
    Largest uniform scale toward white that fits the src triangle into target

    s = min over src primaries p of |w b_p| / |w p|, capped at 1, where b_p is the
    exit point of the ray w -> p through the target boundary.
    """
    w_src, w_dst = src.white.as_array(), target.white.as_array()
    if not np.allclose(w_src, w_dst, atol=1e-12, rtol=0):
        raise GamutMappingError(
            f"Compression needs a shared white point ({src.name}: {w_src}, {target.name}: {w_dst})"
        )
    if not inside_mask(w_src[None, :], target, eps=0.0)[0]:
        raise GamutMappingError(f"White point lies outside '{target.name}'")
    if src == target:
        return 1.0
    s = min(ray_exit_ratio(w_src, p, target) for p in src.primaries)
    # Primaries on the target boundary come back a few ulps short of 1
    return 1.0 if s >= 1.0 - 1e-12 else float(s)


def compress_to_gamut(img: LinearImage, src: Gamut, target: Gamut, scale: float = None) -> LinearImage:
    """
    Scale every chromaticity toward white by one global factor so src fits target

    Args:
        img: Linear RGB in src
        src: Source primaries
        target: Target primaries (same white point)
        scale: Precomputed compression_scale(src, target)

    Returns:
        Linear RGB in target
    """
    _require_rgb(img, src)
    s = compression_scale(src, target) if scale is None else scale
    xyz = rgb_to_xyz_matrix(src) @ img.flat()
    xy, valid = xyz_to_xy(xyz)
    valid &= xyz[1] > 0

    if s < 1.0 and valid.any():
        w = src.white.as_array()
        xyz = xyz.copy()
        xyz[:, valid] = xyY_to_XYZ(w + s * (xy[valid] - w), xyz[1, valid])
    else:
        valid = np.zeros_like(valid)
    return _rebuild(img, xyz, valid, target)


class GamutMapper(BaseModel):
    """A gamut mapping operator bound to its source and target gamuts"""
    model_config = ConfigDict(frozen=True)

    kind: MapperKind
    source: Gamut
    target: Gamut

    @cached_property
    def scale(self) -> float:
        """Global compression factor (1 for clipping)"""
        if self.kind == MapperKind.COMPRESS:
            return compression_scale(self.source, self.target)
        return 1.0

    def apply(self, img: LinearImage) -> LinearImage:
        if self.kind == MapperKind.CLIP:
            return clip_to_gamut(img, self.source, self.target)
        return compress_to_gamut(img, self.source, self.target, scale=self.scale)

    def describe(self) -> str:
        return f"{self.kind.value}:{self.source.name}->{self.target.name}"


def apply(mapper: GamutMapper, img: LinearImage) -> LinearImage:
    """Run a mapper; output is tagged as RGB in the mapper's target"""
    return mapper.apply(img)


def get_mapper(kind, source: Gamut, target: Gamut) -> GamutMapper:
    """Build a mapper from a kind name or enum"""
    return GamutMapper(kind=MapperKind(kind), source=source, target=target)
