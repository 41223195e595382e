"""
Linear color conversions between RGB primary sets via CIE XYZ
"""
from functools import lru_cache

import numpy as np

from wcgkit.exceptions import EncodingMismatchError, GeometryError, UndefinedChromaticityError
from wcgkit.models import Chromaticity, Gamut, ImageEncoding, LinearImage
from wcgkit.colorimetry.geometry import inside_mask


def xy_to_XYZ(x: float, y: float) -> np.ndarray:
    """Tristimulus of a chromaticity at Y = 1"""
    return np.array([x / y, 1.0, (1.0 - x - y) / y])


@lru_cache(maxsize=64)
def _rgb_to_xyz_cached(gamut: Gamut) -> np.ndarray:
    columns = np.column_stack([xy_to_XYZ(p.x, p.y) for p in (gamut.red, gamut.green, gamut.blue)])
    white = xy_to_XYZ(gamut.white.x, gamut.white.y)
    if abs(np.linalg.det(columns)) < 1e-12:
        raise GeometryError(f"Singular primary configuration for gamut '{gamut.name}'")
    scale = np.linalg.solve(columns, white)
    matrix = columns * scale
    matrix.setflags(write=False)
    return matrix


def rgb_to_xyz_matrix(gamut: Gamut) -> np.ndarray:
    """
    Normalized primary matrix: linear RGB in gamut's primaries -> XYZ

    RGB = (1, 1, 1) maps to the white point with Y = 1.

    Args:
        gamut: Source primaries and white

    Returns:
        3x3 read-only matrix
    """
    return _rgb_to_xyz_cached(gamut)


@lru_cache(maxsize=64)
def xyz_to_rgb_matrix(gamut: Gamut) -> np.ndarray:
    """Inverse of rgb_to_xyz_matrix"""
    inverse = np.linalg.inv(rgb_to_xyz_matrix(gamut))
    inverse.setflags(write=False)
    return inverse


def _apply_matrix(matrix: np.ndarray, planes: np.ndarray) -> np.ndarray:
    return np.einsum("ij,jhw->ihw", matrix, planes)


def _require_rgb(img: LinearImage, gamut: Gamut) -> None:
    if img.encoding != ImageEncoding.RGB or img.gamut != gamut:
        tag = img.gamut.name if img.gamut is not None else img.encoding.value
        raise EncodingMismatchError(f"Expected linear RGB in '{gamut.name}', image is tagged '{tag}'")


def to_xyz(img: LinearImage) -> LinearImage:
    """Re-express an image as XYZ"""
    if img.encoding == ImageEncoding.XYZ:
        return img
    return LinearImage(planes=_apply_matrix(rgb_to_xyz_matrix(img.gamut), img.planes),
                       encoding=ImageEncoding.XYZ)



def convert_gamut(img: LinearImage, src: Gamut, dst: Gamut) -> LinearImage:
    """
    Re-express linear RGB from src primaries into dst primaries (no gamut mapping)

    Out-of-gamut colors are kept numerically (negative or >1 components).
    """
    _require_rgb(img, src)
    if src == dst:
        return img
    matrix = xyz_to_rgb_matrix(dst) @ rgb_to_xyz_matrix(src)
    return LinearImage(planes=_apply_matrix(matrix, img.planes), gamut=dst)


def xyz_to_xy(xyz: np.ndarray) -> tuple:
    """
    Chromaticities of a (3, N) tristimulus array

    Returns:
        ((N, 2) chromaticities, boolean mask of pixels with positive X+Y+Z)
    """
    total = xyz.sum(axis=0)
    valid = total > 0
    xy = np.zeros((xyz.shape[1], 2))
    xy[valid, 0] = xyz[0, valid] / total[valid]
    xy[valid, 1] = xyz[1, valid] / total[valid]
    return xy, valid


def xyY_to_XYZ(xy: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """(N, 2) chromaticities plus (N,) luminance -> (3, N) tristimulus"""
    x, y = xy[:, 0], xy[:, 1]
    scale = Y / y
    return np.vstack([x * scale, Y, (1.0 - x - y) * scale])


def pixel_chromaticity(rgb, gamut: Gamut) -> Chromaticity:
    """
    Chromaticity (x, y) = (X, Y) / (X + Y + Z) of one linear RGB triple

    Raises:
        UndefinedChromaticityError: zero tristimulus sum (black)
    """
    xyz = rgb_to_xyz_matrix(gamut) @ np.asarray(rgb, dtype=np.float64)
    total = float(xyz.sum())
    if total <= 0:
        raise UndefinedChromaticityError("Chromaticity is undefined for a zero tristimulus sum")
    return Chromaticity(x=float(xyz[0] / total), y=float(xyz[1] / total))


def out_of_gamut_fraction(img: LinearImage, src: Gamut, ref: Gamut) -> float:
    """
    Fraction of pixels whose chromaticity lies outside ref (black counts as inside)

    Args:
        img: Linear RGB in src
        src: Encoding gamut of img
        ref: Gamut tested against

    Returns:
        Ratio in [0, 1]
    """
    _require_rgb(img, src)
    xy, valid = xyz_to_xy(rgb_to_xyz_matrix(src) @ img.flat())
    outside = np.zeros(xy.shape[0], dtype=bool)
    if valid.any():
        outside[valid] = ~inside_mask(xy[valid], ref)
    return float(outside.mean())


def _lab_f(t: np.ndarray) -> np.ndarray:
    delta = 6.0 / 29.0
    return np.where(t > delta ** 3, np.cbrt(t), t / (3 * delta ** 2) + 4.0 / 29.0)


def xyz_to_lab(xyz: np.ndarray, white: Chromaticity) -> np.ndarray:
    """
    CIELAB of (3, ...) tristimulus values, reference white normalized to Yn = 1

    Returns:
        Array of the same shape holding L*, a*, b*
    """
    white_xyz = xy_to_XYZ(white.x, white.y).reshape((3,) + (1,) * (xyz.ndim - 1))
    f = _lab_f(xyz / white_xyz)
    return np.stack([116.0 * f[1] - 16.0, 500.0 * (f[0] - f[1]), 200.0 * (f[1] - f[2])])


def to_lab(img: LinearImage, white: Chromaticity) -> np.ndarray:
    """CIELAB planes (3, H, W) of an image"""
    return xyz_to_lab(to_xyz(img).planes, white)
