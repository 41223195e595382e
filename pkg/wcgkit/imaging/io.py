"""
Image decoding and encoding on linear light
"""
from pathlib import Path
from typing import Optional, Union

import numpy as np
import png
import tifffile
from loguru import logger

from wcgkit.exceptions import ImageFormatError
from wcgkit.models import Gamut, LinearImage, TransferFunction
from wcgkit.imaging.transfer import LINEAR, SRGB, eotf, oetf

PNG_SUFFIXES = {".png"}
TIFF_SUFFIXES = {".tif", ".tiff"}
IMAGE_SUFFIXES = PNG_SUFFIXES | TIFF_SUFFIXES


def _read_png(path: Path) -> np.ndarray:
    try:
        width, height, rows, info = png.Reader(filename=str(path)).asDirect()
    except (png.Error, OSError) as e:
        raise ImageFormatError(f"Cannot read PNG {path}: {e}") from e

    if info.get("alpha"):
        raise ImageFormatError(f"{path}: alpha channels are not supported")
    if info.get("greyscale") or info.get("planes") != 3:
        raise ImageFormatError(f"{path}: expected 3 color channels, got {info.get('planes')}")
    bitdepth = info.get("bitdepth")
    if bitdepth not in (8, 16):
        raise ImageFormatError(f"{path}: unsupported bit depth {bitdepth}")

    dtype = np.uint16 if bitdepth == 16 else np.uint8
    codes = np.vstack([np.asarray(row, dtype=dtype) for row in rows]).reshape(height, width, 3)
    return codes.astype(np.float64) / float(2 ** bitdepth - 1)


def _read_tiff(path: Path) -> tuple:
    try:
        data = tifffile.imread(str(path))
    except Exception as e:
        raise ImageFormatError(f"Cannot read TIFF {path}: {e}") from e

    if data.ndim != 3 or data.shape[2] != 3:
        raise ImageFormatError(f"{path}: expected (H, W, 3) samples, got shape {data.shape}")
    if data.dtype == np.uint8:
        return data.astype(np.float64) / 255.0, False
    if data.dtype == np.uint16:
        return data.astype(np.float64) / 65535.0, False
    if data.dtype == np.float32:
        return data.astype(np.float64), True
    raise ImageFormatError(f"{path}: unsupported sample type {data.dtype}")


def default_transfer(path: Union[str, Path]) -> TransferFunction:
    """EOTF load_image assumes when none is given: linear for float TIFF, sRGB otherwise"""
    path = Path(path)
    if path.suffix.lower() in TIFF_SUFFIXES and path.is_file():
        return LINEAR if _read_tiff(path)[1] else SRGB
    return SRGB


def load_image(
    path: Union[str, Path],
    gamut: Gamut,
    transfer: Optional[TransferFunction] = None,
) -> LinearImage:
    """
    Decode an 8/16-bit PNG or 8/16-bit/float TIFF to linear RGB

    Args:
        path: Image file
        gamut: Primaries the file is encoded in
        transfer: EOTF; defaults to sRGB for integer data, linear for float TIFF

    Returns:
        LinearImage tagged as linear RGB in gamut
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if not path.is_file():
        raise ImageFormatError(f"No such image: {path}")

    if suffix in PNG_SUFFIXES:
        codes, is_float = _read_png(path), False
    elif suffix in TIFF_SUFFIXES:
        codes, is_float = _read_tiff(path)
    else:
        raise ImageFormatError(f"{path}: unsupported file type '{suffix}'")

    if transfer is None:
        transfer = LINEAR if is_float else SRGB

    linear = eotf(codes, transfer)
    logger.debug(f"Loaded {path.name} ({codes.shape[1]}x{codes.shape[0]}, {transfer.label()}, {gamut.name})")
    return LinearImage.from_hwc(linear, gamut=gamut)


def quantize(img: LinearImage, transfer: TransferFunction, bit_depth: int) -> np.ndarray:
    """Clamp to [0, 1], apply the OETF and round half up to integer codes (H, W, 3)"""
    if bit_depth not in (8, 16):
        raise ImageFormatError(f"Unsupported bit depth {bit_depth}")
    max_code = float(2 ** bit_depth - 1)
    encoded = oetf(np.clip(img.to_hwc(), 0.0, 1.0), transfer)
    codes = np.floor(np.clip(encoded, 0.0, 1.0) * max_code + 0.5)
    return codes.astype(np.uint16 if bit_depth == 16 else np.uint8)


def save_image(
    img: LinearImage,
    path: Union[str, Path],
    transfer: TransferFunction = SRGB,
    bit_depth: int = 16,
) -> Path:
    """
    Encode a linear RGB image to PNG or TIFF

    Args:
        img: Linear RGB image (values clamped to [0, 1] on write)
        path: Destination (.png, .tif, .tiff)
        transfer: OETF applied before quantization
        bit_depth: 8 or 16

    Returns:
        Written path
    """
    path = Path(path)
    suffix = path.suffix.lower()
    codes = quantize(img, transfer, bit_depth)
    path.parent.mkdir(parents=True, exist_ok=True)

    try:
        if suffix in PNG_SUFFIXES:
            writer = png.Writer(width=img.width, height=img.height, greyscale=False,
                                alpha=False, bitdepth=bit_depth)
            with open(path, "wb") as f:
                writer.write(f, codes.reshape(img.height, img.width * 3).tolist())
        elif suffix in TIFF_SUFFIXES:
            tifffile.imwrite(str(path), codes, photometric="rgb")
        else:
            raise ImageFormatError(f"{path}: unsupported file type '{suffix}'")
    except OSError as e:
        raise ImageFormatError(f"Cannot write {path}: {e}") from e

    logger.debug(f"Saved {path.name} ({bit_depth}-bit, {transfer.label()})")
    return path


def list_images(directory: Union[str, Path]) -> list:
    """Supported image files in a directory, sorted by name"""
    directory = Path(directory)
    if not directory.is_dir():
        raise ImageFormatError(f"Not a directory: {directory}")
    return sorted(p for p in directory.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES)
