"""
Transfer functions: decode display-encoded codes to linear light and back
"""
import numpy as np

from wcgkit.models import TransferFunction, TransferKind

SRGB = TransferFunction(kind=TransferKind.SRGB)
LINEAR = TransferFunction(kind=TransferKind.LINEAR)


def parse_transfer(value: str) -> TransferFunction:
    """
    Parse a CLI transfer argument: srgb | linear | gamma:<exponent>

    Args:
        value: Transfer name, e.g. "srgb" or "gamma:2.4"

    Returns:
        TransferFunction
    """
    text = value.strip().lower()
    if text == "srgb":
        return SRGB
    if text == "linear":
        return LINEAR
    if text.startswith("gamma:"):
        return TransferFunction(kind=TransferKind.GAMMA, exponent=float(text.split(":", 1)[1]))
    raise ValueError(f"Unknown transfer function '{value}' (expected srgb, linear or gamma:<value>)")


def eotf(encoded: np.ndarray, transfer: TransferFunction) -> np.ndarray:
    """Normalized code values -> linear light"""
    v = np.asarray(encoded, dtype=np.float64)
    if transfer.kind == TransferKind.LINEAR:
        return v.copy()
    if transfer.kind == TransferKind.GAMMA:
        return np.sign(v) * np.abs(v) ** transfer.exponent
    a = np.abs(v)
    linear = np.where(a <= 0.04045, a / 12.92, ((a + 0.055) / 1.055) ** 2.4)
    return np.sign(v) * linear


def oetf(linear: np.ndarray, transfer: TransferFunction) -> np.ndarray:
    """Linear light -> normalized code values (inverse of eotf)"""
    v = np.asarray(linear, dtype=np.float64)
    if transfer.kind == TransferKind.LINEAR:
        return v.copy()
    if transfer.kind == TransferKind.GAMMA:
        return np.sign(v) * np.abs(v) ** (1.0 / transfer.exponent)
    a = np.abs(v)
    encoded = np.where(a <= 0.0031308, a * 12.92, 1.055 * a ** (1.0 / 2.4) - 0.055)
    return np.sign(v) * encoded
