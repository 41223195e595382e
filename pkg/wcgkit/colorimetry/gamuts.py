"""
Built-in gamut definitions and gamut loading
"""
import json
from pathlib import Path
from typing import Dict, Union

from loguru import logger

from wcgkit.models import BuiltinGamut, Chromaticity, Gamut

D65 = Chromaticity(x=0.3127, y=0.3290)

_PRIMARIES: Dict[BuiltinGamut, tuple] = {
    BuiltinGamut.P3: ((0.680, 0.320), (0.265, 0.690), (0.150, 0.060)),
    BuiltinGamut.REC709: ((0.640, 0.330), (0.300, 0.600), (0.150, 0.060)),
    BuiltinGamut.REC2020: ((0.708, 0.292), (0.170, 0.797), (0.131, 0.046)),
    BuiltinGamut.TOY: ((0.570, 0.320), (0.300, 0.530), (0.190, 0.130)),
}

# Accepted spellings, compared case-insensitively
_ALIASES = {
    "p3": BuiltinGamut.P3,
    "dci-p3": BuiltinGamut.P3,
    "dcip3": BuiltinGamut.P3,
    "rec709": BuiltinGamut.REC709,
    "rec.709": BuiltinGamut.REC709,
    "bt709": BuiltinGamut.REC709,
    "srgb": BuiltinGamut.REC709,
    "rec2020": BuiltinGamut.REC2020,
    "rec.2020": BuiltinGamut.REC2020,
    "bt2020": BuiltinGamut.REC2020,
    "toy": BuiltinGamut.TOY,
}


def builtin_gamut(name: Union[BuiltinGamut, str]) -> Gamut:
    """
    Return one of the built-in gamuts (all with a D65 white point)

    Args:
        name: P3, Rec709, Rec2020 or Toy

    Returns:
        Gamut
    """
    key = name if isinstance(name, BuiltinGamut) else _ALIASES.get(str(name).strip().lower())
    if key is None:
        raise ValueError(f"Unknown built-in gamut: {name}")
    red, green, blue = _PRIMARIES[key]
    return Gamut(
        name=key.value,
        red=Chromaticity.from_pair(red),
        green=Chromaticity.from_pair(green),
        blue=Chromaticity.from_pair(blue),
        white=D65,
    )


def load_gamut(path: Union[str, Path]) -> Gamut:
    """
    Load a gamut from JSON: {"name", "red": [x, y], "green", "blue", "white"}

    Args:
        path: JSON file

    Returns:
        Gamut
    """
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)

    gamut = Gamut(
        name=str(data.get("name", Path(path).stem)),
        red=Chromaticity.from_pair(data["red"]),
        green=Chromaticity.from_pair(data["green"]),
        blue=Chromaticity.from_pair(data["blue"]),
        white=Chromaticity.from_pair(data.get("white", (D65.x, D65.y))),
    )
    logger.debug(f"Loaded gamut '{gamut.name}' from {path}")
    return gamut


def resolve_gamut(spec: Union[str, Gamut, BuiltinGamut]) -> Gamut:
    """Resolve a CLI gamut argument: built-in name or path to a JSON file"""
    if isinstance(spec, Gamut):
        return spec
    if isinstance(spec, BuiltinGamut) or str(spec).strip().lower() in _ALIASES:
        return builtin_gamut(spec)
    path = Path(spec)
    if path.is_file():
        return load_gamut(path)
    raise ValueError(f"'{spec}' is neither a built-in gamut nor a gamut JSON file")
