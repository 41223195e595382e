"""
Deterministic synthetic WCG corpus: chromaticity sweeps, vertex mosaics, in-gamut textures and noise
"""
from pathlib import Path
from typing import Dict, List, Union

import numpy as np
from loguru import logger
from scipy.ndimage import gaussian_filter

from wcgkit.config import pipeline_config
from wcgkit.models import CorpusSpec, Gamut, LinearImage
from wcgkit.colorimetry import convert_gamut, inside_mask, ray_exit_ratio, resolve_gamut, xyz_to_rgb_matrix
from wcgkit.imaging import SRGB, save_image
from wcgkit.utils import derive_seed, parallel_map, report_metadata, write_json_report

SWEEP = "sweep"
IN_GAMUT = "ingamut"
NOISE = "noise"
MOSAIC = "mosaic"
KINDS = (SWEEP, IN_GAMUT, NOISE, MOSAIC)
HUE_CENTERS = 6
# Mosaic anchors are pulled this far toward their centroid
MOSAIC_SHRINK = 0.9


def hue_to_rgb(hue: np.ndarray) -> np.ndarray:
    """Fully saturated hexcone color of hue in [0, 1), shape (3, ...)"""
    h6 = (np.asarray(hue, dtype=np.float64) % 1.0) * 6.0
    return np.stack([
        np.clip(np.abs(h6 - 3.0) - 1.0, 0.0, 1.0),
        np.clip(2.0 - np.abs(h6 - 2.0), 0.0, 1.0),
        np.clip(2.0 - np.abs(h6 - 4.0), 0.0, 1.0),
    ])


def _compose(hue: np.ndarray, saturation: np.ndarray, value: np.ndarray) -> np.ndarray:
    return value * ((1.0 - saturation) + saturation * hue_to_rgb(hue))


def _smooth_field(rng: np.random.Generator, size: int) -> np.ndarray:
    field = gaussian_filter(rng.standard_normal((size, size)), sigma=size / 16.0, mode="wrap")
    span = field.max() - field.min()
    return (field - field.min()) / span if span > 0 else np.zeros_like(field)


def sweep_planes(index: int, count: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """
    Hue ramp across x around one of six centers, luminance ramp down y

    Saturation grows with the sweep level and carries per-pixel texture;
    the highest levels reach the primaries of the encoding gamut.
    """
    levels = np.linspace(0.1, 1.0, max(1, -(-count // HUE_CENTERS)))
    center = (index % HUE_CENTERS) / HUE_CENTERS
    level = levels[index // HUE_CENTERS]
    u = np.linspace(0.0, 1.0, size)[None, :]
    v = 0.3 + 0.65 * np.arange(size)[:, None] / size
    hue = np.broadcast_to(center + (u - 0.5) / HUE_CENTERS, (size, size))
    saturation = level * (0.6 + 0.4 * rng.random((size, size)))
    return _compose(hue, saturation, np.broadcast_to(v, (size, size)))


def mosaic_anchors(outer: Gamut, inner: Gamut) -> np.ndarray:
    """
    Corners of the region of `outer` that clips onto a single vertex of `inner`

    The vertex is the inner primary farthest from its outer counterpart. The
    region is bounded by the outward normals of the two inner edges meeting
    there and by the outer triangle.

    Returns:
        (4, 2) chromaticities pulled toward their centroid
    """
    distances = np.linalg.norm(outer.primaries - inner.primaries, axis=1)
    i = int(np.argmax(distances))
    vertex = inner.primaries[i]
    if distances[i] <= 1e-9 or not inside_mask(vertex[None, :], outer, eps=-1e-9)[0]:
        raise ValueError(f"Gamut '{inner.name}' has no vertex strictly inside '{outer.name}'")
    others = [inner.primaries[j] for j in range(3) if j != i]
    exits = []
    for edge_end, opposite in (others, others[::-1]):
        edge = edge_end - vertex
        normal = np.array([edge[1], -edge[0]])
        if normal @ (opposite - vertex) > 0:
            normal = -normal
        exits.append(vertex + ray_exit_ratio(vertex, vertex + normal, outer) * normal)
    corners = np.array([vertex, exits[0], outer.primaries[i], exits[1]])
    centroid = corners.mean(axis=0)
    return centroid + MOSAIC_SHRINK * (corners - centroid)


def mosaic_planes(index: int, size: int, outer: Gamut, inner: Gamut, rng: np.random.Generator) -> np.ndarray:
    """
    Per-pixel random mosaic of equal-luminance anchor colors

    Clipping to `inner` sends every anchor to the same vertex, so the chromatic
    structure vanishes while luminance stays put.
    """
    x, y = mosaic_anchors(outer, inner).T
    unit = xyz_to_rgb_matrix(outer) @ np.stack([x / y, np.ones_like(x), (1.0 - x - y) / y])
    luminance = (0.9 - 0.1 * (index % 4)) / unit.max()
    choice = rng.integers(0, unit.shape[1], size=(size, size))
    return luminance * unit[:, choice]


def build_image(kind: str, index: int, spec: CorpusSpec) -> LinearImage:
    """
    One corpus image in the corpus encoding gamut

    Args:
        kind: sweep, ingamut, noise or mosaic
        index: Position within its kind
        spec: Corpus recipe

    Returns:
        Linear RGB image
    """
    if kind not in KINDS:
        raise ValueError(f"Unknown corpus image kind '{kind}'")
    gamut = resolve_gamut(spec.gamut)
    size = spec.size
    rng = np.random.default_rng(derive_seed(spec.seed, KINDS.index(kind), index))
    if kind == SWEEP:
        return LinearImage(planes=sweep_planes(index, spec.sweeps, size, rng), gamut=gamut)
    if kind == MOSAIC:
        planes = mosaic_planes(index, size, gamut, resolve_gamut(spec.inner_gamut), rng)
        return LinearImage(planes=planes, gamut=gamut)
    if kind == IN_GAMUT:
        inner = resolve_gamut(spec.inner_gamut)
        texture = np.stack([_smooth_field(rng, size) for _ in range(3)])
        # 5% toward white keeps quantized values inside the inner gamut
        planes = 0.05 + 0.95 * texture
        return convert_gamut(LinearImage(planes=planes, gamut=inner), inner, gamut)
    hue, saturation, value = (_smooth_field(rng, size) for _ in range(3))
    return LinearImage(planes=_compose(hue, saturation, 0.2 + 0.7 * value), gamut=gamut)


def corpus_entries(spec: CorpusSpec) -> List[Dict[str, Union[str, int]]]:
    counts = {SWEEP: spec.sweeps, IN_GAMUT: spec.in_gamut, NOISE: spec.noise, MOSAIC: spec.mosaics}
    return [
        {"name": f"{kind}_{i:03d}.png", "kind": kind, "index": i}
        for kind in KINDS
        for i in range(counts[kind])
    ]


def gen_corpus(out_dir: Union[str, Path], spec: CorpusSpec) -> List[Path]:
    """
    Write the corpus as sRGB-encoded PNGs plus a corpus.json manifest

    Args:
        out_dir: Destination directory
        spec: Corpus recipe

    Returns:
        Written image paths in manifest order
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = corpus_entries(spec)
    logger.info(f"Generating {len(entries)} corpus images ({spec.size}x{spec.size}, {spec.gamut}) in {out_dir}")

    def write(entry) -> Path:
        img = build_image(entry["kind"], entry["index"], spec)
        return save_image(img, out_dir / entry["name"], transfer=SRGB, bit_depth=spec.bit_depth)

    paths = parallel_map(write, entries, desc="gen-corpus")
    manifest = report_metadata(pipeline_config.CORPUS_FORMAT, spec.model_dump(), spec.seed)
    manifest["files"] = entries
    write_json_report(manifest, out_dir / "corpus.json")
    return paths
