"""
Test gamut clipping and gamut compression
"""
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from wcgkit.colorimetry import (
    D65,
    builtin_gamut,
    convert_gamut,
    in_gamut,
    inside_mask,
    nearest_boundary_points,
    pixel_chromaticity,
    rgb_to_xyz_matrix,
    xyz_to_xy,
)
from wcgkit.exceptions import EncodingMismatchError, GamutMappingError
from wcgkit.mapping import GamutMapper, apply, clip_to_gamut, compress_to_gamut, compression_scale, get_mapper
from wcgkit.models import Chromaticity, Gamut, LinearImage, MapperKind

P3 = builtin_gamut("P3")
REC709 = builtin_gamut("Rec709")
REC2020 = builtin_gamut("Rec2020")
TOY = builtin_gamut("Toy")


def _chromaticities(img: LinearImage) -> tuple:
    return xyz_to_xy(rgb_to_xyz_matrix(img.gamut) @ img.flat())


def _luminance(img: LinearImage) -> np.ndarray:
    return (rgb_to_xyz_matrix(img.gamut) @ img.flat())[1]


def _random_image(gamut: Gamut, seed: int = 0, size: int = 16) -> LinearImage:
    return LinearImage(planes=np.random.default_rng(seed).random((3, size, size)), gamut=gamut)


def test_clip_in_gamut_is_identity():
    inner = LinearImage(planes=0.3 + 0.4 * np.random.default_rng(1).random((3, 8, 8)), gamut=TOY)
    img = convert_gamut(inner, TOY, P3)
    clipped = clip_to_gamut(img, P3, REC709)

    assert clipped.gamut == REC709
    np.testing.assert_array_equal(clipped.planes, convert_gamut(img, P3, REC709).planes)


def test_clip_lands_inside_and_keeps_luminance():
    img = _random_image(P3, seed=2)
    clipped = clip_to_gamut(img, P3, TOY)

    xy, valid = _chromaticities(clipped)
    assert np.all(inside_mask(xy[valid], TOY, eps=1e-9))
    assert clipped.planes.min() >= 0.0
    np.testing.assert_allclose(_luminance(clipped), _luminance(img), atol=1e-12)


def test_clip_projects_to_nearest_boundary_point():
    green = LinearImage.solid([0.0, 0.8, 0.0], P3, height=2, width=2)
    clipped = clip_to_gamut(green, P3, REC709)

    expected = nearest_boundary_points(P3.green.as_array()[None, :], REC709)[0]
    c = pixel_chromaticity(clipped.flat()[:, 0], REC709)
    assert (c.x, c.y) == pytest.approx(tuple(expected), abs=1e-12)


def test_clip_passes_black_through():
    black = LinearImage.solid([0.0, 0.0, 0.0], P3, height=3, width=3)
    assert np.all(clip_to_gamut(black, P3, TOY).planes == 0.0)


def test_clip_requires_matching_source():
    img = _random_image(P3)
    with pytest.raises(EncodingMismatchError):
        clip_to_gamut(img, REC2020, REC709)


def test_compression_scale_bounds():
    assert compression_scale(P3, P3) == 1.0
    assert compression_scale(REC709, P3) == 1.0
    s = compression_scale(P3, REC709)
    assert 0.0 < s < 1.0
    assert compression_scale(REC2020, TOY) < compression_scale(REC2020, REC709) < compression_scale(REC2020, P3)


def test_compress_into_own_gamut_is_identity():
    img = _random_image(P3, seed=8)
    np.testing.assert_array_equal(compress_to_gamut(img, P3, P3).planes, img.planes)
    np.testing.assert_array_equal(get_mapper("compress", P3, P3).apply(img).planes, img.planes)

    # Same triangle under another name: rays end exactly on the primaries
    twin = Gamut(name="P3 twin", red=P3.red, green=P3.green, blue=P3.blue, white=P3.white)
    assert compression_scale(twin, P3) == 1.0
    assert compression_scale(P3, twin) == 1.0


def test_compression_maps_source_primaries_inside_target():
    s = compression_scale(REC2020, REC709)
    w = D65.as_array()
    for primary in REC2020.primaries:
        moved = w + s * (primary - w)
        assert in_gamut(Chromaticity.from_pair(moved), REC709, eps=1e-9)


def test_compress_output_inside_target():
    img = _random_image(REC2020, seed=4)
    compressed = compress_to_gamut(img, REC2020, TOY)

    assert compressed.gamut == TOY
    assert compressed.planes.min() >= 0.0
    xy, valid = _chromaticities(compressed)
    assert np.all(inside_mask(xy[valid], TOY, eps=1e-9))
    np.testing.assert_allclose(_luminance(compressed), _luminance(img), atol=1e-12)


def test_compress_keeps_neutral_pixels():
    gray = LinearImage.solid([0.4, 0.4, 0.4], P3, height=2, width=2)
    compressed = compress_to_gamut(gray, P3, REC709)
    np.testing.assert_allclose(compressed.planes, 0.4, atol=1e-12)


def test_compress_needs_shared_white():
    warm = Gamut(name="warm", red=P3.red, green=P3.green, blue=P3.blue, white=Chromaticity(x=0.33, y=0.34))
    with pytest.raises(GamutMappingError):
        compression_scale(warm, REC709)


def test_mapper_model():
    mapper = get_mapper("compress", REC2020, P3)
    assert isinstance(mapper, GamutMapper)
    assert mapper.kind == MapperKind.COMPRESS
    assert mapper.scale == compression_scale(REC2020, P3)
    assert mapper.describe() == "compress:Rec2020->P3"
    assert get_mapper(MapperKind.CLIP, REC2020, P3).scale == 1.0

    img = _random_image(REC2020, seed=6)
    np.testing.assert_array_equal(apply(mapper, img).planes, compress_to_gamut(img, REC2020, P3).planes)


def test_mapping_is_deterministic():
    img = _random_image(P3, seed=7)
    a = clip_to_gamut(img, P3, TOY)
    b = clip_to_gamut(img, P3, TOY)
    np.testing.assert_array_equal(a.planes, b.planes)


@hyp_settings(max_examples=100, deadline=None)
@given(st.tuples(*[st.floats(0.0, 1.0) for _ in range(3)]).filter(lambda rgb: sum(rgb) > 1e-3))
def test_clip_any_color_into_target(rgb):
    img = LinearImage.solid(rgb, P3, height=1, width=1)
    for target in (REC709, TOY):
        clipped = clip_to_gamut(img, P3, target)
        c = pixel_chromaticity(clipped.flat()[:, 0], target)
        assert in_gamut(c, target, eps=1e-9)
