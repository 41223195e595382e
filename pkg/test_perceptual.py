"""
Test SSIM, cssim, the MOS sigmoid and successive gamut reduction
"""
import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from wcgkit.colorimetry import builtin_gamut, convert_gamut
from wcgkit.corpus import build_image
from wcgkit.exceptions import DimensionMismatchError, EncodingMismatchError, NestingError
from wcgkit.imaging import save_image
from wcgkit.models import CorpusSpec, ImageEncoding, LinearImage, MapperKind, SigmoidParams
from wcgkit.perceptual import (
    WCGCharacterizer,
    characterize,
    check_nesting,
    cssim,
    predict_mos,
    ssim_channel,
)

P3 = builtin_gamut("P3")
REC709 = builtin_gamut("Rec709")
REC2020 = builtin_gamut("Rec2020")
TOY = builtin_gamut("Toy")


def _textured_in_toy(seed: int = 0, size: int = 24) -> LinearImage:
    planes = 0.2 + 0.6 * np.random.default_rng(seed).random((3, size, size))
    return convert_gamut(LinearImage(planes=planes, gamut=TOY), TOY, P3)


def _ssim_by_windows(a: np.ndarray, b: np.ndarray, dynamic_range: float) -> float:
    offsets = np.arange(-5, 6)
    g = np.exp(-(offsets ** 2) / (2 * 1.5 ** 2))
    w = np.outer(g, g)
    w /= w.sum()
    c1 = (0.01 * dynamic_range) ** 2
    c2 = (0.03 * dynamic_range) ** 2

    values = []
    for i in range(5, a.shape[0] - 5):
        for j in range(5, a.shape[1] - 5):
            pa = a[i - 5:i + 6, j - 5:j + 6]
            pb = b[i - 5:i + 6, j - 5:j + 6]
            mu_a, mu_b = np.sum(w * pa), np.sum(w * pb)
            var_a = np.sum(w * (pa - mu_a) ** 2)
            var_b = np.sum(w * (pb - mu_b) ** 2)
            cov = np.sum(w * (pa - mu_a) * (pb - mu_b))
            values.append(
                (2 * mu_a * mu_b + c1) * (2 * cov + c2)
                / ((mu_a ** 2 + mu_b ** 2 + c1) * (var_a + var_b + c2))
            )
    return float(np.mean(values))


def test_sigmoid_constants():
    """Test 1: midpoint and identity value of the fitted logistic"""
    assert predict_mos(1.9) == 1.0
    assert predict_mos(3.0) == pytest.approx(2.82e-4, abs=1e-6)
    assert predict_mos(3.0) == pytest.approx(2.0 / (1.0 + 10 ** 3.85), rel=1e-12)


def test_sigmoid_is_decreasing_and_bounded():
    x = np.linspace(0.0, 3.0, 1000)
    y = np.array([predict_mos(v) for v in x])
    assert np.all(np.diff(y) < 0)
    assert np.all((y > 0) & (y < 2.0))


def test_sigmoid_custom_params():
    params = SigmoidParams(alpha=5.0, beta=-1.0, gamma=0.0)
    assert predict_mos(0.0, params) == 2.5
    with pytest.raises(ValueError):
        SigmoidParams(beta=0.0)


def test_ssim_identity():
    a = np.random.default_rng(0).random((20, 20)) * 100
    assert ssim_channel(a, a, 100.0) == pytest.approx(1.0, abs=1e-12)


def test_ssim_constant_planes_closed_form():
    a = np.full((16, 16), 50.0)
    b = np.full((16, 16), 55.0)
    expected = (2 * 50 * 55 + 1) / (50 ** 2 + 55 ** 2 + 1)
    assert ssim_channel(a, b, 100.0) == pytest.approx(expected, abs=1e-9)


def test_ssim_matches_explicit_windows():
    rng = np.random.default_rng(1)
    a = rng.random((16, 16)) * 100
    b = a + rng.normal(0, 10, size=a.shape)
    assert ssim_channel(a, b, 100.0) == pytest.approx(_ssim_by_windows(a, b, 100.0), abs=1e-9)


def test_ssim_rejects_bad_planes():
    with pytest.raises(DimensionMismatchError):
        ssim_channel(np.zeros((10, 20)), np.zeros((10, 20)), 1.0)
    with pytest.raises(DimensionMismatchError):
        ssim_channel(np.zeros((12, 12)), np.zeros((12, 13)), 1.0)
    with pytest.raises(DimensionMismatchError):
        ssim_channel(np.zeros((12, 12, 3)), np.zeros((12, 12, 3)), 1.0)


def test_cssim_identity_and_symmetry():
    img = LinearImage(planes=np.random.default_rng(2).random((3, 16, 16)), gamut=P3)
    other = LinearImage(planes=np.random.default_rng(3).random((3, 16, 16)), gamut=P3)

    assert cssim(img, img) == pytest.approx(3.0, abs=1e-9)
    assert predict_mos(cssim(img, img)) <= 3e-4
    assert cssim(img, other) == pytest.approx(cssim(other, img), abs=1e-12)
    assert -3.0 <= cssim(img, other) < 3.0


def test_cssim_compares_color_not_primaries():
    img = _textured_in_toy(seed=4, size=16)
    assert cssim(img, convert_gamut(img, P3, REC709)) == pytest.approx(3.0, abs=1e-9)


def test_cssim_rejects_mismatches():
    img = LinearImage.solid([0.2, 0.3, 0.4], P3, height=12, width=12)
    with pytest.raises(DimensionMismatchError):
        cssim(img, LinearImage.solid([0.2, 0.3, 0.4], P3, height=12, width=14))
    xyz = LinearImage(planes=img.planes.copy(), encoding=ImageEncoding.XYZ)
    with pytest.raises(EncodingMismatchError):
        cssim(img, xyz)


def test_characterize_in_gamut_image_is_imperceptible():
    """Test 2: an image inside every target survives reduction unchanged"""
    features = characterize(_textured_in_toy(), P3, [REC709, TOY])
    assert features.target_names == ["Rec709", "Toy"]
    assert all(v <= 3e-4 for v in features.values)
    assert all(c == pytest.approx(3.0, abs=1e-9) for c in features.cssim_values)


def test_smaller_target_is_further_from_original():
    spec = CorpusSpec(sweeps=12, in_gamut=0, noise=0, size=32)
    img = build_image("sweep", 6, spec)
    features = characterize(img, P3, [REC709, TOY])
    cssim_709, cssim_toy = features.cssim_values
    assert cssim_toy <= cssim_709
    assert features.values[1] >= features.values[0]


def test_characterize_is_deterministic():
    img = build_image("noise", 1, CorpusSpec(size=24))
    a = characterize(img, P3, [REC709, TOY], MapperKind.COMPRESS)
    b = characterize(img, P3, [REC709, TOY], MapperKind.COMPRESS)
    assert a == b


def test_foreign_source_is_clipped_into_reference():
    img = LinearImage(planes=np.random.default_rng(5).random((3, 16, 16)), gamut=REC2020)
    features = characterize(img, P3, [REC709])
    assert 0.0 <= features.values[0] <= 2.0


@pytest.mark.parametrize("ref,targets", [
    (P3, []),
    (P3, [TOY, REC709]),
    (P3, [P3]),
    (REC709, [P3]),
    (P3, [REC709, REC709]),
])
def test_nesting_violations(ref, targets):
    with pytest.raises(NestingError):
        check_nesting(ref, targets)


def test_characterizer_batch(tmp_path):
    paths = [
        save_image(_textured_in_toy(seed=s, size=16), tmp_path / f"img_{s}.png")
        for s in range(3)
    ]
    characterizer = WCGCharacterizer(P3, [REC709, TOY])
    table = characterizer.evaluate_batch(paths)

    assert list(table.columns) == ["path", "d_1", "d_2", "cssim_1", "cssim_2"]
    assert table["path"].tolist() == ["img_0.png", "img_1.png", "img_2.png"]
    assert (table[["d_1", "d_2"]] <= 2.0).all().all()

    out = characterizer.save_results(table, tmp_path / "features.csv")
    assert out.read_text().startswith("# ")
