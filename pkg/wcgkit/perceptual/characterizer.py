"""
WCG content characterization by successive gamut reduction
"""
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from loguru import logger

from wcgkit.config import pipeline_config, settings
from wcgkit.exceptions import NestingError
from wcgkit.models import FeatureVector, Gamut, LinearImage, MapperKind, SigmoidParams, TransferFunction
from wcgkit.colorimetry import convert_gamut, gamut_contains
from wcgkit.imaging import load_image
from wcgkit.mapping import clip_to_gamut, get_mapper
from wcgkit.perceptual.ssim import cssim
from wcgkit.utils import parallel_map, report_metadata, write_csv_report


def default_sigmoid() -> SigmoidParams:
    """Sigmoid constants from settings"""
    return SigmoidParams(
        alpha=settings.sigmoid_alpha,
        beta=settings.sigmoid_beta,
        gamma=settings.sigmoid_gamma,
    )


def predict_mos(x: float, params: Optional[SigmoidParams] = None) -> float:
    """
    Map a cssim value to a predicted MOS: alpha / (1 + 10^(beta (gamma - x)))

    Args:
        x: cssim value
        params: Sigmoid parameters (defaults from settings)

    Returns:
        Predicted MOS in (0, alpha)
    """
    p = params or default_sigmoid()
    return float(p.alpha / (1.0 + 10.0 ** (p.beta * (p.gamma - float(x)))))


def check_nesting(ref: Gamut, targets: Sequence[Gamut]) -> None:
    """Raise NestingError unless ref contains targets[0], which contains targets[1], ..."""
    if not targets:
        raise NestingError("At least one target gamut is required")
    outer = ref
    for target in targets:
        if not gamut_contains(outer, target) or target.area >= outer.area:
            raise NestingError(f"Target '{target.name}' is not strictly inside '{outer.name}'")
        outer = target


def characterize(
    I0: LinearImage,
    ref: Gamut,
    targets: Sequence[Gamut],
    mapper_kind: Union[MapperKind, str] = MapperKind.CLIP,
    params: Optional[SigmoidParams] = None,
) -> FeatureVector:
    """
    Perceptual differences of an image under successive gamut reduction

    I_n is mapped from I_{n-1} into targets[n-1]; each d_n compares I_n with I_0.
    Images tagged with a gamut other than ref are clipped into ref first.

    Args:
        I0: Linear RGB image
        ref: Reference gamut G_0
        targets: Strictly nested target gamuts, largest first
        mapper_kind: Gamut reduction operator
        params: Sigmoid parameters

    Returns:
        FeatureVector of d_1..d_N and the underlying cssim values
    """
    check_nesting(ref, targets)
    params = params or default_sigmoid()

    if I0.gamut != ref:
        I0 = clip_to_gamut(I0, I0.gamut, ref)

    values, cssims = [], []
    current, current_gamut = I0, ref
    for target in targets:
        current = get_mapper(mapper_kind, current_gamut, target).apply(current)
        current_gamut = target
        score = cssim(convert_gamut(current, target, ref), I0)
        cssims.append(score)
        values.append(predict_mos(score, params))

    return FeatureVector(
        values=values,
        target_names=[t.name for t in targets],
        cssim_values=cssims,
        alpha=params.alpha,
    )


class WCGCharacterizer:
    """Characterizes image files against a reference and nested target gamuts"""

    def __init__(
        self,
        ref: Gamut,
        targets: Sequence[Gamut],
        mapper_kind: Union[MapperKind, str] = MapperKind.CLIP,
        source: Optional[Gamut] = None,
        transfer: Optional[TransferFunction] = None,
        params: Optional[SigmoidParams] = None,
    ):
        """
        Initialize characterizer

        Args:
            ref: Reference gamut
            targets: Nested target gamuts
            mapper_kind: Gamut reduction operator
            source: Encoding gamut of the files (defaults to ref)
            transfer: EOTF of the files (format default when None)
            params: Sigmoid parameters
        """
        check_nesting(ref, targets)
        self.ref = ref
        self.targets = list(targets)
        self.mapper_kind = MapperKind(mapper_kind)
        self.source = source or ref
        self.transfer = transfer
        self.params = params or default_sigmoid()
        logger.info(
            f"Characterizer initialized: ref={ref.name}, targets={[t.name for t in self.targets]}, "
            f"mapper={self.mapper_kind.value}"
        )

    def characterize_image(self, img: LinearImage) -> FeatureVector:
        return characterize(img, self.ref, self.targets, self.mapper_kind, self.params)

    def evaluate_single(self, path: Path) -> Dict[str, Any]:
        """
        Characterize one image file

        Returns:
            Row {path, d_1..d_N, cssim_1..cssim_N}
        """
        path = Path(path)
        features = self.characterize_image(load_image(path, self.source, self.transfer))
        row: Dict[str, Any] = {"path": path.name}
        for n, value in enumerate(features.values, start=1):
            row[f"d_{n}"] = value
        for n, value in enumerate(features.cssim_values, start=1):
            row[f"cssim_{n}"] = value
        logger.debug(f"{path.name}: d={np.round(features.values, 6).tolist()}")
        return row

    def evaluate_batch(self, paths: List[Path]) -> pd.DataFrame:
        """Characterize many files; row order follows paths"""
        logger.info(f"Characterizing {len(paths)} images")
        rows = parallel_map(self.evaluate_single, list(paths), desc="characterize")
        columns = ["path"] + [f"d_{n}" for n in range(1, len(self.targets) + 1)] + [
            f"cssim_{n}" for n in range(1, len(self.targets) + 1)
        ]
        return pd.DataFrame(rows, columns=columns)

    def config_echo(self) -> Dict[str, Any]:
        return {
            "ref": self.ref.to_json_dict(),
            "targets": [t.to_json_dict() for t in self.targets],
            "target_names": [t.name for t in self.targets],
            "mapper": self.mapper_kind.value,
            "source": self.source.name,
            "transfer": self.transfer.label() if self.transfer else None,
            "sigmoid": self.params.model_dump(),
        }

    def save_results(self, table: pd.DataFrame, output_file: Path, config: Optional[Dict[str, Any]] = None) -> Path:
        """Save the per-image table with its metadata header"""
        metadata = report_metadata(pipeline_config.CHARACTERIZE_FORMAT, config or self.config_echo())
        return write_csv_report(table, metadata, output_file)

    def print_summary(self, table: pd.DataFrame):
        """Log per-target means of the predicted MOS"""
        logger.info("=" * 60)
        logger.info("CHARACTERIZATION SUMMARY")
        logger.info("=" * 60)
        logger.info(f"Images: {len(table)}")
        for n, target in enumerate(self.targets, start=1):
            column = table[f"d_{n}"]
            logger.info(f"d_{n} ({target.name}): mean {column.mean():.4f}, range [{column.min():.4f}, {column.max():.4f}]")
        logger.info("=" * 60)
