"""
CID-gain benchmark of gamut mapping algorithms over repeated content selections
"""
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from loguru import logger

from wcgkit.config import pipeline_config, settings
from wcgkit.exceptions import DegenerateInputError, EmptyPoolError, GamutMappingError, ImageFormatError
from wcgkit.models import (
    Alternative,
    BenchmarkReport,
    CidGainRecord,
    Gamut,
    LinearImage,
    MapperKind,
    MethodComparison,
    SelectionConfig,
    SelectionFeature,
    TransferFunction,
    TrialStatistic,
)
from wcgkit.colorimetry import builtin_gamut, out_of_gamut_fraction
from wcgkit.imaging import load_image
from wcgkit.mapping import GamutMapper, clip_to_gamut, get_mapper
from wcgkit.perceptual import characterize
from wcgkit.selection import colorfulness, select_representative
from wcgkit.stats import bonferroni_threshold, f_test, welch_t
from wcgkit.utils import derive_seed, parallel_map, report_metadata, stable_mean, write_csv_report, write_json_report
from wcgkit.evaluation.cid import cid


def cid_gain(I0: LinearImage, mapper_a: GamutMapper, mapper_b: GamutMapper, target: Gamut) -> float:
    """
    g_t = cid(I0, A(I0)) - cid(I0, B(I0)); positive when B preserves I0 better

    I0 is brought into the mappers' source gamut first (clipping if needed).
    """
    if mapper_a.target != target or mapper_b.target != target:
        raise GamutMappingError(f"Both mappers must map into '{target.name}'")
    if mapper_a.source != mapper_b.source:
        raise GamutMappingError("Both mappers must share a source gamut")
    source = mapper_a.source
    if I0.gamut != source:
        I0 = clip_to_gamut(I0, I0.gamut, source)
    return cid(I0, mapper_a.apply(I0)) - cid(I0, mapper_b.apply(I0))


def _spread(values: Sequence[float], mean: float) -> float:
    return math.sqrt(math.fsum((v - mean) ** 2 for v in values) / len(values))


class GamutMappingBenchmark:
    """Compares two gamut mapping algorithms over a filtered image pool"""

    def __init__(
        self,
        ref: Optional[Gamut] = None,
        targets: Optional[Sequence[Gamut]] = None,
        mapper_a: Union[MapperKind, str] = MapperKind.COMPRESS,
        mapper_b: Union[MapperKind, str] = MapperKind.CLIP,
        source: Optional[Gamut] = None,
        transfer: Optional[TransferFunction] = None,
        methods: Sequence[Union[SelectionFeature, str]] = tuple(SelectionFeature),
        k: int = pipeline_config.SELECTION_K,
        per_cluster: int = pipeline_config.SELECTION_PER_CLUSTER,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        threshold: Optional[float] = None,
        dir_a: Optional[Path] = None,
        dir_b: Optional[Path] = None,
    ):
        """
        Initialize benchmark

        Args:
            ref: Reference gamut of the pool (default Rec2020)
            targets: Target gamuts (default P3, Rec709, Toy)
            mapper_a: Algorithm A (default compression)
            mapper_b: Algorithm B (default clipping)
            source: Encoding gamut of the files (default ref)
            transfer: EOTF of the files
            methods: Selection methods; the first is compared against the rest
            k: Clusters per selection
            per_cluster: Images drawn per cluster
            trials: Repeated selections per method
            seed: Master seed
            threshold: Minimum fraction of pixels outside Rec709 for pool membership
            dir_a: Pre-mapped images of A laid out as <dir>/<target>/<file>
            dir_b: Pre-mapped images of B, same layout
        """
        self.ref = ref or builtin_gamut(pipeline_config.BENCHMARK_REF)
        self.targets = list(targets or [builtin_gamut(n) for n in pipeline_config.BENCHMARK_TARGETS])
        self.mapper_a = MapperKind(mapper_a)
        self.mapper_b = MapperKind(mapper_b)
        self.source = source or self.ref
        self.transfer = transfer
        self.methods = [SelectionFeature(m) for m in methods]
        self.k = k
        self.per_cluster = per_cluster
        self.trials = settings.default_trials if trials is None else int(trials)
        self.seed = settings.default_seed if seed is None else int(seed)
        self.threshold = settings.wcg_pixel_threshold if threshold is None else float(threshold)
        self.dir_a = Path(dir_a) if dir_a else None
        self.dir_b = Path(dir_b) if dir_b else None

        self.feature_ref = builtin_gamut(pipeline_config.CHARACTERIZE_REF)
        self.feature_targets = [builtin_gamut(n) for n in pipeline_config.CHARACTERIZE_TARGETS]
        self.rec709 = builtin_gamut("Rec709")
        logger.info(
            f"Benchmark initialized: ref={self.ref.name}, targets={[t.name for t in self.targets]}, "
            f"A={self._label(self.dir_a, self.mapper_a)}, B={self._label(self.dir_b, self.mapper_b)}, "
            f"methods={[m.value for m in self.methods]}, trials={self.trials}"
        )

    @staticmethod
    def _label(directory: Optional[Path], kind: MapperKind) -> str:
        return f"dir:{directory}" if directory else kind.value

    def _mapped(self, img: LinearImage, name: str, target: Gamut,
                directory: Optional[Path], kind: MapperKind) -> LinearImage:
        if directory is None:
            return get_mapper(kind, self.ref, target).apply(img)
        path = directory / target.name / name
        mapped = load_image(path, target, self.transfer)
        if mapped.planes.shape != img.planes.shape:
            raise ImageFormatError(f"{path}: size differs from the reference image")
        return mapped

    def load_pool(self, paths: Sequence[Path]) -> tuple:
        """
        Load images and keep those with enough pixels outside Rec709

        Returns:
            (kept names, kept images in ref, filtered-out names)
        """
        def load(path: Path):
            img = load_image(path, self.source, self.transfer)
            fraction = out_of_gamut_fraction(img, self.source, self.rec709)
            if self.source != self.ref:
                img = clip_to_gamut(img, self.source, self.ref)
            return img, fraction

        loaded = parallel_map(load, list(paths), desc="load")
        kept, images, dropped = [], [], []
        for path, (img, fraction) in zip(paths, loaded):
            if fraction > self.threshold:
                kept.append(Path(path).name)
                images.append(img)
            else:
                dropped.append(Path(path).name)
                logger.warning(f"Dropped {Path(path).name}: {fraction:.4%} of pixels outside Rec709")
        if not kept:
            raise EmptyPoolError(f"No image has more than {self.threshold:.2%} of pixels outside Rec709")
        return kept, images, dropped

    def evaluate_single(self, name: str, img: LinearImage) -> List[CidGainRecord]:
        """CID gain records of one image for every target"""
        records = []
        for target in self.targets:
            cid_a = cid(img, self._mapped(img, name, target, self.dir_a, self.mapper_a))
            cid_b = cid(img, self._mapped(img, name, target, self.dir_b, self.mapper_b))
            records.append(CidGainRecord(image_id=name, target=target.name, cid_a=cid_a, cid_b=cid_b,
                                         gain=cid_a - cid_b))
        logger.debug(f"{name}: g={[round(r.gain, 6) for r in records]}")
        return records

    def selection_features(self, method: SelectionFeature, images: List[LinearImage]):
        """Per-image clustering features for a selection method"""
        if method == SelectionFeature.FRAMEWORK:
            def features(img):
                return characterize(img, self.feature_ref, self.feature_targets, MapperKind.CLIP).values
            return np.array(parallel_map(features, images, desc="framework features"))
        if method == SelectionFeature.COLORFULNESS:
            return np.array(parallel_map(colorfulness, images, desc="colorfulness"))[:, None]
        return len(images)

    def _selection_config(self, method: SelectionFeature, features, trial: int, method_index: int) -> SelectionConfig:
        k = self.k
        if not isinstance(features, int):
            distinct = np.unique(features, axis=0).shape[0]
            if distinct < k:
                logger.warning(f"{method.value}: only {distinct} distinct features, using k={distinct}")
                k = distinct
        return SelectionConfig(k=k, per_cluster=self.per_cluster, feature=method,
                               seed=derive_seed(self.seed, trial, method_index))

    def evaluate_batch(self, paths: Sequence[Path]) -> BenchmarkReport:
        """
        Run the full benchmark

        Args:
            paths: Candidate image files

        Returns:
            BenchmarkReport with per-image gains, per-trial statistics and method comparisons
        """
        names, images, dropped = self.load_pool(paths)
        logger.info(f"Pool: {len(names)} images kept, {len(dropped)} filtered out")

        per_image = parallel_map(lambda item: self.evaluate_single(*item), list(zip(names, images)), desc="cid gain")
        records = [r for rows in per_image for r in rows]
        gains = {(r.image_id, r.target): r.gain for r in records}

        trial_statistics = []
        for method_index, method in enumerate(self.methods):
            features = self.selection_features(method, images)
            for trial in range(self.trials):
                cfg = self._selection_config(method, features, trial, method_index)
                selected = [names[i] for i in select_representative(features, cfg).selected]
                for target in self.targets:
                    values = [gains[(name, target.name)] for name in selected]
                    mean = stable_mean(values)
                    trial_statistics.append(TrialStatistic(
                        trial=trial, method=method, target=target.name,
                        mean=mean, std=_spread(values, mean), selected=selected,
                    ))

        comparisons, threshold = self.compare_methods(trial_statistics)
        return BenchmarkReport(
            records=records,
            trial_statistics=trial_statistics,
            comparisons=comparisons,
            bonferroni_threshold=threshold,
            pool=names,
            filtered_out=dropped,
            seed=self.seed,
            metric_version=pipeline_config.CID_METRIC_VERSION,
        )

    def compare_methods(self, trial_statistics: List[TrialStatistic]) -> tuple:
        """
        One-sided F-tests (framework variance smaller) and Welch t-tests
        (framework value larger) of the first method against every other one
        """
        if len(self.methods) < 2 or self.trials < 2:
            return [], None
        lead, baselines = self.methods[0], self.methods[1:]

        def population(method, target, statistic):
            return [getattr(s, statistic) for s in trial_statistics
                    if s.method == method and s.target == target.name]

        pending = []
        for target in self.targets:
            for statistic in ("mean", "std"):
                lead_values = population(lead, target, statistic)
                for baseline in baselines:
                    other = population(baseline, target, statistic)
                    try:
                        pending.append((target.name, statistic, baseline,
                                        f_test(lead_values, other, Alternative.LESS),
                                        welch_t(lead_values, other, Alternative.GREATER)))
                    except DegenerateInputError as e:
                        logger.warning(f"Skipped {target.name}/{statistic} vs {baseline.value}: {e}")

        if not pending:
            return [], None
        threshold = bonferroni_threshold(pipeline_config.SIGNIFICANCE_ALPHA, 2 * len(pending))
        comparisons = [
            MethodComparison(target=target, statistic=statistic, baseline=baseline, f_test=f, t_test=t,
                             f_significant=f.p_value < threshold, t_significant=t.p_value < threshold)
            for target, statistic, baseline, f, t in pending
        ]
        return comparisons, threshold

    def config_echo(self) -> Dict[str, Any]:
        return {
            "ref": self.ref.name,
            "targets": [t.name for t in self.targets],
            "mapper_a": self._label(self.dir_a, self.mapper_a),
            "mapper_b": self._label(self.dir_b, self.mapper_b),
            "source": self.source.name,
            "transfer": self.transfer.label() if self.transfer else None,
            "methods": [m.value for m in self.methods],
            "k": self.k,
            "per_cluster": self.per_cluster,
            "trials": self.trials,
            "threshold": self.threshold,
            "feature_space": {"ref": self.feature_ref.name, "targets": [t.name for t in self.feature_targets]},
        }

    def save_results(self, report: BenchmarkReport, csv_file: Path, json_file: Path,
                     config: Optional[Dict[str, Any]] = None) -> tuple:
        """Write the per-image gains (CSV) and the statistics block (JSON)"""
        config = config or self.config_echo()
        table = pd.DataFrame([r.model_dump() for r in report.records],
                             columns=["image_id", "target", "cid_a", "cid_b", "gain"])
        meta = report_metadata(pipeline_config.BENCHMARK_FORMAT, config, report.seed)
        meta["metric_version"] = report.metric_version
        csv_path = write_csv_report(table, meta, csv_file)

        payload = dict(meta)
        payload.update(report.model_dump(mode="json", exclude={"records"}))
        payload["summary"] = self.summarize(report)
        json_path = write_json_report(payload, json_file)
        return csv_path, json_path

    def summarize(self, report: BenchmarkReport) -> Dict[str, Any]:
        """Mean over trials of the per-trial mean and std, per method and target"""
        summary: Dict[str, Any] = {}
        for method in self.methods:
            rows = {}
            for target in self.targets:
                stats = [s for s in report.trial_statistics if s.method == method and s.target == target.name]
                if stats:
                    rows[target.name] = {
                        "mean": stable_mean(s.mean for s in stats),
                        "std": stable_mean(s.std for s in stats),
                    }
            summary[method.value] = rows
        return summary

    def print_summary(self, report: BenchmarkReport):
        """Log the benchmark summary"""
        logger.info("=" * 60)
        logger.info("BENCHMARK SUMMARY")
        logger.info("=" * 60)
        logger.info(f"Pool: {len(report.pool)} images ({len(report.filtered_out)} filtered out)")
        for method, rows in self.summarize(report).items():
            for target, row in rows.items():
                logger.info(f"{method:<13} {target:<8} mean g {row['mean']:+.5f}  std g {row['std']:.5f}")
        for c in report.comparisons:
            logger.info(
                f"{c.target:<8} {c.statistic:<4} vs {c.baseline.value:<12} "
                f"F={c.f_test.statistic:.3f} (p={c.f_test.p_value:.2e}{'*' if c.f_significant else ''})  "
                f"t={c.t_test.statistic:.3f} (p={c.t_test.p_value:.2e}{'*' if c.t_significant else ''})"
            )
        logger.info("=" * 60)


def benchmark(
    pool: Sequence[Path],
    mappers: Sequence[Union[MapperKind, str]] = (MapperKind.COMPRESS, MapperKind.CLIP),
    targets: Optional[Sequence[Gamut]] = None,
    methods: Sequence[Union[SelectionFeature, str]] = tuple(SelectionFeature),
    trials: Optional[int] = None,
    **kwargs,
) -> BenchmarkReport:
    """Functional entry point around GamutMappingBenchmark"""
    mapper_a, mapper_b = mappers
    runner = GamutMappingBenchmark(targets=targets, mapper_a=mapper_a, mapper_b=mapper_b,
                                   methods=methods, trials=trials, **kwargs)
    return runner.evaluate_batch(pool)

