"""
Representative content selection and its robustness protocol
"""
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

from wcgkit.config import settings
from wcgkit.exceptions import DegenerateInputError, DomainError
from wcgkit.models import (
    Alternative,
    ClusterSelection,
    LinearImage,
    RobustnessComparison,
    RobustnessResult,
    SelectionConfig,
    SelectionFeature,
    SelectionResult,
    TransferFunction,
)
from wcgkit.imaging import SRGB, oetf
from wcgkit.selection.clustering import kmeans
from wcgkit.stats import pearson, welch_t
from wcgkit.utils import derive_seed, parallel_map

# Sub-seed stream identifiers
_CLUSTER_STREAM = 0
_DRAW_STREAM = 1


def colorfulness(img: LinearImage, transfer: TransferFunction = SRGB, encoded: bool = True) -> float:
    """
    Opponent-channel colorfulness on [0, 255]-scaled values

    sqrt(var_rg + var_yb) + 0.3 sqrt(mean_rg^2 + mean_yb^2) with
    rg = R - G and yb = (R + G) / 2 - B.

    Args:
        img: RGB image
        transfer: OETF giving display-encoded values
        encoded: False evaluates on linear values instead

    Returns:
        Colorfulness >= 0
    """
    rgb = img.flat()
    if encoded:
        rgb = oetf(np.clip(rgb, 0.0, 1.0), transfer)
    r, g, b = rgb * 255.0
    rg = r - g
    yb = 0.5 * (r + g) - b
    spread = np.sqrt(rg.var() + yb.var())
    offset = np.sqrt(rg.mean() ** 2 + yb.mean() ** 2)
    return float(spread + 0.3 * offset)


def _as_points(features) -> np.ndarray:
    points = np.asarray(features, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    if points.ndim != 2 or points.shape[0] == 0:
        raise DegenerateInputError(f"Expected a non-empty (M, d) feature array, got {points.shape}")
    return points


def _random_selection(count: int, cfg: SelectionConfig) -> SelectionResult:
    wanted = cfg.k * cfg.per_cluster
    rng = np.random.default_rng(derive_seed(cfg.seed, _DRAW_STREAM))
    drawn = rng.choice(count, size=min(wanted, count), replace=False)
    if wanted > count:
        logger.warning(f"Random selection wanted {wanted} candidates, pool has {count}")
    cluster = ClusterSelection(
        rank=0,
        centroid=[],
        size=count,
        selected=[int(i) for i in drawn],
        shortfall=wanted > count,
    )
    return SelectionResult(clusters=[cluster], seed=cfg.seed, feature=cfg.feature)


def select_representative(features, cfg: SelectionConfig) -> SelectionResult:
    """
    Cluster candidates and draw per_cluster members from each cluster

    Clusters are ranked by lexicographic centroid order; members keep draw order.
    The random feature skips clustering and draws k * per_cluster candidates.

    Args:
        features: (M, d) per-candidate features (or M for a scalar feature)
        cfg: Selection configuration

    Returns:
        SelectionResult
    """
    if cfg.feature == SelectionFeature.RANDOM:
        count = len(features) if not isinstance(features, int) else features
        return _random_selection(int(count), cfg)

    points = _as_points(features)
    result = kmeans(points, cfg.k, derive_seed(cfg.seed, _CLUSTER_STREAM))
    rng = np.random.default_rng(derive_seed(cfg.seed, _DRAW_STREAM))

    clusters = []
    for rank in range(result.k):
        members = result.members(rank)
        take = min(cfg.per_cluster, members.size)
        drawn = rng.choice(members, size=take, replace=False)
        shortfall = members.size < cfg.per_cluster
        if shortfall:
            logger.warning(f"Cluster {rank} has {members.size} members, fewer than {cfg.per_cluster}")
        clusters.append(ClusterSelection(
            rank=rank,
            centroid=result.centroids[rank].tolist(),
            size=int(members.size),
            selected=[int(i) for i in drawn],
            shortfall=shortfall,
        ))
    return SelectionResult(clusters=clusters, seed=cfg.seed, feature=cfg.feature)


def _paired(first: SelectionResult, second: SelectionResult) -> tuple:
    """Pair selections cluster by cluster (rank order), then by draw order"""
    left, right = [], []
    for a, b in zip(first.clusters, second.clusters):
        n = min(len(a.selected), len(b.selected))
        left.extend(a.selected[:n])
        right.extend(b.selected[:n])
    return left, right


def robustness_protocol(
    features,
    mos_like: Sequence[float],
    cfg: SelectionConfig,
    trials: Optional[int] = None,
) -> RobustnessResult:
    """
    Repeat the selection twice per trial and correlate the paired ground truth

    Each trial t draws both selections from sub-seeds of (cfg.seed, t), so
    parallel and serial runs agree. Trials whose paired values have zero
    variance are excluded.

    Returns:
        RobustnessResult with one PCC per retained trial
    """
    trials = settings.default_trials if trials is None else int(trials)
    if trials < 2:
        raise DomainError(f"At least 2 trials are required, got {trials}")
    truth = np.asarray(mos_like, dtype=np.float64)
    count = truth.size
    if cfg.feature != SelectionFeature.RANDOM and _as_points(features).shape[0] != count:
        raise DegenerateInputError("features and mos_like must describe the same candidates")

    def run_trial(trial: int):
        runs = [
            select_representative(
                features if cfg.feature != SelectionFeature.RANDOM else count,
                cfg.model_copy(update={"seed": derive_seed(cfg.seed, trial, repeat)}),
            )
            for repeat in (0, 1)
        ]
        left, right = _paired(*runs)
        try:
            return pearson(truth[left], truth[right])
        except DegenerateInputError:
            return None

    outcomes = parallel_map(run_trial, list(range(trials)), desc=f"robustness[{cfg.feature.value}]")
    pcc = [r for r in outcomes if r is not None]
    excluded = [t for t, r in enumerate(outcomes) if r is None]
    if excluded:
        logger.warning(f"Excluded {len(excluded)} degenerate trials for {cfg.feature.value}")
    logger.info(
        f"Robustness ({cfg.feature.value}, k={cfg.k}): mean PCC "
        f"{np.mean(pcc) if pcc else float('nan'):.4f} over {len(pcc)} trials"
    )
    return RobustnessResult(feature=cfg.feature, pcc=pcc, excluded_trials=excluded, trials=trials)


def compare_robustness(
    features,
    mos_like: Sequence[float],
    cfg: SelectionConfig,
    trials: Optional[int] = None,
    baseline: SelectionFeature = SelectionFeature.RANDOM,
) -> RobustnessComparison:
    """
    Robustness of feature-driven selection against a baseline

    The Welch test's alternative is that the feature-driven PCCs are larger.
    """
    framework = robustness_protocol(features, mos_like, cfg, trials)
    reference = robustness_protocol(features, mos_like, cfg.model_copy(update={"feature": baseline}), trials)
    test = welch_t(framework.pcc, reference.pcc, Alternative.GREATER)
    return RobustnessComparison(k=cfg.k, framework=framework, baseline=reference, t_test=test)


def sweep_k(
    features,
    mos_like: Sequence[float],
    cfg: SelectionConfig,
    k_values: Sequence[int] = tuple(range(2, 11)),
    trials: Optional[int] = None,
) -> List[RobustnessComparison]:
    """compare_robustness for each cluster count in k_values"""
    return [
        compare_robustness(features, mos_like, cfg.model_copy(update={"k": int(k)}), trials)
        for k in k_values
    ]
