"""
Utility functions shared by the WCG toolkit components
"""
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np
import pandas as pd
from loguru import logger
from tqdm import tqdm

from wcgkit import __version__
from wcgkit.config import pipeline_config, settings

T = TypeVar("T")
R = TypeVar("R")


def derive_seed(master: int, *keys: int) -> int:
    """
    Derive an independent 64-bit sub-seed from a master seed and a key path

    Args:
        master: Master seed
        keys: Stream identifiers (trial index, method index, ...)

    Returns:
        Sub-seed that depends only on (master, keys)
    """
    sequence = np.random.SeedSequence(entropy=int(master), spawn_key=tuple(int(k) for k in keys))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def parallel_map(
    fn: Callable[[T], R],
    items: Sequence[T],
    desc: Optional[str] = None,
    threads: Optional[int] = None,
) -> List[R]:
    """
    Apply fn to every item with a bounded thread pool, preserving input order

    Args:
        fn: Per-item function (must not share mutable state)
        items: Inputs
        desc: Progress bar label, no bar when None
        threads: Worker cap, defaults to settings.threads

    Returns:
        Results in the order of items
    """
    workers = max(1, min(threads or settings.threads, len(items) or 1))
    progress = desc is not None and len(items) > 1
    if workers == 1:
        iterator = map(fn, items)
        return list(tqdm(iterator, total=len(items), desc=desc, disable=not progress, file=sys.stderr))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        iterator = pool.map(fn, items)
        return list(tqdm(iterator, total=len(items), desc=desc, disable=not progress, file=sys.stderr))


def round_significant(value: Any, digits: int = pipeline_config.SIGNIFICANT_DIGITS) -> Any:
    """Recursively round floats in a JSON-like structure to significant digits"""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not np.isfinite(value):
            return None
        return float(f"{value:.{digits}g}")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {str(k): round_significant(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_significant(v, digits) for v in value]
    if isinstance(value, np.ndarray):
        return round_significant(value.tolist(), digits)
    if isinstance(value, Path):
        return str(value)
    return value


def report_metadata(report_format: str, config: Dict[str, Any], seed: Optional[int] = None) -> Dict[str, Any]:
    """Self-describing header embedded in every report"""
    return {
        "tool": "wcgkit",
        "version": __version__,
        "format": report_format,
        "config": config,
        "seed": seed,
    }


def dump_json(payload: Dict[str, Any]) -> str:
    """Deterministic JSON text for reports"""
    return json.dumps(round_significant(payload), indent=2, sort_keys=True) + "\n"


def write_json_report(payload: Dict[str, Any], output_file: Path) -> Path:
    """Save a JSON report"""
    output_path = Path(output_file)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dump_json(payload))
    logger.info(f"Report saved to {output_path}")
    return output_path


def write_csv_report(table: pd.DataFrame, metadata: Dict[str, Any], output_file: Path) -> Path:
    """Save a per-row table preceded by a '# {metadata}' line"""
    output_path = Path(output_file)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    header = json.dumps(round_significant(metadata), sort_keys=True, separators=(",", ":"))
    with open(output_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"# {header}\n")
        table.to_csv(f, index=False, float_format="%.9g", lineterminator="\n")
    logger.info(f"Table saved to {output_path} ({len(table)} rows)")
    return output_path


def read_csv_report(input_file: Path) -> Tuple[pd.DataFrame, Dict[str, Any]]:
    """Load a table written by write_csv_report, returning (table, metadata)"""
    input_path = Path(input_file)
    metadata: Dict[str, Any] = {}
    with open(input_path, "r", encoding="utf-8") as f:
        first = f.readline()
    if first.startswith("# "):
        try:
            metadata = json.loads(first[2:])
        except json.JSONDecodeError:
            logger.warning(f"Unparseable metadata line in {input_path}")
    table = pd.read_csv(input_path, comment="#")
    return table, metadata


def split_list(value: str) -> List[str]:
    """Split a comma-separated CLI list"""
    return [item.strip() for item in value.split(",") if item.strip()]


def stable_mean(values: Iterable[float]) -> float:
    """Order-independent-precision mean (compensated summation)"""
    values = [float(v) for v in values]
    if not values:
        return float("nan")
    return math.fsum(values) / len(values)


class LoggerSetup:
    """Setup logging configuration"""

    @staticmethod
    def setup(level: str = "INFO", log_file: Optional[Path] = None):
        """Configure logger: stderr sink plus an optional rotating file"""
        logger.remove()
        logger.add(
            sys.stderr,
            level=level.upper(),
            format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{message}</cyan>",
        )
        if log_file is not None:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            logger.add(
                str(log_file),
                rotation="10 MB",
                retention="10 days",
                level=level.upper(),
                format="{time:YYYY-MM-DD HH:mm:ss} | {level} | {name}:{function}:{line} - {message}",
            )
        return logger
