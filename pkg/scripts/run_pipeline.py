"""
Run gen-corpus -> characterize -> criteria -> select -> benchmark twice and
verify that both runs produce byte-identical reports
"""
import argparse
import filecmp
import sys
import tempfile
from pathlib import Path

from loguru import logger

# Add parent to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from wcgkit.main import run

REPORTS = ("features.csv", "criteria.json", "selection.json", "gains.csv", "benchmark.json")


def run_pipeline(workdir: Path, seed: int, size: int, trials: int) -> bool:
    """One full pass into workdir; False when a stage fails"""
    corpus = workdir / "corpus"
    stages = [
        ["gen-corpus", "--out-dir", str(corpus), "--size", str(size), "--seed", str(seed)],
        ["characterize", "--input-dir", str(corpus), "--output", str(workdir / "features.csv")],
        ["criteria", "--input", str(workdir / "features.csv"), "--output", str(workdir / "criteria.json")],
        ["select", "--input", str(workdir / "features.csv"), "--output", str(workdir / "selection.json"),
         "--seed", str(seed), "--robustness", "--trials", str(trials)],
        ["benchmark", "--input-dir", str(corpus), "--output-csv", str(workdir / "gains.csv"),
         "--output-json", str(workdir / "benchmark.json"), "--source", "P3",
         "--seed", str(seed), "--trials", str(trials)],
    ]
    for i, argv in enumerate(stages, 1):
        logger.info(f"{i}. {argv[0]}")
        code = run(["--log-level", "WARNING"] + argv)
        if code != 0:
            logger.error(f"Stage {argv[0]} exited with {code}")
            return False
    return True


def main():
    """Main entry point"""
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--size", type=int, default=64)
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--keep", type=Path, default=None, help="Directory to keep both runs in")
    args = parser.parse_args()

    logger.info("=" * 60)
    logger.info("WCG PIPELINE REPRODUCIBILITY CHECK")
    logger.info("=" * 60)

    with tempfile.TemporaryDirectory() as tmp:
        root = args.keep or Path(tmp)
        runs = [root / "run1", root / "run2"]
        for workdir in runs:
            workdir.mkdir(parents=True, exist_ok=True)
            if not run_pipeline(workdir, args.seed, args.size, args.trials):
                logger.error("✗ Pipeline FAILED")
                return 1

        mismatched = [name for name in REPORTS if not filecmp.cmp(runs[0] / name, runs[1] / name, shallow=False)]

    logger.info("=" * 60)
    if mismatched:
        logger.error(f"✗ Reports differ between runs: {', '.join(mismatched)}")
        return 1
    logger.info(f"✓ All {len(REPORTS)} reports are byte-identical")
    logger.info("=" * 60)
    return 0


if __name__ == "__main__":
    sys.exit(main())
