"""
Command-line front end: map, characterize, criteria, select, benchmark, stats, gen-corpus
"""
import argparse
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import ValidationError

from wcgkit import __version__
from wcgkit.config import pipeline_config, settings
from wcgkit.exceptions import DegenerateInputError, WCGError
from wcgkit.models import (
    Alternative,
    CorpusSpec,
    MapperKind,
    RunConfig,
    SelectionConfig,
    SelectionFeature,
)
from wcgkit.colorimetry import resolve_gamut
from wcgkit.corpus import gen_corpus
from wcgkit.criteria import FeatureMatrix, report as criteria_report
from wcgkit.evaluation import GamutMappingBenchmark
from wcgkit.imaging import default_transfer, list_images, load_image, parse_transfer, save_image
from wcgkit.mapping import get_mapper
from wcgkit.perceptual import WCGCharacterizer
from wcgkit.selection import colorfulness, compare_robustness, robustness_protocol, select_representative, sweep_k
from wcgkit.stats import f_test, pearson, welch_t
from wcgkit.utils import (
    LoggerSetup,
    parallel_map,
    read_csv_report,
    report_metadata,
    split_list,
    write_csv_report,
    write_json_report,
)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _gamut_list(value: str):
    gamuts = [resolve_gamut(item) for item in split_list(value)]
    if not gamuts:
        raise ValueError("At least one gamut is required")
    return gamuts


def _int_list(value: str) -> List[int]:
    return [int(item) for item in split_list(value)]


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2 ** 64:
        raise ValueError("Seed must be a 64-bit unsigned integer")
    return seed


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for all subcommands"""
    parser = argparse.ArgumentParser(
        prog="wcgkit",
        description="Wide-color-gamut content characterization and gamut mapping benchmarks",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Override WCG_LOG_LEVEL")
    parser.add_argument("--log-file", type=Path, default=None, help="Also log to a rotating file")
    sub = parser.add_subparsers(dest="command", required=True)

    # map
    p = sub.add_parser("map", help="Gamut-map one image")
    p.add_argument("--op", choices=[k.value for k in MapperKind], required=True)
    p.add_argument("--src", type=resolve_gamut, required=True)
    p.add_argument("--dst", type=resolve_gamut, required=True)
    p.add_argument("--in", "--input", dest="input", type=Path, required=True)
    p.add_argument("--out", "--output", dest="output", type=Path, required=True)
    p.add_argument("--transfer", type=parse_transfer, default=None, help="Default: as decoded (sRGB, linear for float TIFF)")
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=16)

    # characterize
    p = sub.add_parser("characterize", help="Perceptual-difference features of a directory of images")
    p.add_argument("--input-dir", type=Path, required=True)
    p.add_argument("--output", type=Path, required=True, help=".csv or .json")
    p.add_argument("--ref", type=resolve_gamut, default=resolve_gamut(pipeline_config.CHARACTERIZE_REF))
    p.add_argument("--targets", type=_gamut_list, default=",".join(pipeline_config.CHARACTERIZE_TARGETS))
    p.add_argument("--mapper", choices=[k.value for k in MapperKind], default=MapperKind.CLIP.value)
    p.add_argument("--source", type=resolve_gamut, default=None, help="Encoding gamut of the files (default: ref)")
    p.add_argument("--transfer", type=parse_transfer, default=None)

    # criteria
    p = sub.add_parser("criteria", help="Coverage and uniformity of a characterize table")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--output", type=Path, required=True)
    p.add_argument("--bins", type=int, default=settings.histogram_bins)
    p.add_argument("--scale", type=float, default=settings.mos_scale)

    # select
    p = sub.add_parser("select", help="Representative content selection")
    p.add_argument("--input", type=Path, required=True, help="characterize table")
    p.add_argument("--output", type=Path, required=True)
    p.add_argument("--feature", choices=[f.value for f in SelectionFeature], default=SelectionFeature.FRAMEWORK.value)
    p.add_argument("--k", type=int, default=pipeline_config.SELECTION_K)
    p.add_argument("--per-cluster", type=int, default=pipeline_config.SELECTION_PER_CLUSTER)
    p.add_argument("--seed", type=_seed, default=settings.default_seed)
    p.add_argument("--image-dir", type=Path, default=None, help="Images of the table (colorfulness)")
    p.add_argument("--source", type=resolve_gamut, default=None)
    p.add_argument("--transfer", type=parse_transfer, default=None)
    p.add_argument("--robustness", action="store_true", help="Run the repeated-selection protocol")
    p.add_argument("--compare", action="store_true", help="Compare robustness against random selection")
    p.add_argument("--sweep-k", type=_int_list, default=None, help="Cluster counts for the comparison sweep")
    p.add_argument("--trials", type=int, default=settings.default_trials)
    p.add_argument("--truth-column", default=None, help="Per-image ground truth column (default: last d_n)")

    # benchmark
    p = sub.add_parser("benchmark", help="CID-gain benchmark of two gamut mapping algorithms")
    p.add_argument("--input-dir", type=Path, required=True)
    p.add_argument("--output-csv", type=Path, required=True)
    p.add_argument("--output-json", type=Path, required=True)
    p.add_argument("--ref", type=resolve_gamut, default=resolve_gamut(pipeline_config.BENCHMARK_REF))
    p.add_argument("--targets", type=_gamut_list, default=",".join(pipeline_config.BENCHMARK_TARGETS))
    p.add_argument("--mapper-a", choices=[k.value for k in MapperKind], default=MapperKind.COMPRESS.value)
    p.add_argument("--mapper-b", choices=[k.value for k in MapperKind], default=MapperKind.CLIP.value)
    p.add_argument("--dir-a", type=Path, default=None, help="Pre-mapped images <dir>/<target>/<file>")
    p.add_argument("--dir-b", type=Path, default=None)
    p.add_argument("--select", type=split_list, default=",".join(f.value for f in SelectionFeature))
    p.add_argument("--k", type=int, default=pipeline_config.SELECTION_K)
    p.add_argument("--per-cluster", type=int, default=pipeline_config.SELECTION_PER_CLUSTER)
    p.add_argument("--trials", type=int, default=settings.default_trials)
    p.add_argument("--seed", type=_seed, default=settings.default_seed)
    p.add_argument("--threshold", type=float, default=settings.wcg_pixel_threshold)
    p.add_argument("--source", type=resolve_gamut, default=None)
    p.add_argument("--transfer", type=parse_transfer, default=None)

    # stats
    p = sub.add_parser("stats", help="Hypothesis tests on two table columns")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--input-b", type=Path, default=None, help="Table holding column b (default: --input)")
    p.add_argument("--column-a", required=True)
    p.add_argument("--column-b", required=True)
    p.add_argument("--test", choices=["welch", "f", "pearson", "all"], default="all")
    p.add_argument("--alternative", choices=[a.value for a in Alternative], default=Alternative.TWO_SIDED.value)
    p.add_argument("--output", type=Path, required=True)

    # gen-corpus
    p = sub.add_parser("gen-corpus", help="Write the synthetic test corpus")
    p.add_argument("--out-dir", type=Path, required=True)
    p.add_argument("--sweeps", type=int, default=24)
    p.add_argument("--in-gamut", type=int, default=8)
    p.add_argument("--noise", type=int, default=8)
    p.add_argument("--mosaics", type=int, default=4)
    p.add_argument("--size", type=int, default=256)
    p.add_argument("--seed", type=_seed, default=settings.default_seed)
    p.add_argument("--gamut", default="P3")
    p.add_argument("--inner-gamut", default="Rec709")
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=16)

    return parser


def _echo_value(value: Any) -> Any:
    if isinstance(value, Path):
        return value.name
    if hasattr(value, "name") and hasattr(value, "red"):
        return value.name
    if hasattr(value, "label"):
        return value.label()
    if isinstance(value, list):
        return [_echo_value(v) for v in value]
    return value


def _run_config(args: argparse.Namespace) -> Dict[str, Any]:
    """Config echo; paths are reduced to file names so reruns elsewhere match"""
    skip = {"command", "log_level", "log_file"}
    options = {k: _echo_value(v) for k, v in sorted(vars(args).items()) if k not in skip}
    return RunConfig(subcommand=args.command, options=options, seed=getattr(args, "seed", None)).model_dump()


def cmd_map(args: argparse.Namespace) -> int:
    transfer = args.transfer or default_transfer(args.input)
    img = load_image(args.input, args.src, transfer)
    mapped = get_mapper(args.op, args.src, args.dst).apply(img)
    save_image(mapped, args.output, transfer=transfer, bit_depth=args.bit_depth)
    logger.info(f"Mapped {args.input.name} ({args.op}: {args.src.name} -> {args.dst.name})")
    return EXIT_OK


def cmd_characterize(args: argparse.Namespace) -> int:
    characterizer = WCGCharacterizer(
        ref=args.ref,
        targets=args.targets,
        mapper_kind=args.mapper,
        source=args.source,
        transfer=args.transfer,
    )
    table = characterizer.evaluate_batch(list_images(args.input_dir))
    config = _run_config(args)
    config["target_names"] = [t.name for t in args.targets]
    if args.output.suffix.lower() == ".json":
        payload = report_metadata(pipeline_config.CHARACTERIZE_FORMAT, config)
        payload["rows"] = table.to_dict(orient="records")
        write_json_report(payload, args.output)
    else:
        characterizer.save_results(table, args.output, config)
    characterizer.print_summary(table)
    return EXIT_OK


def _load_features(path: Path) -> tuple:
    table, metadata = read_csv_report(path)
    target_names = metadata.get("config", {}).get("target_names")
    return table, metadata, target_names


def cmd_criteria(args: argparse.Namespace) -> int:
    table, _, target_names = _load_features(args.input)
    matrix = FeatureMatrix.from_table(table, target_names, scale=args.scale)
    result = criteria_report(matrix, args.bins)
    payload = report_metadata(pipeline_config.CRITERIA_FORMAT, _run_config(args))
    payload.update(result.model_dump())
    write_json_report(payload, args.output)
    return EXIT_OK


def _selection_features(args: argparse.Namespace, table: pd.DataFrame):
    feature = SelectionFeature(args.feature)
    if feature == SelectionFeature.FRAMEWORK:
        return FeatureMatrix.from_table(table).values
    if feature == SelectionFeature.COLORFULNESS:
        if args.image_dir is None:
            raise DegenerateInputError("Colorfulness selection needs --image-dir")
        source = args.source or resolve_gamut(pipeline_config.CHARACTERIZE_REF)
        paths = [args.image_dir / name for name in table["path"]]
        return np.array(parallel_map(
            lambda p: colorfulness(load_image(p, source, args.transfer)), paths, desc="colorfulness"
        ))[:, None]
    return len(table)


def cmd_select(args: argparse.Namespace) -> int:
    table, _, _ = _load_features(args.input)
    names = [str(n) for n in table["path"]]
    features = _selection_features(args, table)
    cfg = SelectionConfig(k=args.k, per_cluster=args.per_cluster, seed=args.seed, feature=args.feature)

    result = select_representative(features, cfg)
    payload = report_metadata(pipeline_config.SELECTION_FORMAT, _run_config(args), args.seed)
    payload["selected"] = [names[i] for i in result.selected]
    payload["clusters"] = [
        dict(c.model_dump(), selected=[names[i] for i in c.selected]) for c in result.clusters
    ]

    if args.robustness or args.compare or args.sweep_k:
        truth_column = args.truth_column or FeatureMatrix.from_table(table).target_names[-1]
        truth = table[truth_column].to_numpy(dtype=np.float64)
        if args.sweep_k:
            sweep = sweep_k(features, truth, cfg, args.sweep_k, args.trials)
            payload["sweep_k"] = [c.model_dump(mode="json") for c in sweep]
        elif args.compare:
            comparison = compare_robustness(features, truth, cfg, args.trials)
            payload["pcc_trials"] = comparison.framework.pcc
            payload["comparison"] = comparison.model_dump(mode="json")
        else:
            robustness = robustness_protocol(features, truth, cfg, args.trials)
            payload["pcc_trials"] = robustness.pcc
            payload["excluded_trials"] = robustness.excluded_trials

    write_json_report(payload, args.output)
    return EXIT_OK


def cmd_benchmark(args: argparse.Namespace) -> int:
    runner = GamutMappingBenchmark(
        ref=args.ref,
        targets=args.targets,
        mapper_a=args.mapper_a,
        mapper_b=args.mapper_b,
        source=args.source,
        transfer=args.transfer,
        methods=args.select,
        k=args.k,
        per_cluster=args.per_cluster,
        trials=args.trials,
        seed=args.seed,
        threshold=args.threshold,
        dir_a=args.dir_a,
        dir_b=args.dir_b,
    )
    report = runner.evaluate_batch(list_images(args.input_dir))
    config = dict(_run_config(args), benchmark=runner.config_echo())
    runner.save_results(report, args.output_csv, args.output_json, config)
    runner.print_summary(report)
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    table_a, _ = read_csv_report(args.input)
    table_b = read_csv_report(args.input_b)[0] if args.input_b else table_a
    a = table_a[args.column_a].dropna().to_numpy(dtype=np.float64)
    b = table_b[args.column_b].dropna().to_numpy(dtype=np.float64)

    payload = report_metadata(pipeline_config.STATS_FORMAT, _run_config(args))
    if args.test in ("welch", "all"):
        payload["welch_t"] = welch_t(a, b, args.alternative).model_dump(mode="json")
    if args.test in ("f", "all"):
        payload["f_test"] = f_test(a, b, args.alternative).model_dump(mode="json")
    if args.test in ("pearson", "all"):
        payload["pearson"] = pearson(a, b)
    write_json_report(payload, args.output)
    return EXIT_OK


def cmd_gen_corpus(args: argparse.Namespace) -> int:
    spec = CorpusSpec(
        sweeps=args.sweeps,
        in_gamut=args.in_gamut,
        noise=args.noise,
        mosaics=args.mosaics,
        size=args.size,
        seed=args.seed,
        gamut=args.gamut,
        inner_gamut=args.inner_gamut,
        bit_depth=args.bit_depth,
    )
    paths = gen_corpus(args.out_dir, spec)
    logger.info(f"Wrote {len(paths)} images to {args.out_dir}")
    return EXIT_OK


COMMANDS = {
    "map": cmd_map,
    "characterize": cmd_characterize,
    "criteria": cmd_criteria,
    "select": cmd_select,
    "benchmark": cmd_benchmark,
    "stats": cmd_stats,
    "gen-corpus": cmd_gen_corpus,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv and dispatch to a subcommand

    Returns:
        0 on success, 2 on usage errors, 1 on runtime errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    LoggerSetup.setup(args.log_level or settings.log_level, args.log_file or settings.log_file)
    try:
        return COMMANDS[args.command](args)
    except (WCGError, ValidationError, OSError, KeyError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_RUNTIME
