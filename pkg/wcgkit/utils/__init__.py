"""Utilities package"""
from .helpers import (
    derive_seed,
    parallel_map,
    round_significant,
    report_metadata,
    dump_json,
    write_json_report,
    write_csv_report,
    read_csv_report,
    split_list,
    stable_mean,
    LoggerSetup,
)

__all__ = [
    "derive_seed",
    "parallel_map",
    "round_significant",
    "report_metadata",
    "dump_json",
    "write_json_report",
    "write_csv_report",
    "read_csv_report",
    "split_list",
    "stable_mean",
    "LoggerSetup",
]
