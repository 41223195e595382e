"""Evaluation package: CID metric and gamut mapping benchmark"""
from .cid import cid, cid_factors
from .benchmark import GamutMappingBenchmark, benchmark, cid_gain

__all__ = [
    "cid",
    "cid_factors",
    "GamutMappingBenchmark",
    "benchmark",
    "cid_gain",
]
