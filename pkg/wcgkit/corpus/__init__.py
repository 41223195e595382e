"""Synthetic corpus generation"""
from .generator import KINDS, build_image, corpus_entries, gen_corpus, hue_to_rgb, mosaic_anchors, sweep_planes

__all__ = ["KINDS", "build_image", "corpus_entries", "gen_corpus", "hue_to_rgb", "mosaic_anchors", "sweep_planes"]
