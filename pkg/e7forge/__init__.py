"""Exact construction and verification of E7 from quaternion algebras on the Fano plane."""

from .config import (
    DEFAULT_OUTPUT_DIR,
    FIXTURES_DIR,
    HAMILTON_FIXTURE,
    REPO_ROOT,
    SPLIT_FIXTURE,
)
from .fano import load_labeling, validate_labeling
from .manivel_e7 import E7Assembly, assemble
from .pipeline import E7Pipeline, PipelineConfig, build_golden, emit_golden, load_pipeline_config

__all__ = [
    "DEFAULT_OUTPUT_DIR",
    "FIXTURES_DIR",
    "HAMILTON_FIXTURE",
    "REPO_ROOT",
    "SPLIT_FIXTURE",
    "E7Assembly",
    "E7Pipeline",
    "PipelineConfig",
    "assemble",
    "build_golden",
    "emit_golden",
    "load_labeling",
    "load_pipeline_config",
    "validate_labeling",
]
