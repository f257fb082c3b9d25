"""Benchmark harness: gallery generators, the reference oracle, matrix
file I/O, the experiment runner, and the command-line interface."""

from .gallery import GALLERY_NAMES, gallery
from .io import MatrixDocument, read_matrix, write_matrix
from .oracle import oracle_gamma
from .experiment import (
    ExperimentRecord,
    default_suite,
    records_to_csv,
    records_to_json,
    run_experiment,
    smoke_suite,
)

__all__ = [
    "GALLERY_NAMES",
    "gallery",
    "MatrixDocument",
    "read_matrix",
    "write_matrix",
    "oracle_gamma",
    "ExperimentRecord",
    "default_suite",
    "smoke_suite",
    "run_experiment",
    "records_to_csv",
    "records_to_json",
]
