"""Command-line harness: configuration, experiments and file output."""

from .config import ExperimentConfig
from .experiments import (ComparisonReport, run_compare, run_damping, run_figures,
                          run_mms, run_simulate, run_sweep)

__all__ = ["ExperimentConfig", "ComparisonReport", "run_simulate", "run_mms",
           "run_compare", "run_damping", "run_sweep", "run_figures"]
