"""Campaign orchestration: config, execution, persistence, reports."""
from .analyze import ANALYSIS_PARAMS, AnalyzeError, run_analyze
from .config import (
    ConfigError,
    ExperimentConfig,
    OptimizerEntry,
    load_config,
    parse_config,
)
from .features import FeaturesError, load_features_csv, run_features
from .runner import (
    cell_seed,
    execute_cell,
    plan_cells,
    plan_problems,
    run_campaign,
    stable_seed,
)
from .store import ResultStore, StoreError

__all__ = [
    "ANALYSIS_PARAMS",
    "AnalyzeError",
    "ConfigError",
    "ExperimentConfig",
    "FeaturesError",
    "OptimizerEntry",
    "ResultStore",
    "StoreError",
    "cell_seed",
    "execute_cell",
    "load_config",
    "load_features_csv",
    "parse_config",
    "plan_cells",
    "plan_problems",
    "run_analyze",
    "run_campaign",
    "run_features",
    "stable_seed",
]
