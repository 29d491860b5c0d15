from .cli import build_parser, list_problems, main
from .config import DISTANCE_METHODS, SCHEMA_VERSION, ExperimentConfig, load_config, parse_config
from .config_paths import MISSING, format_config_path, get_config_item, get_config_tree_item, tokenize_config_path
from .runner import (
    HASH_BLOCK_SIZE,
    JOB_CONFIG_INVALID,
    JOB_DONE_FAILED,
    JOB_DONE_SUCCESSFUL,
    LABELS_FILE,
    MANIFEST_FILE,
    REPORT_FILE,
    SWEEP_COLUMNS,
    SWEEP_FILE,
    TRAJECTORIES_FILE,
    RunOutcome,
    file_sha256,
    format_value,
    resolve_output_dir,
    run,
    run_experiment,
    write_csv,
)

__all__ = [
    "DISTANCE_METHODS",
    "ExperimentConfig",
    "HASH_BLOCK_SIZE",
    "JOB_CONFIG_INVALID",
    "JOB_DONE_FAILED",
    "JOB_DONE_SUCCESSFUL",
    "LABELS_FILE",
    "MANIFEST_FILE",
    "MISSING",
    "REPORT_FILE",
    "RunOutcome",
    "SCHEMA_VERSION",
    "SWEEP_COLUMNS",
    "SWEEP_FILE",
    "TRAJECTORIES_FILE",
    "build_parser",
    "file_sha256",
    "format_config_path",
    "format_value",
    "get_config_item",
    "get_config_tree_item",
    "list_problems",
    "load_config",
    "main",
    "parse_config",
    "resolve_output_dir",
    "run",
    "run_experiment",
    "tokenize_config_path",
    "write_csv",
]
