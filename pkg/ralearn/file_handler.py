"""
File Handler Module: Model Files, Run Outputs and Status Reporting

1. File Path Setup: output paths for a learning or benchmark run
2. Model Files: loading benchmark models by name or path, writing learned models
3. Run Outputs: statistics, event logs and benchmark tables
4. Utility Functions: verbosity-gated status messages

Usage:
    This module is imported by run.py and the learner for all file
    operations and console reporting.
"""

import csv
import json
import os
from typing import Dict, List, Sequence, Tuple

from ralearn.automaton import ModelFormatError, RegisterAutomaton

#==============================================================================
#                          CONSTANTS & EXCEPTIONS
#==============================================================================

MODEL_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "models")
MODEL_EXTENSION = ".json"

BENCH_COLUMNS = (
    "sul", "algorithm", "restrictions", "learn_resets", "total_resets", "counterexamples",
    "locations", "transitions", "registers", "wct_learn_ms", "wct_test_ms",
)


class ModelFileError(Exception):
    """Exception raised for missing or unreadable model files."""
    pass

#==============================================================================
#                          LOGGING & UTILITY FUNCTIONS
#==============================================================================

def log_message(message: str, verbose: bool = True) -> None:
    """Print message if verbose mode is enabled."""
    if verbose:
        print(message)


def log_success(filepath: str, message: str, verbose: bool = True) -> None:
    """Log success message with relative filepath if verbose mode is enabled."""
    if verbose:
        rel_path = os.path.relpath(filepath)
        print(f"✅ {message}: {rel_path}")


def log_warning(message: str) -> None:
    print(f"⚠️ WARNING: {message}")

#==============================================================================
#                          FILE PATH SETUP
#==============================================================================

def setup_file_paths(output_dir: str) -> Tuple[Dict[str, str], str]:
    """
    Set up all file paths for a run.

    Returns:
        (file_paths, results_folder)
    """
    results_folder = os.path.abspath(output_dir)
    if not os.path.exists(results_folder):
        os.makedirs(results_folder)

    file_paths = {
        'model': os.path.join(results_folder, "model.json"),
        'dot': os.path.join(results_folder, "model.dot"),
        'png': os.path.join(results_folder, "model.png"),
        'stats': os.path.join(results_folder, "stats.json"),
        'events': os.path.join(results_folder, "events.jsonl"),
        'bench': os.path.join(results_folder, "bench.csv"),
    }
    return file_paths, results_folder


def available_models() -> List[str]:
    """Names of the benchmark models shipped with the package."""
    if not os.path.isdir(MODEL_DIR):
        return []
    return sorted(os.path.splitext(f)[0] for f in os.listdir(MODEL_DIR) if f.endswith(MODEL_EXTENSION))


def resolve_model_path(name_or_path: str) -> str:
    """Accept a file path or the name of a shipped benchmark model."""
    if os.path.exists(name_or_path):
        return os.path.abspath(name_or_path)
    base = os.path.basename(name_or_path)
    if base.endswith(MODEL_EXTENSION):
        base = base[:-len(MODEL_EXTENSION)]
    candidate = os.path.join(MODEL_DIR, base + MODEL_EXTENSION)
    if os.path.exists(candidate):
        return candidate
    raise ModelFileError(f"Model file not found: {name_or_path} "
                         f"(shipped models: {', '.join(available_models())})")

#==============================================================================
#                          MODEL FILES
#==============================================================================

def load_model(name_or_path: str, verbose: bool = False) -> RegisterAutomaton:
    path = resolve_model_path(name_or_path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise ModelFileError(f"Could not read model file {path}: {e}") from e
    try:
        ra = RegisterAutomaton.from_json(text)
    except ModelFormatError as e:
        raise ModelFormatError(f"{os.path.relpath(path)}: {e}") from e
    log_message(f"• Loaded {ra!r} from {os.path.relpath(path)}", verbose)
    return ra


def save_model(ra: RegisterAutomaton, filepath: str, verbose: bool = True) -> str:
    write_text(filepath, ra.to_json())
    log_success(filepath, "Model written", verbose)
    return filepath


def model_name(name_or_path: str) -> str:
    return os.path.splitext(os.path.basename(name_or_path))[0]

#==============================================================================
#                          RUN OUTPUTS
#==============================================================================

def write_text(filepath: str, text: str) -> str:
    with open(filepath, 'w', encoding='utf-8') as f:
        f.write(text)
    return filepath


def write_stats(stats: dict, filepath: str, verbose: bool = True) -> str:
    write_text(filepath, json.dumps(stats, indent=2, sort_keys=True) + "\n")
    log_success(filepath, "Statistics written", verbose)
    return filepath


def read_stats(filepath: str) -> dict:
    if not os.path.exists(filepath):
        raise ModelFileError(f"Statistics file not found: {filepath}")
    with open(filepath, 'r', encoding='utf-8') as f:
        return json.load(f)


def write_events(events: Sequence[dict], filepath: str, verbose: bool = True) -> str:
    write_text(filepath, "".join(json.dumps(e, sort_keys=True) + "\n" for e in events))
    log_success(filepath, "Event log written", verbose)
    return filepath


def write_bench_csv(rows: Sequence[dict], filepath: str, verbose: bool = True) -> str:
    with open(filepath, 'w', encoding='utf-8', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({column: row[column] for column in BENCH_COLUMNS})
    log_success(filepath, "Benchmark table written", verbose)
    return filepath
