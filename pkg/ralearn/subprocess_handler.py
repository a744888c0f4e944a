"""
Subprocess handler for external tools and isolated benchmark cells.

This module runs Graphviz to render DOT exports and can run a single
learning cell as a separate ``ralearn learn`` process so that benchmark
cells execute in parallel without sharing state.
"""

import os
import shutil
import subprocess
import sys
import traceback
from typing import Dict, List, Optional

from ralearn.file_handler import read_stats

DOT_TIMEOUT = 60
CELL_TIMEOUT = 1800


def _check_if_file_exists(input_path):
    """
    Checks if a file exists and returns True.
    """
    if not os.path.exists(input_path):
        print(f"⚠️ WARNING: Input file not found at: {input_path}")
        directory = os.path.dirname(input_path) or '.'
        if os.path.isdir(directory):
            print(f"Contents of directory {directory}:")
            for file in os.listdir(directory):
                print(f"  - {file}")
        raise FileNotFoundError(f"Input file not found: {input_path}")
    return True


def _run_subprocess_command(tool_name, command: List[str], abs_output_path, verbose=True, timeout=None):
    """
    Runs a subprocess command and checks that it produced its output file.
    """
    verbose and print(f"Running command: {tool_name}")
    if timeout is None:
        timeout = CELL_TIMEOUT if tool_name == "ralearn" else DOT_TIMEOUT
    try:
        try:
            verbose and print(f"Running command with timeout: {timeout} seconds")
            subprocess.run(command, capture_output=True, text=True, timeout=timeout, check=True)
        except subprocess.TimeoutExpired:
            print(f"Command timed out after {timeout} seconds. Consider increasing the timeout for this operation.")
            raise
        if os.path.exists(abs_output_path):
            verbose and print(f"✅Successfully created output file: {os.path.relpath(abs_output_path)}")
            return True
        print("Error: Output file was not created despite successful command execution")
        return False
    except subprocess.CalledProcessError as e:
        print(f"Command execution failed with return code {e.returncode}")
        if e.stdout:
            print("Standard output:")
            print(e.stdout)
        if e.stderr:
            print("Standard error:")
            print(e.stderr)
        raise
    except subprocess.TimeoutExpired:
        raise
    except Exception as e:
        print(f"Unexpected error: {str(e)}")
        traceback.print_exc()
        raise e


def dot_available() -> bool:
    return shutil.which("dot") is not None


def construct_dot_command(abs_input_path, abs_output_path):
    output_format = os.path.splitext(abs_output_path)[1].lower().lstrip('.') or "png"
    return ["dot", f"-T{output_format}", abs_input_path, "-o", abs_output_path]


def render_dot(dot_path, output_path, verbose=True, timeout=None):
    """
    Renders a DOT file with Graphviz.

    Returns False with a warning when Graphviz is not installed.
    """
    abs_input_path = os.path.abspath(dot_path)
    abs_output_path = os.path.abspath(output_path)
    _check_if_file_exists(abs_input_path)
    if not dot_available():
        print("⚠️ WARNING: Graphviz 'dot' is not on PATH; skipping rendering")
        return False
    command = construct_dot_command(abs_input_path, abs_output_path)
    return _run_subprocess_command("Graphviz", command, abs_output_path, verbose, timeout=timeout)


def construct_learn_command(params: Dict, output_dir) -> List[str]:
    """
    Builds the ``ralearn learn`` command line for one benchmark cell.
    """
    command = [
        sys.executable, "-m", "ralearn.run", "learn",
        "--sul", params['sul'],
        "--algorithm", params['algorithm'],
        "--restrictions", "on" if params['restrictions'] else "off",
        "--eq-oracle", params['eq_oracle'],
        "--max-depth", str(params['max_depth']),
        "--walks", str(params['walks']),
        "--verify", params.get('verify', 'none'),
        "--max-rounds", str(params['max_rounds']),
        "--out", output_dir,
    ]
    if params.get('seed') is not None:
        command += ["--seed", str(params['seed'])]
    return command


def run_learn_cell(params: Dict, output_dir, verbose=False, timeout=None) -> Optional[dict]:
    """
    Runs one learning cell in a separate process and returns its statistics.
    """
    abs_output_dir = os.path.abspath(output_dir)
    os.makedirs(abs_output_dir, exist_ok=True)
    stats_path = os.path.join(abs_output_dir, "stats.json")
    command = construct_learn_command(params, abs_output_dir)
    if not _run_subprocess_command("ralearn", command, stats_path, verbose, timeout=timeout):
        return None
    return read_stats(stats_path)
