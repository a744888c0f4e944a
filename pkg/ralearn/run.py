"""
Register Automaton Learner: Command-Line Driver

This script learns register automata of simulated systems and reproduces
query-count comparisons between learning configurations:

1. learn: learn one system, write the model, statistics and event log
2. bench: run a suite of (system × algorithm × restrictions) cells and
   write the mean counts per cell to bench.csv
3. generate: write a random determinate register automaton for scaling
   studies

Usage:
    ralearn learn --sul stack2 --algorithm sllambda --eq-oracle exact --verify exact
    ralearn learn --sul models/fifo3.json --restrictions off --out results/fifo3
    ralearn bench --suite stack2,fifo3 --repetitions 5 --ablation
    ralearn generate --locations 6 --actions 2 --data-fraction 0.5 --seed 7 --out random.json

Options (learn):
    --sul                  Model file or name of a shipped model (required)
    --algorithm            sllambda or slct (default: sllambda)
    --restrictions         on or off (default: on)
    --eq-oracle            exact or random (default: exact)
    --max-depth, --walks   Random walk length and count (default: 10, 10000)
    --seed                 Seed for the random oracle
    --verify               exact or none (default: none)
    --out                  Directory for output files (default: results)
    --export-dot, --render Write model.dot / render it to model.png
    --verbose              Print learner events as they happen

Output:
    model.json, model.dot, model.png, stats.json, events.jsonl, bench.csv
"""

#==============================================================================
#                          MAIN EXECUTION
#==============================================================================
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ralearn.argument_handler import parse_arguments, extract_params_from_args
from ralearn.automaton import ModelFormatError, ModelValidationError, UnknownActionError
from ralearn.file_handler import (
    ModelFileError, load_model, log_message, log_success, model_name, save_model,
    setup_file_paths, write_bench_csv, write_events, write_stats, write_text,
)
from ralearn.generator import GenerationError, generate_ra
from ralearn.learner import Learner, LearnerConfig, LearnerError
from ralearn.oracle import (
    ExactEquivalenceOracle, MembershipOracle, OracleError, RandomWalkEquivalenceOracle,
    find_counterexample_exact,
)
from ralearn.restrict import RestrictionError
from ralearn.sdt import SDTError
from ralearn.subprocess_handler import render_dot, run_learn_cell
from ralearn.theory import TheoryError
from ralearn.words import WordError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_EQUIVALENT = 2

HANDLED_ERRORS = (
    TheoryError, WordError, ModelFormatError, ModelValidationError, UnknownActionError,
    OracleError, SDTError, RestrictionError, LearnerError, GenerationError, ModelFileError,
)


def add_separator(message):
    """Prints a separator with a centered message."""
    print("\n" + "="*80)
    print(message)
    print("="*80)


def learner_config(params) -> LearnerConfig:
    return LearnerConfig(algorithm=params['algorithm'], restrictions=params['restrictions'],
                         max_rounds=params['max_rounds'], verbose=params['verbose'])


def equivalence_oracle(params, oracle: MembershipOracle):
    if params['eq_oracle'] == "random":
        return RandomWalkEquivalenceOracle(oracle, params['max_depth'], params['walks'], params['seed'])
    return ExactEquivalenceOracle(oracle)


def learn_model(sul, params):
    """Run one learner on a loaded system; returns (hypothesis, learner)."""
    oracle = MembershipOracle(sul)
    learner = Learner(oracle, learner_config(params))
    hyp = learner.learn(equivalence_oracle(params, oracle))
    return hyp, learner


def summary_line(stats) -> str:
    return (f"learn resets {stats['learn_queries']} | total resets {stats['membership_queries']} | "
            f"counterexamples {stats['counterexamples']} | locations {stats['t']} | "
            f"wct learn {stats['wct_learn_ms']:.1f} ms | wct test {stats['wct_test_ms']:.1f} ms")

#==============================================================================
#                          LEARN
#==============================================================================

def cmd_learn(params) -> int:
    """Learn one system; returns the exit code."""
    file_paths, results_folder = setup_file_paths(params['results_folder'])

    add_separator("STEP 1: LOADING SYSTEM UNDER LEARNING")
    sul = load_model(params['sul'], verbose=True)

    add_separator("STEP 2: LEARNING")
    hyp, learner = learn_model(sul, params)
    stats = learner.stats()

    add_separator("STEP 3: WRITING RESULTS")
    save_model(hyp, file_paths['model'])
    write_stats(stats, file_paths['stats'])
    write_events(learner.events, file_paths['events'])
    if params['export_dot']:
        write_text(file_paths['dot'], hyp.to_dot())
        log_success(file_paths['dot'], "DOT export written")
    if params['render']:
        render_dot(file_paths['dot'], file_paths['png'], verbose=params['verbose'])

    exit_code = EXIT_OK
    if params['verify'] == "exact":
        add_separator("STEP 4: VERIFYING")
        w = find_counterexample_exact(hyp, sul)
        if w is None:
            print("✅ Learned model is equivalent to the system under learning")
        else:
            print(f"❌ Learned model differs from the system on {w}")
            exit_code = EXIT_NOT_EQUIVALENT

    print(f"\n{model_name(params['sul'])}: {summary_line(stats)}")
    log_message(f"\nResults folder: {os.path.relpath(results_folder)}", params['verbose'])
    return exit_code

#==============================================================================
#                          BENCH
#==============================================================================

def _cells(params):
    for sul in params['suite']:
        for algorithm in params['algorithms']:
            for restrictions in params['restriction_modes']:
                yield sul, algorithm, restrictions


def _run_cell(params, sul_name, algorithm, restrictions, results_folder):
    """All repetitions of one cell; returns the list of stats dicts."""
    runs = []
    for repetition in range(params['repetitions']):
        seed = (params['seed'] or 0) + repetition
        cell = dict(params, sul=sul_name, algorithm=algorithm, restrictions=restrictions, seed=seed)
        if params['jobs'] > 1:
            label = f"{model_name(sul_name)}_{algorithm}_{'on' if restrictions else 'off'}_{repetition}"
            stats = run_learn_cell(cell, os.path.join(results_folder, "cells", label), params['verbose'])
            if stats is None:
                raise LearnerError(f"Benchmark cell {label} produced no statistics")
        else:
            _, learner = learn_model(load_model(sul_name), cell)
            stats = learner.stats()
        runs.append(stats)
    return runs


def bench_row(sul_name, algorithm, restrictions, runs) -> dict:
    """Mean counts over the repetitions of one cell."""
    def mean(key):
        return float(np.mean([r[key] for r in runs]))
    return {
        "sul": model_name(sul_name),
        "algorithm": algorithm,
        "restrictions": "on" if restrictions else "off",
        "learn_resets": mean("learn_queries"),
        "total_resets": mean("membership_queries"),
        "counterexamples": mean("counterexamples"),
        "locations": mean("t"),
        "transitions": mean("n"),
        "registers": mean("r"),
        "wct_learn_ms": round(mean("wct_learn_ms"), 3),
        "wct_test_ms": round(mean("wct_test_ms"), 3),
    }


def cmd_bench(params) -> int:
    file_paths, results_folder = setup_file_paths(params['results_folder'])
    cells = list(_cells(params))
    add_separator(f"STEP 1: RUNNING {len(cells)} BENCHMARK CELLS")
    for sul_name, _, _ in cells:
        load_model(sul_name)

    def run(cell):
        sul_name, algorithm, restrictions = cell
        runs = _run_cell(params, sul_name, algorithm, restrictions, results_folder)
        row = bench_row(sul_name, algorithm, restrictions, runs)
        print(f"• {row['sul']:<10} {algorithm:<9} restrictions={row['restrictions']:<3} "
              f"learn={row['learn_resets']:.1f} total={row['total_resets']:.1f} "
              f"std={np.std([r['membership_queries'] for r in runs]):.1f}")
        return row

    if params['jobs'] > 1:
        with ThreadPoolExecutor(max_workers=params['jobs']) as pool:
            rows = list(pool.map(run, cells))
    else:
        rows = [run(cell) for cell in cells]

    add_separator("STEP 2: WRITING RESULTS")
    write_bench_csv(rows, file_paths['bench'])
    return EXIT_OK

#==============================================================================
#                          GENERATE
#==============================================================================

def cmd_generate(params) -> int:
    add_separator("STEP 1: GENERATING RANDOM REGISTER AUTOMATON")
    ra = generate_ra(params['locations'], params['actions'], params['data_fraction'], params['seed'])
    log_message(f"• Generated {ra!r}", params['verbose'])
    save_model(ra, params['out'])
    return EXIT_OK


COMMANDS = {
    "learn": cmd_learn,
    "bench": cmd_bench,
    "generate": cmd_generate,
}


def main(argv=None) -> int:
    """
    Execute a command with command line arguments and return its exit code.
    """
    args = parse_arguments(argv)
    args.verbose and print("\nRunning in verbose mode with detailed output...")
    add_separator("STEP 0: INITIALIZATION")
    params = extract_params_from_args(args)
    try:
        return COMMANDS[params['command']](params)
    except HANDLED_ERRORS as e:
        print(f"❌ {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
