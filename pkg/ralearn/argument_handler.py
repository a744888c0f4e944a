import argparse
import os

from ralearn.generator import DEFAULT_ACTIONS, DEFAULT_DATA_FRACTION, DEFAULT_LOCATIONS
from ralearn.learner import DEFAULT_MAX_ROUNDS, SL_CT, SL_LAMBDA
from ralearn.oracle import DEFAULT_MAX_DEPTH, DEFAULT_WALKS

DEFAULT_SUITE = "stack2,stack3,fifo3,fifo5,login"


def _add_learning_options(parser):
    """Options shared by the learn and bench commands."""
    group = parser.add_argument_group("Learning Options")
    group.add_argument("--algorithm", choices=[SL_LAMBDA, SL_CT], default=SL_LAMBDA,
                       help="Learning algorithm")
    group.add_argument("--restrictions", choices=["on", "off"], default="on",
                       help="Restrict symbolic suffixes before tree queries")
    group.add_argument("--max-rounds", type=int, default=DEFAULT_MAX_ROUNDS,
                       help="Iteration cap for closedness and consistency fixes")

    oracle = parser.add_argument_group("Equivalence Oracle Options")
    oracle.add_argument("--eq-oracle", choices=["exact", "random"], default="exact",
                        help="Exact product exploration or random walks")
    oracle.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH,
                        help="Maximum random walk length")
    oracle.add_argument("--walks", type=int, default=DEFAULT_WALKS,
                        help="Random walks per equivalence query")
    oracle.add_argument("--seed", type=int, default=None, help="Seed for the random oracle")

    parser.add_argument("--out", default="results", help="Directory for output files")
    parser.add_argument("--verbose", action="store_true", help="Enable verbose output with learner events")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ralearn",
        description="Learn register automata from membership and equivalence queries.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    learn = subparsers.add_parser("learn", help="Learn one system under learning",
                                  formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    learn.add_argument("--sul", required=True, help="Model file or name of a shipped model (e.g., stack2)")
    _add_learning_options(learn)
    learn.add_argument("--verify", choices=["exact", "none"], default="none",
                       help="Check the learned model against the system with the exact oracle")
    learn.add_argument("--export-dot", action="store_true", help="Write model.dot next to model.json")
    learn.add_argument("--render", action="store_true", help="Render model.dot to model.png with Graphviz")

    bench = subparsers.add_parser("bench", help="Run a benchmark suite and write bench.csv",
                                  formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    bench.add_argument("--suite", default=DEFAULT_SUITE, help="Comma-separated model names or paths")
    _add_learning_options(bench)
    bench.add_argument("--algorithms", default=f"{SL_LAMBDA},{SL_CT}",
                       help="Comma-separated algorithms to compare")
    bench.add_argument("--repetitions", type=int, default=1, help="Runs per cell, seeds seed..seed+N-1")
    bench.add_argument("--jobs", type=int, default=1, help="Cells run in parallel subprocesses")
    bench.add_argument("--ablation", action="store_true",
                       help="Run every cell with restrictions on and off")

    generate = subparsers.add_parser("generate", help="Generate a random determinate register automaton",
                                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    generate.add_argument("--locations", type=int, default=DEFAULT_LOCATIONS, help="Number of locations")
    generate.add_argument("--actions", type=int, default=DEFAULT_ACTIONS, help="Number of unary actions")
    generate.add_argument("--data-fraction", type=float, default=DEFAULT_DATA_FRACTION,
                          help="Fraction of transitions turned into store-and-compare gadgets")
    generate.add_argument("--seed", type=int, default=None, help="Generator seed")
    generate.add_argument("--out", required=True, help="Path of the model file to write")
    generate.add_argument("--verbose", action="store_true", help="Enable verbose output")
    return parser


def parse_arguments(argv=None):
    """Parse command line arguments."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command in ("learn", "bench"):
        if args.max_depth <= 0:
            parser.error("Random walk depth must be a positive value")
        if args.walks <= 0:
            parser.error("Number of random walks must be a positive value")
        if args.max_rounds <= 0:
            parser.error("Iteration cap must be a positive value")
    if args.command == "learn" and args.render:
        args.export_dot = True
    if args.command == "bench":
        if args.repetitions <= 0:
            parser.error("Repetitions must be a positive value")
        if args.jobs <= 0:
            parser.error("Jobs must be a positive value")
        unknown = [a for a in args.algorithms.split(",") if a not in (SL_LAMBDA, SL_CT)]
        if unknown:
            parser.error(f"Unknown algorithms: {', '.join(unknown)}")
    if args.command == "generate":
        if args.locations <= 0 or args.actions <= 0:
            parser.error("Locations and actions must be positive values")
        if not (0 <= args.data_fraction <= 1):
            parser.error("Data fraction must be between 0 and 1")
        out_dir = os.path.dirname(os.path.abspath(args.out))
        if not os.path.isdir(out_dir):
            parser.error(f"Output directory not found: {out_dir}")

    return args


def extract_params_from_args(args):
    """
    Extract and process parameters from command line arguments.

    Args:
        args: Command line arguments parsed by argparse

    Returns:
        dict: Dictionary containing all extracted parameters
    """
    params = {}
    params['command'] = args.command
    params['verbose'] = args.verbose
    params['seed'] = args.seed

    if args.command == "generate":
        params['locations'] = args.locations
        params['actions'] = args.actions
        params['data_fraction'] = args.data_fraction
        params['out'] = args.out
    else:
        params['algorithm'] = args.algorithm
        params['restrictions'] = args.restrictions == "on"
        params['max_rounds'] = args.max_rounds
        params['eq_oracle'] = args.eq_oracle
        params['max_depth'] = args.max_depth
        params['walks'] = args.walks
        params['results_folder'] = args.out

    if args.command == "learn":
        params['sul'] = args.sul
        params['verify'] = args.verify
        params['export_dot'] = args.export_dot
        params['render'] = args.render
    elif args.command == "bench":
        params['suite'] = [s for s in args.suite.split(",") if s]
        params['algorithms'] = args.algorithms.split(",")
        params['repetitions'] = args.repetitions
        params['jobs'] = args.jobs
        params['restriction_modes'] = [True, False] if args.ablation else [params['restrictions']]

    print("\nSettings:")
    print(f"  {'Parameter':<30} {'Value':<50}")
    print(f"  {'-'*30} {'-'*50}")
    for key, value in params.items():
        print(f"  {key.upper():<30} {value}")
    return params
