import argparse
import sys
from dataclasses import dataclass
from typing import List, Optional

from rhocompat.utils import DEFAULT_SEED

COMMANDS = (
    "validate",
    "certify",
    "m12",
    "decompose",
    "sample",
    "estimate",
    "roundtrip",
    "assess",
    "model",
)

MAX_SEED = 2**64


class UsageError(Exception):
    """
    Raised for invalid command lines.

    :group: cli

    """


@dataclass
class RunConfig:
    """
    The settings of one command line run.

    :group: cli

    """

    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    seed: int = DEFAULT_SEED
    samples: int = 100000
    tol: float = 1e-6
    format: Optional[str] = None
    workers: int = 1
    verbosity: int = 0

    # certify
    m12: bool = False
    matrix: Optional[str] = None
    indices: Optional[List[int]] = None
    trials: int = 200

    # m12
    dim: int = 12

    # decompose, roundtrip, assess, model
    max_iters: int = 500
    restarts: int = 10
    max_atoms: Optional[int] = None

    # sample, model
    unit_variance: bool = False
    gaussian: bool = False
    naive: bool = False

    def output_format(self, default):
        """
        The requested output format

        Parameters
        ----------
        default: str
            The command's default format

        Returns
        -------
        str :
            The format, csv or json

        """
        return default if self.format is None else self.format


class _Parser(argparse.ArgumentParser):
    """
    Argument parser raising UsageError instead of exiting
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _indices(text):
    """
    Helper function parsing comma separated indices
    """
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expecting comma separated integers, got '{text}'")


def _add_common(p, default_format=None):
    """
    Helper function for the shared flags
    """
    p.add_argument("--output", "-o", default=None, help="Output file, default stdout")
    p.add_argument(
        "--format",
        choices=["csv", "json"],
        default=None,
        help=f"Output format (default: {default_format or 'json'})",
    )
    p.add_argument("--verbosity", "-v", type=int, default=0, help="Verbosity level on stderr (default: 0)")


def _add_random(p):
    """
    Helper function for the flags of randomized commands
    """
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Master seed (default: {DEFAULT_SEED})")
    p.add_argument("--workers", type=int, default=1, help="Number of worker threads (default: 1)")


def _add_decompose(p):
    """
    Helper function for the decomposer flags
    """
    p.add_argument("--tol", type=float, default=1e-6, help="Residual tolerance (default: 1e-6)")
    p.add_argument("--max-iters", type=int, default=500, dest="max_iters", help="Round limit (default: 500)")
    p.add_argument("--restarts", type=int, default=10, help="Oracle restarts (default: 10)")
    p.add_argument("--max-atoms", type=int, default=None, dest="max_atoms", help="Atom limit (default: d(d+1)/2 + 1)")


def build_parser():
    """
    Creates the argument parser.

    Returns
    -------
    parser: argparse.ArgumentParser
        The parser with one sub-parser per command

    :group: cli

    """
    parser = _Parser(
        prog="rhocompat",
        description="Validate, construct and refute Spearman's rho matrices.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("validate", help="Validate a correlation matrix csv")
    p.add_argument("input", help="Matrix csv file, '-' for stdin")
    _add_common(p)

    p = sub.add_parser("certify", help="Run the moment certificate")
    p.add_argument("input", nargs="?", default=None, help="Vector family csv file (m rows, k columns)")
    p.add_argument("--m12", action="store_true", help="Use the twelve vectors in R^4")
    p.add_argument("--matrix", default=None, help="Certify the rank decomposition of a matrix csv file")
    p.add_argument("--indices", type=_indices, default=None, help="Principal sub-matrix indices, e.g. 0,1,2")
    p.add_argument("--trials", type=int, default=200, help="Identity test points (default: 200)")
    p.add_argument("--tol", type=float, default=1e-9, help="Relative identity tolerance (default: 1e-9)")
    _add_random(p)
    _add_common(p)

    p = sub.add_parser("m12", help="Write the 12 x 12 counterexample or its embedding")
    p.add_argument("--dim", type=int, default=12, help="Embedding dimension d >= 12 (default: 12)")
    _add_common(p, "csv")

    p = sub.add_parser("decompose", help="Decompose a matrix into rank-3 atoms")
    p.add_argument("input", help="Matrix csv file, '-' for stdin")
    _add_decompose(p)
    _add_random(p)
    _add_common(p)

    p = sub.add_parser("sample", help="Draw from a model json file")
    p.add_argument("input", help="Model json file, '-' for stdin")
    p.add_argument("--samples", "-n", type=int, default=100000, help="Number of observations (default: 100000)")
    p.add_argument("--unit-variance", action="store_true", dest="unit_variance", help="Rescale sphere margins to unit variance")
    _add_random(p)
    _add_common(p, "csv")

    p = sub.add_parser("estimate", help="Estimate Spearman's rho matrix of a sample csv")
    p.add_argument("input", help="Sample csv file, '-' for stdin")
    _add_common(p, "csv")

    p = sub.add_parser("roundtrip", help="Decompose, sample and re-estimate a matrix")
    p.add_argument("input", help="Matrix csv file, '-' for stdin")
    p.add_argument("--samples", "-n", type=int, default=100000, help="Number of observations (default: 100000)")
    _add_decompose(p)
    _add_random(p)
    _add_common(p)

    p = sub.add_parser("assess", help="Classify a matrix as compatible, incompatible or inconclusive")
    p.add_argument("input", help="Matrix csv file, '-' for stdin")
    _add_decompose(p)
    p.set_defaults(max_iters=50, restarts=5)
    _add_random(p)
    _add_common(p)

    p = sub.add_parser("model", help="Build a model json file for a matrix")
    p.add_argument("input", help="Matrix csv file, '-' for stdin")
    p.add_argument("--gaussian", action="store_true", help="Build a Gaussian copula")
    p.add_argument("--naive", action="store_true", help="Use the target itself as Gaussian parameter")
    p.add_argument("--unit-variance", action="store_true", dest="unit_variance", help="Rescale sphere margins to unit variance")
    _add_decompose(p)
    _add_random(p)
    _add_common(p)

    return parser


def parse_args(argv=None):
    """
    Builds the run configuration from command line
    arguments.

    Parameters
    ----------
    argv: list of str, optional
        The arguments, default sys.argv[1:]

    Returns
    -------
    cfg: RunConfig
        The run configuration

    :group: cli

    """
    args = build_parser().parse_args(argv)
    data = vars(args)

    seed = data.get("seed", DEFAULT_SEED)
    if not 0 <= seed < MAX_SEED:
        raise UsageError(f"Seed must be an unsigned 64-bit integer, got {seed}")
    if data.get("workers", 1) < 1:
        raise UsageError(f"Expecting at least one worker, got {data['workers']}")
    if data.get("samples", 1) < 1:
        raise UsageError(f"Expecting at least one sample, got {data['samples']}")
    if args.command == "certify":
        n_sources = int(args.m12) + int(args.matrix is not None) + int(args.input is not None)
        if n_sources != 1:
            raise UsageError("certify: Expecting exactly one of a vector file, --m12 or --matrix")

    return RunConfig(**data)
