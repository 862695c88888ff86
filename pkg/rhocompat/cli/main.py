import sys
from contextlib import redirect_stdout

from rhocompat.core import (
    RhoCompatError,
    NotSquareError,
    NotSymmetricError,
    NotStandardizedError,
    NotPSDError,
    EntryOutOfRangeError,
)
from rhocompat.utils import write_text
from .config import COMMANDS, UsageError, parse_args
from .commands import COMMAND_FUNCTIONS, EXIT_USAGE, EXIT_INVALID

INVALID_MATRIX_ERRORS = (
    NotSquareError,
    NotSymmetricError,
    NotStandardizedError,
    NotPSDError,
    EntryOutOfRangeError,
)


def run(cfg):
    """
    Runs a command and writes its output.

    Library output at verbosity > 0 goes to stderr,
    so that results on stdout stay parseable.

    Parameters
    ----------
    cfg: rhocompat.cli.RunConfig
        The run configuration

    Returns
    -------
    code: int
        The exit code

    :group: cli

    """
    if cfg.command not in COMMANDS:
        raise UsageError(f"Unknown command '{cfg.command}', choices: {COMMANDS}")

    with redirect_stdout(sys.stderr):
        text, code = COMMAND_FUNCTIONS[cfg.command](cfg)
    if len(text):
        write_text(text, cfg.output)
    return code


def main(argv=None):
    """
    The rhocompat command line entry point.

    Exit codes: 0 success or confirmed counterexample,
    1 usage or I/O error, 2 invalid matrix, 3
    inconclusive certificate.

    Parameters
    ----------
    argv: list of str, optional
        The arguments, default sys.argv[1:]

    Returns
    -------
    code: int
        The exit code

    :group: cli

    """
    try:
        cfg = parse_args(argv)
        return run(cfg)
    except INVALID_MATRIX_ERRORS as e:
        print(f"rhocompat: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (UsageError, RhoCompatError, OSError, ValueError, KeyError) as e:
        print(f"rhocompat: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
