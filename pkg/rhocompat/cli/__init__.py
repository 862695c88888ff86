from .config import RunConfig, UsageError, build_parser, parse_args
from .commands import (
    cmd_validate,
    cmd_certify,
    cmd_m12,
    cmd_decompose,
    cmd_sample,
    cmd_estimate,
    cmd_roundtrip,
    cmd_assess,
    cmd_model,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_INVALID,
    EXIT_INCONCLUSIVE,
)
from .main import main, run
