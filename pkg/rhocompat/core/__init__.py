from .base import Base
from .errors import (
    RhoCompatError,
    NotSquareError,
    NotSymmetricError,
    NotStandardizedError,
    NotPSDError,
    EntryOutOfRangeError,
    OutOfRangeError,
    DimensionTooSmallError,
    RankTooHighError,
    TooFewObservationsError,
    ConstantColumnError,
    LengthMismatchError,
    ReconstructionError,
    NoConvergenceError,
    RepairFailedError,
    NotConvergedError,
    NotAFrameError,
)
from .matrices import (
    CorrelationMatrix,
    RankDecomposition,
    as_candidate,
    default_psd_tol,
    validate,
    validation_report,
    rank_of,
    rank_decompose,
    pad_columns,
    k_max,
    PSD_TOL_FACTOR,
    RANK_TOL,
)
from .nearest import nearest_correlation, project_psd
