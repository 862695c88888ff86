class RhoCompatError(Exception):
    """
    Common base of all rhocompat errors.

    :group: core

    """


class NotSquareError(RhoCompatError, ValueError):
    """:group: core"""


class NotSymmetricError(RhoCompatError, ValueError):
    """:group: core"""


class NotStandardizedError(RhoCompatError, ValueError):
    """:group: core"""


class NotPSDError(RhoCompatError, ValueError):
    """:group: core"""


class EntryOutOfRangeError(RhoCompatError, ValueError):
    """:group: core"""


class OutOfRangeError(RhoCompatError, ValueError):
    """:group: core"""


class DimensionTooSmallError(RhoCompatError, ValueError):
    """:group: core"""


class RankTooHighError(RhoCompatError, ValueError):
    """:group: core"""


class TooFewObservationsError(RhoCompatError, ValueError):
    """:group: core"""


class ConstantColumnError(RhoCompatError, ValueError):
    """:group: core"""


class LengthMismatchError(RhoCompatError, ValueError):
    """:group: core"""


class ReconstructionError(RhoCompatError, RuntimeError):
    """
    Raised if a rank decomposition does not reproduce its
    source matrix, usually a mismatch of rank_tol and psd_tol.

    :group: core

    """


class NoConvergenceError(RhoCompatError, RuntimeError):
    """:group: core"""


class RepairFailedError(RhoCompatError, RuntimeError):
    """:group: core"""


class NotConvergedError(RhoCompatError, RuntimeError):
    """:group: core"""


class NotAFrameError(RhoCompatError, ValueError):
    """
    Raised if a vector family violates the quadratic
    or the quartic frame identity.

    Attributes
    ----------
    point: numpy.ndarray
        The first violating point, shape: (k,)
    degree: int
        The failing identity, 2 or 4
    ratio: float
        The observed ratio at the point
    expected: float
        The fitted constant

    :group: core

    """

    def __init__(self, message, point=None, degree=None, ratio=None, expected=None):
        super().__init__(message)
        self.point = point
        self.degree = degree
        self.ratio = ratio
        self.expected = expected
