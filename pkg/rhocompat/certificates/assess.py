import numpy as np

from rhocompat.core import CorrelationMatrix, NotAFrameError, validate
from rhocompat.optimizers import decompose
from rhocompat.utils import get_rng
from .certificate import certify_matrix

COMPATIBLE_EXACT = "compatible-exact"
COMPATIBLE_THEORY = "compatible-theory"
COMPATIBLE_CONSTRUCTED = "compatible-constructed"
INCOMPATIBLE = "incompatible"
INCONCLUSIVE = "inconclusive"

# all correlation matrices up to this dimension are Spearman's rho matrices
MAX_DIM_ALL_COMPATIBLE = 9


class Assessment:
    """
    The compatibility verdict of a correlation matrix.

    Attributes
    ----------
    verdict: str
        One of compatible-exact, compatible-theory,
        compatible-constructed, incompatible, inconclusive
    n_dims: int
        The dimension
    rank: int
        The numerical rank
    reason: str
        A short explanation
    certificate: rhocompat.certificates.MomentCertificate
        The violated or last applicable certificate, or None
    decomposition: rhocompat.optimizers.DecompositionResult
        The decomposition attempt, or None

    :group: certificates

    """

    def __init__(
        self, verdict, n_dims, rank, reason, certificate=None, decomposition=None
    ):
        self.verdict = verdict
        self.n_dims = n_dims
        self.rank = rank
        self.reason = reason
        self.certificate = certificate
        self.decomposition = decomposition

    @property
    def compatible(self):
        """
        Flag for a proven compatible matrix

        Returns
        -------
        bool :
            True for any compatible verdict

        """
        return self.verdict.startswith("compatible")

    def to_dict(self):
        """
        The json representation

        Returns
        -------
        dict :
            The assessment data

        """
        return dict(
            verdict=self.verdict,
            dimension=self.n_dims,
            rank=self.rank,
            reason=self.reason,
            certificate=None if self.certificate is None else self.certificate.to_dict(),
            decomposition=(
                None if self.decomposition is None else self.decomposition.to_dict()
            ),
        )

    def __str__(self):
        return f"Assessment: {self.verdict} (d = {self.n_dims}, rank = {self.rank}): {self.reason}"


def _try_certificate(r, indices, rng, verbosity):
    """
    Helper function, returns None if the frame
    identities do not hold
    """
    try:
        return certify_matrix(r, indices=indices, rng=rng)
    except NotAFrameError as e:
        if verbosity > 1:
            print(f"assess: certificate inapplicable: {e}")
        return None


def assess(r, max_iters=50, restarts=5, tol=1e-6, rng=None, workers=1, verbosity=0):
    """
    Classifies a correlation matrix as Spearman's rho
    matrix or not, as far as can be decided.

    Rank at most 3 is compatible by the sphere copula. A
    violated moment certificate on the matrix or on its
    leading 12 x 12 block refutes compatibility. Otherwise
    a converged decomposition constructs a copula. Up to
    dimension 9 every correlation matrix is compatible, so
    a failed decomposition still yields a compatible
    verdict there. All remaining cases are inconclusive.

    Parameters
    ----------
    r: CorrelationMatrix or array-like
        The matrix, validated if not yet
    max_iters: int
        The decomposer round limit
    restarts: int
        The decomposer oracle restarts
    tol: float
        The decomposer residual tolerance
    rng: int or numpy.random.Generator, optional
        The seed or master generator
    workers: int
        The number of threads for the restarts
    verbosity: int
        The verbosity level, 0 = silent

    Returns
    -------
    assessment: Assessment
        The verdict

    :group: certificates

    """
    if not isinstance(r, CorrelationMatrix):
        r = validate(r)
    rng = get_rng(rng)
    d = r.n_dims
    k = r.rank

    if k <= 3:
        return Assessment(
            COMPATIBLE_EXACT, d, k, "rank at most 3, exact sphere copula"
        )

    cert = _try_certificate(r, None, rng, verbosity)
    if (cert is None or not cert.violated) and d > 12:
        sub = _try_certificate(r, np.arange(12), rng, verbosity)
        cert = cert if sub is None else sub
    if cert is not None and cert.violated:
        return Assessment(
            INCOMPATIBLE,
            d,
            k,
            f"moment certificate violated, margin {cert.margin:.6g}",
            certificate=cert,
        )

    res = decompose(
        r,
        max_iters=max_iters,
        restarts=restarts,
        tol=tol,
        rng=rng,
        workers=workers,
        verbosity=max(verbosity - 1, 0),
    )
    if res.converged:
        return Assessment(
            COMPATIBLE_CONSTRUCTED,
            d,
            k,
            f"decomposed into {res.n_atoms} rank-3 atoms, residual {res.residual:.3e}",
            certificate=cert,
            decomposition=res,
        )
    if d <= MAX_DIM_ALL_COMPATIBLE:
        return Assessment(
            COMPATIBLE_THEORY,
            d,
            k,
            f"dimension {d} <= {MAX_DIM_ALL_COMPATIBLE}, decomposition not found",
            certificate=cert,
            decomposition=res,
        )
    return Assessment(
        INCONCLUSIVE,
        d,
        k,
        "no violated certificate and no decomposition found",
        certificate=cert,
        decomposition=res,
    )
