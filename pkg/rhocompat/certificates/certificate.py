import numpy as np

from rhocompat.core import CorrelationMatrix, validate, rank_decompose
from .families import VectorFamily
from .frames import check_frame_identities

CERTIFICATE_TOL = 1e-9
UNIFORM_SQRT3_MOMENTS = (1.0, 9.0 / 5.0)


def uniform_moments(a):
    """
    Second and fourth moments of U[-a, a].

    Parameters
    ----------
    a: float
        The half width

    Returns
    -------
    mu2: float
        The second moment a^2 / 3
    mu4: float
        The fourth moment a^4 / 5

    :group: certificates

    """
    return a**2 / 3.0, a**4 / 5.0


class MomentCertificate:
    """
    The moment bound implied by uniform margins of
    A V for a frame family A.

    If all a_i . V have the uniform margin moments
    (mu2, mu4), the frame identities give
    E|V|^2 = m mu2 / c2 and E|V|^4 = m mu4 / c4. A
    positive margin (E|V|^2)^2 - E|V|^4 contradicts
    Jensen's inequality, so no such V exists.

    Attributes
    ----------
    m: int
        The family size
    k: int
        The ambient dimension
    c2: float
        The quadratic frame constant
    c4: float
        The quartic frame constant
    implied_m2: float
        The implied E|V|^2
    implied_m4: float
        The implied E|V|^4
    margin: float
        implied_m2^2 - implied_m4
    violated: bool
        True if margin > certificate_tol
    certificate_tol: float
        The absolute margin tolerance
    moments: tuple
        The margin moments (mu2, mu4)

    :group: certificates

    """

    def __init__(self, m, k, c2, c4, moments=UNIFORM_SQRT3_MOMENTS, certificate_tol=CERTIFICATE_TOL):
        """
        Constructor

        Parameters
        ----------
        m: int
            The family size
        k: int
            The ambient dimension
        c2: float
            The quadratic frame constant
        c4: float
            The quartic frame constant
        moments: tuple
            The margin moments (mu2, mu4)
        certificate_tol: float
            The absolute margin tolerance

        """
        self.m = int(m)
        self.k = int(k)
        self.c2 = float(c2)
        self.c4 = float(c4)
        self.moments = (float(moments[0]), float(moments[1]))
        self.certificate_tol = certificate_tol

        mu2, mu4 = self.moments
        self.implied_m2 = self.m * mu2 / self.c2
        self.implied_m4 = self.m * mu4 / self.c4
        self.margin = self.implied_m2**2 - self.implied_m4
        self.violated = bool(self.margin > certificate_tol)

    @property
    def verdict(self):
        """
        The verdict, 'incompatible' or 'inconclusive'

        Returns
        -------
        str :
            The verdict

        """
        return "incompatible" if self.violated else "inconclusive"

    def to_dict(self):
        """
        The json representation

        Returns
        -------
        dict :
            The certificate data

        """
        return dict(
            m=self.m,
            k=self.k,
            c2=self.c2,
            c4=self.c4,
            implied_m2=self.implied_m2,
            implied_m4=self.implied_m4,
            violated=self.violated,
            margin=self.margin,
            verdict=self.verdict,
        )

    def __str__(self):
        s = f"Moment certificate (m = {self.m}, k = {self.k}):\n"
        hline = "-" * len(s) + "\n"
        s += hline
        s += f"  c2         = {self.c2:.12g}\n"
        s += f"  c4         = {self.c4:.12g}\n"
        s += f"  E|V|^2     = {self.implied_m2:.12g}\n"
        s += f"  E|V|^4     = {self.implied_m4:.12g}\n"
        s += f"  margin     = {self.margin:.12g}\n"
        s += hline
        s += f"  Verdict: {self.verdict}\n"
        s += hline
        return s


def moment_certificate(
    family,
    trials=200,
    tol=1e-9,
    rng=None,
    moments=None,
    certificate_tol=CERTIFICATE_TOL,
):
    """
    Runs the frame identity check and derives the
    moment certificate of a vector family.

    Parameters
    ----------
    family: VectorFamily or array-like
        The unit vector family, shape of vectors: (m, k)
    trials: int
        The number of verification points
    tol: float
        The relative identity tolerance
    rng: int or numpy.random.Generator, optional
        The seed or generator
    moments: tuple, optional
        The margin moments (mu2, mu4), default is
        U[-sqrt(3), sqrt(3)]: (1, 9/5)
    certificate_tol: float
        The absolute margin tolerance

    Returns
    -------
    cert: MomentCertificate
        The certificate

    :group: certificates

    """
    if not isinstance(family, VectorFamily):
        family = VectorFamily(family)
    c2, c4 = check_frame_identities(family, trials, tol, rng)
    moments = UNIFORM_SQRT3_MOMENTS if moments is None else moments
    return MomentCertificate(family.m, family.k, c2, c4, moments, certificate_tol)


def certify_matrix(
    r,
    indices=None,
    trials=200,
    tol=1e-9,
    rng=None,
    certificate_tol=CERTIFICATE_TOL,
):
    """
    Runs the moment certificate on the rows of a rank
    decomposition of a correlation matrix, or of one of
    its principal sub-matrices.

    A violated certificate on a principal sub-matrix
    refutes the full matrix, since the marginals of a
    random vector inherit its Spearman's rho matrix.

    Parameters
    ----------
    r: CorrelationMatrix or array-like
        The matrix, validated if not yet
    indices: list of int, optional
        The principal sub-matrix indices, default all
    trials: int
        The number of verification points
    tol: float
        The relative identity tolerance
    rng: int or numpy.random.Generator, optional
        The seed or generator
    certificate_tol: float
        The absolute margin tolerance

    Returns
    -------
    cert: MomentCertificate
        The certificate

    :group: certificates

    """
    if not isinstance(r, CorrelationMatrix):
        r = validate(r)
    if indices is not None:
        idx = np.asarray(indices, dtype=np.int64)
        r = validate(np.asarray(r.entries)[np.ix_(idx, idx)], rank_tol=r.rank_tol)
    dec = rank_decompose(r)
    return moment_certificate(
        VectorFamily(dec.a, name="rank_decomposition"),
        trials=trials,
        tol=tol,
        rng=rng,
        certificate_tol=certificate_tol,
    )
