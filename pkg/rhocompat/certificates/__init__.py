from .families import (
    VectorFamily,
    vectors_12,
    icosahedron_family,
    standard_basis_family,
    gram_matrix,
)
from .frames import frame_ratios, check_frame_identities
from .certificate import (
    MomentCertificate,
    moment_certificate,
    uniform_moments,
    certify_matrix,
    CERTIFICATE_TOL,
    UNIFORM_SQRT3_MOMENTS,
)
from .embedding import matrix_12, embed_high_dim
from .assess import (
    Assessment,
    assess,
    COMPATIBLE_EXACT,
    COMPATIBLE_THEORY,
    COMPATIBLE_CONSTRUCTED,
    INCOMPATIBLE,
    INCONCLUSIVE,
    MAX_DIM_ALL_COMPATIBLE,
)
