from .model import CopulaModel, validate_weights
from .sphere import (
    SphereModel,
    MixtureModel,
    sample_sphere_point,
    sample_sphere_points,
    build_from_rank3,
    sample_model,
    spearman_law,
)
from .gaussian import (
    GaussianModel,
    pearson_param_from_spearman,
    spearman_of_gaussian,
    worst_case_error,
    build_gaussian_model,
    sample_gaussian,
)
from .serialize import model_from_dict
