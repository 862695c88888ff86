"""
Compatibility of Spearman's rank correlation matrices

"""

from .core import CorrelationMatrix, RankDecomposition, validate, nearest_correlation
from .stats import Sample, spearman_matrix
from .models import SphereModel, MixtureModel, GaussianModel

from . import utils
from . import core
from . import stats
from . import models
from . import certificates
from . import optimizers
from . import benchmarks

from importlib.metadata import version
__version__ = version(__package__ or __name__)
