from .planted import random_sphere_factor, planted_mixture
