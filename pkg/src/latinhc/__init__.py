"""Latin hypercuboids of class r, mixed codes and their equivalences."""

from .core import (EMPTY, CuboidShape, Hypercuboid, IsotopyTransform,
                   SubarraySelector, ValidationReport, apply_transform,
                   canonical_form, distance_rule_valid, is_semi_reduced,
                   iter_subarrays, orbit_bruteforce, semi_reduce, validate)
from .errors import (ConstructionError, DataError, LatinError, ParameterError,
                     ResourceError)

__version__ = "0.1.0"
