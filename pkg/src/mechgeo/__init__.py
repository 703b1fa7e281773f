"""mechgeo: exact algebraic reasoning about plane and solid geometry.

Compiles dynamic-geometry constructions into polynomial ideals over the
rationals and answers questions about them (proof, refutation, implicit
loci, envelopes, metric relations, and property discovery) with
Groebner-basis computations.
"""
from .limits import DEFAULT_LIMITS, ResourceLimitError, ResourceLimits

__version__ = "0.1.0"

__all__ = ["ResourceLimits", "ResourceLimitError", "DEFAULT_LIMITS", "__version__"]
