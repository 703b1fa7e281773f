"""Compilation of constructions and statements into polynomial systems."""
from .algebraize import (AlgebraicModel, CircleCarrier, LineCarrier,
                         algebraize, coord_var)
from .measures import (MeasureModel, MeasureVariable, PreparedStatement,
                       attach_measures, prepare_statement)
from .predicates import UntranslatablePredicate, translate_predicate
from .simplify import (linear_presolve, nondegeneracy_factors,
                       saturate_by_factors, solve_linear, strip_factor,
                       try_divide)

__all__ = [
    "AlgebraicModel", "CircleCarrier", "LineCarrier", "algebraize",
    "coord_var", "MeasureModel", "MeasureVariable", "PreparedStatement",
    "attach_measures", "prepare_statement", "UntranslatablePredicate",
    "translate_predicate", "linear_presolve", "nondegeneracy_factors",
    "saturate_by_factors", "solve_linear", "strip_factor", "try_divide",
]
