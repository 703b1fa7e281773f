"""Geometry DSL: typed construction model, parser/printer, numeric instances."""
from .model import (Construction, MeasureAtom, MeasureExpr, Predicate, SegRef,
                    SemanticError, Statement, Step)
from .numeric import (DEFAULT_TOL, eval_measure_expr, eval_predicate_numeric,
                      eval_statement_numeric, predicate_residual,
                      step_residuals)
from .parser import ParseError, parse, parse_measure_expression
from .sampler import (Instance, PinError, UnsatisfiableInstance,
                      free_ancestors, sample_instance)

__all__ = [
    "Construction", "Step", "Statement", "Predicate", "SegRef",
    "MeasureAtom", "MeasureExpr", "SemanticError",
    "parse", "parse_measure_expression", "ParseError",
    "Instance", "sample_instance", "UnsatisfiableInstance", "PinError",
    "free_ancestors",
    "eval_predicate_numeric", "eval_statement_numeric", "predicate_residual",
    "eval_measure_expr", "step_residuals", "DEFAULT_TOL",
]
