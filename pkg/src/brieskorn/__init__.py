"""Exact invariants of Brieskorn contact manifolds with periodic Reeb flow."""

__version__ = "0.1.0"

from .core import ExponentTuple, Shift, new_exponent_tuple, shift_classification
from .errors import (
    BrieskornError,
    CoverageError,
    MissingBettiError,
    ModeError,
    NotConvergedError,
    ValidationError,
)
from .grading import (
    check_index_positivity,
    generator_table,
    s_class,
    virtual_dimension,
    breaking_excluded,
)
from .laurent import (
    PeriodicGradedDims,
    detect_vanishing_differential,
    dims_in_window,
    homology_table,
    period_module,
    positive_part,
)
from .strata import BettiTable, enumerate_strata, resolve_betti, robbin_salamon_index
from .algebra import GradedPresentation, compare_to_module, hilbert_function, monomial_quotient_dims
