"""Exception hierarchy.

Every error carries a stable ``code`` string used by the CLI reports.
"""


class CohinvError(Exception):
    code = "error"


class DivisionByZero(CohinvError, ZeroDivisionError):
    code = "division_by_zero"


class FieldMismatch(CohinvError):
    code = "field_mismatch"


class ZeroElement(CohinvError):
    code = "zero_element"


class WrongCharacteristic(CohinvError):
    code = "wrong_characteristic"


class UnsupportedDegreeCombination(CohinvError):
    code = "unsupported_degree_combination"


class ZeroSlot(CohinvError):
    code = "zero_slot"


class PreviousInvariantNonzero(CohinvError):
    code = "previous_invariant_nonzero"


class OddDimension(CohinvError):
    code = "odd_dimension"


class Degenerate(CohinvError):
    code = "degenerate"


class DimensionMismatch(CohinvError):
    code = "dimension_mismatch"


class AlgebraMismatch(CohinvError):
    code = "algebra_mismatch"


class InconsistentDimensions(CohinvError):
    code = "inconsistent_dimensions"


class NotDivision(CohinvError):
    code = "not_division"


class UnsupportedAlgebra(CohinvError):
    code = "unsupported_algebra"


class NotEven(CohinvError):
    code = "not_even"


class ClassMismatch(CohinvError):
    code = "class_mismatch"


class NotSplit(CohinvError):
    code = "not_split"


class NotAlternatingChar2(CohinvError):
    code = "not_alternating_char2"


class OddRankTimesIndex(CohinvError):
    code = "odd_rank_times_index"


class NotSkewHermitian(CohinvError):
    code = "not_skew_hermitian"


class SplitAlgebra(CohinvError):
    code = "split_algebra"


class InvolutionMismatch(CohinvError):
    code = "involution_mismatch"


class MissingReferenceForm(CohinvError):
    code = "missing_reference_form"


class SearchSpaceTooLarge(CohinvError):
    code = "search_space_too_large"


class SchemaError(CohinvError):
    code = "schema_error"


class InvariantViolation(CohinvError):
    code = "invariant_violation"


class RouteMismatch(CohinvError):
    """Two independent computations of the same quantity disagreed."""

    code = "route_mismatch"
