from .exception import (
    BeliefTreeException,
    NetworkParseError,
    NetworkValidationError,
    UnknownNodeError,
    ScopeError,
    InconsistencyError,
    JunctionPropertyError,
    ExcludedCaseError,
    UndefinedPosteriorError,
    StateSpaceTooLargeError,
    GeneratorParameterError,
    ApproximationError,
)
from . import printer, helper
