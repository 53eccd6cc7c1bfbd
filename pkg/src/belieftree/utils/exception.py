#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

from . import printer


class BeliefTreeException(Exception):
    """
    The BeliefTree Exception class defines a custom exception that is able
    to track errors within the inference engine. Malformed networks, scope
    mismatches between belief tables and corrupted propagation states will
    all throw a BeliefTreeException, or one of its subclasses.
    """

    exit_status: int = 1
    """Defines the process exit status used by the command line for this kind of error."""

    def __init__(self, message: str):
        """
        Reports the message through the printer as soon as the error is
        created, so it is visible even when the error is caught.

        :param message:     The description of the error
        :type message:      str
        """

        printer.error(message)
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return "[BELIEFTREE ERROR] %s" % self.message


class NetworkParseError(BeliefTreeException):
    """
    Thrown when a network, case or tree document cannot be read. Syntax errors
    carry the line and column of the offending character.
    """

    exit_status: int = 4

    def __init__(self, message: str, line: int = None, column: int = None):
        """
        :param message:     The information error message that will be thrown.
        :type message:      str
        :param line:        The 1-based line of the error, if known
        :type line:         int
        :param column:      The 1-based column of the error, if known
        :type column:       int
        """

        self.line = line
        self.column = column
        if line is not None:
            message = "%s (line %d, column %d)" % (message, line, column or 0)
        super().__init__(message)


class NetworkValidationError(BeliefTreeException):
    """
    Thrown when an operation requires a valid network and the validation
    report lists violations. The report is kept on the exception.
    """

    exit_status: int = 2

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class UnknownNodeError(BeliefTreeException):
    """Thrown when a node identifier or state label cannot be resolved."""

    exit_status: int = 4


class ScopeError(BeliefTreeException):
    """Thrown when the scopes of belief tables do not fit the requested operation."""


class InconsistencyError(BeliefTreeException):
    """
    Thrown when a nonzero belief is divided by a zero belief. This can only
    happen with a corrupted propagation state.
    """


class JunctionPropertyError(BeliefTreeException):
    """Thrown when a built tree violates the junction property."""


class ExcludedCaseError(BeliefTreeException):
    """
    Thrown when a posterior is requested for a case with a zero normalization
    constant. Such a case has been excluded from the model.
    """

    exit_status: int = 3


class UndefinedPosteriorError(BeliefTreeException):
    """Thrown when the reference posterior of a zero-probability case is requested."""


class StateSpaceTooLargeError(BeliefTreeException):
    """Thrown when a full joint enumeration would exceed the size guard."""


class GeneratorParameterError(BeliefTreeException):
    """Thrown when the synthetic network parameters are out of range."""

    exit_status: int = 2


class ApproximationError(BeliefTreeException):
    """Thrown when an approximation is requested on an unsuitable tree or configuration."""

    exit_status: int = 2
