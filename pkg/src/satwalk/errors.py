"""Exception hierarchy shared by the library and the command-line driver.

Exit-code mapping used by the CLI: ValidationError and its subclasses map
to exit code 2, CapacityError to 3, NumericalQualityError to 4.
"""


class SatwalkError(Exception):
    """Base class for all library errors."""


class ValidationError(SatwalkError):
    """Malformed input, violated precondition, or rejected request."""


class UnsatisfiableError(ValidationError):
    """A constraint set admits no satisfying assignment."""


class NotTwoSatDefinableError(ValidationError):
    """A state set is not the solution set of any two-variable clause system.

    Carries one spurious state: a bitstring admitted by the maximal
    recovered clause set but absent from the input.
    """

    def __init__(self, spurious: str):
        self.spurious = spurious
        super().__init__(
            f"state set is not 2-SAT definable; recovered clauses also admit {spurious!r}"
        )


class CapacityError(SatwalkError):
    """Requested size exceeds a configured cap for the exhaustive path."""


class NumericalQualityError(SatwalkError):
    """A residual or tolerance check failed; results would be untrustworthy."""
