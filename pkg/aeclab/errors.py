from typing import Optional


class AecLabError(ValueError):
    """Base class for every input or precondition failure raised by aeclab"""


class GraphInputError(AecLabError):
    pass


class PreconditionError(AecLabError):
    """A search was asked to run on inputs that violate its preconditions"""


class UnknownScenarioError(AecLabError):
    pass


class SpecError(AecLabError):
    """Error tied to a position in a spec file"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        self.reason = message
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class SpecSyntaxError(SpecError):
    pass


class SpecResolutionError(SpecError):
    pass
