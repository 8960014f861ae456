"""Exception hierarchy shared by the core packages and the command line."""


class BellError(Exception):
    """Base class for all library errors"""


class DomainError(BellError, ValueError):
    """An input violates the domain or the precondition of an operation"""


class UndecidedError(BellError):
    """A certified verdict could not be reached (refinement budget or shared root)"""

    def __init__(self, message: str, witness: str = ""):
        super().__init__(message)
        self.witness = witness or message


class InvariantError(BellError):
    """Two independent computations that must agree did not"""
