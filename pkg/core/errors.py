from typing import Optional


class GraphPolyError(Exception):
    """Base class for every error raised by the library"""

    exit_code = 1

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.field = field

    def diagnostic(self) -> str:
        """One-line diagnostic naming the offending field, if any"""
        if self.field:
            return f"{self.field}: {self.message}"
        return self.message


class InputError(GraphPolyError):
    """Malformed or unsupported user input (exit code 1)"""

    exit_code = 1


class VerificationError(GraphPolyError):
    """An internal cross-check failed (exit code 2)"""

    exit_code = 2


class RegistryMismatchError(InputError):
    pass


class NonUnitPowerError(InputError):
    pass


class UnknownEdgeError(InputError):
    pass


class UnknownColorError(InputError):
    pass


class EnumerationCapError(InputError):
    pass


class ZeroReplacementError(InputError):
    pass


class ReplacementRingError(InputError):
    """Negative replacement requested outside the bracket-specialized ring"""


class InexactDivisionError(VerificationError):
    """A division the formulas guarantee to be exact left a remainder"""


class OracleMismatchError(VerificationError):
    pass
