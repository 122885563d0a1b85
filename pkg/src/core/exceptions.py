"""
Core Application Exceptions

Defines the base exception and the domain exceptions raised by the hash core,
the attack pipeline, the forge and the oracles. The CLI layer converts them to
exit codes (see src.cli.exceptions).
"""

from typing import Any, Dict, Optional


# Base application exception
class AppException(Exception):
    """Base class for other custom exceptions in the application."""
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self):
        if self.details:
            return f"{self.message}: {self.details}"
        return self.message


class ValidationError(AppException):
    """Malformed input (messages, parameters, encodings)."""
    pass


class NotInvertibleError(AppException):
    """Raised when a zero residue or a map with zero linear part is inverted."""
    def __init__(self, message: str = "not invertible", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


class ModulusMismatchError(AppException):
    """Operands live over different primes."""
    def __init__(self, message: str = "modulus mismatch", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


class NotAnImageError(AppException):
    """The target cannot be the H-image of any string of the given length."""
    pass


class UnsolvableInstanceError(AppException):
    """An exact subset-sum strategy proved that no 0/1 combination hits the target."""
    def __init__(self, message: str = "unsolvable instance", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


class SolverGaveUpError(AppException):
    """A heuristic strategy exhausted its retry budget; the instance may still be solvable."""
    def __init__(self, message: str = "solver gave up", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


class NoInsertablePreimageError(AppException):
    """No preimage of g^-1 shorter than t was found within the search budget."""
    def __init__(
        self,
        message: str = "no insertable preimage; choose larger t or different g",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message, details)


class NotACollisionError(AppException):
    """Input pair to the forge is not an equal-length H-collision."""
    def __init__(self, message: str = "not an H-collision", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)


class InputTooShortError(AppException):
    """Requested message length leaves nothing to swap."""
    def __init__(
        self,
        message: str = "input too short for solver regime",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message, details)


class SearchExhaustedError(AppException):
    """An oracle enumeration ran out of budget without an answer."""
    pass


class VerificationError(AppException):
    """
    Internal-consistency failure: an attack or forge output did not re-verify.

    Always indicates a defect; callers must never swallow it.
    """
    pass
