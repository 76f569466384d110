"""Custom exceptions for the library and the command line."""
from typing import Any, List, Optional, Tuple


class SharpHilbertException(Exception):
    """Base exception for all custom exceptions."""

    def __init__(self, message: str, exit_code: int = 1):
        self.message = message
        self.exit_code = exit_code
        super().__init__(self.message)


class DomainError(SharpHilbertException):
    """Raised when an argument lies outside an operation's domain."""

    def __init__(self, message: str = "Argument outside the domain", exit_code: int = 2):
        super().__init__(message, exit_code)


class NonRealResult(SharpHilbertException):
    """Raised when a synthesis that should be real carries an imaginary residue."""

    def __init__(self, message: str = "Reconstruction is not real", exit_code: int = 1):
        super().__init__(message, exit_code)


class QuadratureFailure(SharpHilbertException):
    """Raised when adaptive quadrature misses its tolerance."""

    def __init__(self, message: str = "Quadrature did not converge", exit_code: int = 1):
        super().__init__(message, exit_code)


class CertificateFailure(SharpHilbertException):
    """Raised when a numerical certificate finds violating points."""

    def __init__(
        self,
        message: str = "Certificate failed",
        exit_code: int = 1,
        report: Optional[Any] = None,
        violations: Optional[List[Tuple[str, float, float]]] = None,
    ):
        self.report = report
        self.violations = violations or []
        super().__init__(message, exit_code)


class ConfigError(SharpHilbertException):
    """Raised for invalid specs, settings or flags."""

    def __init__(self, message: str = "Invalid configuration", exit_code: int = 2):
        super().__init__(message, exit_code)


class OptimizationFailure(SharpHilbertException):
    """Raised when a maximizer cannot bracket or converge."""

    def __init__(self, message: str = "Optimization failed", exit_code: int = 1):
        super().__init__(message, exit_code)


class ParseError(SharpHilbertException):
    """Raised for malformed input files."""

    def __init__(
        self,
        message: str = "Could not parse input",
        exit_code: int = 2,
        line: Optional[int] = None,
    ):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, exit_code)


class IoError(SharpHilbertException):
    """Raised when an input or output path cannot be used."""

    def __init__(self, message: str = "I/O error", exit_code: int = 2):
        super().__init__(message, exit_code)
