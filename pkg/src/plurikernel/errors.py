"""Exception types shared across the package."""

__all__ = ["PlurikernelError", "DomainError", "SolverError", "EvaluationError"]


class PlurikernelError(Exception):
    """Base class for all package errors."""


class DomainError(PlurikernelError):
    """Invalid or inconsistent domain data."""


class SolverError(PlurikernelError):
    """Newton / homotopy failure; carries the diagnostic report."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


class EvaluationError(PlurikernelError):
    """A kernel or projection evaluation failed."""
