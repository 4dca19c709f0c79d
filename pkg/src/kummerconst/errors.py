"""Exception hierarchy shared across the package.

CLI exit codes: usage/family errors 2, DomainError 3, PrecisionNotReached 4,
ResourceLimit (including factorization budget) 5.
"""

from __future__ import annotations


class DomainError(ValueError):
    """Input outside the mathematical domain (a in {0, +-1}, p | a, square discriminant, ...)."""


class FamilyError(ValueError):
    """Malformed or unusable multiplicative-family specification."""


class PrecisionNotReached(RuntimeError):
    """Target width not achievable within the prime cutoff / budget.

    Carries the widest enclosure actually achieved in ``result`` when the
    evaluator got far enough to produce one.
    """

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class ResourceLimit(RuntimeError):
    """Configured memory or operation budget exceeded."""


class FactorizationTimeout(ResourceLimit):
    """Factorization operation budget exhausted."""


class IntegrityError(AssertionError):
    """An internal cross-check that must hold by construction failed."""


class VerificationFailure(AssertionError):
    """Brute-force group verification found a counterexample."""

    def __init__(self, message: str, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
