"""
Exception hierarchy for the euler_stability package.
"""


class EulerStabilityError(Exception):
    """Base class for all package errors."""


class DegenerateClassError(EulerStabilityError, ValueError):
    """A ρ coefficient was requested at the zero mode."""


class AdmissibilityError(EulerStabilityError, ValueError):
    """No admissible Zeitlin grid size exists, or the requested one is not admissible."""


class DensityDomainError(EulerStabilityError, ValueError):
    """The density function was evaluated at or outside its support."""


class ClassificationError(EulerStabilityError, RuntimeError):
    """An eigenvalue could not be paired under the ± / conjugation symmetry."""


class EigensolverError(EulerStabilityError, RuntimeError):
    """The dense eigensolver failed or violated its residual contract."""


class ConsistencyError(EulerStabilityError, RuntimeError):
    """An internal invariant was violated (a state that theory rules out)."""


class VerificationError(EulerStabilityError):
    """One or more verification checks failed."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__(f"{len(self.failures)} verification check(s) failed: "
                         + ", ".join(self.failures))
