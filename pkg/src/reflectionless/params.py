"""Parameter containers and error types shared by every module.

Units are fixed to hbar = 1, 2m = 1 throughout, so energies are k**2 and the
potential well is V(x) = -2 kappa**2 sech**2(kappa x).
"""

from dataclasses import dataclass


class DomainError(ValueError):
    """Argument outside the domain where an operation is defined."""


class NonConvergence(RuntimeError):
    """Iterative or adaptive routine gave up before reaching its target.

    The best available ``value`` and ``err_estimate`` (or failing ``index``)
    are kept on the exception so callers can still report them.
    """

    def __init__(self, message, value=None, err_estimate=None, index=None):
        super().__init__(message)
        self.value = value
        self.err_estimate = err_estimate
        self.index = index


class InternalInconsistency(RuntimeError):
    """A quantity that must be non-negative (or otherwise constrained) was not."""


class StepSizeError(ValueError):
    """Propagation step too coarse for the requested wavenumber."""

    def __init__(self, message, suggested_n):
        super().__init__(message)
        self.suggested_n = suggested_n


@dataclass(frozen=True)
class PotentialParams:
    """Well strength plus the numerical thresholds used by the closed forms.

    kappa : inverse length, > 0
    tol : dimensionless tolerance, 0 < tol < 1e-3
    k_eps : relative small-k threshold (|k| < k_eps * kappa) for series branches
    """

    kappa: float = 1.0
    tol: float = 1e-8
    k_eps: float = 1e-4

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError(f"kappa must be positive, got {self.kappa!r}")
        if not 0 < self.tol < 1e-3:
            raise DomainError(f"tol must lie in (0, 1e-3), got {self.tol!r}")
        if not 0 < self.k_eps < 1e-2:
            raise DomainError(f"k_eps must lie in (0, 1e-2), got {self.k_eps!r}")


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for the adaptive Gauss-Kronrod integrator.

    ``decay_cutoff`` is the half-width of the default window [-c, c] used when
    an integrand over the real line is truncated at its exponential envelope.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 4000
    decay_cutoff: float = 40.0

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("abs_tol and rel_tol must be positive")
        if self.max_subdivisions < 16:
            raise DomainError("max_subdivisions must be at least 16")
        if not self.decay_cutoff > 0:
            raise DomainError("decay_cutoff must be positive")
