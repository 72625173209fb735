"""Working-precision plumbing shared by the numeric modules.

All high-precision arithmetic goes through mpmath; a PrecisionContext fixes
the mantissa size and the tolerances used by equality and residual checks.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import mpmath as mp

# Extra bits carried internally so results round correctly at the requested size.
GUARD_BITS = 16


@dataclass(frozen=True)
class PrecisionContext:
    """Mantissa size plus the tolerances derived checks compare against.

    degeneracy_tol guards Y in {0, -1} during trajectory steps; None means
    "use tau_res".  Monomial-limit evaluations override it with 0.0 so that
    legitimately tiny values (|Y| ~ eps^k) are not mistaken for degeneracies.
    """

    mantissa_bits: int = 128
    tau_eq: float = 1e-25
    tau_res: float = 1e-20
    degeneracy_tol: float | None = None

    def __post_init__(self):
        if self.mantissa_bits < 53:
            raise ValueError("mantissa_bits must be at least 53")
        if not (self.tau_eq > 0 and self.tau_res > 0):
            raise ValueError("tolerances must be positive")
        if self.degeneracy_tol is not None and self.degeneracy_tol < 0:
            raise ValueError("degeneracy_tol must be nonnegative")

    def workprec(self, extra: int = 0):
        """Context manager setting mpmath precision to mantissa_bits (+ guard)."""
        return mp.workprec(self.mantissa_bits + GUARD_BITS + extra)

    def with_bits(self, bits: int) -> "PrecisionContext":
        return replace(self, mantissa_bits=bits)

    @property
    def step_tol(self) -> float:
        """Degeneracy threshold used by trajectory steps."""
        return self.tau_res if self.degeneracy_tol is None else self.degeneracy_tol


DEFAULT_CONTEXT = PrecisionContext()


def to_mpc(value):
    """Coerce floats/complex/numpy scalars to mpmath numbers.

    mp types pass through unchanged: re-wrapping them in mp.mpc would round
    at the ambient precision and silently destroy high-precision mantissas.
    """
    if isinstance(value, (mp.mpc, mp.mpf)):
        return value
    if isinstance(value, complex):
        return mp.mpc(value.real, value.imag)
    if isinstance(value, (int, float)):
        return mp.mpf(value) if isinstance(value, float) else mp.mpf(int(value))
    # numpy scalars and anything with __complex__
    c = complex(value)
    return mp.mpf(c.real) if c.imag == 0 else mp.mpc(c.real, c.imag)
