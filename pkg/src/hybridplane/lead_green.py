"""Green function of the halfline lead with Neumann end.

The lead is the halfline x >= 0 with Hamiltonian -d^2/dx^2 and Neumann
condition at the origin.  We write sqrt(z) := 1j * sqrt_minus(z), so that
Im sqrt(z) >= 0 and the kernel decays off the spectrum and is outgoing on
it; the junction diagonal value i/sqrt(z) is insensitive to that sign
choice.
"""

from __future__ import annotations

import cmath

from .errors import DomainError
from .specfun import as_spectral, sqrt_minus

__all__ = ["lead_green", "lead_diagonal"]


def lead_green(x: float, x_prime: float, z) -> complex:
    """Scalar kernel (i/sqrt(z)) cos(sqrt(z) x_<) exp(i sqrt(z) x_>).

    The full lead block is this value times the 2x2 identity in spin space.
    """
    x = float(x)
    x_prime = float(x_prime)
    if x < 0.0 or x_prime < 0.0:
        raise DomainError("lead coordinates must be nonnegative")
    sp = as_spectral(z)
    if sp.z == 0.0:
        raise DomainError("lead Green function diverges at z = 0")
    root = 1j * sqrt_minus(sp)
    x_lo, x_hi = (x, x_prime) if x <= x_prime else (x_prime, x)
    return (1j / root) * cmath.cos(root * x_lo) * cmath.exp(1j * root * x_hi)


def lead_diagonal(z) -> complex:
    """Junction diagonal value i/sqrt(z) = lead_green(0, 0, z)."""
    sp = as_spectral(z)
    if sp.z == 0.0:
        raise DomainError("lead diagonal diverges at z = 0")
    return 1j / (1j * sqrt_minus(sp))
