"""Branch conventions and complex special functions used by every kernel.

All kernels in this package are built from a single square-root convention:
``sqrt_minus(z)`` returns the root w of w**2 = -z with Re w >= 0, and real
energies on a branch cut are always understood as limits from the upper
half-plane (limiting absorption).  With that convention every Green function
either decays (below the spectrum) or is outgoing (on the spectrum).

MacDonald functions K0, K1 of complex argument are evaluated through the
AMOS routines wrapped by scipy; an independent high-precision table frozen
under ``tests/data`` pins their accuracy to <= 1e-12 relative error on the
working domain |w| in [1e-6, 50], Re w >= 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import kv as _besselk

from .errors import BranchFlagError, DomainError

__all__ = [
    "SpectralPoint",
    "as_spectral",
    "sqrt_minus",
    "log_minus",
    "macdonald_k",
    "digamma_one",
]


@dataclass(frozen=True)
class SpectralPoint:
    """Complex spectral parameter z with an explicit limiting-absorption flag.

    ``from_above`` marks a real z that must be read as z + i0.  It is
    mandatory for real z > 0 (the free branch cut); whether it is needed for
    other real energies depends on the kernel being probed (the spin-orbit
    plane has essential spectrum starting at -kappa**2).
    """

    z: complex
    from_above: bool = False

    def __post_init__(self):
        zc = complex(self.z)
        if not (math.isfinite(zc.real) and math.isfinite(zc.imag)):
            raise DomainError("spectral parameter must be finite")
        object.__setattr__(self, "z", zc)

    def shifted(self, delta: float) -> "SpectralPoint":
        """Translate the energy, preserving the boundary flag."""
        return SpectralPoint(self.z + delta, self.from_above)


def as_spectral(z) -> SpectralPoint:
    """Coerce a complex number (or SpectralPoint) into a SpectralPoint."""
    if isinstance(z, SpectralPoint):
        return z
    return SpectralPoint(complex(z))


def sqrt_minus(z) -> complex:
    """Principal root of -z: returns w with w**2 = -z and Re w >= 0.

    For real z > 0 the value is the boundary limit from Im z > 0, namely
    -1j*sqrt(z); such points must carry the ``from_above`` flag.  The cut of
    the radicand sits on the negative real axis, so the map is continuous on
    the closed upper half-plane approach.
    """
    sp = as_spectral(z)
    zc = sp.z
    if zc.imag == 0.0:
        x = zc.real
        if x < 0.0:
            return complex(math.sqrt(-x), 0.0)
        if x == 0.0:
            return complex(0.0, 0.0)
        if not sp.from_above:
            raise BranchFlagError(
                "real energy %g lies on the branch cut; evaluate it as a "
                "limit from above (from_above=True)" % x
            )
        return complex(0.0, -math.sqrt(x))
    w = cmath.sqrt(-zc)
    # principal sqrt already has Re >= 0; guard against -0.0 real parts
    if w.real < 0.0:
        w = -w
    return w


def log_minus(z) -> complex:
    """ln(-z) on the branch consistent with :func:`sqrt_minus` (= 2 ln w)."""
    w = sqrt_minus(z)
    if w == 0.0:
        raise DomainError("log_minus undefined at z = 0")
    return 2.0 * cmath.log(w)


def digamma_one() -> float:
    """psi(1) = -gamma (Euler-Mascheroni constant), full double precision."""
    return -float(np.euler_gamma)


def macdonald_k(order: int, w) -> complex:
    """MacDonald function K_nu(w), nu in {0, 1}, for complex w with Re w >= 0.

    Values on the imaginary axis are the analytic continuation from
    Re w > 0 (principal branch).  Raises :class:`DomainError` at w = 0,
    where both orders are singular.
    """
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1, got %r" % (order,))
    wc = complex(w)
    if wc == 0.0:
        raise DomainError("K_%d has a singularity at w = 0" % order)
    if wc.real < 0.0:
        raise DomainError(
            "macdonald_k requires Re w >= 0 under the branch convention "
            "(got Re w = %g)" % wc.real
        )
    val = complex(_besselk(order, wc))
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise DomainError("K_%d evaluation failed at w = %r" % (order, wc))
    return val
