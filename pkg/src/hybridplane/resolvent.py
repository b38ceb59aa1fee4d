"""Full resolvent of the coupled Hamiltonian in factored Krein form.

The coupled Green function is the decoupled block-diagonal kernel minus a
finite-rank correction that factors through the 4-dimensional boundary
space:

    G(p, p'; z) = G0(p, p'; z) - T(p; z) [Q(z) - tilde_A]^(-1) S(p'; z)

with T the 2x4 trace block of kernel values against the junction and S the
4x2 block of kernel values from the junction.  For Im z != 0 the adjoint
side satisfies S(p'; z) = T(p'; zbar)^dagger, which the tests verify; the
implementation evaluates S directly so that real energies taken as limits
from above are handled by the same code path (conjugating a flagged real
energy would flip it to the limit from below).  The correction is never
assembled as a dense operator; only the factors are exposed, which keeps
the evaluation well conditioned near poles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError
from .junction import CouplingMatrices, krein_denominator
from .lead_green import lead_green
from .plane_green import SIGMA0, SpinOrbitParams, spin_orbit_green
from .specfun import as_spectral

__all__ = [
    "LeadPoint",
    "PlanePoint",
    "ConfigPoint",
    "trace_kernel",
    "junction_trace",
    "full_green",
]


@dataclass(frozen=True)
class LeadPoint:
    """Point on the halfline lead, coordinate x >= 0."""

    x: float

    def __post_init__(self):
        if not self.x >= 0.0:
            raise DomainError("lead coordinate must be nonnegative")


@dataclass(frozen=True)
class PlanePoint:
    """Point of the plane."""

    x1: float
    x2: float

    @property
    def xy(self):
        return (self.x1, self.x2)


ConfigPoint = Union[LeadPoint, PlanePoint]

_ORIGIN = (0.0, 0.0)


def _check_off_junction(p: ConfigPoint) -> None:
    if isinstance(p, LeadPoint):
        if p.x == 0.0:
            raise DomainError("trace kernel is not defined at the junction itself")
    elif isinstance(p, PlanePoint):
        if p.x1 == 0.0 and p.x2 == 0.0:
            raise DomainError("trace kernel diverges at the junction itself")
    else:
        raise DomainError("configuration point must be a LeadPoint or PlanePoint")


def trace_kernel(p: ConfigPoint, z, so: SpinOrbitParams) -> np.ndarray:
    """2x4 block of kernel values between a configuration point and the junction.

    Lead points fill the first two columns with lead_green(x, 0; z) * I,
    plane points fill the last two with the spin-orbit kernel against the
    origin; the complementary columns are exactly zero.
    """
    sp = as_spectral(z)
    _check_off_junction(p)
    block = np.zeros((2, 4), dtype=complex)
    if isinstance(p, LeadPoint):
        block[:, :2] = lead_green(p.x, 0.0, sp) * SIGMA0
    else:
        block[:, 2:] = spin_orbit_green(p.xy, _ORIGIN, sp, so)
    return block


def junction_trace(p: ConfigPoint, z, so: SpinOrbitParams) -> np.ndarray:
    """4x2 block of kernel values from the junction to a configuration point."""
    sp = as_spectral(z)
    _check_off_junction(p)
    block = np.zeros((4, 2), dtype=complex)
    if isinstance(p, LeadPoint):
        block[:2, :] = lead_green(0.0, p.x, sp) * SIGMA0
    else:
        block[2:, :] = spin_orbit_green(_ORIGIN, p.xy, sp, so)
    return block


def _decoupled_block(p: ConfigPoint, p_prime: ConfigPoint, z, so) -> np.ndarray:
    if isinstance(p, LeadPoint) and isinstance(p_prime, LeadPoint):
        return lead_green(p.x, p_prime.x, z) * SIGMA0
    if isinstance(p, PlanePoint) and isinstance(p_prime, PlanePoint):
        if p.xy == p_prime.xy:
            raise DomainError("coupled Green function diverges at coincident plane points")
        return spin_orbit_green(p.xy, p_prime.xy, z, so)
    # lead <-> plane blocks of the decoupled kernel vanish
    return np.zeros((2, 2), dtype=complex)


def full_green(
    p: ConfigPoint,
    p_prime: ConfigPoint,
    z,
    so: SpinOrbitParams,
    m: CouplingMatrices,
) -> np.ndarray:
    """2x2 spin block of the coupled Green function between p and p'."""
    sp = as_spectral(z)
    _, inv, _ = krein_denominator(sp, so, m)
    left = trace_kernel(p, sp, so)
    right = junction_trace(p_prime, sp, so)
    return _decoupled_block(p, p_prime, sp, so) - left @ inv @ right
