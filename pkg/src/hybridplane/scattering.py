"""Junction scattering: reflection amplitude and generalized eigenfunctions.

A particle comes down the lead with momentum k > 0 (energy k**2 + i0).  For
a spin-independent coupling (a, c, d) the reflection amplitude is

    R(k) = - [(a + ik)(g(k**2) - d) + |c|**2]
           / [(a - ik)(g(k**2) - d) + |c|**2],

with g the renormalized plane kernel value; |R| < 1 for c != 0 because the
particle can escape into the plane (the deficit is exactly
k |c|**2 / |denominator|**2, positive since Im g = 1/4 on the positive
axis).  The generalized eigenfunction is assembled from the same Krein
denominator; its lead far field must reproduce R(k), which ties the two
code paths together and is enforced in the acceptance tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HybridPlaneError, PoleOnAxisError
from .junction import SpinIndependentCoupling, krein_matrix, tilde_transform
from .lead_green import lead_green
from .plane_green import SpinOrbitParams, q_helper, renormalized_green_scalar, spin_orbit_green
from .specfun import SpectralPoint, as_spectral, sqrt_minus

__all__ = [
    "ReflectionResult",
    "ScatteringState",
    "FarFieldFit",
    "reflection_amplitude",
    "reflection_from_energy",
    "spinless_reference_reflection",
    "scattering_state",
    "far_field_ratio",
]

_ORIGIN = (0.0, 0.0)


@dataclass(frozen=True)
class ReflectionResult:
    """Reflection amplitude with derived probabilities.

    transmission = 1 - |R|**2 by construction; it is the probability of
    passing into the plane.
    """

    amplitude: complex
    probability: float
    transmission: float


def _reflection_result(r: complex) -> ReflectionResult:
    prob = abs(r) ** 2
    if prob > 1.0 + 1e-12:
        raise HybridPlaneError(
            "reflection probability %.17g exceeds unity beyond tolerance" % prob
        )
    return ReflectionResult(amplitude=r, probability=prob, transmission=1.0 - prob)


def _reflection_scalar(z, g: complex, a: float, c: complex, d: float) -> complex:
    ik = -sqrt_minus(z)  # i * sqrt(z) with sqrt(z) = i * sqrt_minus(z)
    gp = g - d
    num = (a + ik) * gp + abs(c) ** 2
    den = (a - ik) * gp + abs(c) ** 2
    scale = max(abs(a) + abs(ik), 1.0) * max(abs(gp), 1.0) + abs(c) ** 2
    if abs(den) < 1e-12 * scale:
        raise PoleOnAxisError(
            "scattering denominator vanishes at z = %s: parameter degeneracy"
            % (as_spectral(z).z,)
        )
    return -num / den


def reflection_from_energy(z, c: SpinIndependentCoupling, p: SpinOrbitParams) -> complex:
    """Reflection amplitude as an analytic function of the energy z.

    At z = k**2 + i0 this is R(k); off the real axis it is the analytic
    continuation used by the epsilon-ladder validation.
    """
    g = renormalized_green_scalar(z, p)
    return _reflection_scalar(z, g, c.a, c.c, c.d)


def reflection_amplitude(
    k: float, c: SpinIndependentCoupling, p: SpinOrbitParams
) -> ReflectionResult:
    """R(k) for lead momentum k > 0; independent of the incident spin state."""
    k = float(k)
    if not (k > 0 and math.isfinite(k)):
        raise DomainError("lead momentum k must be positive and finite")
    z = SpectralPoint(k * k, from_above=True)
    return _reflection_result(reflection_from_energy(z, c, p))


def spinless_reference_reflection(k: float, a: float, c: complex, d: float) -> complex:
    """Reflection amplitude of the junction without spin-orbit interaction.

    Same closed form with the free-plane kernel value; equals
    reflection_amplitude at kappa = 0 and serves as the reference the
    kappa -> 0 limit must reproduce.
    """
    k = float(k)
    if not (k > 0 and math.isfinite(k)):
        raise DomainError("lead momentum k must be positive and finite")
    z = SpectralPoint(k * k, from_above=True)
    return _reflection_scalar(z, q_helper(z), a, c, d)


@dataclass(frozen=True)
class ScatteringState:
    """Generalized eigenfunction sampled on lead and plane points."""

    k: float
    incident_spin: np.ndarray
    lead_points: np.ndarray
    lead_values: np.ndarray  # (n, 2) spinors
    plane_points: np.ndarray  # (m, 2) coordinates
    plane_values: np.ndarray  # (m, 2) spinors


def scattering_state(
    k: float,
    spin,
    lead_samples,
    plane_samples,
    c: SpinIndependentCoupling,
    p: SpinOrbitParams,
) -> ScatteringState:
    """Sample the scattering eigenfunction for an incident lead wave.

    The incident wave is cos(kx) times the given spin state (the Neumann
    condition at the lead end forbids any other combination of e^{+-ikx}).
    The junction correction is  - T(x; z) [Q(z) - tilde_A]^{-1} u  with u
    the boundary vector of the incident wave: its lead value is the spin
    state, every other component zero.
    """
    k = float(k)
    if not (k > 0 and math.isfinite(k)):
        raise DomainError("lead momentum k must be positive and finite")
    spin = np.asarray(spin, dtype=complex).reshape(2)
    z = SpectralPoint(k * k, from_above=True)

    denom = krein_matrix(z, p) - tilde_transform(c.matrices())
    cond = np.linalg.cond(denom)
    if not math.isfinite(cond) or cond > 1e14:
        raise PoleOnAxisError(
            "Krein denominator is singular at z = %g + i0" % (k * k)
        )
    u = np.concatenate([spin, np.zeros(2, dtype=complex)])
    w = np.linalg.solve(denom, u)
    w_lead, w_plane = w[:2], w[2:]

    lead_points = np.asarray([float(x) for x in lead_samples], dtype=float)
    if np.any(lead_points < 0):
        raise DomainError("lead samples must have x >= 0")
    lead_values = np.empty((lead_points.size, 2), dtype=complex)
    for i, x in enumerate(lead_points):
        lead_values[i] = cmath.cos(k * x) * spin - lead_green(x, 0.0, z) * w_lead

    plane_points = np.asarray(plane_samples, dtype=float).reshape(-1, 2)
    plane_values = np.empty((plane_points.shape[0], 2), dtype=complex)
    for i, xy in enumerate(plane_points):
        if xy[0] == 0.0 and xy[1] == 0.0:
            raise DomainError("plane samples must avoid the junction point")
        plane_values[i] = -spin_orbit_green(xy, _ORIGIN, z, p) @ w_plane

    return ScatteringState(
        k=k,
        incident_spin=spin,
        lead_points=lead_points,
        lead_values=lead_values,
        plane_points=plane_points,
        plane_values=plane_values,
    )


@dataclass(frozen=True)
class FarFieldFit:
    """Least-squares decomposition of lead samples into e^{-ikx}, e^{+ikx}."""

    incoming: np.ndarray  # (2,) spinor amplitude of e^{-ikx}
    outgoing: np.ndarray  # (2,) spinor amplitude of e^{+ikx}
    ratio: complex  # outgoing/incoming on the dominant spin component
    residual: float  # max relative fit residual


def far_field_ratio(lead_points, lead_values, k: float) -> FarFieldFit:
    """Fit sampled lead values to two counter-propagating waves.

    The ratio of the outgoing to the incoming amplitude on the dominant
    spin component is the measured reflection amplitude.
    """
    xs = np.asarray(lead_points, dtype=float)
    vals = np.asarray(lead_values, dtype=complex).reshape(xs.size, 2)
    if xs.size < 4:
        raise DomainError("far-field fit needs at least four samples")
    design = np.column_stack([np.exp(-1j * k * xs), np.exp(1j * k * xs)])
    coef, *_ = np.linalg.lstsq(design, vals, rcond=None)
    fitted = design @ coef
    scale = float(np.max(np.abs(vals)))
    residual = float(np.max(np.abs(fitted - vals))) / max(scale, 1e-300)
    incoming, outgoing = coef[0], coef[1]
    dominant = int(np.argmax(np.abs(incoming)))
    if abs(incoming[dominant]) == 0.0:
        raise DomainError("no incoming wave found in the lead samples")
    return FarFieldFit(
        incoming=incoming,
        outgoing=outgoing,
        ratio=complex(outgoing[dominant] / incoming[dominant]),
        residual=residual,
    )
