"""Self-check suites surfaced by the command line.

Each suite exercises one invariant of the library at desk scale and
reports the worst observed deviation against its tolerance.  Random draws
are controlled by the seed so reports are reproducible.
"""

from __future__ import annotations

import numpy as np

from .junction import (
    BoundaryData,
    SpinIndependentCoupling,
    boundary_condition_residual,
    tilde_relation_residual,
    tilde_transform,
    validate_coupling,
)
from .lead_green import lead_green
from .plane_green import (
    SIGMA0,
    SpinOrbitKind,
    SpinOrbitParams,
    renormalized_green_oracle,
    renormalized_green_scalar,
    spin_orbit_green,
)
from .scattering import reflection_amplitude
from .specfun import SpectralPoint, macdonald_k, sqrt_minus
from .spectrum import design_coupling_for_eigenvalue, find_bound_states

__all__ = ["run_diagnostics"]


def _suite(name, worst, tol):
    return {
        "name": name,
        "passed": bool(worst <= tol),
        "worst": float(worst),
        "tolerance": float(tol),
    }


def _macdonald_wronskian(rng):
    worst = 0.0
    for _ in range(40):
        w = complex(rng.uniform(0.5, 8.0), rng.uniform(-4.0, 4.0))
        h = 1e-5 * abs(w)
        deriv = (macdonald_k(0, w + h) - macdonald_k(0, w - h)) / (2 * h)
        worst = max(worst, abs(deriv + macdonald_k(1, w)) / abs(macdonald_k(1, w)))
    return _suite("macdonald_wronskian", worst, 1e-6)


def _branch_convention(rng):
    worst = 0.0
    for _ in range(60):
        z = complex(rng.uniform(-9, 9), rng.uniform(1e-6, 9))
        w = sqrt_minus(z)
        worst = max(worst, 0.0 if w.real > 0 else 1.0)
        worst = max(worst, abs(sqrt_minus(z.conjugate()) - w.conjugate()))
    return _suite("sqrt_minus_branch", worst, 1e-13)


def _kernel_symmetry(rng):
    worst = 0.0
    for kind in SpinOrbitKind:
        p = SpinOrbitParams(kind, 0.8)
        for _ in range(25):
            x = rng.uniform(-2, 2, size=2)
            xp = rng.uniform(-2, 2, size=2)
            if np.hypot(*(x - xp)) < 1e-3:
                continue
            z = complex(rng.uniform(-8, 2), rng.uniform(0.2, 3.0))
            lhs = spin_orbit_green(x, xp, z, p).conj().T
            rhs = spin_orbit_green(xp, x, z.conjugate(), p)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return _suite("plane_kernel_hermitian_symmetry", worst, 1e-10)


def _lead_identities(rng):
    worst = 0.0
    for _ in range(30):
        z = complex(rng.uniform(-6, 4), rng.uniform(0.1, 3.0))
        x, xp = rng.uniform(0.1, 4.0, size=2)
        worst = max(worst, abs(lead_green(x, xp, z) - lead_green(xp, x, z)))
        worst = max(
            worst,
            abs(lead_green(x, xp, z.conjugate()) - lead_green(x, xp, z).conjugate()),
        )
    # Neumann condition at the end, by one-sided finite differences
    z = SpectralPoint(-1.0)
    h = 1e-6
    deriv = (
        -3 * lead_green(0.0, 1.0, z)
        + 4 * lead_green(h, 1.0, z)
        - lead_green(2 * h, 1.0, z)
    ) / (2 * h)
    worst = max(worst, abs(deriv))
    return _suite("lead_kernel_identities", worst, 1e-8)


def _renormalization():
    worst = 0.0
    radii = [2.0**-q for q in range(2, 11)]
    for kap in (0.0, 1.0):
        for z in (SpectralPoint(-4.0), SpectralPoint(complex(-3.0, 2.0))):
            p = SpinOrbitParams(SpinOrbitKind.RASHBA, kap)
            closed = renormalized_green_scalar(z, p) * SIGMA0
            limit = renormalized_green_oracle(z, p, radii)
            worst = max(worst, float(np.max(np.abs(closed - limit))))
    return _suite("renormalized_green_closed_vs_limit", worst, 1e-6)


def _positive_energy_imag():
    worst = 0.0
    for k in (0.1, 1.0, 10.0):
        for kap in (0.0, 1.0, 3.0):
            p = SpinOrbitParams(SpinOrbitKind.RASHBA, kap)
            g = renormalized_green_scalar(SpectralPoint(k * k, from_above=True), p)
            worst = max(worst, abs(g.imag - 0.25))
    return _suite("positive_energy_imag_part", worst, 1e-10)


def _decoupled_unitarity():
    p = SpinOrbitParams(SpinOrbitKind.RASHBA, 1.0)
    coupling = SpinIndependentCoupling(a=0.7, c=0.0, d=-0.3)
    worst = 0.0
    for k in np.linspace(0.1, 10.0, 41):
        r = reflection_amplitude(k, coupling, p)
        worst = max(worst, abs(abs(r.amplitude) - 1.0))
    return _suite("decoupled_unitarity", worst, 1e-12)


def _subunitarity(rng):
    worst = 0.0
    kinds = list(SpinOrbitKind)
    for _ in range(100):
        coupling = SpinIndependentCoupling(
            a=rng.uniform(-3, 3),
            c=complex(rng.uniform(0.1, 2) * (-1) ** rng.integers(2), rng.uniform(-2, 2)),
            d=rng.uniform(-3, 3),
        )
        p = SpinOrbitParams(kinds[rng.integers(len(kinds))], rng.uniform(0.0, 2.0))
        k = 10.0 ** rng.uniform(-1, 1)
        r = reflection_amplitude(k, coupling, p)
        worst = max(worst, r.probability - 1.0)
    return _suite("subunitarity_random_couplings", worst, 1e-12)


def _random_hermitian(rng):
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return (m + m.conj().T) / 2


def _junction_algebra(rng):
    worst = 0.0
    for _ in range(25):
        anyc = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        m = validate_coupling(
            _random_hermitian(rng) + 2 * SIGMA0, anyc, _random_hermitian(rng)
        )
        tilde = tilde_transform(m)
        worst = max(worst, float(np.max(np.abs(tilde - tilde.conj().T))))
        psi0 = rng.normal(size=2) + 1j * rng.normal(size=2)
        l0 = rng.normal(size=2) + 1j * rng.normal(size=2)
        bd = BoundaryData(
            lead_value=psi0,
            lead_derivative=m.A @ psi0 + m.C.conj().T @ l0,
            l0=l0,
            l1=m.C @ psi0 + m.D @ l0,
        )
        worst = max(worst, boundary_condition_residual(bd, m))
        worst = max(worst, tilde_relation_residual(bd, tilde))
    return _suite("junction_boundary_algebra", worst, 1e-12)


def _bound_state_roundtrip():
    p = SpinOrbitParams(SpinOrbitKind.RASHBA, 0.5)
    target = -4.0
    d = design_coupling_for_eigenvalue(target, a=0.3, c=1.0, p=p)
    states = find_bound_states(SpinIndependentCoupling(0.3, 1.0, d), p)
    worst = min((abs(s.energy - target) for s in states), default=np.inf)
    return _suite("bound_state_round_trip", worst, 1e-8)


def run_diagnostics(seed: int = 0) -> dict:
    """Run every suite and collect a machine-readable report."""
    rng = np.random.default_rng(seed)
    suites = [
        _macdonald_wronskian(rng),
        _branch_convention(rng),
        _kernel_symmetry(rng),
        _lead_identities(rng),
        _renormalization(),
        _positive_energy_imag(),
        _decoupled_unitarity(),
        _subunitarity(rng),
        _junction_algebra(rng),
        _bound_state_roundtrip(),
    ]
    return {
        "seed": int(seed),
        "suites": suites,
        "all_passed": bool(all(s["passed"] for s in suites)),
    }
