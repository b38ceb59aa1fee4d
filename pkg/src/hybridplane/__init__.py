"""Spin-orbit plane with an attached halfline lead.

Explicit Green functions for a spin-1/2 particle moving in a 2D plane with
Rashba or Dresselhaus interaction, point-coupled at the origin to a
Neumann halfline; junction couplings, the full resolvent in Krein form,
bound states and reflection/transmission spectra.
"""

__version__ = "0.1.0"

from .errors import (
    BranchFlagError,
    ConfigError,
    DesignError,
    DomainError,
    ExtrapolationError,
    HybridPlaneError,
    PoleOnAxisError,
    RegionError,
    SingularCouplingError,
    SpectralPointError,
    ValidationError,
)
from .junction import (
    BoundaryData,
    CouplingMatrices,
    PhysicalScales,
    SpinIndependentCoupling,
    check_boundary_pair,
    krein_denominator,
    krein_matrix,
    natural_coupling,
    reduce_units,
    tilde_transform,
    validate_coupling,
)
from .lead_green import lead_diagonal, lead_green
from .plane_green import (
    SIGMA0,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    EffectiveMomenta,
    SpinOrbitKind,
    SpinOrbitParams,
    effective_momenta,
    free_green,
    q_helper,
    renormalized_green,
    renormalized_green_oracle,
    renormalized_green_scalar,
    spin_orbit_green,
)
from .resolvent import ConfigPoint, LeadPoint, PlanePoint, full_green, junction_trace, trace_kernel
from .scattering import (
    FarFieldFit,
    ReflectionResult,
    ScatteringState,
    far_field_ratio,
    reflection_amplitude,
    reflection_from_energy,
    scattering_state,
    spinless_reference_reflection,
)
from .specfun import SpectralPoint, as_spectral, digamma_one, log_minus, macdonald_k, sqrt_minus
from .spectrum import (
    BoundState,
    bound_state_residual,
    default_search_interval,
    design_coupling_for_eigenvalue,
    find_bound_states,
    reality_region_report,
)

__all__ = [
    "__version__",
    # errors
    "HybridPlaneError", "DomainError", "BranchFlagError", "ValidationError",
    "SingularCouplingError", "SpectralPointError", "RegionError", "DesignError",
    "ExtrapolationError", "PoleOnAxisError", "ConfigError",
    # branch conventions / special functions
    "SpectralPoint", "as_spectral", "sqrt_minus", "log_minus", "macdonald_k",
    "digamma_one",
    # plane
    "SpinOrbitKind", "SpinOrbitParams", "EffectiveMomenta", "SIGMA0", "SIGMA1",
    "SIGMA2", "SIGMA3", "effective_momenta", "free_green", "spin_orbit_green",
    "q_helper", "renormalized_green", "renormalized_green_scalar",
    "renormalized_green_oracle",
    # lead
    "lead_green", "lead_diagonal",
    # junction
    "PhysicalScales", "CouplingMatrices", "SpinIndependentCoupling",
    "BoundaryData", "reduce_units", "validate_coupling", "natural_coupling",
    "tilde_transform", "check_boundary_pair", "krein_matrix", "krein_denominator",
    # resolvent
    "LeadPoint", "PlanePoint", "ConfigPoint", "trace_kernel", "junction_trace",
    "full_green",
    # spectrum
    "BoundState", "bound_state_residual", "find_bound_states",
    "design_coupling_for_eigenvalue", "default_search_interval",
    "reality_region_report",
    # scattering
    "ReflectionResult", "ScatteringState", "FarFieldFit", "reflection_amplitude",
    "reflection_from_energy", "spinless_reference_reflection", "scattering_state",
    "far_field_ratio",
]
