"""Junction parameterization and the Krein matrix of the coupled system.

A self-adjoint coupling of the lead to the plane is fixed by 2x2 matrices
(A, C, D) with A and D Hermitian, entering the boundary conditions

    psi'_lead(0+) = A psi_lead(0+) + C* L0(psi_plane),
    L1(psi_plane) = C psi_lead(0+) + D L0(psi_plane),

where L0/L1 are the coefficients of the logarithmic and constant terms of
the plane wavefunction at the junction.  For regular A this family is
equivalently encoded by one Hermitian 4x4 matrix in a rotated boundary
basis, which is what the resolvent formula consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularCouplingError, SpectralPointError, ValidationError
from .lead_green import lead_diagonal
from .plane_green import SIGMA0, SpinOrbitParams, renormalized_green_scalar

__all__ = [
    "PhysicalScales",
    "CouplingMatrices",
    "SpinIndependentCoupling",
    "BoundaryData",
    "reduce_units",
    "validate_coupling",
    "natural_coupling",
    "tilde_transform",
    "check_boundary_pair",
    "boundary_condition_residual",
    "tilde_relation_residual",
    "krein_matrix",
    "krein_denominator",
]

# condition number beyond which a matrix is treated as numerically singular
SINGULAR_COND = 1e14

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class PhysicalScales:
    """Dimensionful spin-orbit constant, effective mass and hbar."""

    alpha: float
    m_star: float
    hbar: float

    def __post_init__(self):
        if not (self.m_star > 0 and self.hbar > 0):
            raise ValidationError("m_star and hbar must be positive")


def reduce_units(s: PhysicalScales) -> float:
    """Dimensionless interaction strength kappa = m* alpha / hbar**2."""
    return s.m_star * s.alpha / s.hbar**2


def _as_spin_matrix(m, name: str) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (2, 2):
        raise ValidationError("%s must be a 2x2 matrix, got shape %s" % (name, arr.shape))
    if not np.all(np.isfinite(arr.view(float))):
        raise ValidationError("%s has non-finite entries" % name)
    return arr


def _require_hermitian(arr: np.ndarray, name: str) -> None:
    scale = max(1.0, float(np.max(np.abs(arr))))
    dev = float(np.max(np.abs(arr - arr.conj().T)))
    if dev > HERMITICITY_TOL * scale:
        raise ValidationError(
            "matrix %s is not Hermitian (deviation %.3e)" % (name, dev)
        )


@dataclass(frozen=True)
class CouplingMatrices:
    """Validated (A, C, D) triple; construct through :func:`validate_coupling`."""

    A: np.ndarray
    C: np.ndarray
    D: np.ndarray


def validate_coupling(A, C, D) -> CouplingMatrices:
    """Check shapes and the Hermiticity of A and D, then freeze the triple."""
    a = _as_spin_matrix(A, "A")
    c = _as_spin_matrix(C, "C")
    d = _as_spin_matrix(D, "D")
    _require_hermitian(a, "A")
    _require_hermitian(d, "D")
    for m in (a, c, d):
        m.setflags(write=False)
    return CouplingMatrices(a, c, d)


@dataclass(frozen=True)
class SpinIndependentCoupling:
    """Scalar coupling A = a*I, C = c*I, D = d*I."""

    a: float
    c: complex
    d: float

    def __post_init__(self):
        vals = (float(self.a), complex(self.c), float(self.d))
        if not all(
            math.isfinite(v) for v in (vals[0], vals[1].real, vals[1].imag, vals[2])
        ):
            raise ValidationError("coupling scalars must be finite")
        object.__setattr__(self, "a", vals[0])
        object.__setattr__(self, "c", vals[1])
        object.__setattr__(self, "d", vals[2])

    def matrices(self) -> CouplingMatrices:
        return validate_coupling(
            self.a * SIGMA0, self.c * SIGMA0, self.d * SIGMA0
        )


def natural_coupling(rho: float) -> CouplingMatrices:
    """Coupling of a thin fibre of radius rho to the plane (spin-independent):

    A = (1/2rho) I,  C = (2 pi rho)**(-1/2) I,  D = -ln(rho) I.
    """
    rho = float(rho)
    if not (rho > 0 and math.isfinite(rho)):
        raise ValidationError("fibre radius rho must be positive, got %r" % rho)
    return validate_coupling(
        SIGMA0 / (2.0 * rho),
        SIGMA0 / math.sqrt(2.0 * math.pi * rho),
        -math.log(rho) * SIGMA0,
    )


def tilde_transform(m: CouplingMatrices) -> np.ndarray:
    """Hermitian 4x4 boundary matrix in the rotated basis:

        [[-A^-1,      -A^-1 C*        ],
         [-C A^-1,     D - C A^-1 C*  ]]

    Requires A regular; a singular A means the coupling keeps a Neumann
    component on the lead and is not representable in this family.
    """
    cond = float(np.linalg.cond(m.A))
    if not math.isfinite(cond) or cond > SINGULAR_COND:
        raise SingularCouplingError(
            "Neumann-component coupling not representable: matrix A is "
            "numerically singular (condition number %.3e)" % cond,
            condition_number=cond,
        )
    ainv = np.linalg.inv(m.A)
    cs = m.C.conj().T
    tilde = np.block(
        [[-ainv, -ainv @ cs], [-m.C @ ainv, m.D - m.C @ ainv @ cs]]
    )
    dev = float(np.max(np.abs(tilde - tilde.conj().T)))
    scale = max(1.0, float(np.max(np.abs(tilde))))
    if dev > HERMITICITY_TOL * scale:
        raise ValidationError(
            "rotated boundary matrix lost Hermiticity (deviation %.3e)" % dev
        )
    return tilde


def check_boundary_pair(A4, B4) -> dict:
    """Admissibility report for a general boundary pair (A|B) of 4x4 blocks.

    The pair defines a self-adjoint extension iff (A|B) has full rank and
    A B* is Hermitian.  Only the report is produced; dynamics in this
    package are restricted to the B = -I family.
    """
    a = np.asarray(A4, dtype=complex)
    b = np.asarray(B4, dtype=complex)
    if a.shape != (4, 4) or b.shape != (4, 4):
        raise ValidationError("boundary pair blocks must be 4x4")
    stacked = np.hstack([a, b])
    rank = int(np.linalg.matrix_rank(stacked, tol=1e-10))
    ab = a @ b.conj().T
    herm_dev = float(np.max(np.abs(ab - ab.conj().T)))
    hermitian = herm_dev <= 1e-10 * max(1.0, float(np.max(np.abs(ab))))
    return {
        "rank": rank,
        "full_rank": rank == 4,
        "ab_star_hermitian": hermitian,
        "ab_star_deviation": herm_dev,
        "admissible": rank == 4 and hermitian,
    }


@dataclass(frozen=True)
class BoundaryData:
    """Generalized boundary values of a wavefunction at the junction."""

    lead_value: np.ndarray
    lead_derivative: np.ndarray
    l0: np.ndarray
    l1: np.ndarray

    def gamma1(self) -> np.ndarray:
        """Rotated-basis first boundary vector (-psi'_lead(0+), L0)."""
        return np.concatenate([-np.asarray(self.lead_derivative), np.asarray(self.l0)])

    def gamma2(self) -> np.ndarray:
        """Rotated-basis second boundary vector (psi_lead(0+), L1)."""
        return np.concatenate([np.asarray(self.lead_value), np.asarray(self.l1)])


def boundary_condition_residual(bd: BoundaryData, m: CouplingMatrices) -> float:
    """Max-norm violation of the two coupling relations by the given data."""
    r1 = (
        np.asarray(bd.lead_derivative)
        - m.A @ np.asarray(bd.lead_value)
        - m.C.conj().T @ np.asarray(bd.l0)
    )
    r2 = (
        np.asarray(bd.l1)
        - m.C @ np.asarray(bd.lead_value)
        - m.D @ np.asarray(bd.l0)
    )
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))))


def tilde_relation_residual(bd: BoundaryData, tilde: np.ndarray) -> float:
    """Max-norm of  tilde_A gamma1 - gamma2  for the given boundary data."""
    return float(np.max(np.abs(tilde @ bd.gamma1() - bd.gamma2())))


def krein_matrix(z, p: SpinOrbitParams) -> np.ndarray:
    """Block-diagonal 4x4 of junction diagonal kernel values.

    Lead block i/sqrt(z) times the identity, plane block the renormalized
    Green matrix.
    """
    q = np.zeros((4, 4), dtype=complex)
    q[:2, :2] = lead_diagonal(z) * SIGMA0
    q[2:, 2:] = renormalized_green_scalar(z, p) * SIGMA0
    return q


def krein_denominator(z, p: SpinOrbitParams, m: CouplingMatrices):
    """Q(z) - tilde_A, its inverse and determinant.

    A numerically singular denominator signals a spectral point of the
    coupled operator and raises :class:`SpectralPointError` carrying the
    determinant; the spectrum module uses exactly this as a root check.
    """
    mat = krein_matrix(z, p) - tilde_transform(m)
    det = complex(np.linalg.det(mat))
    cond = float(np.linalg.cond(mat))
    if not math.isfinite(cond) or cond > SINGULAR_COND:
        raise SpectralPointError(
            "Krein denominator is singular at z = %s (|det| = %.3e): "
            "spectral point of the coupled Hamiltonian" % (z, abs(det)),
            determinant=det,
            condition_number=cond,
        )
    inv = np.linalg.inv(mat)
    return mat, inv, det
