"""PT-symmetry structure of the effective two-mode system.

The unitary mixing a = (alpha0 + i beta0)/sqrt(2), b = (alpha0 - i beta0)/
sqrt(2) turns the base-component system into da/dt = g a - J b,
db/dt = J a - g b, i.e. dv/dt = i H v with the non-Hermitian

    H = [[-i g,  i J],
         [-i J,  i g]].

H commutes with the combined action of complex conjugation (time reversal)
and the mode swap P = [[0, 1], [1, 0]] (parity): P conj(H) P = H. Its
eigenvalues are +-i sqrt(g^2 - J^2): purely imaginary for g > J (broken
phase, exponential growth), real for g < J (unbroken), degenerate zero at
g = J (exceptional point).

The same test is applied to the truncated component system at higher order,
where the asymmetric n+-2 couplings spoil the symmetry; residuals for the
two natural parity candidates are reported without asserting a verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .floquet import build_floquet_matrix
from .params import ModelParams, PTParams

SQRT2 = math.sqrt(2.0)

# Relative |g - J| gap below which the classification is the degenerate
# exceptional point; keeps labels deterministic under rounding.
EXCEPTIONAL_REL_TOL = 1e-12

PHASE_BROKEN = "broken"
PHASE_UNBROKEN = "unbroken"
PHASE_EXCEPTIONAL = "exceptional"


class PTCheck(NamedTuple):
    symmetric: bool
    residual: float


@dataclass(frozen=True)
class EffectiveHamiltonian:
    """The traceless 2x2 non-Hermitian generator of the a/b dynamics."""

    matrix: np.ndarray
    g: float
    J: float

    def hermiticity_residual(self) -> float:
        """Max-entry norm of H - H^dagger; equals 2g, nonzero iff g != 0."""
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))


@dataclass(frozen=True)
class PhaseClassification:
    """Eigenvalue pair and phase label of the effective Hamiltonian."""

    eigenvalues: tuple[complex, complex]
    label: str


@dataclass(frozen=True)
class ExtendedPTReport:
    """Parity-candidate residuals for the order-N component Hamiltonian."""

    order: int
    dim: int
    tol: float
    swap: PTCheck
    swap_reflect: PTCheck


def ab_transform(alpha0: complex, beta0: complex) -> tuple[complex, complex]:
    """Unitary mode mixing (alpha0, beta0) -> (a, b)."""
    return (
        (alpha0 + 1j * beta0) / SQRT2,
        (alpha0 - 1j * beta0) / SQRT2,
    )


def ab_inverse(a: complex, b: complex) -> tuple[complex, complex]:
    """Inverse mixing: alpha0 = (a + b)/sqrt(2), beta0 = (a - b)/(i sqrt(2))."""
    return ((a + b) / SQRT2, (a - b) / (1j * SQRT2))


def build_h_eff(pt: PTParams) -> EffectiveHamiltonian:
    """Effective Hamiltonian [[-ig, iJ], [-iJ, ig]] of dv/dt = i H v."""
    g, J = pt.g, pt.J
    matrix = np.array(
        [[-1j * g, 1j * J], [-1j * J, 1j * g]], dtype=np.complex128
    )
    return EffectiveHamiltonian(matrix=matrix, g=g, J=J)


def parity_operator(n_blocks: int = 1) -> np.ndarray:
    """Mode-swap parity: exchanges the two species blockwise.

    For n_blocks = 1 this is [[0, 1], [1, 0]]; for larger blocks the swap
    acts identically on every component.
    """
    eye = np.eye(n_blocks)
    zero = np.zeros((n_blocks, n_blocks))
    return np.block([[zero, eye], [eye, zero]])


def parity_swap_reflect(n_blocks: int) -> np.ndarray:
    """Mode swap composed with harmonic-index reflection n -> -n."""
    reverse = np.fliplr(np.eye(n_blocks))
    zero = np.zeros((n_blocks, n_blocks))
    return np.block([[zero, reverse], [reverse, zero]])


def is_pt_symmetric(H: np.ndarray, P: np.ndarray, tol: float) -> PTCheck:
    """Test P conj(H) P = H; returns the max-entry residual and the verdict.

    Also validates that P is an involution (P^2 = I within tol).
    """
    H = np.asarray(H)
    P = np.asarray(P)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"H must be square, got shape {H.shape}")
    if P.shape != H.shape:
        raise ValueError(f"P shape {P.shape} does not match H shape {H.shape}")
    if np.max(np.abs(P @ P - np.eye(P.shape[0]))) > tol:
        raise ValueError("P is not an involution (P^2 != I)")
    residual = float(np.max(np.abs(P @ np.conj(H) @ P - H)))
    return PTCheck(symmetric=residual <= tol, residual=residual)


def eigenvalues_h_eff(pt: PTParams) -> PhaseClassification:
    """Closed-form eigenvalues +-sqrt(J^2 - g^2) and the phase label.

    g > J: purely imaginary pair +-i sqrt(g^2 - J^2), broken phase.
    g < J: real pair +-sqrt(J^2 - g^2), unbroken phase.
    |g - J| within EXCEPTIONAL_REL_TOL of zero: doubly degenerate 0,
    exceptional point.
    """
    g, J = pt.g, pt.J
    if abs(g - J) <= EXCEPTIONAL_REL_TOL * max(abs(g), abs(J)):
        return PhaseClassification(eigenvalues=(0j, 0j), label=PHASE_EXCEPTIONAL)
    if g > J:
        lam = math.sqrt(g * g - J * J)
        return PhaseClassification(
            eigenvalues=(1j * lam, -1j * lam), label=PHASE_BROKEN
        )
    root = math.sqrt(J * J - g * g)
    return PhaseClassification(
        eigenvalues=(complex(root), complex(-root)), label=PHASE_UNBROKEN
    )


def block_ab_transform(order: int) -> np.ndarray:
    """Blockwise mixing T with a_n = (alpha_n + i beta_n)/sqrt(2), etc.

    Acts on the stacked component layout (all alpha_n, then all beta_n).
    """
    width = 2 * order + 1
    eye = np.eye(width)
    return np.block([[eye, 1j * eye], [eye, -1j * eye]]) / SQRT2


def component_hamiltonian(params: ModelParams, order: int) -> np.ndarray:
    """H_N = -i T M T^{-1}: the component system in the a/b basis."""
    fm = build_floquet_matrix(params, order)
    t = block_ab_transform(order)
    return -1j * (t @ fm.matrix @ t.conj().T)


def extended_pt_report(
    params: ModelParams, order: int, tol: float = 1e-12
) -> ExtendedPTReport:
    """Residuals of the two natural parity candidates at truncation order N.

    Candidate 'swap' exchanges a_n and b_n for every n; 'swap_reflect'
    additionally reflects the harmonic index n -> -n. At order 0 both
    coincide with the two-mode parity and the symmetry is exact; at higher
    order the residuals are reported without asserting a verdict.
    """
    h = component_hamiltonian(params, order)
    width = 2 * order + 1
    swap = is_pt_symmetric(h, parity_operator(width), tol)
    reflect = is_pt_symmetric(h, parity_swap_reflect(width), tol)
    return ExtendedPTReport(
        order=order,
        dim=h.shape[0],
        tol=tol,
        swap=swap,
        swap_reflect=reflect,
    )
