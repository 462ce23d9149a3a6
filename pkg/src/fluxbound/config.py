"""Centralized numerical tolerances.

Every hard-coded numerical threshold used by the library lives in one
frozen record so that tests, the CLI and library callers agree on what
"equal", "zero" and "satisfied" mean.  The defaults are deliberately
conservative for dense matrices of dimension <= 16.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # max-entry deviation |M - M^dag| tolerated before a matrix is
    # rejected as non-Hermitian
    hermiticity: float = 1e-12
    # Jacobi eigensolver: stop once the off-diagonal Frobenius mass drops
    # below jacobi_offdiag * ||H||_F, give up after jacobi_max_sweeps
    jacobi_offdiag: float = 1e-14
    jacobi_max_sweeps: int = 100
    # ||V L V^dag - H||_max accepted for a spectral reconstruction
    reconstruction: float = 1e-10
    # ||U^dag U - I||_max accepted for a unitary
    unitarity: float = 1e-10
    # |tr(pt(M)) - tr(M)| accepted for the partial trace
    trace_preservation: float = 1e-12
    # how negative a density-matrix eigenvalue may be before rejection;
    # eigenvalues in [-state_negativity, 0) are clamped to zero
    state_negativity: float = 1e-10
    # |tr(rho) - 1| accepted for a density matrix
    state_trace: float = 1e-10
    # eigenvalues <= rank are treated as exact zeros (support decisions)
    rank: float = 1e-12
    # relative entropies computed in [-entropy_floor, 0) are rounded to 0;
    # anything more negative raises
    entropy_floor: float = 1e-10
    # largest imaginary part tolerated in tr(H rho) for Hermitian H
    imaginary_part: float = 1e-10
    # additive slack granted when checking the inequalities
    slack: float = 1e-9
    # eigenvalues w of rho - sigma with |w| <= sign_zero_scale * max(1,
    # ||rho - sigma||_inf) are assigned to the kernel of the sign operator
    sign_zero_scale: float = 1e-12
    # |min_shift_norm - capacity/2| accepted for the optimal shift
    shift_norm: float = 1e-10
    # observables with spread <= capacity_floor * max(1, ||theta||_inf)
    # are treated as multiples of the identity (zero capacity)
    capacity_floor: float = 1e-13


DEFAULT_TOLERANCES = Tolerances()
