"""Density matrices and relative entropy.

A DensityMatrix is a validated quantum state carrying its spectrum, so
that entropies and distances never re-diagonalize.  Relative entropy is
evaluated in the eigenbasis of the second argument,

    S(rho || sigma) = sum_i p_i ln p_i
                      - sum_{i,j} p_i |<p_i|s_j>|^2 ln s_j,

restricted to the supports of rho and sigma.  When rho places weight on
the kernel of sigma the divergence is infinite; that outcome is returned
as a tagged value (RelEntropyValue with finite=False), never as a bare
floating-point infinity fed into arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import NumericError, ValidationError
from .linalg import eigh, require_hermitian, schatten_norm


@dataclass(frozen=True)
class DensityMatrix:
    """A validated state.

    matrix: the (possibly clamped and renormalized) density matrix.
    eigenvalues: ascending, clamped to [0, 1] and renormalized to unit sum.
    eigenvectors: columns matching eigenvalues.
    clamped: True when a small negative eigenvalue was rounded up to zero.
    rank_tolerance: eigenvalues <= this are treated as exact zeros.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    clamped: bool
    rank_tolerance: float

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def support_dim(self) -> int:
        return int(np.sum(self.eigenvalues > self.rank_tolerance))


def validate_state(matrix, tols: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Check hermiticity, positivity and unit trace; clamp rounding noise.

    Eigenvalues in [-tols.state_negativity, 0) are clamped to zero and the
    spectrum renormalized; anything more negative is rejected.  The trace
    must be 1 within tols.state_trace.
    """
    a = require_hermitian(matrix, tols)
    trace = float(np.trace(a).real)
    if abs(trace - 1.0) > tols.state_trace:
        raise ValidationError(
            f"state trace invariant violated: tr = {trace!r}, "
            f"|tr - 1| > {tols.state_trace:.1e}"
        )
    spec = eigh(a, tols)
    smallest = float(spec.eigenvalues[0])
    if smallest < -tols.state_negativity:
        raise ValidationError(
            f"state positivity invariant violated: eigenvalue {smallest!r} "
            f"below -{tols.state_negativity:.1e}"
        )
    clamped = smallest < 0.0
    values = np.clip(spec.eigenvalues, 0.0, None)
    values = values / float(np.sum(values))
    if clamped:
        vecs = spec.eigenvectors
        a = (vecs * values) @ vecs.conj().T
    return DensityMatrix(
        matrix=a,
        eigenvalues=values,
        eigenvectors=spec.eigenvectors,
        clamped=clamped,
        rank_tolerance=tols.rank,
    )


@dataclass(frozen=True)
class RelEntropyValue:
    """Nonnegative extended real: a finite value or a tagged infinity."""

    value: float
    finite: bool = True

    @classmethod
    def infinite(cls) -> "RelEntropyValue":
        return cls(value=math.inf, finite=False)

    def __post_init__(self):
        if self.finite and not (self.value >= 0.0 and math.isfinite(self.value)):
            raise ValidationError(f"finite relative entropy must be >= 0, got {self.value!r}")

    def as_float(self) -> float:
        """Plain float for display and serialization (inf when infinite)."""
        return self.value if self.finite else math.inf


def _directed_entropy(p: np.ndarray, s: np.ndarray, overlap: np.ndarray,
                      p_tol: float, s_tol: float,
                      tols: Tolerances) -> RelEntropyValue:
    # overlap[i, j] = |<p_i | s_j>|^2
    p_live = p > p_tol
    s_dead = s <= s_tol
    if np.any(s_dead):
        kernel_mass = float(p[p_live] @ overlap[np.ix_(p_live, s_dead)].sum(axis=1))
        if kernel_mass > s_tol:
            return RelEntropyValue.infinite()
    s_live = ~s_dead
    plive = p[p_live]
    value = float(plive @ np.log(plive))
    cross = overlap[np.ix_(p_live, s_live)] @ np.log(s[s_live])
    value -= float(plive @ cross)
    if value < 0.0:
        if value < -tols.entropy_floor:
            raise NumericError(f"relative entropy evaluated to {value!r}")
        value = 0.0
    return RelEntropyValue(value)


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix,
                     tols: Tolerances = DEFAULT_TOLERANCES) -> RelEntropyValue:
    """Quantum relative entropy S(rho || sigma), natural log."""
    if rho.dim != sigma.dim:
        raise ValidationError(f"dimension mismatch {rho.dim} vs {sigma.dim}")
    overlap = np.abs(rho.eigenvectors.conj().T @ sigma.eigenvectors) ** 2
    return _directed_entropy(rho.eigenvalues, sigma.eigenvalues, overlap,
                             rho.rank_tolerance, sigma.rank_tolerance, tols)


def directed_entropy_pair(rho: DensityMatrix, sigma: DensityMatrix,
                          tols: Tolerances = DEFAULT_TOLERANCES,
                          ) -> tuple[RelEntropyValue, RelEntropyValue]:
    """(S(rho || sigma), S(sigma || rho)), sharing one overlap matrix."""
    if rho.dim != sigma.dim:
        raise ValidationError(f"dimension mismatch {rho.dim} vs {sigma.dim}")
    overlap = np.abs(rho.eigenvectors.conj().T @ sigma.eigenvectors) ** 2
    forward = _directed_entropy(rho.eigenvalues, sigma.eigenvalues, overlap,
                                rho.rank_tolerance, sigma.rank_tolerance, tols)
    backward = _directed_entropy(sigma.eigenvalues, rho.eigenvalues,
                                 np.ascontiguousarray(overlap.T),
                                 sigma.rank_tolerance, rho.rank_tolerance, tols)
    return forward, backward


def symmetric_average(forward: RelEntropyValue,
                      backward: RelEntropyValue) -> RelEntropyValue:
    """(S(rho||sigma) + S(sigma||rho)) / 2 as a tagged value."""
    if not (forward.finite and backward.finite):
        return RelEntropyValue.infinite()
    return RelEntropyValue(0.5 * (forward.value + backward.value))


def symmetric_relative_entropy(rho: DensityMatrix, sigma: DensityMatrix,
                               tols: Tolerances = DEFAULT_TOLERANCES) -> RelEntropyValue:
    """Symmetrized relative entropy, the mean of the two directions.

    Infinite as soon as either direction is infinite, i.e. whenever the
    supports of the two states differ.
    """
    forward, backward = directed_entropy_pair(rho, sigma, tols)
    return symmetric_average(forward, backward)


def trace_distance_norm(rho: DensityMatrix, sigma: DensityMatrix,
                        tols: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Trace norm ||rho - sigma||_1 (twice the trace distance)."""
    if rho.dim != sigma.dim:
        raise ValidationError(f"dimension mismatch {rho.dim} vs {sigma.dim}")
    return schatten_norm(rho.matrix - sigma.matrix, 1, tols)


@dataclass(frozen=True)
class PinskerCheck:
    """S(rho||sigma) >= ||rho - sigma||_1^2 / 2, with slack."""

    s_forward: RelEntropyValue
    trace_norm: float
    rhs: float
    slack: float
    holds: bool
    trivial: bool


def pinsker_check(rho: DensityMatrix, sigma: DensityMatrix,
                  tols: Tolerances = DEFAULT_TOLERANCES) -> PinskerCheck:
    """Evaluate the classical Pinsker inequality for a pair of states."""
    s_forward = relative_entropy(rho, sigma, tols)
    tn = trace_distance_norm(rho, sigma, tols)
    rhs = 0.5 * tn * tn
    if not s_forward.finite:
        return PinskerCheck(s_forward, tn, rhs, math.inf, True, True)
    slack = s_forward.value - rhs
    return PinskerCheck(s_forward, tn, rhs, slack, slack >= -tols.slack, False)
