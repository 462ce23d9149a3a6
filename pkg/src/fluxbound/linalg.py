"""Dense complex linear algebra for Hermitian operators of small dimension.

Everything downstream (states, fluxes, scenario runners) is built on the
handful of primitives in this module: a deterministic eigensolver for
Hermitian matrices, spectral application of scalar functions, tensor
products, partial traces, Schatten norms and expectation values.

The eigensolver is a cyclic Jacobi iteration with complex Givens
rotations.  For the dimensions this library targets (<= 16) it is simple,
accurate to near machine precision, and bit-for-bit reproducible: the
rotation order is fixed and no threading or blocking is involved.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, NamedTuple

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DomainError, NumericError, ValidationError


class Spectrum(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues: real, ascending (ties keep the sweep order, the sort is
        stable).
    eigenvectors: unitary matrix whose k-th column is the eigenvector of
        eigenvalues[k].
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_complex_matrix(matrix) -> np.ndarray:
    """Coerce input to a square complex128 ndarray."""
    a = np.asarray(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(matrix) -> float:
    """Largest entry of |M - M^dag|."""
    a = as_complex_matrix(matrix)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def require_hermitian(matrix, tols: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Validate hermiticity and return the symmetrized matrix (M + M^dag)/2."""
    a = as_complex_matrix(matrix)
    defect = hermiticity_defect(a)
    if defect > tols.hermiticity:
        raise ValidationError(
            f"matrix is not Hermitian: max |M - M^dag| = {defect:.3e} "
            f"exceeds {tols.hermiticity:.3e}"
        )
    return 0.5 * (a + a.conj().T)


def _offdiagonal_mass(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part.

    Summed over the off-diagonal entries only; subtracting the diagonal
    mass from the total would cancel catastrophically once the iteration
    is nearly converged.
    """
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def eigh(matrix, tols: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Sweeps the strict upper triangle in row-major order, annihilating each
    entry with a complex Givens rotation, until the off-diagonal Frobenius
    mass falls below tols.jacobi_offdiag * ||H||_F.  Raises NumericError if
    that has not happened after tols.jacobi_max_sweeps sweeps (it converges
    in well under ten sweeps for dim <= 16 in practice).
    """
    a = require_hermitian(matrix, tols)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return Spectrum(np.array([a[0, 0].real]), v)

    frobenius = float(np.linalg.norm(a))
    threshold = tols.jacobi_offdiag * frobenius
    converged = False
    for _ in range(tols.jacobi_max_sweeps):
        if _offdiagonal_mass(a) <= threshold:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                phase = apq / mag
                theta = (aqq - app) / (2.0 * mag)
                # smaller-magnitude root of t^2 + 2 theta t - 1 = 0
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c * phase
                rot = np.array([[c, s], [-s.conjugate(), c]], dtype=np.complex128)
                a[:, [p, q]] = a[:, [p, q]] @ rot
                a[[p, q], :] = rot.conj().T @ a[[p, q], :]
                v[:, [p, q]] = v[:, [p, q]] @ rot
                # the rotation zeroes (p,q) exactly in exact arithmetic;
                # enforce it, and keep the diagonal real
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
    else:
        converged = _offdiagonal_mass(a) <= threshold
    if not converged:
        raise NumericError(
            f"Jacobi eigensolver did not converge in {tols.jacobi_max_sweeps} sweeps "
            f"(dim {n}, residual {_offdiagonal_mass(a):.3e})"
        )

    values = np.diagonal(a).real.copy()
    order = np.argsort(values, kind="stable")
    return Spectrum(values[order], v[:, order])


def matrix_function(matrix, fn: Callable[[float], complex],
                    tols: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    Returns V diag(fn(w)) V^dag.  Raises DomainError, carrying the
    offending eigenvalue, if fn raises or returns a non-finite value at
    any eigenvalue (for example log at a zero eigenvalue).
    """
    spec = eigh(matrix, tols)
    fvals = np.empty(spec.eigenvalues.shape, dtype=np.complex128)
    with np.errstate(all="ignore"):
        for k, w in enumerate(spec.eigenvalues):
            try:
                y = complex(fn(float(w)))
            except (ValueError, ZeroDivisionError, OverflowError) as exc:
                raise DomainError(
                    f"scalar function undefined at eigenvalue {w!r}: {exc}",
                    offending_value=float(w),
                ) from exc
            if not (math.isfinite(y.real) and math.isfinite(y.imag)):
                raise DomainError(
                    f"scalar function non-finite at eigenvalue {w!r}",
                    offending_value=float(w),
                )
            fvals[k] = y
    vecs = spec.eigenvectors
    return (vecs * fvals) @ vecs.conj().T


def unitary_from_generator(generator, t: float = 1.0,
                           tols: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """exp(-i t G) for Hermitian G, through the spectrum of G."""
    return matrix_function(generator, lambda w: cmath.exp(-1j * t * w), tols)


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product (first factor varies slowest)."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def partial_trace(matrix, dim_system: int, dim_environment: int,
                  keep: str = "system",
                  tols: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Trace out one tensor factor of a (dim_system * dim_environment)
    square matrix.

    keep selects the surviving factor, "system" (first) or "environment"
    (second).  The basis ordering is system-major: joint index
    i = i_system * dim_environment + i_environment.
    """
    a = as_complex_matrix(matrix)
    if dim_system < 1 or dim_environment < 1:
        raise ValidationError("tensor factor dimensions must be positive")
    if a.shape[0] != dim_system * dim_environment:
        raise ValidationError(
            f"matrix of dim {a.shape[0]} is not compatible with factors "
            f"{dim_system} x {dim_environment}"
        )
    blocks = a.reshape(dim_system, dim_environment, dim_system, dim_environment)
    if keep == "system":
        reduced = np.einsum("ikjk->ij", blocks)
    elif keep == "environment":
        reduced = np.einsum("kikj->ij", blocks)
    else:
        raise ValidationError(f"keep must be 'system' or 'environment', got {keep!r}")
    defect = abs(complex(np.trace(reduced)) - complex(np.trace(a)))
    if defect > tols.trace_preservation:
        raise NumericError(f"partial trace changed the trace by {defect:.3e}")
    return reduced


def schatten_norm(matrix, k, tols: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Schatten k-norm of a Hermitian matrix, k in {1, 2, inf}.

    Computed from the eigenvalues: sum |w| for k = 1, sqrt(sum w^2) for
    k = 2, max |w| for k = inf.
    """
    w = eigh(matrix, tols).eigenvalues
    if k == 1:
        return float(np.sum(np.abs(w)))
    if k == 2:
        return float(math.sqrt(np.sum(w * w)))
    if k == math.inf:
        return float(np.max(np.abs(w))) if w.size else 0.0
    raise ValidationError(f"Schatten order must be 1, 2 or inf, got {k!r}")


def _as_array(operator) -> np.ndarray:
    # several record types carry their matrix in a .matrix attribute
    if isinstance(operator, np.ndarray):
        return operator
    m = getattr(operator, "matrix", None)
    if m is not None:
        return m
    return np.asarray(operator, dtype=np.complex128)


def expectation(operator, state, tols: Tolerances = DEFAULT_TOLERANCES) -> float:
    """tr(H rho) for Hermitian H; the imaginary part must be rounding noise."""
    h = as_complex_matrix(_as_array(operator))
    r = as_complex_matrix(_as_array(state))
    if h.shape != r.shape:
        raise ValidationError(f"shape mismatch {h.shape} vs {r.shape}")
    value = complex(np.einsum("ij,ji->", h, r))
    if abs(value.imag) > tols.imaginary_part:
        raise NumericError(
            f"expectation of a Hermitian operator has imaginary part {value.imag:.3e}"
        )
    return value.real
