"""Shared fixtures and independent reference implementations.

The reference routines here deliberately avoid the package's own
primitives wherever an independent route exists: eigendecompositions are
cross-checked against numpy.linalg.eigh, matrix logarithms against
scipy.linalg.logm, the divergence inverse against scipy.optimize.brentq,
and partial traces against explicit index sums.
"""

from __future__ import annotations

import numpy as np
import pytest

from fluxbound import substream


@pytest.fixture
def rng():
    """Deterministic generator for a test; independent per test module
    via the caller passing distinct stream ids where it matters."""
    return substream(20260826, 0, stream=77)


def rng_for(index: int, stream: int = 77) -> np.random.Generator:
    return substream(20260826, index, stream=stream)


def reference_partial_trace(m: np.ndarray, ds: int, de: int, keep: str) -> np.ndarray:
    """Brute-force partial trace by explicit index summation."""
    if keep == "system":
        out = np.zeros((ds, ds), dtype=complex)
        for i in range(ds):
            for j in range(ds):
                for k in range(de):
                    out[i, j] += m[i * de + k, j * de + k]
    else:
        out = np.zeros((de, de), dtype=complex)
        for i in range(de):
            for j in range(de):
                for k in range(ds):
                    out[i, j] += m[k * de + i, k * de + j]
    return out


def reference_relative_entropy(rho: np.ndarray, sigma: np.ndarray) -> float:
    """tr(rho (log rho - log sigma)) via scipy's matrix logarithm.

    Only valid for full-rank inputs; used as an oracle on random
    full-rank pairs.
    """
    from scipy.linalg import logm

    value = np.trace(rho @ (logm(rho) - logm(sigma)))
    return float(value.real)


def random_state_np(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Full-rank density matrix as a plain array (Ginibre construction)."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_hermitian_np(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)
