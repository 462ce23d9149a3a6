"""Bipartite system-environment scenarios and entropy-flux bounds.

A scenario is (rho_S, rho_E, U): uncorrelated initial states evolved by
a joint unitary.  With rho' = U (rho_S x rho_E) U^dag and primed
marginals, the entropy production and its dual are

    Sigma      = S(rho' || rho_S' x rho_E)
    Sigma_dual = S(rho_S' x rho_E || rho')

and the entropy flux is the flux of log rho_E through the environment,

    Phi   = tr((rho_E - rho_E') log rho_E),
    Phi_L = spread of the eigenvalues of log rho_E,

which requires a full-rank environment.  The chain checked here is

    (Sigma + Sigma_dual) / 2 >= S_sym(rho_E, rho_E')
                             >= 2 r artanh(r) >= 2 r^2,   r = Phi / Phi_L,

with a local-observable version for the system marginal, plus the
correlation form: the flux of a product observable theta_S x theta_E
against the uncorrelated reference equals a covariance-like correlation
function, so correlations are capped by the same entropy curve.

The two-spin exchange model used throughout is two levels per side with
splitting Omega, excitation exchange at strength g_coupling and phase
phase0; basis order is |gg>, |ge>, |eg>, |ee> (system factor first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bounds as _bounds
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DomainError, ValidationError
from .flux import Observable, evaluate_bounds, make_observable
from .linalg import (eigh, expectation, partial_trace, tensor_product,
                     unitary_from_generator)
from .states import (DensityMatrix, RelEntropyValue, relative_entropy,
                     symmetric_average, symmetric_relative_entropy,
                     trace_distance_norm, validate_state)


@dataclass(frozen=True)
class BipartiteScenario:
    dim_system: int
    dim_environment: int
    rho_system: DensityMatrix
    rho_environment: DensityMatrix
    unitary: np.ndarray


def make_scenario(rho_system: DensityMatrix, rho_environment: DensityMatrix,
                  unitary, tols: Tolerances = DEFAULT_TOLERANCES) -> BipartiteScenario:
    u = np.asarray(unitary, dtype=np.complex128)
    d = rho_system.dim * rho_environment.dim
    if u.shape != (d, d):
        raise ValidationError(f"unitary shape {u.shape} does not match joint dim {d}")
    defect = float(np.max(np.abs(u.conj().T @ u - np.eye(d))))
    if defect > tols.unitarity:
        raise ValidationError(
            f"unitarity invariant violated: ||U^dag U - I||_max = {defect:.3e}"
        )
    return BipartiteScenario(rho_system.dim, rho_environment.dim,
                             rho_system, rho_environment, u)


@dataclass(frozen=True)
class ScenarioOutcome:
    """Evolved joint state, its marginals, and the two directed
    entropy productions against the uncorrelated reference."""

    rho_joint: DensityMatrix
    rho_system: DensityMatrix
    rho_environment: DensityMatrix
    sigma_reference: DensityMatrix
    entropy_production: RelEntropyValue
    entropy_production_dual: RelEntropyValue


def evolve(scenario: BipartiteScenario,
           tols: Tolerances = DEFAULT_TOLERANCES) -> ScenarioOutcome:
    u = scenario.unitary
    joint0 = tensor_product(scenario.rho_system.matrix,
                            scenario.rho_environment.matrix)
    joint = validate_state(u @ joint0 @ u.conj().T, tols)
    ds, de = scenario.dim_system, scenario.dim_environment
    marg_s = validate_state(partial_trace(joint.matrix, ds, de, "system", tols), tols)
    marg_e = validate_state(partial_trace(joint.matrix, ds, de, "environment", tols), tols)
    reference = validate_state(
        tensor_product(marg_s.matrix, scenario.rho_environment.matrix), tols)
    production = relative_entropy(joint, reference, tols)
    dual = relative_entropy(reference, joint, tols)
    return ScenarioOutcome(joint, marg_s, marg_e, reference, production, dual)


@dataclass(frozen=True)
class EntropyFlux:
    value: float
    capacity: float


def entropy_flux(scenario: BipartiteScenario, outcome: ScenarioOutcome,
                 tols: Tolerances = DEFAULT_TOLERANCES) -> EntropyFlux:
    """Phi = tr((rho_E - rho_E') log rho_E) and its capacity.

    The environment must be full rank, otherwise log rho_E is unbounded
    and the capacity is infinite.
    """
    env = scenario.rho_environment
    smallest = float(env.eigenvalues[0])
    if smallest <= env.rank_tolerance:
        raise DomainError(
            "environment is rank deficient; log rho_E is unbounded",
            offending_value=smallest,
        )
    log_eigs = np.log(env.eigenvalues)
    vecs = env.eigenvectors
    log_env = (vecs * log_eigs) @ vecs.conj().T
    value = expectation(log_env, env.matrix - outcome.rho_environment.matrix, tols)
    capacity = float(log_eigs[-1] - log_eigs[0])
    return EntropyFlux(value=value, capacity=capacity)


def thermal_environment(hamiltonian, beta: float,
                        tols: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Gibbs state exp(-beta H) / Z.

    For a thermal environment the entropy flux reduces to heat times
    inverse temperature, Phi = beta tr((rho_E' - rho_E) H), and the
    capacity to beta * (E_max - E_min).
    """
    if beta <= 0.0:
        raise ValidationError("inverse temperature must be positive")
    spec = eigh(hamiltonian, tols)
    # subtract the ground energy before exponentiating for stability
    weights = np.exp(-beta * (spec.eigenvalues - spec.eigenvalues[0]))
    weights = weights / float(np.sum(weights))
    vecs = spec.eigenvectors
    return validate_state((vecs * weights) @ vecs.conj().T, tols)


@dataclass(frozen=True)
class ChainCheck:
    """Slack accounting for a three-step entropy chain.

    steps maps a name to its slack (rhs-to-lhs margin); holds requires
    every step to clear -slack_tolerance.  trivial marks chains resolved
    by an infinite entropy or a degenerate capacity.
    """

    flux: float
    capacity: float
    ratio: float
    s_tilde: RelEntropyValue
    production_mean: RelEntropyValue
    steps: dict
    holds: bool
    trivial: bool


def _chain_from_parts(phi: float, capacity: float,
                      s_tilde: RelEntropyValue,
                      production_mean: RelEntropyValue | None,
                      tols: Tolerances) -> ChainCheck:
    if capacity <= 0.0:
        return ChainCheck(phi, capacity, 0.0, s_tilde, production_mean,
                          {}, True, True)
    ratio = min(abs(phi) / capacity, 1.0)
    cost = _bounds.onsager_like(ratio)
    steps: dict = {}
    trivial = False
    if production_mean is not None:
        if production_mean.finite and s_tilde.finite:
            steps["production_dominates_s_tilde"] = production_mean.value - s_tilde.value
        elif not production_mean.finite:
            trivial = True
        else:
            # finite production but infinite marginal entropy cannot occur
            steps["production_dominates_s_tilde"] = -math.inf
    if s_tilde.finite and math.isfinite(cost):
        steps["s_tilde_dominates_cost"] = s_tilde.value - cost
    elif not s_tilde.finite:
        trivial = True
    else:
        steps["s_tilde_dominates_cost"] = -math.inf
    if math.isfinite(cost):
        steps["cost_dominates_quadratic"] = cost - 2.0 * ratio * ratio
    holds = all(s >= -tols.slack for s in steps.values())
    return ChainCheck(phi, capacity, ratio, s_tilde, production_mean,
                      steps, holds, trivial)


def entropy_flux_chain_check(scenario: BipartiteScenario, outcome: ScenarioOutcome,
                             tols: Tolerances = DEFAULT_TOLERANCES) -> ChainCheck:
    """(Sigma + Sigma_dual)/2 >= S_sym(rho_E, rho_E') >= 2 r artanh r >= 2 r^2."""
    ef = entropy_flux(scenario, outcome, tols)
    s_env = symmetric_relative_entropy(scenario.rho_environment,
                                       outcome.rho_environment, tols)
    production_mean = symmetric_average(outcome.entropy_production,
                                        outcome.entropy_production_dual)
    return _chain_from_parts(ef.value, ef.capacity, s_env, production_mean, tols)


def local_system_bound_check(observable: Observable, rho_later: DensityMatrix,
                             rho_earlier: DensityMatrix,
                             tols: Tolerances = DEFAULT_TOLERANCES) -> ChainCheck:
    """S_sym(rho_later, rho_earlier) >= 2 r artanh r >= 2 r^2 for the flux
    of any bounded observable between two marginals of one evolution."""
    phi = expectation(observable.matrix, rho_later.matrix - rho_earlier.matrix, tols)
    s_tilde = symmetric_relative_entropy(rho_later, rho_earlier, tols)
    return _chain_from_parts(phi, observable.capacity, s_tilde, None, tols)


# ---------------------------------------------------------------------------
# two-spin exchange model


@dataclass(frozen=True)
class SpinPairParams:
    """Two two-level systems exchanging one excitation.

    excited_population_system / _environment are the initial excited-state
    weights p and q; level_splitting is the shared gap Omega (the local
    Hamiltonian is Omega |e><e|); coupling_strength and coupling_phase set
    the exchange term; times is the ordered evaluation grid.
    """

    excited_population_system: float = 0.9
    excited_population_environment: float = 0.1
    level_splitting: float = 1.0
    coupling_strength: float = 2.0
    coupling_phase: float = 0.0
    times: Sequence[float] = (0.0,)

    def __post_init__(self):
        for label, value in (("system", self.excited_population_system),
                             ("environment", self.excited_population_environment)):
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{label} excited population must lie in [0, 1]")
        if self.level_splitting <= 0.0:
            raise ValidationError("level splitting must be positive")
        if self.coupling_strength <= 0.0:
            raise ValidationError("coupling strength must be positive")
        times = list(self.times)
        if not times or any(t < 0.0 for t in times):
            raise ValidationError("times must be a nonempty list of nonnegative reals")
        if any(b < a for a, b in zip(times, times[1:])):
            raise ValidationError("times must be nondecreasing")


def spin_hamiltonian(level_splitting: float) -> np.ndarray:
    """Local Hamiltonian Omega |e><e| in the (|g>, |e>) basis."""
    return np.diag([0.0, level_splitting]).astype(np.complex128)


def exchange_generator(coupling_strength: float, coupling_phase: float) -> np.ndarray:
    """Hermitian generator g (e^{i phi} |ge><eg| + h.c.) on the joint space."""
    gen = np.zeros((4, 4), dtype=np.complex128)
    gen[1, 2] = coupling_strength * np.exp(1j * coupling_phase)
    gen[2, 1] = np.conj(gen[1, 2])
    return gen


@dataclass(frozen=True)
class SpinPairPoint:
    """One time sample of the exchange model.

    flux is |tr(H_S (rho_S(t) - rho_S(0)))|; flux_analytic the closed form
    sin(g t)^2 |p - q| Omega; two_phi_sq and onsager are 2 r^2 and
    2 r artanh r for the ratio r = flux / Omega; s_tilde the symmetric
    relative entropy between the system marginal at t and at 0.
    """

    t: float
    flux: float
    flux_analytic: float
    two_phi_sq: float
    onsager: float
    s_tilde: float


def spin_pair_timeseries(params: SpinPairParams,
                         tols: Tolerances = DEFAULT_TOLERANCES) -> list[SpinPairPoint]:
    p = params.excited_population_system
    q = params.excited_population_environment
    omega = params.level_splitting
    rho_s0 = validate_state(np.diag([1.0 - p, p]), tols)
    rho_e0 = validate_state(np.diag([1.0 - q, q]), tols)
    h_s = spin_hamiltonian(omega)
    joint0 = tensor_product(rho_s0.matrix, rho_e0.matrix)
    gen_spec = eigh(exchange_generator(params.coupling_strength,
                                       params.coupling_phase), tols)
    points = []
    for t in params.times:
        phases = np.exp(-1j * gen_spec.eigenvalues * t)
        u = (gen_spec.eigenvectors * phases) @ gen_spec.eigenvectors.conj().T
        joint = u @ joint0 @ u.conj().T
        rho_s = validate_state(partial_trace(joint, 2, 2, "system", tols), tols)
        signed = expectation(h_s, rho_s.matrix - rho_s0.matrix, tols)
        value = abs(signed)
        ratio = min(value / omega, 1.0)
        s_tilde = symmetric_relative_entropy(rho_s, rho_s0, tols)
        points.append(SpinPairPoint(
            t=float(t),
            flux=value,
            flux_analytic=math.sin(params.coupling_strength * t) ** 2
                          * abs(p - q) * omega,
            two_phi_sq=2.0 * ratio * ratio,
            onsager=_bounds.onsager_like(ratio),
            s_tilde=s_tilde.as_float(),
        ))
    return points


def spin_pair_scenario(params: SpinPairParams, t: float,
                       tols: Tolerances = DEFAULT_TOLERANCES) -> BipartiteScenario:
    """The exchange model at a single time, as a generic scenario."""
    p = params.excited_population_system
    q = params.excited_population_environment
    rho_s0 = validate_state(np.diag([1.0 - p, p]), tols)
    rho_e0 = validate_state(np.diag([1.0 - q, q]), tols)
    u = unitary_from_generator(
        exchange_generator(params.coupling_strength, params.coupling_phase), t, tols)
    return make_scenario(rho_s0, rho_e0, u, tols)


# ---------------------------------------------------------------------------
# correlations


BATH_RESET = "bath_reset"
BOTH_RESET = "both_reset"


def correlation(theta_system: Observable, theta_environment: Observable,
                scenario: BipartiteScenario, outcome: ScenarioOutcome,
                protocol: str = BATH_RESET,
                tols: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Correlation of local observables in the evolved state.

    bath_reset subtracts <theta_S>_{rho_S'} <theta_E>_{rho_E}: the flux of
    theta_S x theta_E from the evolved state to rho_S' x rho_E.  both_reset
    subtracts <theta_S>_{rho_S0} <theta_E>_{rho_E0}, the flux to the
    initial product state.
    """
    if protocol not in (BATH_RESET, BOTH_RESET):
        raise ValidationError(f"unknown protocol {protocol!r}")
    joint_obs = tensor_product(theta_system.matrix, theta_environment.matrix)
    joint_mean = expectation(joint_obs, outcome.rho_joint.matrix, tols)
    if protocol == BATH_RESET:
        mean_s = expectation(theta_system.matrix, outcome.rho_system.matrix, tols)
        mean_e = expectation(theta_environment.matrix,
                             scenario.rho_environment.matrix, tols)
    else:
        mean_s = expectation(theta_system.matrix, scenario.rho_system.matrix, tols)
        mean_e = expectation(theta_environment.matrix,
                             scenario.rho_environment.matrix, tols)
    return joint_mean - mean_s * mean_e


def correlation_bound_report(theta_system: Observable,
                             theta_environment: Observable,
                             scenario: BipartiteScenario, outcome: ScenarioOutcome,
                             protocol: str = BATH_RESET,
                             tols: Tolerances = DEFAULT_TOLERANCES):
    """BoundReport for the product observable against the reference state
    matching the protocol; its flux equals correlation()."""
    if protocol not in (BATH_RESET, BOTH_RESET):
        raise ValidationError(f"unknown protocol {protocol!r}")
    joint_obs = make_observable(
        tensor_product(theta_system.matrix, theta_environment.matrix), tols)
    if protocol == BATH_RESET:
        reference = outcome.sigma_reference
    else:
        reference = validate_state(tensor_product(scenario.rho_system.matrix,
                                                  scenario.rho_environment.matrix),
                                   tols)
    return evaluate_bounds(joint_obs, outcome.rho_joint, reference, tols=tols)


# ---------------------------------------------------------------------------
# saturating family


@dataclass(frozen=True)
class SaturatingFamily:
    """Closed forms for the extremal two-level pair at log-odds gap a,
    alongside the numerically evaluated bound data."""

    log_odds_gap: float
    trace_norm_closed: float
    s_tilde_closed: float
    epsilon: float
    trace_norm: float
    s_tilde: float
    bound_value: float
    gap: float


def saturating_family(log_odds_gap: float,
                      config: _bounds.BoundFunctionConfig = _bounds.DEFAULT_BOUND_CONFIG,
                      tols: Tolerances = DEFAULT_TOLERANCES,
                      ) -> tuple[DensityMatrix, DensityMatrix, SaturatingFamily]:
    """The two-level pair saturating the flux bound at every gap a.

    rho has populations (e^{-a/2}, e^{a/2}) / (2 cosh(a/2)) on (|0>, |1>),
    sigma is the same with a -> -a.  In closed form the trace norm is
    2 tanh(|a| / 2), the symmetric relative entropy is a tanh(a / 2)
    = divergence_from_gap(|a|), the kernel weight vanishes, and
    ||rho - sigma||_1^2 / 4 equals flux_ratio_sq_bound(s_tilde) exactly.
    The returned record carries both the closed forms and the values the
    full numerical pipeline produces for the same pair.
    """
    a = float(log_odds_gap)
    z = 2.0 * math.cosh(0.5 * a)
    rho = validate_state(np.diag([math.exp(-0.5 * a) / z, math.exp(0.5 * a) / z]), tols)
    sigma = validate_state(np.diag([math.exp(0.5 * a) / z, math.exp(-0.5 * a) / z]), tols)
    tn_closed = 2.0 * math.tanh(0.5 * abs(a))
    s_closed = _bounds.divergence_from_gap(abs(a))
    tn = trace_distance_norm(rho, sigma, tols)
    s_tilde = symmetric_relative_entropy(rho, sigma, tols)
    s_value = s_tilde.as_float()
    bound_value = _bounds.flux_ratio_sq_bound(s_value, config) if s_tilde.finite else 1.0
    gap = abs(0.25 * tn * tn - bound_value)
    return rho, sigma, SaturatingFamily(
        log_odds_gap=a,
        trace_norm_closed=tn_closed,
        s_tilde_closed=s_closed,
        epsilon=0.0,
        trace_norm=tn,
        s_tilde=s_value,
        bound_value=bound_value,
        gap=gap,
    )
