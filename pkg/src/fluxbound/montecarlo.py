"""Reproducible random sampling and the qubit Monte Carlo sweep.

Randomness is counter-based: draw i of stream k under master seed m uses
a Philox generator keyed by (m, k * 2^48 + i), so every record is a pure
function of (seed, stream, index).  Reordering or parallelizing draws
cannot change any of them, and a redraw continues the same substream.

The qubit protocol samples, per draw and in this fixed order of uniform
variates u1..u7:

    rho   = diag(1 - p1, p1)                      p1 = u1
    sigma = [[1 - q1, C], [conj(C), q1]]          q1 = u2,
            |C|^2 = u3 * q1 (1 - q1)  (keeps sigma positive),
            arg C = 2 pi u4
    theta = [[-w, D], [conj(D), w]]               w = 4 u5,
            |D|^2 = u6, arg D = 2 pi u7

All magnitudes are taken as square roots of uniformly drawn squared
magnitudes; phases are uniform on the half-open interval [0, 2 pi).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ValidationError
from .flux import BoundReport, Observable, evaluate_bounds, make_observable
from .linalg import unitary_from_generator
from .states import DensityMatrix, validate_state
from .thermo import BipartiteScenario, make_scenario

POLICY_REDRAW = "redraw"
POLICY_REPORT_INFINITE = "report_infinite"

_STREAM_SHIFT = 48  # draw indices live below bit 48 of the Philox key


def substream(master_seed: int, draw_index: int, stream: int = 0) -> np.random.Generator:
    """Independent generator for one draw: key = (seed, stream | index)."""
    if draw_index < 0 or draw_index >= (1 << _STREAM_SHIFT):
        raise ValidationError(f"draw index {draw_index} out of range")
    key = np.array([np.uint64(master_seed),
                    np.uint64((stream << _STREAM_SHIFT) + draw_index)],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def triple_from_uniforms(u, tols: Tolerances = DEFAULT_TOLERANCES,
                         ) -> tuple[Observable, DensityMatrix, DensityMatrix]:
    """Deterministic (theta, rho, sigma) from seven uniforms in [0, 1)."""
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (7,):
        raise ValidationError("the qubit protocol consumes exactly 7 uniforms")
    p1 = float(u[0])
    rho = validate_state(np.diag([1.0 - p1, p1]), tols)

    q1 = float(u[1])
    coherence_sq = float(u[2]) * q1 * (1.0 - q1)
    coherence = math.sqrt(coherence_sq) * cmath.exp(2j * math.pi * float(u[3]))
    sigma = validate_state(np.array([[1.0 - q1, coherence],
                                     [coherence.conjugate(), q1]]), tols)

    w = 4.0 * float(u[4])
    offdiag = math.sqrt(float(u[5])) * cmath.exp(2j * math.pi * float(u[6]))
    theta = make_observable(np.array([[-w, offdiag],
                                      [offdiag.conjugate(), w]]), tols)
    return theta, rho, sigma


def sample_qubit_triple(rng: np.random.Generator,
                        tols: Tolerances = DEFAULT_TOLERANCES,
                        ) -> tuple[Observable, DensityMatrix, DensityMatrix]:
    return triple_from_uniforms(rng.random(7), tols)


# generic random objects, used by the verification suites and tests

def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


def random_density(rng: np.random.Generator, dim: int,
                   tols: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """Full-rank state from a square Ginibre factor, rho = G G^dag / tr."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return validate_state(m / float(np.trace(m).real), tols)


def random_observable(rng: np.random.Generator, dim: int,
                      tols: Tolerances = DEFAULT_TOLERANCES) -> Observable:
    return make_observable(random_hermitian(rng, dim), tols)


def random_unitary(rng: np.random.Generator, dim: int,
                   tols: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    return unitary_from_generator(random_hermitian(rng, dim), 1.0, tols)


def random_scenario(rng: np.random.Generator, dim_system: int = 2,
                    dim_environment: int = 2,
                    tols: Tolerances = DEFAULT_TOLERANCES) -> BipartiteScenario:
    rho_s = random_density(rng, dim_system, tols)
    rho_e = random_density(rng, dim_environment, tols)
    u = random_unitary(rng, dim_system * dim_environment, tols)
    return make_scenario(rho_s, rho_e, u, tols)


# ---------------------------------------------------------------------------
# the sweep


@dataclass(frozen=True)
class DrawConfig:
    n_draws: int = 10000
    master_seed: int = 42
    rejection_policy: str = POLICY_REPORT_INFINITE
    slack_tolerance: float = 1e-9
    max_redraws: int = 64

    def __post_init__(self):
        if self.n_draws < 1:
            raise ValidationError("n_draws must be positive")
        if self.rejection_policy not in (POLICY_REDRAW, POLICY_REPORT_INFINITE):
            raise ValidationError(
                f"unknown rejection policy {self.rejection_policy!r}")
        if self.slack_tolerance <= 0.0:
            raise ValidationError("slack tolerance must be positive")


@dataclass(frozen=True)
class DrawRecord:
    """One draw of the sweep; s_tilde and pinsker_rhs are +inf for a
    reported-infinite draw (only possible under report_infinite)."""

    draw: int
    flux_ratio_sq: float
    s_tilde: float
    pinsker_rhs: float
    main_rhs: float
    strengthened_rhs: float
    epsilon: float
    redraws: int
    holds_all: bool
    holds_main: bool
    infinite: bool


@dataclass
class MonteCarloSummary:
    n_draws: int = 0
    violations: dict = field(default_factory=dict)
    min_slack_main: float = math.inf
    draws_s_tilde_ge_2: int = 0
    draws_far_from_equilibrium: int = 0  # finite s_tilde >= 2 and main_rhs < 1
    infinite_records: int = 0
    total_redraws: int = 0


def _record_from_report(index: int, report: BoundReport, redraws: int) -> DrawRecord:
    return DrawRecord(
        draw=index,
        flux_ratio_sq=report.flux_ratio_sq,
        s_tilde=report.s_tilde.as_float(),
        pinsker_rhs=report.pinsker_rhs,
        main_rhs=report.main_rhs,
        strengthened_rhs=report.strengthened_rhs,
        epsilon=report.epsilon,
        redraws=redraws,
        holds_all=report.all_hold(),
        holds_main=report.verdicts["main"].holds,
        infinite=not report.s_tilde.finite,
    )


def run_montecarlo(config: DrawConfig = DrawConfig(),
                   sampler=sample_qubit_triple,
                   tols: Tolerances | None = None,
                   ) -> tuple[list[DrawRecord], MonteCarloSummary]:
    """Run the sweep and evaluate every bound on every draw.

    Under the redraw policy a draw whose symmetric relative entropy is
    infinite is resampled from the same substream (the redraw count is
    recorded); under report_infinite it is emitted with its markers.
    """
    if tols is None:
        tols = DEFAULT_TOLERANCES
    if tols.slack != config.slack_tolerance:
        tols = replace(tols, slack=config.slack_tolerance)
    records: list[DrawRecord] = []
    summary = MonteCarloSummary(n_draws=config.n_draws)
    for index in range(config.n_draws):
        rng = substream(config.master_seed, index)
        redraws = 0
        while True:
            theta, rho, sigma = sampler(rng, tols)
            report = evaluate_bounds(theta, rho, sigma, tols=tols)
            if (report.s_tilde.finite
                    or config.rejection_policy == POLICY_REPORT_INFINITE
                    or redraws >= config.max_redraws):
                break
            redraws += 1
        record = _record_from_report(index, report, redraws)
        records.append(record)
        summary.total_redraws += redraws
        if record.infinite:
            summary.infinite_records += 1
        if record.s_tilde >= 2.0:
            summary.draws_s_tilde_ge_2 += 1
            if not record.infinite and record.main_rhs < 1.0:
                summary.draws_far_from_equilibrium += 1
        for name, verdict in report.verdicts.items():
            if not verdict.holds:
                summary.violations[name] = summary.violations.get(name, 0) + 1
        main = report.verdicts["main"]
        if not main.trivial and math.isfinite(main.slack):
            summary.min_slack_main = min(summary.min_slack_main, main.slack)
    return records, summary
