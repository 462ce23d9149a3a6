"""Scalar machinery behind the flux bounds.

The central objects are the strictly increasing map

    divergence_from_gap(y) = y * tanh(y / 2)

which sends the log-odds gap of an extremal two-level pair of states to
its symmetric relative entropy, its numerical inverse
gap_from_divergence, and two curves derived from them:

    flux_ratio_sq_bound(x)  = (x / gap_from_divergence(x))^2
                            = tanh(gap_from_divergence(x) / 2)^2
    variance_ratio_floor(x) = 1 / sinh(gap_from_divergence(x) / 2)^2

flux_ratio_sq_bound is the sharp upper bound on the squared flux ratio
(phi / phi_L)^2 at symmetric relative entropy x; variance_ratio_floor is
the matching lower bound on the variance ratio in the uncertainty
relation.  They satisfy flux_ratio_sq_bound * (1 + variance_ratio_floor)
= 1 identically.  By continuity flux_ratio_sq_bound(0) = 0, and the
curve increases to 1 as x -> inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NumericError, ValidationError


@dataclass(frozen=True)
class BoundFunctionConfig:
    """Root-finder knobs for gap_from_divergence.

    root_tolerance is relative: iteration stops once
    |divergence_from_gap(y) - x| <= root_tolerance * x.  A relative
    criterion keeps the product identity accurate at small x and stays
    reachable at large x, where an absolute one drowns in rounding.
    """

    root_tolerance: float = 1e-12
    max_iterations: int = 200
    bracket_growth: float = 2.0

    def __post_init__(self):
        if not (self.root_tolerance > 0.0):
            raise ValidationError("root_tolerance must be positive")
        if self.max_iterations < 1:
            raise ValidationError("max_iterations must be at least 1")
        if not (self.bracket_growth > 1.0):
            raise ValidationError("bracket_growth must exceed 1")


DEFAULT_BOUND_CONFIG = BoundFunctionConfig()


def divergence_from_gap(gap: float) -> float:
    """x = gap * tanh(gap / 2), the divergence of the extremal two-level
    pair with log-odds gap `gap`.  Strictly increasing on [0, inf)."""
    if gap < 0.0:
        raise DomainError("gap must be nonnegative", offending_value=gap)
    return gap * math.tanh(0.5 * gap)


def _divergence_slope(gap: float) -> float:
    # d/dy [y tanh(y/2)] = tanh(y/2) + (y/2) sech(y/2)^2
    t = math.tanh(0.5 * gap)
    if gap > 100.0:
        # sech(y/2)^2 underflows; the slope is tanh to machine precision
        return t
    sech = 1.0 / math.cosh(0.5 * gap)
    return t + 0.5 * gap * sech * sech


def gap_from_divergence(x: float, config: BoundFunctionConfig = DEFAULT_BOUND_CONFIG) -> float:
    """Inverse of divergence_from_gap, by bracketed Newton iteration.

    Starts from the bracket [x, max(x + 2, sqrt(2 x) + 2)] (the inverse
    lies above x because tanh < 1, and near sqrt(2 x) for small x), grows
    the upper end geometrically if needed, and falls back to bisection
    whenever a Newton step leaves the bracket.
    """
    if x < 0.0:
        raise DomainError("divergence must be nonnegative", offending_value=x)
    if x == 0.0:
        return 0.0
    lo = x
    hi = max(x + 2.0, math.sqrt(2.0 * x) + 2.0)
    growths = 0
    while divergence_from_gap(hi) < x:
        hi *= config.bracket_growth
        growths += 1
        if growths > config.max_iterations:
            raise NumericError(f"could not bracket the inverse at x = {x!r}")
    tol = config.root_tolerance * x
    y = 0.5 * (lo + hi)
    for _ in range(config.max_iterations):
        residual = divergence_from_gap(y) - x
        if abs(residual) <= tol:
            return y
        if residual > 0.0:
            hi = y
        else:
            lo = y
        step = residual / _divergence_slope(y)
        candidate = y - step
        if not (lo < candidate < hi):
            candidate = 0.5 * (lo + hi)
        if candidate == y or hi - lo <= 4.0 * math.ulp(hi):
            # bracket exhausted at working precision
            return y
        y = candidate
    raise NumericError(
        f"gap_from_divergence did not converge at x = {x!r} "
        f"within {config.max_iterations} iterations"
    )


def flux_ratio_sq_bound(x: float, config: BoundFunctionConfig = DEFAULT_BOUND_CONFIG) -> float:
    """Sharp upper bound on (phi / phi_L)^2 at symmetric divergence x.

    Equals tanh(gap_from_divergence(x) / 2)^2, evaluated as
    (x / gap_from_divergence(x))^2; 0 at x = 0 by continuity, increasing,
    bounded by min(1, x / 2).
    """
    if x < 0.0:
        raise DomainError("divergence must be nonnegative", offending_value=x)
    if x == 0.0:
        return 0.0
    ratio = x / gap_from_divergence(x, config)
    return ratio * ratio


def variance_ratio_floor(x: float, config: BoundFunctionConfig = DEFAULT_BOUND_CONFIG) -> float:
    """Lower bound on the variance ratio of the uncertainty relation,
    1 / sinh(gap_from_divergence(x) / 2)^2.  Diverges as x -> 0+, so
    x = 0 is outside the domain; decreasing in x."""
    if x <= 0.0:
        raise DomainError("variance_ratio_floor requires positive divergence",
                          offending_value=x)
    gap = gap_from_divergence(x, config)
    if gap > 1400.0:
        # sinh overflows but its reciprocal square has long underflowed
        return 0.0
    s = math.sinh(0.5 * gap)
    return 1.0 / (s * s)


def onsager_like(ratio: float) -> float:
    """2 r artanh(r) for a flux ratio r in [-1, 1].

    This is the tight entropy cost of driving flux ratio r: it matches
    divergence_from_gap(2 artanh |r|), dominates 2 r^2, and diverges at
    |r| = 1 (returned as +inf; callers only compare against it).
    """
    if abs(ratio) > 1.0:
        raise DomainError("flux ratio must lie in [-1, 1]", offending_value=ratio)
    if abs(ratio) == 1.0:
        return math.inf
    return 2.0 * ratio * math.atanh(ratio)
