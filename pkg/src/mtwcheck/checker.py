"""Verdict logic: scan the coefficient inequalities over [0, |l'(D)|].

The weak condition holds on a space form iff beta, gamma <= 0 (plus delta <= 0
above dimension two) and alpha + delta <= 2*sqrt(beta*gamma) at every z in the
scan interval; strict versions of the same inequalities give the strong
condition.  The scan samples a dense uniform grid and reports per-condition
slacks (slack = -LHS, so nonnegative means the inequality holds).

Floating-point policy: alpha and beta divide cancelling differences by z^2, so
their computed values carry noise that grows like eps/z^2 as z -> 0.  The scan
therefore widens the pass/fail boundary by a per-point band of that shape.
Costs whose coefficients are identically zero then land in the boundary band
(weak, not strict) instead of flipping to "fails" on roundoff, while any
genuine violation dwarfs the band away from z = 0.  classify_point itself
applies no band unless one is passed in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .costs import validate_admissibility
from .curvature import SERIES_SWITCH, coefficient_arrays
from .errors import AdmissibilityError
from .expressions import evaluate_jet
from .jets import Jet

A3S = "A3s"
A3W_ONLY = "A3w-only"
FAILS = "fails"

# Multiple of machine epsilon for the roundoff band on the directly-evaluated
# part of the grid (z >= SERIES_SWITCH); measured pipeline noise sits about
# an order and a half below the resulting band.
_NOISE_BAND_COEFF = 500.0 * np.finfo(float).eps


@dataclass(frozen=True)
class ScanConfig:
    diameter: float
    dimension: int
    grid_points: int = 4096
    strict_margin: float = 1e-12

    def __post_init__(self):
        if not self.diameter > 0.0:
            raise ValueError("diameter must be positive")
        if self.dimension < 2:
            raise ValueError("dimension must be at least 2")
        if self.grid_points < 256:
            raise ValueError("grid_points must be at least 256")
        if self.strict_margin < 0.0:
            raise ValueError("strict_margin must be nonnegative")


@dataclass(frozen=True)
class PointClassification:
    """Per-condition slacks at one scan point (slack = -LHS of each <= 0)."""

    z: float
    slack_beta: float
    slack_gamma: float
    slack_delta: float
    slack_combo: Optional[float]
    weak: bool
    strict: bool


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: Optional[float]
    min_slacks: dict


def classify_point(alpha, beta, gamma, delta, n, *, strict_margin=1e-12,
                   noise_tolerance=0.0, z=float("nan")):
    """Classify one coefficient tuple against the dimension-appropriate set.

    For n = 2 the delta condition is ignored.  weak holds iff every active
    slack is >= -noise_tolerance; strict additionally needs every active slack
    above max(strict_margin, noise_tolerance).  The combo slack
    2*sqrt(beta*gamma) - (alpha + delta) is only defined when beta and gamma
    are nonpositive (up to the tolerance); sqrt runs on the clamped negations
    so that roundoff-level positive values do not raise.
    """
    slack_beta = -beta
    slack_gamma = -gamma
    slack_delta = -delta
    if beta > noise_tolerance or gamma > noise_tolerance:
        slack_combo = None
    else:
        root = math.sqrt(max(0.0, -beta)) * math.sqrt(max(0.0, -gamma))
        slack_combo = 2.0 * root - (alpha + delta)
    active = [slack_beta, slack_gamma]
    if n > 2:
        active.append(slack_delta)
    if slack_combo is not None:
        active.append(slack_combo)
    weak = slack_combo is not None and all(s >= -noise_tolerance for s in active)
    hurdle = max(strict_margin, noise_tolerance)
    strict = weak and all(s > hurdle for s in active)
    return PointClassification(z=z, slack_beta=slack_beta, slack_gamma=slack_gamma,
                               slack_delta=slack_delta, slack_combo=slack_combo,
                               weak=weak, strict=strict)


def _noise_band(z, profile):
    """Per-point widening of the pass/fail boundary; see the module docstring.

    Two roundoff amplifiers shape the band on the direct branch: the division
    of cancelling differences by z^2, and the conditioning of the series
    reversion behind A and B, which grows like (scale/|A|)^3 where l'' gets
    small.  Series-branch points near zero are evaluated from exact shifted
    coefficients and only need an absolute floor at the roundoff scale.
    """
    scale = np.maximum(1.0, np.maximum(np.abs(profile["A"]), np.abs(profile["B"])))
    tiny = np.clip(np.minimum(1.0, np.abs(profile["A"])), 1e-3, 1.0)
    cond = (scale / tiny) ** 3
    direct = _NOISE_BAND_COEFF * cond * (1.0 + 1.0 / np.maximum(z, SERIES_SWITCH) ** 2)
    return np.where(z >= SERIES_SWITCH, direct, 1e-12 * scale)


def scan_table(cost, K, cfg):
    """Full scan: verdict plus per-point columns for reporting.

    Returns (verdict, table) where table maps column names (z, A, B, alpha,
    beta, gamma, delta, slack_min) to arrays of length cfg.grid_points.
    """
    report = validate_admissibility(cost)
    report.raise_if_violated()
    if report.lprime_sign != cost.lprime_sign:
        raise AdmissibilityError("lpp-sign-change", 0.0, "declared l'' sign is wrong")
    if K == 1 and cfg.diameter >= math.pi:
        raise ValueError("on the sphere the scan diameter must satisfy D < pi")
    if abs(cost.diameter - cfg.diameter) > 1e-12:
        raise ValueError("scan diameter differs from the cost's working interval")

    zmax = cost.zmax
    z = np.linspace(0.0, zmax, cfg.grid_points)
    prof = coefficient_arrays(cost, K, z)
    band = _noise_band(z, prof)

    alpha, beta = prof["alpha"], prof["beta"]
    gamma, delta = prof["gamma"], prof["delta"]
    for name in ("alpha", "beta", "gamma", "delta"):
        if not np.all(np.isfinite(prof[name])):
            raise FloatingPointError(f"non-finite {name} encountered during the scan")
    slack_beta, slack_gamma, slack_delta = -beta, -gamma, -delta
    combo_defined = (beta <= band) & (gamma <= band)
    root = np.sqrt(np.maximum(0.0, -beta)) * np.sqrt(np.maximum(0.0, -gamma))
    slack_combo = 2.0 * root - (alpha + delta)

    active = {"beta": slack_beta, "gamma": slack_gamma}
    if cfg.dimension > 2:
        active["delta"] = slack_delta
    # where the combo condition is undefined the point already fails on beta
    # or gamma, so exclude it from minima rather than propagating a sentinel
    stacked = np.vstack(list(active.values())
                        + [np.where(combo_defined, slack_combo, np.inf)])
    slack_min = stacked.min(axis=0)

    weak_ok = combo_defined & np.all(stacked >= -band, axis=0)
    hurdle = np.maximum(cfg.strict_margin, band)
    strict_ok = weak_ok & np.all(stacked > hurdle, axis=0)

    if not np.all(weak_ok):
        status = FAILS
    elif np.all(strict_ok):
        status = A3S
    else:
        status = A3W_ONLY
    witness = float(z[int(np.argmin(slack_min))])
    min_slacks = {name: float(np.min(col)) for name, col in active.items()}
    if np.any(combo_defined):
        min_slacks["combo"] = float(np.min(slack_combo[combo_defined]))

    table = {
        "z": z, "A": prof["A"], "B": prof["B"], "alpha": alpha, "beta": beta,
        "gamma": gamma, "delta": delta, "slack_min": slack_min,
    }
    return Verdict(status=status, witness=witness, min_slacks=min_slacks), table


def scan_conditions(cost, K, cfg):
    """Verdict over a uniform grid on [0, |l'(D)|], endpoints included."""
    verdict, _ = scan_table(cost, K, cfg)
    return verdict


@dataclass(frozen=True)
class PerturbationResult:
    holds: bool
    witness: Optional[float]
    worst_lhs: float


def perturbation_check(f, k, b, grid_points=1024):
    """Check the two strict perturbation inequalities on (0, b].

    f is the AST of the perturbation profile; the conditions are
    f''(z) < k and (z^2 f'''(z) - z f''(z) + 2 f'(z))/z < k at every grid
    point of the uniform grid with left endpoint b/grid_points.
    """
    if k >= 0.0:
        raise ValueError("the threshold k must be negative")
    if b <= 0.0:
        raise ValueError("the interval bound b must be positive")
    if grid_points < 1:
        raise ValueError("grid_points must be positive")
    z = np.linspace(b / grid_points, b, grid_points)
    jet = evaluate_jet(f, Jet.variable(z))
    fp = np.asarray(jet.derivative(1))
    fpp = np.asarray(jet.derivative(2))
    fppp = np.asarray(jet.derivative(3))
    lhs1 = fpp
    lhs2 = (z * z * fppp - z * fpp + 2.0 * fp) / z
    bad = (lhs1 >= k) | (lhs2 >= k)
    worst = float(np.max(np.maximum(lhs1, lhs2)))
    if np.any(bad):
        return PerturbationResult(False, float(z[bad][0]), worst)
    return PerturbationResult(True, None, worst)
