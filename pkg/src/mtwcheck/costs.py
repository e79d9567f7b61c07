"""Radial cost functions l: construction, validation, presets, and h = (l')^-1.

A cost is admissible when l is even and l'' keeps one strict sign on [0, D];
under that assumption l' restricted to [0, D] is strictly monotone, so its
inverse h is well defined on [-|l'(D)|, |l'(D)|] and odd.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import AdmissibilityError, ConvergenceFailure, OutOfRangeError
from .expressions import Expr, evaluate, evaluate_jet, parse_cost, pretty
from .jets import Jet

EVENNESS_TOL = 1e-10
SIGN_TOL = 1e-12


@dataclass(frozen=True)
class CostFunction:
    """A radial cost l with its working interval [0, diameter].

    lprime_sign is the constant sign of l'' on [0, diameter]; since l' is odd
    with l'(0) = 0, it is also the sign of l' on (0, diameter].
    analytic_inverse, when present, is a vectorized closed form for h.
    """

    expression: Expr
    text: str
    diameter: float
    lprime_sign: int
    analytic_inverse: Optional[Callable] = None
    name: Optional[str] = None

    def __post_init__(self):
        if not self.diameter > 0.0:
            raise ValueError("diameter must be positive")
        if self.lprime_sign not in (-1, 1):
            raise ValueError("lprime_sign must be -1 or +1")

    def __call__(self, z):
        return evaluate(self.expression, z)

    def jet(self, z0):
        """Order-6 jet of l at z0 (scalar or array basepoint)."""
        return eval_cost_jet(self, z0)

    def lprime(self, z):
        return self.jet(z).derivative(1)

    @property
    def zmax(self):
        """|l'(diameter)|: the radius of the invertible range of l'."""
        return abs(float(self.lprime(self.diameter)))

    def h(self, y):
        return inverse_lprime(self, y)


def eval_cost_jet(cost, z0):
    """Order-6 jet of l at z0 by structural recursion over the AST."""
    return evaluate_jet(cost.expression, Jet.variable(z0))


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    lprime_sign: int
    kind: Optional[str] = None
    witness: Optional[float] = None

    def raise_if_violated(self):
        if not self.ok:
            raise AdmissibilityError(self.kind, self.witness)


def validate_admissibility(cost, grid_size=256):
    """Check evenness of l and the constant sign of l'' on [0, diameter].

    Evenness: odd-order Taylor coefficients at 0 must vanish, and l(z)-l(-z)
    must vanish at sampled points.  Sign: l'' on a uniform grid must match the
    declared lprime_sign and stay away from zero.  Returns a report; callers
    that need an exception use report.raise_if_violated().
    """
    if grid_size < 64:
        raise ValueError("grid_size must be at least 64")
    jet0 = cost.jet(0.0)
    scale = max(1.0, max(abs(float(c)) for c in jet0.coeffs))
    for k in (1, 3, 5):
        if abs(float(jet0.coeffs[k])) > EVENNESS_TOL * scale:
            return AdmissibilityReport(False, cost.lprime_sign, "not-even", 0.0)
    zs = np.linspace(cost.diameter / 8.0, cost.diameter, 8)
    diff = np.abs(cost(zs) - cost(-zs))
    bad = diff > 1e-12 * np.maximum(1.0, np.abs(cost(zs)))
    if np.any(bad):
        return AdmissibilityReport(False, cost.lprime_sign, "not-even", float(zs[bad][0]))

    grid = np.linspace(0.0, cost.diameter, grid_size)
    lpp = 2.0 * np.asarray(cost.jet(grid).coeffs[2])
    near_zero = np.abs(lpp) <= SIGN_TOL * scale
    if np.any(near_zero):
        return AdmissibilityReport(False, cost.lprime_sign, "lpp-zero", float(grid[near_zero][0]))
    wrong_sign = lpp * cost.lprime_sign < 0.0
    if np.any(wrong_sign):
        return AdmissibilityReport(False, cost.lprime_sign, "lpp-sign-change",
                                   float(grid[wrong_sign][0]))
    return AdmissibilityReport(True, cost.lprime_sign)


def _infer_sign(expression, diameter):
    probes = np.array([0.0, diameter / 2.0, diameter])
    lpp = np.array([2.0 * float(evaluate_jet(expression, Jet.variable(z)).coeffs[2])
                    for z in probes])
    pick = int(np.argmax(np.abs(lpp)))
    return 1 if lpp[pick] >= 0.0 else -1


def make_cost(text_or_expr, diameter, lprime_sign=None, analytic_inverse=None, name=None):
    """Build a CostFunction from expression text or an AST, inferring the
    sign of l'' when not declared."""
    if isinstance(text_or_expr, str):
        expression = parse_cost(text_or_expr)
        text = text_or_expr.strip()
    else:
        expression = text_or_expr
        text = pretty(expression)
    if lprime_sign is None:
        lprime_sign = _infer_sign(expression, diameter)
    return CostFunction(expression=expression, text=text, diameter=float(diameter),
                        lprime_sign=lprime_sign, analytic_inverse=analytic_inverse,
                        name=name)


def inverse_lprime(cost, y):
    """h(y): the value with l'(h(y)) = y, for |y| <= |l'(D)|.

    Uses the analytic inverse when the cost carries one, otherwise
    bisection-bracketed Newton on [0, D] applied to |y|, with the sign
    restored afterwards so that h is odd exactly.
    """
    y_arr = np.asarray(y, dtype=float)
    zmax = cost.zmax
    if np.any(np.abs(y_arr) > zmax * (1.0 + 1e-9) + 1e-15):
        worst = float(np.max(np.abs(y_arr)))
        raise OutOfRangeError(f"|y| = {worst} exceeds |l'(D)| = {zmax}")
    if cost.analytic_inverse is not None:
        out = cost.analytic_inverse(y_arr)
    else:
        out = np.sign(y_arr) * cost.lprime_sign * _newton_inverse(cost, np.abs(y_arr))
    return out if isinstance(y, np.ndarray) else float(out)


def _newton_inverse(cost, targets, residual_tol=1e-13, max_iter=200):
    """Solve sign * l'(t) = target for t in [0, D], vectorized.

    g(t) = lprime_sign * l'(t) increases from 0 to |l'(D)| on [0, D]; Newton
    steps are kept inside a maintained bracket, falling back to bisection.
    """
    d = cost.diameter
    lo = np.zeros_like(targets)
    hi = np.full_like(targets, d)
    gmax = cost.zmax
    x = np.clip(d * targets / gmax, 0.0, d)
    tol = residual_tol * np.maximum(1.0, targets)
    for _ in range(max_iter):
        jet = cost.jet(x)
        g = cost.lprime_sign * np.asarray(jet.coeffs[1])
        gp = cost.lprime_sign * 2.0 * np.asarray(jet.coeffs[2])
        f = g - targets
        if np.all(np.abs(f) <= tol):
            break
        hi = np.where(f > 0.0, x, hi)
        lo = np.where(f <= 0.0, x, lo)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(gp != 0.0, f / gp, np.inf)
        candidate = x - step
        inside = (candidate > lo) & (candidate < hi)
        x = np.where(inside, candidate, 0.5 * (lo + hi))
    else:
        final = cost.lprime_sign * np.asarray(cost.jet(x).coeffs[1])
        if np.any(np.abs(final - targets) > 1e-12 * np.maximum(1.0, targets)):
            raise ConvergenceFailure("Newton inverse of l' did not converge")
    return x


def _h_sq(y):
    return np.asarray(y, dtype=float) + 0.0


def _h_neg_cosh(y):
    return -np.arcsinh(np.asarray(y, dtype=float))


def _h_neg_log1p_cosh(y):
    return -2.0 * np.arctanh(np.asarray(y, dtype=float))


def _h_log_cosh(y):
    return np.arctanh(np.asarray(y, dtype=float))


def _h_neg_log_cosh(y):
    return -np.arctanh(np.asarray(y, dtype=float))


def _h_neg_log1p_cos(y):
    return 2.0 * np.arctan(np.asarray(y, dtype=float))


def _make_h_quartic(eps):
    # Root of 4*eps*h^3 - h + y = 0 continuously connected to h = y at eps = 0,
    # by the trigonometric solution of the depressed cubic (three real roots
    # whenever 27*eps*y^2 < 1, which admissibility guarantees).  The cosine
    # passes through its zero at y = 0, costing absolute accuracy there, so
    # two Newton steps polish the root to machine-relative precision.
    root3eps = np.sqrt(3.0 * eps)

    def h(y):
        y = np.asarray(y, dtype=float)
        phi = np.arccos(np.clip(-3.0 * root3eps * y, -1.0, 1.0))
        root = np.cos(phi / 3.0 - 2.0 * np.pi / 3.0) / root3eps
        for _ in range(2):
            root = root - (root - 4.0 * eps * root ** 3 - y) / (1.0 - 12.0 * eps * root ** 2)
        return root

    return h


@dataclass(frozen=True)
class PresetInfo:
    name: str
    text: str
    lprime_sign: int
    curvatures: tuple
    verdict_note: str


PRESETS = {
    "sq": PresetInfo("sq", "z^2/2", 1, (-1, 0, 1), "A3w-only at K=0 (all coefficients zero)"),
    "neg-cosh": PresetInfo("neg-cosh", "-cosh(z)", -1, (-1,), "A3s at K=-1"),
    "neg-log1p-cosh": PresetInfo("neg-log1p-cosh", "-log(1+cosh(z))", -1, (-1,), "A3s at K=-1"),
    "log-cosh": PresetInfo("log-cosh", "log(cosh(z))", 1, (-1,), "A3w-only at K=-1"),
    "neg-log-cosh": PresetInfo("neg-log-cosh", "-log(cosh(z))", -1, (-1,), "A3w-only at K=-1"),
    "neg-log1p-cos": PresetInfo("neg-log1p-cos", "-log(1+cos(z))", 1, (1,), "A3s at K=+1"),
    "quartic": PresetInfo("quartic", "z^2/2 - EPS*z^4", 1, (0,),
                          "A3s at K=0 for small EPS (perturbation family)"),
}

_ANALYTIC_INVERSES = {
    "sq": _h_sq,
    "neg-cosh": _h_neg_cosh,
    "neg-log1p-cosh": _h_neg_log1p_cosh,
    "log-cosh": _h_log_cosh,
    "neg-log-cosh": _h_neg_log_cosh,
    "neg-log1p-cos": _h_neg_log1p_cos,
}

DEFAULT_QUARTIC_EPS = 1e-3


def preset(name, diameter, eps=None):
    """Instantiate a preset cost on [0, diameter].

    The quartic family takes the perturbation size through eps (default 1e-3)
    and requires 12*eps*D^2 < 1 so that l'' stays positive on [0, D].
    """
    if name == "quartic":
        eps = DEFAULT_QUARTIC_EPS if eps is None else float(eps)
        if eps <= 0.0:
            raise ValueError("quartic eps must be positive")
        if 12.0 * eps * diameter * diameter >= 1.0:
            raise ValueError("quartic preset needs 12*eps*D^2 < 1 for admissibility")
        text = f"z^2/2 - {eps!r}*z^4"
        return make_cost(text, diameter, lprime_sign=1,
                         analytic_inverse=_make_h_quartic(eps), name=f"quartic({eps!r})")
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}")
    if eps is not None:
        raise ValueError("eps applies only to the quartic preset")
    info = PRESETS[name]
    return make_cost(info.text, diameter, lprime_sign=info.lprime_sign,
                     analytic_inverse=_ANALYTIC_INVERSES[name], name=name)
