"""Closed-form curvature layer for radial costs on space forms.

Everything here flows from two scalar functions of z = |v|:

    A(z) = 1/h'(z)
    B(z) = z*coth(h(z))  [K=-1],   z/h(z)  [K=0],   z*cot(h(z))  [K=+1]

with h the inverse of l'.  Their first two derivatives feed a five-term
closed formula for the curvature of the transport cost, the four coefficient
functions alpha, beta, gamma, delta that drive the inequality checker, and a
second analytic route that differentiates A and B along s -> |v + s*w| with
an s-jet.  A and B are obtained by series reversion of the l' expansion, so
no finite differences enter anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .costs import eval_cost_jet, inverse_lprime
from .errors import LimitError, OutOfRangeError, PoleError, ZeroVectorError
from .geometry import Point, SpaceForm, TangentVector
from .jets import Jet, compose_series, jet_compose

# Below this argument A, B and the coefficient functions switch from direct
# evaluation at basepoint z to evaluation of their series at basepoint 0,
# whose shifted coefficients give the z -> 0 limits exactly.
SERIES_SWITCH = 1e-4

_LIMIT_TOL = 1e-7
_POLE_TOL = 1e-9


class ABDerivatives(NamedTuple):
    A: float
    Aprime: float
    Adprime: float
    B: float
    Bprime: float
    Bdprime: float


@dataclass(frozen=True)
class CoefficientProfile:
    """A, B, their derivatives, and the four coefficient functions at one z."""

    z: float
    A: float
    Aprime: float
    Adprime: float
    B: float
    Bprime: float
    Bdprime: float
    alpha: float
    beta: float
    gamma: float
    delta: float


@dataclass(frozen=True)
class MtwInput:
    """Base point with the three tangent vectors of a curvature evaluation."""

    x: Point
    u: TangentVector
    v: TangentVector
    w: TangentVector

    def validate(self, form):
        for vec in (self.u, self.v, self.w):
            if not np.allclose(vec.base.coords, self.x.coords, atol=1e-9):
                raise ValueError("all tangent vectors must share the base point")
        if form.norm(self.v) == 0.0:
            raise ZeroVectorError("v must be nonzero")


def _revert(w):
    """Compositional inverse of a series with zero constant term.

    w must be a formal jet at 0 with w1 != 0.  The fixed-point iteration
    g <- (t - sum_{k>=2} w_k g^k)/w_1 gains one exact order per pass.
    """
    c = w.coeffs
    t = Jet((0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0), basepoint=w.basepoint)
    inv_w1 = 1.0 / c[1]
    g = t * inv_w1
    for _ in range(7):
        tail = c[5] + g * c[6]
        for k in (4, 3, 2):
            tail = c[k] + g * tail
        g = (t - g * g * tail) * inv_w1
    return g


def _lprime_increment_series(ljet):
    """Formal series of l'(h0 + u) - l'(h0) from the jet of l at h0.

    The degree-6 coefficient would need order 7 of l and is set to zero;
    at basepoint 0 it genuinely vanishes because l' is odd.
    """
    c = ljet.coeffs
    coeffs = [0.0] + [(k + 1) * c[k + 1] for k in range(1, 6)] + [0.0]
    return Jet(coeffs, basepoint=0.0)


def _check_pole(K, h0):
    if K == 1:
        gap = np.pi - np.abs(np.asarray(h0))
        if np.any(gap < _POLE_TOL):
            raise PoleError("h(z) within tolerance of the cot pole at pi")


def _ab_jets_direct(cost, K, z):
    """Jets of A and B at basepoint z (scalar or array, entries > 0)."""
    h0 = np.asarray(inverse_lprime(cost, z))
    _check_pole(K, h0)
    ljet = eval_cost_jet(cost, h0)
    g = _revert(_lprime_increment_series(ljet))
    hjet = Jet((h0,) + g.coeffs[1:6] + (0.0,), basepoint=z)
    a_jet = 1.0 / hjet.series_derivative()
    zjet = Jet.variable(z)
    if K == -1:
        b_jet = zjet * jet_compose("cosh", hjet) / jet_compose("sinh", hjet)
    elif K == 0:
        b_jet = zjet / hjet
    else:
        b_jet = zjet * jet_compose("cos", hjet) / jet_compose("sin", hjet)
    return a_jet, b_jet


@lru_cache(maxsize=64)
def _ab_series_origin(cost, K):
    """Taylor coefficients of A and B at z = 0, exact through order 5.

    Both series exist because h is odd with h'(0) = 1/l''(0) != 0; the
    apparent 0/0 in B cancels after shifting the vanishing numerator and
    denominator series by one order.
    """
    ljet = eval_cost_jet(cost, 0.0)
    # degree-6 coefficient of l' vanishes exactly by parity, so the reversion
    # is exact through order 6 here
    g = _revert(_lprime_increment_series(ljet))
    a_jet = 1.0 / g.series_derivative()
    if K == -1:
        num, den = jet_compose("cosh", g), jet_compose("sinh", g)
    elif K == 0:
        num, den = Jet.constant(1.0), g
    else:
        num, den = jet_compose("cos", g), jet_compose("sin", g)
    shifted = Jet(den.coeffs[1:] + (0.0,), basepoint=0.0)
    b_jet = num / shifted
    a = tuple(float(c) for c in a_jet.coeffs)
    b = tuple(float(c) for c in b_jet.coeffs)
    scale = max(1.0, abs(a[0]), abs(b[0]))
    if abs(a[0] - b[0]) > _LIMIT_TOL * scale or abs(a[1] - b[1]) > _LIMIT_TOL * scale \
            or abs(a[1]) > _LIMIT_TOL * scale or abs(b[1]) > _LIMIT_TOL * scale:
        raise LimitError("A - B does not vanish to second order at z = 0; "
                         "cost is inadmissible or h is inconsistent")
    return a, b


def _poly(coeffs, z, weight, shift):
    """sum_k weight(k) * coeffs[k] * z^(k-shift), Horner-evaluated."""
    acc = np.zeros_like(np.asarray(z, dtype=float))
    for k in reversed(range(shift, len(coeffs))):
        acc = acc * z + weight(k) * coeffs[k]
    return acc


def shift_series(coeffs, dz):
    """Recenter a Taylor-coefficient tuple from basepoint p to p + dz."""
    n = len(coeffs)
    return tuple(
        sum(math.comb(k, j) * coeffs[k] * dz ** (k - j) for k in range(j, n))
        for j in range(n)
    )


_PROFILE_KEYS = ("A", "Aprime", "Adprime", "B", "Bprime", "Bdprime",
                 "alpha", "beta", "gamma", "delta")


def _profiles(cost, K, z):
    """All profile quantities at an array of z >= 0 values.

    Entries below SERIES_SWITCH use the origin series (limits); the rest are
    evaluated directly at their own basepoint.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0.0):
        raise OutOfRangeError("profile arguments must be nonnegative")
    if np.any(z > cost.zmax * (1.0 + 1e-9) + 1e-15):
        raise OutOfRangeError(f"z beyond |l'(D)| = {cost.zmax}")
    out = {key: np.empty_like(z) for key in _PROFILE_KEYS}
    small = z < SERIES_SWITCH
    if np.any(small):
        a, b = _ab_series_origin(cost, K)
        zs = z[small]
        amb = tuple(ai - bi for ai, bi in zip(a, b))
        out["A"][small] = _poly(a, zs, lambda k: 1, 0)
        out["Aprime"][small] = _poly(a, zs, lambda k: k, 1)
        out["Adprime"][small] = _poly(a, zs, lambda k: k * (k - 1), 2)
        out["B"][small] = _poly(b, zs, lambda k: 1, 0)
        out["Bprime"][small] = _poly(b, zs, lambda k: k, 1)
        out["Bdprime"][small] = _poly(b, zs, lambda k: k * (k - 1), 2)
        # alpha and beta come from the numerator series shifted down by z^2;
        # the degree-0/1 terms vanish (checked in _ab_series_origin)
        n_coeffs = tuple(k * (k - 1) * a[k] + (6 - 4 * k) * amb[k] for k in range(7))
        m_coeffs = tuple(k * a[k] - 2 * amb[k] for k in range(7))
        out["alpha"][small] = _poly(n_coeffs, zs, lambda k: 1, 2)
        out["beta"][small] = _poly(m_coeffs, zs, lambda k: 1, 2)
        out["gamma"][small] = _poly(b, zs, lambda k: k * (k - 1), 2)
        out["delta"][small] = _poly(b, zs, lambda k: k, 2)
    large = ~small
    if np.any(large):
        zl = z[large]
        a_jet, b_jet = _ab_jets_direct(cost, K, zl)
        A, Ap, Add = a_jet.coeffs[0], a_jet.coeffs[1], 2.0 * a_jet.coeffs[2]
        B, Bp, Bdd = b_jet.coeffs[0], b_jet.coeffs[1], 2.0 * b_jet.coeffs[2]
        amb = A - B
        out["A"][large], out["Aprime"][large], out["Adprime"][large] = A, Ap, Add
        out["B"][large], out["Bprime"][large], out["Bdprime"][large] = B, Bp, Bdd
        out["alpha"][large] = (zl * zl * Add + 6.0 * amb - 4.0 * zl * (Ap - Bp)) / (zl * zl)
        out["beta"][large] = (zl * Ap - 2.0 * amb) / (zl * zl)
        out["gamma"][large] = Bdd
        out["delta"][large] = Bp / zl
    return out


def compute_AB(cost, K, z):
    """A, A', A'', B, B', B'' at z (scalar in, floats out; array in, arrays out)."""
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    prof = _profiles(cost, K, np.atleast_1d(np.asarray(z, dtype=float)))
    vals = [prof[k] for k in ("A", "Aprime", "Adprime", "B", "Bprime", "Bdprime")]
    if scalar:
        return ABDerivatives(*(float(v[0]) for v in vals))
    return ABDerivatives(*vals)


def coefficient_arrays(cost, K, z):
    """Vectorized profile over an array of scan points."""
    return _profiles(cost, K, np.atleast_1d(np.asarray(z, dtype=float)))


def coefficients(cost, K, z):
    """CoefficientProfile at a single scan point (z = 0 handled by limits)."""
    prof = _profiles(cost, K, np.atleast_1d(float(z)))
    return CoefficientProfile(z=float(z), **{k: float(prof[k][0]) for k in _PROFILE_KEYS})


def decompose(form, u, v):
    """Split u into its components along v and orthogonal to v."""
    vv = form.inner(v, v)
    if vv == 0.0:
        raise ZeroVectorError("cannot decompose against a zero vector")
    u0 = v * (form.inner(u, v) / vv)
    return u0, u - u0


def _tangential_factor(K, d):
    """|v|*coth(|v|) / 1 / |v|*cot(|v|) with its series limit at |v| -> 0."""
    if K == 0:
        return 1.0
    if d < SERIES_SWITCH:
        d2 = d * d
        return 1.0 + K * d2 / 3.0 - d2 * d2 / 45.0
    if K == -1:
        return d / math.tanh(d)
    if math.pi - d < _POLE_TOL:
        raise PoleError("|v| within tolerance of the sphere conjugate point at pi")
    return d / math.tan(d)


def jacobi_map_closed(form, u, v):
    """Initial covariant derivative of the Jacobi field with J(0)=u, J(1)=0.

    Equals -u0 - f(|v|) u1 where f is the tangential factor above.
    """
    d = form.norm(v)
    if d == 0.0:
        raise ZeroVectorError("the Jacobi map needs a nonzero geodesic direction")
    u0, u1 = decompose(form, u, v)
    return -u0 - _tangential_factor(form.curvature, d) * u1


def mtw_closed(cost, form, inp):
    """Transport-cost curvature by the five-term closed formula.

    u and w are decomposed against v; no orthogonality between u and w is
    assumed.
    """
    inp.validate(form)
    z = form.norm(inp.v)
    ab = compute_AB(cost, form.curvature, z)
    u0, u1 = decompose(form, inp.u, inp.v)
    w0, w1 = decompose(form, inp.w, inp.v)
    u0sq, u1sq = form.inner(u0, u0), form.inner(u1, u1)
    w0sq, w1sq = form.inner(w0, w0), form.inner(w1, w1)
    cross = form.inner(u0, w0) * form.inner(u1, w1)
    u1w1 = form.inner(u1, w1)
    total = (
        ab.Adprime * u0sq * w0sq
        + ab.Bdprime * u1sq * w0sq
        + ab.Aprime / z * (u0sq * w1sq + 4.0 * cross)
        + ab.Bprime / z * (u1sq * w1sq - 4.0 * cross)
        + 2.0 * (ab.A - ab.B) / (z * z) * (u1w1 * u1w1 - u0sq * w1sq - 2.0 * cross)
    )
    return -1.5 * total


def _ab_tables_at(cost, K, z0):
    """Taylor tables of A and B at basepoint z0, for composition in s."""
    if z0 >= SERIES_SWITCH:
        a_jet, b_jet = _ab_jets_direct(cost, K, np.atleast_1d(z0))
        a = tuple(float(np.atleast_1d(c)[0]) for c in a_jet.coeffs)
        b = tuple(float(np.atleast_1d(c)[0]) for c in b_jet.coeffs)
        return a, b
    a, b = _ab_series_origin(cost, K)
    return shift_series(a, z0), shift_series(b, z0)


def mtw_via_jacobi(cost, form, inp):
    """Transport-cost curvature as -(3/2) d^2/ds^2 of the Jacobi-map reduction.

    The scalar s -> A(|v+sw|)|u0(s)|^2 + B(|v+sw|)|u1(s)|^2 is differentiated
    twice at s = 0 with a jet in s, so this route and the closed formula share
    only the A/B series and differ in every algebraic step after that.
    """
    inp.validate(form)
    v, w, u = inp.v, inp.w, inp.u
    z0 = form.norm(v)
    a_table, b_table = _ab_tables_at(cost, form.curvature, z0)
    q = Jet((z0 * z0, 2.0 * form.inner(v, w), form.inner(w, w), 0.0, 0.0, 0.0, 0.0),
            basepoint=0.0)
    r = jet_compose("sqrt", q)
    a_of_r = compose_series(a_table, r)
    b_of_r = compose_series(b_table, r)
    p = Jet((form.inner(u, v), form.inner(u, w), 0.0, 0.0, 0.0, 0.0, 0.0), basepoint=0.0)
    u0sq = p * p / q
    g = a_of_r * u0sq + b_of_r * (form.inner(u, u) - u0sq)
    return -3.0 * float(g.coeffs[2])
