"""Brute-force ground truth that never touches the closed-form layer.

Two independent checks live here: the transport-cost curvature computed
straight from its definition as a fourth mixed derivative of
l(d(exp(t*u), cost-exp(v+s*w))) on an explicit model, and direct integration
of the Jacobi field equation along a geodesic.  The definitional route uses
nothing from the closed-form layer; the Jacobi integration consumes the
closed Jacobi map only as the initial data whose correctness it is testing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StencilDegenerateError, ZeroVectorError
from .geometry import cost_exp, orthonormal_tangent_frame


@dataclass(frozen=True)
class StencilConfig:
    """Perturbation sizes for the mixed-derivative stencil."""

    step_t: float = 1e-2
    step_s: float = 1e-2
    richardson: bool = True

    def __post_init__(self):
        for step in (self.step_t, self.step_s):
            if not 1e-4 <= step <= 1e-1:
                raise ValueError("stencil steps must lie in [1e-4, 1e-1]")


def _mixed_second_differences(cost, form, inp, ht, hs):
    """(d^2/dt^2)(d^2/ds^2) F at 0 via the 3x3 product of central stencils."""
    targets = [cost_exp(cost, form, inp.v + (j * hs) * inp.w) for j in (-1, 0, 1)]
    weights = (1.0, -2.0, 1.0)
    acc = 0.0
    for i, wi in zip((-1, 0, 1), weights):
        xi = form.exp_map(inp.u * (i * ht))
        for y, wj in zip(targets, weights):
            value = float(cost(form.distance(xi, y)))
            if not np.isfinite(value):
                raise StencilDegenerateError("stencil produced a non-finite cost value")
            acc += wi * wj * value
    return acc / (ht * ht * hs * hs)


def mtw_definitional(cost, form, inp, cfg=StencilConfig()):
    """Curvature straight from the definition: -(3/2) of the 4th mixed derivative.

    The stencil is second order in each step; with richardson=True both steps
    are halved once and extrapolated, removing the leading error term.
    """
    inp.validate(form)
    coarse = _mixed_second_differences(cost, form, inp, cfg.step_t, cfg.step_s)
    if cfg.richardson:
        fine = _mixed_second_differences(cost, form, inp, cfg.step_t / 2.0, cfg.step_s / 2.0)
        coarse = (4.0 * fine - coarse) / 3.0
    return -1.5 * coarse


def jacobi_residual(form, u, v, steps=1000, jacobi_map=None):
    """|J(1)| after integrating the Jacobi equation with the closed-map initial data.

    The field J(0) = u, DJ(0) = jacobi_map(u, v) is integrated along
    exp(tau*v) with classical RK4 in parallel-frame coordinates, where the
    curvature term reduces to a constant matrix built from curvature_action.
    A correct Jacobi map makes J(1) vanish.
    """
    from .curvature import jacobi_map_closed

    if form.norm(v) == 0.0:
        raise ZeroVectorError("jacobi_residual needs a nonzero geodesic direction")
    if jacobi_map is None:
        jacobi_map = jacobi_map_closed
    base = v.base
    frame = orthonormal_tangent_frame(form, base, first=v)
    n = form.dimension

    def coords(vec):
        return np.array([form.inner(vec, e) for e in frame])

    # R(v, .)v in frame coordinates is a fixed linear map along the geodesic
    matrix = np.empty((n, n))
    for j, e in enumerate(frame):
        matrix[:, j] = coords(form.curvature_action(v, e))

    y = coords(u)
    dy = coords(jacobi_map(form, u, v))
    state = np.concatenate([y, dy])

    def rhs(s):
        return np.concatenate([s[n:], -matrix @ s[:n]])

    h = 1.0 / steps
    for _ in range(steps):
        k1 = rhs(state)
        k2 = rhs(state + 0.5 * h * k1)
        k3 = rhs(state + 0.5 * h * k2)
        k4 = rhs(state + h * k3)
        state = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return float(np.linalg.norm(state[:n]))


_STENCILS = {
    1: ((-1, 1), (-0.5, 0.5), 1),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0), 2),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5), 3),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0), 4),
}


def _central_difference(f, z, order, h):
    offsets, weights, power = _STENCILS[order]
    acc = 0.0
    for o, w in zip(offsets, weights):
        value = float(f(z + o * h))
        if not np.isfinite(value):
            raise StencilDegenerateError(f"non-finite value at {z + o * h}")
        acc += w * value
    return acc / h ** power


def fd_derivative_check(f, z, order, step=1e-2):
    """Derivative of f at z of the given order (1..4) by central differences.

    Uses the classical second-order stencil at `step` plus one Richardson
    refinement with the halved step.
    """
    if order not in _STENCILS:
        raise ValueError("order must be between 1 and 4")
    coarse = _central_difference(f, z, order, step)
    fine = _central_difference(f, z, order, step / 2.0)
    return (4.0 * fine - coarse) / 3.0
