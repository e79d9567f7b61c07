"""Shared oracles and generators for the test suite."""

import math

import numpy as np


def central_derivative(f, x, order, h=0.05, points=9):
    """High-accuracy central finite difference of f^(order) at x.

    Builds the stencil weights for the symmetric integer-offset grid by
    solving the moment system, so the result is exact for polynomials up to
    degree points-1.  Independent of the jet machinery on purpose.
    """
    m = points // 2
    offsets = np.arange(-m, m + 1)
    rhs = np.zeros(points)
    rhs[order] = math.factorial(order)
    system = np.vander(offsets * h, points, increasing=True).T
    weights = np.linalg.solve(system, rhs)
    return float(sum(w * f(x + o * h) for w, o in zip(weights, offsets)))


def random_unit(rng, n):
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)


def model_violation(form, point):
    """Defect of the model constraint, relative to the point's magnitude."""
    c = point.coords
    scale = max(1.0, float(np.dot(c, c)))
    if form.curvature == 1:
        return abs(np.dot(c, c) - 1.0) / scale
    if form.curvature == -1:
        return abs(np.dot(c[:-1], c[:-1]) - c[-1] * c[-1] + 1.0) / scale
    return 0.0


def random_orthogonal_pair(form, base, rng):
    """Two nonzero tangent vectors at base with vanishing inner product."""
    u = form.random_tangent(base, rng, unit=True)
    w = form.random_tangent(base, rng)
    w = w - u * form.inner(w, u)
    n = form.norm(w)
    if n < 1e-8:
        return random_orthogonal_pair(form, base, rng)
    return u, w * (1.0 / n)


CANONICAL_CASES = [
    # (preset name, curvature, diameter, eps)
    ("sq", 0, 2.0, None),
    ("neg-cosh", -1, 2.0, None),
    ("neg-log1p-cosh", -1, 2.0, None),
    ("log-cosh", -1, 2.0, None),
    ("neg-log-cosh", -1, 2.0, None),
    ("neg-log1p-cos", 1, 2.5, None),
    ("quartic", 0, 1.0, 1e-3),
]
