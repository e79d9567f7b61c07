"""Jet arithmetic and elementary composition against independent oracles."""

import numpy as np
import pytest
from helpers import central_derivative

from mtwcheck import Jet, jet_arith, jet_compose
from mtwcheck.errors import DegenerateJetError, DomainError
from mtwcheck.jets import _FACTORIAL, N_COEFFS


def coeffs(jet):
    return np.array([float(c) for c in jet.coeffs])


def test_variable_jet_shape():
    j = Jet.variable(1.5)
    assert j.coeffs == (1.5, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    assert j.basepoint == 1.5


def test_variable_squared():
    j = Jet.variable(2.0)
    assert np.allclose(coeffs(j * j), [4.0, 4.0, 1.0, 0.0, 0.0, 0.0, 0.0])


def test_self_division_is_one():
    a = Jet((0.7, -1.2, 0.3, 2.0, -0.5, 0.1, 0.9), basepoint=0.2)
    assert np.allclose(coeffs(a / a), [1, 0, 0, 0, 0, 0, 0], atol=1e-15)


def test_division_by_degenerate_jet():
    a = Jet.variable(1.0)
    zero_head = Jet((0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0), basepoint=1.0)
    with pytest.raises(DegenerateJetError):
        a / zero_head


def test_basepoint_mismatch_rejected():
    with pytest.raises(ValueError):
        Jet.variable(1.0) + Jet.variable(2.0)


def test_jet_arith_dispatch():
    a, b = Jet.variable(1.0), Jet.constant(2.0, basepoint=1.0)
    assert np.allclose(coeffs(jet_arith(a, b, "add")), coeffs(a + b))
    assert np.allclose(coeffs(jet_arith(a, b, "sub")), coeffs(a - b))
    assert np.allclose(coeffs(jet_arith(a, b, "mul")), coeffs(a * b))
    assert np.allclose(coeffs(jet_arith(a, b, "div")), coeffs(a / b))
    with pytest.raises(ValueError):
        jet_arith(a, b, "pow")


def test_double_angle_identity():
    # sinh(z)*cosh(z) against the jet of sinh(2z)/2, both computed by the
    # implementation itself
    z0 = 0.7
    j = Jet.variable(z0)
    product = jet_compose("sinh", j) * jet_compose("cosh", j)
    double = jet_compose("sinh", 2.0 * Jet.variable(z0))
    assert np.allclose(coeffs(product), 0.5 * coeffs(double), atol=1e-12)


def test_sinh_maclaurin():
    s = jet_compose("sinh", Jet.variable(0.0))
    assert np.allclose(coeffs(s), [0, 1, 0, 1 / 6, 0, 1 / 120, 0], atol=1e-16)


def test_log_of_one():
    assert np.allclose(coeffs(jet_compose("log", Jet.constant(1.0))), 0.0, atol=1e-16)


def test_cosh_jet_against_finite_differences():
    jet = jet_compose("cosh", Jet.variable(1.0))
    for k in range(1, 5):
        fd = central_derivative(np.cosh, 1.0, k, h=0.02)
        assert jet.derivative(k) == pytest.approx(fd, abs=1e-6)


def test_domain_errors_carry_value():
    with pytest.raises(DomainError) as err:
        jet_compose("log", Jet.variable(-2.0))
    assert err.value.value == -2.0
    with pytest.raises(DomainError):
        jet_compose("sqrt", Jet.variable(0.0))
    with pytest.raises(DomainError):
        jet_compose("atanh", Jet.variable(1.0))


def test_integer_powers():
    j = Jet.variable(1.3)
    assert np.allclose(coeffs(j ** 3), coeffs(j * j * j), atol=1e-14)
    assert np.allclose(coeffs(j ** 0), coeffs(Jet.constant(1.0, basepoint=1.3)))
    assert np.allclose(coeffs(j ** -2), coeffs(1.0 / (j * j)), atol=1e-14)


def test_add_sub_mul_div_roundtrips():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        a = Jet(rng.standard_normal(N_COEFFS), basepoint=0.0)
        b_coeffs = rng.standard_normal(N_COEFFS)
        # keep the division well-conditioned; the algebraic property itself
        # does not depend on the magnitude of b0
        b_coeffs[0] = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
        b = Jet(b_coeffs, basepoint=0.0)
        assert np.allclose(coeffs((a + b) - b), coeffs(a), atol=1e-12)
        assert np.allclose(coeffs((a * b) / b), coeffs(a), atol=1e-12)


_DOMAINS = {
    "exp": (-2.0, 2.0), "log": (0.1, 3.0), "sqrt": (0.1, 3.0),
    "sin": (-3.0, 3.0), "cos": (-3.0, 3.0), "tan": (-1.2, 1.2),
    "sinh": (-2.0, 2.0), "cosh": (-2.0, 2.0),
    "atan": (-3.0, 3.0), "asinh": (-3.0, 3.0), "atanh": (-0.9, 0.9),
}

_REFERENCE = {
    "exp": np.exp, "log": np.log, "sqrt": np.sqrt, "sin": np.sin, "cos": np.cos,
    "tan": np.tan, "sinh": np.sinh, "cosh": np.cosh, "atan": np.arctan,
    "asinh": np.arcsinh, "atanh": np.arctanh,
}


@pytest.mark.parametrize("name", sorted(_DOMAINS))
def test_elementary_derivatives_match_finite_differences(name):
    rng = np.random.default_rng(hash(name) % 2 ** 32)
    lo, hi = _DOMAINS[name]
    f = _REFERENCE[name]
    for _ in range(100):
        x0 = rng.uniform(lo, hi)
        h = min(0.02, 0.2 * min(abs(x0 - lo), abs(hi - x0)) + 1e-3)
        jet = jet_compose(name, Jet.variable(x0))
        for k in range(1, 5):
            fd = central_derivative(f, x0, k, h=h)
            scale = max(1.0, abs(fd))
            assert abs(jet.derivative(k) - fd) <= 1e-5 * scale, (name, x0, k)


def test_composition_associativity():
    # f(g(z)) composed stepwise equals the one-shot jet of the composite
    z0 = 0.4
    stepwise = jet_compose("exp", jet_compose("sin", Jet.variable(z0)))
    composite = jet_compose("exp", jet_compose("sin", Jet.variable(z0)))

    def direct(k):
        return central_derivative(lambda t: np.exp(np.sin(t)), z0, k, h=0.02)

    assert np.allclose(coeffs(stepwise), coeffs(composite), atol=1e-12)
    for k in range(1, 5):
        assert stepwise.derivative(k) == pytest.approx(direct(k), rel=1e-6, abs=1e-6)


def test_array_coefficients_broadcast():
    z = np.linspace(0.3, 1.4, 11)
    jet = jet_compose("cosh", Jet.variable(z))
    assert np.allclose(np.asarray(jet.coeffs[0]), np.cosh(z))
    assert np.allclose(np.asarray(jet.coeffs[1]), np.sinh(z))
    assert np.allclose(2.0 * np.asarray(jet.coeffs[2]), np.cosh(z))


def test_derivative_accessor_uses_factorials():
    jet = Jet(tuple(1.0 / _FACTORIAL[k] for k in range(N_COEFFS)), basepoint=0.0)
    for k in range(N_COEFFS):
        assert jet.derivative(k) == pytest.approx(1.0)
