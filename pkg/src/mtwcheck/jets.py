"""Truncated Taylor arithmetic: scalar jets of fixed order 6.

A jet stores the Taylor-normalized coefficients c_k = f^(k)(z0)/k! of a
scalar function at a basepoint z0, for k = 0..6.  Arithmetic and composition
with elementary functions propagate coefficients exactly through order 6,
which covers fourth derivatives plus the two extra orders consumed by
series limits at z = 0.

Coefficients may be plain floats or numpy arrays of a common shape, so a
single jet can carry a whole batch of basepoints at once; all operations
broadcast.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateJetError, DomainError

ORDER = 6
N_COEFFS = ORDER + 1

_FACTORIAL = (1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0)


def _same_basepoint(a, b):
    return np.array_equal(np.asarray(a.basepoint), np.asarray(b.basepoint))


class Jet:
    """Order-6 truncated Taylor expansion of a scalar function at a point."""

    __slots__ = ("coeffs", "basepoint")

    # make ndarray <op> Jet defer to the reflected Jet operators instead of
    # broadcasting the jet into an object array
    __array_ufunc__ = None

    def __init__(self, coeffs, basepoint=0.0):
        coeffs = tuple(coeffs)
        if len(coeffs) != N_COEFFS:
            raise ValueError(f"a jet has exactly {N_COEFFS} coefficients, got {len(coeffs)}")
        self.coeffs = coeffs
        self.basepoint = basepoint

    @classmethod
    def variable(cls, z0):
        """Jet of the identity function z -> z at z0: (z0, 1, 0, ..., 0)."""
        return cls((z0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0), basepoint=z0)

    @classmethod
    def constant(cls, value, basepoint=0.0):
        return cls((value, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0), basepoint=basepoint)

    @property
    def value(self):
        return self.coeffs[0]

    def derivative(self, k):
        """k-th derivative at the basepoint (coefficient times k!)."""
        return self.coeffs[k] * _FACTORIAL[k]

    def series_derivative(self):
        """Jet of f' at the same basepoint.

        The top coefficient would need order 7 of f and is set to 0: the
        result is exact through order 5 only.
        """
        c = self.coeffs
        return Jet(tuple((k + 1) * c[k + 1] for k in range(ORDER)) + (0.0,), self.basepoint)

    def _promote(self, other):
        if isinstance(other, Jet):
            if not _same_basepoint(self, other):
                raise ValueError("jet arithmetic requires a common basepoint")
            return other
        return Jet.constant(other, basepoint=self.basepoint)

    def __neg__(self):
        return Jet(tuple(-c for c in self.coeffs), self.basepoint)

    def __add__(self, other):
        other = self._promote(other)
        return Jet(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.basepoint)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._promote(other)
        return Jet(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.basepoint)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._promote(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(N_COEFFS):
            acc = a[0] * b[k]
            for i in range(1, k + 1):
                acc = acc + a[i] * b[k - i]
            out.append(acc)
        return Jet(out, self.basepoint)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self._promote(other)
        b0 = np.asarray(other.coeffs[0])
        if np.any(b0 == 0.0):
            raise DegenerateJetError("division by a jet with zero constant term")
        a, b = self.coeffs, other.coeffs
        out = [a[0] / b[0]]
        for k in range(1, N_COEFFS):
            acc = a[k]
            for j in range(k):
                acc = acc - out[j] * b[k - j]
            out.append(acc / b[0])
        return Jet(out, self.basepoint)

    def __rtruediv__(self, other):
        return Jet.constant(other, basepoint=self.basepoint).__truediv__(self)

    def __pow__(self, n):
        if not isinstance(n, (int, np.integer)):
            raise TypeError("jet exponents must be integers")
        n = int(n)
        if n < 0:
            return 1.0 / self.__pow__(-n)
        result = Jet.constant(1.0, basepoint=self.basepoint)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __repr__(self):
        return f"Jet({list(self.coeffs)!r}, basepoint={self.basepoint!r})"


def jet_arith(a, b, op):
    """Combine two jets with one of {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown jet operation {op!r}")


def _check_domain(name, bad_mask, values):
    bad_mask = np.asarray(bad_mask)
    if np.any(bad_mask):
        vals = np.asarray(values)
        offending = float(vals[bad_mask][0]) if vals.ndim else float(vals)
        raise DomainError(f"{name} evaluated outside its domain at {offending}", value=offending)


def _compose_table(table, a):
    """Compose a derivative-coefficient table with jet a by Horner evaluation.

    table[k] must equal f^(k)(a0)/k! at a0 = a.coeffs[0]; the increment
    a - a0 has zero constant term, so the truncated Horner sum is exact.
    """
    incr = Jet((0.0,) + a.coeffs[1:], a.basepoint)
    out = Jet.constant(table[ORDER], basepoint=a.basepoint)
    for k in range(ORDER - 1, -1, -1):
        out = out * incr + table[k]
    return out


def _integrate(dfda, a, value0):
    """Jet of F(a(z)) from F(a0) and the jet of F'(a(z)).

    Uses F(a)' = F'(a) a'; the antiderivative recurrence is exact through
    order 6 because the integrand only needs orders 0..5.
    """
    g = dfda * a.series_derivative()
    coeffs = [value0]
    for k in range(1, N_COEFFS):
        coeffs.append(g.coeffs[k - 1] / k)
    return Jet(coeffs, a.basepoint)


def _table_exp(a0):
    e = np.exp(a0)
    return tuple(e / _FACTORIAL[k] for k in range(N_COEFFS))


def _table_log(a0):
    r = 1.0 / a0
    table = [np.log(a0)]
    p = r
    for k in range(1, N_COEFFS):
        table.append(p / k if k % 2 == 1 else -p / k)
        p = p * r
    return tuple(table)


def _table_sqrt(a0):
    table = [np.sqrt(a0)]
    for k in range(1, N_COEFFS):
        table.append(table[-1] * (0.5 - (k - 1)) / (k * a0))
    return tuple(table)


def _table_circular(a0, even, odd, signs):
    vals = (even(a0), odd(a0))
    return tuple(signs[k % 4] * vals[k % 2] / _FACTORIAL[k] for k in range(N_COEFFS))


def _compose_sin(a):
    table = _table_circular(a.coeffs[0], np.sin, np.cos, (1.0, 1.0, -1.0, -1.0))
    return _compose_table(table, a)


def _compose_cos(a):
    table = _table_circular(a.coeffs[0], np.cos, np.sin, (1.0, -1.0, -1.0, 1.0))
    return _compose_table(table, a)


def _compose_sinh(a):
    table = _table_circular(a.coeffs[0], np.sinh, np.cosh, (1.0, 1.0, 1.0, 1.0))
    return _compose_table(table, a)


def _compose_cosh(a):
    table = _table_circular(a.coeffs[0], np.cosh, np.sinh, (1.0, 1.0, 1.0, 1.0))
    return _compose_table(table, a)


def _compose_exp(a):
    return _compose_table(_table_exp(a.coeffs[0]), a)


def _compose_log(a):
    _check_domain("log", np.asarray(a.coeffs[0]) <= 0.0, a.coeffs[0])
    return _compose_table(_table_log(a.coeffs[0]), a)


def _compose_sqrt(a):
    _check_domain("sqrt", np.asarray(a.coeffs[0]) <= 0.0, a.coeffs[0])
    return _compose_table(_table_sqrt(a.coeffs[0]), a)


def _compose_tan(a):
    return _compose_sin(a) / _compose_cos(a)


def _compose_atan(a):
    dfda = 1.0 / (1.0 + a * a)
    return _integrate(dfda, a, np.arctan(a.coeffs[0]))


def _compose_asinh(a):
    dfda = 1.0 / _compose_sqrt(1.0 + a * a)
    return _integrate(dfda, a, np.arcsinh(a.coeffs[0]))


def _compose_atanh(a):
    _check_domain("atanh", np.abs(np.asarray(a.coeffs[0])) >= 1.0, a.coeffs[0])
    dfda = 1.0 / (1.0 - a * a)
    return _integrate(dfda, a, np.arctanh(a.coeffs[0]))


_COMPOSITIONS = {
    "exp": _compose_exp,
    "log": _compose_log,
    "sqrt": _compose_sqrt,
    "sin": _compose_sin,
    "cos": _compose_cos,
    "tan": _compose_tan,
    "sinh": _compose_sinh,
    "cosh": _compose_cosh,
    "atan": _compose_atan,
    "asinh": _compose_asinh,
    "atanh": _compose_atanh,
}

ELEMENTARY_FUNCTIONS = frozenset(_COMPOSITIONS)


def jet_compose(name, a):
    """Jet of f o a for an elementary function f named by tag."""
    try:
        fn = _COMPOSITIONS[name]
    except KeyError:
        raise ValueError(f"unknown elementary function {name!r}") from None
    return fn(a)


def compose_series(table, a):
    """Jet of F o a given the Taylor table of F at a's constant term.

    table[k] = F^(k)(a0)/k! with a0 = a.coeffs[0]; exact through order 6.
    """
    return _compose_table(table, a)
