"""Smooth statistic kernels F with closed-form derivatives.

Each family decays fast enough that |F| < 1e-16 outside a computable
finite window, which the quadrature modules use as integration cuts.
Derivatives are closed-form so no numeric differentiation enters any
moment formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["TestFunction", "gauss_bump", "poly_gauss", "sech2", "zero", "from_spec"]

_LOG_EPS = 36.85  # -log(1e-16)


@dataclass(frozen=True)
class TestFunction:
    """A statistic kernel F, its derivative, and decay metadata."""

    family: str
    params: tuple
    effective_support: tuple
    sup_norm: float
    _f: callable = field(repr=False)
    _df: callable = field(repr=False)

    def __call__(self, x):
        return self._f(np.asarray(x, dtype=float))

    def derivative(self, x):
        return self._df(np.asarray(x, dtype=float))

    @property
    def label(self):
        if not self.params:
            return self.family
        return self.family + ":" + ",".join(repr(p) for p in self.params)


def gauss_bump(a=1.0, c=0.0):
    """F(x) = exp(-a (x - c)^2)."""
    if a <= 0:
        raise ValueError("gauss_bump needs a > 0")
    half = math.sqrt(_LOG_EPS / a)

    def f(x):
        return np.exp(-a * (x - c) ** 2)

    def df(x):
        return -2.0 * a * (x - c) * np.exp(-a * (x - c) ** 2)

    return TestFunction("gauss", (a, c), (c - half, c + half), 1.0, f, df)


def poly_gauss(k=2, a=1.0):
    """F(x) = x^k exp(-a x^2) for integer k >= 1."""
    if a <= 0 or k < 1 or k != int(k):
        raise ValueError("poly_gauss needs integer k >= 1 and a > 0")
    k = int(k)
    half = math.sqrt((_LOG_EPS + k * 10.0) / a)
    peak = (k / (2.0 * a)) ** (k / 2.0) * math.exp(-k / 2.0)

    def f(x):
        return x ** k * np.exp(-a * x * x)

    def df(x):
        return x ** (k - 1) * (k - 2.0 * a * x * x) * np.exp(-a * x * x)

    return TestFunction("polygauss", (k, a), (-half, half), peak, f, df)


def sech2(a=1.0):
    """F(x) = sech(a x)^2."""
    if a <= 0:
        raise ValueError("sech2 needs a > 0")
    half = (_LOG_EPS + math.log(4.0)) / (2.0 * a)

    def f(x):
        return 1.0 / np.cosh(a * x) ** 2

    def df(x):
        return -2.0 * a * np.tanh(a * x) / np.cosh(a * x) ** 2

    return TestFunction("sech2", (a,), (-half, half), 1.0, f, df)


def zero():
    """The identically-zero statistic (useful for trivial checks)."""

    def f(x):
        return np.zeros_like(np.asarray(x, dtype=float))

    return TestFunction("zero", (), (-1.0, 1.0), 0.0, f, f)


def from_spec(text):
    """Parse 'family:p1,p2' grammar, e.g. 'gauss:1,0' or 'sech2:0.5'."""
    text = text.strip().lower()
    if text == "zero":
        return zero()
    name, _, raw = text.partition(":")
    params = [float(p) for p in raw.split(",") if p != ""] if raw else []
    if name == "gauss":
        return gauss_bump(*params)
    if name == "polygauss":
        return poly_gauss(*params)
    if name == "sech2":
        return sech2(*params)
    raise ValueError(f"unknown test-function family {name!r}")
