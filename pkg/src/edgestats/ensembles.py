"""Ensemble descriptors and soft-edge scalings.

Six ensembles are supported, identified by weight family and Dyson index:

===========  ========  ==================  =========================
name         beta      weight              edge center / stat scale
===========  ========  ==================  =========================
GUE          2         exp(-x^2)           sqrt(2N),   2^(1/2) N^(1/6)
GSE          4         exp(-x^2)           sqrt(4N),   2^(2/3) N^(1/6)
GOE          1         exp(-x^2/2)         sqrt(2N),   2^(1/2) N^(1/6)
LUE          2         x^a e^(-x)          4N+2a+2,    2^(-4/3) N^(-1/3)
LSE          4         x^a e^(-x)          8N+2a,      2^(-5/3) N^(-1/3)
LOE          1         x^(a/2) e^(-x/2)    4N+2a+4,    2^(-4/3) N^(-1/3)
===========  ========  ==================  =========================

The "stat scale" is the factor multiplying (x_j - center) inside the test
function of the scaled linear statistic sum_j F(scale * (x_j - center)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GAUSSIAN",
    "LAGUERRE",
    "EnsembleKind",
    "EdgeScaling",
    "gue",
    "gse",
    "goe",
    "lue",
    "lse",
    "loe",
    "from_name",
    "edge_scaling",
]

GAUSSIAN = "gaussian"
LAGUERRE = "laguerre"


@dataclass(frozen=True)
class EnsembleKind:
    family: str
    beta: int
    alpha: float = 0.0

    def __post_init__(self):
        if self.family not in (GAUSSIAN, LAGUERRE):
            raise ValueError(f"unknown family {self.family!r}")
        if self.beta not in (1, 2, 4):
            raise ValueError("beta must be 1, 2 or 4")
        if self.family == LAGUERRE:
            if self.beta == 2 and not self.alpha > -1:
                raise ValueError("LUE requires alpha > -1")
            if self.beta == 4 and not self.alpha > 0:
                raise ValueError("LSE requires alpha > 0")
            if self.beta == 1 and not self.alpha > -2:
                raise ValueError("LOE requires alpha > -2")

    @property
    def name(self):
        if self.family == GAUSSIAN:
            return {1: "GOE", 2: "GUE", 4: "GSE"}[self.beta]
        return {1: "LOE", 2: "LUE", 4: "LSE"}[self.beta]

    def requires_even_n(self):
        return self.beta == 1


def gue():
    return EnsembleKind(GAUSSIAN, 2)


def gse():
    return EnsembleKind(GAUSSIAN, 4)


def goe():
    return EnsembleKind(GAUSSIAN, 1)


def lue(alpha=0.0):
    return EnsembleKind(LAGUERRE, 2, alpha)


def lse(alpha):
    return EnsembleKind(LAGUERRE, 4, alpha)


def loe(alpha=0.0):
    return EnsembleKind(LAGUERRE, 1, alpha)


_BY_NAME = {
    "gue": gue,
    "gse": gse,
    "goe": goe,
    "lue": lue,
    "lse": lse,
    "loe": loe,
}


def from_name(name, alpha=0.0):
    """Build an EnsembleKind from a case-insensitive name like 'gue'."""
    key = name.strip().lower()
    if key not in _BY_NAME:
        raise ValueError(f"unknown ensemble {name!r}")
    ctor = _BY_NAME[key]
    if key.startswith("l"):
        return ctor(alpha)
    return ctor()


@dataclass(frozen=True)
class EdgeScaling:
    """Affine data of the scaled statistic: F(stat_scale * (x - center))."""

    center: float
    stat_scale: float

    def to_scaled(self, x):
        return self.stat_scale * (np.asarray(x) - self.center)

    def to_unscaled(self, xi):
        return self.center + np.asarray(xi) / self.stat_scale


def edge_scaling(kind, n):
    """Soft-edge scaling of the given ensemble at matrix size n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = kind.alpha
    if kind.family == GAUSSIAN:
        if kind.beta == 4:
            return EdgeScaling(np.sqrt(4.0 * n), 2.0 ** (2.0 / 3.0) * n ** (1.0 / 6.0))
        return EdgeScaling(np.sqrt(2.0 * n), np.sqrt(2.0) * n ** (1.0 / 6.0))
    if kind.beta == 2:
        return EdgeScaling(4.0 * n + 2.0 * a + 2.0, 2.0 ** (-4.0 / 3.0) * n ** (-1.0 / 3.0))
    if kind.beta == 4:
        return EdgeScaling(8.0 * n + 2.0 * a, 2.0 ** (-5.0 / 3.0) * n ** (-1.0 / 3.0))
    return EdgeScaling(4.0 * n + 2.0 * a + 4.0, 2.0 ** (-4.0 / 3.0) * n ** (-1.0 / 3.0))
