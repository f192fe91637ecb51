"""Large-size asymptotic mean/variance of edge-scaled linear statistics.

The six ensembles collapse onto three formula sets indexed by beta alone
(the Gaussian and Laguerre members of each symmetry class share the same
limiting expressions, realized here as literally the same code path).

Each formula is a catalog of coefficient-tagged integral terms over the
Airy-kernel function family: the kernel diagonal K(x,x), the transform
L(x,y), products of Ai and B, and (for beta = 1) sign-weighted double
integrals.  Coefficients are exact dyadic rationals transcribed from the
limit theorems; a single generic evaluator walks the catalog so every
ensemble exercises one tested integration path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import quad
from .ensembles import EnsembleKind
from .kernel import airy_kernel, airy_kernel_grid, l_matrix
from .specfun import airy_ai, airy_ai_prime, b_function
from .quad import QuadratureSpec, panel_rule

__all__ = [
    "IntegralTerm",
    "MomentFormulaResult",
    "mean_asymptotic",
    "variance_asymptotic",
    "mgf_log_asymptotic",
    "correction_terms",
    "moment_formulas",
    "MEAN_TERMS",
    "VARIANCE_TERMS",
]

DEFAULT_SPEC = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-9)


@dataclass(frozen=True)
class IntegralTerm:
    name: str
    dimension: int
    kernel: str
    slots: tuple
    coefficient: Fraction

    def __post_init__(self):
        if self.coefficient == 0:
            raise ValueError("terms must carry a nonzero coefficient")
        if self.dimension not in (1, 2) or len(self.slots) != self.dimension:
            raise ValueError("slot count must match dimension")


@dataclass(frozen=True)
class MomentFormulaResult:
    mean: float
    variance: float
    per_term_values: dict
    quad_err: float


def _t(name, dim, kern, slots, coef):
    return IntegralTerm(name, dim, kern, slots, Fraction(*coef))


MEAN_TERMS = {
    2: (_t("K_F", 1, "K_diag", ("F",), (1, 1)),),
    4: (
        _t("K_F", 1, "K_diag", ("F",), (1, 2)),
        _t("L_diag_Fprime", 1, "L_diag", ("Fp",), (-1, 8)),
        _t("AiB_F", 1, "AiB", ("F",), (1, 8)),
        _t("B2_Fprime", 1, "B2", ("Fp",), (1, 32)),
    ),
    1: (
        _t("K_F", 1, "K_diag", ("F",), (1, 1)),
        _t("L_diag_Fprime", 1, "L_diag", ("Fp",), (-1, 4)),
        _t("AiB_F", 1, "AiB", ("F",), (1, 4)),
        _t("B2_Fprime", 1, "B2", ("Fp",), (1, 16)),
    ),
}

VARIANCE_TERMS = {
    2: (
        _t("K_F2", 1, "K_diag", ("F2",), (1, 1)),
        _t("K2_FF", 2, "K2", ("F", "F"), (-1, 1)),
    ),
    4: (
        _t("K_F2", 1, "K_diag", ("F2",), (1, 2)),
        _t("K2_FF", 2, "K2", ("F", "F"), (-1, 2)),
        _t("L_diag_FFprime", 1, "L_diag", ("FFp",), (-1, 4)),
        _t("AiB_F2", 1, "AiB", ("F2",), (1, 8)),
        _t("B2_FFprime", 1, "B2", ("FFp",), (1, 16)),
        _t("K_L_FprimeF", 2, "KL", ("Fp", "F"), (1, 4)),
        _t("K_AiB_FF", 2, "K_AiB", ("F", "F"), (-1, 4)),
        _t("K_BB_FFprime", 2, "K_BB", ("F", "Fp"), (-1, 16)),
        _t("L_Lt_FprimeFprime", 2, "LLt", ("Fp", "Fp"), (-1, 32)),
        _t("L_AiB_FprimeF", 2, "L_AiB", ("Fp", "F"), (1, 16)),
        _t("L_BB_FprimeFprime", 2, "L_BB", ("Fp", "Fp"), (1, 64)),
        _t("AiAiBB_FF", 2, "AiAiBB", ("F", "F"), (-1, 32)),
        _t("AiB_B2_FFprime", 2, "AiB_B2", ("F", "Fp"), (-1, 64)),
        _t("B2B2_FprimeFprime", 2, "B2B2", ("Fp", "Fp"), (-1, 512)),
    ),
    1: (
        _t("K_F2", 1, "K_diag", ("F2",), (2, 1)),
        _t("K2_FF", 2, "K2", ("F", "F"), (-2, 1)),
        _t("L_diag_FFprime", 1, "L_diag", ("FFp",), (-1, 2)),
        _t("sign_K_FprimeF", 2, "sign_K", ("Fp", "F"), (-1, 2)),
        _t("AiB_F2", 1, "AiB", ("F2",), (1, 2)),
        _t("sign_Ai_B_FprimeF", 2, "sign_AiB", ("Fp", "F"), (-1, 8)),
        _t("B2_FFprime", 1, "B2", ("FFp",), (1, 8)),
        _t("AiB_B2_FFprime", 2, "AiB_B2", ("F", "Fp"), (-1, 16)),
        _t("K_AiB_FF", 2, "K_AiB", ("F", "F"), (-1, 1)),
        _t("K_BB_FprimeF", 2, "K_BB", ("Fp", "F"), (-1, 4)),
        _t("L_Lt_FprimeFprime", 2, "LLt", ("Fp", "Fp"), (-1, 8)),
        _t("L_AiB_FprimeF", 2, "L_AiB", ("Fp", "F"), (1, 4)),
        _t("L_BB_FprimeFprime", 2, "L_BB", ("Fp", "Fp"), (1, 16)),
        _t("AiAiBB_FF", 2, "AiAiBB", ("F", "F"), (-1, 8)),
        _t("K_L_FprimeF", 2, "KL", ("Fp", "F"), (1, 1)),
        _t("B2B2_FprimeFprime", 2, "B2B2", ("Fp", "Fp"), (-1, 128)),
    ),
}

_MEAN_CORRECTION_NAMES = ("L_diag_Fprime", "AiB_F", "B2_Fprime")


def _slot(F, which):
    if which == "F":
        return F
    if which == "Fp":
        return F.derivative
    if which == "F2":
        return lambda x: F(x) ** 2
    if which == "FFp":
        return lambda x: F(x) * F.derivative(x)
    raise ValueError(f"unknown slot {which!r}")


def _k_diag(x):
    a, p = airy_ai(x), airy_ai_prime(x)
    return p * p - x * a * a


def _l_diag_vec(x):
    # L(x, x) for a vector of x without forming the full matrix
    from .kernel import _t_rule, _AIRY_DECAY_CUT

    t, w = _t_rule(max(1.0, _AIRY_DECAY_CUT - x.min()))
    return -np.sum(airy_ai(x[:, None] + t) * b_function(x[:, None] + t) * w, axis=1)


_ONE_D_KERNELS = {
    "K_diag": _k_diag,
    "L_diag": _l_diag_vec,
    "AiB": lambda x: airy_ai(x) * b_function(x),
    "B2": lambda x: b_function(x) ** 2,
}


class _FactorCache:
    """Shared per-node-set factor values for the smooth 2D kernels."""

    def __init__(self, x):
        self.x = x
        self.ai = airy_ai(x)
        self.b = b_function(x)
        self._k = None
        self._lm = None

    @property
    def kmat(self):
        if self._k is None:
            self._k = airy_kernel_grid(self.x, self.x)
        return self._k

    @property
    def lmat(self):
        if self._lm is None:
            self._lm = l_matrix(self.x, self.x)
        return self._lm


def _two_d_matrix(kern, c):
    if kern == "K2":
        return c.kmat ** 2
    if kern == "KL":
        return c.kmat * c.lmat
    if kern == "K_AiB":
        return c.kmat * (c.ai[:, None] * c.b[None, :])
    if kern == "K_BB":
        return c.kmat * (c.b[:, None] * c.b[None, :])
    if kern == "LLt":
        return c.lmat * c.lmat.T
    if kern == "L_AiB":
        return c.lmat * (c.b[:, None] * c.ai[None, :])
    if kern == "L_BB":
        return c.lmat * (c.b[:, None] * c.b[None, :])
    if kern == "AiAiBB":
        ab = c.ai * c.b
        return ab[:, None] * ab[None, :]
    if kern == "AiB_B2":
        return (c.ai * c.b)[:, None] * (c.b ** 2)[None, :]
    if kern == "B2B2":
        return (c.b ** 2)[:, None] * (c.b ** 2)[None, :]
    raise ValueError(f"unknown 2D kernel {kern!r}")


def _window(F):
    lo, hi = F.effective_support
    return lo - 0.5, hi + 0.5


def _eval_1d(term, F, window, spec):
    lo, hi = window
    s = _slot(F, term.slots[0])
    kern = _ONE_D_KERNELS[term.kernel]
    prev = None
    for width in (1.0, 0.5, 0.25, 0.125, 0.0625):
        n = max(2, int(math.ceil((hi - lo) / width)))
        x, w = panel_rule(lo, hi, n, spec.nodes_per_panel)
        cur = float(np.sum(kern(x) * s(x) * w))
        if prev is not None:
            err = abs(cur - prev)
            if err <= max(spec.abs_tol, spec.rel_tol * abs(cur)):
                return cur, err
        prev = cur
    raise quad.QuadratureError(f"term {term.name} did not converge", prev, n)


def _eval_sign_2d(term, F, window, spec):
    lo, hi = window
    s1 = _slot(F, term.slots[0])
    s2 = _slot(F, term.slots[1])
    if term.kernel == "sign_K":
        f = lambda x, y: airy_kernel(x, y) * s1(x) * s2(y)
    else:
        f = lambda x, y: airy_ai(y) * b_function(x) * s1(x) * s2(y)
    sub = QuadratureSpec(
        nodes_per_panel=spec.nodes_per_panel,
        abs_tol=spec.abs_tol,
        rel_tol=spec.rel_tol,
        left_cut=lo,
        right_cut=hi,
    )
    r = quad.sign_weighted_2d(f, sub)
    return r.value, r.err_estimate


def _eval_smooth_2d_group(terms, F, window, spec):
    """Refine all smooth 2D terms on one shared node ladder."""
    lo, hi = window
    out = {}
    prev = {}
    pending = list(terms)
    for width in (1.0, 0.5, 0.25, 0.125):
        if not pending:
            break
        n = max(2, int(math.ceil((hi - lo) / width)))
        x, w = panel_rule(lo, hi, n, spec.nodes_per_panel)
        cache = _FactorCache(x)
        slot_vals = {s: _slot(F, s)(x) for s in {s for t in pending for s in t.slots}}
        still = []
        for term in pending:
            mat = _two_d_matrix(term.kernel, cache)
            cur = float((w * slot_vals[term.slots[0]]) @ mat @ (w * slot_vals[term.slots[1]]))
            if term.name in prev:
                err = abs(cur - prev[term.name])
                if err <= max(spec.abs_tol, spec.rel_tol * abs(cur)):
                    out[term.name] = (cur, err)
                    continue
            prev[term.name] = cur
            still.append(term)
        pending = still
    if pending:
        raise quad.QuadratureError(
            f"terms did not converge: {[t.name for t in pending]}",
            prev[pending[0].name],
            n,
        )
    return out


def _eval_catalog(terms, F, spec):
    window = _window(F)
    values = {}
    errors = {}
    smooth2d = [t for t in terms if t.dimension == 2 and not t.kernel.startswith("sign")]
    for term in terms:
        if term.dimension == 1:
            values[term.name], errors[term.name] = _eval_1d(term, F, window, spec)
        elif term.kernel.startswith("sign"):
            values[term.name], errors[term.name] = _eval_sign_2d(term, F, window, spec)
    for name, (v, e) in _eval_smooth_2d_group(smooth2d, F, window, spec).items():
        values[name], errors[name] = v, e
    total = 0.0
    err = 0.0
    weighted = {}
    for term in terms:
        c = float(term.coefficient)
        weighted[term.name] = c * values[term.name]
        total += c * values[term.name]
        err += abs(c) * errors[term.name]
    return total, weighted, err


def moment_formulas(kind, F, spec=DEFAULT_SPEC):
    """Mean, variance, and the per-term breakdown for one ensemble."""
    beta = kind.beta
    mean, mvals, merr = _eval_catalog(MEAN_TERMS[beta], F, spec)
    var, vvals, verr = _eval_catalog(VARIANCE_TERMS[beta], F, spec)
    per_term = {f"mean.{k}": v for k, v in mvals.items()}
    per_term.update({f"var.{k}": v for k, v in vvals.items()})
    return MomentFormulaResult(mean, var, per_term, merr + verr)


def mean_asymptotic(kind, F, spec=DEFAULT_SPEC):
    """Limiting mean of the edge-scaled linear statistic."""
    total, _, _ = _eval_catalog(MEAN_TERMS[kind.beta], F, spec)
    return total


def variance_asymptotic(kind, F, spec=DEFAULT_SPEC):
    """Limiting variance of the edge-scaled linear statistic."""
    total, _, _ = _eval_catalog(VARIANCE_TERMS[kind.beta], F, spec)
    return total


def mgf_log_asymptotic(kind, F, lam, spec=DEFAULT_SPEC):
    """Quadratic cumulant truncation -lam*mean + lam^2/2 * variance."""
    if abs(lam) * F.sup_norm > 5.0:
        raise ValueError(
            "lambda * sup|F| exceeds 5; outside the quadratic-truncation regime"
        )
    if lam == 0.0:
        return 0.0
    return -lam * mean_asymptotic(kind, F, spec) + 0.5 * lam * lam * variance_asymptotic(
        kind, F, spec
    )


def correction_terms(kind, F, spec=DEFAULT_SPEC):
    """Named correction integrals beyond the unitary formulas (beta 1, 4).

    Values are coefficient-weighted so symmetry-class relations (each
    orthogonal correction doubling its symplectic partner) can be checked
    term by term.
    """
    if kind.beta == 2:
        raise ValueError("correction terms exist for beta = 1 and 4 only")
    out = {}
    window = _window(F)
    for term in MEAN_TERMS[kind.beta]:
        if term.name == "K_F":
            continue
        raw, _ = _eval_1d(term, F, window, spec)
        out[term.name] = float(term.coefficient) * raw
    var_terms = [t for t in VARIANCE_TERMS[kind.beta] if t.name not in ("K_F2", "K2_FF")]
    smooth2d = [t for t in var_terms if t.dimension == 2 and not t.kernel.startswith("sign")]
    group = _eval_smooth_2d_group(smooth2d, F, window, spec)
    for term in var_terms:
        if term.dimension == 1:
            raw, _ = _eval_1d(term, F, window, spec)
        elif term.kernel.startswith("sign"):
            raw, _ = _eval_sign_2d(term, F, window, spec)
        else:
            raw = group[term.name][0]
        out["var." + term.name] = float(term.coefficient) * raw
    return out
