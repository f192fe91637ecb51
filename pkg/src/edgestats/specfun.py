"""Airy function family and derived scalar functions.

Everything downstream (kernels, asymptotic moment formulas, Fredholm
determinants) is built on Ai, Ai', the primitive AI(x) = int_{-inf}^x Ai,
and the odd-normalized primitive B(x) = 2*AI(x) - 1.

Evaluation strategy for Ai/Ai':

* Maclaurin series on the central band [-8, 4.75] (no cancellation risk).
* Oscillatory asymptotic expansion for x <= -8.
* Exponential asymptotic expansion for x >= 12.
* A precomputed Taylor ladder on (4.75, 12), marched backward from an
  asymptotic anchor at x = 12 using y'' = x*y.  Backward marching is the
  stable direction for the recessive solution, and neither the Maclaurin
  series (cancellation ~ e^{2*zeta}) nor the asymptotic series (truncation
  ~ e^{-2*zeta}) can hold 1e-12 absolute error inside this window.

All functions accept scalars or ndarrays and are pure.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "airy_ai",
    "airy_ai_prime",
    "airy_primitive",
    "b_function",
    "log_gamma",
]

# Ai(0) = 3^(-2/3)/Gamma(2/3), Ai'(0) = -3^(-1/3)/Gamma(1/3)
_AI0 = 0.35502805388781723926
_AIP0 = -0.25881940379280679840

# branch boundaries
_X_NEG_ASY = -8.0
_X_MACLAURIN_LO = -4.5
_X_MACLAURIN_HI = 4.75
_X_POS_ASY = 12.0

_SQRT_PI = math.sqrt(math.pi)


def _maclaurin(x):
    """Ai and Ai' from the power series around 0 (band |x| <= 8)."""
    x = np.asarray(x, dtype=float)
    x3 = x * x * x
    f = np.ones_like(x)
    g = x.copy()
    fp = x * x / 2.0
    gp = np.ones_like(x)
    tf = np.ones_like(x)
    tg = x.copy()
    tfp = x * x / 2.0
    tgp = np.ones_like(x)
    for k in range(48):
        tf = tf * x3 / ((3 * k + 2) * (3 * k + 3))
        tg = tg * x3 / ((3 * k + 3) * (3 * k + 4))
        tfp = tfp * x3 / ((3 * k + 3) * (3 * k + 5))
        tgp = tgp * x3 / ((3 * k + 1) * (3 * k + 3))
        f += tf
        g += tg
        fp += tfp
        gp += tgp
    c1, c2 = _AI0, -_AIP0
    return c1 * f - c2 * g, c1 * fp - c2 * gp


def _asy_coeffs(n):
    """u_k, v_k coefficients of the large-|x| expansions."""
    u = np.empty(n)
    v = np.empty(n)
    u[0] = 1.0
    v[0] = 1.0
    for k in range(n - 1):
        u[k + 1] = u[k] * (6 * k + 1) * (6 * k + 5) / (72.0 * (k + 1))
        v[k + 1] = u[k + 1] * (6 * (k + 1) + 1) / (1.0 - 6 * (k + 1))
    return u, v


_UK, _VK = _asy_coeffs(28)


def _asy_pos(x):
    """Exponentially decaying branch, x >= 12."""
    x = np.asarray(x, dtype=float)
    zeta = (2.0 / 3.0) * x ** 1.5
    su = np.zeros_like(x)
    sv = np.zeros_like(x)
    with np.errstate(under="ignore"):
        zinv = 1.0 / zeta
        term = np.ones_like(x)
        for k in range(22):
            sgn = 1.0 if k % 2 == 0 else -1.0
            su += sgn * _UK[k] * term
            sv += sgn * _VK[k] * term
            term = term * zinv
        pref = np.exp(-zeta) / (2.0 * _SQRT_PI)
        ai = pref * su / x ** 0.25
        aip = -pref * sv * x ** 0.25
    return ai, aip


def _asy_neg(x):
    """Oscillatory branch, x <= -8."""
    s = -np.asarray(x, dtype=float)
    zeta = (2.0 / 3.0) * s ** 1.5
    theta = zeta - 0.25 * math.pi
    zinv2 = 1.0 / (zeta * zeta)
    even_u = np.zeros_like(s)
    odd_u = np.zeros_like(s)
    even_v = np.zeros_like(s)
    odd_v = np.zeros_like(s)
    term = np.ones_like(s)
    for k in range(13):
        sgn = 1.0 if k % 2 == 0 else -1.0
        even_u += sgn * _UK[2 * k] * term
        even_v += sgn * _VK[2 * k] * term
        odd_u += sgn * _UK[2 * k + 1] * term / zeta
        odd_v += sgn * _VK[2 * k + 1] * term / zeta
        term = term * zinv2
    c, sn = np.cos(theta), np.sin(theta)
    ai = (c * even_u + sn * odd_u) / (_SQRT_PI * s ** 0.25)
    aip = (sn * even_v - c * odd_v) * s ** 0.25 / _SQRT_PI
    return ai, aip


class _TaylorLadder:
    """Taylor models of Ai on a band, marched step by step from an anchor.

    On the exponential side the march runs backward from the asymptotic
    anchor (stable direction for the recessive solution); on the
    oscillatory side both solutions are bounded and either direction works.
    """

    ORDER = 26

    def __init__(self, anchor, stop, step, anchor_vals):
        self.centers = np.arange(anchor, stop + 0.5 * step, step)
        self.step = step
        ncen = len(self.centers)
        self.coeffs = np.empty((ncen, self.ORDER))
        y, yp = anchor_vals
        for i, c in enumerate(self.centers):
            a = self._taylor_at(c, y, yp)
            self.coeffs[i] = a
            if i + 1 < ncen:
                h = self.centers[i + 1] - c
                y = self._polyval(a, h)
                yp = self._polyval_deriv(a, h)

    @staticmethod
    def _taylor_at(c, y, yp):
        a = np.zeros(_TaylorLadder.ORDER)
        a[0], a[1] = y, yp
        for m in range(_TaylorLadder.ORDER - 2):
            prev = a[m - 1] if m >= 1 else 0.0
            a[m + 2] = (c * a[m] + prev) / ((m + 2) * (m + 1))
        return a

    @staticmethod
    def _polyval(a, h):
        r = 0.0
        for coef in a[::-1]:
            r = r * h + coef
        return r

    @staticmethod
    def _polyval_deriv(a, h):
        r = 0.0
        for m in range(len(a) - 1, 0, -1):
            r = r * h + m * a[m]
        return r

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.clip(
            np.rint((x - self.centers[0]) / self.step).astype(int),
            0,
            len(self.centers) - 1,
        )
        h = x - self.centers[idx]
        coef = self.coeffs[idx]
        ai = np.zeros_like(x)
        aip = np.zeros_like(x)
        for m in range(self.ORDER - 1, -1, -1):
            ai = ai * h + coef[:, m]
        for m in range(self.ORDER - 1, 0, -1):
            aip = aip * h + m * coef[:, m]
        return ai, aip


_ladder_pos = None
_ladder_neg = None


def _get_ladder_pos():
    global _ladder_pos
    if _ladder_pos is None:
        anchor = _asy_pos(np.array([_X_POS_ASY]))
        _ladder_pos = _TaylorLadder(
            _X_POS_ASY, _X_MACLAURIN_HI, -0.25, (float(anchor[0][0]), float(anchor[1][0]))
        )
    return _ladder_pos


def _get_ladder_neg():
    global _ladder_neg
    if _ladder_neg is None:
        anchor = _asy_neg(np.array([_X_NEG_ASY]))
        _ladder_neg = _TaylorLadder(
            _X_NEG_ASY, _X_MACLAURIN_LO, 0.25, (float(anchor[0][0]), float(anchor[1][0]))
        )
    return _ladder_neg


def _ai_aip(x):
    x = np.asarray(x, dtype=float)
    ai = np.empty_like(x)
    aip = np.empty_like(x)
    mneg = x < _X_NEG_ASY
    mlneg = (x >= _X_NEG_ASY) & (x < _X_MACLAURIN_LO)
    mmac = (x >= _X_MACLAURIN_LO) & (x <= _X_MACLAURIN_HI)
    mlad = (x > _X_MACLAURIN_HI) & (x < _X_POS_ASY)
    mpos = x >= _X_POS_ASY
    if mneg.any():
        ai[mneg], aip[mneg] = _asy_neg(x[mneg])
    if mlneg.any():
        ai[mlneg], aip[mlneg] = _get_ladder_neg().eval(x[mlneg])
    if mmac.any():
        ai[mmac], aip[mmac] = _maclaurin(x[mmac])
    if mlad.any():
        ai[mlad], aip[mlad] = _get_ladder_pos().eval(x[mlad])
    if mpos.any():
        ai[mpos], aip[mpos] = _asy_pos(x[mpos])
    return ai, aip


def _wrap_scalar(x, values):
    if np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0):
        return float(values)
    return values


def airy_ai(x):
    """Airy function Ai(x), the decaying solution of y'' = x*y."""
    arr = np.asarray(x, dtype=float)
    ai, _ = _ai_aip(np.atleast_1d(arr))
    return _wrap_scalar(x, ai.reshape(arr.shape) if arr.ndim else ai[0])


def airy_ai_prime(x):
    """Derivative Ai'(x)."""
    arr = np.asarray(x, dtype=float)
    _, aip = _ai_aip(np.atleast_1d(arr))
    return _wrap_scalar(x, aip.reshape(arr.shape) if arr.ndim else aip[0])


# ---------------------------------------------------------------------------
# primitive AI(x) = int_{-inf}^x Ai(t) dt and B(x) = 2*AI(x) - 1
# ---------------------------------------------------------------------------

_PRIM_LO = -45.0
_PRIM_HI = 14.0
_PRIM_WIDTH = 0.25
_GL16 = np.polynomial.legendre.leggauss(16)


class _PrimitiveTable:
    """Per-panel Chebyshev antiderivatives of Ai anchored at AI(0) = 2/3.

    Each 0.25-wide panel stores the Chebyshev expansion of the running
    integral of Ai from the panel's left edge, so a point evaluation is a
    table lookup plus one Clenshaw recurrence (machine accurate; degree 16
    comfortably resolves Ai on panels this narrow over the whole table).
    """

    DEGREE = 16

    def __init__(self):
        nlo = int(round(-_PRIM_LO / _PRIM_WIDTH))
        nhi = int(round(_PRIM_HI / _PRIM_WIDTH))
        self.edges = np.concatenate(
            [np.linspace(_PRIM_LO, 0.0, nlo + 1), np.linspace(0.0, _PRIM_HI, nhi + 1)[1:]]
        )
        npan = len(self.edges) - 1
        mid = 0.5 * (self.edges[1:] + self.edges[:-1])
        half = 0.5 * (self.edges[1:] - self.edges[:-1])
        # Chebyshev points per panel
        k = np.arange(self.DEGREE + 1)
        tcheb = -np.cos(np.pi * k / self.DEGREE)
        nodes = mid[:, None] + half[:, None] * tcheb[None, :]
        vals = airy_ai(nodes)
        self.int_coef = np.empty((npan, self.DEGREE + 2))
        panel_totals = np.empty(npan)
        for i in range(npan):
            c = np.polynomial.chebyshev.chebfit(tcheb, vals[i], self.DEGREE)
            ci = np.polynomial.chebyshev.chebint(c, lbnd=-1.0, scl=half[i])
            self.int_coef[i] = ci
            panel_totals[i] = np.polynomial.chebyshev.chebval(1.0, ci)
        csum = np.concatenate([[0.0], np.cumsum(panel_totals)])
        self.cum_from_zero = csum - csum[nlo]
        self.mid = mid
        self.half = half

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.clip(
            np.searchsorted(self.edges, x, side="right") - 1, 0, len(self.edges) - 2
        )
        t = (x - self.mid[idx]) / self.half[idx]
        coef = self.int_coef[idx]
        # vectorized Clenshaw over per-point coefficient rows
        b0 = np.zeros_like(t)
        b1 = np.zeros_like(t)
        for m in range(coef.shape[-1] - 1, 0, -1):
            b0, b1 = coef[..., m] + 2.0 * t * b0 - b1, b0
        part = coef[..., 0] + t * b0 - b1
        return 2.0 / 3.0 + self.cum_from_zero[idx] + part


_prim_table = None


def _get_prim_table():
    global _prim_table
    if _prim_table is None:
        _prim_table = _PrimitiveTable()
    return _prim_table


def _primitive_asy_neg(x):
    """AI(x) for x <= -45 by repeated integration by parts of the tail."""
    s = -np.asarray(x, dtype=float)
    zeta = (2.0 / 3.0) * s ** 1.5
    # AI(-s) = sqrt(2/3)/sqrt(pi) * int_zeta^inf t^{-1/2}
    #          [cos(t - pi/4) A(t) + sin(t - pi/4) Bo(t)] dt
    # with A, Bo the even/odd u-coefficient sums; expand by parts in 1/zeta.
    cs = np.cos(zeta - 0.25 * math.pi)
    sn = np.sin(zeta - 0.25 * math.pi)
    # coefficient arrays of cos/sin prefactors in powers of 1/zeta
    depth = 8
    ccoef = np.zeros(depth + 1)
    scoef = np.zeros(depth + 1)
    # amplitude series a(t) = A(t) t^{-1/2}, b(t) = Bo(t) t^{-1/2}
    a = np.zeros(depth + 1)
    b = np.zeros(depth + 1)
    for k in range(0, (depth + 1) // 2):
        sgn = 1.0 if k % 2 == 0 else -1.0
        if 2 * k <= depth:
            a[2 * k] = sgn * _UK[2 * k]
        if 2 * k + 1 <= depth:
            b[2 * k + 1] = sgn * _UK[2 * k + 1]
    # int t^{-1/2-m} cos(t-pi/4): by parts ->  -sin at lower limit, etc.
    # Work with formal series: I_c[p] = int_Z^inf t^{-p} cos(t - pi/4) dt
    #   = -Z^{-p} sin(Z - pi/4) + p * I_s[p+1]
    # I_s[p] = int_Z^inf t^{-p} sin(t - pi/4) dt
    #   =  Z^{-p} cos(Z - pi/4) - p * I_c[p+1]
    # Accumulate cos/sin coefficients of Z^{-p - j}.
    for m in range(depth + 1):
        if a[m] == 0.0 and b[m] == 0.0:
            continue
        p0 = 0.5 + m
        amp_c, amp_s = a[m], b[m]
        # expand I_c (weight amp_c) and I_s (weight amp_s) to remaining depth
        wc, ws = amp_c, amp_s
        p = p0
        for j in range(depth + 1 - m):
            idx = m + j
            if idx > depth:
                break
            # I_c contributes -sin * Z^{-p}; I_s contributes +cos * Z^{-p}
            scoef[idx] += -wc
            ccoef[idx] += ws
            wc, ws = -p * ws, p * wc
            p += 1.0
    zi = 1.0 / zeta
    pc = np.zeros_like(s)
    ps = np.zeros_like(s)
    zp = np.ones_like(s) * zi ** 0.5
    for j in range(depth + 1):
        pc += ccoef[j] * zp
        ps += scoef[j] * zp
        zp = zp * zi
    return math.sqrt(2.0 / 3.0) / _SQRT_PI * (cs * pc + sn * ps)


def airy_primitive(x):
    """AI(x) = int_{-inf}^x Ai(t) dt.

    Anchored at the exact values AI(0) = 2/3 and AI(+inf) = 1; panel
    quadrature on [-45, 14], tail asymptotics outside.
    """
    arr = np.asarray(x, dtype=float)
    flat = np.atleast_1d(arr).astype(float)
    out = np.empty_like(flat)
    mlo = flat < _PRIM_LO
    mhi = flat >= _PRIM_HI
    mmid = ~(mlo | mhi)
    if mmid.any():
        out[mmid] = _get_prim_table().eval(flat[mmid])
    if mlo.any():
        out[mlo] = _primitive_asy_neg(flat[mlo])
    if mhi.any():
        out[mhi] = 1.0
    return _wrap_scalar(x, out.reshape(arr.shape) if arr.ndim else out[0])


def b_function(x):
    """B(x) = int_{-inf}^x Ai - int_x^inf Ai = 2*AI(x) - 1."""
    return 2.0 * airy_primitive(x) - 1.0


def log_gamma(x):
    """log Gamma(x) for x > 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("log_gamma requires x > 0")
    from scipy.special import gammaln

    out = gammaln(arr)
    return _wrap_scalar(x, out if arr.ndim else float(out))
