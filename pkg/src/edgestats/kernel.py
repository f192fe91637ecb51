"""Airy kernel, its antisymmetric transform, and finite-size kernels.

Finite-size objects are built from orthonormal Hermite and Laguerre
wavefunctions evaluated by three-term recurrences that carry a separate
floating-point mantissa and a log-scale, so sizes up to ~10^6 work
without overflow even deep under the weight's exponential envelope.

The Airy kernel near the diagonal switches to a second-order expansion in
s = (x - y)/2 about the midpoint, where the ratio form loses digits:

    K(m+s, m-s) = Ai'(m)^2 - m Ai(m)^2
                  + s^2 [Ai(m)Ai'(m) + 2m Ai'(m)^2 - 2m^2 Ai(m)^2] / 3 + O(s^4)

Finite-size kernels use the confluent (derivative) form at the midpoint
inside the same band; the neglected O(s^2) term is below 1e-8 there for
every size this library targets.
"""

from __future__ import annotations

import math

import numpy as np

from .ensembles import GAUSSIAN, LAGUERRE, EnsembleKind
from .quad import QuadratureError, panel_rule
from .specfun import airy_ai, airy_ai_prime, b_function, log_gamma

__all__ = [
    "airy_kernel",
    "airy_kernel_factorized",
    "l_function",
    "l_matrix",
    "airy_kernel_matrix",
    "eps_transform",
    "phi_hermite",
    "phi_laguerre",
    "cd_kernel_hermite",
    "cd_kernel_laguerre",
    "hermite_cd_direct_sum",
    "laguerre_cd_direct_sum",
    "s_kernel_lse",
    "s_kernel_loe",
    "scaled_edge_kernel",
    "edge_wavefunction_limit",
]

_DIAG_BAND = 1e-4
_AIRY_DECAY_CUT = 13.0  # Ai(x) < 1e-17 beyond this
_T_PANEL = 0.25


# ---------------------------------------------------------------------------
# Airy kernel and friends
# ---------------------------------------------------------------------------


def airy_kernel(x, y):
    """K(x, y) = [Ai(x)Ai'(y) - Ai(y)Ai'(x)] / (x - y), symmetric."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    shape = x.shape
    x = np.atleast_1d(x).ravel()
    y = np.atleast_1d(y).ravel()
    out = np.empty_like(x)
    near = np.abs(x - y) < _DIAG_BAND
    far = ~near
    if far.any():
        ax, apx = airy_ai(x[far]), airy_ai_prime(x[far])
        ay, apy = airy_ai(y[far]), airy_ai_prime(y[far])
        out[far] = (ax * apy - ay * apx) / (x[far] - y[far])
    if near.any():
        m = 0.5 * (x[near] + y[near])
        s = 0.5 * (x[near] - y[near])
        a, p = airy_ai(m), airy_ai_prime(m)
        out[near] = (p * p - m * a * a) + s * s * (
            a * p + 2.0 * m * p * p - 2.0 * m * m * a * a
        ) / 3.0
    out = out.reshape(shape)
    return float(out) if out.ndim == 0 else out


def _t_rule(t_max):
    n_panels = max(4, int(math.ceil(t_max / _T_PANEL)))
    return panel_rule(0.0, t_max, n_panels, 16)


def airy_kernel_factorized(x, y, tol=1e-10):
    """K(x, y) as the absolutely convergent integral of Ai(x+t)Ai(y+t)."""
    x = float(x)
    y = float(y)
    t_max = max(1.0, _AIRY_DECAY_CUT - min(x, y))
    prev = None
    n16 = 16
    for n16 in (16, 32):
        t, w = panel_rule(0.0, t_max, max(4, int(math.ceil(t_max / _T_PANEL))) * (n16 // 16), 16)
        cur = float(np.sum(airy_ai(x + t) * airy_ai(y + t) * w))
        if prev is not None and abs(cur - prev) <= tol:
            return cur
        prev = cur
    raise QuadratureError("factorized Airy kernel did not converge", prev, n16)


def airy_kernel_matrix(xs, ys):
    """K on the grid xs x ys via the factorized form (one BLAS product)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    t_max = max(1.0, _AIRY_DECAY_CUT - min(xs.min(), ys.min()))
    t, w = _t_rule(t_max)
    ax = airy_ai(xs[:, None] + t[None, :])
    ay = airy_ai(ys[:, None] + t[None, :]) * w[None, :]
    return ax @ ay.T


def airy_kernel_grid(xs, ys):
    """K on the tensor grid xs x ys from per-axis Ai values (exact route).

    The ratio form only needs Ai and Ai' along each axis; coincident or
    nearly coincident pairs fall back to the midpoint expansion.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    ax, apx = airy_ai(xs), airy_ai_prime(xs)
    ay, apy = airy_ai(ys), airy_ai_prime(ys)
    diff = xs[:, None] - ys[None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        out = (ax[:, None] * apy[None, :] - ay[None, :] * apx[:, None]) / diff
    near = np.abs(diff) < _DIAG_BAND
    if near.any():
        i, j = np.nonzero(near)
        m = 0.5 * (xs[i] + ys[j])
        s = 0.5 * (xs[i] - ys[j])
        a, p = airy_ai(m), airy_ai_prime(m)
        out[i, j] = (p * p - m * a * a) + s * s * (
            a * p + 2.0 * m * p * p - 2.0 * m * m * a * a
        ) / 3.0
    return out


def l_function(x, y, tol=1e-10):
    """L(x, y), the signed half-line integrals of K(y, .) about x.

    Computed through the absolutely convergent route
    L(x, y) = -int_0^inf Ai(y+t) B(x+t) dt, which follows by inserting the
    factorized kernel into the defining (conditionally convergent)
    integrals and swapping the order.
    """
    x = float(x)
    y = float(y)
    t_max = max(1.0, _AIRY_DECAY_CUT - y)
    prev = None
    for mult in (1, 2):
        t, w = panel_rule(0.0, t_max, max(4, int(math.ceil(t_max / _T_PANEL))) * mult, 16)
        cur = -float(np.sum(airy_ai(y + t) * b_function(x + t) * w))
        if prev is not None and abs(cur - prev) <= tol:
            return cur
        prev = cur
    raise QuadratureError("L(x, y) quadrature did not converge", prev, mult)


def l_matrix(xs, ys):
    """L on the grid xs x ys (rows: x, cols: y) via one BLAS product."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    t_max = max(1.0, _AIRY_DECAY_CUT - ys.min())
    t, w = _t_rule(t_max)
    bx = b_function(xs[:, None] + t[None, :]) * w[None, :]
    ay = airy_ai(ys[:, None] + t[None, :])
    return -(bx @ ay.T)


def eps_transform(phi, x, support, max_panel=0.25):
    """(eps phi)(x) = (int_{-inf}^x phi - int_x^inf phi) / 2.

    phi must be vectorized and negligible outside `support`.
    """
    lo, hi = support
    x = float(x)
    xl = min(max(x, lo), hi)

    def _int(a, b, mult):
        if b <= a:
            return 0.0
        n = max(1, int(math.ceil((b - a) / max_panel))) * mult
        t, w = panel_rule(a, b, n, 16)
        return float(np.sum(phi(t) * w))

    prev = None
    for mult in (1, 2):
        left = _int(lo, xl, mult)
        right = _int(xl, hi, mult)
        cur = 0.5 * (left - right)
        if prev is not None and abs(cur - prev) <= 1e-9 + 1e-9 * abs(cur):
            return cur
        prev = cur
    raise QuadratureError("eps transform quadrature did not converge", prev, mult)


# ---------------------------------------------------------------------------
# scaled wavefunction recurrences
# ---------------------------------------------------------------------------

_RESCALE_HI = 1e120
_RESCALE_LO = 1e-120


def _rescale(m0, m1, logs):
    mag = np.maximum(np.abs(m0), np.abs(m1))
    bad = (mag > _RESCALE_HI) | ((mag > 0.0) & (mag < _RESCALE_LO))
    if bad.any():
        f = np.where(bad, mag, 1.0)
        m0 = m0 / f
        m1 = m1 / f
        logs = logs + np.where(bad, np.log(f), 0.0)
    return m0, m1, logs


def _hermite_state(n, x):
    """Mantissa/log-scale state (phi_{n-1}, phi_n, logs) for n >= 1."""
    x = np.asarray(x, dtype=float)
    logs = -0.5 * x * x
    m0 = np.full_like(x, math.pi ** -0.25)
    m1 = math.sqrt(2.0) * x * m0
    for j in range(1, n):
        m2 = x * math.sqrt(2.0 / (j + 1)) * m1 - math.sqrt(j / (j + 1.0)) * m0
        m0, m1 = m1, m2
        m0, m1, logs = _rescale(m0, m1, logs)
    return m0, m1, logs


def phi_hermite(j, x):
    """Orthonormal Hermite wavefunction H_j(x) e^{-x^2/2} / (pi^{1/4} 2^{j/2} sqrt(j!))."""
    if j < 0 or j > 10 ** 6:
        raise ValueError("j must be in [0, 1e6]")
    x = np.asarray(x, dtype=float)
    if j == 0:
        out = math.pi ** -0.25 * np.exp(-0.5 * x * x)
        return float(out) if out.ndim == 0 else out
    m0, m1, logs = _hermite_state(j, np.atleast_1d(x))
    out = m1 * np.exp(logs)
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(x.shape)


def _hermite_pair(n, x):
    """(phi_{n-1}, phi_n) as true floats (n >= 1)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    m0, m1, logs = _hermite_state(n, x)
    e = np.exp(logs)
    return m0 * e, m1 * e


def _laguerre_state(n, a, x):
    x = np.asarray(x, dtype=float)
    logs = 0.5 * a * np.log(x) - 0.5 * x - 0.5 * log_gamma(a + 1.0)
    m0 = np.ones_like(x)
    m1 = (a + 1.0 - x) / math.sqrt(a + 1.0) * m0
    for j in range(1, n):
        c = 2.0 * j + a + 1.0 - x
        m2 = (c * m1 - math.sqrt(j * (j + a)) * m0) / math.sqrt((j + 1.0) * (j + 1.0 + a))
        m0, m1 = m1, m2
        m0, m1, logs = _rescale(m0, m1, logs)
    return m0, m1, logs


def phi_laguerre(j, alpha, x):
    """Orthonormal Laguerre wavefunction sqrt(j!/Gamma(j+a+1)) L_j^(a)(x) x^{a/2} e^{-x/2}."""
    if j < 0 or j > 10 ** 6:
        raise ValueError("j must be in [0, 1e6]")
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("Laguerre wavefunctions need x > 0")
    xa = np.atleast_1d(x)
    if j == 0:
        out = np.exp(0.5 * alpha * np.log(xa) - 0.5 * xa - 0.5 * log_gamma(alpha + 1.0))
    else:
        m0, m1, logs = _laguerre_state(j, alpha, xa)
        out = m1 * np.exp(logs)
    return float(out[0]) if np.ndim(x) == 0 else out.reshape(x.shape)


def _laguerre_pair(n, a, x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    m0, m1, logs = _laguerre_state(n, a, x)
    e = np.exp(logs)
    return m0 * e, m1 * e


def hermite_cd_direct_sum(n, x, y):
    """sum_{j<n} phi_j(x) phi_j(y) by explicit summation (oracle path)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    sx = _hermite_state(1, np.atleast_1d(x))
    sy = _hermite_state(1, np.atleast_1d(y))
    mx0, mx1, lx = sx
    my0, my1, ly = sy
    xa = np.atleast_1d(x)
    ya = np.atleast_1d(y)
    total = mx0 * my0 * np.exp(lx + ly)
    for j in range(1, n):
        total = total + mx1 * my1 * np.exp(lx + ly)
        nx = xa * math.sqrt(2.0 / (j + 1)) * mx1 - math.sqrt(j / (j + 1.0)) * mx0
        ny = ya * math.sqrt(2.0 / (j + 1)) * my1 - math.sqrt(j / (j + 1.0)) * my0
        mx0, mx1 = mx1, nx
        my0, my1 = my1, ny
        mx0, mx1, lx = _rescale(mx0, mx1, lx)
        my0, my1, ly = _rescale(my0, my1, ly)
    return total if total.ndim else float(total)


def laguerre_cd_direct_sum(n, a, x, y):
    """sum_{j<n} phi_j^(a)(x) phi_j^(a)(y) by explicit summation."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    mx0, mx1, lx = _laguerre_state(1, a, x)
    my0, my1, ly = _laguerre_state(1, a, y)
    total = mx0 * my0 * np.exp(lx + ly)
    for j in range(1, n):
        total = total + mx1 * my1 * np.exp(lx + ly)
        c = 2.0 * j + a + 1.0
        den = math.sqrt((j + 1.0) * (j + 1.0 + a))
        off = math.sqrt(j * (j + a))
        nx = ((c - x) * mx1 - off * mx0) / den
        ny = ((c - y) * my1 - off * my0) / den
        mx0, mx1 = mx1, nx
        my0, my1 = my1, ny
        mx0, mx1, lx = _rescale(mx0, mx1, lx)
        my0, my1, ly = _rescale(my0, my1, ly)
    return total if total.ndim else float(total)


# ---------------------------------------------------------------------------
# Christoffel-Darboux kernels
# ---------------------------------------------------------------------------


def _cd_combine(prefactor, px, py, dpx, dpy, x, y):
    """CD ratio with confluent midpoint fallback near the diagonal.

    px = (phi_{n-1}, phi_n) at x, dpx = derivatives at x, etc.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = np.empty(np.broadcast(x, y).shape)
    xx, yy = np.broadcast_arrays(x, y)
    near = np.abs(xx - yy) < _DIAG_BAND
    num = px[1] * py[0] - py[1] * px[0]
    with np.errstate(invalid="ignore", divide="ignore"):
        out = prefactor * num / (xx - yy)
    if near.any():
        conf = prefactor * (dpx[1] * py[0] - px[1] * dpy[0])
        out = np.where(near, conf, out)
    return out


def cd_kernel_hermite(n, x, y):
    """K_n(x, y) = sum_{j<n} phi_j(x) phi_j(y), Hermite wavefunctions."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    scalar = x.ndim == 0 and y.ndim == 0
    xa = np.atleast_1d(x)
    ya = np.atleast_1d(y)
    xx, yy = np.broadcast_arrays(xa, ya)
    near = np.abs(xx - yy) < _DIAG_BAND
    mid = 0.5 * (xx + yy)
    prefactor = math.sqrt(n / 2.0)
    # far branch: ratio form
    pxm1, pxn = _hermite_pair(n, xx.ravel())
    pym1, pyn = _hermite_pair(n, yy.ravel())
    with np.errstate(invalid="ignore", divide="ignore"):
        far_val = prefactor * (pxn * pym1 - pyn * pxm1) / (xx.ravel() - yy.ravel())
    out = far_val
    if near.any():
        m = mid.ravel()[near.ravel()]
        pm1, pn = _hermite_pair(n, m)
        dpn = math.sqrt(2.0 * n) * pm1 - m * pn
        # phi_{n-2} from the inverted recurrence
        if n >= 2:
            pm2 = (m * math.sqrt(2.0 / n) * pm1 - pn) * math.sqrt(n / (n - 1.0))
            dpm1 = math.sqrt(2.0 * (n - 1)) * pm2 - m * pm1
        else:
            dpm1 = -m * pm1
        conf = prefactor * (dpn * pm1 - pn * dpm1)
        out = out.copy()
        out[near.ravel()] = conf
    out = out.reshape(xx.shape)
    return float(out) if scalar else out


def cd_kernel_laguerre(n, alpha, x, y):
    """Laguerre CD kernel sum_{j<n} phi_j^(a)(x) phi_j^(a)(y)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(np.atleast_1d(x) <= 0) or np.any(np.atleast_1d(y) <= 0):
        raise ValueError("Laguerre kernel needs positive arguments")
    scalar = x.ndim == 0 and y.ndim == 0
    xx, yy = np.broadcast_arrays(np.atleast_1d(x), np.atleast_1d(y))
    near = np.abs(xx - yy) < _DIAG_BAND
    prefactor = -math.sqrt(n * (n + alpha))
    pxm1, pxn = _laguerre_pair(n, alpha, xx.ravel())
    pym1, pyn = _laguerre_pair(n, alpha, yy.ravel())
    with np.errstate(invalid="ignore", divide="ignore"):
        out = prefactor * (pxn * pym1 - pyn * pxm1) / (xx.ravel() - yy.ravel())
    if near.any():
        m = (0.5 * (xx + yy)).ravel()[near.ravel()]
        pm1, pn = _laguerre_pair(n, alpha, m)
        dpn = ((n + 0.5 * alpha) / m - 0.5) * pn - math.sqrt(n * (n + alpha)) / m * pm1
        if n >= 2:
            c = 2.0 * (n - 1.0) + alpha + 1.0 - m
            pm2 = (c * pm1 - math.sqrt(n * (n + alpha)) * pn) / math.sqrt(
                (n - 1.0) * (n - 1.0 + alpha)
            )
            dpm1 = ((n - 1.0 + 0.5 * alpha) / m - 0.5) * pm1 - math.sqrt(
                (n - 1.0) * (n - 1.0 + alpha)
            ) / m * pm2
        else:
            dpm1 = (0.5 * alpha / m - 0.5) * pm1
        conf = prefactor * (dpn * pm1 - pn * dpm1)
        out = out.copy()
        out[near.ravel()] = conf
    out = out.reshape(xx.shape)
    return float(out) if scalar else out


def s_kernel_lse(n, alpha, x, y):
    """S_n(x, y) = sum_{j=0}^{2n} x phi_j^(a-1)(x) phi_j^(a-1)(y).

    The summand wavefunctions carry x^{a/2 - 1} e^{-x/2}; written through
    the orthonormal parameter-(a-1) wavefunctions this is
    sqrt(x/y) * sum_{j<=2n} psi_j(x) psi_j(y), evaluated by direct
    summation (2n + 1 terms).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if alpha <= 0:
        raise ValueError("LSE kernel needs alpha > 0")
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    ya = np.atleast_1d(np.asarray(y, dtype=float))
    if np.any(xa <= 0) or np.any(ya <= 0):
        raise ValueError("LSE kernel needs positive arguments")
    total = laguerre_cd_direct_sum(2 * n + 1, alpha - 1.0, xa, ya)
    out = np.sqrt(xa / ya) * total
    return float(out) if np.ndim(x) == 0 and np.ndim(y) == 0 else out


def s_kernel_loe(n, alpha, x, y):
    """S_n(x, y) = sum_{j=0}^{n-1} x phi_j^(a+1)(x) phi_j^(a+1)(y), n even."""
    if n < 2 or n % 2 != 0:
        raise ValueError("LOE kernel needs even n >= 2")
    if alpha <= -2:
        raise ValueError("LOE kernel needs alpha > -2")
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    ya = np.atleast_1d(np.asarray(y, dtype=float))
    if np.any(xa <= 0) or np.any(ya <= 0):
        raise ValueError("LOE kernel needs positive arguments")
    total = laguerre_cd_direct_sum(n, alpha + 1.0, xa, ya)
    out = np.sqrt(xa / ya) * total
    return float(out) if np.ndim(x) == 0 and np.ndim(y) == 0 else out


# ---------------------------------------------------------------------------
# edge scalings of the finite kernels
# ---------------------------------------------------------------------------


def _kernel_scale(kind, n):
    """(center, argument scale) of the kernel's soft-edge limit."""
    a = kind.alpha
    if kind.family == GAUSSIAN:
        if kind.beta == 4:
            return math.sqrt(4.0 * n), 2.0 ** (-2.0 / 3.0) * n ** (-1.0 / 6.0)
        return math.sqrt(2.0 * n), 2.0 ** (-0.5) * n ** (-1.0 / 6.0)
    if kind.beta == 2:
        return 4.0 * n + 2.0 * a + 2.0, 2.0 ** (4.0 / 3.0) * n ** (1.0 / 3.0)
    if kind.beta == 4:
        return 8.0 * n + 2.0 * a, 2.0 ** (5.0 / 3.0) * n ** (1.0 / 3.0)
    return 4.0 * n + 2.0 * a + 4.0, 2.0 ** (4.0 / 3.0) * n ** (1.0 / 3.0)


def scaled_edge_kernel(kind, n, x, y):
    """Edge-rescaled finite kernel; converges to airy_kernel(x, y).

    GUE/GOE use the size-n unitary Hermite kernel, GSE the size-(2n+1)
    one; Laguerre ensembles use the unitary CD kernel or the summation
    kernels of the symplectic/orthogonal cases.
    """
    center, scale = _kernel_scale(kind, n)
    u = center + scale * np.asarray(x, dtype=float)
    v = center + scale * np.asarray(y, dtype=float)
    if kind.family == LAGUERRE and (np.any(np.atleast_1d(u) <= 0) or np.any(np.atleast_1d(v) <= 0)):
        raise ValueError("scaled window leaves the Laguerre support")
    if kind.family == GAUSSIAN:
        size = 2 * n + 1 if kind.beta == 4 else n
        return scale * cd_kernel_hermite(size, u, v)
    if kind.beta == 2:
        return scale * cd_kernel_laguerre(n, kind.alpha, u, v)
    if kind.beta == 4:
        return scale * s_kernel_lse(n, kind.alpha, u, v)
    return scale * s_kernel_loe(n, kind.alpha, u, v)


# ---------------------------------------------------------------------------
# edge limits of individual wavefunctions and their eps transforms
# ---------------------------------------------------------------------------


def _hermite_total_integral(j):
    """int_R phi_j, zero for odd j, closed form for even j = 2m."""
    if j % 2 == 1:
        return 0.0
    m = j // 2
    # sqrt(2 pi) * sqrt((2m)!) / (m! 2^m pi^(1/4))
    lg = 0.5 * log_gamma(2.0 * m + 1.0) - log_gamma(m + 1.0) - m * math.log(2.0)
    return math.sqrt(2.0 * math.pi) * math.pi ** -0.25 * math.exp(lg)


def _laguerre_total_integral(j, a, s):
    """int_0^inf L_j^(a)(x) x^(s-1) e^(-x/2) dx * norm_j for 2s = a + const.

    Vanishes for odd j when s = (a + 1)/2; even j = 2m gives
    Gamma(s) 2^s (s)_m / m! by the generating function, with the
    orthonormal prefactor sqrt(Gamma(j+1)/Gamma(j+a+1)) applied.
    """
    if j % 2 == 1:
        return 0.0
    m = j // 2
    lg = (
        0.5 * (log_gamma(j + 1.0) - log_gamma(j + a + 1.0))
        + log_gamma(s + m)
        - log_gamma(m + 1.0)
        + s * math.log(2.0)
    )
    return math.exp(lg)


def _eps_hermite_edge(j, u):
    """(eps phi_j)(u) for u near the upper edge, via parity + tail."""
    span = math.sqrt(2.0 * j + 1.0) if j > 0 else 1.0
    hi = span + max(6.0, 10.0 * span ** (-1.0 / 3.0) if span > 1 else 6.0)
    hi = max(hi, u + 1.0)
    phi = lambda t: phi_hermite(j, t)
    tail = _osc_tail_integral(phi, u, hi, span)
    if j % 2 == 1:
        return -tail
    return 0.5 * _hermite_total_integral(j) - tail


def _osc_tail_integral(phi, a, b, local_freq_scale):
    """int_a^b phi with panels resolving sqrt-scale oscillation."""
    width = min(0.25, 2.0 / max(local_freq_scale, 1.0))
    n = max(4, int(math.ceil((b - a) / width)))
    t, w = panel_rule(a, b, n, 16)
    v1 = float(np.sum(phi(t) * w))
    t, w = panel_rule(a, b, 2 * n, 16)
    v2 = float(np.sum(phi(t) * w))
    if abs(v2 - v1) > 1e-8 + 1e-8 * abs(v2):
        raise QuadratureError("oscillatory tail integral did not converge", v2, 2 * n)
    return v2


def _eps_laguerre_edge(j, a, s_exp, x_pow, u, upper):
    """(eps phi)(u) for the LSE/LOE summand wavefunctions near the edge.

    The wavefunction is x^(x_pow) * psi_j^(a)(x) with psi orthonormal;
    its full half-line integral vanishes for odd j and has a closed form
    for even j (generating-function identity), so only the tail beyond u
    needs quadrature.
    """
    phi = lambda t: t ** x_pow * phi_laguerre(j, a, t)
    hi = max(upper, u + 1.0)
    freq = math.sqrt(max(upper, 4.0)) / 2.0
    tail = _osc_tail_integral(phi, u, hi, freq)
    if j % 2 == 1:
        return -tail
    return 0.5 * _laguerre_total_integral(j, a, s_exp) - tail


def edge_wavefunction_limit(kind, which, n, x):
    """Finite-size scaled wavefunction (or its eps transform) at the edge,
    together with the limiting prediction of the corresponding theorem.

    `which` selects the leading ('top') or partner ('next') wavefunction,
    plain or eps-transformed.  Returns (value, predicted_limit).
    """
    if n < 10:
        raise ValueError("n must be >= 10")
    if which not in ("phi_top", "phi_next", "eps_top", "eps_next"):
        raise ValueError(f"unknown selector {which!r}")
    x = float(x)
    center, scale = _kernel_scale(kind, n)
    u = center + scale * x
    if kind.family == GAUSSIAN and kind.beta == 4:
        j = 2 * n if which.endswith("top") else 2 * n + 1
        if which.startswith("phi"):
            value = float(phi_hermite(j, u))
            pred = 2.0 ** (1.0 / 6.0) * n ** (-1.0 / 12.0) * airy_ai(x)
        else:
            value = _eps_hermite_edge(j, u)
            pred = 2.0 ** -1.5 * n ** -0.25 * b_function(x)
        return value, pred
    if kind.family == GAUSSIAN and kind.beta == 1:
        if n % 2 != 0:
            raise ValueError("GOE needs even n")
        j = n if which.endswith("top") else n - 1
        if which.startswith("phi"):
            value = float(phi_hermite(j, u))
            pred = 2.0 ** 0.25 * n ** (-1.0 / 12.0) * airy_ai(x)
        else:
            value = _eps_hermite_edge(j, u)
            pred = 2.0 ** -1.25 * n ** -0.25 * b_function(x)
        return value, pred
    if kind.family == LAGUERRE and kind.beta == 4:
        j = 2 * n if which.endswith("top") else 2 * n + 1
        sign = 1.0 if which.endswith("top") else -1.0
        if which.startswith("phi"):
            value = float(u ** -0.5 * phi_laguerre(j, kind.alpha - 1.0, u))
            pred = sign * 2.0 ** (-13.0 / 6.0) * n ** (-5.0 / 6.0) * airy_ai(x)
        else:
            value = _eps_laguerre_edge(
                j, kind.alpha - 1.0, 0.5 * kind.alpha, -0.5, u, center + 9.0 * scale
            )
            pred = sign * 2.0 ** -1.5 * n ** -0.5 * b_function(x)
        return value, pred
    if kind.family == LAGUERRE and kind.beta == 1:
        if n % 2 != 0:
            raise ValueError("LOE needs even n")
        j = n if which.endswith("top") else n - 1
        sign = 1.0 if which.endswith("top") else -1.0
        if which.startswith("phi"):
            value = float(u ** -0.5 * phi_laguerre(j, kind.alpha + 1.0, u))
            pred = sign * 2.0 ** (-4.0 / 3.0) * n ** (-5.0 / 6.0) * airy_ai(x)
        else:
            value = _eps_laguerre_edge(
                j, kind.alpha + 1.0, 0.5 * kind.alpha + 1.0, -0.5, u, center + 9.0 * scale
            )
            pred = sign * 0.5 * n ** -0.5 * b_function(x)
        return value, pred
    raise ValueError("edge wavefunction limits exist for GSE/GOE/LSE/LOE only")
