"""
Complex special functions
=========================

Gamma family (log-gamma, gamma, reciprocal gamma, digamma) for complex
arguments, and the confluent hypergeometric functions

    Phi(a, b; z) = sum_k (a)_k / (b)_k z^k / k!          (Kummer)
    Psi(a, b; z) ~ z^(-a),  |z| -> oo, |arg z| < 3pi/2     (Tricomi)

for complex parameters and complex argument.

Evaluation strategy
-------------------
Phi
    Kummer transformation to Re z >= 0.  |z| <= 2: Taylor series.  |z| > 30:
    two-sided Poincare expansion when it reaches double accuracy.  Otherwise
    the Taylor value at |z| = 2 is continued outward along the ray through z
    by local re-expansion of the confluent equation.  Any non-finite result
    falls back to the Taylor series in mpmath arithmetic with the working
    precision raised until the observed cancellation is covered.
Psi
    Poincare expansion at a radius where it is accurate to double precision,
    continued inward along the ray to z.  Fallback (and the independent
    tricomi_psi_connection route): the connection formula

        Psi = G(1-b)/G(a-b+1) Phi(a,b;z) + G(b-1)/G(a) z^(1-b) Phi(a-b+1,2-b;z)

    in extended precision.  For b within 1e-9 of an integer the connection
    formula is evaluated at b +- delta (delta = 1e-6, and delta/2) and
    Richardson-extrapolated.

All functions accept scalars or broadcastable arrays and are pure.
"""
from __future__ import annotations

import math

import mpmath
import numpy as np
from scipy import special as sc

POLE_TOL = 1e-9
INTEGER_BETA_TOL = 1e-9
ASYMPTOTIC_SWITCH = 30.0
RICHARDSON_DELTA = 1e-6
MAX_TERMS = 4000


class SpecfunError(ArithmeticError):
    """Base class for special-function evaluation failures."""


class PoleAtNonPositiveInteger(SpecfunError):
    pass


class BetaNonPositiveInteger(SpecfunError):
    pass


class SeriesNotConverged(SpecfunError):
    pass


class OriginSingularity(SpecfunError):
    pass


def _as_complex(*args):
    arrs = np.broadcast_arrays(*[np.asarray(a, dtype=complex) for a in args])
    scalar = all(np.ndim(a) == 0 for a in args)
    return [np.array(a, dtype=complex).ravel() for a in arrs], arrs[0].shape, scalar


def _shape_out(x, shape, scalar):
    x = np.asarray(x).reshape(shape)
    return complex(x) if scalar else x


def _near_nonpositive_integer(z, tol=POLE_TOL):
    z = np.asarray(z, dtype=complex)
    k = np.round(z.real)
    return (k <= 0) & (np.abs(z - k) < tol)


# ---------------------------------------------------------------- gamma family

def log_gamma(z):
    """Principal branch of ln Gamma(z)."""
    z = np.asarray(z, dtype=complex)
    if np.any(_near_nonpositive_integer(z)):
        raise PoleAtNonPositiveInteger(f"log_gamma pole near {z}")
    out = sc.loggamma(z)
    return complex(out) if out.ndim == 0 else out


def gamma(z):
    z = np.asarray(z, dtype=complex)
    if np.any(_near_nonpositive_integer(z)):
        raise PoleAtNonPositiveInteger(f"gamma pole near {z}")
    out = sc.gamma(z)
    return complex(out) if out.ndim == 0 else out


def recip_gamma(z):
    """1/Gamma(z); entire, exactly zero at z = 0, -1, -2, ..."""
    z = np.asarray(z, dtype=complex)
    out = np.where(_near_nonpositive_integer(z, 0.0), 0.0, sc.rgamma(z))
    return complex(out) if out.ndim == 0 else out


def digamma(z):
    """psi(z) = d/dz ln Gamma(z)."""
    z = np.asarray(z, dtype=complex)
    if np.any(_near_nonpositive_integer(z)):
        raise PoleAtNonPositiveInteger(f"digamma pole near {z}")
    out = sc.psi(z)
    return complex(out) if out.ndim == 0 else out


# ------------------------------------------------------- extended precision

def _mp_phi_series(a, b, z, dps):
    """Taylor series of Phi in mpmath arithmetic; returns (value, max_term)."""
    with mpmath.workdps(dps):
        a, b, z = mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(z)
        term = mpmath.mpc(1)
        total = mpmath.mpc(1)
        biggest = mpmath.mpf(1)
        eps = mpmath.mpf(10) ** (-dps)
        for k in range(MAX_TERMS):
            term = term * (a + k) / ((b + k) * (k + 1)) * z
            total += term
            at = abs(term)
            if at > biggest:
                biggest = at
            if at <= eps * abs(total) and k > abs(z):
                return total, biggest
            if term == 0:
                return total, biggest
    raise SeriesNotConverged(f"Phi series: a={a}, b={b}, z={z}")


def _mp_phi(a, b, z):
    """Phi at ~16 correct digits using precision adapted to cancellation."""
    dps = 45 + int(abs(complex(z).real) / math.log(10)) + int(abs(complex(z).imag) / math.log(10))
    for _ in range(4):
        val, big = _mp_phi_series(a, b, z, dps)
        if val == 0:
            return val
        loss = float(mpmath.log10(big / abs(val))) if big > abs(val) else 0.0
        if loss < dps - 30:
            return val
        dps = int(loss) + 45
    raise SeriesNotConverged(f"Phi cancellation unresolved: a={a}, b={b}, z={z}")


def _mp_psi_connection(a, b, z):
    b = mpmath.mpc(b)
    a = mpmath.mpc(a)
    z = mpmath.mpc(z)
    t1 = mpmath.gamma(1 - b) * mpmath.rgamma(a - b + 1) * _mp_phi(a, b, z)
    t2 = mpmath.gamma(b - 1) * mpmath.rgamma(a) * mpmath.power(z, 1 - b) * _mp_phi(a - b + 1, 2 - b, z)
    return t1 + t2


def _mp_psi(a, b, z):
    bn = round(complex(b).real)
    near_int = abs(complex(b) - bn) < INTEGER_BETA_TOL
    dps = 40 + int(abs(complex(z)) / math.log(10))
    if near_int:
        dps += 20
    with mpmath.workdps(dps):
        if not near_int:
            return complex(_mp_psi_connection(a, b, z))
        d = mpmath.mpf(RICHARDSON_DELTA)

        def sym(h):
            return (_mp_psi_connection(a, b + h, z) + _mp_psi_connection(a, b - h, z)) / 2

        return complex((4 * sym(d / 2) - sym(d)) / 3)


# ------------------------------------------------------- ray continuation
#
# Both Phi and Psi solve z w'' + (b - z) w' - a w = 0.  Between a start point
# where a value and derivative are known to full accuracy and the target we
# re-expand the solution in Taylor series along the ray through the target.
# Each step has |h| <= min(STEP_FRACTION |p|, STEP_MAX), keeping the local
# series well inside its disc of convergence (radius |p|) and keeping the
# e^h factor free of cancellation.

STEP_FRACTION = 0.4
STEP_MAX = 2.0
LOCAL_TERMS = 80


def _ray_schedule(r0, r1):
    """Radii from r0 to r1 obeying the step rules; r0, r1 > 0."""
    pts = [r0]
    r = r0
    if r1 >= r0:
        while r < r1:
            r = min(r1, r + min(STEP_FRACTION * r, STEP_MAX))
            pts.append(r)
    else:
        while r > r1:
            r = max(r1, r - min(STEP_FRACTION / (1 + STEP_FRACTION) * r, STEP_MAX))
            pts.append(r)
    return pts


def _march(a, b, z0, w, dw, z1):
    """Continue (w, w') of the confluent equation from z0 to z1 along a ray."""
    if z0.size == 0:
        return w, dw
    scheds = [_ray_schedule(abs(p), abs(q)) for p, q in zip(z0, z1)]
    n = max(len(s) for s in scheds)
    unit = np.where(np.abs(z1) > 0, z1 / np.abs(z1), 1.0)
    radii = np.array([s + [s[-1]] * (n - len(s)) for s in scheds]).T
    w = w.copy()
    dw = dw.copy()
    for j in range(n - 1):
        p = radii[j] * unit
        h = (radii[j + 1] - radii[j]) * unit
        moving = h != 0
        if not moving.any():
            continue
        pp = np.where(moving, p, 1.0)
        c0, c1 = w, dw
        val = c0 + c1 * h
        der = c1.copy()
        hk = h.copy()
        for k in range(LOCAL_TERMS):
            c2 = ((k + a) * c0 - (k + 1) * (k + b - pp) * c1) / (pp * (k + 2) * (k + 1))
            der = der + (k + 2) * c2 * hk
            hk = hk * h
            inc = c2 * hk
            val = val + inc
            c0, c1 = c1, c2
            if k > 8 and np.all(np.abs(inc) <= 1e-17 * np.abs(val)):
                break
        w = np.where(moving, val, w)
        dw = np.where(moving, der, dw)
    return w, dw


# ------------------------------------------------------------------ Kummer Phi

def _phi_taylor(a, b, z):
    """Vectorised double-precision Taylor series; returns (sum, max |term|, ok)."""
    term = np.ones_like(z)
    total = np.ones_like(z)
    biggest = np.ones(z.shape)
    active = np.ones(z.shape, dtype=bool)
    absz = np.abs(z)
    for k in range(MAX_TERMS):
        term = term * (a + k) / ((b + k) * (k + 1)) * z
        total = total + np.where(active, term, 0)
        at = np.abs(term)
        biggest = np.where(active, np.maximum(biggest, at), biggest)
        done = (at <= 1e-17 * np.abs(total)) & (k > absz)
        done |= at == 0
        active &= ~done
        if not active.any():
            break
    return total, biggest, ~active


def _poincare(p1, p2, z, nmax=400):
    """Sum of the formal series sum_k (p1)_k (p2)_k / k! (-z)^-k, truncated at
    its smallest term.  Returns (sum, last |term| used as error estimate)."""
    s = np.ones_like(z)
    t = np.ones_like(z)
    err = np.full(z.shape, np.inf)
    active = np.ones(z.shape, dtype=bool)
    for k in range(nmax):
        t_new = t * (p1 + k) * (p2 + k) / ((k + 1) * (-z))
        grow = (np.abs(t_new) > np.abs(t)) & (k > 2)
        stop = active & grow
        err = np.where(stop, np.abs(t), err)
        active &= ~grow
        s = s + np.where(active, t_new, 0)
        t = np.where(active, t_new, t)
        tiny = active & (np.abs(t_new) <= 1e-17 * np.abs(s))
        err = np.where(tiny, 0.0, err)
        active &= ~tiny
        if not active.any():
            break
    return s, err


def _phi_asymptotic(a, b, z):
    """Two-sided Poincare expansion, Re z >= 0.  Returns (value, ok)."""
    s1, e1 = _poincare(1 - a, b - a, -z)
    s2, e2 = _poincare(a, a - b + 1, z)
    sign = np.where(z.imag >= 0, 1.0, -1.0)
    g_b = sc.gamma(b)
    with np.errstate(all="ignore"):
        p1 = g_b * sc.rgamma(a) * np.exp(z) * z ** (a - b)
        p2 = g_b * sc.rgamma(b - a) * np.exp(sign * 1j * np.pi * a) * z ** (-a)
        val = p1 * s1 + p2 * s2
        err = np.abs(p1) * e1 + np.abs(p2) * e2
    ok = np.isfinite(val) & (err <= 1e-15 * np.abs(val))
    return val, ok


def _phi_positive_half(a, b, z):
    """Phi for Re z >= 0 in double precision."""
    out = np.empty_like(z)
    absz = np.abs(z)
    todo = np.ones(z.shape, dtype=bool)
    far = absz > ASYMPTOTIC_SWITCH
    if far.any():
        v, ok = _phi_asymptotic(a[far], b[far], z[far])
        idx = np.flatnonzero(far)[ok]
        out[idx] = v[ok]
        todo[idx] = False
    near = todo & (absz <= 2.0)
    if near.any():
        s, _, _ = _phi_taylor(a[near], b[near], z[near])
        out[near] = s
        todo[near] = False
    if todo.any():
        zt = z[todo]
        z0 = zt / np.abs(zt) * 2.0
        w0, _, _ = _phi_taylor(a[todo], b[todo], z0)
        d0, _, _ = _phi_taylor(a[todo] + 1, b[todo] + 1, z0)
        d0 = d0 * a[todo] / b[todo]
        w, _ = _march(a[todo], b[todo], z0, w0, d0, zt)
        out[todo] = w
    return out


def kummer_phi(alpha, beta, z):
    """Kummer's confluent hypergeometric function Phi(alpha, beta; z)."""
    (a, b, z), shape, scalar = _as_complex(alpha, beta, z)
    if np.any(_near_nonpositive_integer(b)):
        raise BetaNonPositiveInteger(f"beta={b[_near_nonpositive_integer(b)][0]}")
    flip = z.real < 0
    aa = np.where(flip, b - a, a)
    zz = np.where(flip, -z, z)
    out = _phi_positive_half(aa, b, zz)
    with np.errstate(all="ignore"):
        out = np.where(flip, np.exp(z), 1.0) * out
    bad = ~np.isfinite(out)
    for i in np.flatnonzero(bad):
        out[i] = complex(_mp_phi(a[i], b[i], z[i]))
    if not np.all(np.isfinite(out)):
        raise SeriesNotConverged("Phi produced a non-finite value")
    return _shape_out(out, shape, scalar)


# ----------------------------------------------------------------- Tricomi Psi

def _psi_asymptotic(a, b, z):
    """Psi and its z-derivative from the Poincare expansion; returns ok mask."""
    s, e = _poincare(a, a - b + 1, z)
    sd, ed = _poincare(a + 1, a - b + 1, z)
    with np.errstate(all="ignore"):
        val = z ** (-a) * s
        der = -a * z ** (-a - 1) * sd
    ok = (e <= 1e-16 * np.abs(s)) & (ed <= 1e-16 * np.abs(sd)) & np.isfinite(val)
    return val, der, ok


def tricomi_psi(alpha, beta, z):
    """Tricomi's confluent hypergeometric function Psi(alpha, beta; z).

    Principal branch, |arg z| < pi.  Values are obtained from the Poincare
    expansion at a radius where it is accurate to double precision, then
    continued inward along the ray through z.
    """
    (a, b, z), shape, scalar = _as_complex(alpha, beta, z)
    if np.any(z == 0):
        raise OriginSingularity("Psi is singular at z = 0")
    absz = np.abs(z)
    unit = z / absz
    start = np.maximum(absz, ASYMPTOTIC_SWITCH + 2 * np.abs(a) + np.abs(a - b))
    val = np.empty_like(z)
    der = np.empty_like(z)
    pending = np.ones(z.shape, dtype=bool)
    for _ in range(12):
        idx = np.flatnonzero(pending)
        if idx.size == 0:
            break
        v, d, ok = _psi_asymptotic(a[idx], b[idx], start[idx] * unit[idx])
        val[idx[ok]] = v[ok]
        der[idx[ok]] = d[ok]
        pending[idx[ok]] = False
        start[idx[~ok]] *= 1.6
    out = np.empty_like(z)
    go = ~pending
    w, _ = _march(a[go], b[go], start[go] * unit[go], val[go], der[go], z[go])
    out[go] = w
    for i in np.flatnonzero(pending | ~np.isfinite(out)):
        out[i] = _mp_psi(a[i], b[i], z[i])
    if not np.all(np.isfinite(out)):
        raise SeriesNotConverged("Psi produced a non-finite value")
    return _shape_out(out, shape, scalar)


def tricomi_psi_connection(alpha, beta, z):
    """Psi from the connection formula in extended precision.

    Independent second route (integer beta by Richardson extrapolation at
    beta +- delta); slow, intended for cross-checks.
    """
    (a, b, z), shape, scalar = _as_complex(alpha, beta, z)
    out = np.array([_mp_psi(ai, bi, zi) for ai, bi, zi in zip(a, b, z)], dtype=complex)
    return _shape_out(out, shape, scalar)
