"""
Analytic solutions of the radial Dirac-Coulomb equations
========================================================

    f' + kappa f / r - (W + m + q/r) g = 0
    g' - kappa g / r + (W - m + q/r) f = 0

Doublets are built from Kummer and Tricomi functions:

U1      regular doublet, (mr)^Y u_+ at the origin, real-entire in W
U2      (mr)^-Y u_- at the origin (undefined at 2 gamma = n)
V1      Tricomi doublet, decays as r -> oo for Im W > 0
Un2/Vn1 finite replacements of U2/V1 near 2 gamma = n
U2_0/V1_0  logarithmic pair at the critical charge q = |kappa|

with Y = gamma = sqrt(kappa^2 - q^2) or Y = i sigma above the critical charge.
omega(W) = -Wr(U1, V1) and its relatives omega_n, omega_0 are available both
as complex closed forms (any W, upper half plane and its real-axis limit) and
as separate real-axis forms used for root finding and densities.

Branch conventions
------------------
K = sqrt(W^2 - m^2) and Lambda = sqrt((W - m)/(W + m)) follow the phase
recipe W +- m = rho_+- exp(i phi_+-) with 0 <= phi < 2 pi, so that Im K > 0 in
the upper half plane and K = i tau on (-m, m), K = eps k on |E| > m.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy import special as sc

from . import specfun as sf

CRITICAL_TOL = 1e-12
HALF_INTEGER_TOL = 1e-8
NEIGHBORHOOD = 0.05
INTERP_RADIUS = 1e-5
INTERP_STEP = 5e-4
GAMMA_STEP = 2e-3


class RadialError(ValueError):
    pass


class UnsupportedAtHalfIntegerGamma(RadialError):
    pass


class CriticalKindOutsideCriticalCharge(RadialError):
    pass


class HalfIntegerGamma(RadialError):
    pass


class CriticalCharge(RadialError):
    pass


class NotCriticalCharge(RadialError):
    pass


class OutsideNeighborhood(RadialError):
    pass


class FitIllConditioned(RadialError):
    pass


# ------------------------------------------------------------------ types

@dataclass(frozen=True)
class ChannelParams:
    """One radial channel: coupling q, kappa = zeta (j + 1/2), mass m."""

    q: float
    kappa: int
    m: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.q) and self.q > 0):
            raise ValueError(f"q must be positive, got {self.q}")
        if int(self.kappa) != self.kappa or self.kappa == 0:
            raise ValueError(f"kappa must be a nonzero integer, got {self.kappa}")
        if not (np.isfinite(self.m) and self.m > 0):
            raise ValueError(f"m must be positive, got {self.m}")
        object.__setattr__(self, "kappa", int(self.kappa))
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "m", float(self.m))

    @property
    def zeta(self) -> int:
        return 1 if self.kappa > 0 else -1

    @property
    def j(self) -> float:
        return abs(self.kappa) - 0.5

    @property
    def q_uj(self) -> float:
        return float(np.sqrt(self.kappa**2 - 0.25))

    @property
    def q_cj(self) -> float:
        return float(abs(self.kappa))

    @property
    def is_critical(self) -> bool:
        return abs(self.q - self.q_cj) <= CRITICAL_TOL

    @property
    def is_overcritical(self) -> bool:
        return self.q > self.q_cj + CRITICAL_TOL

    @property
    def gamma(self) -> float:
        if self.is_overcritical:
            raise RadialError("gamma is imaginary above the critical charge")
        if self.is_critical:
            return 0.0
        return float(np.sqrt(self.kappa**2 - self.q**2))

    @property
    def sigma(self) -> float:
        if not self.is_overcritical:
            raise RadialError("sigma is defined only above the critical charge")
        return float(np.sqrt(self.q**2 - self.kappa**2))

    @property
    def upsilon(self) -> complex:
        return 1j * self.sigma if self.is_overcritical else complex(self.gamma)

    def at_gamma(self, gamma: float) -> "ChannelParams":
        """Same kappa and m, coupling moved so that sqrt(kappa^2 - q^2) = gamma."""
        return replace(self, q=float(np.sqrt(self.kappa**2 - gamma**2)))

    def half_integer_index(self) -> int | None:
        """n with |2 gamma - n| < NEIGHBORHOOD, or None.

        n = 2|kappa| is never returned: gamma = |kappa| means q = 0, so that
        point is outside the domain and the generic forms stay accurate near it.
        """
        if self.is_overcritical or self.is_critical:
            return None
        n = int(round(2 * self.gamma))
        if 1 <= n < 2 * abs(self.kappa) and abs(2 * self.gamma - n) < NEIGHBORHOOD:
            return n
        return None


@dataclass(frozen=True)
class Doublet:
    """Upper and lower radial components sampled on a radius grid."""

    f: np.ndarray
    g: np.ndarray

    def __add__(self, other: "Doublet") -> "Doublet":
        return Doublet(self.f + other.f, self.g + other.g)

    def __sub__(self, other: "Doublet") -> "Doublet":
        return Doublet(self.f - other.f, self.g - other.g)

    def __mul__(self, c) -> "Doublet":
        return Doublet(c * self.f, c * self.g)

    __rmul__ = __mul__

    def wronskian(self, other: "Doublet"):
        return self.f * other.g - self.g * other.f

    def dot(self, other: "Doublet"):
        return self.f * other.f + self.g * other.g

    def conj(self) -> "Doublet":
        return Doublet(np.conj(self.f), np.conj(self.g))

    @property
    def norm(self):
        return np.sqrt(np.abs(self.f) ** 2 + np.abs(self.g) ** 2)


@dataclass(frozen=True)
class SolutionKind:
    tag: str
    n: int | None = None

    def __post_init__(self):
        if self.tag not in {"U1", "U2", "V1", "Un2", "Vn1", "U2_0", "V1_0"}:
            raise ValueError(f"unknown solution kind {self.tag}")
        if self.tag in {"Un2", "Vn1"} and (self.n is None or self.n < 1):
            raise ValueError(f"{self.tag} needs a positive index n")


U1 = SolutionKind("U1")
U2 = SolutionKind("U2")
V1 = SolutionKind("V1")
U2_0 = SolutionKind("U2_0")
V1_0 = SolutionKind("V1_0")


def Un2(n: int) -> SolutionKind:
    return SolutionKind("Un2", n)


def Vn1(n: int) -> SolutionKind:
    return SolutionKind("Vn1", n)


# ------------------------------------------------------------- kinematics

def momentum(W, m: float = 1.0):
    """(K, Lambda) from the phase recipe 0 <= phi_+- < 2 pi."""
    W = np.asarray(W, dtype=complex)
    rp, rm = np.abs(W + m), np.abs(W - m)
    pp = np.mod(np.angle(W + m), 2 * np.pi)
    pm = np.mod(np.angle(W - m), 2 * np.pi)
    K = np.sqrt(rm * rp) * np.exp(0.5j * (pm + pp))
    with np.errstate(divide="ignore", invalid="ignore"):
        lam = np.sqrt(rm / rp) * np.exp(0.5j * (pm - pp))
    if K.ndim == 0:
        return complex(K), complex(lam)
    return K, lam


def _as_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radii must be positive")
    return r


# ------------------------------------------------------------ raw doublets

def x_doublet(r, ups: complex, W: complex, q: float, kappa: int, m: float = 1.0) -> Doublet:
    """The Kummer doublet X(r, Y, W) with u_+ = (1, (kappa + Y)/q)."""
    r = _as_r(r)
    K, _ = momentum(W, m)
    c = q * W / (1j * K)
    b = 1 + 2 * ups
    z = -2j * K * r
    with np.errstate(over="ignore", invalid="ignore"):
        p1 = np.exp(1j * K * r) * sf.kummer_phi(ups + c, b, z)
        p2 = np.exp(-1j * K * r) * sf.kummer_phi(ups - c, b, -z)
    phip = p1 + p2
    phim = (p1 - p2) / (1j * K)
    u2 = (kappa + ups) / q
    pref = (m * r) ** ups / 2
    return Doublet(pref * (phip + phim * (m + W) * u2), pref * (phip * u2 + phim * (m - W)))


def _ratio_gamma(x, y):
    """Gamma(x)/Gamma(y) for complex x, y; zero when y is a pole."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    with np.errstate(all="ignore"):
        small = (np.abs(x) < 120) & (np.abs(y) < 120)
        direct = sc.gamma(x) * sc.rgamma(y)
        logf = np.exp(sc.loggamma(x) - sc.loggamma(y))
        out = np.where(small, direct, logf)
        out = np.where(sf._near_nonpositive_integer(y, 0.0), 0.0, out)
    return out


def v_tilde_doublet(r, params: ChannelParams, W: complex, ups: complex | None = None) -> Doublet:
    """Gamma(-2Y) V1: the Tricomi doublet without the vanishing 1/Gamma(-2Y)."""
    r = _as_r(r)
    q, kappa, m = params.q, params.kappa, params.m
    ups = params.upsilon if ups is None else ups
    K, lam = momentum(W, m)
    alpha = ups - 1j * q * W / K
    beta = 1 + 2 * ups
    z = -2j * K * r
    ap = (ups * K - 1j * q * W) / (kappa * K - 1j * q * m)
    bb = (kappa * K + 1j * q * m) / K
    coef = sf.gamma(alpha - 2 * ups) / (1 - ap)
    psi0 = sf.tricomi_psi(alpha, beta, z)
    psi1 = sf.tricomi_psi(alpha + 1, beta, z)
    pref = coef * (m * r) ** ups * np.exp(1j * K * r)
    return Doublet(pref * (psi0 + bb * psi1), pref * 1j * lam * (psi0 - bb * psi1))


def decaying_doublet(r, params: ChannelParams, W: complex) -> Doublet:
    """The Tricomi bracket of V1 (or V1_0) without its W-dependent prefactor.

    Proportional to the decaying solution wherever that prefactor is singular
    or zero, e.g. at bound-state energies.
    """
    r = _as_r(r)
    q, kappa, m = params.q, params.kappa, params.m
    ups = 0j if params.is_critical else params.upsilon
    K, lam = momentum(W, m)
    alpha = ups - 1j * q * W / K
    beta = 1 + 2 * ups
    z = -2j * K * r
    bb = (kappa * K + 1j * q * m) / K
    psi0 = sf.tricomi_psi(alpha, beta, z)
    psi1 = sf.tricomi_psi(alpha + 1, beta, z)
    pref = (m * r) ** ups * np.exp(1j * K * r)
    return Doublet(pref * (psi0 + bb * psi1), pref * 1j * lam * (psi0 - bb * psi1))


# --------------------------------------------------------------- omega

def omega_tilde(params: ChannelParams, W, ups: complex | None = None):
    """Gamma(-2Y) omega(W), finite at 2 gamma = n."""
    q, kappa, m = params.q, params.kappa, params.m
    ups = params.upsilon if ups is None else ups
    W = np.asarray(W, dtype=complex)
    K, _ = momentum(W, m)
    alpha = ups - 1j * q * W / K
    den = kappa * K - 1j * q * m
    am = (-ups * K - 1j * q * W) / den
    ap = (ups * K - 1j * q * W) / den
    with np.errstate(all="ignore"):
        out = (2 * ups * sc.gamma(2 * ups) * _ratio_gamma(alpha - 2 * ups, alpha)
               * (1 - am) / (1 - ap) * np.exp(-2 * ups * np.log(-2j * K / m)) / q)
    return complex(out) if out.ndim == 0 else out


def _check_generic(params: ChannelParams):
    if params.is_critical:
        raise CriticalCharge("gamma = 0: use omega_0")
    if not params.is_overcritical:
        n = round(2 * params.gamma)
        if n >= 1 and abs(2 * params.gamma - n) < HALF_INTEGER_TOL:
            raise HalfIntegerGamma(f"2 gamma = {n}: use omega_n")


def omega(params: ChannelParams, W):
    """omega(W) = -Wr(U1, V1) from its closed form."""
    _check_generic(params)
    return omega_tilde(params, W) * sf.recip_gamma(-2 * params.upsilon)


def a_n(params: ChannelParams, n: int, W):
    """A_n(W) = -(2 gamma / q) / omega_tilde(W) at gamma = n/2."""
    pn = params.at_gamma(n / 2)
    out = -(n / pn.q) / omega_tilde(pn, W, ups=n / 2)
    return out


def _near_half(params: ChannelParams, n: int) -> float:
    if params.is_critical or params.is_overcritical:
        raise OutsideNeighborhood("omega_n needs real gamma > 0")
    d = 2 * params.gamma - n
    if abs(d) >= NEIGHBORHOOD:
        raise OutsideNeighborhood(f"|2 gamma - {n}| = {abs(d):.3g} >= {NEIGHBORHOOD}")
    return d


def _gamma_interpolate(fn: Callable[[ChannelParams], object], params: ChannelParams, n: int):
    """Lagrange interpolation in gamma through n/2 +- h, +- 2h, +- 3h."""
    g0 = n / 2
    nodes = g0 + INTERP_STEP * np.array([-3.0, -2.0, -1.0, 1.0, 2.0, 3.0])
    vals = [fn(params.at_gamma(g)) for g in nodes]
    x = params.gamma
    out = None
    for i, gi in enumerate(nodes):
        w = 1.0
        for k, gk in enumerate(nodes):
            if k != i:
                w *= (x - gk) / (gi - gk)
        out = vals[i] * w if out is None else out + vals[i] * w
    return out


def omega_n(params: ChannelParams, n: int, W):
    """omega_n(W) = omega / (1 + (q/2gamma) omega_tilde A_n), finite at 2 gamma = n."""
    d = _near_half(params, n)

    def direct(p):
        g = p.gamma
        inv = (p.q / (2 * g)) * sf.gamma(-2 * g) * a_n(p, n, W) + 1 / omega(p, W)
        return 1 / inv

    if abs(d) < INTERP_RADIUS:
        return _gamma_interpolate(direct, params, n)
    return direct(params)


def omega_0(params: ChannelParams, W):
    """omega^(0)(W) at the critical charge, complex closed form."""
    if not params.is_critical:
        raise NotCriticalCharge(f"q = {params.q} is not |kappa|")
    q, zeta, m = params.q_cj, params.zeta, params.m
    W = np.asarray(W, dtype=complex)
    K, _ = momentum(W, m)
    out = (np.log(-2j * K / m) + sc.psi(-1j * q * W / K)
           + (zeta * (W - m) + 1j * K) / (2 * q * W) - 2 * sc.psi(1.0)) / q
    return complex(out) if out.ndim == 0 else out


# ---------------------------------------------------- real-axis closed forms

def _real_gamma_ratio(x, y):
    """Gamma(x)/Gamma(y) for real arrays; zero at poles of Gamma(y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    with np.errstate(all="ignore"):
        small = (np.abs(x) < 150) & (np.abs(y) < 150)
        direct = sc.gamma(x) * sc.rgamma(y)
        logf = sc.gammasgn(x) * sc.gammasgn(y) * np.exp(sc.gammaln(x) - sc.gammaln(y))
    return np.where(small, direct, logf)


def omega_tilde_on_axis(params: ChannelParams, E):
    """Gamma(-2gamma) omega(E + i0) from the real-axis forms (real gamma > 0)."""
    q, kappa, m = params.q, params.kappa, params.m
    g = params.gamma
    E = np.asarray(E, dtype=float)
    out = np.empty(E.shape, dtype=complex)
    inside = np.abs(E) < m
    with np.errstate(all="ignore"):
        if inside.any():
            e = E[inside]
            tau = np.sqrt((m - e) * (m + e))
            s = q * e / tau
            num = q * (m - e) - (kappa + g) * tau
            den = q * (m - e) - (kappa - g) * tau
            out[inside] = (2 * g * sc.gamma(2 * g) * _real_gamma_ratio(-g - s, g - s)
                           * num / den * (2 * tau / m) ** (-2 * g) / q)
        if (~inside).any():
            e = E[~inside]
            k = np.sqrt((e - m) * (e + m))
            eps = np.sign(e)
            c = q * np.abs(e) / (1j * k)
            num = (kappa + g) * eps * k + 1j * q * (e - m)
            den = (kappa - g) * eps * k + 1j * q * (e - m)
            out[~inside] = (2 * g * sc.gamma(2 * g) * np.exp(eps * 1j * np.pi * g)
                            * _ratio_gamma(-g + c, g + c) * num / den
                            * (2 * k / m) ** (-2 * g) / q)
    return out if out.ndim else complex(out)


def omega_on_axis(params: ChannelParams, E):
    """omega(E + i0): real on (-m, m), complex on |E| > m."""
    _check_generic(params)
    if params.is_overcritical:
        return omega(params, np.asarray(E, dtype=complex))
    return omega_tilde_on_axis(params, E) * float(sc.rgamma(-2 * params.gamma))


def omega_n_on_axis(params: ChannelParams, n: int, E):
    """Real-axis omega_n via 1/omega_n = (q/2g) Gamma(-2g) A_n + 1/omega."""
    d = _near_half(params, n)

    def direct(p):
        g = p.gamma
        wt = omega_tilde_on_axis(p, E)
        an = a_n(p, n, np.asarray(E, dtype=complex))
        inv = (p.q / (2 * g)) * sc.gamma(-2 * g) * an + sc.gamma(-2 * g) / wt
        return 1 / inv

    if abs(d) < INTERP_RADIUS:
        return _gamma_interpolate(direct, params, n)
    return direct(params)


def omega_0_on_axis(params: ChannelParams, E):
    """omega^(0)(E + i0) from the real-axis forms."""
    if not params.is_critical:
        raise NotCriticalCharge(f"q = {params.q} is not |kappa|")
    q, zeta, m = params.q_cj, params.zeta, params.m
    E = np.asarray(E, dtype=float)
    out = np.empty(E.shape, dtype=complex)
    inside = np.abs(E) < m
    c = ZETA_SHIFT * zeta / (2 * q)
    with np.errstate(all="ignore"):
        if inside.any():
            e = E[inside]
            tau = np.sqrt((m - e) * (m + e))
            out[inside] = (np.log(2 * tau / m) + sc.psi(-q * e / tau)
                           - (tau + zeta * m) / (2 * q * e) - 2 * sc.psi(1.0) + c) / q
        if (~inside).any():
            e = E[~inside]
            k = np.sqrt((e - m) * (e + m))
            eps = np.sign(e)
            out[~inside] = (np.log(2 * np.exp(-1j * eps * np.pi / 2) * k / m)
                            + sc.psi(-1j * q * np.abs(e) / k)
                            + (1j * eps * k - zeta * m) / (2 * q * e) - 2 * sc.psi(1.0) + c) / q
    return out if out.ndim else complex(out)


# +zeta/(2 q_cj) in the real-axis bracket is what makes the boundary value of
# the complex form and the real-axis form coincide.
ZETA_SHIFT = 1.0


# ---------------------------------------------------------- solution kinds

def _u1(r, p: ChannelParams, W) -> Doublet:
    return x_doublet(r, p.upsilon, W, p.q, p.kappa, p.m)


def _u2(r, p: ChannelParams, W) -> Doublet:
    return x_doublet(r, -p.upsilon, W, p.q, p.kappa, p.m)


def _v1(r, p: ChannelParams, W) -> Doublet:
    return v_tilde_doublet(r, p, W) * sf.recip_gamma(-2 * p.upsilon)


def _dx_dgamma0(r, p: ChannelParams, W) -> Doublet:
    """dX/dY at Y = 0 and fixed q = |kappa|: fourth-order central differences
    with one Richardson step (overall O(h^6))."""

    def x(y):
        return x_doublet(r, y, W, p.q_cj, p.kappa, p.m)

    def central(h):
        return ((x(h) - x(-h)) * 8 - (x(2 * h) - x(-2 * h))) * (1 / (12 * h))

    d1, d2 = central(GAMMA_STEP), central(GAMMA_STEP / 2)
    return d2 * (16 / 15) - d1 * (1 / 15)


def _u2_0(r, p: ChannelParams, W) -> Doublet:
    u1 = x_doublet(r, 0.0, W, p.q_cj, p.kappa, p.m)
    return _dx_dgamma0(r, p, W) - u1 * (p.zeta / p.q_cj)


def _v1_0(r, p: ChannelParams, W) -> Doublet:
    q, zeta, m = p.q_cj, p.zeta, p.m
    r = _as_r(r)
    K, lam = momentum(W, m)
    alpha = q * W / (1j * K)
    a = W / (m + 1j * zeta * K)
    b = q * (zeta * K + 1j * m) / K
    z = -2j * K * r
    psi0 = sf.tricomi_psi(alpha, 1.0, z)
    psi1 = sf.tricomi_psi(alpha + 1, 1.0, z)
    pref = -sf.gamma(alpha) / (1 - a) * np.exp(1j * K * r)
    return Doublet(pref * (psi0 + b * psi1), pref * 1j * lam * (psi0 - b * psi1))


def _un2(r, p: ChannelParams, n: int, W) -> Doublet:
    d = _near_half(p, n)

    def direct(pp):
        return _u2(r, pp, W) - _u1(r, pp, W) * (sf.gamma(-2 * pp.gamma) * a_n(pp, n, W))

    if abs(d) < INTERP_RADIUS:
        return _gamma_interpolate(direct, p, n)
    return direct(p)


def _vn1(r, p: ChannelParams, n: int, W) -> Doublet:
    """V_n1 = V~ omega_n / omega~ (equal to V1 / (1 + (q/2g) omega~ A_n))."""
    _near_half(p, n)
    return v_tilde_doublet(r, p, W) * (omega_n(p, n, W) / omega_tilde(p, W))


def eval_solution(kind: SolutionKind, params: ChannelParams, r, W) -> Doublet:
    """Evaluate a basis doublet on the radius grid r at spectral parameter W."""
    W = complex(W)
    tag = kind.tag
    if tag in {"U2_0", "V1_0"}:
        if not params.is_critical:
            raise CriticalKindOutsideCriticalCharge(f"{tag} needs q = |kappa|")
        return _u2_0(r, params, W) if tag == "U2_0" else _v1_0(r, params, W)
    if tag == "U1":
        return _u1(r, params, W)
    if tag in {"U2", "V1"}:
        if params.is_critical:
            raise CriticalCharge(f"{tag} degenerates at gamma = 0; use {tag}_0")
        if not params.is_overcritical:
            n = round(2 * params.gamma)
            if n >= 1 and abs(2 * params.gamma - n) < HALF_INTEGER_TOL:
                raise UnsupportedAtHalfIntegerGamma(f"2 gamma = {n}: use {tag[0]}n")
        return _u2(r, params, W) if tag == "U2" else _v1(r, params, W)
    if tag == "Un2":
        return _un2(r, params, kind.n, W)
    return _vn1(r, params, kind.n, W)


# ------------------------------------------------- asymptotic coefficients

def origin_basis(params: ChannelParams, r) -> tuple[Doublet, Doublet]:
    """Leading small-r behaviours (b1, b2) matching (c1, c2)."""
    r = _as_r(r)
    q, kappa, m = params.q, params.kappa, params.m
    one = np.ones_like(r, dtype=complex)
    if params.is_critical:
        lg = np.log(m * r)
        zeta = params.zeta
        return (Doublet(one, zeta * one),
                Doublet(lg - zeta / params.q_cj + 0j, zeta * lg + 0j))
    ups = params.upsilon
    p = (m * r) ** ups
    return (Doublet(p, p * (kappa + ups) / q),
            Doublet(1 / p, (kappa - ups) / q / p))


def origin_wronskian(params: ChannelParams) -> float:
    """Wr(b1, b2): -2 Y / q, or 1/q_cj at the critical charge."""
    if params.is_critical:
        return 1.0 / params.q_cj
    return -2 * params.upsilon / params.q


def asymptotic_coefficients(params: ChannelParams, r, F: Doublet, orders: int = 2):
    """Fit F(r) ~ c1 b1(r) + c2 b2(r) near the origin.

    Higher Frobenius orders r^(+-Y + k), k = 1..orders (with logarithms at the
    critical charge), enter as nuisance columns so that the remainder does
    not bias (c1, c2).
    """
    r = _as_r(r)
    if np.max(params.m * r) >= 1e-2:
        raise FitIllConditioned("samples must lie in the asymptotic regime m r < 1e-2")
    b1, b2 = origin_basis(params, r)
    mr = params.m * r
    cols = [np.concatenate([b1.f, b1.g]), np.concatenate([b2.f, b2.g])]
    zero = np.zeros_like(r, dtype=complex)
    if params.is_critical:
        shapes = [mr**k for k in range(1, orders + 1)] + [mr**k * np.log(mr) for k in range(1, orders + 1)]
    else:
        ups = params.upsilon
        shapes = [mr ** (s + k) for s in (ups, -ups) for k in range(1, orders + 1)]
    for sh in shapes:
        cols.append(np.concatenate([sh + 0j, zero]))
        cols.append(np.concatenate([zero, sh + 0j]))
    A = np.array(cols).T
    scale = np.linalg.norm(A, axis=0)
    As = A / scale
    y = np.concatenate([np.asarray(F.f, dtype=complex), np.asarray(F.g, dtype=complex)])
    sol, *_ = np.linalg.lstsq(As, y, rcond=None)
    cond = np.linalg.cond(As)
    if not np.isfinite(cond) or cond > 1e12:
        raise FitIllConditioned(f"condition number {cond:.3g}")
    c = sol / scale
    return complex(c[0]), complex(c[1])
