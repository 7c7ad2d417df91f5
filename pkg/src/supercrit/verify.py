"""
Overlap integrals of eigenfunctions as executable checks.

For solutions of h F = E F and h F' = E' F' the Lagrange identity gives

    int_0^oo F F' dr = I_inf - I_0,   I = Wr(r; F, F') / (E - E'),

with the limits taken at r -> oo and r -> 0.  I_0 comes from the small-r
coefficients (c1, c2) of both doublets, I_inf from a radius where the
decaying member is negligible.  Direct quadrature on a graded grid is the
independent cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate
from scipy import special as sc

from . import radial as rd
from . import spectral as sp
from .extensions import ExtensionParam, Region, check_extension, omega_ext_on_axis, solutions
from .radial import ChannelParams, Doublet

ORIGIN_PROBES = (1e-6, 1e-4)
DECAY_TAU_R = 40.0
TAIL_TAU_R = 60.0
HEAD_RADIUS = 1e-8
LIMIT_STEP = 1e-5


class VerifyError(ArithmeticError):
    pass


class NonDecayingPair(VerifyError):
    """Both members are continuum states; the overlap is a distribution."""


class QuadratureNotConverged(VerifyError):
    pass


class RegionUnsupported(VerifyError):
    pass


class GridTooCoarse(VerifyError):
    pass


@dataclass(frozen=True)
class OverlapReport:
    pair: tuple
    value: float
    expected: float
    abs_error: float
    method: str

    def to_json(self) -> dict:
        return {"pair": list(self.pair), "value": self.value, "expected": self.expected,
                "abs_error": self.abs_error, "method": self.method}


@dataclass(frozen=True)
class NormReport:
    n: int
    E: float
    Qn2: float
    norm_limit: float
    norm_quadrature: float
    tail_bound: float

    @property
    def an_qn(self) -> float:
        """A_n Q_n with A_n from quadrature."""
        return math.sqrt(self.norm_quadrature * self.Qn2)


@dataclass(frozen=True)
class ContinuumConstants:
    Delta: float
    Delta_minus: float
    A_plus: float
    A_minus: float
    B: float
    C_xi: float
    B_printed: float


# ------------------------------------------------------------ quadrature

def _panels(edges, order):
    x, w = np.polynomial.legendre.leggauss(order)
    lo, hi = edges[:-1], edges[1:]
    nodes = ((hi + lo) / 2)[:, None] + ((hi - lo) / 2)[:, None] * x
    weights = ((hi - lo) / 2)[:, None] * w
    return nodes.ravel(), weights.ravel()


def _graded_grid(m: float, R: float, order: int = 20):
    """Log-graded panels from HEAD_RADIUS to 1/m, then panels of width 1/m."""
    edges = np.geomspace(HEAD_RADIUS / m, 1.0 / m, 25)
    if R > 1.0 / m:
        n = max(2, int(math.ceil(R * m)))
        edges = np.concatenate([edges, np.linspace(1.0 / m, R, n + 1)[1:]])
    return _panels(edges, order)


def _origin_coefficients(params: ChannelParams, F: Callable[[np.ndarray], Doublet]):
    m = params.m
    rr = np.geomspace(ORIGIN_PROBES[0] / m, ORIGIN_PROBES[1] / m, 8)
    return rd.asymptotic_coefficients(params, rr, F(rr))


def _head(params: ChannelParams, ca, cb) -> float:
    """int_0^a of the product of the two leading small-r forms, a = HEAD_RADIUS/m."""
    a = HEAD_RADIUS / params.m
    t, w = _panels(np.linspace(0.0, 1.0, 11), 20)
    r, jac = a * t**6, 6 * a * t**5
    b1, b2 = rd.origin_basis(params, r)
    Fa = b1 * ca[0] + b2 * ca[1]
    Fb = b1 * cb[0] + b2 * cb[1]
    return float(np.sum(Fa.dot(Fb).real * jac * w))


def _tau(params, E):
    return math.sqrt((params.m - E) * (params.m + E))


# --------------------------------------------------------------- overlaps

def _mode(params, ext, E):
    def F(r):
        return sp.eigenfunction(params, ext, E, np.asarray(r, dtype=float))
    return F


def overlap_wronskian(params: ChannelParams, ext: ExtensionParam,
                      Ea: float, Eb: float) -> OverlapReport:
    """Overlap of the normalised eigenfunctions at Ea != Eb by the boundary Wronskians.

    At least one of them must be a bound state, so that I_inf is the
    Wronskian at a radius where that state has decayed.
    """
    check_extension(params, ext)
    if Ea == Eb:
        raise ValueError("the Wronskian method needs E != E'")
    m = params.m
    bound = [E for E in (Ea, Eb) if abs(E) < m]
    if not bound:
        raise NonDecayingPair("both states are in the continuum")
    R = DECAY_TAU_R / min(_tau(params, E) for E in bound)
    Fa, Fb = _mode(params, ext, Ea), _mode(params, ext, Eb)
    rR = np.array([R])
    i_inf = float(Fa(rR).wronskian(Fb(rR))[0].real) / (Ea - Eb)
    ca, cb = _origin_coefficients(params, Fa), _origin_coefficients(params, Fb)
    w0 = (ca[0] * cb[1] - ca[1] * cb[0]) * rd.origin_wronskian(params)
    i_0 = float(np.real(w0)) / (Ea - Eb)
    val = i_inf - i_0
    return OverlapReport((Ea, Eb), val, 0.0, abs(val), "WronskianBoundary")


def overlap_quadrature(params: ChannelParams, ext: ExtensionParam,
                       Ea: float, Eb: float) -> OverlapReport:
    """The same overlap by graded Gauss-Legendre quadrature (one member bound)."""
    check_extension(params, ext)
    m = params.m
    bound = [E for E in (Ea, Eb) if abs(E) < m]
    if not bound:
        raise NonDecayingPair("both states are in the continuum")
    R = TAIL_TAU_R / min(_tau(params, E) for E in bound)
    Fa, Fb = _mode(params, ext, Ea), _mode(params, ext, Eb)
    r, w = _graded_grid(m, R)
    body = float(np.sum(Fa(r).dot(Fb(r)).real * w))
    val = body + _head(params, _origin_coefficients(params, Fa), _origin_coefficients(params, Fb))
    expected = 1.0 if Ea == Eb else 0.0
    return OverlapReport((Ea, Eb), val, expected, abs(val - expected), "DirectQuadrature")


def orthonormality_matrix(params: ChannelParams, ext: ExtensionParam, n_states: int = 8,
                          method: str = "WronskianBoundary") -> tuple[np.ndarray, list[float]]:
    """Overlaps of the first n_states bound states.

    Off-diagonal entries use the requested method; the diagonal always comes
    from quadrature (the Wronskian method needs E != E').
    """
    states = sp.find_discrete_spectrum(params, ext, n_max=n_states - 1)
    E = [s.E for s in states]
    n = len(E)
    M = np.empty((n, n))
    for i in range(n):
        M[i, i] = overlap_quadrature(params, ext, E[i], E[i]).value
        for j in range(i + 1, n):
            if method == "WronskianBoundary":
                v = overlap_wronskian(params, ext, E[i], E[j]).value
            else:
                v = overlap_quadrature(params, ext, E[i], E[j]).value
            M[i, j] = M[j, i] = v
    return M, E


# ------------------------------------------------------------ norms

def discrete_norm(params: ChannelParams, ext: ExtensionParam, n: int) -> NormReport:
    """A_n^2 = int U^2 dr for the unnormalised U of level n, two ways.

    norm_limit is lim omega_ext(E')/(E_n - E') taken as a central difference;
    norm_quadrature integrates U^2 on a graded grid to R = 60/tau_n plus the
    analytic head near the origin.
    """
    states = sp.find_discrete_spectrum(params, ext, n_max=n)
    if len(states) <= n:
        raise QuadratureNotConverged(f"level {n} not found")
    st = states[n]
    E, m = st.E, params.m
    tau = _tau(params, E)
    h = LIMIT_STEP * tau * tau / m
    wp, wm = np.real(omega_ext_on_axis(params, ext, np.array([E + h, E - h])))
    norm_limit = float(-(wp - wm) / (2 * h))

    def U(r):
        return sp.bound_state_doublet(params, ext, E, np.asarray(r, dtype=float))

    R = TAIL_TAU_R / tau
    r, w = _graded_grid(m, R)
    c = _origin_coefficients(params, U)
    quad = float(np.sum(U(r).dot(U(r)).real * w)) + _head(params, c, c)
    # exponential envelope: int_R^oo |U|^2 ~ |U(R)|^2 / (2 tau)
    uR = U(np.array([R]))
    tail = float((np.abs(uR.f[0]) ** 2 + np.abs(uR.g[0]) ** 2) / (2 * tau)) / quad
    if not math.isfinite(quad) or quad <= 0:
        raise QuadratureNotConverged("non-positive norm")
    return NormReport(n, E, st.Qn2, norm_limit, quad, tail)


# ------------------------------------------------- continuum constants

def _delta(params: ChannelParams, ups: float, E: float) -> float:
    m, q = params.m, params.q
    k = math.sqrt((E - m) * (E + m))
    x = q * E / k
    # Gamma(1 + 2Y) e^{-pi x / 2} / |Gamma(1 + Y + i x)| in logs
    lg = sc.gammaln(1 + 2 * ups) - ups * math.log(2 * k / m) - math.pi * x / 2
    lg -= float(np.real(sc.loggamma(1 + ups + 1j * x)))
    return math.exp(lg)


def _a_const(params: ChannelParams, ups: float, E: float) -> float:
    m, q, z = params.m, params.q, params.zeta
    qc = abs(params.kappa)
    k = math.sqrt((E - m) * (E + m))
    d = _delta(params, ups, E)
    return d * d * 2 * math.pi * (qc + z * ups) * (qc * E + z * m * ups) * math.copysign(1, E) / (k * q * q)


def continuum_constants(params: ChannelParams, ext: ExtensionParam, E: float) -> ContinuumConstants:
    """Delta, A(+-gamma, E), B(gamma, E) and C_xi(E) in Region2.

    A carries sign(E) inside (q_cj E + zeta m Y), so that it also holds for
    E < -m.  B is the delta-coefficient of the (U1, U2') Wronskian limit,
    which includes the phase offset psi(r; gamma) - psi(r; -gamma) at E = E';
    B_printed is (|E|/k) Delta(gamma) Delta(-gamma) without that factor.
    """
    tag = check_extension(params, ext)
    if tag is not Region.REGION2:
        raise RegionUnsupported("continuum constants are given for Region2 only")
    m, q, g = params.m, params.q, params.gamma
    if not abs(E) > m * (1 + sp.THRESHOLD_GUARD):
        raise sp.OnThresholds("continuum constants need |E| > m")
    k = math.sqrt((E - m) * (E + m))
    dp, dm = _delta(params, g, E), _delta(params, -g, E)
    ap, am = _a_const(params, g, E), _a_const(params, -g, E)
    x = q * E / k
    ph = (-math.pi * g - float(np.imag(sc.loggamma(1 + g + 1j * x)))
          + float(np.imag(sc.loggamma(1 - g + 1j * x))))
    b_printed = abs(E) / k * dp * dm
    b = 2 * math.pi * dp * dm * (abs(E) / k * math.cos(ph) + math.copysign(g / q, E) * math.sin(ph))
    if ext.is_infinite:
        c = am
    else:
        xi = ext.value
        c = ap + 2 * xi * b + xi * xi * am
    return ContinuumConstants(dp, dm, ap, am, b, c, b_printed)


# ------------------------------------------------------------- Parseval

@dataclass(frozen=True)
class BumpDoublet:
    """Gaussian bump (a, b) exp(-(r - center)^2 / (2 width^2)), cut at 7 widths."""

    center: float
    width: float
    a: float = 1.0
    b: float = 0.0

    def __post_init__(self):
        if not (self.width > 0 and self.center - 7 * self.width > 0):
            raise ValueError("the bump must vanish near the origin")

    @property
    def support(self) -> tuple[float, float]:
        return (self.center - 7 * self.width, self.center + 7 * self.width)

    def __call__(self, r) -> Doublet:
        r = np.asarray(r, dtype=float)
        lo, hi = self.support
        env = np.where((r >= lo) & (r <= hi), np.exp(-0.5 * ((r - self.center) / self.width) ** 2), 0.0)
        return Doublet(self.a * env + 0j, self.b * env + 0j)


@dataclass(frozen=True)
class ParsevalReport:
    lhs: float
    discrete: float
    n_levels: int
    windows: tuple[float, ...]
    continuum: tuple[float, ...]
    defects: tuple[float, ...]
    monotone: bool = field(default=True)

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "discrete": self.discrete, "n_levels": self.n_levels,
                "windows": list(self.windows), "continuum": list(self.continuum),
                "defects": list(self.defects), "monotone": self.monotone}


def _continuum_modes(params: ChannelParams, ext: ExtensionParam, E: np.ndarray,
                     a: float, r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Real U(r; E) on r >= a for many energies at once.

    U(a; E) comes from the closed form; the radial system then carries all
    energies across the support in one vectorised integration.
    """
    S = solutions(params, ext)
    n = len(E)
    y0 = np.empty(2 * n)
    ra = np.array([a])
    for i, e in enumerate(E):
        u = S.U(ra, e)
        y0[i], y0[n + i] = u.f[0].real, u.g[0].real
    q, k, m = params.q, params.kappa, params.m

    def rhs(x, y):
        f, g = y[:n], y[n:]
        return np.concatenate([-k * f / x + (E + m + q / x) * g, k * g / x - (E - m + q / x) * f])

    order = np.argsort(r)
    sol = integrate.solve_ivp(rhs, (a, float(r[order[-1]])), y0, method="DOP853",
                              t_eval=r[order], rtol=1e-10, atol=1e-12 * max(1.0, float(np.max(np.abs(y0)))))
    if not sol.success:
        raise QuadratureNotConverged(sol.message)
    f = np.empty((n, r.size))
    g = np.empty((n, r.size))
    f[:, order], g[:, order] = sol.y[:n], sol.y[n:]
    return f, g


def _continuum_projection(params, ext, fv, a, r, w, E):
    """Q^2(E) |int U(r; E) F dr|^2 for each energy."""
    f, g = _continuum_modes(params, ext, E, a, r)
    proj = (f * fv.f.real + g * fv.g.real) @ w
    return proj**2 * sp.continuum_density(params, ext, E)


def parseval_check(params: ChannelParams, ext: ExtensionParam, F: BumpDoublet,
                   windows: Sequence[float] = (2.5, 5.0, 10.0), n_max: int = 30,
                   dt: float = 0.05, order: int = 16, strict: bool = True) -> ParsevalReport:
    """Parseval defect 1 - (sum |phi_n|^2 + int |phi(E)|^2 dE) / int |F|^2 per window.

    A window W keeps |E| <= W m.  The continuum integral runs in k = t^2
    (t uniform panels), which absorbs the k^(1 - 2 gamma) threshold
    behaviour of the integrand.
    """
    check_extension(params, ext)
    m = params.m
    windows = tuple(sorted(windows))
    a, b = F.support
    r, w = _panels(np.linspace(a, b, 9), 24)
    fv = F(r)
    lhs = float(np.sum((np.abs(fv.f) ** 2 + np.abs(fv.g) ** 2) * w))

    states = sp.find_discrete_spectrum(params, ext, n_max=n_max)
    disc = 0.0
    for st in states:
        u = sp.bound_state_doublet(params, ext, st.E, r)
        disc += st.Qn2 * float(np.sum((u.f.real * fv.f.real + u.g.real * fv.g.real) * w)) ** 2

    t_lo = math.sqrt(2e-4 * m)
    cont = []
    total = 0.0
    t_prev = t_lo
    for W in windows:
        t_hi = math.sqrt(m * math.sqrt(W * W - 1))
        n_pan = max(1, int(math.ceil((t_hi - t_prev) / (dt * math.sqrt(m)))))
        t, wt = _panels(np.linspace(t_prev, t_hi, n_pan + 1), order)
        k = t * t
        E = np.sqrt(m * m + k * k)
        dE = (k / E) * 2 * t * wt
        for sgn in (1.0, -1.0):
            total += float(np.sum(_continuum_projection(params, ext, fv, a, r, w, sgn * E) * dE))
        cont.append(total)
        t_prev = t_hi
    defects = tuple(1 - (disc + c) / lhs for c in cont)
    mono = all(abs(defects[i + 1]) < abs(defects[i]) for i in range(len(defects) - 1))
    if strict and not mono:
        raise GridTooCoarse(f"defect not decreasing under window growth: {defects}")
    return ParsevalReport(lhs, disc, len(states), windows, tuple(cont), defects, mono)
