"""
Spectral data of one channel and one self-adjoint extension.

Bound states are the zeros of omega_ext(E) on (-m, m).  The search runs in
the variable s = q E / tau, tau = sqrt(m^2 - E^2), in which the levels
accumulating at E = m are nearly equally spaced (s_n = n + gamma in Region1).
Poles that the Gamma and digamma factors of omega put on the real axis are
removed by multiplying with an entire function vanishing at them, so that the
bracketing function changes sign only at genuine zeros (candidates are still
validated against omega_ext itself).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize
from scipy import special as sc

from . import radial as rd
from .extensions import (ExtensionParam, Region, check_extension, classify,
                         omega_ext, omega_ext_on_axis, solutions)
from .radial import ChannelParams, Doublet

S_STEP = 0.01
S_LINEAR = 5.0
S_GEOMETRIC = 1.02
S_MAX = 2e5
THRESHOLD_GUARD = 1e-8
RESIDUE_STEP = 1e-4
MATCH_TAU_R = 3.0


class SpectralError(ArithmeticError):
    pass


class FormulaNotApplicable(SpectralError):
    pass


class WindowTooCloseToAccumulation(SpectralError):
    pass


class RootRefinementFailed(SpectralError):
    pass


class OnThresholds(SpectralError):
    pass


class NotOvercritical(SpectralError):
    pass


class RealAxisW(SpectralError):
    pass


class NotASpectrumPoint(SpectralError):
    pass


@dataclass(frozen=True)
class BoundState:
    n: int
    E: float
    Qn2: float


@dataclass(frozen=True)
class DensitySample:
    E: float
    density: float


@dataclass
class SpectrumResult:
    states: list
    density: list
    metadata: dict = field(default_factory=dict)


# ------------------------------------------------------------ closed form

def closed_form_levels(params: ChannelParams, n_max: int, ext: ExtensionParam | None = None):
    """E_n = m / sqrt(1 + q^2/(n + gamma)^2) for the Coulomb-like extensions.

    Applies to Region1, Region2 with xi = 0, and the critical charge with
    xi = oo (gamma = 0).  Returns [(n, E_n)] with n starting at 1 for zeta = +1.
    """
    tag = classify(params).tag
    if ext is None:
        ext = ExtensionParam.unique() if tag is Region.REGION1 else None
    ok = (tag is Region.REGION1
          or (tag is Region.REGION2 and ext is not None and ext.variant == "xi" and ext.value == 0.0)
          or (tag is Region.CRITICAL and ext is not None and ext.is_infinite))
    if not ok:
        raise FormulaNotApplicable(f"no closed form for {tag.value} with "
                                   f"{ext.label() if ext else 'no extension'}")
    g = params.gamma
    start = 1 if params.zeta > 0 else 0
    out = []
    for n in range(start, n_max + 1):
        N = n + g
        # N = 0 only at the critical charge, where the level sits at E = 0
        out.append((n, params.m * N / math.sqrt(N * N + params.q**2)))
    return out


# ------------------------------------------------------------ s variable

def energy_from_s(params: ChannelParams, s):
    s = np.asarray(s, dtype=float)
    return params.m * s / np.sqrt(params.q**2 + s**2)


def s_from_energy(params: ChannelParams, E):
    E = np.asarray(E, dtype=float)
    tau = np.sqrt((params.m - E) * (params.m + E))
    return params.q * E / tau


def _pole_killer(params: ChannelParams, tag: Region, s):
    """Entire function of s vanishing at the real poles of omega; positive for s << 0."""
    if tag is Region.CRITICAL:
        arg = -s if params.zeta < 0 else 1 - s
        return sc.rgamma(arg)
    # for zeta = +1 the pole at s = -gamma is cancelled by a zero of the
    # rational factor, so only s = k - gamma with k >= 1 are poles
    shift = 0.0 if params.zeta < 0 else 1.0
    return sc.rgamma(shift - params.gamma - s)


def _bracket_function(params: ChannelParams, ext: ExtensionParam, tag: Region):
    """Real function of s, continuous across the poles of omega_ext, with the
    zeros of omega_ext among its sign changes."""
    m = params.m

    if tag is Region.OVERCRITICAL:
        th = ext.value

        def f(s):
            E = energy_from_s(params, s)
            wt = params.q / (2j * params.sigma) * rd.omega(params, E.astype(complex))
            w = np.exp(-2j * th) * np.conj(wt)
            return w.imag, w.real > 0
        return f

    if ext.is_infinite:
        # zeros sit at poles of omega: omega_oo is continuous there
        def f(s):
            E = energy_from_s(params, s)
            return np.real(omega_ext_on_axis(params, ext, E)), None
        return f

    if tag is Region.CRITICAL:
        def f(s):
            E = energy_from_s(params, s)
            v = np.real(omega_ext_on_axis(params, ext, E))
            return np.where(s < -1, v, v * _pole_killer(params, tag, s)), None
        return f

    if tag is Region.REGION1 or ext.value == 0.0:
        return lambda s: (_coulomb_bracket(params, s), None)

    def f(s):
        E = energy_from_s(params, s)
        v = np.real(omega_ext_on_axis(params, ext, E))
        # beyond s < -gamma - 1 omega has no poles; avoid overflow of 1/Gamma
        return np.where(s < -params.gamma - 1, v, v * _pole_killer(params, tag, s)), None
    return f


def _coulomb_bracket(params: ChannelParams, s):
    """omega~ on the gap with Gamma(-gamma - s) removed, written through its
    entire factors so that it stays regular at 2 gamma = n."""
    s = np.asarray(s, dtype=float)
    q, k, m, g = params.q, params.kappa, params.m, params.gamma
    rho = np.sqrt(q * q + s * s)
    E, tau = m * s / rho, m * q / rho
    num = q * (m - E) - (k + g) * tau
    den = q * (m - E) - (k - g) * tau
    with np.errstate(all="ignore"):
        out = sc.rgamma(g - s) * num / den * (2 * tau / m) ** (-2 * g)
        if params.zeta > 0:
            # the zero of num at s = -gamma cancels the first Gamma pole
            out = out / (-g - s)
    return out


def _s_mesh(s_lo: float, s_hi: float) -> np.ndarray:
    pts = []
    if s_lo < -S_LINEAR:
        n = int(math.ceil(math.log(-s_lo / S_LINEAR) / math.log(S_GEOMETRIC)))
        pts.append(-S_LINEAR * S_GEOMETRIC ** np.arange(n, 0, -1))
        pts[-1][0] = s_lo
    a = max(s_lo, -S_LINEAR)
    if s_hi > a:
        # an irrational offset keeps nodes off the integers where digamma poles sit
        n = int(math.ceil((s_hi - a) / S_STEP))
        pts.append(np.linspace(a, s_hi, n + 1) + 1e-3 * math.sqrt(2) * S_STEP)
    mesh = np.concatenate(pts) if pts else np.array([s_lo, s_hi])
    mesh = mesh[(mesh >= s_lo) & (mesh <= s_hi)]
    return np.unique(np.concatenate([[s_lo], mesh, [s_hi]]))


def _omega_real(params, ext, E):
    return float(np.real(omega_ext_on_axis(params, ext, np.array([E]))[0]))


def _is_genuine_root(params, ext, E) -> bool:
    """omega_ext changes sign across E and is small there (not a pole)."""
    tau = math.sqrt(max((params.m - E) * (params.m + E), 0.0))
    h = max(1e-6 * tau * tau / params.m, 4e-16 * params.m)
    lo, mid, hi = (_omega_real(params, ext, E - h), _omega_real(params, ext, E),
                   _omega_real(params, ext, E + h))
    if not (np.isfinite(lo) and np.isfinite(hi)):
        return False
    if lo * hi > 0:
        return False
    return abs(mid) <= max(abs(lo), abs(hi))


def _is_genuine_bracket_root(g, s0, va, vb) -> bool:
    """A sign change of the bracket function that is a zero rather than a pole.

    brentq homes in on a pole just as happily; there |g| ends up far above
    its values at the mesh nodes, at a zero far below.  Local sign tests are
    useless near -m where omega is noisy at the 1e-13 level.
    """
    mid = g(s0)
    return math.isfinite(mid) and abs(mid) <= max(abs(va), abs(vb))


def residue_weight(params: ChannelParams, ext: ExtensionParam, E: float) -> float:
    """Q_n^2 = -1/omega_ext'(E_n) by five-point central differences."""
    tau2 = (params.m - E) * (params.m + E)
    h = RESIDUE_STEP * tau2 / params.m
    pts = E + h * np.array([-2.0, -1.0, 1.0, 2.0])
    v = np.real(omega_ext_on_axis(params, ext, pts))
    d = (v[0] - 8 * v[1] + 8 * v[2] - v[3]) / (12 * h)
    return float(-1 / d)


def _roots_on_mesh(params, ext, tag, mesh):
    f = _bracket_function(params, ext, tag)
    with np.errstate(all="ignore"):
        vals, accept = f(mesh)
    roots = []
    sgn = np.sign(vals)
    for i in np.flatnonzero((sgn[:-1] * sgn[1:] < 0)):
        a, b = mesh[i], mesh[i + 1]
        if not (np.isfinite(vals[i]) and np.isfinite(vals[i + 1])):
            continue

        def g(x):
            with np.errstate(all="ignore"):
                v = float(f(np.array([x]))[0][0])
                if not math.isfinite(v):
                    v = float(f(np.array([x * (1 + 1e-13) + 1e-300]))[0][0])
            return v
        try:
            s0 = optimize.brentq(g, a, b, xtol=1e-15 * max(1.0, abs(a)), rtol=1e-15, maxiter=200)
        except (ValueError, RuntimeError) as exc:
            raise RootRefinementFailed(str(exc)) from exc
        if accept is not None:
            with np.errstate(all="ignore"):
                _, ok = f(np.array([s0]))
            if not ok[0]:
                continue
        E0 = float(energy_from_s(params, s0))
        if abs(E0) >= params.m:
            continue
        if _is_genuine_bracket_root(g, s0, vals[i], vals[i + 1]):
            roots.append(E0)
    return roots


def find_discrete_spectrum(params: ChannelParams, ext: ExtensionParam | None = None,
                           window: tuple[float, float] | None = None,
                           n_max: int | None = 10) -> list[BoundState]:
    """Bound states in the window, lowest first, at most n_max + 1 of them.

    With no window the search starts just above -m and extends towards m until
    n_max + 1 levels are found.
    """
    ext = ext if ext is not None else _default(params)
    tag = check_extension(params, ext)
    m = params.m
    if window is None:
        lo, hi = -m * (1 - 1e-12), None
    else:
        lo, hi = window
        if not (-m <= lo < hi <= m):
            raise ValueError("window must lie inside [-m, m]")
        lo = max(lo, -m * (1 - 1e-12))
    s_lo = float(s_from_energy(params, lo))
    if hi is not None and hi >= m * (1 - 1e-15):
        hi = None
        if n_max is None:
            raise WindowTooCloseToAccumulation("infinitely many levels below m; give n_max")
    want = None if n_max is None else n_max + 1
    if hi is not None:
        s_hi = float(s_from_energy(params, hi))
        roots = _roots_on_mesh(params, ext, tag, _s_mesh(s_lo, s_hi))
    else:
        s_hi = max(want + 10.0, 10.0)
        roots = _roots_on_mesh(params, ext, tag, _s_mesh(s_lo, s_hi))
        while len(roots) < want:
            if s_hi > S_MAX:
                raise WindowTooCloseToAccumulation(
                    f"only {len(roots)} levels resolvable below m (requested {want})")
            new_hi = 2 * s_hi
            roots += _roots_on_mesh(params, ext, tag, _s_mesh(s_hi, new_hi))
            s_hi = new_hi
    roots = sorted(set(roots))
    if want is not None:
        roots = roots[:want]
    return [BoundState(i, E, residue_weight(params, ext, E)) for i, E in enumerate(roots)]


def _default(params):
    from .extensions import default_extension
    return default_extension(params)


# -------------------------------------------------------------- density

def continuum_density(params: ChannelParams, ext: ExtensionParam, E):
    """Q^2(E) = (1/pi) Im 1/omega_ext(E + i0) on |E| > m from the real-axis forms.

    Scalar E gives a DensitySample; an array gives an array of densities.
    """
    check_extension(params, ext)
    Ea = np.asarray(E, dtype=float)
    if np.any(np.abs(Ea) < params.m * (1 + THRESHOLD_GUARD)):
        raise OnThresholds("density is evaluated only for |E| > m (1 + 1e-8)")
    dens = np.imag(1 / omega_ext_on_axis(params, ext, Ea)) / np.pi
    if Ea.ndim == 0:
        return DensitySample(float(Ea), float(dens))
    return np.asarray(dens, dtype=float)


def density_offset(params: ChannelParams, ext: ExtensionParam, E: float, eps: float) -> float:
    """(1/pi) Im 1/omega_ext(E + i eps) from the complex closed form."""
    return float(np.imag(1 / omega_ext(params, ext, E + 1j * eps)) / np.pi)


# -------------------------------------------------------------- Theta(E)

def omega_tilde_overcritical(params: ChannelParams, E):
    if classify(params).tag is not Region.OVERCRITICAL:
        raise NotOvercritical("Theta(E) exists only above the critical charge")
    E = np.asarray(E, dtype=float)
    return params.q / (2j * params.sigma) * rd.omega(params, E.astype(complex))


def theta_phase(params: ChannelParams, E):
    """Theta(E) with omega~(E) = exp(-2 i Theta(E)), unwrapped along the sorted grid."""
    E = np.atleast_1d(np.asarray(E, dtype=float))
    if np.any(np.abs(E) >= params.m):
        raise ValueError("Theta(E) is defined on (-m, m)")
    order = np.argsort(E)
    wt = omega_tilde_overcritical(params, E[order])
    dev = np.max(np.abs(np.abs(wt) - 1))
    if dev > 1e-10:
        raise SpectralError(f"omega~ not unimodular on the gap (deviation {dev:.2e})")
    th = -np.unwrap(np.angle(wt)) / 2
    out = np.empty_like(th)
    out[order] = th
    return out


# -------------------------------------------------------- Green's function

def greens_function(params: ChannelParams, ext: ExtensionParam, r: float, rp: float, W: complex):
    """2x2 kernel G(r, r'; W); at r = r' the (c - 0, c + 0) ordering U(c) x V(c) is used."""
    W = complex(W)
    if W.imag <= 0:
        raise RealAxisW("Green's function needs Im W > 0")
    S = solutions(params, ext)
    om = S.omega(W)
    if r > rp:
        a, b = S.V(np.array([r]), W), S.U(np.array([rp]), W)
    else:
        a, b = S.U(np.array([r]), W), S.V(np.array([rp]), W)
    va = np.array([a.f[0], a.g[0]])
    vb = np.array([b.f[0], b.g[0]])
    return np.outer(va, vb) / om


def diagonal_m(params: ChannelParams, ext: ExtensionParam, c: float, W: complex):
    """M(c; W) = G(c - 0, c + 0; W)."""
    return greens_function(params, ext, c, c, W)


def _gauss_panels(a: float, b: float, panels: int, order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def apply_resolvent(params: ChannelParams, ext: ExtensionParam, W: complex,
                    F, support: tuple[float, float], r, panels: int = 24, order: int = 24):
    """Psi(r) = int G(r, r'; W) F(r') dr' for F supported in [a, b].

    Psi = (1/omega) [V(r) int_0^r U.F + U(r) int_r^oo V.F], each integral by
    composite Gauss-Legendre on the part of the support it covers.
    """
    W = complex(W)
    if W.imag <= 0:
        raise RealAxisW("the resolvent needs Im W > 0")
    S = solutions(params, ext)
    om = S.omega(W)
    a, b = support
    r = np.atleast_1d(np.asarray(r, dtype=float))
    nodes, weights, owner, side = [], [], [], []
    for i, ri in enumerate(r):
        lo_hi = min(max(ri, a), b)
        for part, (x0, x1) in enumerate(((a, lo_hi), (lo_hi, b))):
            if x1 - x0 <= 0:
                continue
            n_pan = max(1, int(math.ceil(panels * (x1 - x0) / (b - a))))
            x, w = _gauss_panels(x0, x1, n_pan, order)
            nodes.append(x)
            weights.append(w)
            owner.append(np.full(x.size, i))
            side.append(np.full(x.size, part))
    nodes = np.concatenate(nodes)
    weights = np.concatenate(weights)
    owner = np.concatenate(owner)
    side = np.concatenate(side)
    fv = F(nodes)
    u = S.U(nodes, W)
    v = S.V(nodes, W)
    uf = (u.f * fv.f + u.g * fv.g) * weights
    vf = (v.f * fv.f + v.g * fv.g) * weights
    right = np.zeros(r.size, dtype=complex)
    left = np.zeros(r.size, dtype=complex)
    np.add.at(left, owner[side == 0], uf[side == 0])
    np.add.at(right, owner[side == 1], vf[side == 1])
    ur = S.U(r, W)
    vr = S.V(r, W)
    return Doublet((vr.f * left + ur.f * right) / om, (vr.g * left + ur.g * right) / om)


def apply_hamiltonian(params: ChannelParams, r, psi_fn, h: float) -> Doublet:
    """(h Psi)(r) with central-difference derivatives of step h."""
    r = np.asarray(r, dtype=float)
    p, mns, mid = psi_fn(r + h), psi_fn(r - h), psi_fn(r)
    df = (p.f - mns.f) / (2 * h)
    dg = (p.g - mns.g) / (2 * h)
    q, k, m = params.q, params.kappa, params.m
    f, g = mid.f, mid.g
    return Doublet(-dg + k * g / r - q * f / r + m * f, df + k * f / r - q * g / r - m * g)


# ------------------------------------------------------------ eigenfunction

def _match_decaying(params, U: Doublet, D: Doublet) -> complex:
    num = np.sum(U.f * np.conj(D.f) + U.g * np.conj(D.g))
    den = np.sum(np.abs(D.f) ** 2 + np.abs(D.g) ** 2)
    return num / den


def bound_state_doublet(params: ChannelParams, ext: ExtensionParam, E: float, r) -> Doublet:
    """The extension's U(r; E) at a bound-state energy, unnormalised.

    The U-form (growing exponentials cancelling) is used for tau r below
    MATCH_TAU_R; beyond, the decaying Tricomi bracket matched at that radius.
    """
    r = np.asarray(r, dtype=float)
    S = solutions(params, ext)
    tau = math.sqrt((params.m - E) * (params.m + E))
    rs = MATCH_TAU_R / tau
    f = np.empty(r.shape, dtype=complex)
    g = np.empty(r.shape, dtype=complex)
    inner = r <= rs
    if inner.any():
        u = S.U(r[inner], E)
        f[inner], g[inner] = u.f, u.g
    if (~inner).any():
        probe = rs * np.array([0.8, 0.9, 1.0])
        c = _match_decaying(params, S.U(probe, E), rd.decaying_doublet(probe, params, E))
        d = rd.decaying_doublet(r[~inner], params, E) * c
        f[~inner], g[~inner] = d.f, d.g
    # every extension's U is real at real E
    return Doublet(f.real + 0j, g.real + 0j)


def eigenfunction(params: ChannelParams, ext: ExtensionParam, E: float, r,
                  root_tol: float = 1e-8) -> Doublet:
    """Normalised eigenfunction Q U(r; E) for a bound state or a continuum point."""
    check_extension(params, ext)
    m = params.m
    r = np.asarray(r, dtype=float)
    if abs(E) > m:
        if abs(E) < m * (1 + THRESHOLD_GUARD):
            raise OnThresholds("threshold energies are not evaluated")
        S = solutions(params, ext)
        Q = math.sqrt(continuum_density(params, ext, E).density)
        u = S.U(r, E)
        return Doublet(u.f.real * Q + 0j, u.g.real * Q + 0j)
    if abs(E) == m:
        raise OnThresholds("threshold energies are not evaluated")
    if not _is_genuine_root(params, ext, E):
        raise NotASpectrumPoint(f"E = {E} is not a bound-state energy")
    Q = math.sqrt(residue_weight(params, ext, E))
    return bound_state_doublet(params, ext, E, r) * Q


# --------------------------------------------------------- diving search

def lowest_level(params: ChannelParams, ext: ExtensionParam) -> float | None:
    st = find_discrete_spectrum(params, ext, n_max=0)
    return st[0].E if st else None


def dive_parameter(params: ChannelParams, target: float, lo: float, hi: float,
                   tol: float = 1e-12, maxiter: int = 200) -> tuple[ExtensionParam, float]:
    """Extension parameter (xi or theta) at which a level sits at E = target.

    The bracketing function is the real omega_ext(target) as a function of
    the parameter; for xi it is linear, for theta it is tan(Theta - theta).
    Returns the parameter and the lowest level of that extension.
    """
    tag = classify(params).tag
    if tag is Region.OVERCRITICAL:
        Th = float(theta_phase(params, np.array([target]))[0])

        def f(t):
            return math.sin(Th - t)
        make = ExtensionParam.theta
    elif tag in (Region.REGION2, Region.CRITICAL):
        base = _omega_real(params, ExtensionParam.xi(0.0), target)
        scale = (2 * params.gamma / params.q) if tag is Region.REGION2 else 1 / params.q_cj

        def f(x):
            return base - scale * x
        make = ExtensionParam.xi
    else:
        raise FormulaNotApplicable("Region1 has no extension parameter")
    x = optimize.brentq(f, lo, hi, xtol=tol, maxiter=maxiter)
    ext = make(x)
    return ext, lowest_level(params, ext)


def bisect_dive(params: ChannelParams, target: float, span: float = 0.3,
                tol: float = 1e-12, maxiter: int = 200) -> ExtensionParam:
    """Bisection on the extension parameter for the lowest level to sit at target.

    Levels move monotonically with the parameter and leave the gap through
    E = -m.  One end of the bracket puts a level between -m and target (from
    omega_ext at that energy); the other end, span away, has its lowest level
    above target.  The predicate is "lowest level below target".
    """
    m = params.m
    E_b = -m + 0.1 * (target + m)
    tag = classify(params).tag
    ext_b, _ = dive_parameter(params, E_b, *_search_range(params, E_b))
    make = ExtensionParam.theta if tag is Region.OVERCRITICAL else ExtensionParam.xi
    hi = ext_b.value

    def below(x):
        E0 = lowest_level(params, make(x))
        return E0 is not None and E0 < target

    if not below(hi):
        raise RootRefinementFailed("could not place a level below the target")
    for lo in (hi - span, hi + span):
        if not below(lo):
            break
    else:
        raise RootRefinementFailed("no parameter with the lowest level above target")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if below(mid):
            hi = mid
        else:
            lo = mid
        if abs(hi - lo) < tol:
            break
    return make(0.5 * (lo + hi))


def _search_range(params: ChannelParams, E: float) -> tuple[float, float]:
    """A parameter interval containing the extension with a level at E."""
    tag = classify(params).tag
    if tag is Region.OVERCRITICAL:
        Th = float(theta_phase(params, np.array([E]))[0]) % math.pi
        return Th - 1.0, Th + 1.0
    base = _omega_real(params, ExtensionParam.xi(0.0), E)
    scale = (2 * params.gamma / params.q) if tag is Region.REGION2 else 1 / params.q_cj
    x = base / scale
    return x - 1.0, x + 1.0
