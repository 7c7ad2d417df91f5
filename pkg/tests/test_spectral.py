import math

import numpy as np
import pytest

from supercrit import extensions as ex
from supercrit import spectral as sp
from supercrit.extensions import ExtensionParam
from supercrit.radial import ChannelParams, Doublet


def bump(center, width):
    def F(r):
        r = np.asarray(r, dtype=float)
        x = (r - center) / width
        env = np.where(np.abs(x) < 1, np.exp(-1 / np.maximum(1 - x * x, 1e-300)), 0.0)
        return Doublet(env + 0j, 0.5 * x * env + 0j)
    return F, (center - width, center + width)


# ------------------------------------------------------------ closed form

def test_closed_form_levels_kappa_signs():
    lv = sp.closed_form_levels(ChannelParams(0.5, -1), 3)
    assert lv[0] == (0, pytest.approx(math.sqrt(0.75)))
    assert [n for n, _ in sp.closed_form_levels(ChannelParams(0.5, 1), 3)] == [1, 2, 3]


def test_closed_form_refused_for_general_xi():
    with pytest.raises(sp.FormulaNotApplicable):
        sp.closed_form_levels(ChannelParams(0.95, -1), 3, ExtensionParam.xi(0.3))


def test_s_variable_roundtrip():
    p = ChannelParams(0.7, 1)
    E = np.array([-0.9, 0.0, 0.4, 0.999])
    assert np.allclose(sp.energy_from_s(p, sp.s_from_energy(p, E)), E, rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize("q, kappa", [(0.5, -1), (0.5, 1), (0.8, -2)])
def test_root_finder_reproduces_closed_form(q, kappa):
    p = ChannelParams(q, kappa)
    got = [s.E for s in sp.find_discrete_spectrum(p, n_max=6)]
    want = [E for _, E in sp.closed_form_levels(p, 7)][:len(got)]
    assert len(got) == 7
    assert np.allclose(got, want, rtol=1e-10)


def test_window_restricts_levels():
    p = ChannelParams(0.5, -1)
    st = sp.find_discrete_spectrum(p, window=(0.95, 0.99), n_max=None)
    ref = [E for _, E in sp.closed_form_levels(p, 20) if 0.95 < E < 0.99]
    assert np.allclose([s.E for s in st], ref, rtol=1e-10)


def test_window_at_accumulation_point_needs_n_max():
    with pytest.raises(sp.WindowTooCloseToAccumulation):
        sp.find_discrete_spectrum(ChannelParams(0.5, -1), window=(0.9, 1.0), n_max=None)


def test_residue_weight_positive():
    st = sp.find_discrete_spectrum(ChannelParams(0.95, -1), ExtensionParam.xi(0.7), n_max=4)
    assert all(s.Qn2 > 0 for s in st)


def test_overcritical_levels_are_real_roots():
    p = ChannelParams(1.2, -1)
    ext = ExtensionParam.theta(0.4)
    st = sp.find_discrete_spectrum(p, ext, n_max=5)
    assert len(st) == 6
    vals = np.abs(ex.omega_ext_on_axis(p, ext, np.array([s.E for s in st])))
    assert np.all(vals < 1e-8)


# -------------------------------------------------------------- density

@pytest.mark.parametrize("params, ext", [(ChannelParams(0.5, -1), ExtensionParam.unique()),
                                         (ChannelParams(0.95, -1), ExtensionParam.xi(0.7)),
                                         (ChannelParams(1.2, -1), ExtensionParam.theta(0.3))])
def test_density_is_limit_from_above(params, ext):
    for E in (1.5, -2.0):
        d = sp.continuum_density(params, ext, E).density
        assert d > 0
        assert sp.density_offset(params, ext, E, 1e-9) == pytest.approx(d, rel=1e-6)


def test_density_refuses_thresholds():
    with pytest.raises(sp.OnThresholds):
        sp.continuum_density(ChannelParams(0.5, -1), ExtensionParam.unique(), 1.0 + 1e-10)


def test_theta_phase_defines_unimodular_omega_tilde():
    p = ChannelParams(1.2, -1)
    E = np.linspace(-0.9, 0.9, 7)
    th = sp.theta_phase(p, E)
    wt = sp.omega_tilde_overcritical(p, E)
    assert np.allclose(np.exp(-2j * th), wt, atol=1e-12)
    with pytest.raises(sp.NotOvercritical):
        sp.omega_tilde_overcritical(ChannelParams(0.5, -1), E)


# ----------------------------------------------------- Green's function

def test_greens_function_symmetric():
    p = ChannelParams(0.95, -1)
    ext = ExtensionParam.xi(0.7)
    W = 0.3 + 0.4j
    assert np.allclose(sp.greens_function(p, ext, 0.7, 1.9, W),
                       sp.greens_function(p, ext, 1.9, 0.7, W).T, rtol=1e-12)


def test_greens_function_jump_on_diagonal():
    # G(c + 0, c) - G(c - 0, c) is the symplectic unit of the system
    p = ChannelParams(1.2, -1)
    ext = ExtensionParam.theta(0.2)
    W = 0.1 + 0.5j
    S = ex.solutions(p, ext)
    c = np.array([1.3])
    u, v = S.U(c, W), S.V(c, W)
    U = np.array([u.f[0], u.g[0]])
    V = np.array([v.f[0], v.g[0]])
    jump = (np.outer(V, U) - np.outer(U, V)) / S.omega(W)
    assert np.allclose(jump, [[0, 1], [-1, 0]], atol=1e-10)


def test_greens_refuses_real_w():
    with pytest.raises(sp.RealAxisW):
        sp.greens_function(ChannelParams(0.5, -1), ExtensionParam.unique(), 1.0, 2.0, 0.4)


@pytest.mark.parametrize("params, ext", [(ChannelParams(0.5, -1), ExtensionParam.unique()),
                                         (ChannelParams(1.0, -1), ExtensionParam.xi(0.3)),
                                         (ChannelParams(1.2, -1), ExtensionParam.theta(0.9))])
def test_resolvent_inverts_h_minus_w(params, ext):
    W = 0.3 + 0.4j
    F, sup = bump(2.0, 0.8)
    r = np.linspace(1.4, 2.6, 7)

    def psi(x):
        return sp.apply_resolvent(params, ext, W, F, sup, x)
    res = [sp.apply_hamiltonian(params, r, psi, h) - psi(r) * W - F(r) for h in (0.02, 0.01)]
    err = [np.sqrt(np.sum(np.abs(d.f) ** 2 + np.abs(d.g) ** 2)) for d in res]
    scale = np.sqrt(np.sum(np.abs(F(r).f) ** 2 + np.abs(F(r).g) ** 2))
    assert err[1] / scale < 1e-4
    assert 3.0 < err[0] / err[1] < 5.0


# ---------------------------------------------------------- eigenfunction

def test_eigenfunction_normalised_and_decaying():
    p = ChannelParams(0.5, -1)
    E0 = sp.find_discrete_spectrum(p, n_max=0)[0].E
    r = np.linspace(1e-6, 60, 60001)
    psi = sp.eigenfunction(p, ExtensionParam.unique(), E0, r)
    dens = np.abs(psi.f) ** 2 + np.abs(psi.g) ** 2
    assert np.trapezoid(dens, r) == pytest.approx(1.0, abs=1e-4)
    assert dens[-1] < 1e-20


def test_eigenfunction_rejects_non_levels():
    p = ChannelParams(0.5, -1)
    with pytest.raises(sp.NotASpectrumPoint):
        sp.eigenfunction(p, ExtensionParam.unique(), 0.5, np.array([1.0]))
    with pytest.raises(sp.OnThresholds):
        sp.eigenfunction(p, ExtensionParam.unique(), 1.0, np.array([1.0]))


def test_continuum_eigenfunction_is_real():
    p = ChannelParams(0.95, -1)
    psi = sp.eigenfunction(p, ExtensionParam.xi(0.7), 1.8, np.array([0.5, 3.0]))
    assert np.all(psi.f.imag == 0) and np.all(np.isfinite(psi.f.real))


# ---------------------------------------------------------------- diving

def test_dive_parameter_places_level_at_target():
    p = ChannelParams(0.95, -1)
    ext, _ = sp.dive_parameter(p, -0.5, *sp._search_range(p, -0.5))
    levels = [s.E for s in sp.find_discrete_spectrum(p, ext, window=(-0.99, 0.9), n_max=None)]
    assert min(abs(np.array(levels) + 0.5)) < 1e-9


def test_dive_refused_in_region1():
    with pytest.raises(sp.FormulaNotApplicable):
        sp.dive_parameter(ChannelParams(0.5, -1), -0.5, -1, 1)


# ------------------------------------------------- parameter continuity

@pytest.mark.parametrize("xi", [-2.0, -0.5, 0.0, 0.5, 2.0])
def test_levels_continuous_in_xi(xi):
    p = ChannelParams(0.95, -1)
    a = [s.E for s in sp.find_discrete_spectrum(p, ExtensionParam.xi(xi), n_max=3)]
    b = [s.E for s in sp.find_discrete_spectrum(p, ExtensionParam.xi(xi + 1e-3), n_max=3)]
    assert np.max(np.abs(np.subtract(a, b))) < 5e-3


@pytest.mark.parametrize("theta", [0.1, 1.0, 2.5])
def test_levels_continuous_in_theta(theta):
    p = ChannelParams(1.2, -1)
    a = [s.E for s in sp.find_discrete_spectrum(p, ExtensionParam.theta(theta), n_max=3)]
    b = [s.E for s in sp.find_discrete_spectrum(p, ExtensionParam.theta(theta + 1e-3), n_max=3)]
    assert np.max(np.abs(np.subtract(a, b))) < 5e-3
    # increasing theta lowers every level
    assert all(y < x for x, y in zip(a, b))


def test_critical_zeta_plus_has_no_level_at_zero_for_xi_infinity():
    st = sp.find_discrete_spectrum(ChannelParams(1.0, 1), ExtensionParam.xi("inf"), n_max=2)
    assert st[0].E == pytest.approx(1 / math.sqrt(2), rel=1e-10)
