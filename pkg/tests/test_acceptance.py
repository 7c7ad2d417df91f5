"""One test per acceptance criterion; each records a PASS/FAIL line for the summary."""
import math

import mpmath as mp
import numpy as np
import pytest

from supercrit import extensions as ex
from supercrit import radial as rd
from supercrit import specfun as sf
from supercrit import spectral as sp
from supercrit import verify as vf
from supercrit.extensions import ExtensionParam
from supercrit.radial import ChannelParams, Doublet

VERDICTS = {}

SAMPLES = [
    (ChannelParams(0.5, -1), ExtensionParam.unique()),
    (ChannelParams(0.5, 1), ExtensionParam.unique()),
    (ChannelParams(0.95, -1), ExtensionParam.xi(0.0)),
    (ChannelParams(0.95, -1), ExtensionParam.xi(0.7)),
    (ChannelParams(0.95, -1), ExtensionParam.xi("inf")),
    (ChannelParams(1.0, -1), ExtensionParam.xi(0.4)),
    (ChannelParams(1.2, -1), ExtensionParam.theta(0.0)),
    (ChannelParams(1.2, -1), ExtensionParam.theta(1.1)),
]


def record(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    VERDICTS[n] = line
    print(line)
    assert ok, line


# ------------------------------------------------------------------ 1

def test_c01_sommerfeld_ground_state():
    p = ChannelParams(0.5, -1)
    E0 = sp.find_discrete_spectrum(p, n_max=0)[0].E
    err = abs(E0 - p.m * math.sqrt(1 - p.q**2))
    record(1, err < 1e-9 * p.m, f"|E0 - m sqrt(1-q^2)| = {err:.2e}")


# ------------------------------------------------------------------ 2

def test_c02_closed_form_spectrum():
    worst = 0.0
    exclusion = True
    for q in (0.3, 0.5, 0.8):
        for kappa in (-1, 1, -2):
            p = ChannelParams(q, kappa)
            ref = sp.closed_form_levels(p, 10)
            got = [s.E for s in sp.find_discrete_spectrum(p, n_max=len(ref) - 1)]
            worst = max(worst, max(abs(a - b) / b for a, (_, b) in zip(got, ref)))
            if p.zeta > 0:
                # the n = 0 value of the formula is not a level for zeta = +1
                g = p.gamma
                ghost = p.m * g / math.sqrt(g * g + q * q)
                exclusion &= ref[0][0] == 1 and min(abs(np.array(got) - ghost)) > 1e-6
    record(2, worst < 1e-9 and exclusion, f"max relative deviation {worst:.2e}, zeta=+1 n=0 excluded: {exclusion}")


# ------------------------------------------------------------------ 3

def test_c03_nonrelativistic_asymptote():
    p = ChannelParams(0.5, -1)
    st = sp.find_discrete_spectrum(p, n_max=30)
    n = 30
    # principal quantum number n = n_r + |kappa|: radial index 29
    principal = abs((p.m - st[n - abs(p.kappa)].E) * 2 * n * n / (p.m * p.q**2) - 1)
    radial_index = abs((p.m - st[n].E) * 2 * n * n / (p.m * p.q**2) - 1)
    record(3, principal < 0.05,
           f"principal-n reading {principal:.4f} (radial-index reading {radial_index:.4f})")


# ------------------------------------------------------------------ 4

def test_c04_wronskian_suite():
    r = np.geomspace(0.01, 20, 60)
    worst = 0.0
    for E in (1.5, 3.0):
        for q, kappa in ((0.5, -1), (0.95, -1), (0.7, 1), (1.2, -1), (1.9, -2)):
            p = ChannelParams(q, kappa)
            u1 = rd.eval_solution(rd.U1, p, r, E)
            u2 = rd.eval_solution(rd.U2, p, r, E)
            want = -2 * p.upsilon / q
            worst = max(worst, np.max(np.abs(u1.wronskian(u2) - want)) / abs(want))
        for kappa in (-1, 1, -2):
            p = ChannelParams(abs(kappa), kappa)
            u1 = rd.eval_solution(rd.U1, p, r, E)
            u20 = rd.eval_solution(rd.U2_0, p, r, E)
            want = 1 / p.q_cj
            worst = max(worst, np.max(np.abs(u1.wronskian(u20) - want)) / abs(want))
    record(4, worst < 1e-8, f"max relative deviation over r in [0.01, 20]: {worst:.2e}")


# ------------------------------------------------------------------ 5

def _one_sided_gap(fn, h=1e-4):
    """Largest mismatch between the value at gamma = 1/2 and the linear
    extrapolations from each side (samples at 1/2 +- h and 1/2 +- 2h)."""
    at = fn(0.5)
    gaps = []
    for s in (-1, 1):
        ext = 2 * fn(0.5 + s * h) - fn(0.5 + 2 * s * h)
        gaps.append(np.max(np.abs(ext - at)) / np.max(np.abs(at)))
    return max(gaps)


def test_c05_half_integer_continuity():
    base = ChannelParams(0.8, -1)
    W = 0.2 + 0.5j

    def om(g):
        return rd.omega_n(base.at_gamma(g), 1, W)

    def M(g):
        p = base.at_gamma(g)
        ext = ExtensionParam.unique() if ex.classify(p).tag is ex.Region.REGION1 else ExtensionParam.xi(0.0)
        return sp.diagonal_m(p, ext, 1.3, W)

    jo, jm = _one_sided_gap(om), _one_sided_gap(M)
    record(5, jo < 1e-6 and jm < 1e-6, f"omega_n jump {jo:.2e}, M(c; W) jump {jm:.2e}")


# ------------------------------------------------------------------ 6

def test_c06_critical_xi_infinity():
    worst, e0 = 0.0, None
    for kappa in (-1, 1):
        p = ChannelParams(1.0, kappa)
        ext = ExtensionParam.xi("inf")
        ref = sp.closed_form_levels(p, 10, ext)
        got = [s.E for s in sp.find_discrete_spectrum(p, ext, n_max=len(ref) - 1)]
        worst = max(worst, max(abs(a - b) for a, (_, b) in zip(got, ref)))
        if kappa == -1:
            e0 = abs(got[0])
    record(6, worst < 1e-9 and e0 < 1e-10, f"max |E_n - formula| {worst:.2e}, |E0| = {e0:.2e}")


# ------------------------------------------------------------------ 7

def test_c07_overcritical_reality_and_accumulation():
    p = ChannelParams(1.2, -1)
    E = np.linspace(-1, 1, 4003)[1:-1]
    im = 0.0
    for th in (0.0, 0.7, 2.0):
        # the complex closed form evaluated on the real axis; the on-axis
        # tan form is real by construction and would prove nothing
        v = np.array([ex.omega_ext(p, ExtensionParam.theta(th), complex(e)) for e in E])
        keep = np.isfinite(v) & (np.abs(v) < 1e6)
        im = max(im, float(np.max(np.abs(np.imag(v[keep])) / np.maximum(1.0, np.abs(v[keep])))))
    st = sp.find_discrete_spectrum(p, ExtensionParam.theta(0.7), window=(0.99, 1.0), n_max=24)
    inside = [s for s in st if 0.99 < s.E < 1.0]
    record(7, im < 1e-10 and len(inside) >= 20,
           f"max |Im omega_theta| {im:.2e}, {len(inside)} levels in (0.99 m, m)")


# ------------------------------------------------------------------ 8

def test_c08_diving_level():
    target = -1 + 1e-6
    parts, ok = [], True
    for q in (0.95, 1.2):
        p = ChannelParams(q, -1)
        e = sp.bisect_dive(p, target)
        E0 = sp.lowest_level(p, e)
        dev = abs(E0 - target)
        ok &= dev < 1e-9
        parts.append(f"q={q}: {e.label()} lowest level - target = {E0 - target:.1e}")
    record(8, ok, "; ".join(parts))


# ------------------------------------------------------------------ 9

def test_c09_residue_identities():
    an = 0.0
    for p, e in SAMPLES:
        for n in range(5):
            an = max(an, abs(vf.discrete_norm(p, e, n).an_qn - 1))
    cq = 0.0
    p = ChannelParams(0.95, -1)
    for e in (ExtensionParam.xi(0.7), ExtensionParam.xi(-1.4), ExtensionParam.xi("inf")):
        for E in (1.2, 1.5, 2.0, 3.0, 5.0, -1.2, -1.5, -2.0, -3.0, -5.0):
            cc = vf.continuum_constants(p, e, E)
            cq = max(cq, abs(cc.C_xi * sp.continuum_density(p, e, E).density - 1))
    record(9, an < 1e-6 and cq < 1e-6, f"max |A_n Q_n - 1| {an:.2e}, max |C Q^2 - 1| {cq:.2e}")


# ------------------------------------------------------------------ 10

def test_c10_orthonormality():
    off, dc = 0.0, 0.0
    for p, e in SAMPLES:
        M, E = vf.orthonormality_matrix(p, e, n_states=8)
        off = max(off, float(np.max(np.abs(M - np.diag(np.diag(M))))))
        for Ec in (1.5, -2.5, 4.0):
            for En in E[:3]:
                dc = max(dc, abs(vf.overlap_wronskian(p, e, En, Ec).value))
    record(10, off < 1e-6 and dc < 1e-6, f"max off-diagonal {off:.2e}, max discrete-continuum {dc:.2e}")


# ------------------------------------------------------------------ 11

def test_c11_resolvent_property():
    W = 0.3 + 0.4j

    def F(r):
        r = np.asarray(r, dtype=float)
        x = (r - 2.0) / 0.8
        env = np.where(np.abs(x) < 1, np.exp(-1 / np.maximum(1 - x * x, 1e-300)), 0.0)
        return Doublet(env + 0j, 0.5 * x * env + 0j)

    r = np.linspace(1.4, 2.6, 9)
    fr = F(r)
    scale = np.sqrt(np.sum(np.abs(fr.f) ** 2 + np.abs(fr.g) ** 2))
    worst, ratios = 0.0, []
    for p, e in (SAMPLES[0], SAMPLES[3], SAMPLES[5], SAMPLES[7]):
        def psi(x):
            return sp.apply_resolvent(p, e, W, F, (1.2, 2.8), x)
        errs = []
        for h in (0.02, 0.01):
            d = sp.apply_hamiltonian(p, r, psi, h) - psi(r) * W - fr
            errs.append(np.sqrt(np.sum(np.abs(d.f) ** 2 + np.abs(d.g) ** 2)) / scale)
        worst = max(worst, errs[1])
        ratios.append(errs[0] / errs[1])
    ok = worst < 1e-4 and all(3.5 < x < 4.5 for x in ratios)
    record(11, ok, f"max residual {worst:.2e}, step-halving ratios {', '.join(f'{x:.2f}' for x in ratios)}")


# ------------------------------------------------------------------ 12

def _brute_force_count(q):
    # every channel |kappa| >= 1 with q > sqrt(kappa^2 - 1/4) contributes one
    # parameter for each sign of kappa
    return sum(2 for k in range(1, 100) if q > math.sqrt(k * k - 0.25))


def test_c12_extension_count():
    rng = np.random.default_rng(12)
    qs = 10.0 * (1.0 - rng.random(200))
    bad = [q for q in qs if ex.count_extension_parameters(q) != _brute_force_count(q)]
    record(12, not bad, f"{200 - len(bad)}/200 random q agree")


# ------------------------------------------------------------------ 13

@pytest.mark.slow
def test_c13_parseval():
    cases = [
        (SAMPLES[0], vf.BumpDoublet(3.0, 0.3)),
        (SAMPLES[3], vf.BumpDoublet(2.5, 0.3, 1.0, 0.5)),
        (SAMPLES[7], vf.BumpDoublet(4.0, 0.4, 0.0, 1.0)),
    ]
    ok, parts = True, []
    for (p, e), bump in cases:
        rep = vf.parseval_check(p, e, bump, strict=False)
        ok &= rep.monotone and abs(rep.defects[-1]) < 0.05
        parts.append(f"q={p.q} {e.label()}: " + "/".join(f"{d:.1e}" for d in rep.defects))
    record(13, ok, "defects at windows 2.5/5/10 m: " + "; ".join(parts))


# ------------------------------------------------------------------ 14

def _production_points(n, seed=14):
    """(alpha, beta, z) as the radial layer builds them from random channels and W."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        kappa = int(rng.choice([-2, -1, 1, 2]))
        q = rng.uniform(0.05, 2.6)
        ups = complex(math.sqrt(kappa * kappa - q * q)) if q < abs(kappa) else 1j * math.sqrt(q * q - kappa * kappa)
        if ups.imag == 0 and abs(2 * ups.real - round(2 * ups.real)) < 0.05:
            continue
        if ups.real == 0 and abs(ups.imag) < 0.05:
            continue
        W = complex(rng.uniform(-3, 3), rng.uniform(0.05, 3))
        r = 10 ** rng.uniform(-2, math.log10(20))
        K = np.sqrt(W - 1 + 0j) * np.sqrt(W + 1 + 0j)
        if K.imag < 0:
            K = -K
        out.append((ups - 1j * q * W / K, 1 + 2 * ups, -2j * K * r, ups + q * W / (1j * K)))
    return out


def test_c14_special_function_oracles():
    mp.mp.dps = 40
    worst = {"gamma": 0.0, "digamma": 0.0, "phi": 0.0, "psi": 0.0}

    def rel(a, b):
        b = complex(b)
        return abs(complex(a) - b) / abs(b)

    for a, b, z, c in _production_points(100):
        worst["gamma"] = max(worst["gamma"], rel(sf.gamma(a - b + 1), mp.gamma(mp.mpc(a - b + 1))))
        worst["digamma"] = max(worst["digamma"], rel(sf.digamma(a), mp.digamma(mp.mpc(a))))
        worst["phi"] = max(worst["phi"], rel(sf.kummer_phi(c, b, z), mp.hyp1f1(mp.mpc(c), mp.mpc(b), mp.mpc(z))))
        worst["psi"] = max(worst["psi"], rel(sf.tricomi_psi(a, b, z), mp.hyperu(mp.mpc(a), mp.mpc(b), mp.mpc(z))))
    ok = max(worst.values()) < 1e-10
    record(14, ok, "max relative error " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))
