"""Charge regions, self-adjoint extension parameters and the extension-dependent omega."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import radial as rd
from .radial import ChannelParams, Doublet

REGION_TOL = 1e-12
BC_TOL = 1e-6


class ExtensionError(ValueError):
    pass


class RegionExtensionMismatch(ExtensionError):
    pass


class Region(enum.Enum):
    REGION1 = "region1"
    REGION2 = "region2"
    CRITICAL = "critical"
    OVERCRITICAL = "overcritical"


@dataclass(frozen=True)
class RegionClass:
    tag: Region
    q: float
    kappa: int

    @property
    def name(self) -> str:
        return self.tag.value


def classify(params: ChannelParams) -> RegionClass:
    """Assign one of the four charge regions (q_uj itself belongs to Region1)."""
    q, qu, qc = params.q, params.q_uj, params.q_cj
    if abs(q - qc) <= REGION_TOL:
        tag = Region.CRITICAL
    elif q > qc:
        tag = Region.OVERCRITICAL
    elif q <= qu + REGION_TOL:
        tag = Region.REGION1
    else:
        tag = Region.REGION2
    return RegionClass(tag, params.q, params.kappa)


@dataclass(frozen=True)
class ExtensionParam:
    """variant is 'unique', 'xi', 'xi_inf' or 'theta'; theta is stored modulo pi."""

    variant: str
    value: float | None = None

    def __post_init__(self):
        if self.variant not in {"unique", "xi", "xi_inf", "theta"}:
            raise ValueError(f"unknown extension variant {self.variant!r}")
        if self.variant in {"xi", "theta"}:
            if self.value is None or not math.isfinite(self.value):
                raise ValueError(f"{self.variant} needs a finite value")
            if self.variant == "theta":
                object.__setattr__(self, "value", float(self.value) % math.pi)
            else:
                object.__setattr__(self, "value", float(self.value))
        elif self.value is not None:
            raise ValueError(f"{self.variant} takes no value")

    @classmethod
    def unique(cls) -> "ExtensionParam":
        return cls("unique")

    @classmethod
    def xi(cls, value) -> "ExtensionParam":
        if isinstance(value, str) and value.strip().lower() in {"inf", "infinity", "+inf"}:
            return cls("xi_inf")
        if isinstance(value, float) and math.isinf(value):
            return cls("xi_inf")
        return cls("xi", float(value))

    @classmethod
    def theta(cls, value: float) -> "ExtensionParam":
        return cls("theta", float(value))

    @property
    def is_infinite(self) -> bool:
        return self.variant == "xi_inf"

    def label(self) -> str:
        if self.variant == "unique":
            return "unique"
        if self.variant == "xi_inf":
            return "xi=inf"
        return f"{self.variant}={self.value!r}"

    def to_json(self):
        if self.variant == "xi_inf":
            return {"variant": "xi", "value": "inf"}
        return {"variant": self.variant, "value": self.value}


def default_extension(params: ChannelParams) -> ExtensionParam:
    tag = classify(params).tag
    if tag is Region.REGION1:
        return ExtensionParam.unique()
    if tag is Region.OVERCRITICAL:
        return ExtensionParam.theta(0.0)
    return ExtensionParam.xi(0.0)


def check_extension(params: ChannelParams, ext: ExtensionParam) -> Region:
    tag = classify(params).tag
    ok = {
        Region.REGION1: {"unique"},
        Region.REGION2: {"xi", "xi_inf"},
        Region.CRITICAL: {"xi", "xi_inf"},
        Region.OVERCRITICAL: {"theta"},
    }[tag]
    if ext.variant not in ok:
        raise RegionExtensionMismatch(f"{ext.label()} is not an extension of {tag.value}")
    return tag


# ------------------------------------------------------------ omega_ext

def _half_index(params: ChannelParams) -> int | None:
    return params.half_integer_index()


def _sigma_tilde(params: ChannelParams, om):
    """Unimodular (on the gap) overcritical function (q / 2 i sigma) omega."""
    return params.q / (2j * params.sigma) * om


def _theta_form(params: ChannelParams, theta: float, wt):
    e = np.exp(2j * theta) * wt
    return -(4j * params.sigma / params.q) * (1 - e) / (1 + e)


def omega_ext(params: ChannelParams, ext: ExtensionParam, W):
    """The extension's omega at complex W (closed forms, analytic for Im W > 0)."""
    tag = check_extension(params, ext)
    if tag is Region.CRITICAL:
        om0 = rd.omega_0(params, W)
        if ext.is_infinite:
            return -1 / (params.q_cj**2 * om0)
        return om0 - ext.value / params.q_cj
    if tag is Region.OVERCRITICAL:
        wt = _sigma_tilde(params, rd.omega(params, W))
        return _theta_form(params, ext.value, wt)
    g, q = params.gamma, params.q
    n = _half_index(params)
    if tag is Region.REGION1 or (ext.variant == "xi" and ext.value == 0.0):
        return rd.omega_n(params, n, W) if n is not None else rd.omega(params, W)
    om = rd.omega(params, W)
    if ext.is_infinite:
        return -4 * g * g / (q * q * om)
    return om - 2 * g * ext.value / q


def omega_ext_on_axis(params: ChannelParams, ext: ExtensionParam, E):
    """omega_ext(E + i0) from the real-axis forms; real inside (-m, m)."""
    tag = check_extension(params, ext)
    E = np.asarray(E, dtype=float)
    if tag is Region.CRITICAL:
        om0 = rd.omega_0_on_axis(params, E)
        if ext.is_infinite:
            return -1 / (params.q_cj**2 * om0)
        return om0 - ext.value / params.q_cj
    if tag is Region.OVERCRITICAL:
        wt = _sigma_tilde(params, rd.omega(params, E.astype(complex)))
        out = _theta_form(params, ext.value, wt)
        # on the gap omega~ = exp(-2i Theta): use the real form (4 sigma/q) tan(Theta - theta)
        gap = np.abs(E) < params.m
        theta_e = -np.angle(wt) / 2
        real = 4 * params.sigma / params.q * np.tan(theta_e - ext.value)
        return np.where(gap, real + 0j, out)
    g, q = params.gamma, params.q
    n = _half_index(params)
    if tag is Region.REGION1 or (ext.variant == "xi" and ext.value == 0.0):
        if n is not None:
            return rd.omega_n_on_axis(params, n, E)
        return rd.omega_on_axis(params, E)
    om = rd.omega_on_axis(params, E)
    if ext.is_infinite:
        return -4 * g * g / (q * q * om)
    return om - 2 * g * ext.value / q


# --------------------------------------------------- extension doublets

@dataclass(frozen=True)
class ExtensionSolutions:
    """The (U, V, omega) triple of one self-adjoint extension.

    U is real-entire in W and satisfies the boundary condition; V decays at
    infinity for Im W > 0; omega = -Wr(U, V).
    """

    params: ChannelParams
    ext: ExtensionParam
    U: Callable[[np.ndarray, complex], Doublet]
    V: Callable[[np.ndarray, complex], Doublet]
    omega: Callable[[complex], complex]


def solutions(params: ChannelParams, ext: ExtensionParam) -> ExtensionSolutions:
    tag = check_extension(params, ext)
    ev = rd.eval_solution
    p = params

    if tag is Region.CRITICAL:
        q = p.q_cj
        if ext.is_infinite:
            def U(r, W):
                return ev(rd.U1, p, r, W)

            def V(r, W):
                return ev(rd.V1_0, p, r, W) * (1 / (q * rd.omega_0(p, W)))
        else:
            xi = ext.value

            def U(r, W):
                return ev(rd.U2_0, p, r, W) + ev(rd.U1, p, r, W) * xi

            def V(r, W):
                return ev(rd.V1_0, p, r, W)
    elif tag is Region.OVERCRITICAL:
        th = ext.value
        s, q = p.sigma, p.q

        def U(r, W):
            return ev(rd.U1, p, r, W) * np.exp(1j * th) + ev(rd.U2, p, r, W) * np.exp(-1j * th)

        def V(r, W):
            wt = _sigma_tilde(p, rd.omega(p, W))
            return ev(rd.V1, p, r, W) * (2 / (np.exp(-1j * th) + np.exp(1j * th) * wt))
    else:
        n = _half_index(p)
        g, q = p.gamma, p.q
        if tag is Region.REGION1 or (ext.variant == "xi" and ext.value == 0.0):
            def U(r, W):
                return ev(rd.U1, p, r, W)

            if n is not None:
                def V(r, W):
                    return ev(rd.Vn1(n), p, r, W)
            else:
                def V(r, W):
                    return ev(rd.V1, p, r, W)
        elif ext.is_infinite:
            def U(r, W):
                return ev(rd.U2, p, r, W)

            def V(r, W):
                return ev(rd.V1, p, r, W) * (2 * g / (q * rd.omega(p, W)))
        else:
            xi = ext.value

            def U(r, W):
                return ev(rd.U1, p, r, W) + ev(rd.U2, p, r, W) * xi

            def V(r, W):
                return ev(rd.V1, p, r, W)

    def om(W):
        return omega_ext(p, ext, W)

    return ExtensionSolutions(p, ext, U, V, om)


def boundary_coefficients(params: ChannelParams, ext: ExtensionParam) -> tuple[complex, complex]:
    """(c1, c2) of the extension's U doublet; the same at every W."""
    tag = check_extension(params, ext)
    if tag is Region.REGION1:
        return 1.0 + 0j, 0j
    if tag is Region.OVERCRITICAL:
        return np.exp(1j * ext.value), np.exp(-1j * ext.value)
    if tag is Region.CRITICAL:
        return (1.0 + 0j, 0j) if ext.is_infinite else (complex(ext.value), 1.0 + 0j)
    if ext.is_infinite:
        return 0j, 1.0 + 0j
    return 1.0 + 0j, complex(ext.value)


# ------------------------------------------------------- asymmetry form

@dataclass(frozen=True)
class AsymmetryForm:
    value: complex
    c1: complex
    c2: complex


def asymmetry_from_coefficients(params: ChannelParams, c1: complex, c2: complex) -> complex:
    """Delta = Wr(conj F, F) at the origin in terms of (c1, c2)."""
    tag = classify(params).tag
    if tag is Region.OVERCRITICAL:
        return 2j * params.sigma / params.q * (abs(c1) ** 2 - abs(c2) ** 2)
    if tag is Region.CRITICAL:
        return (np.conj(c1) * c2 - np.conj(c2) * c1) / params.q_cj
    return 2 * params.gamma / params.q * (np.conj(c2) * c1 - np.conj(c1) * c2)


def asymmetry_form(params: ChannelParams, r, F: Doublet) -> AsymmetryForm:
    """Boundary form at the origin of a doublet sampled near r = 0."""
    c1, c2 = rd.asymptotic_coefficients(params, r, F)
    val = complex(asymmetry_from_coefficients(params, c1, c2))
    # the form is pure imaginary; drop round-off in the real part
    return AsymmetryForm(1j * val.imag, c1, c2)


def satisfies_boundary_condition(params: ChannelParams, ext: ExtensionParam,
                                 c1: complex, c2: complex, tol: float = BC_TOL) -> bool:
    tag = check_extension(params, ext)
    scale = abs(c1) + abs(c2)
    if scale == 0:
        return True
    if tag is Region.REGION1:
        return abs(c2) <= tol * scale
    if tag is Region.OVERCRITICAL:
        return abs(c2 - np.exp(-2j * ext.value) * c1) <= tol * scale
    if tag is Region.CRITICAL:
        if ext.is_infinite:
            return abs(c2) <= tol * scale
        return abs(c1 - ext.value * c2) <= tol * scale
    if ext.is_infinite:
        return abs(c1) <= tol * scale
    return abs(c2 - ext.value * c1) <= tol * scale


# ---------------------------------------------------------------- count

def count_extension_parameters(q: float) -> int:
    """2 n with q_n < q <= q_(n+1), q_n = sqrt(n^2 - 1/4)."""
    if not q > 0:
        raise ValueError("q must be positive")
    # q_n < q  <=>  n < sqrt(q^2 + 1/4)
    n = math.floor(math.sqrt(q * q + 0.25))
    while n >= 1 and math.sqrt(n * n - 0.25) >= q:
        n -= 1
    while math.sqrt((n + 1) ** 2 - 0.25) < q:
        n += 1
    return 2 * n
