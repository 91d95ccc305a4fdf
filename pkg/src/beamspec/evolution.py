"""Modal solution of u'' = -ς² A u, exact in time for each mode."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import quadrature
from .modes import EigenMode
from .quadrature import BeamGeometry, QuadratureSettings, default_settings


@dataclass(frozen=True)
class MaterialParams:
    """Either ``sigma`` directly or E, I, rho, area with ς = sqrt(E I / (rho area))."""

    sigma: float | None = None
    E: float | None = None
    I: float | None = None
    rho: float | None = None
    area: float | None = None

    def __post_init__(self):
        quad = (self.E, self.I, self.rho, self.area)
        given = [v is not None for v in quad]
        if any(given) and not all(given):
            raise ValueError("E, I, rho and area must be given together")
        if self.sigma is None and not all(given):
            raise ValueError("either sigma or the quadruple (E, I, rho, area) is required")
        for name in ("sigma", "E", "I", "rho", "area"):
            v = getattr(self, name)
            if v is not None and not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v}")
        if self.sigma is not None and all(given):
            derived = math.sqrt(self.E * self.I / (self.rho * self.area))
            if abs(derived - self.sigma) > 1e-12 * derived:
                raise ValueError(f"sigma={self.sigma} inconsistent with sqrt(EI/(rho A))={derived}")

    @property
    def value(self) -> float:
        if self.sigma is not None:
            return float(self.sigma)
        return math.sqrt(self.E * self.I / (self.rho * self.area))

    def to_dict(self) -> dict:
        if self.E is not None:
            d = {"E": self.E, "I": self.I, "rho": self.rho, "area": self.area}
            if self.sigma is not None:
                d["sigma"] = self.sigma
            return d
        return {"sigma": self.sigma}

    @classmethod
    def from_dict(cls, d: dict) -> "MaterialParams":
        return cls(**{k: float(v) for k, v in d.items()})


PRESETS = ("zero", "sine", "pluck", "gaussian", "mode", "parabola")


@dataclass(frozen=True)
class PresetProfile:
    name: str
    params: tuple = ()

    def __post_init__(self):
        if self.name not in PRESETS:
            raise ValueError(f"unknown preset {self.name!r}; expected one of {PRESETS}")

    @property
    def kwargs(self) -> dict:
        return dict(self.params)

    def breakpoints(self, geom: BeamGeometry):
        if self.name == "pluck":
            return [self.kwargs["x0"]]
        return None

    def evaluate(self, x, geom: BeamGeometry, modes=None):
        x = np.asarray(x, dtype=float)
        ell = geom.length
        p = self.kwargs
        if self.name == "zero":
            return np.zeros_like(x)
        if self.name == "sine":
            return p.get("amplitude", 1.0) * np.sin(p["k"] * np.pi * x / ell)
        if self.name == "pluck":
            x0, h = p["x0"], p.get("height", 1.0)
            if not 0 < x0 < ell:
                raise ValueError(f"pluck position {x0} must lie strictly inside (0, {ell})")
            return h * np.where(x <= x0, x / x0, (ell - x) / (ell - x0))
        if self.name == "gaussian":
            c, w = p["center"], p["width"]
            return p.get("amplitude", 1.0) * np.exp(-0.5 * ((x - c) / w) ** 2)
        if self.name == "parabola":
            return 4 * p.get("height", 1.0) * x * (ell - x) / ell**2
        # mode(n): the n-th mode of the modal basis in use
        n = int(p["n"])
        if modes is None or not 1 <= n <= len(modes):
            raise ValueError(f"mode({n}) preset needs a modal basis with at least {n} modes")
        return p.get("amplitude", 1.0) * modes[n - 1].evaluate(x)

    def to_dict(self) -> dict:
        return {"preset": self.name, **self.kwargs}


@dataclass(frozen=True, eq=False)
class SampledProfile:
    """Piecewise-linear interpolant of samples spanning [0, l]."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.ndim != 1 or x.shape != v.shape or x.size < 2:
            raise ValueError("samples need matching 1-D x and values with at least 2 points")
        if np.any(np.diff(x) <= 0):
            raise ValueError("sample x-values must be strictly increasing")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    def _check_domain(self, geom):
        ell = geom.length
        if abs(self.x[0]) > 1e-12 * ell or abs(self.x[-1] - ell) > 1e-12 * ell:
            raise ValueError(f"samples span [{self.x[0]}, {self.x[-1]}], expected [0, {ell}]")

    def breakpoints(self, geom: BeamGeometry):
        self._check_domain(geom)
        return self.x[1:-1]

    def evaluate(self, x, geom: BeamGeometry, modes=None):
        self._check_domain(geom)
        return np.interp(x, self.x, self.values)

    def to_dict(self) -> dict:
        return {"x": self.x.tolist(), "values": self.values.tolist()}


def preset(name: str, **params) -> PresetProfile:
    return PresetProfile(name, tuple(sorted(params.items())))


def profile_from_dict(d: dict):
    if "preset" in d:
        params = {k: v for k, v in d.items() if k != "preset"}
        return preset(d["preset"], **params)
    return SampledProfile(np.asarray(d["x"]), np.asarray(d["values"]))


@dataclass(frozen=True)
class InitialState:
    u0: PresetProfile | SampledProfile = field(default_factory=lambda: preset("zero"))
    v0: PresetProfile | SampledProfile = field(default_factory=lambda: preset("zero"))


@dataclass(frozen=True, eq=False)
class ModalCoefficients:
    p: np.ndarray
    q: np.ndarray

    def __len__(self):
        return len(self.p)

    def truncation_diagnostic(self) -> float:
        """Σ over the last two modes of p² + q²."""
        tail = slice(max(len(self.p) - 2, 0), None)
        return float(np.sum(np.abs(self.p[tail]) ** 2 + np.abs(self.q[tail]) ** 2))


@dataclass(frozen=True, eq=False)
class SolutionFrame:
    t: float
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray | None = None


def _check_modes(modes):
    if not modes:
        raise ValueError("at least one mode is required")
    g = modes[0].geometry
    if any(m.geometry != g or m.support != modes[0].support for m in modes):
        raise ValueError("modes must share support case and geometry")
    return g


def project_profile(profile, modes: list[EigenMode], quad: QuadratureSettings | None = None) -> np.ndarray:
    geom = _check_modes(modes)
    quad = quad or default_settings(max(m.index for m in modes))
    x, w = quadrature.nodes_and_weights(geom, quad, profile.breakpoints(geom))
    f = profile.evaluate(x, geom, modes)
    psi = np.array([m.evaluate(x) for m in modes])
    return psi @ (w * f)


def project(initial: InitialState, modes: list[EigenMode], quad: QuadratureSettings | None = None) -> ModalCoefficients:
    return ModalCoefficients(
        project_profile(initial.u0, modes, quad), project_profile(initial.v0, modes, quad)
    )


def omegas(modes: list[EigenMode], sigma: float) -> np.ndarray:
    return np.array([sigma * m.kappa**2 for m in modes])


def coefficients_at(coeffs: ModalCoefficients, modes, sigma: float, t: float):
    """Per-mode displacement and velocity coefficients (c_n(t), ċ_n(t))."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    w = omegas(modes, sigma)
    p, q = coeffs.p, coeffs.q
    moving = w > 0
    safe = np.where(moving, w, 1.0)
    cos, sin = np.cos(safe * t), np.sin(safe * t)
    c = np.where(moving, cos * p + sin / safe * q, p + t * q)
    cdot = np.where(moving, -safe * sin * p + cos * q, q)
    return c, cdot


def evaluate_solution(coeffs: ModalCoefficients, modes, sigma: float, x, t: float) -> SolutionFrame:
    x = np.asarray(x, dtype=float)
    c, cdot = coefficients_at(coeffs, modes, sigma, t)
    psi = np.array([m.evaluate(x) for m in modes])
    return SolutionFrame(float(t), x, c @ psi, cdot @ psi)


def modal_energy(coeffs: ModalCoefficients, modes, sigma: float, t: float) -> float:
    c, cdot = coefficients_at(coeffs, modes, sigma, t)
    w = omegas(modes, sigma)
    return 0.5 * float(np.sum(np.abs(cdot) ** 2 + w**2 * np.abs(c) ** 2))


def unitary_phase_check(coeffs: ModalCoefficients, modes, sigma: float, t: float) -> float:
    """Check that u̇₀ = iς√A u₀ makes every mode evolve as e^{iωt}.

    Only ``coeffs.p`` is used; q_n = iω_n p_n is constructed here.  Returns
    the largest deviation of |c_n(t)| from |p_n| or of ċ_n from iω_n c_n,
    over modes with ω_n > 0.
    """
    w = omegas(modes, sigma)
    keep = w > 0
    if not keep.any():
        return 0.0
    p = np.asarray(coeffs.p, dtype=complex)[keep]
    sub = [m for m, k in zip(modes, keep) if k]
    z = ModalCoefficients(p, 1j * w[keep] * p)
    c, cdot = coefficients_at(z, sub, sigma, t)
    modulus_dev = np.abs(np.abs(c) - np.abs(p))
    generator_dev = np.abs(cdot - 1j * w[keep] * c)
    return float(max(modulus_dev.max(), generator_dev.max() / max(w.max(), 1.0)))


@dataclass(frozen=True, eq=False)
class ModalSolution:
    modes: list[EigenMode]
    coeffs: ModalCoefficients
    sigma: float

    @classmethod
    def from_initial(cls, initial: InitialState, modes, sigma: float, quad=None) -> "ModalSolution":
        return cls(modes, project(initial, modes, quad), sigma)

    def frame(self, x, t: float) -> SolutionFrame:
        return evaluate_solution(self.coeffs, self.modes, self.sigma, x, t)

    def energy(self, t: float) -> float:
        return modal_energy(self.coeffs, self.modes, self.sigma, t)
