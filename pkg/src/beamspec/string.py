"""Dirichlet string: sine series, dispersion against the beam, travelling split."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quadrature
from .quadrature import BeamGeometry, QuadratureSettings, default_settings


@dataclass(frozen=True)
class StringConfig:
    length: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        for name in ("length", "c"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v}")

    @property
    def geometry(self) -> BeamGeometry:
        return BeamGeometry(self.length)


@dataclass(frozen=True, eq=False)
class FourierCoefficients:
    """Sine coefficients S_n of u0 and Ṡ_n of the initial velocity."""

    S: np.ndarray
    S_dot: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.S, dtype=float)
        sd = np.asarray(self.S_dot, dtype=float)
        if s.shape != sd.shape or s.ndim != 1:
            raise ValueError("S and S_dot must be 1-D arrays of equal length")
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(sd))):
            raise ValueError("Fourier coefficients must be finite")
        object.__setattr__(self, "S", s)
        object.__setattr__(self, "S_dot", sd)

    def __len__(self):
        return len(self.S)


@dataclass(frozen=True)
class StringMode:
    index: int
    eigenvalue: float
    length: float

    def __call__(self, x):
        return math.sqrt(2 / self.length) * np.sin(self.index * np.pi * np.asarray(x, dtype=float) / self.length)


def string_spectrum(cfg: StringConfig, count: int) -> list[StringMode]:
    """First ``count`` eigenpairs of -d²/dx² with zero end values."""
    if count < 1:
        raise ValueError("count must be >= 1")
    ell = cfg.length
    return [StringMode(n, (n * np.pi / ell) ** 2, ell) for n in range(1, count + 1)]


def _profile_values(profile, x, geom):
    if hasattr(profile, "evaluate"):
        return profile.evaluate(x, geom)
    return np.asarray(profile(x), dtype=float)


def fourier_coefficients(u0, v0, cfg: StringConfig, quad: QuadratureSettings | None = None, count: int = 10) -> FourierCoefficients:
    """S_n = (2/l) ∫ u0 sin(nπx/l) dx and likewise Ṡ_n from v0.

    Profiles are either objects with ``evaluate``/``breakpoints`` (see
    :mod:`beamspec.evolution`) or plain vectorized callables.
    """
    geom = cfg.geometry
    quad = quad or default_settings(count)
    n = np.arange(1, count + 1)
    out = []
    for prof in (u0, v0):
        bp = prof.breakpoints(geom) if hasattr(prof, "breakpoints") else None
        x, w = quadrature.nodes_and_weights(geom, quad, bp)
        f = _profile_values(prof, x, geom)
        basis = np.sin(np.outer(n, x) * np.pi / cfg.length)
        out.append(2 / cfg.length * (basis @ (w * f)))
    return FourierCoefficients(*out)


def wave_frequencies(cfg: StringConfig, count: int) -> np.ndarray:
    return np.arange(1, count + 1) * np.pi * cfg.c / cfg.length


def string_solution(coeffs: FourierCoefficients, cfg: StringConfig, x, t):
    x = np.asarray(x, dtype=float)
    n = np.arange(1, len(coeffs) + 1)
    w = wave_frequencies(cfg, len(coeffs))
    amp = coeffs.S * np.cos(w * t) + coeffs.S_dot / w * np.sin(w * t)
    return amp @ np.sin(np.multiply.outer(n * np.pi / cfg.length, x))


@dataclass(frozen=True)
class BeamWaves:
    """Pinned-pinned beam viewed as travelling waves: mode n moves at nπς/l."""

    length: float
    sigma: float

    def speed(self, n: int) -> float:
        return n * np.pi * self.sigma / self.length

    def omega(self, n: int) -> float:
        return (n * np.pi / self.length) ** 2 * self.sigma


def _speed_and_omega(n, medium):
    if isinstance(medium, StringConfig):
        return medium.c, n * np.pi * medium.c / medium.length, medium.length
    return medium.speed(n), medium.omega(n), medium.length


def traveling_decomposition(n: int, coeffs: FourierCoefficients, medium, x, t):
    """(left-moving, right-moving) parts of the n-th standing term.

    ``medium`` is a :class:`StringConfig` (speed c) or :class:`BeamWaves`
    (speed nπς/l).  A_n = S_n and B_n = Ṡ_n/ω_n.
    """
    if not 1 <= n <= len(coeffs):
        raise ValueError(f"mode index {n} outside 1..{len(coeffs)}")
    speed, omega, ell = _speed_and_omega(n, medium)
    a = coeffs.S[n - 1]
    b = coeffs.S_dot[n - 1] / omega
    k = n * np.pi / ell
    x = np.asarray(x, dtype=float)
    plus = k * (x + speed * t)
    minus = k * (x - speed * t)
    left = 0.5 * (a * np.sin(plus) - b * np.cos(plus))
    right = 0.5 * (a * np.sin(minus) + b * np.cos(minus))
    return left, right


def standing_term(n: int, coeffs: FourierCoefficients, medium, x, t):
    _, omega, ell = _speed_and_omega(n, medium)
    a = coeffs.S[n - 1]
    b = coeffs.S_dot[n - 1] / omega
    return (a * np.cos(omega * t) + b * np.sin(omega * t)) * np.sin(n * np.pi * np.asarray(x, dtype=float) / ell)


@dataclass(frozen=True)
class DispersionRow:
    n: int
    omega_wave: float
    c: float
    omega_beam: float
    c_beam: float


def dispersion_table(cfg: StringConfig, sigma: float, count: int) -> list[DispersionRow]:
    if count < 1:
        raise ValueError("count must be >= 1")
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    ell, c = cfg.length, cfg.c
    return [
        DispersionRow(n, n * np.pi * c / ell, c, (n * np.pi / ell) ** 2 * sigma, n * np.pi * sigma / ell)
        for n in range(1, count + 1)
    ]
