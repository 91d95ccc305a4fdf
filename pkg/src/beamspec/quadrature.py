"""Composite Gauss-Legendre quadrature on [0, l]."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class BeamGeometry:
    length: float = 1.0

    def __post_init__(self):
        if not (self.length > 0 and np.isfinite(self.length)):
            raise ValueError(f"beam length must be positive, got {self.length}")


@dataclass(frozen=True)
class QuadratureSettings:
    panels: int = 16
    nodes_per_panel: int = 8

    def __post_init__(self):
        if self.panels < 1:
            raise ValueError("panels must be >= 1")
        if not 2 <= self.nodes_per_panel <= 32:
            raise ValueError("nodes_per_panel must lie in [2, 32]")


def default_settings(n_max: int = 1) -> QuadratureSettings:
    """At least 8 nodes per oscillation of the highest mode."""
    return QuadratureSettings(panels=max(16, 4 * int(n_max)), nodes_per_panel=8)


@lru_cache(maxsize=None)
def _reference_rule(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def nodes_and_weights(geom: BeamGeometry, settings: QuadratureSettings, breakpoints=None):
    """Flattened composite nodes/weights.

    ``breakpoints`` (interior points of nonsmoothness, e.g. sample abscissae
    or a pluck position) become panel edges.  Each resulting segment gets
    enough sub-panels that no panel is wider than l / settings.panels.
    """
    ell = geom.length
    edges = np.array([0.0, ell])
    if breakpoints is not None and len(breakpoints):
        bp = np.asarray(breakpoints, dtype=float)
        bp = bp[(bp > 0.0) & (bp < ell)]
        edges = np.unique(np.concatenate([edges, bp]))
    max_width = ell / settings.panels
    pieces = []
    for a, b in zip(edges[:-1], edges[1:]):
        k = max(1, int(np.ceil((b - a) / max_width - 1e-9)))
        pieces.append(np.linspace(a, b, k + 1)[:-1])
    left = np.concatenate(pieces)
    right = np.append(left[1:], ell)
    xr, wr = _reference_rule(settings.nodes_per_panel)
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    x = (mid[:, None] + half[:, None] * xr[None, :]).ravel()
    w = (half[:, None] * wr[None, :]).ravel()
    return x, w


def integrate(f, geom: BeamGeometry, settings: QuadratureSettings | None = None, breakpoints=None) -> float:
    """Composite Gauss-Legendre approximation of the integral of f over [0, l].

    ``f`` is called once with the full node array and must be vectorized.
    """
    settings = settings or default_settings()
    x, w = nodes_and_weights(geom, settings, breakpoints)
    return float(np.dot(w, f(x)))


def inner_product(f, g, geom: BeamGeometry, settings: QuadratureSettings | None = None, breakpoints=None) -> float:
    return integrate(lambda x: f(x) * g(x), geom, settings, breakpoints)
