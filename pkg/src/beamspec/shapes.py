"""Mode shape representations with derivatives up to order 4."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TrigShape:
    kind: str  # "sine" or "cosine"
    wavenumber: float
    amplitude: float

    def derivative(self, x, order: int = 0):
        w = self.wavenumber
        phase = order * np.pi / 2 + (0.0 if self.kind == "sine" else np.pi / 2)
        return self.amplitude * w**order * np.sin(w * np.asarray(x, dtype=float) + phase)

    def coefficients(self) -> dict:
        return {"kind": self.kind, "wavenumber": self.wavenumber, "amplitude": self.amplitude}


@dataclass(frozen=True)
class GeneralShape:
    """c1 e^{-κx} + c2 e^{-κ(l-x)} + c3 cos κx + c4 sin κx.

    The two exponentials never exceed 1 on [0, l], so evaluation cannot
    overflow and no cancellation occurs between growing hyperbolic terms.
    """

    kappa: float
    length: float
    coeffs: tuple[float, float, float, float]

    def derivative(self, x, order: int = 0):
        x = np.asarray(x, dtype=float)
        k = self.kappa
        c1, c2, c3, c4 = self.coeffs
        # derivatives divided by k**order, then restored at the end
        e1 = (-1.0) ** order * np.exp(-k * x)
        e2 = np.exp(-k * (self.length - x))
        phase = order * np.pi / 2
        trig = c3 * np.cos(k * x + phase) + c4 * np.sin(k * x + phase)
        return k**order * (c1 * e1 + c2 * e2 + trig)

    def hyperbolic_coefficients(self) -> tuple[float, float, float, float]:
        """Coefficients of cosh κx, sinh κx, cos κx, sin κx (unscaled basis)."""
        c1, c2, c3, c4 = self.coeffs
        decay = np.exp(-self.kappa * self.length)
        return (c1 + c2 * decay, -c1 + c2 * decay, c3, c4)

    def coefficients(self) -> dict:
        a = self.hyperbolic_coefficients()
        return {
            "kind": "general",
            "exp_coeffs": list(self.coeffs),
            "hyperbolic": list(a),
        }


@dataclass(frozen=True)
class PolynomialShape:
    """a + b x"""

    a: float
    b: float

    def derivative(self, x, order: int = 0):
        x = np.asarray(x, dtype=float)
        if order == 0:
            return self.a + self.b * x
        if order == 1:
            return np.full_like(x, self.b)
        return np.zeros_like(x)

    def coefficients(self) -> dict:
        return {"kind": "polynomial", "a": self.a, "b": self.b}
