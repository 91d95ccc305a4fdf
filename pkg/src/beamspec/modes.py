"""Normalized eigenfunctions ψ_n and their derivatives."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import quadrature
from .quadrature import BeamGeometry, QuadratureSettings, default_settings
from .shapes import GeneralShape, PolynomialShape, TrigShape
from .spectrum import (
    DegenerateModeError,
    EigenvalueRecord,
    Origin,
    canonical_case,
    characteristic_matrix,
    eigenvalues,
    null_vector,
    zero_modes,
)
from .supports import EndPoint, SupportCase, parse_case


class ModeAccuracyError(RuntimeError):
    pass


def bv_tolerance(index: int) -> float:
    """Accepted κ-scaled boundary residual: 1e-8 at n=1 rising to 1e-6 at n=12."""
    frac = min(max(index - 1, 0), 11) / 11
    return 1e-8 * 100.0**frac


@dataclass(frozen=True)
class EigenMode:
    record: EigenvalueRecord
    shape: TrigShape | GeneralShape | PolynomialShape
    geometry: BeamGeometry
    support: SupportCase
    reflected: bool = False

    @property
    def index(self) -> int:
        return self.record.index

    @property
    def kappa(self) -> float:
        return self.record.kappa

    @property
    def eigenvalue(self) -> float:
        return self.record.eigenvalue

    def omega(self, sigma: float) -> float:
        return sigma * self.record.kappa**2

    def __call__(self, x):
        return self.evaluate(x, 0)

    def evaluate(self, x, order: int = 0):
        if not 0 <= order <= 4:
            raise ValueError(f"derivative order must lie in 0..4, got {order}")
        ell = self.geometry.length
        x = np.asarray(x, dtype=float)
        slack = 1e-12 * ell
        if np.any(x < -slack) or np.any(x > ell + slack):
            raise ValueError(f"evaluation point outside [0, {ell}]")
        x = np.clip(x, 0.0, ell)
        if self.reflected:
            return (-1.0) ** order * self.shape.derivative(ell - x, order)
        return self.shape.derivative(x, order)


def evaluate(mode: EigenMode, x, order: int = 0):
    return mode.evaluate(x, order)


def _closed_form_shape(case: SupportCase, index: int, geom: BeamGeometry) -> TrigShape:
    ell = geom.length
    amp = np.sqrt(2 / ell)
    if case.name == "AA":
        return TrigShape("sine", index * np.pi / ell, amp)
    if case.name == "Add1":
        return TrigShape("cosine", (index - 1) * np.pi / ell, amp)
    w = (2 * index - 1) * np.pi / (2 * ell)
    return TrigShape("sine" if case.name == "Add2" else "cosine", w, amp)


def _sign_convention(shape: GeneralShape) -> GeneralShape:
    vals = np.array([shape.derivative(0.0, k) / shape.kappa**k for k in range(4)])
    scale = np.max(np.abs(vals))
    first = vals[np.argmax(np.abs(vals) > 1e-8 * scale)]
    if first < 0:
        return GeneralShape(shape.kappa, shape.length, tuple(-c for c in shape.coeffs))
    return shape


def _general_shape(case, record, geom, quad):
    m = characteristic_matrix(case, record.kappa, geom)
    v, _ = null_vector(m)
    shape = GeneralShape(record.kappa, geom.length, tuple(float(c) for c in v))
    norm2 = quadrature.integrate(lambda x: shape.derivative(x) ** 2, geom, quad)
    shape = GeneralShape(record.kappa, geom.length, tuple(float(c) / np.sqrt(norm2) for c in v))
    return _sign_convention(shape)


def build_mode(
    case,
    record: EigenvalueRecord,
    geom: BeamGeometry,
    quad: QuadratureSettings | None = None,
    reflected: bool = False,
    check: bool = True,
) -> EigenMode:
    if isinstance(case, str):
        case, flag = parse_case(case)
        reflected = reflected or flag
    case = canonical_case(case)
    if record.origin is Origin.CLOSED_FORM:
        shape = _closed_form_shape(case, record.index, geom)
    elif record.origin is Origin.RIGID_BODY:
        shape = zero_modes(case, geom)[record.index - 1]
    else:
        shape = _general_shape(case, record, geom, quad or default_settings(record.index))
    mode = EigenMode(record, shape, geom, case, reflected)
    if check:
        res = bv_residual(mode)
        tol = bv_tolerance(record.index)
        if not res <= tol:
            raise ModeAccuracyError(
                f"{case.name} mode {record.index}: BV residual {res:.3e} exceeds {tol:.1e}"
            )
    return mode


def build_modes(case, geom: BeamGeometry, count: int, quad: QuadratureSettings | None = None) -> list[EigenMode]:
    """First ``count`` normalized modes, rigid-body modes first."""
    reflected = False
    if isinstance(case, str):
        case, reflected = parse_case(case)
    quad = quad or default_settings(count)
    return [build_mode(case, r, geom, quad, reflected) for r in eigenvalues(case, geom, count)]


def bv_residual(mode: EigenMode) -> float:
    """max over the four constraints of |ψ^(k)(end)| / max(1, κ^k)."""
    ell = mode.geometry.length
    worst = 0.0
    for c in mode.support.constraints:
        x = 0.0 if c.end is EndPoint.LEFT else ell
        if mode.reflected:
            x = ell - x
        val = abs(float(mode.evaluate(x, c.derivative_order)))
        worst = max(worst, val / max(1.0, mode.kappa**c.derivative_order))
    return worst


def gram_matrix(modes: list[EigenMode], quad: QuadratureSettings | None = None) -> np.ndarray:
    if not modes:
        return np.zeros((0, 0))
    first = modes[0]
    for m in modes[1:]:
        if m.support != first.support or m.geometry != first.geometry or m.reflected != first.reflected:
            raise ValueError("all modes must share support case, reflection and geometry")
    quad = quad or default_settings(max(m.index for m in modes))
    x, w = quadrature.nodes_and_weights(first.geometry, quad)
    vals = np.array([m.evaluate(x) for m in modes])
    return (vals * w) @ vals.T


__all__ = [
    "DegenerateModeError",
    "EigenMode",
    "ModeAccuracyError",
    "build_mode",
    "build_modes",
    "bv_residual",
    "bv_tolerance",
    "evaluate",
    "gram_matrix",
]
