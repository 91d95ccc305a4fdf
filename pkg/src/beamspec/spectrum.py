"""Eigenvalues a_n = κ_n⁴ of the fourth-order beam operators.

Group I cases have closed forms.  For group II the nonzero κ_n are the
sign changes of the scaled 4x4 boundary determinant; the zero eigenvalue
(rigid-body motion) is handled separately by :func:`zero_modes`.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np

from . import kernels
from .quadrature import BeamGeometry
from .shapes import PolynomialShape
from .supports import EndPoint, Group, SupportCase, parse_case

log = logging.getLogger(__name__)

N_MAX = 25
SCAN_START = 1e-4
SCAN_STEP = np.pi / 8
ROOT_RTOL = 1e-13
NULL_PIVOT_RATIO = 1e-7
RANK_PIVOT_RATIO = 1e-6


class Origin(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    DETERMINANT_ROOT = "DeterminantRoot"
    RIGID_BODY = "RigidBody"


class RootScanError(RuntimeError):
    pass


class DegenerateModeError(RuntimeError):
    pass


@dataclass(frozen=True)
class EigenvalueRecord:
    index: int
    kappa: float
    eigenvalue: float
    origin: Origin

    @classmethod
    def from_kappa(cls, index, kappa, origin):
        kappa = float(kappa)
        return cls(index, kappa, kappa**4, origin)


def canonical_case(case) -> SupportCase:
    """Accept a SupportCase or any (possibly mirrored) name; spectra are reflection invariant."""
    if isinstance(case, SupportCase):
        return case
    return parse_case(case)[0]


def _check_count(n):
    if n < 1:
        raise ValueError("mode count must be >= 1")
    if n > N_MAX:
        raise ValueError(f"mode count {n} exceeds the supported maximum N_max={N_MAX}")


def analytic_spectrum(case, geom: BeamGeometry, count: int) -> list[EigenvalueRecord]:
    case = canonical_case(case)
    _check_count(count)
    if case.group is not Group.ANALYTIC_I:
        raise ValueError(f"{case.name} has no closed-form spectrum; use find_kappas()")
    ell = geom.length
    n = np.arange(1, count + 1)
    if case.name == "AA":
        kappas = n * np.pi / ell
    elif case.name == "Add1":
        kappas = (n - 1) * np.pi / ell
    else:
        kappas = (2 * n - 1) * np.pi / (2 * ell)
    return [
        EigenvalueRecord.from_kappa(
            i, k, Origin.RIGID_BODY if k == 0 else Origin.CLOSED_FORM
        )
        for i, k in zip(n.tolist(), kappas)
    ]


def _rows(case: SupportCase):
    ends = np.array([0.0 if c.end is EndPoint.LEFT else 1.0 for c in case.constraints])
    orders = np.array([c.derivative_order for c in case.constraints], dtype=np.int64)
    return ends, orders


def characteristic_matrix(case, kappa: float, geom: BeamGeometry, basis: str = "exponential") -> np.ndarray:
    """Scaled boundary matrix; row r applies constraint r to the four basis functions.

    Rows are divided by κ^order.  ``basis="exponential"`` uses
    {e^{-κx}, e^{-κ(l-x)}, cos κx, sin κx}; ``basis="hyperbolic"`` uses
    {cosh κx, sinh κx}/cosh κl for the first two columns.  The two
    determinants differ by the positive factor e^{κl}/(2 cosh² κl).
    """
    case = canonical_case(case)
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    ends, orders = _rows(case)
    z = kappa * geom.length
    if basis == "exponential":
        return kernels.char_matrices(ends, orders, z)[0]
    if basis != "hyperbolic":
        raise ValueError(f"unknown basis {basis!r}")
    m = kernels.char_matrices(ends, orders, z)[0]
    sech, tanh = 1.0 / np.cosh(z), np.tanh(z)
    for r, (e, k) in enumerate(zip(ends, orders)):
        even = k % 2 == 0
        if e == 0.0:
            m[r, :2] = (sech, 0.0) if even else (0.0, sech)
        else:
            m[r, :2] = (1.0, tanh) if even else (tanh, 1.0)
    return m


def characteristic_function(case, kappa: float, geom: BeamGeometry) -> float:
    return float(np.linalg.det(characteristic_matrix(case, kappa, geom)))


def full_pivot_elimination(m: np.ndarray, tol: float = 0.0):
    """Gaussian elimination with complete pivoting.

    Returns (pivots, row order, column order, reduced upper-triangular matrix).
    """
    a = np.array(m, dtype=float)
    n = a.shape[0]
    rows = np.arange(n)
    cols = np.arange(n)
    pivots = []
    for k in range(n):
        sub = np.abs(a[k:, k:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        i += k
        j += k
        a[[k, i], :] = a[[i, k], :]
        rows[[k, i]] = rows[[i, k]]
        a[:, [k, j]] = a[:, [j, k]]
        cols[[k, j]] = cols[[j, k]]
        p = a[k, k]
        pivots.append(p)
        if p == 0.0:
            continue
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / p, a[k, k:])
    return np.array(pivots), rows, cols, a


def null_vector(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Null vector of a rank-3 4x4 matrix and the pivot magnitudes.

    Raises DegenerateModeError unless exactly one pivot is negligible.
    """
    pivots, _, cols, u = full_pivot_elimination(m)
    mag = np.abs(pivots)
    top = mag[0]
    if top == 0 or mag[3] / top >= NULL_PIVOT_RATIO or mag[2] / top <= RANK_PIVOT_RATIO:
        raise DegenerateModeError(
            f"characteristic matrix is not of rank 3 (pivot ratios {mag / top if top else mag})"
        )
    # free variable is the last pivot column
    y = np.zeros(4)
    y[3] = 1.0
    for k in (2, 1, 0):
        y[k] = -np.dot(u[k, k + 1:], y[k + 1:]) / u[k, k]
    v = np.zeros(4)
    v[cols] = y
    return v / np.max(np.abs(v)), mag


def find_kappas(case, geom: BeamGeometry, count: int) -> np.ndarray:
    """The ``count`` smallest positive roots κ of the characteristic function."""
    case = canonical_case(case)
    _check_count(count)
    ends, orders = _rows(case)
    z_max = (count + 3) * np.pi
    z = kernels.scan_roots(ends, orders, SCAN_START, SCAN_STEP, z_max, count, ROOT_RTOL)
    if len(z) < count:
        raise RootScanError(
            f"{case.name}: found {len(z)} of {count} roots below the scan ceiling kappa*l = {z_max:.6g}"
        )
    for zi in z:
        null_vector(kernels.char_matrices(ends, orders, zi)[0])
    log.debug("%s roots kappa*l = %s (backend %s)", case.name, z, kernels.backend())
    return z / geom.length


def zero_modes(case, geom: BeamGeometry) -> list[PolynomialShape]:
    """Orthonormal rigid-body shapes a + b x in the kernel of the operator."""
    case = canonical_case(case)
    ell = geom.length
    if case.name == "Add1":
        return [PolynomialShape(1 / np.sqrt(ell), 0.0)]
    if case.name == "AC":
        return [PolynomialShape(0.0, np.sqrt(3 / ell**3))]
    if case.name == "CC":
        slope = np.sqrt(12 / ell**3)
        return [PolynomialShape(1 / np.sqrt(ell), 0.0), PolynomialShape(-slope * ell / 2, slope)]
    return []


def eigenvalues(case, geom: BeamGeometry, count: int) -> list[EigenvalueRecord]:
    """First ``count`` eigenvalue records, rigid-body modes first."""
    case = canonical_case(case)
    _check_count(count)
    if case.group is Group.ANALYTIC_I:
        return analytic_spectrum(case, geom, count)
    n_zero = min(case.kernel_dimension, count)
    records = [EigenvalueRecord(i + 1, 0.0, 0.0, Origin.RIGID_BODY) for i in range(n_zero)]
    n_roots = count - n_zero
    if n_roots:
        kappas = find_kappas(case, geom, n_roots)
        records += [
            EigenvalueRecord.from_kappa(n_zero + i + 1, k, Origin.DETERMINANT_ROOT)
            for i, k in enumerate(kappas)
        ]
    return records
