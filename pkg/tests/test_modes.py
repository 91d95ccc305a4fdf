import math

import numpy as np
import pytest

from beamspec.modes import (
    EigenMode,
    ModeAccuracyError,
    build_mode,
    build_modes,
    bv_residual,
    bv_tolerance,
    gram_matrix,
)
from beamspec.quadrature import BeamGeometry
from beamspec.spectrum import DegenerateModeError, EigenvalueRecord, Origin, eigenvalues, null_vector
from beamspec.supports import CASE_NAMES

from conftest import cached_modes

UNIT = BeamGeometry(1.0)
XS = np.linspace(0, 1, 50)


def test_first_pinned_pinned_mode():
    m = cached_modes("AA")[0]
    np.testing.assert_allclose(m(XS), math.sqrt(2) * np.sin(math.pi * XS), atol=1e-15)
    assert m.evaluate(0.5) == pytest.approx(math.sqrt(2), rel=1e-15)


def test_fourth_derivative_is_eigenvalue_times_mode():
    m = cached_modes("AA")[0]
    np.testing.assert_allclose(m.evaluate(XS, 4), math.pi**4 * m(XS), rtol=1e-10, atol=1e-10)


def test_pinned_clamped_shape_matches_reduced_form():
    m = cached_modes("AB")[0]
    k = m.kappa
    ref = np.sin(k * XS) - math.cos(k) / math.cosh(k) * np.sinh(k * XS)
    ratio = m(XS[1:-1]) / ref[1:-1]
    assert np.ptp(ratio) < 1e-10 * abs(ratio[0])
    assert abs(m.evaluate(0.0, 2)) < 1e-8 * k**2


def test_free_free_rigid_pair():
    modes = cached_modes("CC")
    assert modes[0].kappa == 0 and modes[1].kappa == 0
    np.testing.assert_allclose(modes[1](XS), math.sqrt(12) * (XS - 0.5), atol=1e-14)
    assert modes[0].record.origin is Origin.RIGID_BODY


@pytest.mark.parametrize("case", CASE_NAMES)
def test_gram_and_boundary_residuals(case):
    modes = cached_modes(case)
    gram = gram_matrix(list(modes))
    assert np.max(np.abs(gram - np.eye(len(modes)))) < 1e-7
    assert np.max(np.abs(np.diag(gram) - 1)) < 1e-9
    for m in modes:
        assert bv_residual(m) < (1e-8 if m.index <= 4 else 1e-6)


def test_gram_small_examples():
    assert np.max(np.abs(gram_matrix(list(cached_modes("AA")[:4])) - np.eye(4))) < 1e-10
    assert np.max(np.abs(gram_matrix(list(cached_modes("AB")[:6])) - np.eye(6))) < 1e-7
    assert np.max(np.abs(gram_matrix(list(cached_modes("CC")[:4])) - np.eye(4))) < 1e-7


def test_gram_rejects_mixed_cases():
    with pytest.raises(ValueError):
        gram_matrix([cached_modes("AA")[0], cached_modes("AB")[0]])


@pytest.mark.parametrize("case", CASE_NAMES)
def test_eigen_equation_residual(case):
    for m in cached_modes(case):
        if m.eigenvalue == 0:
            np.testing.assert_array_equal(m.evaluate(XS, 4), 0)
            continue
        vals = m(XS)
        resid = np.abs(m.evaluate(XS, 4) - m.eigenvalue * vals)
        assert resid.max() <= 1e-8 * m.eigenvalue * np.abs(vals).max()


@pytest.mark.parametrize("case", CASE_NAMES)
def test_sign_convention(case):
    for m in cached_modes(case):
        if m.record.origin is Origin.RIGID_BODY:
            continue
        vals = [m.evaluate(0.0, k) / max(1.0, m.kappa**k) for k in range(4)]
        first = next(v for v in vals if abs(v) > 1e-6)
        assert first > 0


@pytest.mark.parametrize("mirrored,base", [("BA", "AB"), ("CA", "AC"), ("CB", "BC")])
def test_reflection(mirrored, base):
    ref = cached_modes(base, 6)
    for m, b in zip(build_modes(mirrored, UNIT, 6), ref):
        assert m.reflected
        np.testing.assert_allclose(m(XS), b(1 - XS), atol=1e-12)
        np.testing.assert_allclose(m.evaluate(XS, 1), -b.evaluate(1 - XS, 1), atol=1e-12 * max(1, b.kappa))
        assert bv_residual(m) < 1e-8 if m.index <= 4 else 1e-6


def test_evaluate_domain_and_order_checks():
    m = cached_modes("AB")[0]
    with pytest.raises(ValueError):
        m.evaluate(1.1)
    with pytest.raises(ValueError):
        m.evaluate(-0.01)
    with pytest.raises(ValueError):
        m.evaluate(0.5, 5)


def test_high_index_residual_example():
    m = cached_modes("BC")[9]
    assert bv_residual(m) < 1e-6


def test_non_root_is_rejected():
    rec = EigenvalueRecord.from_kappa(1, 3.0, Origin.DETERMINANT_ROOT)
    with pytest.raises(DegenerateModeError):
        build_mode("AB", rec, UNIT)


def test_inaccurate_root_is_rejected():
    good = eigenvalues("AB", UNIT, 1)[0]
    rec = EigenvalueRecord.from_kappa(1, good.kappa * (1 + 5e-9), Origin.DETERMINANT_ROOT)
    with pytest.raises(ModeAccuracyError):
        build_mode("AB", rec, UNIT)


def test_null_vector_rejects_full_rank():
    with pytest.raises(DegenerateModeError):
        null_vector(np.eye(4))


def test_bv_tolerance_schedule():
    assert bv_tolerance(1) == pytest.approx(1e-8)
    assert bv_tolerance(12) == pytest.approx(1e-6)
    assert bv_tolerance(25) == pytest.approx(1e-6)


def test_twenty_five_modes_build_for_every_case():
    for case in CASE_NAMES:
        modes = build_modes(case, UNIT, 25)
        assert all(isinstance(m, EigenMode) for m in modes)
        assert all(bv_residual(m) <= bv_tolerance(m.index) for m in modes)


def test_hyperbolic_coefficients_reproduce_values():
    m = cached_modes("BB")[0]
    a1, a2, a3, a4 = m.shape.hyperbolic_coefficients()
    k = m.kappa
    direct = a1 * np.cosh(k * XS) + a2 * np.sinh(k * XS) + a3 * np.cos(k * XS) + a4 * np.sin(k * XS)
    np.testing.assert_allclose(direct, m(XS), atol=1e-12)
