"""The numba and numpy implementations of the hot loops must agree."""
import os
import subprocess
import sys

import numpy as np
import pytest

from beamspec import kernels, spectrum
from beamspec.supports import CASE_NAMES, get_case

needs_numba = pytest.mark.skipif(kernels.numba is None, reason="numba not installed")


@needs_numba
@pytest.mark.parametrize("case", CASE_NAMES)
def test_root_scans_agree(case):
    ends, orders = spectrum._rows(get_case(case))
    args = (ends, orders, spectrum.SCAN_START, spectrum.SCAN_STEP, 28 * np.pi, 25)
    a = kernels.scan_roots_numpy(*args)
    b = kernels.scan_roots_jit(*args)
    assert a.shape == b.shape
    np.testing.assert_allclose(a, b, rtol=1e-13)


@needs_numba
def test_determinants_agree():
    ends, orders = spectrum._rows(get_case("BC"))
    z = np.linspace(0.1, 80, 500)
    np.testing.assert_allclose(kernels.char_dets_numpy(ends, orders, z), kernels.char_dets_jit(ends, orders, z),
                               rtol=1e-10, atol=1e-15)


@needs_numba
def test_leapfrog_agrees():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(12, 12))
    K = a @ a.T
    u, v = rng.normal(size=12), rng.normal(size=12)
    dt = 0.5 / np.sqrt(np.linalg.eigvalsh(K)[-1])
    U1, V1 = kernels.leapfrog_numpy(K, u, v, dt, 300, 30)
    U2, V2 = kernels.leapfrog_jit(K, u, v, dt, 300, 30)
    assert U1.shape == (11, 12)
    np.testing.assert_allclose(U1, U2, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(V1, V2, rtol=1e-12, atol=1e-12)


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, BEAMSPEC_DISABLE_JIT="1")
    out = subprocess.run(
        [sys.executable, "-c", "from beamspec import kernels, spectrum, quadrature as q;"
         "print(kernels.backend(), float(spectrum.find_kappas('AB', q.BeamGeometry(1.0), 1)[0]))"],
        env=env, capture_output=True, text=True, check=True,
    )
    backend, kappa = out.stdout.split()
    assert backend == "numpy"
    assert abs(float(kappa) - 3.9266023120479188) < 1e-12
