"""Hot numeric loops: characteristic-determinant root scan and leapfrog stepping.

Each kernel has a numba ``@njit`` implementation and a vectorized numpy
implementation.  ``BEAMSPEC_DISABLE_JIT=1`` (or a missing numba) selects
the numpy path; both are importable directly for benchmarking.

The characteristic matrix is expressed in the dimensionless variable
z = κℓ with the bounded basis {e^{-κx}, e^{-κ(ℓ-x)}, cos κx, sin κx}; each
row is divided by κ^order so every entry lies in [-1, 1].
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _env_disables_jit() -> bool:
    return os.environ.get("BEAMSPEC_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes", "on")


JIT_ENABLED = numba is not None and not _env_disables_jit()

# |det| at or below this is treated as sign-indeterminate during the scan
DET_FLOOR = 1e-12

# signs of d^k/dx^k applied to (cos, sin), indexed by k % 4, as (coef, use_sin)
_COS_CYCLE = np.array([[1.0, 0.0], [0.0, -1.0], [-1.0, 0.0], [0.0, 1.0]])
_SIN_CYCLE = np.array([[0.0, 1.0], [1.0, 0.0], [0.0, -1.0], [-1.0, 0.0]])


def char_matrices(ends, orders, z):
    """Scaled characteristic matrices for an array of z = κℓ values, shape (len(z), 4, 4)."""
    ends = np.asarray(ends, dtype=np.float64)
    orders = np.asarray(orders, dtype=np.int64)
    z = np.atleast_1d(np.asarray(z, dtype=np.float64))
    zx = z[:, None] * ends[None, :]
    c, s = np.cos(zx), np.sin(zx)
    k = orders % 4
    out = np.empty((z.size, len(orders), 4))
    out[:, :, 0] = np.where(orders % 2 == 0, 1.0, -1.0)[None, :] * np.exp(-zx)
    out[:, :, 1] = np.exp(-(z[:, None] - zx))
    out[:, :, 2] = _COS_CYCLE[k, 0] * c + _COS_CYCLE[k, 1] * s
    out[:, :, 3] = _SIN_CYCLE[k, 0] * c + _SIN_CYCLE[k, 1] * s
    return out


def char_dets_numpy(ends, orders, z):
    return np.linalg.det(char_matrices(ends, orders, z))


def scan_roots_numpy(ends, orders, z_start, dz, z_max, count, rtol=1e-13, floor=DET_FLOOR):
    """Smallest ``count`` sign-change roots of the determinant on [z_start, z_max].

    Returns a possibly shorter array if the scan ceiling is reached.
    """
    n_grid = int(np.floor((z_max - z_start) / dz)) + 1
    z = z_start + dz * np.arange(n_grid)
    f = char_dets_numpy(ends, orders, z)
    keep = np.abs(f) > floor
    z, f = z[keep], f[keep]
    change = np.nonzero(np.sign(f[:-1]) != np.sign(f[1:]))[0][:count]
    a, b = z[change].copy(), z[change + 1].copy()
    sa = np.sign(f[change])
    for _ in range(200):
        active = (b - a) > rtol * b
        if not active.any():
            break
        mid = 0.5 * (a + b)
        sm = np.sign(char_dets_numpy(ends, orders, mid))
        left = (sm == sa) & active
        right = (sm != sa) & active
        a = np.where(left, mid, a)
        b = np.where(right, mid, b)
    return 0.5 * (a + b)


def leapfrog_numpy(K, u, v, dt, nsteps, stride):
    """Velocity Verlet for u'' = -K u; records every ``stride`` steps (including step 0)."""
    nrec = nsteps // stride + 1
    U = np.empty((nrec, u.size))
    V = np.empty((nrec, u.size))
    u = u.copy()
    v = v.copy()
    U[0], V[0] = u, v
    acc = -(K @ u)
    rec = 1
    for step in range(1, nsteps + 1):
        v += 0.5 * dt * acc
        u += dt * v
        acc = -(K @ u)
        v += 0.5 * dt * acc
        if step % stride == 0:
            U[rec], V[rec] = u, v
            rec += 1
    return U, V


if numba is not None:

    @numba.njit(cache=True)
    def _char_matrix_jit(ends, orders, z):
        m = np.empty((4, 4))
        for r in range(4):
            zx = z * ends[r]
            k = orders[r]
            c = np.cos(zx)
            s = np.sin(zx)
            m[r, 0] = (1.0 if k % 2 == 0 else -1.0) * np.exp(-zx)
            m[r, 1] = np.exp(-(z - zx))
            j = k % 4
            if j == 0:
                m[r, 2], m[r, 3] = c, s
            elif j == 1:
                m[r, 2], m[r, 3] = -s, c
            elif j == 2:
                m[r, 2], m[r, 3] = -c, -s
            else:
                m[r, 2], m[r, 3] = s, -c
        return m

    @numba.njit(cache=True)
    def _det4_jit(m):
        a = m.copy()
        det = 1.0
        for col in range(4):
            piv = col
            for r in range(col + 1, 4):
                if abs(a[r, col]) > abs(a[piv, col]):
                    piv = r
            if a[piv, col] == 0.0:
                return 0.0
            if piv != col:
                for c in range(4):
                    a[col, c], a[piv, c] = a[piv, c], a[col, c]
                det = -det
            det *= a[col, col]
            for r in range(col + 1, 4):
                fac = a[r, col] / a[col, col]
                for c in range(col, 4):
                    a[r, c] -= fac * a[col, c]
        return det

    @numba.njit(cache=True)
    def _char_det_jit(ends, orders, z):
        return _det4_jit(_char_matrix_jit(ends, orders, z))

    @numba.njit(cache=True)
    def _scan_roots_jit(ends, orders, z_start, dz, z_max, count, rtol, floor):
        roots = np.empty(count)
        found = 0
        have_prev = False
        z_prev = 0.0
        f_prev = 0.0
        n_grid = int(np.floor((z_max - z_start) / dz)) + 1
        for i in range(n_grid):
            if found == count:
                break
            z = z_start + dz * i
            f = _char_det_jit(ends, orders, z)
            if abs(f) <= floor:
                continue
            if have_prev and (f > 0.0) != (f_prev > 0.0):
                a = z_prev
                b = z
                pos_a = f_prev > 0.0
                while b - a > rtol * b:
                    mid = 0.5 * (a + b)
                    if (_char_det_jit(ends, orders, mid) > 0.0) == pos_a:
                        a = mid
                    else:
                        b = mid
                roots[found] = 0.5 * (a + b)
                found += 1
            have_prev = True
            z_prev = z
            f_prev = f
        return roots[:found]

    @numba.njit(cache=True)
    def _leapfrog_jit(K, u, v, dt, nsteps, stride):
        n = u.size
        nrec = nsteps // stride + 1
        U = np.empty((nrec, n))
        V = np.empty((nrec, n))
        u = u.copy()
        v = v.copy()
        U[0] = u
        V[0] = v
        acc = -np.dot(K, u)
        rec = 1
        half = 0.5 * dt
        for step in range(1, nsteps + 1):
            for i in range(n):
                v[i] += half * acc[i]
                u[i] += dt * v[i]
            acc = -np.dot(K, u)
            for i in range(n):
                v[i] += half * acc[i]
            if step % stride == 0:
                U[rec] = u
                V[rec] = v
                rec += 1
        return U, V

    def scan_roots_jit(ends, orders, z_start, dz, z_max, count, rtol=1e-13, floor=DET_FLOOR):
        return _scan_roots_jit(
            np.asarray(ends, dtype=np.float64),
            np.asarray(orders, dtype=np.int64),
            float(z_start), float(dz), float(z_max), int(count), float(rtol), float(floor),
        )

    def char_dets_jit(ends, orders, z):
        ends = np.asarray(ends, dtype=np.float64)
        orders = np.asarray(orders, dtype=np.int64)
        z = np.atleast_1d(np.asarray(z, dtype=np.float64))
        return np.array([_char_det_jit(ends, orders, zi) for zi in z])

    def leapfrog_jit(K, u, v, dt, nsteps, stride):
        return _leapfrog_jit(
            np.ascontiguousarray(K, dtype=np.float64),
            np.ascontiguousarray(u, dtype=np.float64),
            np.ascontiguousarray(v, dtype=np.float64),
            float(dt), int(nsteps), int(stride),
        )


def scan_roots(*args, **kwargs):
    if JIT_ENABLED:
        return scan_roots_jit(*args, **kwargs)
    return scan_roots_numpy(*args, **kwargs)


def leapfrog(K, u, v, dt, nsteps, stride):
    if JIT_ENABLED:
        return leapfrog_jit(K, u, v, dt, nsteps, stride)
    return leapfrog_numpy(K, u, v, dt, nsteps, stride)


def backend() -> str:
    return "numba" if JIT_ENABLED else "numpy"
