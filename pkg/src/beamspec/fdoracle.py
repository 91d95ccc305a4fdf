"""Staggered-grid finite differences built from the first-order factors.

Nodes sit at x_j = j h (j = 0..m+1), edges at the midpoints.  The two
rightmost factors of a support's factorization become a node-to-edge
difference D followed by an edge-to-node difference B, so that

    G = S B D M^{-1/2},   A_h = Gᵀ G

where M is the trapezoid mass on the retained nodes and S weights the
one-sided boundary rows of B.  A_h is therefore symmetric positive
semidefinite by construction, and its kernel reproduces the rigid-body
modes of the continuous operator.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import svdvals

from . import kernels
from .quadrature import BeamGeometry
from .spectrum import canonical_case
from .supports import SupportCase, factor_bv_flags, parse_case

log = logging.getLogger(__name__)

STABILITY_FACTOR = 1.9
KERNEL_RTOL = 1e-8


class UnstableStepError(ValueError):
    pass


@dataclass(frozen=True)
class StaggeredGrid:
    length: float
    m: int

    def __post_init__(self):
        if self.m < 8:
            raise ValueError(f"grid needs m >= 8 interior nodes, got {self.m}")
        if not (self.length > 0 and math.isfinite(self.length)):
            raise ValueError("grid length must be positive")

    @property
    def h(self) -> float:
        return self.length / (self.m + 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.m + 2) * self.h

    @property
    def edges(self) -> np.ndarray:
        return (np.arange(self.m + 1) + 0.5) * self.h


def _node_tag(left: bool, right: bool, prefix: str = "nodes") -> str:
    if left and right:
        return f"{prefix}_with_both_zero"
    if left:
        return f"{prefix}_with_left_zero"
    if right:
        return f"{prefix}_with_right_zero"
    return f"all_{prefix}"


@dataclass(frozen=True, eq=False)
class DifferenceMatrix:
    matrix: np.ndarray
    domain: str
    codomain: str

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def T(self) -> np.ndarray:
        return self.matrix.T


def difference_matrix(left_bv: bool, right_bv: bool, grid: StaggeredGrid) -> DifferenceMatrix:
    """Forward difference nodes -> edges; constrained end-node columns removed."""
    n = grid.m + 2
    full = (np.eye(n - 1, n, 1) - np.eye(n - 1, n)) / grid.h
    keep = _kept_nodes(left_bv, right_bv, n)
    return DifferenceMatrix(full[:, keep], _node_tag(left_bv, right_bv), "edges")


def edge_difference_matrix(left_bv: bool, right_bv: bool, grid: StaggeredGrid) -> DifferenceMatrix:
    """Difference edges -> nodes with the edge function held at zero outside [0, l] where flagged.

    Interior rows (ξ'_{j+1/2} - ξ'_{j-1/2})/h always exist.  A flagged end
    contributes a one-sided row at that end node, using a zero ghost value.
    """
    m = grid.m
    h = grid.h
    rows = [(np.eye(m, m + 1, 1) - np.eye(m, m + 1)) / h]
    if left_bv:
        r = np.zeros((1, m + 1))
        r[0, 0] = 1 / h
        rows.insert(0, r)
    if right_bv:
        r = np.zeros((1, m + 1))
        r[0, -1] = -1 / h
        rows.append(r)
    return DifferenceMatrix(np.vstack(rows), _node_tag(left_bv, right_bv, "edges"), "nodes")


def _kept_nodes(left_bv, right_bv, n):
    return [j for j in range(n) if not ((j == 0 and left_bv) or (j == n - 1 and right_bv))]


def adjoint_identity_check(grid: StaggeredGrid) -> float:
    """max |Dᵀ_ab + B_{not a, not b}| over the four flag pairs (exactly zero)."""
    worst = 0.0
    for left in (True, False):
        for right in (True, False):
            d = difference_matrix(left, right, grid).matrix
            b = edge_difference_matrix(not left, not right, grid).matrix
            if d.T.shape != b.shape:
                return math.inf
            worst = max(worst, float(np.max(np.abs(d.T + b))))
    return worst


def dirichlet_laplacian(grid: StaggeredGrid) -> np.ndarray:
    """Tridiagonal (1, -2, 1)/h² on the interior nodes."""
    m = grid.m
    return (np.eye(m, k=1) - 2 * np.eye(m) + np.eye(m, k=-1)) / grid.h**2


@dataclass(frozen=True, eq=False)
class DiscreteOperator:
    case: SupportCase
    grid: StaggeredGrid
    A: np.ndarray
    G: np.ndarray
    free_nodes: np.ndarray
    mass: np.ndarray
    reflected: bool = False
    outer: DifferenceMatrix | None = None
    inner: DifferenceMatrix | None = None

    @property
    def size(self) -> int:
        return self.A.shape[0]


def assemble_operator(case, grid: StaggeredGrid) -> DiscreteOperator:
    reflected = False
    if isinstance(case, str):
        case, reflected = parse_case(case)
    case = canonical_case(case)
    (l1, r1), (l2, r2) = factor_bv_flags(case)
    inner = difference_matrix(l1, r1, grid)
    outer = edge_difference_matrix(l2, r2, grid)
    n = grid.m + 2
    keep = np.array(_kept_nodes(l1, r1, n))

    weights = np.ones(outer.shape[0])
    if l2:
        weights[0] = math.sqrt(2)
    if r2:
        weights[-1] = math.sqrt(2)
    mass = np.where((keep == 0) | (keep == n - 1), 0.5, 1.0)

    G = (weights[:, None] * (outer.matrix @ inner.matrix)) / np.sqrt(mass)[None, :]
    A = G.T @ G
    if reflected:
        # reversing node order maps the case onto its mirror image
        A = A[::-1, ::-1].copy()
        G = G[:, ::-1].copy()
        keep = (n - 1 - keep)[::-1].copy()
        mass = mass[::-1].copy()
    return DiscreteOperator(case, grid, A, G, keep, mass, reflected, outer, inner)


def eigenvalues(op: DiscreteOperator) -> np.ndarray:
    """All eigenvalues of A_h, ascending, as squared singular values of G."""
    s = svdvals(op.G)
    lam = np.sort(s**2)
    missing = op.size - lam.size
    if missing > 0:
        lam = np.concatenate([np.zeros(missing), lam])
    return lam


def lowest_eigenvalues(op: DiscreteOperator, k: int) -> np.ndarray:
    if not 1 <= k <= op.size:
        raise ValueError(f"k must lie in 1..{op.size}")
    return eigenvalues(op)[:k]


def kernel_count(op: DiscreteOperator, lam: np.ndarray | None = None) -> int:
    """Eigenvalues below 1e-8 times the third smallest (the kernel is at most 2-dimensional)."""
    lam = eigenvalues(op) if lam is None else lam
    return int(np.sum(lam < KERNEL_RTOL * lam[2]))


def lowest_positive_eigenvalues(op: DiscreteOperator, k: int) -> np.ndarray:
    lam = eigenvalues(op)
    z = kernel_count(op, lam)
    return lam[z:z + k]


@dataclass(frozen=True, eq=False)
class LeapfrogResult:
    times: np.ndarray
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray
    energy: np.ndarray
    dt: float
    steps: int


def _node_samples(values, grid: StaggeredGrid) -> np.ndarray:
    if hasattr(values, "evaluate"):
        return values.evaluate(grid.nodes, BeamGeometry(grid.length))
    if callable(values):
        return np.asarray(values(grid.nodes), dtype=float)
    arr = np.asarray(values, dtype=float)
    if arr.shape != (grid.m + 2,):
        raise ValueError(f"node samples must have length m+2 = {grid.m + 2}")
    return arr


def stable_step(op: DiscreteOperator, sigma: float) -> float:
    lam_max = float(eigenvalues(op)[-1])
    return STABILITY_FACTOR / (sigma * math.sqrt(lam_max))


def leapfrog_evolve(op: DiscreteOperator, u0, v0, sigma: float, dt: float, T: float, frames: int = 2) -> LeapfrogResult:
    """Störmer-Verlet for u'' = -ς² A_h u, recorded at ``frames`` equally spaced times in [0, T].

    The step is shortened if needed so that every frame falls on a step.
    ``energy`` is the discrete invariant ½|v|² + ½ς² uᵀ(A - (ς dt)² A²/4)u,
    which the scheme conserves to round-off.
    """
    if not sigma > 0 or not dt > 0 or not T >= 0:
        raise ValueError("sigma and dt must be positive and T nonnegative")
    if frames < 1:
        raise ValueError("frames must be >= 1")
    limit = stable_step(op, sigma)
    if dt > limit:
        raise UnstableStepError(f"dt={dt:.3e} exceeds the stability bound {limit:.3e}")

    grid = op.grid
    root_mass = np.sqrt(op.mass)
    y = _node_samples(u0, grid)[op.free_nodes] * root_mass
    w = _node_samples(v0, grid)[op.free_nodes] * root_mass

    intervals = max(frames - 1, 1)
    span = T / intervals
    stride = max(1, math.ceil(span / dt)) if T > 0 else 1
    step = span / stride if T > 0 else 0.0
    nsteps = stride * intervals if T > 0 else 0
    K = sigma**2 * op.A
    Y, W = kernels.leapfrog(K, y, w, step, nsteps, stride)
    if frames == 1:
        Y, W = Y[-1:], W[-1:]
    times = np.linspace(0.0, T, frames) if frames > 1 else np.array([T])

    modified = K - (step**2 / 4) * (K @ K)
    energy = 0.5 * np.einsum("ij,ij->i", W, W) + 0.5 * np.einsum("ij,jk,ik->i", Y, modified, Y)

    n = grid.m + 2
    u = np.zeros((len(times), n))
    v = np.zeros((len(times), n))
    u[:, op.free_nodes] = Y / root_mass
    v[:, op.free_nodes] = W / root_mass
    log.debug("leapfrog %s: %d steps of %.3e", op.case.name, nsteps, step)
    return LeapfrogResult(times, grid.nodes, u, v, energy, step, nsteps)
