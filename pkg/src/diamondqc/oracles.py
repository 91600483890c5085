"""Brute-force reference searches that validate every closed form.

Three independently coded minimizations:

* ``minimize_conditional_entropy`` -- deterministic grid plus shrinking local
  refinement over rank-1 projective measurements on the first qubit; this is
  the authoritative minimum behind quantum discord.
* ``gmqd_variational`` -- squared Hilbert-Schmidt distance to the nearest
  classical-quantum state.  For a fixed measurement axis the closest state is
  the dephased (measured) state, so only the axis is searched.
* ``gqd_1norm_variational`` -- trace-norm distance to the nearest
  classical-quantum state; axis grid plus a deterministic compass search over
  the ansatz (p, bloch1, bloch2).  The result is an upper bound on the true
  minimum, exact on Bell-diagonal inputs.

Everything is seedless and deterministic: identical inputs give bit-identical
outputs.  Ties are broken toward the lowest polar angle, then lowest azimuth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import IDENTITY_2, PAULIS, bloch_decompose


@dataclass(frozen=True)
class GridSpec:
    """Search discretization: polar steps over [0, pi/2], azimuthal steps over
    [0, pi) evaluated under both antipodal labelings, then ``refine_iters``
    local refinements shrinking by ``refine_shrink``."""

    theta_steps: int = 64
    phi_steps: int = 128
    refine_iters: int = 40
    refine_shrink: float = 0.5

    def __post_init__(self):
        if self.theta_steps < 8 or self.phi_steps < 8:
            raise ValueError("grid needs at least 8 steps per angle")
        if not 0.0 < self.refine_shrink < 1.0:
            raise ValueError("refine_shrink must lie in (0, 1)")

    def doubled(self) -> "GridSpec":
        return GridSpec(2 * self.theta_steps, 2 * self.phi_steps,
                        self.refine_iters, self.refine_shrink)


@dataclass(frozen=True)
class MeasurementBasis:
    """Rank-1 projective measurement on one qubit, parametrized by its Bloch axis."""

    axis: np.ndarray

    def __post_init__(self):
        norm = float(np.linalg.norm(self.axis))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"measurement axis must be unit length, got |n|={norm}")

    def projectors(self):
        n = self.axis
        ns = n[0] * PAULIS[0] + n[1] * PAULIS[1] + n[2] * PAULIS[2]
        return (IDENTITY_2 + ns) / 2.0, (IDENTITY_2 - ns) / 2.0


def _axis_vectors(theta, phi):
    """Unit vectors for broadcastable angle arrays."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def _binary_entropy_bits(q):
    q = np.clip(q, 0.0, 1.0)
    out = np.zeros_like(q)
    for p in (q, 1.0 - q):
        mask = p > 0.0
        out = out - np.where(mask, p * np.log2(np.where(mask, p, 1.0)), 0.0)
    return out


def _conditional_entropy(dec, axes):
    """Average post-measurement entropy of the second qubit when the first is
    measured along each row of ``axes``; fully closed-form in the Bloch data."""
    proj = axes @ dec.x
    m = axes @ dec.r  # row i holds n_i^T R
    ce = np.zeros(axes.shape[0])
    for sign in (1.0, -1.0):
        p = 0.5 * (1.0 + sign * proj)
        num = dec.yvec[None, :] + sign * m
        safe_p = np.where(p > 1e-15, p, 1.0)
        bloch_norm = np.linalg.norm(num, axis=1) / (2.0 * safe_p)
        bloch_norm = np.clip(bloch_norm, 0.0, 1.0)
        term = p * _binary_entropy_bits(0.5 * (1.0 + bloch_norm))
        ce += np.where(p > 1e-15, term, 0.0)
    return ce


def _grid_then_refine(objective, grid: GridSpec):
    """Minimize objective(axes) on the coarse grid, then locally refine.

    objective maps an (n, 3) axis stack to an (n,) value array.  Returns
    (value, theta, phi).  np.argmin on the (theta-major) flattened grid breaks
    ties toward the lowest theta, then the lowest phi.
    """
    thetas = np.linspace(0.0, math.pi / 2.0, grid.theta_steps)
    phis = np.linspace(0.0, 2.0 * math.pi, 2 * grid.phi_steps, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    values = objective(_axis_vectors(tt.ravel(), pp.ravel()))
    k = int(np.argmin(values))
    best_val = float(values[k])
    best_t = float(tt.ravel()[k])
    best_p = float(pp.ravel()[k])

    dt = thetas[1] - thetas[0]
    dp = phis[1] - phis[0]
    offsets = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    for _ in range(grid.refine_iters):
        local_t = np.clip(best_t + dt * offsets, 0.0, math.pi / 2.0)
        local_p = best_p + dp * offsets
        lt, lp = np.meshgrid(local_t, local_p, indexing="ij")
        vals = objective(_axis_vectors(lt.ravel(), lp.ravel()))
        k = int(np.argmin(vals))
        if vals[k] < best_val:
            best_val = float(vals[k])
            best_t = float(lt.ravel()[k])
            best_p = float(lp.ravel()[k])
        dt *= grid.refine_shrink
        dp *= grid.refine_shrink
    return best_val, best_t, best_p


def minimize_conditional_entropy(rho: np.ndarray, grid: GridSpec | None = None):
    """Minimum of sum_k p_k S(rho_{B|k}) over projective measurements on the
    first qubit.  Returns (bits, MeasurementBasis)."""
    grid = grid or GridSpec()
    dec = bloch_decompose(rho)
    value, theta, phi = _grid_then_refine(lambda a: _conditional_entropy(dec, a), grid)
    return value, MeasurementBasis(_axis_vectors(theta, phi % (2.0 * math.pi)))


def _projector_stack(axes):
    """(n, 2, 2, 2) array of projector pairs (I +- n.sigma)/2 for each axis."""
    n = axes.shape[0]
    ns = np.tensordot(axes, np.stack(PAULIS), axes=(1, 0))
    stack = np.empty((n, 2, 2, 2), dtype=complex)
    stack[:, 0] = (IDENTITY_2[None, :, :] + ns) / 2.0
    stack[:, 1] = (IDENTITY_2[None, :, :] - ns) / 2.0
    return stack


def _dephased_batch(rho, axes):
    """Measured states sum_s (P_s x I) rho (P_s x I) for a stack of axes."""
    proj = _projector_stack(axes)
    # promote each 2x2 projector to 4x4 (tensor with identity on the second qubit)
    eye = np.eye(2, dtype=complex)
    p4 = np.einsum("nsab,cd->nsacbd", proj, eye).reshape(-1, 2, 4, 4)
    out = np.zeros((axes.shape[0], 4, 4), dtype=complex)
    for s in range(2):
        out += p4[:, s] @ rho[None, :, :] @ p4[:, s]
    return out


def measured_state(rho: np.ndarray, axis: np.ndarray) -> np.ndarray:
    """Dephase the first qubit along a measurement axis."""
    return _dephased_batch(np.asarray(rho, dtype=complex), np.asarray(axis)[None, :])[0]


def gmqd_variational(rho: np.ndarray, grid: GridSpec | None = None) -> float:
    """Minimal squared Hilbert-Schmidt distance to a classical-quantum state.

    For a fixed axis the optimal classical-quantum state is the dephased
    state, so the search runs over the measurement axis only.
    """
    grid = grid or GridSpec()
    rho = np.asarray(rho, dtype=complex)

    def objective(axes):
        delta = rho[None, :, :] - _dephased_batch(rho, axes)
        return np.sum(np.abs(delta) ** 2, axis=(1, 2)).real

    value, _, _ = _grid_then_refine(objective, grid)
    return float(value)


def trace_norm(hermitian: np.ndarray) -> float:
    """Sum of singular values; for Hermitian input these are |eigenvalues|."""
    return float(np.sum(np.abs(np.linalg.eigvalsh(hermitian))))


@dataclass(frozen=True)
class ClassicalQuantumAnsatz:
    """Classical-quantum state p P+ x rho1 + (1-p) P- x rho2 with projectors
    along ``axis`` and conditional states given by Bloch vectors."""

    axis: np.ndarray
    p: float
    bloch1: np.ndarray
    bloch2: np.ndarray

    def state(self) -> np.ndarray:
        proj_p, proj_m = MeasurementBasis(self.axis).projectors()
        q1 = _qubit_state(self.bloch1)
        q2 = _qubit_state(self.bloch2)
        return self.p * np.kron(proj_p, q1) + (1.0 - self.p) * np.kron(proj_m, q2)


def _qubit_state(bloch):
    b = np.asarray(bloch, dtype=float)
    return (IDENTITY_2 + b[0] * PAULIS[0] + b[1] * PAULIS[1] + b[2] * PAULIS[2]) / 2.0


@dataclass(frozen=True)
class SearchBudget:
    """Deterministic budget for the trace-norm search: coarse axis grid,
    dephasing-based axis refinement, then a compass search over the ansatz at
    the best ``top_axes`` candidates (canonical axes always included)."""

    theta_steps: int = 13
    phi_steps: int = 24
    refine_iters: int = 30
    refine_shrink: float = 0.5
    inner_iters: int = 60
    top_axes: int = 4

    def __post_init__(self):
        if self.theta_steps < 5 or self.phi_steps < 8:
            raise ValueError("axis grid too coarse")


@dataclass(frozen=True)
class OneNormEstimate:
    """Best trace-norm distance found; always an upper bound on the true minimum."""

    value: float
    axis: np.ndarray
    flag: str = "UPPER_BOUND"


def _dephase_trace_norms(rho, axes):
    deltas = rho[None, :, :] - _dephased_batch(rho, axes)
    return np.sum(np.abs(np.linalg.eigvalsh(deltas)), axis=1)


def _ansatz_from_dephasing(rho, axis):
    """Initial (p, b1, b2): the second-qubit conditional blocks of the
    dephased state, so the starting ansatz reproduces it exactly."""
    proj_p, proj_m = MeasurementBasis(axis).projectors()
    blocks = []
    weights = []
    for proj in (proj_p, proj_m):
        p4 = np.kron(proj, IDENTITY_2)
        block = np.einsum("abad->bd", (p4 @ rho @ p4).reshape(2, 2, 2, 2))
        wgt = float(np.trace(block).real)
        weights.append(wgt)
        if wgt > 1e-15:
            block = block / wgt
            blocks.append(np.array([np.trace(block @ s).real for s in PAULIS]))
        else:
            blocks.append(np.zeros(3))
    return weights[0], blocks[0], blocks[1]


def _compass_search(objective, vec, iters, step=0.25, min_step=1e-7):
    """Coordinate-wise pattern search with halving steps; deterministic."""
    best = objective(vec)
    for _ in range(iters):
        improved = False
        for k in range(vec.size):
            for sign in (1.0, -1.0):
                trial = vec.copy()
                trial[k] += sign * step
                trial = _project_ansatz_vector(trial)
                val = objective(trial)
                if val < best:
                    best = val
                    vec = trial
                    improved = True
        if not improved:
            step *= 0.5
            if step < min_step:
                break
    return best, vec


def _project_ansatz_vector(vec):
    vec = vec.copy()
    vec[0] = min(max(vec[0], 0.0), 1.0)
    for lo in (1, 4):
        norm = float(np.linalg.norm(vec[lo:lo + 3]))
        if norm > 1.0:
            vec[lo:lo + 3] /= norm
    return vec


def gqd_1norm_variational(rho: np.ndarray, budget: SearchBudget | None = None) -> OneNormEstimate:
    """Upper-bound estimate of the trace-norm distance to the nearest
    classical-quantum state (nested axis grid + ansatz compass search)."""
    budget = budget or SearchBudget()
    rho = np.asarray(rho, dtype=complex)

    thetas = np.linspace(0.0, math.pi / 2.0, budget.theta_steps)
    phis = np.linspace(0.0, 2.0 * math.pi, 2 * budget.phi_steps, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    flat_t, flat_p = tt.ravel(), pp.ravel()
    coarse = _dephase_trace_norms(rho, _axis_vectors(flat_t, flat_p))

    order = np.argsort(coarse, kind="stable")[: budget.top_axes]
    candidates = [(float(flat_t[k]), float(flat_p[k])) for k in order]
    # canonical axes keep the Bell-diagonal optimum in reach regardless of grid
    candidates += [(math.pi / 2.0, 0.0), (math.pi / 2.0, math.pi / 2.0), (0.0, 0.0)]

    grid = GridSpec(max(budget.theta_steps, 8), max(budget.phi_steps, 8),
                    budget.refine_iters, budget.refine_shrink)
    dt = thetas[1] - thetas[0]
    dp = phis[1] - phis[0]
    offsets = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])

    best_value = math.inf
    best_axis = _axis_vectors(0.0, 0.0)
    for theta0, phi0 in candidates:
        t0, p0 = theta0, phi0
        val0 = float(_dephase_trace_norms(rho, _axis_vectors(t0, p0)[None, :])[0])
        ldt, ldp = dt, dp
        for _ in range(grid.refine_iters):
            lt, lp = np.meshgrid(np.clip(t0 + ldt * offsets, 0.0, math.pi / 2.0),
                                 p0 + ldp * offsets, indexing="ij")
            vals = _dephase_trace_norms(rho, _axis_vectors(lt.ravel(), lp.ravel()))
            k = int(np.argmin(vals))
            if vals[k] < val0:
                val0 = float(vals[k])
                t0 = float(lt.ravel()[k])
                p0 = float(lp.ravel()[k])
            ldt *= grid.refine_shrink
            ldp *= grid.refine_shrink

        axis = _axis_vectors(t0, p0 % (2.0 * math.pi))
        p_init, b1, b2 = _ansatz_from_dephasing(rho, axis)
        vec = np.concatenate([[p_init], b1, b2])

        def objective(v, axis=axis):
            ansatz = ClassicalQuantumAnsatz(axis=axis, p=v[0],
                                            bloch1=v[1:4], bloch2=v[4:7])
            return trace_norm(rho - ansatz.state())

        val, vec = _compass_search(objective, _project_ansatz_vector(vec),
                                   budget.inner_iters)
        if val < best_value:
            best_value = val
            best_axis = axis
    return OneNormEstimate(value=float(best_value), axis=best_axis)
