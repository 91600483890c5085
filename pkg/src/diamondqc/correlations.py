"""Correlation measures of the cluster state.

All entropies are in bits (log base 2, 0 log 0 = 0).  Quantum discord here is
always the definitional value: the measurement minimization is delegated to
the deterministic search in :mod:`diamondqc.oracles`.  The closed binary
entropy shortcut ``min_conditional_entropy_closed`` is exposed as a labeled
fast path only; whenever it exceeds the searched minimum the difference is a
documented deviation of the shortcut, never adopted silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotBellDiagonal, PositivityViolation
from .model import (
    ChainParams,
    ClusterElements,
    BellCoeffs,
    SIGMA_Y,
    bell_diagonal_coeffs,
    bloch_decompose,
    boltzmann_elements,
    reduced_state,
    thermal_state_exact,
)
from .oracles import GridSpec, minimize_conditional_entropy

EIG_CLIP_FLOOR = -1e-10


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (descending, clipped at zero) and orthonormal eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray


def spectral_decomposition(rho: np.ndarray, floor: float = EIG_CLIP_FLOOR) -> SpectralDecomposition:
    vals, vecs = np.linalg.eigh(np.asarray(rho))
    if float(vals[0]) < floor:
        raise PositivityViolation(
            f"eigenvalue {vals[0]:.3e} below clipping floor {floor:.0e}"
        )
    vals = np.clip(vals, 0.0, None)
    order = np.argsort(vals)[::-1]
    return SpectralDecomposition(values=vals[order], vectors=vecs[:, order])


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-sum lambda log2 lambda over the clipped spectrum."""
    vals = spectral_decomposition(rho).values
    nz = vals[vals > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def binary_entropy(q: float) -> float:
    total = 0.0
    for p in (q, 1.0 - q):
        if p > 0.0:
            total -= p * math.log2(p)
    return total


def mutual_information(rho: np.ndarray) -> float:
    """S(rho_A) + S(rho_B) - S(rho), floored at tiny negative roundoff."""
    s_a = von_neumann_entropy(reduced_state(rho, "first"))
    s_b = von_neumann_entropy(reduced_state(rho, "second"))
    mi = s_a + s_b - von_neumann_entropy(rho)
    if mi < -1e-12:
        raise ValueError(f"mutual information came out negative: {mi}")
    return mi


def concurrence_closed_form(els: ClusterElements) -> float:
    """(2/Z) max(|y| - sqrt(u v), 0) for the X-shaped cluster state."""
    return max(0.0, 2.0 * (abs(els.y) - math.sqrt(els.u) * math.sqrt(els.v)) / els.z)


_Y4 = np.real(np.kron(SIGMA_Y, SIGMA_Y))  # antidiag(-1, 1, 1, -1)


def concurrence_wootters(rho: np.ndarray) -> float:
    """Spin-flip concurrence max(0, l1 - l2 - l3 - l4) from the spectrum of
    rho (sy x sy) rho* (sy x sy).

    The flipped product is the square of the conjugate-linear map
    v -> (rho.(sy x sy)) conj(v), whose real 8x8 representation has the
    square-rooted eigenvalues directly as +-paired magnitudes.  Reading them
    off the unsquared map keeps absolute accuracy at machine level instead of
    the sqrt-of-roundoff floor that diagonalizing the squared product imposes.
    """
    a = np.asarray(rho, dtype=complex) @ _Y4
    re, im = a.real, a.imag
    t = np.block([[re, im], [im, -re]])
    mags = np.sort(np.abs(np.linalg.eigvals(t)))[::-1]
    lams = mags[::2]  # the conjugate-linear spectrum comes in +- pairs
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))


def theta_fast(els: ClusterElements) -> float:
    """Shortcut measurement parameter (1/Z) max(|u - w|, |y|)."""
    return max(abs(els.u - els.w), abs(els.y)) / els.z


def min_conditional_entropy_closed(els: ClusterElements) -> float:
    """FAST PATH: binary entropy at the shortcut theta.

    Cross-check against ``oracles.minimize_conditional_entropy`` before
    trusting it: on Bell-diagonal states the searched minimum sits at twice
    this theta, so the shortcut overestimates the conditional entropy there.
    """
    return binary_entropy(0.5 * (1.0 + theta_fast(els)))


@dataclass(frozen=True)
class DiscordParts:
    """Entropies and the minimized conditional entropy at one state."""

    s_joint: float
    s_first: float
    s_second: float
    min_conditional: float
    axis: np.ndarray

    @property
    def mutual_information(self) -> float:
        return self.s_first + self.s_second - self.s_joint

    @property
    def classical_correlation(self) -> float:
        return self.s_second - self.min_conditional

    @property
    def quantum_discord(self) -> float:
        return self.s_first - self.s_joint + self.min_conditional


def discord_parts(rho: np.ndarray, grid: GridSpec | None = None) -> DiscordParts:
    """Measurement on the first qubit, conditional entropy of the second."""
    ce, basis = minimize_conditional_entropy(rho, grid)
    return DiscordParts(
        s_joint=von_neumann_entropy(rho),
        s_first=von_neumann_entropy(reduced_state(rho, "first")),
        s_second=von_neumann_entropy(reduced_state(rho, "second")),
        min_conditional=ce,
        axis=basis.axis,
    )


def quantum_discord(rho: np.ndarray, grid: GridSpec | None = None) -> float:
    """Definitional discord S(rho_A) - S(rho) + min_k sum p_k S(rho_B|k)."""
    return discord_parts(rho, grid).quantum_discord


def classical_correlation(rho: np.ndarray, grid: GridSpec | None = None) -> float:
    return discord_parts(rho, grid).classical_correlation


def gmqd(rho: np.ndarray) -> float:
    """Closed two-qubit geometric discord (squared Hilbert-Schmidt distance):
    (1/4)(|x|^2 + |R|^2 - k_max), k_max the top eigenvalue of x x^T + R R^T."""
    dec = bloch_decompose(rho)
    k = np.outer(dec.x, dec.x) + dec.r @ dec.r.T
    value = 0.25 * (dec.x @ dec.x + np.sum(dec.r * dec.r) - np.linalg.eigvalsh(k)[-1])
    return float(max(0.0, value))


def gqd_1norm_bell(coeffs: BellCoeffs) -> float:
    """Trace-norm geometric discord of a Bell-diagonal state: the intermediate
    of (|c1|, |c2|, |c3|)."""
    return sorted(abs(c) for c in coeffs.as_tuple())[1]


@dataclass(frozen=True)
class CorrelationReport:
    """Every correlation measure at one thermodynamic point.

    ``gqd_1norm`` and ``bell_coeffs`` are None when the state is not Bell
    diagonal (nonzero field); ``theta`` is the shortcut parameter, kept as a
    diagnostic next to the searched discord.
    """

    params: ChainParams
    concurrence: float
    quantum_discord: float
    classical_correlation: float
    mutual_information: float
    gmqd: float
    gqd_1norm: float | None
    theta: float
    bell_coeffs: BellCoeffs | None
    flags: tuple[str, ...] = ()

    def with_flags(self, *extra: str) -> "CorrelationReport":
        merged = self.flags + tuple(f for f in extra if f not in self.flags)
        return CorrelationReport(
            params=self.params,
            concurrence=self.concurrence,
            quantum_discord=self.quantum_discord,
            classical_correlation=self.classical_correlation,
            mutual_information=self.mutual_information,
            gmqd=self.gmqd,
            gqd_1norm=self.gqd_1norm,
            theta=self.theta,
            bell_coeffs=self.bell_coeffs,
            flags=merged,
        )


def full_report(params: ChainParams, grid: GridSpec | None = None,
                verbatim_v: bool = False) -> CorrelationReport:
    """Build the exact thermal state and evaluate every measure on it.

    The closed-form weights enter only through the diagnostic ``theta``; the
    state itself and all measures always come from the exact construction.
    """
    rho = thermal_state_exact(params)
    els = boltzmann_elements(params, verbatim_v=verbatim_v)
    parts = discord_parts(rho, grid)
    flags = ["verbatim_v"] if verbatim_v else []
    try:
        coeffs = bell_diagonal_coeffs(rho)
        gqd1 = gqd_1norm_bell(coeffs)
    except NotBellDiagonal:
        coeffs = None
        gqd1 = None
        flags.append("not_bell_diagonal")
    return CorrelationReport(
        params=params,
        concurrence=concurrence_wootters(rho),
        quantum_discord=parts.quantum_discord,
        classical_correlation=parts.classical_correlation,
        mutual_information=parts.mutual_information,
        gmqd=gmqd(rho),
        gqd_1norm=gqd1,
        theta=theta_fast(els),
        bell_coeffs=coeffs,
        flags=tuple(flags),
    )
