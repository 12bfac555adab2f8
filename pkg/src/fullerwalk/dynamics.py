"""Walk evolution and time-averaged transition probabilities.

Evolution is always spectral: amplitudes are rotated by e^{-i lam_k t} in
the eigenbasis, never by series-expanding the matrix exponential. Time
averages use the exact closed form, with the oscillatory cross terms
grouped by degeneracy-cluster pair so exactly degenerate levels dephase
into the limiting distribution instead of leaving spurious slow terms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import Spectrum

# the closed-form average is real; a larger imaginary residue means the
# cluster bookkeeping went wrong
IMAG_RESIDUE_TOL = 1e-10


@dataclass(frozen=True)
class WalkState:
    """Amplitude vector of the walker at a fixed time (2-norm 1)."""

    amplitudes: np.ndarray
    time: float


@dataclass(frozen=True)
class LimitingDistribution:
    """Row-stochastic matrix u with u[x-1, y-1] the long-time average
    probability of finding the walker at node y after starting at x."""

    u: np.ndarray

    @property
    def n(self) -> int:
        return self.u.shape[0]

    def row(self, x: int) -> np.ndarray:
        return self.u[x - 1, :]

    def value(self, x: int, y: int) -> float:
        return float(self.u[x - 1, y - 1])


def _check_node(s: Spectrum, node: int, name: str) -> None:
    if not (1 <= node <= s.n):
        raise ValueError(f"{name} must be in 1..{s.n}, got {node}")


def evolve(s: Spectrum, start: int, t: float) -> WalkState:
    """Amplitudes alpha_y(t) = sum_k e^{-i lam_k t} <y|lam_k><lam_k|start>."""
    _check_node(s, start, "start")
    overlaps = s.eigenvectors[start - 1, :]  # <lam_k|start>, real basis
    phases = np.exp(-1j * s.eigenvalues * float(t))
    amps = s.eigenvectors @ (phases * overlaps)
    return WalkState(amplitudes=amps, time=float(t))


def node_probability(s: Spectrum, start: int, end: int, t: float) -> float:
    """|<end|e^{-iHt}|start>|^2."""
    _check_node(s, end, "end")
    state = evolve(s, start, t)
    return float(np.abs(state.amplitudes[end - 1]) ** 2)


def _cluster_amplitudes(s: Spectrum, start: int, end: int):
    """Per-cluster sums s_j = sum_{k in C_j} <end|lam_k><lam_k|start> and the
    representative eigenvalue of each cluster."""
    prod = s.eigenvectors[end - 1, :] * s.eigenvectors[start - 1, :]
    sums = np.array([prod[list(c)].sum() for c in s.clusters])
    return sums, s.cluster_values()


def cumulative_time_average(s: Spectrum, start: int, end: int, tau_grid) -> np.ndarray:
    """Exact running time average of the transition probability.

    For each tau in tau_grid returns
    (1/tau) int_0^tau |<end|e^{-iHt}|start>|^2 dt, evaluated in closed form:
    the diagonal (same-cluster) part is the limiting value u(start, end) and
    every distinct-cluster pair (j, l) contributes its amplitude product
    times (e^{i(lam_l - lam_j) tau} - 1)/(i(lam_l - lam_j) tau).

    Raises
    ------
    ValueError
        On a non-positive or non-ascending tau grid.
    ArithmeticError
        If the imaginary residue of the (mathematically real) result
        exceeds 1e-10.
    """
    _check_node(s, start, "start")
    _check_node(s, end, "end")
    taus = np.asarray(tau_grid, dtype=float)
    if taus.ndim != 1 or len(taus) == 0:
        raise ValueError("tau_grid must be a non-empty 1-d sequence")
    if np.any(taus <= 0):
        raise ValueError("all tau values must be positive")
    if np.any(np.diff(taus) < 0):
        raise ValueError("tau_grid must be ascending")

    sums, levels = _cluster_amplitudes(s, start, end)
    stationary = float(np.sum(sums**2))

    # distinct-cluster pair coefficients c_jl = s_j s_l and gaps lam_l - lam_j
    nc = len(sums)
    jj, ll = np.meshgrid(np.arange(nc), np.arange(nc), indexing="ij")
    off = jj != ll
    coeff = (sums[jj] * sums[ll])[off]
    gap = (levels[ll] - levels[jj])[off]

    out = np.empty(len(taus))
    for i, tau in enumerate(taus):
        kernel = (np.exp(1j * gap * tau) - 1.0) / (1j * gap * tau)
        val = stationary + np.sum(coeff * kernel)
        if abs(val.imag) > IMAG_RESIDUE_TOL:
            raise ArithmeticError(
                f"imaginary residue {val.imag:.3e} at tau={tau}; "
                "expected a real-valued average"
            )
        out[i] = val.real
    return out


def limiting_distribution(s: Spectrum) -> LimitingDistribution:
    """u(x, y) = sum_j |<y|P_j|x>|^2 over the eigenspace projectors P_j.

    Normalized so every row sums to 1 (it is a probability distribution
    over the end node y; with orthonormal eigenvectors this holds exactly,
    no prefactor needed).
    """
    u = np.zeros((s.n, s.n))
    for c in s.clusters:
        vc = s.eigenvectors[:, list(c)]
        p = vc @ vc.T
        u += p * p
    u.flags.writeable = False
    return LimitingDistribution(u=u)
