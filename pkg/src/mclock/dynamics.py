"""Unitary Schrodinger evolution under a time-independent Hamiltonian.

Evolution is computed from one exact spectral decomposition rather than a
step-wise integrator: at the target dimensions (<= 64) this is cheap and
keeps integrator error out of every downstream tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidParameter, NumericalError
from .hilbert import HermitianOperator, SpectralDecomposition, StateVector, expectation, spectral
from .tolerances import TOL


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid on [t_start, t_end], both endpoints included."""

    t_start: float
    t_end: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 2:
            raise InvalidParameter(f"n_points must be >= 2, got {self.n_points}")
        if not self.t_end > self.t_start:
            raise InvalidParameter(f"t_end ({self.t_end}) must exceed t_start ({self.t_start})")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.n_points)

    @property
    def step(self) -> float:
        return (self.t_end - self.t_start) / (self.n_points - 1)


@dataclass(frozen=True, eq=False)
class TimingTrajectory:
    """States and measurement-timing curves sampled on a time grid.

    prob_happened[k] is the probability that the measurement has happened
    by times[k]; rate[k] is its time density.
    """

    grid: TimeGrid
    states: tuple[StateVector, ...]
    prob_happened: np.ndarray
    rate: np.ndarray

    def __post_init__(self):
        prob = np.array(self.prob_happened, dtype=np.float64).reshape(-1)
        rate = np.array(self.rate, dtype=np.float64).reshape(-1)
        n = self.grid.n_points
        if not (len(self.states) == prob.size == rate.size == n):
            raise DimensionMismatch("states, prob_happened and rate must all have n_points entries")
        slack = TOL.trajectory_prob
        if np.any(prob < -slack) or np.any(prob > 1.0 + slack):
            raise NumericalError("probability curve leaves [0, 1] beyond tolerance")
        prob.setflags(write=False)
        rate.setflags(write=False)
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "prob_happened", prob)
        object.__setattr__(self, "rate", rate)


def _propagate(dec: SpectralDecomposition, psi0: StateVector, t: float) -> StateVector:
    coeffs = dec.eigenvectors.conj().T @ psi0.amplitudes
    amps = dec.eigenvectors @ (np.exp(-1j * dec.eigenvalues * t) * coeffs)
    return StateVector(psi0.dims, amps)


def evolve(hamiltonian: HermitianOperator, psi0: StateVector, t: float) -> StateVector:
    """exp(-iHt) psi0 via the spectral decomposition of H."""
    if hamiltonian.dims != psi0.dims:
        raise DimensionMismatch(f"H dims {hamiltonian.dims} != state dims {psi0.dims}")
    return _propagate(spectral(hamiltonian), psi0, t)


def trajectory(
    hamiltonian: HermitianOperator,
    psi0: StateVector,
    grid: TimeGrid,
    happened_op: HermitianOperator,
    rate_op: HermitianOperator,
) -> TimingTrajectory:
    """Sample psi(t), <happened_op> and <rate_op> on every grid point.

    One spectral decomposition of H is reused for all points, so there is
    no error accumulation between samples.
    """
    for op in (happened_op, rate_op):
        if op.dims != hamiltonian.dims:
            raise DimensionMismatch(f"operator dims {op.dims} != H dims {hamiltonian.dims}")
    if psi0.dims != hamiltonian.dims:
        raise DimensionMismatch(f"state dims {psi0.dims} != H dims {hamiltonian.dims}")

    dec = spectral(hamiltonian)
    states = [_propagate(dec, psi0, t) for t in grid.times]
    prob = np.array([expectation(happened_op, s) for s in states])
    rate = np.array([expectation(rate_op, s) for s in states])
    return TimingTrajectory(grid, tuple(states), prob, rate)
