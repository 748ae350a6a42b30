"""Operational verification of the measurement-timing probability.

At a chosen time an external observer measures the system variable and the
pointer position jointly (they commute). A trial is Case 1 when the
pointer sits in the position matched to the observed outcome, Case 2
otherwise. The Case-1 frequency over many trials estimates the happened
probability; the exact identity between the matched-pair mass and the
projector expectation is what makes the operator and operational
definitions agree.

Pointer outcome encoding: 0 is the ready state, j in 1..n is the pointer
state for outcome j, and n+1 is the residual bucket collecting apparatus
components outside the pointer frame. The match for q outcome i (0-based)
is pointer index i+1; every non-matched outcome counts as Case 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import evolve
from .errors import DimensionMismatch, InvalidParameter, NumericalError
from .hilbert import HermitianOperator, StateVector
from .measurement import MeasurementModel, happened_probability
from .tolerances import TOL

# Sampling draws one uniform per trial and inverts the cumulative
# distribution; the generator is numpy's seeded PCG64.
RNG_ALGORITHM = "numpy-pcg64/inverse-cdf"


@dataclass(frozen=True)
class JointOutcome:
    q_index: int
    pointer_index: int
    probability: float


@dataclass(frozen=True, eq=False)
class JointOutcomeDistribution:
    """Born-rule probabilities over (system outcome, pointer position) pairs."""

    n_outcomes: int
    entries: tuple[JointOutcome, ...]

    def __post_init__(self):
        if any(e.probability < 0 for e in self.entries):
            raise NumericalError("joint probabilities must be nonnegative")
        total = sum(e.probability for e in self.entries)
        if abs(total - 1.0) > TOL.distribution_sum:
            raise NumericalError(f"joint probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "entries", tuple(self.entries))

    def matched_probability(self) -> float:
        """Total mass on Case-1 pairs (pointer index == q index + 1)."""
        return sum(e.probability for e in self.entries if e.pointer_index == e.q_index + 1)


@dataclass(frozen=True)
class TrialRecord:
    """One sampled trial of the joint q/pointer measurement at time t."""

    t: float
    q_outcome: int
    pointer_outcome: int
    case1: bool

    def __post_init__(self):
        if self.case1 != (self.pointer_outcome == self.q_outcome + 1):
            raise InvalidParameter("case1 must mark exactly the matched pointer outcome")


@dataclass(frozen=True)
class EstimateReport:
    """Binomial estimate of the happened probability from repeated trials."""

    t: float
    n_trials: int
    case1_count: int
    estimate: float
    std_error: float
    exact_prob: float
    rng_algorithm: str = RNG_ALGORITHM


def joint_distribution(model: MeasurementModel, psi: StateVector) -> JointOutcomeDistribution:
    """Probabilities of every (q outcome, pointer position) pair in psi.

    Entries cover, per outcome, the ready state, all n pointer states and
    the residual complement, so they always sum to one. The matched-pair
    mass equals happened_probability(model, psi) identically; this is the
    operational/operator equivalence.
    """
    if psi.dims != model.joint_dims:
        raise DimensionMismatch(f"state dims {psi.dims} != joint dims {model.joint_dims}")
    n = model.n_outcomes
    amps = psi.amplitudes.reshape(model.system_dim, model.apparatus_dim)

    sys_frame = np.column_stack([s.amplitudes for s in model.system_eigenstates])
    app_frame = np.column_stack(
        [model.pointer_ready.amplitudes]
        + [p.amplitudes for p in model.pointer_states]
    )
    in_sys_basis = sys_frame.conj().T @ amps              # n x apparatus_dim
    in_frame = in_sys_basis @ app_frame.conj()            # n x (n + 1)
    frame_probs = np.abs(in_frame) ** 2
    row_totals = np.sum(np.abs(in_sys_basis) ** 2, axis=1)
    residual = np.clip(row_totals - frame_probs.sum(axis=1), 0.0, None)

    entries = []
    for i in range(n):
        for j in range(n + 1):
            entries.append(JointOutcome(i, j, float(frame_probs[i, j])))
        entries.append(JointOutcome(i, n + 1, float(residual[i])))
    return JointOutcomeDistribution(n, tuple(entries))


def sample_trials(
    model: MeasurementModel,
    hamiltonian: HermitianOperator,
    psi0: StateVector,
    t: float,
    n_trials: int,
    seed: int,
) -> tuple[list[TrialRecord], EstimateReport]:
    """Draw repeated joint measurements at time t and estimate the happened probability.

    psi0 is evolved once and the joint distribution computed once; trials
    are independent categorical draws from it. Identical inputs and seed
    produce identical records.
    """
    if n_trials < 1:
        raise InvalidParameter(f"n_trials must be >= 1, got {n_trials}")
    psi_t = evolve(hamiltonian, psi0, t)
    dist = joint_distribution(model, psi_t)
    exact = happened_probability(model, psi_t)

    cumulative = np.cumsum([e.probability for e in dist.entries])
    uniforms = np.random.default_rng(seed).random(n_trials)
    picks = np.minimum(
        np.searchsorted(cumulative, uniforms, side="right"), len(dist.entries) - 1
    )

    records = []
    case1_count = 0
    for k in picks:
        entry = dist.entries[k]
        case1 = entry.pointer_index == entry.q_index + 1
        case1_count += case1
        records.append(TrialRecord(t, entry.q_index, entry.pointer_index, case1))

    estimate = case1_count / n_trials
    std_error = math.sqrt(estimate * (1.0 - estimate) / n_trials)
    report = EstimateReport(t, n_trials, case1_count, estimate, std_error, exact)
    return records, report
