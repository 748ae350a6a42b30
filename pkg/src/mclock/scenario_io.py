"""Scenario files in and result tables out.

A scenario is a strict JSON document:

    {
      "model": "rotation" | "imperfect",
      "n": <int >= 2>,
      "g": <number > 0>,
      "epsilon": <number in [0, 1)>,        // imperfect only, default 0
      "c": [[re, im], ...],                 // n initial system coefficients
      "grid": {"t0": .., "t1": .., "points": <int, default 201>},
      "sampling": {"t": .., "trials": <int>, "seed": <int>}   // optional
    }

Unknown keys are rejected. Structural problems (bad JSON, wrong types,
unknown keys) raise ParseError; out-of-range values raise ValidationError.
Coefficient vectors within 1e-3 of unit norm are renormalized (the factor
is logged); larger deviations are rejected.

Output tables are CSV with reals rendered at 17 significant digits, which
round-trips IEEE doubles bit-exactly.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass

import numpy as np

from .dynamics import TimeGrid, TimingTrajectory
from .errors import InvalidParameter, ParseError, ValidationError
from .hilbert import StateVector, tensor_state
from .measurement import MeasurementModel, build_imperfect_model, build_rotation_model
from .operational import EstimateReport

log = logging.getLogger(__name__)

COEFF_NORM_SLACK = 1e-3

_TOP_KEYS = {"model", "n", "g", "epsilon", "c", "grid", "sampling"}
_GRID_KEYS = {"t0", "t1", "points"}
_SAMPLING_KEYS = {"t", "trials", "seed"}


@dataclass(frozen=True)
class SamplingSpec:
    t: float
    n_trials: int
    seed: int


@dataclass(frozen=True)
class ScenarioSpec:
    """A parsed, validated run configuration."""

    model_kind: str
    n_outcomes: int
    coupling_g: float
    epsilon: float
    initial_coefficients: tuple[complex, ...]
    grid: TimeGrid
    sampling: SamplingSpec | None


def _reject_constant(token: str):
    raise ParseError(f"non-finite number {token!r} is not allowed")


def _as_number(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"expected a number, got {type(value).__name__}", field=field)
    out = float(value)
    if not math.isfinite(out):
        raise ParseError("number must be finite", field=field)
    return out


def _as_int(value, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {type(value).__name__}", field=field)
    return value


def _as_object(value, field: str, allowed: set[str]) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"expected an object, got {type(value).__name__}", field=field)
    unknown = set(value) - allowed
    if unknown:
        raise ParseError(f"unknown key(s) {sorted(unknown)}", field=field)
    return value


def parse_scenario(text: str) -> ScenarioSpec:
    """Parse and validate one scenario document."""
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc

    data = _as_object(data, "<document>", _TOP_KEYS)
    for key in ("model", "n", "g", "c", "grid"):
        if key not in data:
            raise ParseError("required key missing", field=key)

    model_kind = data["model"]
    if not isinstance(model_kind, str):
        raise ParseError("expected a string", field="model")
    if model_kind not in ("rotation", "imperfect"):
        raise ValidationError(f"model must be 'rotation' or 'imperfect', got {model_kind!r}")

    n = _as_int(data["n"], "n")
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")

    g = _as_number(data["g"], "g")
    if not g > 0:
        raise ValidationError(f"g must be positive, got {g}")

    epsilon = _as_number(data.get("epsilon", 0.0), "epsilon")
    if not 0.0 <= epsilon < 1.0:
        raise ValidationError(f"epsilon must lie in [0, 1), got {epsilon}")
    if model_kind == "rotation" and epsilon != 0.0:
        raise ValidationError("the rotation model takes no epsilon")

    raw_c = data["c"]
    if not isinstance(raw_c, list):
        raise ParseError("expected an array of [re, im] pairs", field="c")
    coeffs = []
    for k, pair in enumerate(raw_c):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError("each entry must be a [re, im] pair", field=f"c[{k}]")
        re = _as_number(pair[0], f"c[{k}][0]")
        im = _as_number(pair[1], f"c[{k}][1]")
        coeffs.append(complex(re, im))
    if len(coeffs) != n:
        raise ValidationError(f"c must have n = {n} entries, got {len(coeffs)}")

    norm = math.sqrt(sum(abs(z) ** 2 for z in coeffs))
    if abs(norm - 1.0) > COEFF_NORM_SLACK:
        raise ValidationError(
            f"initial coefficients have norm {norm:.6g}; deviations beyond "
            f"{COEFF_NORM_SLACK} signal a mistake"
        )
    if norm != 1.0:
        log.info("renormalizing initial coefficients by factor %.17g", 1.0 / norm)
        coeffs = [z / norm for z in coeffs]

    grid_obj = _as_object(data["grid"], "grid", _GRID_KEYS)
    for key in ("t0", "t1"):
        if key not in grid_obj:
            raise ParseError("required key missing", field=f"grid.{key}")
    t0 = _as_number(grid_obj["t0"], "grid.t0")
    t1 = _as_number(grid_obj["t1"], "grid.t1")
    points = _as_int(grid_obj.get("points", 201), "grid.points")
    try:
        grid = TimeGrid(t0, t1, points)
    except InvalidParameter as exc:
        raise ValidationError(str(exc)) from exc

    sampling = None
    if "sampling" in data:
        samp_obj = _as_object(data["sampling"], "sampling", _SAMPLING_KEYS)
        for key in _SAMPLING_KEYS:
            if key not in samp_obj:
                raise ParseError("required key missing", field=f"sampling.{key}")
        t = _as_number(samp_obj["t"], "sampling.t")
        trials = _as_int(samp_obj["trials"], "sampling.trials")
        seed = _as_int(samp_obj["seed"], "sampling.seed")
        if trials < 1:
            raise ValidationError(f"sampling.trials must be >= 1, got {trials}")
        sampling = SamplingSpec(t, trials, seed)

    return ScenarioSpec(model_kind, n, g, epsilon, tuple(coeffs), grid, sampling)


def serialize_scenario(spec: ScenarioSpec) -> str:
    """Render a spec back to scenario JSON (parse round-trips to an equal spec)."""
    doc: dict = {
        "model": spec.model_kind,
        "n": spec.n_outcomes,
        "g": spec.coupling_g,
    }
    if spec.model_kind == "imperfect":
        doc["epsilon"] = spec.epsilon
    doc["c"] = [[z.real, z.imag] for z in spec.initial_coefficients]
    doc["grid"] = {
        "t0": spec.grid.t_start,
        "t1": spec.grid.t_end,
        "points": spec.grid.n_points,
    }
    if spec.sampling is not None:
        doc["sampling"] = {
            "t": spec.sampling.t,
            "trials": spec.sampling.n_trials,
            "seed": spec.sampling.seed,
        }
    return json.dumps(doc, indent=2) + "\n"


def build_model(spec: ScenarioSpec) -> MeasurementModel:
    """Instantiate the scenario's measurement model."""
    if spec.model_kind == "rotation":
        return build_rotation_model(spec.n_outcomes, spec.coupling_g)
    return build_imperfect_model(spec.n_outcomes, spec.coupling_g, spec.epsilon)


def initial_state(spec: ScenarioSpec, model: MeasurementModel) -> StateVector:
    """(sum_i c_i |a_i>) (x) |ready> on the joint space."""
    amps = np.zeros(model.system_dim, dtype=np.complex128)
    for c, state in zip(spec.initial_coefficients, model.system_eigenstates):
        amps += c * state.amplitudes
    system = StateVector((model.system_dim,), amps)
    return tensor_state(system, model.pointer_ready)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def emit_trajectory_csv(traj: TimingTrajectory) -> str:
    """CSV of the timing curves: header ``t,P,p``, one row per grid point."""
    lines = ["t,P,p"]
    for t, prob, rate in zip(traj.grid.times, traj.prob_happened, traj.rate):
        lines.append(f"{_fmt(t)},{_fmt(prob)},{_fmt(rate)}")
    return "\n".join(lines) + "\n"


def emit_sampling_csv(report: EstimateReport) -> str:
    """One-row CSV of a sampling run: ``t,trials,case1,estimate,std_error,exact_P``."""
    lines = [
        "t,trials,case1,estimate,std_error,exact_P",
        ",".join(
            [
                _fmt(report.t),
                str(report.n_trials),
                str(report.case1_count),
                _fmt(report.estimate),
                _fmt(report.std_error),
                _fmt(report.exact_prob),
            ]
        ),
    ]
    return "\n".join(lines) + "\n"
