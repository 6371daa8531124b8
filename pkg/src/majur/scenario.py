"""JSON scenario files: measurements, states and the kind of bound to compute.

Example::

    {
      "dimension": 4,
      "kind": "DP",
      "measurements": ["A", "B"],
      "states": [{"theta_deg": 45, "phi_deg": 0}, {"amplitudes": [[1, 0], [0, 0], [0, 0], [0, 0]]}],
      "lambda": 0.5
    }

Complex numbers are ``[re, im]`` pairs, angles are degrees. A measurement
is either a built-in name or ``{"label": ..., "effects": [matrix, ...]}``
with each matrix a list of rows of complex pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .bounds import SETTING_KINDS, Setting
from .errors import LambdaOutOfRange, MajurError, WeightMismatch
from .numerics import HermitianOperator
from .quantum import (BUILTIN_NAMES, Measurement, PureState, builtin_measurement,
                      make_state_deg)


class ScenarioError(MajurError):
    """Schema or validation problem; the message starts with the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


Complex = tuple[float, float]


@dataclass(frozen=True)
class MeasurementSpec:
    name: Optional[str] = None
    label: Optional[str] = None
    effects: Optional[tuple[tuple[tuple[Complex, ...], ...], ...]] = None

    @property
    def display(self) -> str:
        return self.name if self.name is not None else (self.label or "custom")


@dataclass(frozen=True)
class StateSpec:
    theta_deg: Optional[float] = None
    phi_deg: Optional[float] = None
    amplitudes: Optional[tuple[Complex, ...]] = None

    @property
    def label(self) -> str:
        if self.amplitudes is None:
            return f"theta={self.theta_deg:g};phi={self.phi_deg:g}"
        return "psi=" + "|".join(f"{re:g}{im:+g}i" for re, im in self.amplitudes)


@dataclass(frozen=True)
class Scenario:
    dimension: int
    kind: str
    measurements: tuple[MeasurementSpec, ...]
    states: tuple[StateSpec, ...] = ()
    lam: Optional[float] = None
    weights: Optional[tuple[float, ...]] = None

    def build_measurements(self) -> tuple[Measurement, ...]:
        return tuple(_build_measurement(spec, f"measurements[{i}]", self.dimension)
                     for i, spec in enumerate(self.measurements))

    def build_states(self) -> tuple[PureState, ...]:
        return tuple(_build_state(spec, f"states[{i}]", self.dimension)
                     for i, spec in enumerate(self.states))

    def setting(self) -> Setting:
        ms = self.build_measurements()
        try:
            return Setting(self.kind, ms, lam=self.lam, weights=self.weights)
        except LambdaOutOfRange as exc:
            raise ScenarioError("lambda", str(exc)) from exc
        except WeightMismatch as exc:
            raise ScenarioError("weights", str(exc)) from exc
        except MajurError as exc:
            raise ScenarioError("measurements", str(exc)) from exc

    def to_dict(self) -> dict:
        out: dict = {"dimension": self.dimension, "kind": self.kind, "measurements": []}
        for spec in self.measurements:
            if spec.name is not None:
                out["measurements"].append(spec.name)
            else:
                out["measurements"].append({
                    "label": spec.label,
                    "effects": [[[list(z) for z in row] for row in e] for e in spec.effects],
                })
        out["states"] = []
        for s in self.states:
            if s.amplitudes is not None:
                out["states"].append({"amplitudes": [list(z) for z in s.amplitudes]})
            else:
                out["states"].append({"theta_deg": s.theta_deg, "phi_deg": s.phi_deg})
        if self.lam is not None:
            out["lambda"] = self.lam
        if self.weights is not None:
            out["weights"] = list(self.weights)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _complex(value, field: str) -> Complex:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        raise ScenarioError(field, f"expected a [re, im] pair of numbers, got {value!r}")
    re, im = float(value[0]), float(value[1])
    if not (np.isfinite(re) and np.isfinite(im)):
        raise ScenarioError(field, "non-finite complex entry")
    return (re, im)


def _number(value, field: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ScenarioError(field, f"expected a number, got {value!r}")
    return float(value)


def _parse_measurement(raw, field: str, dim: int) -> MeasurementSpec:
    if isinstance(raw, str):
        if raw not in BUILTIN_NAMES:
            raise ScenarioError(field, f"unknown measurement {raw!r}; built-ins are {', '.join(BUILTIN_NAMES)}")
        spec = MeasurementSpec(name=raw)
    elif isinstance(raw, dict):
        effects = raw.get("effects")
        if not isinstance(effects, list) or not effects:
            raise ScenarioError(f"{field}.effects", "expected a non-empty list of matrices")
        parsed = []
        for a, mat in enumerate(effects):
            f = f"{field}.effects[{a}]"
            if not isinstance(mat, list) or len(mat) != dim:
                raise ScenarioError(f, f"expected {dim} rows")
            rows = []
            for r, row in enumerate(mat):
                if not isinstance(row, list) or len(row) != dim:
                    raise ScenarioError(f"{f}[{r}]", f"expected {dim} entries")
                rows.append(tuple(_complex(z, f"{f}[{r}][{c}]") for c, z in enumerate(row)))
            parsed.append(tuple(rows))
        spec = MeasurementSpec(label=str(raw.get("label", "custom")), effects=tuple(parsed))
    else:
        raise ScenarioError(field, "expected a built-in name or an object with 'effects'")
    _build_measurement(spec, field, dim)
    return spec


def _build_measurement(spec: MeasurementSpec, field: str, dim: int) -> Measurement:
    try:
        if spec.name is not None:
            m = builtin_measurement(spec.name)
        else:
            ops = tuple(HermitianOperator(np.array([[complex(*z) for z in row] for row in e]))
                        for e in spec.effects)
            m = Measurement(spec.label, ops)
    except MajurError as exc:
        raise ScenarioError(field, str(exc)) from exc
    if m.dim != dim:
        raise ScenarioError(field, f"measurement acts on dimension {m.dim}, scenario says {dim}")
    return m


def _parse_state(raw, field: str, dim: int) -> StateSpec:
    if not isinstance(raw, dict):
        raise ScenarioError(field, "expected an object")
    if "amplitudes" in raw:
        amps = raw["amplitudes"]
        if not isinstance(amps, list) or len(amps) != dim:
            raise ScenarioError(f"{field}.amplitudes", f"expected {dim} complex pairs")
        spec = StateSpec(amplitudes=tuple(_complex(z, f"{field}.amplitudes[{i}]")
                                          for i, z in enumerate(amps)))
    elif "theta_deg" in raw and "phi_deg" in raw:
        if dim != 4:
            raise ScenarioError(field, "the angle-parametrized family lives in dimension 4")
        spec = StateSpec(theta_deg=_number(raw["theta_deg"], f"{field}.theta_deg"),
                         phi_deg=_number(raw["phi_deg"], f"{field}.phi_deg"))
    else:
        raise ScenarioError(field, "expected 'amplitudes' or both 'theta_deg' and 'phi_deg'")
    _build_state(spec, field, dim)
    return spec


def _build_state(spec: StateSpec, field: str, dim: int) -> PureState:
    try:
        if spec.amplitudes is not None:
            return PureState(np.array([complex(*z) for z in spec.amplitudes]))
        return make_state_deg(spec.theta_deg, spec.phi_deg)
    except MajurError as exc:
        raise ScenarioError(field, str(exc)) from exc


def parse_scenario(data: dict) -> Scenario:
    """Validate a decoded JSON object and return a :class:`Scenario`."""
    if not isinstance(data, dict):
        raise ScenarioError("<root>", "expected a JSON object")
    dim = data.get("dimension", 4)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ScenarioError("dimension", f"expected a positive integer, got {dim!r}")
    kind = data.get("kind")
    if kind not in SETTING_KINDS:
        raise ScenarioError("kind", f"expected one of {', '.join(SETTING_KINDS)}, got {kind!r}")
    raw_ms = data.get("measurements")
    if not isinstance(raw_ms, list) or not raw_ms:
        raise ScenarioError("measurements", "expected a non-empty list")
    ms = tuple(_parse_measurement(m, f"measurements[{i}]", dim) for i, m in enumerate(raw_ms))
    raw_states = data.get("states", [])
    if not isinstance(raw_states, list):
        raise ScenarioError("states", "expected a list")
    states = tuple(_parse_state(s, f"states[{i}]", dim) for i, s in enumerate(raw_states))
    lam = data.get("lambda")
    if lam is not None:
        lam = _number(lam, "lambda")
        if not 0.0 < lam <= 1.0:
            raise ScenarioError("lambda", f"{lam!r} must lie in (0, 1]")
    weights = data.get("weights")
    if weights is not None:
        if not isinstance(weights, list):
            raise ScenarioError("weights", "expected a list of numbers")
        weights = tuple(_number(w, f"weights[{i}]") for i, w in enumerate(weights))
        if len(weights) != len(ms):
            raise ScenarioError("weights", f"{len(weights)} weights for {len(ms)} measurements")
        if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > 1e-9:
            raise ScenarioError("weights", "must be non-negative and sum to 1")
    scenario = Scenario(dim, kind, ms, states, lam, weights)
    scenario.setting()
    return scenario


def load_scenario(path: Union[str, Path]) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError("<file>", f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("<file>", f"invalid JSON: {exc}") from exc
    return parse_scenario(data)
