"""Pure states, projective/POVM measurements and Born-rule probabilities.

Also holds the concrete four-dimensional setting: the state family
``cos(theta) sin(phi)|0> + cos(theta) cos(phi)|1> + sin(theta)|2>`` and the
built-in measurements ``A``, ``B`` (mutually unbiased) and ``C1``-``C3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import (DimensionMismatch, InvalidMeasurement, InvalidState,
                     LambdaOutOfRange, UnknownName)
from .lattice import WeightVector
from .numerics import HermitianOperator, min_eigenvalue, projector_from_vector

NORM_TOL = 1e-10
POVM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        v = np.array(self.amplitudes, dtype=complex).ravel()
        if v.size == 0 or not np.all(np.isfinite(v)):
            raise InvalidState("amplitudes must be finite and non-empty")
        norm2 = float(np.vdot(v, v).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise InvalidState(f"squared norm is {norm2!r}, expected 1")
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)

    @classmethod
    def normalized(cls, v) -> "PureState":
        v = np.asarray(v, dtype=complex).ravel()
        n = np.linalg.norm(v)
        if n < 1e-12:
            raise InvalidState("cannot normalize the zero vector")
        return cls(v / n)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __repr__(self) -> str:
        return f"PureState({np.round(self.amplitudes, 6).tolist()})"


@dataclass(frozen=True, eq=False)
class Measurement:
    """A POVM: effects are positive semidefinite and sum to the identity."""

    label: str
    effects: tuple[HermitianOperator, ...]

    def __post_init__(self):
        effects = tuple(self.effects)
        if not effects:
            raise InvalidMeasurement(f"{self.label}: no effects")
        dim = effects[0].dim
        if any(e.dim != dim for e in effects):
            raise DimensionMismatch(f"{self.label}: effects have different dimensions")
        for a, e in enumerate(effects):
            if min_eigenvalue(e) < -POVM_TOL:
                raise InvalidMeasurement(f"{self.label}: effect {a} is not positive semidefinite")
        total = sum(e.matrix for e in effects)
        if np.max(np.abs(total - np.eye(dim))) > POVM_TOL:
            raise InvalidMeasurement(f"{self.label}: effects do not sum to the identity")
        object.__setattr__(self, "effects", effects)

    @classmethod
    def from_vectors(cls, label: str, vectors: Sequence[Sequence[complex]]) -> "Measurement":
        return cls(label, tuple(projector_from_vector(v) for v in vectors))

    @property
    def dim(self) -> int:
        return self.effects[0].dim

    @property
    def n_outcomes(self) -> int:
        return len(self.effects)

    def __len__(self) -> int:
        return len(self.effects)

    def __repr__(self) -> str:
        return f"Measurement({self.label!r}, outcomes={self.n_outcomes}, dim={self.dim})"


def make_state(theta: float, phi: float) -> PureState:
    """The state family parametrized by two angles in radians."""
    c = math.cos(theta)
    return PureState(np.array([c * math.sin(phi), c * math.cos(phi), math.sin(theta), 0.0],
                              dtype=complex))


def make_state_deg(theta_deg: float, phi_deg: float) -> PureState:
    return make_state(math.radians(theta_deg), math.radians(phi_deg))


def random_state(rng: np.random.Generator, dim: int = 4) -> PureState:
    """Haar-random pure state."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return PureState.normalized(v)


def born_probabilities(state: PureState, m: Measurement) -> np.ndarray:
    """``<psi|M_a|psi>`` for every effect, in outcome order."""
    if state.dim != m.dim:
        raise DimensionMismatch(f"state has dim {state.dim}, measurement {m.label} has dim {m.dim}")
    psi = state.amplitudes
    p = np.array([np.vdot(psi, e.matrix @ psi).real for e in m.effects])
    return np.clip(p, 0.0, 1.0)


_E = np.eye(4, dtype=complex)
_S2, _S3, _S6 = math.sqrt(2), math.sqrt(3), math.sqrt(6)

_BUILTIN_VECTORS = {
    "A": [_E[0], _E[1], _E[2], _E[3]],
    "B": [np.array(v, dtype=complex) / 2 for v in (
        (1, -1j, -1j, 1),
        (1, -1j, 1j, -1),
        (1, 1j, -1j, -1),
        (1, 1j, 1j, 1),
    )],
    "C1": [_E[0], _E[1], _E[2], _E[3]],
    "C2": [_E[0], (_E[2] + _E[3]) / _S2, (_E[1] + _E[2] - _E[3]) / _S3,
           (2 * _E[1] - _E[2] + _E[3]) / _S6],
    "C3": [(_E[2] + _E[3]) / _S2, _E[1], (_E[0] + _E[2] - _E[3]) / _S3,
           (2 * _E[0] - _E[2] + _E[3]) / _S6],
}

BUILTIN_NAMES = tuple(_BUILTIN_VECTORS)


def builtin_vectors(name: str) -> list[np.ndarray]:
    if name not in _BUILTIN_VECTORS:
        raise UnknownName(f"unknown measurement {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return [v.copy() for v in _BUILTIN_VECTORS[name]]


def builtin_measurement(name: str) -> Measurement:
    return Measurement.from_vectors(name, builtin_vectors(name))


def _check_distribution(p: np.ndarray, what: str) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    if abs(p.sum() - 1.0) > POVM_TOL:
        raise InvalidState(f"{what} sums to {p.sum()!r}, expected 1")
    return p


def direct_product(p, q) -> WeightVector:
    """All products ``p_a q_b``, sorted."""
    p = _check_distribution(p, "p")
    q = _check_distribution(q, "q")
    return WeightVector(np.outer(p, q).ravel())


def direct_product_all(dists: Sequence) -> WeightVector:
    """Tensor product of several distributions."""
    flat = reduce(lambda acc, d: np.outer(acc, _check_distribution(d, "distribution")).ravel(),
                  dists[1:], _check_distribution(dists[0], "distribution"))
    return WeightVector(flat)


def direct_sum(p, q, lam: float) -> WeightVector:
    """``lam * p`` concatenated with ``(1 - lam) * q``, sorted."""
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRange(f"lambda={lam!r} is outside [0, 1]")
    p = _check_distribution(p, "p")
    q = _check_distribution(q, "q")
    return WeightVector(np.concatenate([lam * p, (1.0 - lam) * q]))


def weighted_direct_sum(dists: Sequence, weights: Sequence[float]) -> WeightVector:
    if len(dists) != len(weights):
        raise DimensionMismatch("one weight per distribution is required")
    return WeightVector(np.concatenate([c * _check_distribution(d, "distribution")
                                        for d, c in zip(dists, weights)]))
