"""Schur-concave uncertainty measures and DP/DS comparison gaps.

All logarithms are base 2. Vectors are never normalized implicitly: the
entropy of an unnormalized vector such as ``p ⊕ q`` is ``-sum x log2 x``
as written.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .bounds import Setting, SubsetBudget
from .errors import ZeroComponent
from .lattice import as_weight_vector
from .quantum import PureState, born_probabilities


def _values(x) -> np.ndarray:
    return np.asarray(as_weight_vector(x).components, dtype=float)


def shannon_entropy(x) -> float:
    """``-sum x_i log2 x_i`` with ``0 log 0 = 0``; ``x`` need not sum to 1."""
    v = _values(x)
    v = v[v > 0]
    return float(-(v * np.log2(v)).sum())


def measure_U(x) -> float:
    """Total minus largest component (sum minus max)."""
    v = _values(x)
    return float(v.sum() - v.max())


def measure_V(x) -> float:
    """``log2`` of the product of the components.

    Raises
    ------
    ZeroComponent
        If any component is zero; the measure is undefined there.
    """
    v = _values(x)
    if np.any(v <= 0.0):
        raise ZeroComponent("log-product measure is undefined for vectors with zero components")
    return float(np.log2(v).sum())


MEASURES: dict[str, Callable] = {
    "shannon": shannon_entropy,
    "U": measure_U,
    "V": measure_V,
}


@dataclass(frozen=True)
class Gap:
    measure: str
    xi_ds: Optional[float]
    xi_dp: Optional[float]


def _safe(measure: Callable, x) -> Optional[float]:
    try:
        return measure(x)
    except ZeroComponent:
        return None


def uncertainty_gaps(state: PureState, m, n, lam: float = 0.5, flattened: bool = True,
                     measures=("shannon", "U", "V"),
                     budget: SubsetBudget = SubsetBudget()) -> dict[str, Gap]:
    """Distance of each joint uncertainty from its state-independent bound.

    ``xi_dp = f(p ⊗ q) - f(bound_DP)`` and
    ``xi_ds = f(lam p ⊕ (1-lam) q) - f(bound_DS)``, where the bounds are the
    flattened ones unless ``flattened`` is False. Values involving the
    log-product measure are ``None`` when any vector has a zero entry.
    """
    dp = Setting("DP", (m, n))
    ds = Setting("DS", (m, n), lam=lam)
    dp_bound = dp.bound(budget)
    ds_bound = ds.bound(budget)
    x = dp_bound.flattened if flattened else dp_bound.raw
    y = ds_bound.flattened if flattened else ds_bound.raw
    joint_dp = dp.joint_uncertainty(state)
    joint_ds = ds.joint_uncertainty(state)
    out = {}
    for name in measures:
        f = MEASURES[name]
        a, b = _safe(f, joint_ds), _safe(f, y)
        c, d = _safe(f, joint_dp), _safe(f, x)
        out[name] = Gap(
            name,
            None if a is None or b is None else a - b,
            None if c is None or d is None else c - d,
        )
    return out


def entropy_sum(state: PureState, measurements) -> float:
    """Sum of the Shannon entropies of each measurement's outcome distribution."""
    return sum(shannon_entropy(born_probabilities(state, m)) for m in measurements)
