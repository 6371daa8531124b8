"""Eigenvalue-optimization bounds for joint measurement uncertainty.

Two families of bound are computed by exhaustive subset enumeration:

* product bounds (``t`` for two measurements, ``t'`` for several): for each
  ``k`` maximize ``(lambda_max(sum of chosen effects) / n) ** n`` over
  index sets ``I_x`` with ``sum |I_x| = k + n - 1`` and every ``|I_x| >= 1``;
* pooled bounds (``s(lam)`` and ``s'(c)``): for each ``k`` maximize
  ``lambda_max`` of the sum of ``k`` effects drawn from the pooled list of
  weighted effects ``c_x M_{a|x}``.

Cumulative maxima are capped at 1 and turned into increment vectors; the
flatness process then gives the tightened bound.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import (BudgetExceeded, DimensionMismatch, InvalidMeasurement,
                     LambdaOutOfRange, MajurError, WeightMismatch)
from .lattice import (CumulativeVector, LorenzCurve, WeightVector, flatten,
                      lorenz_curve, majorizes)
from .numerics import hermitian_eigenvalues
from .quantum import (Measurement, PureState, born_probabilities, direct_product_all,
                      weighted_direct_sum)

KINDS = ("t", "s", "t_multi", "s_multi", "r_estimate")
BOUND_LABELS = {"t": "t", "s": "s", "t_multi": "t'", "s_multi": "s'", "r_estimate": "r~"}
CAP_SNAP = 1e-12
DEFAULT_MAX_EVALUATIONS = 10**6
# below this many candidates per k the process pool costs more than it saves
_PARALLEL_MIN_CANDIDATES = 512


@dataclass(frozen=True)
class SubsetBudget:
    """Upper limit on eigenvalue evaluations for one bound computation.

    Compared with the worst case (every candidate subset evaluated) before
    any work starts.
    """

    max_evaluations: int = DEFAULT_MAX_EVALUATIONS

    def __post_init__(self):
        if self.max_evaluations < 1:
            raise MajurError("max_evaluations must be >= 1")


@dataclass(frozen=True, eq=False)
class BoundVector:
    """A bound in raw (increment) form together with its flattening.

    ``raw`` keeps the increments in index order and is generally not
    sorted. ``cumulative`` holds the optimized partial sums themselves;
    the flattened bound sits between them and the partial sums of the
    sorted raw vector.
    """

    kind: str
    raw: np.ndarray
    flattened: WeightVector
    cumulative: CumulativeVector
    parameter: Optional[object] = None
    evaluations: int = 0

    @classmethod
    def from_partial_sums(cls, kind: str, sums: Sequence[float], parameter=None,
                          evaluations: int = 0) -> "BoundVector":
        if kind not in KINDS:
            raise ValueError(f"unknown bound kind {kind!r}")
        cum = CumulativeVector(sums)
        raw = np.maximum(cum.increments(), 0.0)
        raw.setflags(write=False)
        return cls(kind, raw, flatten(raw), cum, parameter, evaluations)

    @property
    def label(self) -> str:
        return BOUND_LABELS[self.kind]

    @property
    def total(self) -> float:
        return self.cumulative.total

    def __len__(self) -> int:
        return len(self.raw)


def _lambda_max(h: np.ndarray) -> float:
    return float(hermitian_eigenvalues(h)[-1])


def _best_of(matrices: list[np.ndarray], power: int, scale: float, cap: float) -> tuple[float, int]:
    """Max of ``(scale * lambda_max(m)) ** power`` over ``matrices``, stopping at ``cap``."""
    best = 0.0
    count = 0
    for h in matrices:
        count += 1
        v = (scale * _lambda_max(h)) ** power
        if v > best:
            best = v
            if best >= cap - CAP_SNAP:
                break
    return best, count


class _Engine:
    """Per-``k`` maximization with an optional worker pool.

    The budget is checked once, up front, against the worst-case number of
    eigenvalue evaluations; early exits only ever make the real count smaller.
    """

    def __init__(self, budget: SubsetBudget, worst_case: int, jobs: int, power: int,
                 scale: float, cap: float):
        if worst_case > budget.max_evaluations:
            raise BudgetExceeded(
                f"up to {worst_case} eigenvalue evaluations needed, budget is "
                f"{budget.max_evaluations}; raise the budget to continue")
        self.jobs = max(1, int(jobs))
        self.power = power
        self.scale = scale
        self.cap = cap
        self.evaluations = 0
        self._pool: Optional[ProcessPoolExecutor] = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        if self._pool is not None:
            self._pool.shutdown()

    def maximize(self, candidates: Iterator[np.ndarray]) -> float:
        if self.jobs == 1:
            best = 0.0
            for h in candidates:
                self.evaluations += 1
                v = (self.scale * _lambda_max(h)) ** self.power
                if v > best:
                    best = v
                    if best >= self.cap - CAP_SNAP:
                        break
            return best
        mats = list(candidates)
        if len(mats) < _PARALLEL_MIN_CANDIDATES:
            best, count = _best_of(mats, self.power, self.scale, self.cap)
            self.evaluations += count
            return best
        if self._pool is None:
            self._pool = ProcessPoolExecutor(max_workers=self.jobs)
        size = math.ceil(len(mats) / self.jobs)
        chunks = [mats[i:i + size] for i in range(0, len(mats), size)]
        futures = [self._pool.submit(_best_of, c, self.power, self.scale, self.cap) for c in chunks]
        results = [f.result() for f in futures]
        self.evaluations += sum(c for _, c in results)
        return max(v for v, _ in results)


def _cumulate(values: list[float], length: int, cap: float) -> list[float]:
    sums = []
    prev = 0.0
    for v in values:
        v = min(cap, max(prev, v))
        if v >= cap - CAP_SNAP:
            v = cap
        sums.append(v)
        prev = v
    sums += [prev] * (length - len(sums))
    return sums


def _check_same_dim(ms: Sequence[Measurement]):
    dims = {m.dim for m in ms}
    if len(dims) != 1:
        raise DimensionMismatch(f"measurements act on different dimensions: {sorted(dims)}")


def _subset_sums(m: Measurement) -> dict[int, list[np.ndarray]]:
    """Sums of effects over every non-empty index subset, grouped by subset size."""
    mats = [e.matrix for e in m.effects]
    out: dict[int, list[np.ndarray]] = {}
    for r in range(1, len(mats) + 1):
        out[r] = [sum(mats[i] for i in idx) for idx in itertools.combinations(range(len(mats)), r)]
    return out


def _compositions(target: int, sizes: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Tuples ``(k_1, ..., k_n)`` with ``1 <= k_x <= sizes[x]`` summing to ``target``."""
    if len(sizes) == 1:
        if 1 <= target <= sizes[0]:
            yield (target,)
        return
    rest_max = sum(sizes[1:])
    for k in range(max(1, target - rest_max), min(sizes[0], target - (len(sizes) - 1)) + 1):
        for tail in _compositions(target - k, sizes[1:]):
            yield (k,) + tail


def _product_bound(ms: Sequence[Measurement], kind: str, budget: SubsetBudget,
                   jobs: int) -> BoundVector:
    _check_same_dim(ms)
    n = len(ms)
    sizes = [m.n_outcomes for m in ms]
    length = math.prod(sizes)
    sums = [_subset_sums(m) for m in ms]

    def candidates(target):
        for comp in _compositions(target, sizes):
            for combo in itertools.product(*(sums[x][kx] for x, kx in enumerate(comp))):
                yield sum(combo)

    values: list[float] = []
    # every tuple of non-empty index sets is a candidate for exactly one k
    worst = math.prod(2**size - 1 for size in sizes)
    with _Engine(budget, worst, jobs, power=n, scale=1.0 / n, cap=1.0) as engine:
        for k in range(1, length + 1):
            target = k + n - 1
            if target > sum(sizes):
                break
            v = engine.maximize(candidates(target))
            values.append(max(v, values[-1] if values else 0.0))
            if values[-1] >= 1.0 - CAP_SNAP:
                break
    return BoundVector.from_partial_sums(kind, _cumulate(values, length, 1.0),
                                         evaluations=engine.evaluations)


def _pooled_bound(weighted: list[tuple[float, np.ndarray]], kind: str, parameter,
                  budget: SubsetBudget, jobs: int) -> BoundVector:
    mats = [w * m for w, m in weighted]
    # mixing weights sum to 1 and each measurement sums to the identity
    total = 1.0
    length = len(mats)

    def candidates(k):
        for idx in itertools.combinations(range(length), k):
            yield sum(mats[i] for i in idx)

    values: list[float] = []
    with _Engine(budget, 2**length - 1, jobs, power=1, scale=1.0, cap=total) as engine:
        for k in range(1, length + 1):
            v = engine.maximize(candidates(k))
            values.append(max(v, values[-1] if values else 0.0))
            if values[-1] >= total - CAP_SNAP:
                break
    sums = _cumulate(values, length, total)
    # the full pool sums to the identity, so the last partial sum is exactly 1
    sums[-1] = total
    return BoundVector.from_partial_sums(kind, sums, parameter, engine.evaluations)


def _default_jobs(jobs: Optional[int]) -> int:
    if jobs is not None:
        return jobs
    return int(os.environ.get("MAJUR_JOBS", "1"))


def dp_bound_t(m: Measurement, n: Measurement, budget: SubsetBudget = SubsetBudget(),
               jobs: Optional[int] = None) -> BoundVector:
    """Direct-product bound ``t`` for a pair of measurements.

    ``T_k`` is the largest ``(lambda_max(sum_{a in I} M_a + sum_{b in J} N_b) / 2) ** 2``
    over ``|I| + |J| = k + 1`` (both non-empty), capped at 1; ``t`` holds
    the increments ``T_k - T_{k-1}`` and has length ``|M| * |N|``.
    """
    return _product_bound([m, n], "t", budget, _default_jobs(jobs))


def dp_multi_bound(ms: Sequence[Measurement], budget: SubsetBudget = SubsetBudget(),
                   jobs: Optional[int] = None) -> BoundVector:
    """Direct-product bound ``t'`` for ``n >= 2`` measurements.

    Uses ``(lambda_max(.) / n) ** n`` with ``sum |I_x| = k + n - 1``; for
    two measurements this coincides with :func:`dp_bound_t`.
    """
    if len(ms) < 2:
        raise InvalidMeasurement("a product bound needs at least two measurements")
    return _product_bound(list(ms), "t_multi", budget, _default_jobs(jobs))


def ds_bound_s(m: Measurement, n: Measurement, lam: float,
               budget: SubsetBudget = SubsetBudget(), jobs: Optional[int] = None) -> BoundVector:
    """Direct-sum bound ``s(lam)``: pooled effects ``lam*M_a`` and ``(1-lam)*N_b``."""
    if not 0.0 < lam <= 1.0:
        raise LambdaOutOfRange(f"lambda={lam!r} must lie in (0, 1]")
    _check_same_dim([m, n])
    weighted = [(lam, e.matrix) for e in m.effects] + [(1.0 - lam, e.matrix) for e in n.effects]
    return _pooled_bound(weighted, "s", float(lam), budget, _default_jobs(jobs))


def ds_multi_bound(ms: Sequence[Measurement], weights: Sequence[float],
                   budget: SubsetBudget = SubsetBudget(), jobs: Optional[int] = None) -> BoundVector:
    """Direct-sum bound ``s'(c)`` for several measurements with mixing weights ``c``."""
    weights = [float(w) for w in weights]
    if len(weights) != len(ms):
        raise WeightMismatch(f"{len(ms)} measurements but {len(weights)} weights")
    if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > 1e-9:
        raise WeightMismatch(f"weights {weights} are not a probability vector")
    _check_same_dim(ms)
    weighted = [(c, e.matrix) for m, c in zip(ms, weights) for e in m.effects]
    return _pooled_bound(weighted, "s_multi", tuple(weights), budget, _default_jobs(jobs))


# --- heuristic estimate of the optimal direct-product bound ------------------

def _effect_stack(m: Measurement) -> np.ndarray:
    return np.stack([e.matrix for e in m.effects])


def _probs(stack: np.ndarray, psi: np.ndarray) -> np.ndarray:
    return np.einsum("i,aij,j->a", psi.conj(), stack, psi).real


def _top_k_mass(em: np.ndarray, en: np.ndarray, psi: np.ndarray, k: int) -> float:
    prod = np.outer(_probs(em, psi), _probs(en, psi)).ravel()
    if k >= prod.size:
        return float(prod.sum())
    return float(np.partition(prod, prod.size - k)[prod.size - k:].sum())


def _climb(f, psi: np.ndarray, value: float, rng: np.random.Generator, steps: int):
    scale = 0.5
    failures = 0
    scales_left = 6
    dim = psi.size
    for _ in range(steps):
        trial = psi + scale * (rng.normal(size=dim) + 1j * rng.normal(size=dim))
        trial /= np.linalg.norm(trial)
        v = f(trial)
        if v > value:
            psi, value = trial, v
            continue
        failures += 1
        if failures == 10:
            failures = 0
            scale *= 0.5
            scales_left -= 1
            if scales_left == 0:
                break
    return psi, value


def estimate_r(m: Measurement, n: Measurement, restarts: int = 8, steps: int = 200,
               seed: int = 0, states: Sequence[PureState] = ()) -> BoundVector:
    """Seeded lower estimate of the optimal direct-product partial sums ``R_k``.

    For every ``k`` the best top-``k`` mass of ``p ⊗ q`` is searched by
    hill climbing from ``restarts`` random states (restart ``r`` draws from
    ``default_rng(seed + r)``), from the best state found for ``k - 1``,
    from the best top eigenvector of any ``M_a + N_b`` and from the best of
    ``states``. The result never exceeds the true ``R_k``.
    """
    if restarts < 1 or steps < 1:
        raise MajurError("estimate_r needs restarts >= 1 and steps >= 1")
    _check_same_dim([m, n])
    em, en = _effect_stack(m), _effect_stack(n)
    dim = m.dim
    rngs = [np.random.default_rng(seed + r) for r in range(restarts)]
    starts = []
    for rng in rngs:
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        starts.append(v / np.linalg.norm(v))
    supplied = [s.amplitudes.copy() for s in states]
    # the top eigenvector of M_a + N_b is where p_a q_b peaks for rank-1 effects
    pair_tops = [np.linalg.eigh(a + b)[1][:, -1] for a in em for b in en]
    length = m.n_outcomes * n.n_outcomes

    values: list[float] = []
    best_prev: Optional[np.ndarray] = None
    for k in range(1, length + 1):
        def f(psi, k=k):
            return _top_k_mass(em, en, psi, k)

        best_psi, best_val = None, -1.0
        seeds_k = list(zip(starts, rngs))
        if best_prev is not None:
            seeds_k.append((best_prev, rngs[0]))
        seeds_k.append((max(pair_tops, key=f), rngs[0]))
        if supplied:
            top = max(supplied, key=f)
            seeds_k.append((top, rngs[0]))
        for psi0, rng in seeds_k:
            psi, val = _climb(f, psi0, f(psi0), rng, steps)
            if val > best_val:
                best_psi, best_val = psi, val
        best_prev = best_psi
        values.append(max(best_val, values[-1] if values else 0.0))
        if values[-1] >= 1.0 - CAP_SNAP:
            break
    return BoundVector.from_partial_sums("r_estimate", _cumulate(values, length, 1.0),
                                         parameter={"restarts": restarts, "steps": steps,
                                                    "seed": seed})


# --- settings and end-to-end verification ------------------------------------

SETTING_KINDS = ("DP", "DS", "DP_MULTI", "DS_MULTI")


@dataclass(frozen=True, eq=False)
class Setting:
    """A measurement set plus the flavour of joint uncertainty to bound."""

    kind: str
    measurements: tuple[Measurement, ...]
    lam: Optional[float] = None
    weights: Optional[tuple[float, ...]] = None

    def __post_init__(self):
        if self.kind not in SETTING_KINDS:
            raise MajurError(f"unknown kind {self.kind!r}; expected one of {SETTING_KINDS}")
        ms = tuple(self.measurements)
        object.__setattr__(self, "measurements", ms)
        if self.kind in ("DP", "DS") and len(ms) != 2:
            raise InvalidMeasurement(f"{self.kind} needs exactly two measurements, got {len(ms)}")
        if self.kind == "DP_MULTI" and len(ms) < 2:
            raise InvalidMeasurement("DP_MULTI needs at least two measurements")
        if self.kind == "DS_MULTI" and not ms:
            raise InvalidMeasurement("DS_MULTI needs at least one measurement")
        if self.kind == "DS":
            lam = 0.5 if self.lam is None else float(self.lam)
            if not 0.0 < lam <= 1.0:
                raise LambdaOutOfRange(f"lambda={lam!r} must lie in (0, 1]")
            object.__setattr__(self, "lam", lam)
        if self.kind == "DS_MULTI":
            w = self.weights
            if w is None:
                w = tuple([1.0 / len(ms)] * len(ms))
            object.__setattr__(self, "weights", tuple(float(c) for c in w))

    def bound(self, budget: SubsetBudget = SubsetBudget(), jobs: Optional[int] = None) -> BoundVector:
        ms = self.measurements
        if self.kind == "DP":
            return dp_bound_t(ms[0], ms[1], budget, jobs)
        if self.kind == "DS":
            return ds_bound_s(ms[0], ms[1], self.lam, budget, jobs)
        if self.kind == "DP_MULTI":
            return dp_multi_bound(ms, budget, jobs)
        return ds_multi_bound(ms, self.weights, budget, jobs)

    def joint_uncertainty(self, state: PureState) -> WeightVector:
        dists = [born_probabilities(state, m) for m in self.measurements]
        if self.kind in ("DP", "DP_MULTI"):
            return direct_product_all(dists)
        if self.kind == "DS":
            return weighted_direct_sum(dists, [self.lam, 1.0 - self.lam])
        return weighted_direct_sum(dists, self.weights)


@dataclass(frozen=True)
class MurVerdict:
    joint: WeightVector
    bound: BoundVector
    chain: tuple[tuple[str, str, bool], ...]
    curves: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(ok for _, _, ok in self.chain)


def verify_mur(state: PureState, setting: Setting, bound: Optional[BoundVector] = None) -> MurVerdict:
    """Check ``joint ≺ F(bound) ≺ bound`` for one state.

    The chain uses ordinary (sorted) majorization. One extra link checks
    the joint partial sums against the bound's partial sums in index order
    (``T_k`` or ``S_k``), which is the stronger statement the enumeration
    actually certifies. Pass a precomputed ``bound`` to avoid repeating the
    enumeration.
    """
    if bound is None:
        bound = setting.bound()
    joint = setting.joint_uncertainty(state)
    label = bound.label
    flat_label = f"F({label})"
    raw_sorted = WeightVector(bound.raw)
    chain = (
        ("joint", flat_label, majorizes(joint, bound.flattened)),
        (flat_label, label, majorizes(bound.flattened, raw_sorted)),
        ("joint", label, majorizes(joint, raw_sorted)),
        ("joint", f"partial sums of {label}", majorizes(joint, bound.cumulative)),
    )
    curves: dict[str, LorenzCurve] = {
        "joint": lorenz_curve(joint),
        flat_label: lorenz_curve(bound.flattened),
        label: lorenz_curve(raw_sorted),
    }
    return MurVerdict(joint, bound, chain, curves)
