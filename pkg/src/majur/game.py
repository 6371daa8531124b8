"""Monte Carlo simulation of the direct-product and direct-sum guessing games.

Random numbers come from numpy's ``PCG64`` bit generator (PCG XSL RR 128/64,
as shipped with numpy >= 1.17) via ``numpy.random.default_rng(seed)``.
Outcomes are drawn by inverse-CDF lookup over the outcome list in
measurement order.

Bob always guesses the ``k`` most probable outcomes of the exact
distribution, ties broken by outcome index; ``empirical_top_k`` is the
fraction of trials in which Alice's outcome lands in that guess set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .bounds import Setting
from .errors import MajurError
from .quantum import Measurement, PureState, born_probabilities


@dataclass(frozen=True, eq=False)
class GameConfig:
    kind: str  # "DP" or "DS"
    state: PureState
    measurements: tuple[Measurement, Measurement]
    k: int = 1
    trials: int = 10**6
    seed: int = 0
    lam: float = 0.5
    workers: int = 1

    def __post_init__(self):
        if self.kind not in ("DP", "DS"):
            raise MajurError(f"game kind must be DP or DS, not {self.kind!r}")
        if len(self.measurements) != 2:
            raise MajurError("a guessing game uses exactly two measurements")
        if self.trials < 1:
            raise MajurError("trials must be >= 1")
        if self.workers < 1:
            raise MajurError("workers must be >= 1")
        if not 1 <= self.k <= self.n_outcomes:
            raise MajurError(f"k={self.k} outside 1..{self.n_outcomes}")
        if self.kind == "DS" and not 0.0 < self.lam <= 1.0:
            raise MajurError(f"lambda={self.lam!r} must lie in (0, 1]")

    @property
    def n_outcomes(self) -> int:
        m, n = self.measurements
        if self.kind == "DP":
            return m.n_outcomes * n.n_outcomes
        return m.n_outcomes + n.n_outcomes


@dataclass(frozen=True, eq=False)
class GameResult:
    empirical_top_k: float
    counts: np.ndarray
    exact_top_k: float
    bound_value: float
    std_error: float
    guess: tuple[int, ...]
    histogram_top_k: float

    @property
    def trials(self) -> int:
        return int(self.counts.sum())


def exact_distribution(config: GameConfig) -> np.ndarray:
    """Exact probabilities of the recorded outcomes.

    DP outcomes are pairs ``(a, b)`` flattened as ``a * |N| + b``; DS
    outcomes are ``a`` for the first measurement and ``|M| + b`` for the
    second.
    """
    m, n = config.measurements
    p = born_probabilities(config.state, m)
    q = born_probabilities(config.state, n)
    if config.kind == "DP":
        return np.outer(p, q).ravel()
    return np.concatenate([config.lam * p, (1.0 - config.lam) * q])


def _sample(cdf: np.ndarray, u: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(cdf, u, side="right")
    return np.minimum(idx, len(cdf) - 1)


def _cdf(p: np.ndarray) -> np.ndarray:
    c = np.cumsum(p)
    return c / c[-1]


def _run_stream(config: GameConfig, trials: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    m, n = config.measurements
    cp = _cdf(born_probabilities(config.state, m))
    cq = _cdf(born_probabilities(config.state, n))
    if config.kind == "DP":
        # two separated boxes: independent draws per trial
        a = _sample(cp, rng.random(trials))
        b = _sample(cq, rng.random(trials))
        outcomes = a * n.n_outcomes + b
    else:
        coin = rng.random(trials)
        u = rng.random(trials)
        first = coin < config.lam
        outcomes = np.where(first, _sample(cp, u), m.n_outcomes + _sample(cq, u))
    return np.bincount(outcomes, minlength=config.n_outcomes)


@lru_cache(maxsize=64)
def _bound(kind: str, m: Measurement, n: Measurement, lam: float):
    # measurements hash by identity, so the cache keeps them alive
    if kind == "DP":
        return Setting("DP", (m, n)).bound()
    return Setting("DS", (m, n), lam=lam).bound()


def bound_for(config: GameConfig):
    m, n = config.measurements
    return _bound(config.kind, m, n, config.lam if config.kind == "DS" else 0.0)


def simulate(config: GameConfig, bound_value: Optional[float] = None) -> GameResult:
    """Play ``config.trials`` rounds and score Bob's fixed top-``k`` guess.

    With ``workers > 1`` the trials are split into ``workers`` blocks drawn
    from ``default_rng(seed + w)`` and merged in worker order, so results
    depend on the worker count.
    """
    exact = exact_distribution(config)
    guess = tuple(int(i) for i in np.argsort(-exact, kind="stable")[: config.k])
    if config.workers == 1:
        counts = _run_stream(config, config.trials, config.seed)
    else:
        base, extra = divmod(config.trials, config.workers)
        counts = np.zeros(config.n_outcomes, dtype=np.int64)
        for w in range(config.workers):
            counts += _run_stream(config, base + (w < extra), config.seed + w)
    f = float(counts[list(guess)].sum()) / config.trials
    hist_top = float(np.sort(counts)[::-1][: config.k].sum()) / config.trials
    if bound_value is None:
        bound_value = float(bound_for(config).cumulative.partial_sums[config.k - 1])
    return GameResult(
        empirical_top_k=f,
        counts=counts,
        exact_top_k=float(exact[list(guess)].sum()),
        bound_value=bound_value,
        std_error=math.sqrt(f * (1.0 - f) / config.trials),
        guess=guess,
        histogram_top_k=hist_top,
    )
