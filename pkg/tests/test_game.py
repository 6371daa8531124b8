import math

import numpy as np
import pytest

from majur.errors import MajurError
from majur.game import GameConfig, exact_distribution, simulate
from majur.quantum import PureState, make_state
from oracles import born

ZERO = PureState(np.eye(4, dtype=complex)[0])
PSI = make_state(math.pi / 4, math.pi / 4)


@pytest.fixture(scope="module")
def pair(ms):
    return ms["A"], ms["B"]


def config(pair, kind, state, **kw):
    return GameConfig(kind, state, pair, **kw)


class TestConfig:
    @pytest.mark.parametrize("kw", [dict(k=0), dict(k=17), dict(trials=0), dict(workers=0)])
    def test_rejects(self, pair, kw):
        with pytest.raises(MajurError):
            config(pair, "DP", PSI, **kw)

    def test_rejects_kind_and_lambda(self, pair):
        with pytest.raises(MajurError):
            config(pair, "XX", PSI)
        with pytest.raises(MajurError):
            config(pair, "DS", PSI, lam=0.0)

    def test_outcome_space(self, pair):
        assert config(pair, "DP", PSI).n_outcomes == 16
        assert config(pair, "DS", PSI).n_outcomes == 8


class TestExamples:
    def test_certain_outcome(self, pair):
        r = simulate(config(pair, "DS", ZERO, lam=1.0, trials=10**5))
        assert r.empirical_top_k == 1.0
        assert r.counts[0] == 10**5

    def test_direct_product_state(self, pair):
        p, q = born(PSI, "A"), born(PSI, "B")
        exact = float(np.max(np.outer(p, q)))
        # Born products are (1/4, 1/4, 1/2, 0) and (0.0214, 0.125, 0.4268, 0.4268) up to order
        assert exact == pytest.approx(0.5 * (2 + math.sqrt(2)) / 8, abs=1e-12)
        r = simulate(config(pair, "DP", PSI, trials=10**6, seed=1))
        assert r.exact_top_k == pytest.approx(exact, abs=1e-12)
        assert abs(r.empirical_top_k - exact) <= 4 * r.std_error
        assert r.empirical_top_k <= r.bound_value
        assert r.bound_value == pytest.approx(0.5625)

    def test_direct_sum_zero_state(self, pair):
        r = simulate(config(pair, "DS", ZERO, lam=0.5, trials=10**6, seed=2))
        assert abs(r.empirical_top_k - 0.5) <= 4 * r.std_error
        assert r.empirical_top_k <= 0.5 + 4 * r.std_error
        assert r.bound_value == pytest.approx(0.5)


class TestStatistics:
    def test_counts_sum_to_trials(self, pair):
        r = simulate(config(pair, "DP", PSI, trials=12345))
        assert r.trials == 12345
        assert 0.0 <= r.empirical_top_k <= 1.0

    def test_same_seed_identical(self, pair):
        a = simulate(config(pair, "DP", PSI, trials=10**4, seed=9))
        b = simulate(config(pair, "DP", PSI, trials=10**4, seed=9))
        assert np.array_equal(a.counts, b.counts)
        assert a.empirical_top_k == b.empirical_top_k

    def test_different_seed_differs(self, pair):
        a = simulate(config(pair, "DS", PSI, trials=10**4, seed=1))
        b = simulate(config(pair, "DS", PSI, trials=10**4, seed=2))
        assert not np.array_equal(a.counts, b.counts)

    @pytest.mark.parametrize("kind, state, lam", [
        ("DP", PSI, 0.5), ("DS", PSI, 0.5), ("DS", PSI, 0.2), ("DP", ZERO, 0.5), ("DS", ZERO, 0.7),
    ])
    def test_total_variation(self, pair, kind, state, lam):
        cfg = config(pair, kind, state, lam=lam, trials=10**6, seed=3)
        r = simulate(cfg)
        tv = 0.5 * np.abs(r.counts / r.trials - exact_distribution(cfg)).sum()
        assert tv <= 5 * math.sqrt(cfg.n_outcomes / cfg.trials)

    @pytest.mark.parametrize("kind", ["DP", "DS"])
    def test_every_k_below_bound(self, pair, kind):
        n = 16 if kind == "DP" else 8
        for k in range(1, n + 1):
            r = simulate(config(pair, kind, PSI, k=k, trials=2 * 10**5, seed=k))
            assert r.empirical_top_k <= r.bound_value + 4 * r.std_error

    def test_workers_are_deterministic(self, pair):
        cfg = config(pair, "DP", PSI, trials=10**5, seed=4, workers=3)
        a, b = simulate(cfg), simulate(cfg)
        assert np.array_equal(a.counts, b.counts)
        assert a.trials == 10**5
        single = simulate(config(pair, "DP", PSI, trials=10**5, seed=4))
        assert not np.array_equal(a.counts, single.counts)

    def test_guess_ties_broken_by_index(self, pair):
        r = simulate(config(pair, "DS", ZERO, lam=0.5, k=3, trials=1000))
        assert r.guess == (0, 4, 5)
