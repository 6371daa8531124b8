import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majur.bounds import Setting, dp_bound_t, ds_bound_s
from majur.errors import ZeroComponent
from majur.lattice import WeightVector, flatten
from majur.measures import entropy_sum, measure_U, measure_V, shannon_entropy, uncertainty_gaps
from majur.quantum import PureState, born_probabilities, make_state_deg, random_state

probs = st.lists(st.floats(0.001, 1), min_size=1, max_size=6).map(lambda v: np.array(v) / sum(v))


def entropy_oracle(x):
    # natural-log entropy converted to bits
    x = np.asarray(x, dtype=float)
    x = x[x > 0]
    return float(-np.sum(x * np.log(x)) / math.log(2))


class TestShannon:
    def test_uniform(self):
        assert shannon_entropy([0.25] * 4) == pytest.approx(2.0)

    def test_printed_values(self):
        assert abs(shannon_entropy([0.7773, 0.2227]) - 0.7651) <= 2e-4
        assert abs(shannon_entropy([1, 1, 0.7583, 0.2417]) - 0.7979) <= 2e-4

    def test_zero_contributes_nothing(self):
        assert shannon_entropy([1.0, 0.0, 0.0]) == 0.0

    @given(probs)
    def test_against_natural_log(self, p):
        assert shannon_entropy(p) == pytest.approx(entropy_oracle(p), abs=1e-12)

    @given(probs, probs)
    def test_super_additive(self, p, q):
        h = shannon_entropy(p) + shannon_entropy(q)
        assert shannon_entropy(np.outer(p, q).ravel()) == pytest.approx(h, abs=1e-9)
        assert shannon_entropy(np.concatenate([p, q])) == pytest.approx(h, abs=1e-9)

    @given(probs, probs)
    def test_normalized_direct_sum(self, p, q):
        expected = 1 + 0.5 * shannon_entropy(p) + 0.5 * shannon_entropy(q)
        assert shannon_entropy(np.concatenate([p, q]) / 2) == pytest.approx(expected, abs=1e-9)


class TestU:
    def test_examples(self):
        assert measure_U([1, 0]) == 0
        assert measure_U([0.5, 0.5]) == 0.5

    def test_product_versus_sum(self):
        p = q = np.array([0.5, 0.5])
        assert measure_U(np.outer(p, q).ravel()) == pytest.approx(0.75)
        assert measure_U(np.concatenate([p, q])) == pytest.approx(1.5)

    def test_strict_ordering_witness_on_grid(self, ms):
        A, B = ms["A"], ms["B"]
        y = WeightVector(2 * ds_bound_s(A, B, 0.5).raw)
        x = dp_bound_t(A, B).flattened
        witnesses = []
        for theta in range(0, 91, 10):
            for phi in range(0, 91, 10):
                psi = make_state_deg(theta, phi)
                p, q = born_probabilities(psi, A), born_probabilities(psi, B)
                u_sum = measure_U(np.concatenate([p, q]))
                u_prod = measure_U(np.outer(p, q).ravel())
                if u_sum >= measure_U(y) - 1e-12 and measure_U(y) > u_prod >= measure_U(x) - 1e-12:
                    witnesses.append((theta, phi))
        assert (0, 0) in witnesses
        assert measure_U(y) == pytest.approx(1.0)
        assert measure_U(x) == pytest.approx(0.4375)


class TestV:
    def test_examples(self):
        assert measure_V([0.5, 0.5]) == pytest.approx(-2.0)
        with pytest.raises(ZeroComponent):
            measure_V([1, 0])

    def test_sum_and_product_examples(self):
        p, q = [0.5, 0.5], [0.25, 0.75]
        # the log of the full product is additive over concatenation, not over pairs
        assert measure_V(np.concatenate([p, q])) == pytest.approx(-4.415, abs=1e-3)
        assert measure_V(np.outer(p, q).ravel()) == pytest.approx(2 * -4.415, abs=1e-3)

    @given(probs, probs)
    def test_sum_and_product_identities(self, p, q):
        n, m = len(p), len(q)
        v_p, v_q = measure_V(p), measure_V(q)
        assert measure_V(np.concatenate([p, q])) == pytest.approx(v_p + v_q, abs=1e-9)
        assert measure_V(np.outer(p, q).ravel()) == pytest.approx(m * v_p + n * v_q, abs=1e-9)


class TestSchurConcavity:
    @given(st.integers(0, 2**32 - 1))
    def test_doubly_stochastic_image(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 8))
        y = np.sort(rng.dirichlet(np.full(n, 0.5)))[::-1]
        d = sum(w * np.eye(n)[rng.permutation(n)] for w in rng.dirichlet(np.ones(4)))
        x = flatten(d @ y).components
        assert shannon_entropy(x) >= shannon_entropy(y) - 1e-9
        assert measure_U(x) >= measure_U(y) - 1e-9


class TestGaps:
    def test_identical_measurements(self, ms, rng):
        psi = random_state(rng)
        g = uncertainty_gaps(psi, ms["B"], ms["B"])["shannon"]
        p = born_probabilities(psi, ms["B"])
        assert g.xi_dp == pytest.approx(shannon_entropy(np.outer(p, p).ravel()), abs=1e-9)

    def test_zero_state(self, ms):
        zero = PureState(np.eye(4, dtype=complex)[0])
        gaps = uncertainty_gaps(zero, ms["A"], ms["B"])
        h_ft = shannon_entropy([0.5625, 0.21875, 0.21875])
        assert gaps["shannon"].xi_dp == pytest.approx(2 - h_ft, abs=1e-9)
        assert gaps["shannon"].xi_dp == pytest.approx(0.5738, abs=1e-4)
        assert gaps["shannon"].xi_ds >= -1e-9
        assert gaps["V"].xi_dp is None and gaps["V"].xi_ds is None

    @settings(max_examples=25)
    @given(st.integers(0, 2**32 - 1))
    def test_gaps_non_negative(self, seed):
        from majur.quantum import builtin_measurement as bm
        psi = random_state(np.random.default_rng(seed))
        for flattened in (True, False):
            gaps = uncertainty_gaps(psi, bm("A"), bm("B"), measures=("shannon", "U"),
                                    flattened=flattened)
            for g in gaps.values():
                assert g.xi_dp >= -1e-9 and g.xi_ds >= -1e-9


def test_entropic_corollary(ms):
    rng = np.random.default_rng(11)
    Cs = (ms["C1"], ms["C2"], ms["C3"])
    h_t = shannon_entropy(Setting("DP_MULTI", Cs).bound().flattened)
    h_s = shannon_entropy(Setting("DS_MULTI", Cs).bound().flattened.scaled(3))
    worst = math.inf
    for _ in range(1000):
        total = entropy_sum(random_state(rng), Cs)
        worst = min(worst, total - max(h_t, h_s))
    assert worst >= -1e-9
