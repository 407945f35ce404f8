import math

import numpy as np
import pytest

from tiltedsum import derive_chain, indicator_autocov, sample_trajectory

from conftest import PAIR_GRID


class TestDeriveChain:
    def test_running_example(self, moderate):
        assert moderate.pi0 == pytest.approx(0.75, abs=1e-15)
        assert moderate.pi1 == pytest.approx(0.25, abs=1e-15)
        assert moderate.lambda2 == pytest.approx(0.6, abs=1e-15)
        assert moderate.ell == pytest.approx(math.log2(1 / 3), abs=1e-12)

    def test_iid_case(self, iid_quarter):
        assert iid_quarter.lambda2 == pytest.approx(0.0, abs=1e-15)

    def test_symmetric(self, symmetric):
        assert symmetric.pi0 == 0.5
        assert symmetric.pi1 == 0.5
        assert symmetric.lambda2 == pytest.approx(0.0, abs=1e-15)
        assert symmetric.ell == 0.0

    @pytest.mark.parametrize("a,b", [(0.0, 0.5), (1.0, 0.5), (0.5, -0.1), (0.5, 1.5),
                                     (1e-13, 0.5), (0.5, 1 - 1e-13)])
    def test_rejects_boundary(self, a, b):
        with pytest.raises(ValueError):
            derive_chain(a, b)

    @pytest.mark.parametrize("a,b", PAIR_GRID)
    def test_stationarity_and_spectrum(self, a, b):
        chain = derive_chain(a, b)
        P = chain.transition_matrix
        pi = chain.stationary
        assert np.allclose(P.sum(axis=1), 1.0, atol=1e-15)
        assert chain.pi0 + chain.pi1 == pytest.approx(1.0, abs=1e-15)
        assert np.max(np.abs(pi @ P - pi)) < 1e-14
        # Both eigenvalues, via the characteristic polynomial of P.
        for lam in (1.0, chain.lambda2):
            char = lam**2 - np.trace(P) * lam + np.linalg.det(P)
            assert abs(char) < 1e-14
        eig = np.sort(np.linalg.eigvals(P).real)
        assert np.allclose(eig, np.sort([1.0, 1.0 - a - b]), atol=1e-14)


class TestIndicatorAutocov:
    def test_lag_values(self, moderate):
        assert indicator_autocov(moderate, 0) == pytest.approx(0.1875, abs=1e-15)
        assert indicator_autocov(moderate, 1) == pytest.approx(0.1125, abs=1e-15)

    def test_iid_lags_vanish(self, iid_quarter):
        for k in (1, 2, 10):
            assert indicator_autocov(iid_quarter, k) == pytest.approx(0.0, abs=1e-15)

    def test_negative_lag_rejected(self, moderate):
        with pytest.raises(ValueError):
            indicator_autocov(moderate, -1)

    def test_matches_simulation(self, moderate):
        # 1e6-step empirical autocovariances; the standard error of the mean
        # is inflated by the chain's integrated autocorrelation factor.
        traj = sample_trajectory(moderate, 1_000_000, 20250809)
        x = traj.states.astype(float)
        inflation = math.sqrt((1 + moderate.lambda2) / (1 - moderate.lambda2))
        for k in (0, 1, 2, 5):
            y = (x[: len(x) - k] - moderate.pi1) * (x[k:] - moderate.pi1)
            se = y.std(ddof=1) / math.sqrt(len(y)) * inflation
            assert abs(y.mean() - indicator_autocov(moderate, k)) < 4 * se


class TestSampleTrajectory:
    def test_deterministic(self, moderate):
        t1 = sample_trajectory(moderate, 10, 42)
        t2 = sample_trajectory(moderate, 10, 42)
        assert np.array_equal(t1.states, t2.states)
        assert t1.n == 10 and t1.seed == 42

    def test_frozen_sequences(self, moderate):
        # Golden sequences pin the generator convention (Philox + inverse CDF).
        assert sample_trajectory(moderate, 10, 42).states.tolist() == [0] * 10
        assert sample_trajectory(moderate, 10, 7).states.tolist() == [
            0, 0, 0, 0, 0, 0, 0, 1, 0, 0,
        ]

    def test_states_binary(self, moderate):
        states = sample_trajectory(moderate, 500, 1).states
        assert set(np.unique(states)) <= {0, 1}
        assert len(states) == 500

    def test_marginal_frequency(self, moderate):
        traj = sample_trajectory(moderate, 1_000_000, 20250809)
        frac = traj.states.mean()
        bound = (
            3
            * math.sqrt(moderate.pi0 * moderate.pi1 / 1e6)
            * math.sqrt((1 + moderate.lambda2) / (1 - moderate.lambda2))
        )
        assert abs(frac - moderate.pi1) < bound

    def test_symmetric_pairs_uniform(self, symmetric):
        s = sample_trajectory(symmetric, 400_000, 99).states
        pairs = s[:-1] * 2 + s[1:]
        freq = np.bincount(pairs, minlength=4) / (len(s) - 1)
        assert np.abs(freq - 0.25).max() < 4 * math.sqrt(0.25 * 0.75 / len(s))

    def test_rejects_bad_length(self, moderate):
        with pytest.raises(ValueError):
            sample_trajectory(moderate, 0, 1)
