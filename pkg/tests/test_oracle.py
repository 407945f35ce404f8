import numpy as np
import pytest

from tiltedsum import (
    derive_chain,
    enumerate_pmf,
    occupation_pmf,
    oracle_variance,
    variance_exact,
)

from conftest import PAIR_GRID


class TestEnumeratePMF:
    def test_n1(self, moderate):
        assert np.allclose(enumerate_pmf(moderate, 1).pmf, [0.75, 0.25], atol=1e-15)

    def test_n2_explicit_products(self, moderate):
        # 0.75*0.9, 0.75*0.1 + 0.25*0.3, 0.25*0.7
        assert np.allclose(enumerate_pmf(moderate, 2).pmf, [0.675, 0.15, 0.175], atol=1e-15)

    def test_total_probability(self, moderate):
        for n in (1, 5, 12, 20):
            result = enumerate_pmf(moderate, n, u_values=(1.0,))
            assert result.pmf.sum() == pytest.approx(1.0, abs=1e-13)
            assert result.mgf_samples[1.0] == pytest.approx(1.0, abs=1e-13)

    def test_mgf_sample(self, moderate):
        assert enumerate_pmf(moderate, 2, u_values=(2.0,)).mgf_samples[2.0] == pytest.approx(
            1.675, rel=1e-13
        )

    def test_moments(self, moderate):
        result = enumerate_pmf(moderate, 6)
        pmf = occupation_pmf(moderate, 6)
        assert result.mean == pytest.approx(pmf.mean(), abs=1e-13)
        assert result.var == pytest.approx(pmf.variance(), abs=1e-12)

    @pytest.mark.parametrize("n", [0, 21, 64])
    def test_size_limited(self, moderate, n):
        with pytest.raises(ValueError):
            enumerate_pmf(moderate, n)


class TestOracleVariance:
    def test_n1_reference_value(self, moderate):
        assert oracle_variance(moderate, 0.1, 1) == pytest.approx(0.4710, abs=5e-5)

    def test_n5_reference_value(self, moderate):
        assert oracle_variance(moderate, 0.1, 5) / 5 == pytest.approx(1.232, abs=5e-4)

    def test_symmetric_zero(self, symmetric):
        assert oracle_variance(symmetric, 0.2, 4) == pytest.approx(0.0, abs=1e-18)

    @pytest.mark.parametrize("a,b", PAIR_GRID)
    def test_per_path_route_matches_closed_form(self, a, b):
        # Strongest cross-check in the suite: the per-path route goes through
        # the defining sum at the operating point, never the collapsed form.
        chain = derive_chain(a, b)
        for d in (0.05, 0.1, 0.2):
            if not 0 < d < min(chain.pi0, chain.pi1):
                continue
            for n in (1, 2, 5, 9, 14, 16):
                per_path = oracle_variance(chain, d, n)
                closed = variance_exact(chain, n)
                assert per_path == pytest.approx(closed, rel=1e-10, abs=1e-12)
