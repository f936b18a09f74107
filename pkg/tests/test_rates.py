import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from oris_rsma.channel import equal_split, sample_realization, split_at
from oris_rsma.config import ContractViolation, NoiseModel, ScenarioConfig
from oris_rsma.rates import (PowerSplit, common_rate, common_rate_per_user, evaluate_rates,
                             private_rate)

from conftest import make_realization

mpmath.mp.dps = 50


def mp_common(alpha_c, alpha_p, p, g, n0):
    a_c, g, p, n0 = (mpmath.mpf(x) for x in (alpha_c, g, p, n0))
    interference = sum(mpmath.mpf(a) for a in alpha_p) * p * g
    return mpmath.log(1 + a_c * p * g / (interference + n0), 2)


def mp_private(a_self, a_other, p, g, n0):
    a_self, a_other, p, g, n0 = (mpmath.mpf(x) for x in (a_self, a_other, p, g, n0))
    return mpmath.log(1 + a_self * p * g / (a_other * p * g + n0), 2)


gains = st.floats(1e-6, 1e6)
alphas = st.floats(0.0, 0.5)


class TestPowerSplit:
    def test_budget(self):
        s = PowerSplit.from_private(0.2)
        assert s.alpha_c == pytest.approx(0.6)
        assert s.alpha_c + sum(s.alpha_p) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_bad_budget(self):
        with pytest.raises(ContractViolation):
            PowerSplit(0.5, (0.5, 0.5))
        with pytest.raises(ContractViolation):
            PowerSplit.from_private(0.6)


class TestCommonRate:
    def test_half_common(self):
        got = common_rate_per_user(1.0, PowerSplit(0.5, (0.25, 0.25)), 1.0, NoiseModel(0.1))
        want = mp_common(0.5, (0.25, 0.25), 1, 1, 0.1)
        assert float(want) == pytest.approx(0.8744691179161412, rel=1e-15)
        assert got == pytest.approx(float(want), rel=1e-12)

    @given(gains, st.floats(1e-3, 10))
    def test_zero_common_power(self, g, n0):
        assert common_rate_per_user(g, PowerSplit(0.0, (0.5, 0.5)), 1.0, NoiseModel(n0)) == 0.0

    def test_interference_free_identity(self):
        assert common_rate_per_user(1.0, PowerSplit(1.0, (0, 0)), 1.0, NoiseModel(1.0)) == 1.0

    def test_zero_gain(self):
        assert common_rate_per_user(0.0, PowerSplit.from_common(0.5), 1.0, NoiseModel(1.0)) == 0.0

    def test_min(self):
        assert common_rate([0.5, 0.9]) == 0.5
        assert common_rate((1.2, 1.2)) == 1.2
        with pytest.raises(ContractViolation):
            common_rate([])

    def test_min_over_random_realization(self):
        cfg = ScenarioConfig(n_elements=16)
        r = sample_realization(cfg, 3)
        rep = evaluate_rates(r, equal_split(cfg), PowerSplit.from_common(0.7), cfg, NoiseModel(0.3))
        assert rep.common == min(rep.common_per_user[0], rep.common_per_user[1])

    @given(gains, st.floats(1e-4, 10), st.floats(0.0, 0.49), st.floats(0.001, 0.5))
    def test_increasing_in_common_power(self, g, n0, a_c, step):
        b_c = min(1.0, a_c + step)
        lo = common_rate_per_user(g, PowerSplit.from_common(a_c), 1.0, NoiseModel(n0))
        hi = common_rate_per_user(g, PowerSplit.from_common(b_c), 1.0, NoiseModel(n0))
        assert hi >= lo
        if g / n0 > 1e-6:
            assert hi > lo

    @given(gains, st.floats(1e-4, 10), st.floats(0.0, 1.0), st.floats(0.1, 10))
    def test_interference_free_bound(self, g, n0, a_c, p):
        rc = common_rate_per_user(g, PowerSplit.from_common(a_c), p, NoiseModel(n0))
        assert 0.0 <= rc <= np.log2(1 + p * g / n0) * (1 + 1e-12)


class TestPrivateRate:
    def test_quarter_split(self):
        got = private_rate(0, 1.0, PowerSplit(0.5, (0.25, 0.25)), 1.0, NoiseModel(0.25))
        want = float(mp_private(0.25, 0.25, 1, 1, 0.25))
        assert want == pytest.approx(0.5849625007211562, rel=1e-15)
        assert got == pytest.approx(want, rel=1e-12)

    def test_total_power_scales_both_terms(self):
        split = PowerSplit(0.2, (0.3, 0.5))
        for user, (a_s, a_o) in enumerate([(0.3, 0.5), (0.5, 0.3)]):
            got = private_rate(user, 2.5, split, 4.0, NoiseModel(0.7))
            assert got == pytest.approx(float(mp_private(a_s, a_o, 4.0, 2.5, 0.7)), rel=1e-12)

    def test_no_private_power(self):
        assert private_rate(0, 3.0, PowerSplit(0.5, (0.0, 0.5)), 1.0, NoiseModel(1.0)) == 0.0

    def test_snr_one_identity(self):
        split = PowerSplit(0.6, (0.4, 0.0))
        assert private_rate(0, 2.0, split, 1.0, NoiseModel(0.8)) == pytest.approx(1.0, rel=1e-15)

    @given(st.floats(1e-3, 1e5), st.floats(1.01, 10), st.floats(1e-3, 10), alphas, alphas)
    def test_monotone_in_gain_and_interference(self, g, factor, n0, a_self, a_other):
        a_self = max(a_self, 1e-3)
        split = PowerSplit(1 - a_self - a_other, (a_self, a_other))
        lo = private_rate(0, g, split, 1.0, NoiseModel(n0))
        hi = private_rate(0, g * factor, split, 1.0, NoiseModel(n0))
        assert hi > lo or hi == pytest.approx(lo, rel=1e-12)
        louder = PowerSplit(1 - a_self - min(0.5, a_other + 0.1) ,
                            (a_self, min(0.5, a_other + 0.1)))
        if louder.alpha_c >= 0:
            assert private_rate(0, g, louder, 1.0, NoiseModel(n0)) <= lo + 1e-15


class TestEvaluateRates:
    def test_all_common(self):
        cfg = ScenarioConfig(n_elements=8)
        rep = evaluate_rates(sample_realization(cfg, 0), equal_split(cfg),
                             PowerSplit(1.0, (0.0, 0.0)), cfg, NoiseModel(0.5))
        assert rep.private_per_user == (0.0, 0.0)
        assert rep.sum_rate == pytest.approx(2 * rep.common)

    def test_symmetric_users(self):
        r = make_realization([0.3, 0.4j], [0.4, -0.3j], h_d=(0.5, 0.5j))
        cfg = ScenarioConfig(n_elements=2, element_threshold=1)
        rep = evaluate_rates(r, split_at(2, 1), PowerSplit(0.4, (0.3, 0.3)), cfg, NoiseModel(0.1))
        assert rep.common_per_user[0] == pytest.approx(rep.common_per_user[1], rel=1e-14)
        assert rep.private_per_user[0] == pytest.approx(rep.private_per_user[1], rel=1e-14)

    @pytest.mark.parametrize("trial", range(5))
    def test_scalar_recomputation(self, trial):
        cfg = ScenarioConfig(n_elements=8, element_threshold=1)
        r = sample_realization(cfg, trial)
        a = split_at(8, 3)
        split = PowerSplit(0.55, (0.2, 0.25))
        n0 = 0.05
        rep = evaluate_rates(r, a, split, cfg, NoiseModel(n0))
        g = []
        for user in (0, 1):
            idx = list(a.elements(user))
            amp = abs(r.h_d[user]) + sum(abs(r.g[j]) * abs(r.h_ris[user, j]) for j in idx)
            g.append(amp ** 2)
        rc_k = [float(mp_common(0.55, (0.2, 0.25), 1, gk, n0)) for gk in g]
        rp = [float(mp_private(0.2, 0.25, 1, g[0], n0)), float(mp_private(0.25, 0.2, 1, g[1], n0))]
        rc = min(rc_k)
        np.testing.assert_allclose(rep.common_per_user, rc_k, rtol=1e-12)
        np.testing.assert_allclose(rep.private_per_user, rp, rtol=1e-12)
        np.testing.assert_allclose(rep.user_total, [rc + rp[0], rc + rp[1]], rtol=1e-12)
        assert rep.sum_rate == pytest.approx(2 * rc + sum(rp), rel=1e-12)

    @given(st.integers(0, 1000), st.floats(0.0, 1.0), st.floats(-10, 40))
    def test_report_composition(self, trial, a_c, snr):
        cfg = ScenarioConfig(n_elements=16)
        rep = evaluate_rates(sample_realization(cfg, trial), equal_split(cfg),
                             PowerSplit.from_common(a_c), cfg, NoiseModel.from_snr_db(snr))
        assert rep.common == min(rep.common_per_user)
        assert all(t == rep.common + p for t, p in zip(rep.user_total, rep.private_per_user))
        assert rep.sum_rate == sum(rep.user_total)
        assert min(rep.common_per_user + rep.private_per_user) >= 0
