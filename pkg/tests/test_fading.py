"""时变信道与补偿测试"""

import numpy as np
import pytest

from leo_em_estimator.channel.fading import (channel_sample, channel_samples,
                                             compensation_matrix, effective_channel,
                                             subcarrier_offset, symbol_times)
from leo_em_estimator.channel.geometry import sample_user_states
from leo_em_estimator.models.channel import UserChannelState, UserGeometry


def make_state(**kwargs) -> UserChannelState:
    params = dict(
        geometry=UserGeometry(0.5, 1.0, 7e5, 45.0),
        rician_kappa=1.0,
        num_paths=1,
        path_gains=np.array([0.0 + 0.0j]),
        tau_los=2e-3,
        tau_mp=np.array([0.0]),
        nu_sat=30e3,
        nu_ut_los=0.0,
        nu_ut_nlos=np.array([0.0]),
    )
    params.update(kwargs)
    return UserChannelState(**params)


class TestChannelSamples:
    """信道采样测试"""

    def test_los_only_value(self):
        """测试纯 LoS 信道在原点的取值"""
        state = make_state()
        assert channel_sample(state, 0.0, 0.0) == pytest.approx(np.sqrt(0.5))

    def test_vectorized_matches_scalar(self):
        """测试向量化采样与逐点采样一致"""
        state = make_state(num_paths=2, path_gains=np.array([0.3 + 0.1j, -0.2j]),
                           tau_mp=np.array([1e-7, 2e-7]), nu_ut_los=120.0,
                           nu_ut_nlos=np.array([-50.0, 80.0]))
        times = np.linspace(0.0, 1e-3, 7)
        vector = channel_samples(state, times, 1.2e5)
        scalar = [channel_sample(state, t, 1.2e5) for t in times]
        assert np.allclose(vector, scalar)

    def test_satellite_doppler_rotates_phase(self):
        """测试卫星多普勒只旋转相位"""
        state = make_state()
        samples = channel_samples(state, np.array([0.0, 1e-5]), 0.0)
        assert np.allclose(np.abs(samples), np.sqrt(0.5))
        assert np.angle(samples[1] / samples[0]) == pytest.approx(
            np.angle(np.exp(2j * np.pi * 1e-5 * 30e3)))


class TestCompensation:
    """多普勒补偿与有效信道测试"""

    def test_symbol_times(self, small_config):
        """测试符号采样时刻为 s·T_sl"""
        times = symbol_times(small_config)
        assert len(times) == small_config.n_symbols
        assert times[0] == pytest.approx(small_config.symbol_duration_s)
        assert np.allclose(np.diff(times), small_config.symbol_duration_s)

    def test_symbol_duration(self, small_config):
        """测试 T_sl = N_sc·T_s + N_cp·T_s"""
        t_s = 1.0 / (2 * small_config.bandwidth_hz)
        assert small_config.symbol_duration_s == pytest.approx(
            (small_config.n_subcarriers + small_config.n_cp) * t_s)

    def test_compensation_is_pure_phase(self, small_config):
        """测试补偿矩阵为单位模"""
        states = sample_user_states(small_config, 4)
        omega = compensation_matrix(states, small_config, 3.5).omega
        assert omega.shape == (small_config.n_users, small_config.n_symbols)
        assert np.allclose(np.abs(omega), 1.0)

    def test_static_effective_channel_is_constant(self, static_config):
        """测试静态场景补偿后有效信道在帧内恒定"""
        states = sample_user_states(static_config, 9)
        for offset in (0.0, 17.5):
            g = effective_channel(states, static_config, offset).g
            assert np.allclose(g, g[:, :1], atol=1e-12)

    def test_satellite_doppler_is_removed(self):
        """测试卫星多普勒被完全补偿而原始信道随时间旋转"""
        from leo_em_estimator.models.system_config import SystemConfig
        config = SystemConfig(n_users=1, n_pilots=2, n_data=8)
        state = make_state()
        raw = channel_samples(state, symbol_times(config), 0.0)
        g = effective_channel([state], config, 0.0).g[0]

        assert not np.allclose(raw, raw[0])
        assert np.allclose(g, g[0])

    def test_subcarrier_offset_mapping(self):
        """测试子载波编号到中心对称偏移的映射"""
        assert subcarrier_offset(1, 256) == -127.5
        assert subcarrier_offset(256, 256) == 127.5
        assert subcarrier_offset(2, 3) == 0.0
