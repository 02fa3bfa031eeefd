"""用户几何与阵列响应测试"""

from dataclasses import replace

import numpy as np
import pytest

from leo_em_estimator.channel.geometry import (free_space_path_loss_db, sample_user_states,
                                               slant_range, steering_vector, upa_response)
from leo_em_estimator.models.channel import UserGeometry
from leo_em_estimator.models.system_config import ArrayGeometry, SPEED_OF_LIGHT, SystemConfig
from leo_em_estimator.utils.exceptions import (ConfigError, DegenerateGeometryError,
                                               DimensionError)


class TestSlantRange:
    """斜距与路径损耗测试"""

    def test_zenith_equals_altitude(self):
        """测试天顶方向斜距等于轨道高度"""
        assert slant_range(600e3, 90.0) == pytest.approx(600e3, rel=1e-9)

    def test_low_elevation_is_longer(self):
        """测试低仰角斜距更长"""
        assert slant_range(600e3, 10.0) > slant_range(600e3, 45.0) > 600e3

    def test_free_space_path_loss(self):
        """测试自由空间路径损耗数值"""
        expected = 20 * np.log10(4 * np.pi * 1000.0 * 1e9 / SPEED_OF_LIGHT)
        assert free_space_path_loss_db(1000.0, 1e9) == pytest.approx(expected)
        assert expected == pytest.approx(92.45, abs=0.01)


class TestArrayResponse:
    """UPA 阵列响应测试"""

    def test_steering_vector_unit_norm(self):
        """测试导向矢量范数为1"""
        v = steering_vector(16, 0.37)
        assert v.shape == (16,)
        assert np.linalg.norm(v) == pytest.approx(1.0)

    def test_upa_response_shape_and_norm(self):
        """测试响应矩阵尺寸与行范数"""
        users = [UserGeometry(0.3, 1.1, 7e5, 40.0), UserGeometry(2.0, 0.4, 8e5, 20.0)]
        response = upa_response(ArrayGeometry(4, 8), users)

        assert response.a.shape == (2, 32)
        assert response.n_users == 2
        assert response.n_antennas == 32
        assert np.allclose(np.linalg.norm(response.a, axis=1), 1.0)

    def test_upa_response_is_kronecker(self):
        """测试响应为两个单轴导向矢量的 Kronecker 积"""
        user = UserGeometry(0.7, 1.2, 7e5, 40.0)
        response = upa_response(ArrayGeometry(3, 5), [user])

        expected = np.kron(steering_vector(3, np.sin(1.2) * np.cos(0.7)),
                           steering_vector(5, np.cos(1.2)))
        assert np.allclose(response.a[0], expected)

    def test_invalid_array_geometry(self):
        """测试非法阵列尺寸"""
        with pytest.raises(DimensionError):
            ArrayGeometry(0, 4)

    def test_response_is_read_only(self):
        """测试响应矩阵只读"""
        response = upa_response(ArrayGeometry(2, 2), [UserGeometry(0.1, 0.2, 1.0, 30.0)])
        with pytest.raises(ValueError):
            response.a[0, 0] = 0


class TestSampleUserStates:
    """信道参数抽样测试"""

    def test_same_seed_same_states(self, small_config):
        """测试相同种子得到相同结果"""
        first = sample_user_states(small_config, 11)
        second = sample_user_states(small_config, 11)

        assert len(first) == small_config.n_users
        for a, b in zip(first, second):
            assert a.geometry == b.geometry
            assert a.num_paths == b.num_paths
            assert np.array_equal(a.path_gains, b.path_gains)
            assert np.array_equal(a.tau_mp, b.tau_mp)
            assert a.nu_sat == b.nu_sat

    def test_different_seed_differs(self, small_config):
        """测试不同种子得到不同结果"""
        first = sample_user_states(small_config, 1)
        second = sample_user_states(small_config, 2)
        assert [s.nu_sat for s in first] != [s.nu_sat for s in second]

    def test_parameter_ranges(self, small_config):
        """测试抽样参数在配置范围内"""
        for state in sample_user_states(small_config, 5):
            assert small_config.min_elevation_deg <= state.geometry.elevation <= 90.0
            assert 0.0 <= state.geometry.theta_x < 2 * np.pi
            assert 0.0 <= state.geometry.theta_y <= np.pi
            assert 1 <= state.num_paths <= small_config.max_paths
            assert len(state.path_gains) == state.num_paths
            assert np.all(state.tau_mp >= 0.0)
            assert np.all(state.tau_mp <= small_config.delay_spread_s)
            assert abs(state.nu_sat) <= small_config.max_sat_doppler_hz
            assert abs(state.nu_ut_los) <= small_config.max_user_doppler_hz
            assert state.tau_los == pytest.approx(state.geometry.distance / SPEED_OF_LIGHT)
            assert state.delay_spread <= small_config.delay_spread_s + 1e-15

    def test_static_scenario(self, static_config):
        """测试静态极限场景没有用户多普勒与多径时延"""
        for state in sample_user_states(static_config, 3):
            assert state.nu_ut_los == 0.0
            assert np.all(state.nu_ut_nlos == 0.0)
            assert np.all(state.tau_mp == 0.0)

    def test_users_are_spatially_separated(self):
        """测试任意两个用户的阵列响应相关系数不超过上限"""
        config = SystemConfig()
        for seed in range(20):
            states = sample_user_states(config, seed)
            a = upa_response(config.array, [s.geometry for s in states]).a
            gram = np.abs(a @ a.conj().T)
            off_diagonal = gram[~np.eye(config.n_users, dtype=bool)]
            assert off_diagonal.max() <= config.max_user_correlation + 1e-12

    def test_unseparable_users_raise(self, small_config):
        """测试无法满足间隔要求时抛出可恢复的几何退化错误"""
        config = replace(small_config, n_users=5, array_mx=2, array_my=2,
                         max_user_correlation=0.1)
        with pytest.raises(DegenerateGeometryError) as exc_info:
            sample_user_states(config, 1)
        assert exc_info.value.recoverable
        assert exc_info.value.details['max_correlation'] == 0.1

        unchecked = replace(config, max_user_correlation=1.0)
        assert len(sample_user_states(unchecked, 1)) == 5

    @pytest.mark.slow
    def test_path_gain_variance(self, small_config):
        """测试路径增益为单位方差的复高斯（10⁵ 个样本）"""
        config = replace(small_config, n_users=10, max_user_correlation=1.0)
        gains, count, seed = [], 0, 0
        while count < 100_000:
            for state in sample_user_states(config, seed):
                gains.append(state.path_gains)
                count += state.num_paths
            seed += 1
        gains = np.concatenate(gains)
        assert np.mean(np.abs(gains) ** 2) == pytest.approx(1.0, abs=0.02)
        assert abs(np.mean(gains)) < 0.02

    def test_invalid_config(self, small_config):
        """测试非法配置"""
        with pytest.raises(ConfigError):
            sample_user_states(replace(small_config, n_users=0), 1)
        with pytest.raises(ConfigError):
            sample_user_states(replace(small_config, max_user_doppler_hz=-1.0), 1)
