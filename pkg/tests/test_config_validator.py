"""配置验证器测试"""

from dataclasses import replace

import pytest

from leo_em_estimator.models.system_config import SystemConfig
from leo_em_estimator.utils.config_validator import ConfigValidator
from leo_em_estimator.utils.exceptions import ConfigError


class TestValidateMapping:
    """原始键值验证测试"""

    def test_valid_mapping(self):
        """测试有效映射"""
        ConfigValidator.validate_mapping({'n_users': 4, 'snr_grid': [0, 10],
                                          'log_level': 'INFO'})

    def test_root_must_be_dict(self):
        """测试根节点类型"""
        with pytest.raises(ConfigError, match="字典"):
            ConfigValidator.validate_mapping([1, 2])

    def test_unknown_key(self):
        """测试未知键"""
        with pytest.raises(ConfigError, match="未知的配置项"):
            ConfigValidator.validate_mapping({'services': {}})

    @pytest.mark.parametrize('value', [4.0, '4', True])
    def test_integer_field(self, value):
        """测试整数字段类型"""
        with pytest.raises(ConfigError, match="必须是整数"):
            ConfigValidator.validate_mapping({'n_users': value})

    @pytest.mark.parametrize('key', ['snr_grid', 'methods', 'em_snr_list'])
    def test_list_fields(self, key):
        """测试列表字段不能为空或标量"""
        with pytest.raises(ConfigError, match="非空列表"):
            ConfigValidator.validate_mapping({key: []})
        with pytest.raises(ConfigError, match="非空列表"):
            ConfigValidator.validate_mapping({key: 3})


class TestValidateSystemConfig:
    """取值范围验证测试"""

    def test_default_config(self):
        """测试默认配置有效"""
        ConfigValidator.validate_system_config(SystemConfig())

    def test_static_limit_allowed(self):
        """测试静止用户与无多径场景允许"""
        ConfigValidator.validate_system_config(
            replace(SystemConfig(), max_user_doppler_hz=0.0, delay_spread_s=0.0))

    @pytest.mark.parametrize('field_name', ['n_users', 'n_pilots', 'carrier_hz', 'workers'])
    def test_positive_fields(self, field_name):
        """测试必须为正的字段"""
        with pytest.raises(ConfigError, match=field_name):
            ConfigValidator.validate_system_config(replace(SystemConfig(), **{field_name: 0}))

    def test_negative_doppler(self):
        """测试负的用户多普勒"""
        with pytest.raises(ConfigError, match="max_user_doppler_hz"):
            ConfigValidator.validate_system_config(
                replace(SystemConfig(), max_user_doppler_hz=-1.0))

    def test_bem_order_exceeds_data(self):
        """测试 BEM 阶数超过数据符号数"""
        config = replace(SystemConfig(), n_data=10, bem_order=11, d_grid=(3,))
        with pytest.raises(ConfigError, match="bem_order"):
            ConfigValidator.validate_system_config(config)

    def test_single_data_symbol(self):
        """测试数据符号数为 1 时拒绝（DLP 基至少需要 2 个符号）"""
        config = replace(SystemConfig(), n_data=1, bem_order=1, d_grid=(1,))
        with pytest.raises(ConfigError, match="n_data"):
            ConfigValidator.validate_system_config(config)

    @pytest.mark.parametrize('value', [0.0, 1.5])
    def test_user_correlation_range(self, value):
        """测试用户相关系数上限越界"""
        with pytest.raises(ConfigError, match="max_user_correlation"):
            ConfigValidator.validate_system_config(
                replace(SystemConfig(), max_user_correlation=value))

    def test_noise_enhancement_below_one(self):
        """测试噪声放大上限小于 1"""
        with pytest.raises(ConfigError, match="max_noise_enhancement"):
            ConfigValidator.validate_system_config(
                replace(SystemConfig(), max_noise_enhancement=0.5))

    def test_geometry_limits_boundaries(self):
        """测试几何上限的边界取值有效"""
        ConfigValidator.validate_system_config(
            replace(SystemConfig(), max_user_correlation=1.0, max_noise_enhancement=1.0))

    def test_d_grid_range(self):
        """测试 D 网格越界"""
        config = replace(SystemConfig(), n_data=10, bem_order=3, d_grid=(3, 20))
        with pytest.raises(ConfigError, match="d_grid"):
            ConfigValidator.validate_system_config(config)

    def test_iter_grid_range(self):
        """测试迭代网格含 0"""
        with pytest.raises(ConfigError, match="iter_grid"):
            ConfigValidator.validate_system_config(replace(SystemConfig(), iter_grid=(0, 1)))

    def test_unknown_method(self):
        """测试未知方法"""
        with pytest.raises(ConfigError, match="未知的估计方法"):
            ConfigValidator.validate_system_config(
                replace(SystemConfig(), methods=('em', 'mmse')))

    def test_empty_grid(self):
        """测试空网格"""
        with pytest.raises(ConfigError, match="snr_grid"):
            ConfigValidator.validate_system_config(replace(SystemConfig(), snr_grid=()))
