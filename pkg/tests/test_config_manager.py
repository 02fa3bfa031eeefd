"""配置管理器测试"""

import os
import tempfile
from pathlib import Path

import pytest

from leo_em_estimator.models.system_config import Constellation, SystemConfig
from leo_em_estimator.services.config_manager import (ConfigManager, build_config,
                                                      dump_config)
from leo_em_estimator.utils.exceptions import ConfigError, ErrorCode

CONFIG_DIR = Path(__file__).resolve().parent.parent / 'config'


def write_temp_config(content: str) -> str:
    with tempfile.NamedTemporaryFile(mode='w', suffix='.yaml', delete=False,
                                     encoding='utf-8') as f:
        f.write(content)
        return f.name


class TestConfigManager:
    """配置管理器测试类"""

    def test_load_valid_config(self):
        """测试加载有效配置"""
        config_path = write_temp_config("""
n_users: 6
array_mx: 8
constellation: QPSK
carrier_hz: 2.0e+9
snr_grid: [0, 5, 10]
log_level: DEBUG
""")
        try:
            manager = ConfigManager(config_path)
            config = manager.load_config()

            assert config.n_users == 6
            assert config.array_mx == 8
            assert config.constellation is Constellation.QPSK
            assert config.carrier_hz == 2.0e9
            assert config.snr_grid == (0.0, 5.0, 10.0)
            assert config.n_data == SystemConfig().n_data
            assert manager.get_logging_config() == {'log_level': 'DEBUG'}
        finally:
            os.unlink(config_path)

    def test_unsigned_exponent_is_float(self):
        """测试 YAML 中不带符号的指数写法"""
        config_path = write_temp_config("bandwidth_hz: 20e6\n")
        try:
            config = ConfigManager(config_path).load_config()
            assert config.bandwidth_hz == 20e6
        finally:
            os.unlink(config_path)

    def test_load_nonexistent_config(self):
        """测试加载不存在的配置文件"""
        manager = ConfigManager("nonexistent.yaml")

        with pytest.raises(ConfigError, match="配置文件不存在") as exc_info:
            manager.load_config()
        assert exc_info.value.error_code is ErrorCode.CONFIG_FILE_NOT_FOUND

    def test_load_invalid_yaml(self):
        """测试加载无效的YAML文件"""
        config_path = write_temp_config("n_users: 4\nsnr_grid: [\n")
        try:
            with pytest.raises(ConfigError, match="YAML格式错误") as exc_info:
                ConfigManager(config_path).load_config()
            assert exc_info.value.error_code is ErrorCode.CONFIG_PARSE_ERROR
        finally:
            os.unlink(config_path)

    def test_load_empty_config(self):
        """测试加载空配置文件"""
        config_path = write_temp_config("")
        try:
            with pytest.raises(ConfigError, match="配置文件为空"):
                ConfigManager(config_path).load_config()
        finally:
            os.unlink(config_path)

    def test_unknown_key(self):
        """测试未知配置项"""
        config_path = write_temp_config("n_user: 4\n")
        try:
            with pytest.raises(ConfigError, match="未知的配置项"):
                ConfigManager(config_path).load_config()
        finally:
            os.unlink(config_path)

    def test_out_of_range_value(self):
        """测试越界取值"""
        config_path = write_temp_config("n_data: 10\nbem_order: 11\n")
        try:
            with pytest.raises(ConfigError, match="bem_order"):
                ConfigManager(config_path).load_config()
        finally:
            os.unlink(config_path)

    def test_apply_overrides(self):
        """测试命令行覆盖，None 值忽略"""
        manager = ConfigManager("<defaults>")
        base = SystemConfig()

        config = manager.apply_overrides(base, trials=5, snr_db=None, methods=['EM'])
        assert config.trials == 5
        assert config.snr_db == base.snr_db
        assert config.methods == ('em',)
        assert base.trials == SystemConfig().trials
        assert manager.apply_overrides(base) is base

    @pytest.mark.parametrize('name', ['default.yaml', 'fast_example.yaml'])
    def test_shipped_configs(self, name):
        """测试随附的配置文件均可加载"""
        config = ConfigManager(str(CONFIG_DIR / name)).load_config()
        assert isinstance(config, SystemConfig)


class TestBuildConfig:
    """配置构造测试"""

    def test_defaults(self):
        """测试空映射得到默认配置"""
        assert build_config({}) == SystemConfig()

    def test_adaptive_em_must_be_bool(self):
        """测试 adaptive_em 类型检查"""
        with pytest.raises(ConfigError, match="布尔"):
            build_config({'adaptive_em': 'yes'})

    def test_invalid_constellation(self):
        """测试未知星座"""
        with pytest.raises(ConfigError):
            build_config({'constellation': '64qam'})

    def test_dump_config(self):
        """测试导出配置文本"""
        text = dump_config(SystemConfig())
        assert text.startswith('carrier_hz:')
        assert 'constellation:' in text
