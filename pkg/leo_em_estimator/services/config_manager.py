"""配置管理器"""

import os
from dataclasses import fields, replace
from typing import Any, Dict, Optional

import yaml

from ..models.system_config import Constellation, SystemConfig
from ..utils.config_validator import LOGGING_KEYS, ConfigValidator
from ..utils.exceptions import ConfigError, ErrorCode
from ..utils.log_manager import get_logger

FLOAT_GRID_FIELDS = ('snr_grid', 'em_snr_list')
INT_GRID_FIELDS = ('iter_grid', 'd_grid')
FLOAT_FIELDS = tuple(f.name for f in fields(SystemConfig) if f.type in (float, 'float'))


def build_config(mapping: Dict[str, Any], base: Optional[SystemConfig] = None) -> SystemConfig:
    """
    由扁平字典构造并验证 SystemConfig

    Args:
        mapping: SystemConfig 字段到取值的映射，不含日志键
        base: 未出现在 mapping 中的字段取自该配置，默认使用内置默认值

    Raises:
        ConfigError: 键未知、类型错误或取值越界
    """
    known = set(SystemConfig.field_names())
    values: Dict[str, Any] = {}
    for key, value in mapping.items():
        if key not in known:
            raise ConfigError(f"未知的配置项: {key}", key=key)
        values[key] = _coerce(key, value)

    config = replace(base or SystemConfig(), **values)
    ConfigValidator.validate_system_config(config)
    return config


def _coerce(key: str, value: Any) -> Any:
    try:
        if key == 'constellation':
            return value if isinstance(value, Constellation) else Constellation(str(value).lower())
        if key in FLOAT_GRID_FIELDS:
            return tuple(float(v) for v in value)
        if key in INT_GRID_FIELDS:
            return tuple(int(v) for v in value)
        if key == 'methods':
            return tuple(str(v).lower() for v in value)
        if key == 'adaptive_em':
            if not isinstance(value, bool):
                raise ConfigError("adaptive_em 必须是布尔值", key=key)
            return value
        # YAML 1.1 把不带符号指数的写法（如 2e9）解析为字符串
        if key in FLOAT_FIELDS and isinstance(value, str):
            return float(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"配置项 {key} 的取值无效: {value!r}", key=key, cause=e)
    return value


def dump_config(config: SystemConfig) -> str:
    """输出解析后的配置（YAML 文本，键顺序与字段定义一致）"""
    return yaml.safe_dump(config.to_dict(), sort_keys=False, allow_unicode=True)


class ConfigManager:
    """配置管理器，负责YAML配置文件的加载、解析和验证"""

    def __init__(self, config_path: str):
        """
        初始化配置管理器

        Args:
            config_path: 配置文件路径
        """
        self.config_path = config_path
        self.raw: Dict[str, Any] = {}
        self.config: Optional[SystemConfig] = None
        self.logger = get_logger('config_manager')

    def load_config(self) -> SystemConfig:
        """
        加载YAML配置文件

        Returns:
            SystemConfig: 验证后的配置

        Raises:
            ConfigError: 配置加载或验证失败
        """
        self.logger.info(f"开始加载配置文件: {self.config_path}")

        if not os.path.exists(self.config_path):
            self.logger.error(f"配置文件不存在: {self.config_path}")
            raise ConfigError(f"配置文件不存在: {self.config_path}",
                              error_code=ErrorCode.CONFIG_FILE_NOT_FOUND,
                              config_path=self.config_path)

        try:
            with open(self.config_path, 'r', encoding='utf-8') as file:
                raw = yaml.safe_load(file)
        except yaml.YAMLError as e:
            self.logger.error(f"YAML格式错误: {e}")
            raise ConfigError(f"YAML格式错误: {e}", error_code=ErrorCode.CONFIG_PARSE_ERROR,
                              config_path=self.config_path, cause=e)
        except PermissionError as e:
            raise ConfigError(f"没有权限读取配置文件: {self.config_path}",
                              config_path=self.config_path, cause=e)

        if raw is None:
            self.logger.error("配置文件为空")
            raise ConfigError("配置文件为空", error_code=ErrorCode.CONFIG_PARSE_ERROR,
                              config_path=self.config_path)

        ConfigValidator.validate_mapping(raw)
        system_values = {k: v for k, v in raw.items() if k not in LOGGING_KEYS}
        self.config = build_config(system_values)
        self.raw = raw

        self.logger.info(
            f"配置验证成功: K={self.config.n_users}, M={self.config.n_antennas}, "
            f"N_p={self.config.n_pilots}, N_d={self.config.n_data}")
        return self.config

    def get_logging_config(self) -> Dict[str, Any]:
        """配置文件中的日志相关键"""
        return {k: v for k, v in self.raw.items() if k in LOGGING_KEYS}

    def apply_overrides(self, config: Optional[SystemConfig] = None,
                        **overrides: Any) -> SystemConfig:
        """
        以命令行参数覆盖配置，值为 None 的项忽略

        Returns:
            SystemConfig: 新的配置对象，原对象不变
        """
        base = config or self.config or SystemConfig()
        changes = {k: v for k, v in overrides.items() if v is not None}
        if not changes:
            return base
        self.logger.debug(f"应用配置覆盖: {changes}")
        return build_config(changes, base=base)
