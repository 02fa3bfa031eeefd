"""配置验证工具"""

from typing import Any, Dict

from .exceptions import ConfigError
from .log_manager import get_logger
from ..models.estimation import EstimationMethod
from ..models.system_config import SystemConfig, Constellation

logger = get_logger('config_validator')

# 取值必须为正的参数
POSITIVE_FIELDS = (
    'carrier_hz', 'bandwidth_hz', 'subcarrier_spacing_hz', 'n_subcarriers',
    'n_users', 'array_mx', 'array_my', 'altitude_m', 'max_sat_doppler_hz',
    'min_elevation_deg', 'max_paths', 'n_pilots', 'n_data', 'n_cp',
    'rician_kappa', 'beta', 'n_em', 'bem_order', 'trials', 'workers',
)

# 允许为零：零值对应静止用户/无多径的静态极限场景
NON_NEGATIVE_FIELDS = ('max_user_doppler_hz', 'delay_spread_s', 'em_tolerance',
                       'sigma2_floor')

INTEGER_FIELDS = ('n_subcarriers', 'n_users', 'array_mx', 'array_my', 'max_paths',
                  'n_pilots', 'n_data', 'n_cp', 'n_em', 'bem_order', 'trials',
                  'workers', 'base_seed')

LOGGING_KEYS = ('log_level', 'log_file', 'max_log_size', 'log_backup_count')


class ConfigValidator:
    """配置验证器"""

    @staticmethod
    def validate_mapping(raw: Dict[str, Any]) -> None:
        """
        验证配置文件中的原始键值

        Args:
            raw: YAML 解析得到的扁平字典

        Raises:
            ConfigError: 存在未知键或类型错误
        """
        if not isinstance(raw, dict):
            raise ConfigError("配置文件根节点必须是字典类型")

        known = set(SystemConfig.field_names()) | set(LOGGING_KEYS)
        for key, value in raw.items():
            if key not in known:
                raise ConfigError(f"未知的配置项: {key}", key=key)
            if key in INTEGER_FIELDS and (isinstance(value, bool)
                                          or not isinstance(value, int)):
                raise ConfigError(f"{key} 必须是整数", key=key)
            if key.endswith('_grid') or key in ('methods', 'em_snr_list'):
                if not isinstance(value, (list, tuple)) or not value:
                    raise ConfigError(f"{key} 必须是非空列表", key=key)

    @staticmethod
    def validate_system_config(config: SystemConfig) -> None:
        """
        验证系统配置的取值范围

        Args:
            config: 系统配置

        Raises:
            ConfigError: 配置验证失败
        """
        for name in POSITIVE_FIELDS:
            value = getattr(config, name)
            if not isinstance(value, (int, float)) or not value > 0:
                raise ConfigError(f"{name} 必须为正数，当前为 {value}", key=name)

        for name in NON_NEGATIVE_FIELDS:
            value = getattr(config, name)
            if not isinstance(value, (int, float)) or value < 0:
                raise ConfigError(f"{name} 不能为负数，当前为 {value}", key=name)

        if not isinstance(config.constellation, Constellation):
            raise ConfigError(f"不支持的星座: {config.constellation}",
                              key='constellation')

        if not 0.0 < config.max_user_correlation <= 1.0:
            raise ConfigError(
                f"max_user_correlation 必须在 (0, 1] 内，当前为 {config.max_user_correlation}",
                key='max_user_correlation')
        if not config.max_noise_enhancement >= 1.0:
            raise ConfigError(
                f"max_noise_enhancement 不能小于 1，当前为 {config.max_noise_enhancement}",
                key='max_noise_enhancement')

        if config.n_data < 2:
            raise ConfigError(f"n_data 至少为 2，当前为 {config.n_data}", key='n_data')

        if config.bem_order > config.n_data:
            raise ConfigError(
                f"bem_order ({config.bem_order}) 不能超过数据符号数 ({config.n_data})",
                key='bem_order')

        for grid_name in ('snr_grid', 'iter_grid', 'd_grid', 'em_snr_list', 'methods'):
            if len(getattr(config, grid_name)) == 0:
                raise ConfigError(f"{grid_name} 不能为空", key=grid_name)

        if any(n < 1 for n in config.iter_grid):
            raise ConfigError("iter_grid 中的迭代次数必须 >= 1", key='iter_grid')
        if any(d < 1 or d > config.n_data for d in config.d_grid):
            raise ConfigError(f"d_grid 取值必须在 1..{config.n_data} 之间", key='d_grid')

        valid_methods = {method.value for method in EstimationMethod}
        unknown = [m for m in config.methods if m not in valid_methods]
        if unknown:
            raise ConfigError(f"未知的估计方法: {unknown}，支持: {sorted(valid_methods)}",
                              key='methods')

        if config.cp_duration_s <= config.delay_spread_s:
            logger.warning(
                f"循环前缀时长 {config.cp_duration_s * 1e9:.1f}ns 不大于时延扩展 "
                f"{config.delay_spread_s * 1e9:.1f}ns")
