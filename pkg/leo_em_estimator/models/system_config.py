"""系统配置数据模型"""

from dataclasses import dataclass, field, fields, asdict
from enum import Enum
from typing import Tuple, Dict, Any

from ..utils.exceptions import DimensionError

SPEED_OF_LIGHT = 299_792_458.0
EARTH_RADIUS_M = 6_371_000.0


class Constellation(Enum):
    """数据符号星座"""
    QAM16 = "16qam"
    QPSK = "qpsk"


@dataclass(frozen=True)
class ArrayGeometry:
    """卫星侧均匀平面阵列（UPA）"""
    m_x: int
    m_y: int

    def __post_init__(self):
        if self.m_x < 1 or self.m_y < 1:
            raise DimensionError("阵列每个维度至少需要一个阵元",
                                 expected=">= 1", actual=(self.m_x, self.m_y))

    @property
    def m(self) -> int:
        return self.m_x * self.m_y


@dataclass(frozen=True)
class SystemConfig:
    """链路级仿真配置

    前半部分对应3GPP NTN参考参数，后半部分为仿真控制参数。
    时间单位为秒，频率单位为赫兹。
    """
    carrier_hz: float = 2.0e9
    bandwidth_hz: float = 15.36e6
    subcarrier_spacing_hz: float = 60.0e3
    n_subcarriers: int = 256
    n_users: int = 10
    array_mx: int = 16
    array_my: int = 16
    altitude_m: float = 600.0e3
    max_sat_doppler_hz: float = 48.0e3
    min_elevation_deg: float = 10.0
    delay_spread_s: float = 250.0e-9
    max_user_doppler_hz: float = 200.0
    max_paths: int = 5
    max_user_correlation: float = 0.5
    max_noise_enhancement: float = 10.0
    n_pilots: int = 5
    n_data: int = 50
    constellation: Constellation = Constellation.QAM16
    n_cp: int = 16
    rician_kappa: float = 10.0
    beta: float = 1.0
    n_em: int = 10
    bem_order: int = 3
    adaptive_em: bool = False
    em_tolerance: float = 0.0
    sigma2_floor: float = 1e-12
    subcarrier_offset: float = 0.0
    snr_db: float = 10.0
    trials: int = 500
    base_seed: int = 2025
    workers: int = 1
    snr_grid: Tuple[float, ...] = (-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0)
    iter_grid: Tuple[int, ...] = tuple(range(1, 11))
    d_grid: Tuple[int, ...] = (3, 4, 5, 10, 20, 30, 40, 50)
    em_snr_list: Tuple[float, ...] = (0.0, 10.0)
    methods: Tuple[str, ...] = ('pb', 'pls', 'em')

    @property
    def n_symbols(self) -> int:
        """一帧内的OFDM符号数 S"""
        return self.n_pilots + self.n_data

    @property
    def sampling_period_s(self) -> float:
        """T_s = 1/(2B)"""
        return 1.0 / (2.0 * self.bandwidth_hz)

    @property
    def cp_duration_s(self) -> float:
        return self.n_cp * self.sampling_period_s

    @property
    def symbol_duration_s(self) -> float:
        """T_sl = N_sc·T_s + T_cp，同时作为补偿矩阵的逐符号时间步长"""
        return self.n_subcarriers * self.sampling_period_s + self.cp_duration_s

    @property
    def array(self) -> ArrayGeometry:
        return ArrayGeometry(self.array_mx, self.array_my)

    @property
    def n_antennas(self) -> int:
        return self.array_mx * self.array_my

    @classmethod
    def field_names(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def to_dict(self) -> Dict[str, Any]:
        """转换为可序列化字典（枚举转为取值，元组转为列表）"""
        data = asdict(self)
        data['constellation'] = self.constellation.value
        for key, value in data.items():
            if isinstance(value, tuple):
                data[key] = list(value)
        return data
