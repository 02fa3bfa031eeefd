"""上行帧相关的数据模型"""

from dataclasses import dataclass

import numpy as np

from .channel import frozen_array
from .system_config import Constellation


@dataclass(frozen=True)
class SymbolMatrix:
    """发送符号矩阵 X，K×S；前 pilot_count 列为导频"""
    x: np.ndarray
    pilot_count: int
    constellation: Constellation
    data_indices: np.ndarray  # K×S_data，数据符号在星座表中的下标

    def __post_init__(self):
        object.__setattr__(self, 'x', frozen_array(self.x, complex))
        object.__setattr__(self, 'data_indices', frozen_array(self.data_indices, int))

    @property
    def pilots(self) -> np.ndarray:
        return self.x[:, :self.pilot_count]

    @property
    def data(self) -> np.ndarray:
        return self.x[:, self.pilot_count:]

    @property
    def n_data(self) -> int:
        return self.x.shape[1] - self.pilot_count


@dataclass(frozen=True)
class FrameObservation:
    """卫星侧观测

    y_raw 为 S×M 的天线域观测，y_demixed = y_raw·A† 为 S×K 的用户流。
    """
    y_raw: np.ndarray
    y_demixed: np.ndarray
    noise_variance: float
    snr_db: float
    pilot_count: int

    def __post_init__(self):
        object.__setattr__(self, 'y_raw', frozen_array(self.y_raw, complex))
        object.__setattr__(self, 'y_demixed', frozen_array(self.y_demixed, complex))

    @property
    def pilot_observations(self) -> np.ndarray:
        """导频阶段的解混观测，K×N_p"""
        return self.y_demixed[:self.pilot_count, :].T

    @property
    def data_observations(self) -> np.ndarray:
        """数据阶段的解混观测，K×S_data"""
        return self.y_demixed[self.pilot_count:, :].T
