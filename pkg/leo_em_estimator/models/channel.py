"""信道相关的数据模型"""

from dataclasses import dataclass

import numpy as np


def frozen_array(values, dtype=None) -> np.ndarray:
    """复制为只读数组，保证模型对象在并行试验间可安全共享"""
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class UserGeometry:
    """单个用户相对卫星的几何关系"""
    theta_x: float  # 弧度
    theta_y: float  # 弧度
    distance: float  # 米，星地斜距
    elevation: float  # 度


@dataclass(frozen=True)
class UserChannelState:
    """单个用户在一帧内的信道参数"""
    geometry: UserGeometry
    rician_kappa: float
    num_paths: int
    path_gains: np.ndarray  # 复数，长度 P_k
    tau_los: float  # 秒
    tau_mp: np.ndarray  # 秒，长度 P_k
    nu_sat: float  # Hz
    nu_ut_los: float  # Hz
    nu_ut_nlos: np.ndarray  # Hz，长度 P_k
    beta: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'path_gains', frozen_array(self.path_gains, complex))
        object.__setattr__(self, 'tau_mp', frozen_array(self.tau_mp, float))
        object.__setattr__(self, 'nu_ut_nlos', frozen_array(self.nu_ut_nlos, float))

    @property
    def tau_nlos(self) -> np.ndarray:
        """各NLoS路径的总时延 τ^LoS + τ^MP"""
        return self.tau_los + self.tau_mp

    @property
    def delay_spread(self) -> float:
        delays = np.concatenate(([self.tau_los], self.tau_nlos))
        return float(delays.max() - delays.min())


@dataclass(frozen=True)
class ArrayResponseMatrix:
    """阵列响应矩阵 A，K×M，每行为一个用户的导向矢量"""
    a: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'a', frozen_array(self.a, complex))

    @property
    def n_users(self) -> int:
        return self.a.shape[0]

    @property
    def n_antennas(self) -> int:
        return self.a.shape[1]


@dataclass(frozen=True)
class CompensationMatrix:
    """多普勒与时延补偿矩阵 Ω，K×S，纯相位"""
    omega: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'omega', frozen_array(self.omega, complex))


@dataclass(frozen=True)
class EffectiveChannelMatrix:
    """补偿后的有效信道 G = H ⊙ Ω，即估计目标（参考信道）"""
    g: np.ndarray
    subcarrier_offset: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'g', frozen_array(self.g, complex))

    @property
    def n_users(self) -> int:
        return self.g.shape[0]

    @property
    def n_symbols(self) -> int:
        return self.g.shape[1]

    def data_columns(self, pilot_count: int) -> np.ndarray:
        """数据阶段的参考信道（去掉导频列）"""
        return self.g[:, pilot_count:]
