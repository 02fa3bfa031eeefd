"""时变莱斯信道采样、补偿矩阵与有效信道"""

from typing import Sequence, Union

import numpy as np

from ..models.channel import UserChannelState, CompensationMatrix, EffectiveChannelMatrix
from ..models.system_config import SystemConfig

ArrayLike = Union[float, np.ndarray]


def channel_samples(state: UserChannelState, times: ArrayLike, frequency: float) -> np.ndarray:
    """
    在一组时刻上计算单用户的标量信道（不含阵列方向因子 a_k）

    h(t,f) = √(β/(κ+1))·e^{j2πtν^SAT}·(h^LoS + h^NLoS)

    Args:
        state: 用户信道状态
        times: 采样时刻（秒），标量或数组
        frequency: 频率偏移（Hz）

    Returns:
        与 times 形状相同的复数数组
    """
    t = np.asarray(times, dtype=float)
    kappa = state.rician_kappa

    h_los = np.sqrt(kappa) * np.exp(
        2j * np.pi * (t * state.nu_ut_los - frequency * state.tau_los))

    # 路径维放在最后一维，便于对任意形状的 t 广播
    nlos_phase = 2j * np.pi * (t[..., None] * state.nu_ut_nlos
                               - frequency * state.tau_nlos)
    h_nlos = np.sqrt(1.0 / state.num_paths) * np.sum(
        state.path_gains * np.exp(nlos_phase), axis=-1)

    scale = np.sqrt(state.beta / (kappa + 1.0))
    return scale * np.exp(2j * np.pi * t * state.nu_sat) * (h_los + h_nlos)


def channel_sample(state: UserChannelState, t: float, f: float) -> complex:
    """单个时频点上的信道采样"""
    return complex(channel_samples(state, t, f))


def symbol_times(config: SystemConfig) -> np.ndarray:
    """第 s 个符号（s = 1..S）的采样时刻 s·T_sl"""
    return np.arange(1, config.n_symbols + 1) * config.symbol_duration_s


def compensation_matrix(states: Sequence[UserChannelState], config: SystemConfig,
                        subcarrier_offset: float) -> CompensationMatrix:
    """
    用户侧的卫星多普勒与LoS时延预补偿矩阵 Ω

    Ω[k][s] = exp{-j2π(s·T_sl·ν_k^SAT − (c/T_sl)·τ_k^LoS)}；
    循环前缀只计入一次（T_sl 已包含 T_cp）。
    """
    times = symbol_times(config)
    nu_sat = np.array([state.nu_sat for state in states])
    tau_los = np.array([state.tau_los for state in states])
    phase = (np.outer(nu_sat, times)
             - (subcarrier_offset / config.symbol_duration_s) * tau_los[:, None])
    return CompensationMatrix(np.exp(-2j * np.pi * phase))


def effective_channel(states: Sequence[UserChannelState], config: SystemConfig,
                      subcarrier_offset: float) -> EffectiveChannelMatrix:
    """
    补偿后的有效信道 G[k][s] = h_k(t_s, c·f_s)·Ω[k][s]

    卫星多普勒被完全抵消，用户移动引起的残余多普勒保留，
    即 NMSE 计算所用的参考信道。
    """
    times = symbol_times(config)
    frequency = subcarrier_offset * config.subcarrier_spacing_hz
    h = np.vstack([channel_samples(state, times, frequency) for state in states])
    omega = compensation_matrix(states, config, subcarrier_offset).omega
    return EffectiveChannelMatrix(h * omega, subcarrier_offset=subcarrier_offset)


def subcarrier_offset(index: int, n_subcarriers: int) -> float:
    """子载波编号 f ∈ {1..N_sc} 映射到中心对称的偏移 c = f − 0.5(N_sc+1)"""
    return index - 0.5 * (n_subcarriers + 1)
