"""天线域观测合成与伪逆解混"""

from typing import Optional

import numpy as np

from ..metrics.detection import received_signal, sigma2_from_signal
from ..models.channel import ArrayResponseMatrix, EffectiveChannelMatrix
from ..models.frame import FrameObservation, SymbolMatrix
from ..utils.exceptions import DegenerateGeometryError, DimensionError
from ..utils.log_manager import get_logger

logger = get_logger('frame.observation')

# 最小奇异值与最大奇异值之比低于该值视为秩亏
RANK_TOLERANCE = 1e-10


def noise_enhancement(array: ArrayResponseMatrix) -> np.ndarray:
    """
    解混后各用户流的噪声放大倍数 diag[(AAᴴ)⁻¹]

    行范数为 1 时正交阵列对应全 1，用户方向越接近放大越大。

    Raises:
        DegenerateGeometryError: A 行秩亏
    """
    u, singular_values, _ = _checked_svd(array)
    return _enhancement(u, singular_values)


def _enhancement(u: np.ndarray, singular_values: np.ndarray) -> np.ndarray:
    return np.sum(np.abs(u) ** 2 / singular_values ** 2, axis=1)


def _checked_svd(array: ArrayResponseMatrix):
    if array.n_users == 0:
        raise DegenerateGeometryError("阵列响应矩阵为空", condition_number=float('inf'))
    if array.n_users > array.n_antennas:
        raise DegenerateGeometryError(
            f"用户数 {array.n_users} 超过阵元数 {array.n_antennas}，A 行秩亏",
            condition_number=float('inf'))
    u, singular_values, vh = np.linalg.svd(array.a, full_matrices=False)
    if singular_values[-1] <= RANK_TOLERANCE * singular_values[0]:
        condition = (float('inf') if singular_values[-1] == 0
                     else float(singular_values[0] / singular_values[-1]))
        raise DegenerateGeometryError("阵列响应矩阵行秩亏，无法解混用户流",
                                      condition_number=condition)
    return u, singular_values, vh


def pseudo_inverse(array: ArrayResponseMatrix,
                   max_noise_enhancement: Optional[float] = None) -> np.ndarray:
    """
    阵列响应矩阵的 Moore-Penrose 伪逆 A†（M×K）

    Args:
        array: 阵列响应
        max_noise_enhancement: 允许的最大噪声放大倍数，None 表示只检查秩

    Raises:
        DegenerateGeometryError: A 行秩亏，或噪声放大超过上限
    """
    u, singular_values, vh = _checked_svd(array)
    if max_noise_enhancement is not None:
        enhancement = float(np.max(_enhancement(u, singular_values)))
        if enhancement > max_noise_enhancement:
            raise DegenerateGeometryError(
                f"解混噪声放大 {enhancement:.2f} 超过上限 {max_noise_enhancement}",
                condition_number=float(singular_values[0] / singular_values[-1]),
                details={'noise_enhancement': enhancement})
    return (vh.conj().T / singular_values) @ u.conj().T


def demix(y_raw: np.ndarray, array: ArrayResponseMatrix,
          max_noise_enhancement: Optional[float] = None) -> np.ndarray:
    """解混：Ỹ = Y·A†，S×M → S×K"""
    if y_raw.shape[1] != array.n_antennas:
        raise DimensionError("观测的天线维与阵列响应不一致",
                             expected=array.n_antennas, actual=y_raw.shape[1])
    return y_raw @ pseudo_inverse(array, max_noise_enhancement)


def synthesize_observation(effective: EffectiveChannelMatrix, symbols: SymbolMatrix,
                           array: ArrayResponseMatrix, snr_db: float,
                           rng_seed: int,
                           max_noise_enhancement: Optional[float] = None) -> FrameObservation:
    """
    合成一帧卫星侧观测 Y = (G ⊙ X)ᵀ·A + Z，并解混得到 Ỹ

    噪声加在天线域，再经伪逆解混。标准正态样本的抽取与 SNR 无关，
    同一种子在不同 SNR 下只改变噪声幅度，便于配对比较。

    Args:
        effective: 有效信道（已包含补偿相位）
        symbols: 发送符号
        array: 阵列响应
        snr_db: 目标 SNR（dB），高于 300dB 视为无噪声
        rng_seed: 噪声随机种子
        max_noise_enhancement: 解混噪声放大上限，None 表示只检查秩

    Returns:
        帧观测

    Raises:
        ConfigError: SNR 非有限值
        DimensionError: 维度不一致
        DegenerateGeometryError: 阵列响应秩亏或病态
    """
    signal = received_signal(effective, symbols, array)
    sigma2 = sigma2_from_signal(signal, snr_db)

    rng = np.random.default_rng(rng_seed)
    unit_noise = (rng.standard_normal(signal.shape)
                  + 1j * rng.standard_normal(signal.shape)) / np.sqrt(2.0)
    y_raw = signal + np.sqrt(sigma2) * unit_noise

    logger.debug(f"合成观测: S={signal.shape[0]}, M={signal.shape[1]}, "
                 f"SNR={snr_db}dB, σ²={sigma2:.3e}")
    return FrameObservation(y_raw=y_raw,
                            y_demixed=demix(y_raw, array, max_noise_enhancement),
                            noise_variance=sigma2, snr_db=snr_db,
                            pilot_count=symbols.pilot_count)
