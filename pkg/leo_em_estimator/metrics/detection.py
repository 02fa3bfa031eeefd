"""均衡检测与 NMSE/SER/SNR 指标"""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np
from scipy.special import erfc

from ..frame.symbols import constellation_alphabet
from ..models.channel import ArrayResponseMatrix, EffectiveChannelMatrix
from ..models.estimation import ChannelEstimate
from ..models.frame import SymbolMatrix
from ..models.system_config import Constellation
from ..utils.exceptions import ConfigError, DimensionError, MetricError

# 高于该 SNR 视为无噪声
NOISELESS_SNR_DB = 300.0
SINGULAR_CHANNEL = 1e-12


@dataclass(frozen=True)
class DetectionResult:
    """均衡检测结果"""
    detected_indices: np.ndarray  # K×S_data
    ser: float
    singular_count: int = 0

    @property
    def flagged(self) -> bool:
        return self.singular_count > 0


def nmse(reference: EffectiveChannelMatrix, estimate: ChannelEstimate,
         pilot_count: int) -> float:
    """
    数据阶段的归一化均方误差

    Args:
        reference: 有效信道（含导频列，内部截取数据列）
        estimate: 数据阶段的信道估计
        pilot_count: 导频符号数

    Returns:
        ‖vec(H_ref) − vec(Ĥ)‖² / ‖vec(H_ref)‖²

    Raises:
        DimensionError: 尺寸不一致
        MetricError: 参考信道能量为零
    """
    ref = reference.data_columns(pilot_count)
    if ref.shape != estimate.h_hat.shape:
        raise DimensionError("参考信道与估计尺寸不一致",
                             expected=ref.shape, actual=estimate.h_hat.shape)
    ref_energy = float(np.sum(np.abs(ref) ** 2))
    if ref_energy == 0.0:
        raise MetricError("参考信道能量为零，NMSE 无定义")
    return float(np.sum(np.abs(ref - estimate.h_hat) ** 2) / ref_energy)


def slice_symbols(samples: np.ndarray, constellation: Constellation) -> np.ndarray:
    """最近邻判决，返回星座下标"""
    alphabet = constellation_alphabet(constellation)
    return np.argmin(np.abs(samples[..., None] - alphabet) ** 2, axis=-1)


def equalize_detect(data_observations: np.ndarray, estimate: ChannelEstimate,
                    constellation: Constellation,
                    true_indices: np.ndarray) -> DetectionResult:
    """
    单抽头迫零均衡 + 最近邻判决，并统计误符号率

    估计幅度低于 1e-12 的位置无法均衡，按错误符号计入并标记该次试验。

    Args:
        data_observations: 数据阶段解混观测，K×S_data
        estimate: 数据阶段信道估计
        constellation: 数据星座
        true_indices: 发送符号下标，K×S_data

    Returns:
        检测结果
    """
    h_hat = estimate.h_hat
    if data_observations.shape != h_hat.shape or true_indices.shape != h_hat.shape:
        raise DimensionError("观测、估计与发送符号尺寸不一致",
                             expected=h_hat.shape, actual=data_observations.shape)

    singular = np.abs(h_hat) < SINGULAR_CHANNEL
    safe_h = np.where(singular, 1.0, h_hat)
    detected = slice_symbols(data_observations / safe_h, constellation)
    errors = (detected != true_indices) | singular
    return DetectionResult(detected_indices=detected,
                           ser=float(np.mean(errors)) if errors.size else 0.0,
                           singular_count=int(np.count_nonzero(singular)))


def received_signal(effective: EffectiveChannelMatrix, symbols: SymbolMatrix,
                    array: ArrayResponseMatrix) -> np.ndarray:
    """无噪声天线域信号 (G ⊙ X)ᵀ·A，S×M"""
    if effective.g.shape != symbols.x.shape:
        raise DimensionError("有效信道与符号矩阵尺寸不一致",
                             expected=effective.g.shape, actual=symbols.x.shape)
    if array.n_users != effective.n_users:
        raise DimensionError("阵列响应的用户数与信道不一致",
                             expected=effective.n_users, actual=array.n_users)
    return (effective.g * symbols.x).T @ array.a


def sigma2_from_signal(signal: np.ndarray, snr_db: float) -> float:
    """按 SNR = 10log10(‖vec(signal)‖² / (S·M·σ²)) 反解 σ²"""
    if not np.isfinite(snr_db):
        raise ConfigError(f"SNR 必须是有限值，当前为 {snr_db}", key='snr_db')
    if snr_db > NOISELESS_SNR_DB:
        return 0.0
    energy = float(np.sum(np.abs(signal) ** 2))
    return energy / (signal.size * 10.0 ** (snr_db / 10.0))


def snr_to_sigma2(effective: EffectiveChannelMatrix, symbols: SymbolMatrix,
                  array: ArrayResponseMatrix, snr_db: float) -> float:
    """由目标 SNR 计算噪声方差 σ²"""
    return sigma2_from_signal(received_signal(effective, symbols, array), snr_db)


def measured_snr_db(signal: np.ndarray, noise: np.ndarray) -> float:
    """经验 SNR（信号能量与噪声能量之比）"""
    return float(10.0 * np.log10(np.sum(np.abs(signal) ** 2) / np.sum(np.abs(noise) ** 2)))


def awgn_qam_ser(es_n0: float, constellation: Constellation) -> float:
    """
    AWGN 信道下方形 QAM（含 QPSK）的理论误符号率

    Args:
        es_n0: 线性符号信噪比 Es/N0
        constellation: 星座

    Returns:
        理论 SER
    """
    order = constellation_alphabet(constellation).size
    q = 0.5 * erfc(np.sqrt(3.0 * es_n0 / (order - 1)) / np.sqrt(2.0))
    per_axis = 2.0 * (1.0 - 1.0 / np.sqrt(order)) * q
    return float(1.0 - (1.0 - per_axis) ** 2)


def summarize(values: Sequence[float]) -> Dict[str, float]:
    """
    试验维的统计：均值、中位数与正态近似 95% 置信半宽

    按输入顺序聚合，保证与并行度无关。
    """
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        return {'mean': float('nan'), 'median': float('nan'), 'ci': 0.0}
    ci = 1.96 * float(np.std(data, ddof=1)) / np.sqrt(data.size) if data.size > 1 else 0.0
    return {'mean': float(np.mean(data)), 'median': float(np.median(data)), 'ci': ci}


def snr_at_target_ser(snr_grid: Sequence[float], ser_curve: Sequence[float],
                      target: float = 0.1) -> Optional[float]:
    """
    在对数域线性插值，求 SER 曲线首次降到 target 时的 SNR

    Returns:
        对应 SNR（dB）；曲线未穿过目标值时返回 None
    """
    snr = np.asarray(snr_grid, dtype=float)
    ser = np.asarray(ser_curve, dtype=float)
    for i in range(1, snr.size):
        upper, lower = ser[i - 1], ser[i]
        if upper >= target >= lower and upper > lower:
            if lower <= 0.0:
                return float(snr[i])
            fraction = (np.log10(upper) - np.log10(target)) / (np.log10(upper) - np.log10(lower))
            return float(snr[i - 1] + fraction * (snr[i] - snr[i - 1]))
    return None


def relative_reduction(candidate: Sequence[float], baseline: Sequence[float]) -> list:
    """逐点相对降低比例 1 − candidate/baseline；基线为零时记为 0"""
    cand = np.asarray(candidate, dtype=float)
    base = np.asarray(baseline, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(base > 0, 1.0 - cand / base, 0.0)
    return [float(v) for v in ratio]
