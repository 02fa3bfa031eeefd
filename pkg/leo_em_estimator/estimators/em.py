"""EM 联合检测-估计

E 步对每个 (用户, 数据符号) 计算隐藏符号的后验，M 步给出逐符号的
最小二乘更新，再投影到 DLP-BEM 子空间上。
"""

import numpy as np
from scipy.special import softmax

from .base import BaseChannelEstimator, EstimationContext
from .factory import register_estimator
from .pilot import pls_initial_estimate
from ..bem.dlp import BasisMatrix, build_basis, project
from ..frame.symbols import constellation_alphabet
from ..models.estimation import ChannelEstimate, EstimationMethod, SymbolHypothesisSet
from ..models.frame import FrameObservation
from ..models.system_config import Constellation
from ..utils.exceptions import DimensionError, ErrorCode, NumericalError, ParameterError
from ..utils.log_manager import get_logger

logger = get_logger('estimator.em')


def hypotheses_for(constellation: Constellation) -> SymbolHypothesisSet:
    """以星座表构造假设集合"""
    return SymbolHypothesisSet(constellation_alphabet(constellation))


def em_posteriors(y: np.ndarray, h_hat: np.ndarray, sigma2: float,
                  hypotheses: SymbolHypothesisSet) -> np.ndarray:
    """
    批量计算符号后验

    Args:
        y: 观测，任意形状
        h_hat: 当前信道估计，与 y 同形状
        sigma2: 噪声方差，必须为正
        hypotheses: 假设集合

    Returns:
        形状为 y.shape + (N,) 的后验，最后一维和为 1
    """
    if not sigma2 > 0:
        raise ParameterError(f"噪声方差必须为正: {sigma2}", parameter='sigma2')
    y = np.asarray(y, dtype=complex)
    h_hat = np.asarray(h_hat, dtype=complex)
    if y.shape != h_hat.shape:
        raise DimensionError("观测与信道估计尺寸不一致", expected=y.shape, actual=h_hat.shape)

    alphabet = hypotheses.alphabet
    distance = np.abs(y[..., None] - h_hat[..., None] * alphabet) ** 2
    # softmax 内部先减去最大值，大 SNR 时不会下溢为全零
    gamma = softmax(-distance / sigma2, axis=-1)
    if not np.all(np.isfinite(gamma)):
        raise NumericalError("符号后验包含非有限值")
    return gamma


def em_posterior(y: complex, h_hat: complex, sigma2: float,
                 hypotheses: SymbolHypothesisSet) -> np.ndarray:
    """单个观测的符号后验，长度 N"""
    return em_posteriors(np.asarray(y), np.asarray(h_hat), sigma2, hypotheses)


def _m_step(y: np.ndarray, gamma: np.ndarray, alphabet: np.ndarray) -> np.ndarray:
    numerator = np.sum(gamma * (y[..., None] * np.conj(alphabet)), axis=-1)
    denominator = np.sum(gamma * np.abs(alphabet) ** 2, axis=-1)
    if np.any(denominator <= 0):
        raise NumericalError("M 步分母非正，后验或星座表异常",
                             error_code=ErrorCode.INTERNAL_INVARIANT)
    return numerator / denominator


def em_estimate(obs: FrameObservation, init: ChannelEstimate, basis: BasisMatrix,
                hypotheses: SymbolHypothesisSet, n_iterations: int,
                tolerance: float = 0.0, sigma2_floor: float = 1e-12,
                regularize: bool = True) -> ChannelEstimate:
    """
    EM 迭代估计数据阶段的信道

    Args:
        obs: 帧观测，只使用数据阶段
        init: 初始估计（通常为 P-LS），K×S_data
        basis: 长度为 S_data 的 DLP 基
        hypotheses: 隐藏符号假设集合
        n_iterations: 最大迭代次数
        tolerance: 相对变化低于该值时提前停止，0 表示关闭
        sigma2_floor: 无噪声观测时后验使用的方差下限
        regularize: 是否做 BEM 投影

    Returns:
        ChannelEstimate: iterations_used 为实际迭代次数
    """
    if n_iterations < 1:
        raise ParameterError(f"EM 迭代次数必须 >= 1: {n_iterations}", parameter='n_em')
    y = obs.data_observations
    if init.h_hat.shape != y.shape:
        raise DimensionError("初始估计与数据观测尺寸不一致",
                             expected=y.shape, actual=init.h_hat.shape)
    if regularize and basis.length != y.shape[1]:
        raise DimensionError("BEM 基长度与数据符号数不一致",
                             expected=y.shape[1], actual=basis.length)

    sigma2 = max(float(obs.noise_variance), float(sigma2_floor))
    alphabet = hypotheses.alphabet
    h_hat = np.array(init.h_hat)
    iterations = 0

    for iterations in range(1, n_iterations + 1):
        gamma = em_posteriors(y, h_hat, sigma2, hypotheses)
        raw = _m_step(y, gamma, alphabet)
        updated = project(basis, raw) if regularize else raw
        if not np.all(np.isfinite(updated)):
            raise NumericalError(f"EM 第 {iterations} 次迭代产生非有限值")

        scale = np.linalg.norm(h_hat)
        change = np.linalg.norm(updated - h_hat) / scale if scale > 0 else np.inf
        h_hat = updated
        if tolerance > 0 and change < tolerance:
            logger.debug(f"EM 在第 {iterations} 次迭代收敛，相对变化 {change:.3e}")
            break

    return ChannelEstimate(h_hat, EstimationMethod.EM, iterations_used=iterations)


def adaptive_em_iterations(snr_db: float, n_max: int,
                           low_snr_db: float = 0.0, high_snr_db: float = 10.0) -> int:
    """
    按 SNR 选择迭代次数

    低 SNR 时 EM 会被噪声带偏，只做一次；高 SNR 时用满 n_max；
    中间线性插值。
    """
    if n_max < 1:
        raise ParameterError(f"EM 迭代上限必须 >= 1: {n_max}", parameter='n_em')
    if high_snr_db <= low_snr_db:
        raise ParameterError("high_snr_db 必须大于 low_snr_db", parameter='high_snr_db')
    if snr_db <= low_snr_db:
        return 1
    if snr_db >= high_snr_db:
        return n_max
    fraction = (snr_db - low_snr_db) / (high_snr_db - low_snr_db)
    return max(1, int(round(1 + fraction * (n_max - 1))))


@register_estimator(EstimationMethod.EM)
class EMChannelEstimator(BaseChannelEstimator):
    """以 P-LS 初始化的 EM 估计器"""

    def estimate(self, context: EstimationContext) -> ChannelEstimate:
        init = context.initial_estimate or pls_initial_estimate(context.observation,
                                                                context.symbols)
        n_iterations = context.n_em
        if self.config.adaptive_em:
            n_iterations = adaptive_em_iterations(context.observation.snr_db, context.n_em)
        basis = context.basis
        if basis is None:
            basis = build_basis(context.symbols.n_data, self.config.bem_order)
        return em_estimate(context.observation, init, basis, context.hypotheses,
                           n_iterations, tolerance=self.config.em_tolerance,
                           sigma2_floor=self.config.sigma2_floor)
