"""基于导频的估计器：P-LS 初始估计与理想导频（PB）基线"""

import numpy as np

from .base import BaseChannelEstimator, EstimationContext
from .factory import register_estimator
from ..models.channel import EffectiveChannelMatrix
from ..models.estimation import ChannelEstimate, EstimationMethod
from ..models.frame import FrameObservation, SymbolMatrix
from ..utils.exceptions import DimensionError, NumericalError


def pls_initial_estimate(obs: FrameObservation, symbols: SymbolMatrix) -> ChannelEstimate:
    """
    导频最小二乘估计

    对每个用户取 N_p 个导频位置 ỹ/x 的平均，再常数外推到全部数据符号。

    Raises:
        DimensionError: 没有导频或尺寸不一致
        NumericalError: 导频符号为零
    """
    if symbols.pilot_count < 1:
        raise DimensionError("P-LS 至少需要一个导频符号", expected=">= 1", actual=0)
    pilots = symbols.pilots
    observed = obs.pilot_observations
    if observed.shape != pilots.shape:
        raise DimensionError("导频观测与导频符号尺寸不一致",
                             expected=pilots.shape, actual=observed.shape)
    if np.any(pilots == 0):
        raise NumericalError("导频符号为零，无法做最小二乘除法")

    h_avg = np.mean(observed / pilots, axis=1)
    return ChannelEstimate(np.repeat(h_avg[:, None], symbols.n_data, axis=1),
                           EstimationMethod.PLS)


def pb_genie_estimate(effective: EffectiveChannelMatrix, pilot_count: int) -> ChannelEstimate:
    """理想导频估计：真实信道在导频阶段的平均，常数外推到数据阶段"""
    h_avg = np.mean(effective.g[:, :pilot_count], axis=1)
    n_data = effective.n_symbols - pilot_count
    return ChannelEstimate(np.repeat(h_avg[:, None], n_data, axis=1), EstimationMethod.PB)


@register_estimator(EstimationMethod.PLS)
class PilotLeastSquaresEstimator(BaseChannelEstimator):
    """P-LS 估计器"""

    def estimate(self, context: EstimationContext) -> ChannelEstimate:
        return pls_initial_estimate(context.observation, context.symbols)


@register_estimator(EstimationMethod.PB)
class GeniePilotEstimator(BaseChannelEstimator):
    """PB 基线（已知导频阶段的真实信道）"""

    def estimate(self, context: EstimationContext) -> ChannelEstimate:
        return pb_genie_estimate(context.effective, context.symbols.pilot_count)
