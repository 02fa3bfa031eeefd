"""信道估计器基类"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

from ..bem.dlp import BasisMatrix
from ..models.channel import EffectiveChannelMatrix
from ..models.estimation import (ChannelEstimate, EstimationMethod,
                                 SymbolHypothesisSet)
from ..models.frame import FrameObservation, SymbolMatrix
from ..models.system_config import SystemConfig
from ..utils.log_manager import get_logger


@dataclass(frozen=True)
class EstimationContext:
    """一次试验中提供给各估计器的输入

    同一试验的所有方法共享同一个上下文，保证配对比较。
    effective 为真实信道，只有理想导频（PB）基线可以使用。
    basis 只有 EM 需要，未选择 EM 时可以为 None。
    """
    observation: FrameObservation
    symbols: SymbolMatrix
    effective: EffectiveChannelMatrix
    basis: Optional[BasisMatrix]
    hypotheses: SymbolHypothesisSet
    n_em: int
    initial_estimate: Optional[ChannelEstimate] = None


class BaseChannelEstimator(ABC):
    """信道估计器抽象基类"""

    method: EstimationMethod

    def __init__(self, config: SystemConfig):
        """
        Args:
            config: 系统配置
        """
        self.config = config
        self.logger = get_logger(f'estimator.{self.method.value}')

    @abstractmethod
    def estimate(self, context: EstimationContext) -> ChannelEstimate:
        """
        估计数据阶段的有效信道

        Returns:
            ChannelEstimate: K×S_data 估计
        """

    def validate_config(self) -> bool:
        """检查配置是否满足该估计器的前提条件"""
        return self.config.n_pilots >= 1 and self.config.n_data >= 1
