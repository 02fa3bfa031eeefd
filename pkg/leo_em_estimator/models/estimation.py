"""估计结果与试验指标的数据模型"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channel import frozen_array
from ..utils.exceptions import NumericalError


class EstimationMethod(Enum):
    """信道估计方法；取值即命令行与结果文件中的名称"""
    PB = "pb"
    PLS = "pls"
    EM = "em"

    @classmethod
    def ordered(cls):
        return [cls.PB, cls.PLS, cls.EM]


@dataclass(frozen=True)
class ChannelEstimate:
    """数据阶段的信道估计，K×S_data"""
    h_hat: np.ndarray
    method: EstimationMethod
    iterations_used: int = 0

    def __post_init__(self):
        h_hat = frozen_array(self.h_hat, complex)
        if not np.all(np.isfinite(h_hat)):
            raise NumericalError(f"{self.method.value} 估计包含非有限值")
        object.__setattr__(self, 'h_hat', h_hat)


@dataclass(frozen=True)
class SymbolHypothesisSet:
    """EM 后验所用的隐藏符号假设集合"""
    alphabet: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'alphabet', frozen_array(self.alphabet, complex))

    @property
    def n_hypotheses(self) -> int:
        return int(self.alphabet.size)


@dataclass(frozen=True)
class TrialMetrics:
    """单次试验中某个估计方法的指标"""
    nmse: float
    ser: float
    snr_db: float
    method: EstimationMethod
    n_em: int
    d_order: int
    trial_seed: int = 0
    flagged: bool = False
