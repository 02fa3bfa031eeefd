"""数据模型模块"""

from .channel import (UserGeometry, UserChannelState, ArrayResponseMatrix,
                      CompensationMatrix, EffectiveChannelMatrix)
from .estimation import (EstimationMethod, ChannelEstimate, SymbolHypothesisSet,
                         TrialMetrics)
from .frame import SymbolMatrix, FrameObservation
from .sweep import SweepAxis, MethodSummary, SweepPoint, SweepResult
from .system_config import Constellation, ArrayGeometry, SystemConfig

__all__ = ['Constellation', 'ArrayGeometry', 'SystemConfig', 'UserGeometry',
           'UserChannelState', 'ArrayResponseMatrix', 'CompensationMatrix',
           'EffectiveChannelMatrix', 'SymbolMatrix', 'FrameObservation',
           'EstimationMethod', 'ChannelEstimate', 'SymbolHypothesisSet',
           'TrialMetrics', 'SweepAxis', 'MethodSummary', 'SweepPoint', 'SweepResult']
