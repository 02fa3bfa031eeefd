"""信道估计器：P-LS、理想导频基线与 EM"""

from .base import BaseChannelEstimator, EstimationContext
from .factory import EstimatorFactory, estimator_factory, register_estimator
from .pilot import (GeniePilotEstimator, PilotLeastSquaresEstimator,
                    pb_genie_estimate, pls_initial_estimate)
from .em import (EMChannelEstimator, adaptive_em_iterations, em_estimate,
                 em_posterior, em_posteriors, hypotheses_for)

__all__ = [
    'BaseChannelEstimator', 'EstimationContext',
    'EstimatorFactory', 'estimator_factory', 'register_estimator',
    'GeniePilotEstimator', 'PilotLeastSquaresEstimator',
    'pb_genie_estimate', 'pls_initial_estimate',
    'EMChannelEstimator', 'adaptive_em_iterations', 'em_estimate',
    'em_posterior', 'em_posteriors', 'hypotheses_for',
]
