"""信道估计器工厂"""

from typing import Dict, Type, Union

from .base import BaseChannelEstimator
from ..models.estimation import EstimationMethod
from ..models.system_config import SystemConfig
from ..utils.exceptions import ConfigError


class EstimatorFactory:
    """估计器工厂类，按方法名创建估计器实例"""

    def __init__(self):
        self._estimators: Dict[EstimationMethod, Type[BaseChannelEstimator]] = {}

    def register_estimator(self, method: EstimationMethod,
                           estimator_class: Type[BaseChannelEstimator]):
        """
        注册估计器类

        Raises:
            ConfigError: 类型不合法或重复注册
        """
        if not issubclass(estimator_class, BaseChannelEstimator):
            raise ConfigError(
                f"估计器类 {estimator_class.__name__} 必须继承自 BaseChannelEstimator")
        if method in self._estimators:
            raise ConfigError(f"估计方法 '{method.value}' 已经注册了估计器")
        self._estimators[method] = estimator_class

    def create_estimator(self, method: Union[EstimationMethod, str],
                         config: SystemConfig) -> BaseChannelEstimator:
        """
        创建估计器实例

        Args:
            method: 估计方法或其名称（pb/pls/em）
            config: 系统配置

        Raises:
            ConfigError: 方法未注册或配置不满足前提
        """
        method = self.resolve(method)
        if method not in self._estimators:
            raise ConfigError(f"不支持的估计方法: '{method.value}'", key='methods')

        estimator = self._estimators[method](config)
        if not estimator.validate_config():
            raise ConfigError(f"估计方法 '{method.value}' 的配置验证失败", key='methods')
        return estimator

    @staticmethod
    def resolve(method: Union[EstimationMethod, str]) -> EstimationMethod:
        if isinstance(method, EstimationMethod):
            return method
        try:
            return EstimationMethod(str(method).lower())
        except ValueError:
            raise ConfigError(f"不支持的估计方法: '{method}'", key='methods')


# 全局工厂实例
estimator_factory = EstimatorFactory()


def register_estimator(method: EstimationMethod):
    """
    装饰器：注册估计器类

    Args:
        method: 估计方法
    """

    def decorator(estimator_class: Type[BaseChannelEstimator]):
        estimator_class.method = method
        estimator_factory.register_estimator(method, estimator_class)
        return estimator_class

    return decorator
