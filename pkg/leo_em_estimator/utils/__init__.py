"""工具模块

config_validator 依赖 models，需要时显式导入，避免循环引用。
"""

from .exceptions import (ErrorCode, SimulationError, ConfigError, DimensionError,
                         DegenerateGeometryError, NumericalError, ParameterError,
                         MetricError, SchedulerError, ResultIOError)
from .log_manager import LogManager, LogLevel, get_logger, configure_logging, log_manager
from .error_handler import ErrorHandler, global_error_handler, retry_with_reseed
from .performance_monitor import ResourceMonitor, ResourceSnapshot

__all__ = [
    'ErrorCode', 'SimulationError', 'ConfigError', 'DimensionError',
    'DegenerateGeometryError', 'NumericalError', 'ParameterError',
    'MetricError', 'SchedulerError', 'ResultIOError',
    'LogManager', 'LogLevel', 'get_logger', 'configure_logging', 'log_manager',
    'ErrorHandler', 'global_error_handler', 'retry_with_reseed',
    'ResourceMonitor', 'ResourceSnapshot',
]
