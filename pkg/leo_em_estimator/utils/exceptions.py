"""自定义异常类和错误代码"""

import traceback
from datetime import datetime
from enum import Enum
from typing import Optional, Dict, Any


class ErrorCode(Enum):
    """错误代码枚举"""
    # 通用错误 (1000-1999)
    UNKNOWN_ERROR = 1000
    INITIALIZATION_ERROR = 1001
    VALIDATION_ERROR = 1002

    # 配置错误 (2000-2999)
    CONFIG_FILE_NOT_FOUND = 2000
    CONFIG_PARSE_ERROR = 2001
    CONFIG_VALIDATION_ERROR = 2002

    # 几何与维度错误 (3000-3999)
    DIMENSION_MISMATCH = 3000
    DEGENERATE_GEOMETRY = 3001

    # 数值错误 (4000-4999)
    NUMERICAL_FAILURE = 4000
    INVALID_PARAMETER = 4001
    INTERNAL_INVARIANT = 4002

    # 指标错误 (5000-5999)
    UNDEFINED_METRIC = 5000

    # 调度错误 (6000-6999)
    SCHEDULER_ERROR = 6000
    TRIAL_EXECUTION_ERROR = 6001

    # 结果读写错误 (7000-7999)
    RESULT_WRITE_ERROR = 7000
    RESULT_PARSE_ERROR = 7001


class SimulationError(Exception):
    """仿真系统基础异常类"""

    def __init__(
            self,
            message: str,
            error_code: ErrorCode = ErrorCode.UNKNOWN_ERROR,
            details: Optional[Dict[str, Any]] = None,
            cause: Optional[Exception] = None,
            recoverable: bool = True
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        self.cause = cause
        self.recoverable = recoverable
        self.timestamp = datetime.now()

    def to_dict(self) -> Dict[str, Any]:
        """将异常转换为字典格式"""
        return {
            'error_code': self.error_code.value,
            'error_name': self.error_code.name,
            'message': self.message,
            'details': self.details,
            'recoverable': self.recoverable,
            'timestamp': self.timestamp.isoformat(),
            'cause': str(self.cause) if self.cause else None,
            'traceback': traceback.format_exc() if self.cause else None
        }

    def format_error(self) -> str:
        """格式化错误信息"""
        error_msg = f"[{self.error_code.name}] {self.message}"
        if self.details:
            details_str = ", ".join([f"{k}={v}" for k, v in self.details.items()])
            error_msg += f" (详情: {details_str})"
        if self.cause:
            error_msg += f" (原因: {str(self.cause)})"
        return error_msg


class ConfigError(SimulationError):
    """配置相关异常"""

    def __init__(
            self,
            message: str,
            error_code: ErrorCode = ErrorCode.CONFIG_VALIDATION_ERROR,
            config_path: Optional[str] = None,
            key: Optional[str] = None,
            **kwargs
    ):
        details = kwargs.pop('details', {}) or {}
        if config_path:
            details['config_path'] = config_path
        if key:
            details['key'] = key
        kwargs.setdefault('recoverable', False)
        super().__init__(message, error_code, details, **kwargs)


class DimensionError(SimulationError):
    """矩阵或序列尺寸不匹配"""

    def __init__(self, message: str, expected: Any = None, actual: Any = None,
                 **kwargs):
        details = kwargs.pop('details', {}) or {}
        if expected is not None:
            details['expected'] = expected
        if actual is not None:
            details['actual'] = actual
        kwargs.setdefault('recoverable', False)
        super().__init__(message, ErrorCode.DIMENSION_MISMATCH, details, **kwargs)


class DegenerateGeometryError(SimulationError):
    """阵列响应矩阵秩亏或病态（用户方向过于接近）"""

    def __init__(self, message: str, condition_number: Optional[float] = None,
                 **kwargs):
        details = kwargs.pop('details', {}) or {}
        if condition_number is not None:
            details['condition_number'] = condition_number
        super().__init__(message, ErrorCode.DEGENERATE_GEOMETRY, details, **kwargs)


class NumericalError(SimulationError):
    """数值计算失败"""

    def __init__(self, message: str,
                 error_code: ErrorCode = ErrorCode.NUMERICAL_FAILURE, **kwargs):
        kwargs.setdefault('recoverable', False)
        super().__init__(message, error_code, kwargs.pop('details', None), **kwargs)


class ParameterError(SimulationError):
    """算法参数非法"""

    def __init__(self, message: str, parameter: Optional[str] = None, **kwargs):
        details = kwargs.pop('details', {}) or {}
        if parameter:
            details['parameter'] = parameter
        kwargs.setdefault('recoverable', False)
        super().__init__(message, ErrorCode.INVALID_PARAMETER, details, **kwargs)


class MetricError(SimulationError):
    """指标无定义（例如参考信道能量为零）"""

    def __init__(self, message: str, **kwargs):
        kwargs.setdefault('recoverable', False)
        super().__init__(message, ErrorCode.UNDEFINED_METRIC,
                         kwargs.pop('details', None), **kwargs)


class SchedulerError(SimulationError):
    """蒙特卡洛调度相关异常"""

    def __init__(
            self,
            message: str,
            error_code: ErrorCode = ErrorCode.SCHEDULER_ERROR,
            trial_seed: Optional[int] = None,
            **kwargs
    ):
        details = kwargs.pop('details', {}) or {}
        if trial_seed is not None:
            details['trial_seed'] = trial_seed
        super().__init__(message, error_code, details, **kwargs)


class ResultIOError(SimulationError):
    """结果文件读写异常"""

    def __init__(
            self,
            message: str,
            error_code: ErrorCode = ErrorCode.RESULT_WRITE_ERROR,
            path: Optional[str] = None,
            **kwargs
    ):
        details = kwargs.pop('details', {}) or {}
        if path:
            details['path'] = path
        kwargs.setdefault('recoverable', False)
        super().__init__(message, error_code, details, **kwargs)
