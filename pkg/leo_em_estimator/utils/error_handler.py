"""错误处理器和换种子重试机制"""

import threading
from functools import wraps
from typing import Any, Callable, Dict, Optional, Tuple, Type, TypeVar

from .exceptions import (DegenerateGeometryError, ErrorCode, SchedulerError,
                         SimulationError)
from .log_manager import get_logger

T = TypeVar('T')
logger = get_logger('error_handler')

# 重试时种子的偏移步长，取大素数以避开相邻试验的种子
RESEED_STRIDE = 1_000_003


class ErrorHandler:
    """统一错误处理器，按类型统计错误"""

    def __init__(self):
        self.error_stats: Dict[str, int] = {}
        self._lock = threading.Lock()

    def handle_error(self, error: Exception,
                     context: Optional[Dict[str, Any]] = None) -> None:
        """记录错误并计数"""
        context = context or {}

        error_type = type(error).__name__
        with self._lock:
            self.error_stats[error_type] = self.error_stats.get(error_type, 0) + 1

        if isinstance(error, SimulationError):
            log = logger.warning if error.recoverable else logger.error
            log(f"处理仿真错误: {error.format_error()}",
                extra={'error_details': error.to_dict(), 'context': context})
        else:
            logger.error(f"处理未知错误: {error}", exc_info=True)

    def get_error_stats(self) -> Dict[str, int]:
        """获取错误统计信息"""
        with self._lock:
            return self.error_stats.copy()

    def reset_error_stats(self):
        with self._lock:
            self.error_stats.clear()


def perturbed_seed(seed: int, attempt: int) -> int:
    """第 attempt 次重试使用的种子；attempt=0 为原种子"""
    return int(seed) + attempt * RESEED_STRIDE


def retry_with_reseed(max_retries: int = 3,
                      retryable_errors: Tuple[Type[Exception], ...] = (DegenerateGeometryError,),
                      error_handler: Optional[ErrorHandler] = None):
    """
    试验函数的换种子重试装饰器

    被装饰函数必须接受关键字参数 trial_seed。可重试错误出现时以偏移后的
    种子重新调用；重试耗尽后抛出不可恢复的 SchedulerError。

    Args:
        max_retries: 最大重试次数（不含首次调用）
        retryable_errors: 可重试的异常类型
        error_handler: 可选，用于统计每次失败
    """

    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        @wraps(func)
        def wrapper(*args, trial_seed: int, **kwargs) -> T:
            last_error: Optional[Exception] = None
            for attempt in range(max_retries + 1):
                seed = perturbed_seed(trial_seed, attempt)
                try:
                    return func(*args, trial_seed=seed, **kwargs)
                except retryable_errors as error:
                    last_error = error
                    if error_handler is not None:
                        error_handler.handle_error(error, {'trial_seed': seed})
                    if attempt < max_retries:
                        logger.warning(
                            f"试验 {trial_seed} 失败 (尝试 {attempt + 1}/{max_retries + 1}): "
                            f"{error}，换种子 {perturbed_seed(trial_seed, attempt + 1)} 重试")

            raise SchedulerError(
                f"试验 {trial_seed} 重试 {max_retries} 次后仍失败",
                error_code=ErrorCode.TRIAL_EXECUTION_ERROR,
                trial_seed=trial_seed,
                cause=last_error,
                recoverable=False,
            )

        return wrapper

    return decorator


# 全局错误处理器实例
global_error_handler = ErrorHandler()
