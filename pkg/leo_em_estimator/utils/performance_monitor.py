"""资源监控模块

为长时间的蒙特卡洛扫描记录进程的 CPU、内存和线程快照
"""

import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from datetime import datetime
from typing import Any, Dict, Iterator, List, Optional

import psutil

from .log_manager import get_logger


@dataclass(frozen=True)
class ResourceSnapshot:
    """进程资源快照"""
    timestamp: datetime
    cpu_percent: float
    memory_rss_mb: float
    memory_percent: float
    threads: int

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['timestamp'] = self.timestamp.isoformat()
        return data


class ResourceMonitor:
    """进程资源监控器

    不启动后台任务；扫描在开始和结束时主动采样。
    """

    def __init__(self, history_size: int = 100):
        """
        Args:
            history_size: 保留的快照数量
        """
        self.history_size = history_size
        self.history: List[ResourceSnapshot] = []
        self.logger = get_logger('resources')
        self.process = psutil.Process()
        # 第一次调用 cpu_percent 总是返回 0，先预热
        self.process.cpu_percent()

    def snapshot(self) -> ResourceSnapshot:
        """采集一次快照并保存到历史"""
        memory_info = self.process.memory_info()
        system_memory = psutil.virtual_memory()

        snap = ResourceSnapshot(
            timestamp=datetime.now(),
            cpu_percent=float(self.process.cpu_percent()),
            memory_rss_mb=memory_info.rss / 1024 / 1024,
            memory_percent=(memory_info.rss / system_memory.total) * 100,
            threads=self.process.num_threads(),
        )
        self.history.append(snap)
        if len(self.history) > self.history_size:
            self.history.pop(0)
        return snap

    def peak_memory_mb(self) -> Optional[float]:
        """历史快照中的最大 RSS（MB），尚无快照时为 None"""
        if not self.history:
            return None
        return max(snap.memory_rss_mb for snap in self.history)

    @contextmanager
    def track(self, label: str) -> Iterator[None]:
        """
        记录一段工作的耗时与前后资源快照

        Args:
            label: 日志中显示的任务名
        """
        before = self.snapshot()
        started = time.perf_counter()
        self.logger.info(f"{label} 开始: RSS {before.memory_rss_mb:.1f} MB, "
                         f"线程 {before.threads}")
        try:
            yield
        finally:
            elapsed = time.perf_counter() - started
            after = self.snapshot()
            self.logger.info(
                f"{label} 结束: 耗时 {elapsed:.2f}s, CPU {after.cpu_percent:.1f}%, "
                f"RSS {after.memory_rss_mb:.1f} MB (变化 "
                f"{after.memory_rss_mb - before.memory_rss_mb:+.1f} MB)")
