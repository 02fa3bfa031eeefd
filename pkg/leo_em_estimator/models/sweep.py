"""参数扫描结果的数据模型"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from .estimation import EstimationMethod


class SweepAxis(Enum):
    """扫描维度"""
    SNR = "snr"
    EM_ITER = "em_iter"
    BEM_ORDER = "bem_order"


@dataclass(frozen=True)
class MethodSummary:
    """某扫描点上一个方法的统计量"""
    mean_nmse: float
    mean_ser: float
    median_nmse: float
    median_ser: float
    ci_nmse: float
    ci_ser: float


@dataclass(frozen=True)
class SweepPoint:
    """一个扫描点"""
    axis_value: float
    trials: int
    methods: Dict[EstimationMethod, MethodSummary] = field(default_factory=dict)


@dataclass
class SweepResult:
    """扫描结果"""
    axis: SweepAxis
    points: List[SweepPoint] = field(default_factory=list)
    base_seed: int = 0
    fixed_snr_db: Optional[float] = None
    name: Optional[str] = None
    extras: Dict[str, Any] = field(default_factory=dict)  # 绘图附加数据

    @property
    def axis_values(self) -> List[float]:
        return [point.axis_value for point in self.points]

    def series(self, method: EstimationMethod, metric: str = 'mean_nmse') -> List[float]:
        """按网格顺序取出某方法某指标的曲线"""
        return [getattr(point.methods[method], metric)
                for point in self.points if method in point.methods]

    def argmin(self, method: EstimationMethod,
               metric: str = 'mean_nmse') -> Optional[float]:
        """返回使指标最小的扫描取值"""
        candidates = [(getattr(p.methods[method], metric), p.axis_value)
                      for p in self.points if method in p.methods]
        if not candidates:
            return None
        return min(candidates)[1]
