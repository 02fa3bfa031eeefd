"""蒙特卡洛试验：单帧仿真、各方法打分与并发调度

每次试验由一个整数种子完全确定。种子经 SeedSequence 派生出几何、
符号与噪声三个独立的随机流，结果与线程数和调度顺序无关。
"""

import asyncio
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from ..bem.dlp import build_basis
from ..channel.fading import effective_channel
from ..channel.geometry import sample_user_states, upa_response
from ..estimators import EstimationContext, estimator_factory, hypotheses_for
from ..estimators.pilot import pls_initial_estimate
from ..frame.observation import synthesize_observation
from ..frame.symbols import build_symbol_matrix
from ..metrics.detection import equalize_detect, nmse, summarize
from ..models.channel import ArrayResponseMatrix, EffectiveChannelMatrix, UserChannelState
from ..models.estimation import EstimationMethod, TrialMetrics
from ..models.frame import FrameObservation, SymbolMatrix
from ..models.sweep import MethodSummary
from ..models.system_config import SystemConfig
from ..utils.error_handler import global_error_handler, retry_with_reseed
from ..utils.exceptions import ErrorCode, SchedulerError, SimulationError
from ..utils.log_manager import get_logger

T = TypeVar('T')
logger = get_logger('monte_carlo')

# (n_em, bem_order) 组合
Variant = Tuple[int, int]


@dataclass(frozen=True)
class TrialSeeds:
    """一次试验的三个随机流种子"""
    geometry: int
    symbols: int
    noise: int


def derive_seeds(trial_seed: int) -> TrialSeeds:
    """由试验种子派生相互独立的子种子"""
    children = np.random.SeedSequence(int(trial_seed)).spawn(3)
    geometry, symbols, noise = (int(child.generate_state(1)[0]) for child in children)
    return TrialSeeds(geometry=geometry, symbols=symbols, noise=noise)


@dataclass(frozen=True)
class SimulatedFrame:
    """一帧仿真的全部中间量"""
    states: Tuple[UserChannelState, ...]
    array: ArrayResponseMatrix
    effective: EffectiveChannelMatrix
    symbols: SymbolMatrix
    observation: FrameObservation


def simulate_frame(config: SystemConfig, trial_seed: int,
                   snr_db: Optional[float] = None) -> SimulatedFrame:
    """
    仿真一帧：抽样几何、生成有效信道与符号、合成并解混观测

    Raises:
        DegenerateGeometryError: 用户方向过于接近，A 秩亏或解混噪声放大超限
    """
    seeds = derive_seeds(trial_seed)
    snr = config.snr_db if snr_db is None else snr_db

    states = sample_user_states(config, seeds.geometry)
    array = upa_response(config.array, [state.geometry for state in states])
    effective = effective_channel(states, config, config.subcarrier_offset)
    symbols = build_symbol_matrix(config, seeds.symbols, n_symbols=effective.n_symbols)
    observation = synthesize_observation(effective, symbols, array, snr, seeds.noise,
                                         config.max_noise_enhancement)
    return SimulatedFrame(states=tuple(states), array=array, effective=effective,
                          symbols=symbols, observation=observation)


def score_frame(frame: SimulatedFrame, config: SystemConfig,
                methods: Sequence[EstimationMethod], n_em: int, bem_order: int,
                trial_seed: int = 0) -> List[TrialMetrics]:
    """
    在同一帧上运行各估计方法，计算 NMSE 与 SER

    所有方法共享同一观测与同一 P-LS 初始估计。DLP 基只在选择 EM 时构造。
    """
    obs, symbols = frame.observation, frame.symbols
    basis = (build_basis(symbols.n_data, bem_order)
             if EstimationMethod.EM in methods else None)
    context = EstimationContext(
        observation=obs,
        symbols=symbols,
        effective=frame.effective,
        basis=basis,
        hypotheses=hypotheses_for(config.constellation),
        n_em=n_em,
        initial_estimate=pls_initial_estimate(obs, symbols),
    )

    results = []
    for method in methods:
        estimate = estimator_factory.create_estimator(method, config).estimate(context)
        detection = equalize_detect(obs.data_observations, estimate,
                                    config.constellation, symbols.data_indices)
        if detection.flagged:
            logger.warning(f"试验 {trial_seed} 的 {method.value} 估计有 "
                           f"{detection.singular_count} 个奇异位置，按误符号计入")
        results.append(TrialMetrics(
            nmse=nmse(frame.effective, estimate, symbols.pilot_count),
            ser=detection.ser,
            snr_db=obs.snr_db,
            method=method,
            n_em=estimate.iterations_used if method is EstimationMethod.EM else n_em,
            d_order=bem_order,
            trial_seed=trial_seed,
            flagged=detection.flagged,
        ))
    return results


def resolve_methods(methods: Optional[Sequence] = None,
                    config: Optional[SystemConfig] = None) -> List[EstimationMethod]:
    """方法名列表转为按 PB、PLS、EM 排序的枚举列表"""
    names = methods if methods is not None else (config.methods if config else ())
    chosen = {estimator_factory.resolve(name) for name in names}
    return [method for method in EstimationMethod.ordered() if method in chosen]


@retry_with_reseed(max_retries=3, error_handler=global_error_handler)
def run_trial_variants(config: SystemConfig, *, trial_seed: int,
                       snr_db: Optional[float] = None,
                       variants: Sequence[Variant] = (),
                       methods: Optional[Sequence] = None) -> List[List[TrialMetrics]]:
    """
    仿真一帧并对多组 (n_em, bem_order) 打分

    迭代次数与 BEM 阶数的扫描复用同一帧。几何退化时换种子重试。
    """
    frame = simulate_frame(config, trial_seed, snr_db)
    chosen = resolve_methods(methods, config)
    variants = list(variants) or [(config.n_em, config.bem_order)]
    return [score_frame(frame, config, chosen, n_em, d, trial_seed) for n_em, d in variants]


def run_trial(config: SystemConfig, trial_seed: int, snr_db: Optional[float] = None,
              methods: Optional[Sequence] = None) -> List[TrialMetrics]:
    """按配置中的 n_em 与 bem_order 运行一次试验"""
    return run_trial_variants(config, trial_seed=trial_seed, snr_db=snr_db,
                              methods=methods)[0]


def trial_seeds(config: SystemConfig, trials: Optional[int] = None) -> List[int]:
    """第 i 次试验的种子为 base_seed + i"""
    count = config.trials if trials is None else trials
    return [config.base_seed + i for i in range(count)]


def summarize_trials(trial_metrics: Sequence[Sequence[TrialMetrics]]
                     ) -> Dict[EstimationMethod, MethodSummary]:
    """按试验顺序聚合每个方法的均值、中位数与置信半宽"""
    per_method: Dict[EstimationMethod, List[TrialMetrics]] = {}
    for metrics in trial_metrics:
        for metric in metrics:
            per_method.setdefault(metric.method, []).append(metric)

    summaries = {}
    for method in EstimationMethod.ordered():
        if method not in per_method:
            continue
        nmse_stats = summarize([m.nmse for m in per_method[method]])
        ser_stats = summarize([m.ser for m in per_method[method]])
        summaries[method] = MethodSummary(
            mean_nmse=nmse_stats['mean'], mean_ser=ser_stats['mean'],
            median_nmse=nmse_stats['median'], median_ser=ser_stats['median'],
            ci_nmse=nmse_stats['ci'], ci_ser=ser_stats['ci'],
        )
    return summaries


class MonteCarloScheduler:
    """蒙特卡洛调度器

    在线程池中并发执行试验，信号量限制并发数；结果按种子顺序返回，
    因此聚合结果与 workers 取值无关。

    workers 只是并发上限。单帧计算以小矩阵的 numpy 运算为主，大部分时间
    持有 GIL，线程数增加不会带来明显加速；需要多核并行时应换成进程池。
    """

    def __init__(self, workers: int = 1):
        """
        Args:
            workers: 并发上限（线程数）
        """
        if workers < 1:
            raise SchedulerError(f"workers 必须 >= 1: {workers}")
        self.workers = workers
        self.completed = 0
        self.logger = get_logger('scheduler')

    async def run(self, task: Callable[[int], T], seeds: Sequence[int],
                  label: str = "试验") -> List[T]:
        """
        对每个种子执行 task(seed)

        Raises:
            SimulationError: 任一试验失败时抛出第一个失败（按种子顺序）
        """
        semaphore = asyncio.Semaphore(self.workers)
        loop = asyncio.get_running_loop()
        total = len(seeds)
        step = max(1, total // 10)
        self.completed = 0

        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            async def run_one(seed: int) -> T:
                async with semaphore:
                    result = await loop.run_in_executor(executor, task, seed)
                self.completed += 1
                if self.completed % step == 0 or self.completed == total:
                    self.logger.debug(f"{label}: 已完成 {self.completed}/{total}")
                return result

            results = await asyncio.gather(*(run_one(seed) for seed in seeds),
                                           return_exceptions=True)

        for seed, result in zip(seeds, results):
            if isinstance(result, SimulationError):
                self.logger.error(f"{label} 种子 {seed} 失败: {result.format_error()}")
                raise result
            if isinstance(result, BaseException):
                self.logger.error(f"{label} 种子 {seed} 出现未预期错误: {result}",
                                  exc_info=result)
                raise SchedulerError(f"种子 {seed} 的试验执行失败: {result}",
                                     error_code=ErrorCode.TRIAL_EXECUTION_ERROR,
                                     trial_seed=seed, cause=result, recoverable=False)
        return list(results)
