"""参数扫描：SNR、EM 迭代次数与 BEM 阶数

三种扫描都使用配对试验：同一试验种子在各扫描点上对应同一组几何、
符号与噪声样本，只改变 SNR 或估计器参数。
"""

from typing import Any, Dict, List, Optional, Sequence

from .monte_carlo import (MonteCarloScheduler, resolve_methods, run_trial_variants,
                          summarize_trials, trial_seeds)
from ..metrics.detection import awgn_qam_ser, relative_reduction, snr_at_target_ser
from ..models.estimation import EstimationMethod
from ..models.sweep import SweepAxis, SweepPoint, SweepResult
from ..models.system_config import SystemConfig
from ..utils.exceptions import ConfigError
from ..utils.log_manager import get_logger
from ..utils.performance_monitor import ResourceMonitor

logger = get_logger('sweeps')

TARGET_SER = 0.1


def _grid(values: Optional[Sequence], default: Sequence, key: str) -> List:
    grid = list(default if values is None else values)
    if not grid:
        raise ConfigError(f"{key} 不能为空", key=key)
    return grid


def _seeds(config: SystemConfig, trials: Optional[int]) -> List[int]:
    seeds = trial_seeds(config, trials)
    if not seeds:
        raise ConfigError("试验次数必须 >= 1", key='trials')
    return seeds


def _count_flagged(results) -> int:
    count = 0
    for per_trial in results:
        for per_point in per_trial:
            for variant in per_point:
                count += sum(1 for metric in variant if metric.flagged)
    return count


def snr_extras(result: SweepResult, config: SystemConfig) -> Dict[str, Any]:
    """SNR 扫描的附加曲线：AWGN 理论 SER、目标 SER 处的 SNR、EM 相对 PB 的 SER 降低"""
    grid = result.axis_values
    extras: Dict[str, Any] = {
        'awgn_ser': [awgn_qam_ser(10.0 ** (snr / 10.0), config.constellation) for snr in grid],
        'target_ser': TARGET_SER,
        'snr_at_target_ser': {},
    }
    methods = [m for m in EstimationMethod.ordered()
               if all(m in point.methods for point in result.points)]
    for method in methods:
        extras['snr_at_target_ser'][method.value] = snr_at_target_ser(
            grid, result.series(method, 'mean_ser'), TARGET_SER)
    if EstimationMethod.EM in methods and EstimationMethod.PB in methods:
        extras['em_vs_pb_ser_reduction'] = relative_reduction(
            result.series(EstimationMethod.EM, 'mean_ser'),
            result.series(EstimationMethod.PB, 'mean_ser'))
    return extras


async def sweep_snr(config: SystemConfig, snr_grid: Optional[Sequence[float]] = None,
                    trials: Optional[int] = None, methods: Optional[Sequence] = None,
                    scheduler: Optional[MonteCarloScheduler] = None,
                    monitor: Optional[ResourceMonitor] = None) -> SweepResult:
    """
    SNR 扫描，n_em 与 bem_order 取配置值

    Returns:
        SweepResult: 轴为 SNR，extras 中附带理论 SER 等曲线

    Raises:
        ConfigError: 网格为空或试验次数非法
    """
    grid = [float(v) for v in _grid(snr_grid, config.snr_grid, 'snr_grid')]
    seeds = _seeds(config, trials)
    chosen = resolve_methods(methods, config)
    scheduler = scheduler or MonteCarloScheduler(config.workers)
    monitor = monitor or ResourceMonitor()

    def task(seed: int):
        return [run_trial_variants(config, trial_seed=seed, snr_db=snr, methods=chosen)
                for snr in grid]

    logger.info(f"SNR 扫描: {len(grid)} 个点 × {len(seeds)} 次试验, "
                f"方法 {[m.value for m in chosen]}")
    with monitor.track("SNR 扫描"):
        results = await scheduler.run(task, seeds, label="SNR 扫描")

    result = SweepResult(axis=SweepAxis.SNR, base_seed=config.base_seed, name='snr_sweep')
    for j, snr in enumerate(grid):
        summaries = summarize_trials([per_trial[j][0] for per_trial in results])
        result.points.append(SweepPoint(axis_value=snr, trials=len(seeds), methods=summaries))
        logger.info(f"SNR={snr:g}dB: " + ", ".join(
            f"{m.value} NMSE={s.mean_nmse:.3e} SER={s.mean_ser:.3e}"
            for m, s in summaries.items()))

    result.extras = snr_extras(result, config)
    result.extras['flagged_trials'] = _count_flagged(results)
    return result


async def sweep_em_iterations(config: SystemConfig,
                              em_snr_list: Optional[Sequence[float]] = None,
                              iter_grid: Optional[Sequence[int]] = None,
                              trials: Optional[int] = None,
                              methods: Optional[Sequence] = None,
                              scheduler: Optional[MonteCarloScheduler] = None,
                              monitor: Optional[ResourceMonitor] = None) -> List[SweepResult]:
    """
    EM 迭代次数扫描，每个 SNR 产生一个结果

    PB 与 P-LS 不依赖迭代次数，在各点上取值相同。
    """
    snr_list = [float(v) for v in _grid(em_snr_list, config.em_snr_list, 'em_snr_list')]
    grid = [int(v) for v in _grid(iter_grid, config.iter_grid, 'iter_grid')]
    if any(n < 1 for n in grid):
        raise ConfigError("iter_grid 中的迭代次数必须 >= 1", key='iter_grid')
    seeds = _seeds(config, trials)
    chosen = resolve_methods(methods, config)
    variants = [(n, config.bem_order) for n in grid]
    scheduler = scheduler or MonteCarloScheduler(config.workers)
    monitor = monitor or ResourceMonitor()

    def task(seed: int):
        return [run_trial_variants(config, trial_seed=seed, snr_db=snr, variants=variants,
                                   methods=chosen)
                for snr in snr_list]

    logger.info(f"EM 迭代扫描: SNR {snr_list}, 迭代网格 {grid}, {len(seeds)} 次试验")
    with monitor.track("EM 迭代扫描"):
        results = await scheduler.run(task, seeds, label="EM 迭代扫描")

    sweeps = []
    for i, snr in enumerate(snr_list):
        result = SweepResult(axis=SweepAxis.EM_ITER, base_seed=config.base_seed,
                             fixed_snr_db=snr, name=f"em_iter_snr{snr:g}")
        for j, n_em in enumerate(grid):
            summaries = summarize_trials([per_trial[i][j] for per_trial in results])
            result.points.append(SweepPoint(axis_value=float(n_em), trials=len(seeds),
                                            methods=summaries))
        result.extras = {'flagged_trials': _count_flagged([[r[i]] for r in results])}
        sweeps.append(result)
    return sweeps


async def sweep_bem_order(config: SystemConfig, d_grid: Optional[Sequence[int]] = None,
                          snr_db: Optional[float] = None, trials: Optional[int] = None,
                          methods: Optional[Sequence] = None,
                          scheduler: Optional[MonteCarloScheduler] = None,
                          monitor: Optional[ResourceMonitor] = None) -> SweepResult:
    """
    BEM 阶数 D 扫描，SNR 固定（默认取配置的 snr_db）

    Raises:
        ConfigError: 网格为空或 D 超出 1..N_d
    """
    grid = [int(v) for v in _grid(d_grid, config.d_grid, 'd_grid')]
    if any(d < 1 or d > config.n_data for d in grid):
        raise ConfigError(f"d_grid 取值必须在 1..{config.n_data} 之间", key='d_grid')
    snr = config.snr_db if snr_db is None else float(snr_db)
    seeds = _seeds(config, trials)
    chosen = resolve_methods(methods, config)
    variants = [(config.n_em, d) for d in grid]
    scheduler = scheduler or MonteCarloScheduler(config.workers)
    monitor = monitor or ResourceMonitor()

    def task(seed: int):
        return [run_trial_variants(config, trial_seed=seed, snr_db=snr, variants=variants,
                                   methods=chosen)]

    logger.info(f"BEM 阶数扫描: SNR={snr:g}dB, D 网格 {grid}, {len(seeds)} 次试验")
    with monitor.track("BEM 阶数扫描"):
        results = await scheduler.run(task, seeds, label="BEM 阶数扫描")

    result = SweepResult(axis=SweepAxis.BEM_ORDER, base_seed=config.base_seed,
                         fixed_snr_db=snr, name=f"bem_order_snr{snr:g}")
    for j, d in enumerate(grid):
        summaries = summarize_trials([per_trial[0][j] for per_trial in results])
        result.points.append(SweepPoint(axis_value=float(d), trials=len(seeds),
                                        methods=summaries))
    if EstimationMethod.EM in chosen:
        result.extras['em_argmin_nmse'] = result.argmin(EstimationMethod.EM, 'mean_nmse')
    result.extras['flagged_trials'] = _count_flagged(results)
    return result
