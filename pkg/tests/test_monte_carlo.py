"""蒙特卡洛试验与调度器测试"""

from dataclasses import replace
from unittest.mock import patch

import numpy as np
import pytest

from leo_em_estimator.models.estimation import EstimationMethod, TrialMetrics
from leo_em_estimator.services import monte_carlo
from leo_em_estimator.services.monte_carlo import (MonteCarloScheduler, derive_seeds,
                                                   run_trial, run_trial_variants,
                                                   score_frame, simulate_frame,
                                                   summarize_trials, trial_seeds)
from leo_em_estimator.utils.error_handler import RESEED_STRIDE
from leo_em_estimator.utils.exceptions import (DegenerateGeometryError, DimensionError,
                                               NumericalError, SchedulerError)


class TestSeeds:
    """种子派生测试"""

    def test_derive_seeds_deterministic(self):
        """测试相同试验种子派生出相同子种子"""
        assert derive_seeds(42) == derive_seeds(42)
        seeds = derive_seeds(42)
        assert len({seeds.geometry, seeds.symbols, seeds.noise}) == 3
        assert derive_seeds(43) != seeds

    def test_trial_seeds(self, small_config):
        """测试第 i 次试验的种子为 base_seed + i"""
        assert trial_seeds(small_config) == [2025, 2026, 2027, 2028]
        assert trial_seeds(small_config, 2) == [2025, 2026]


class TestSimulateFrame:
    """单帧仿真测试"""

    def test_shapes(self, small_config):
        """测试各中间量尺寸"""
        frame = simulate_frame(small_config, 3, 10.0)
        k, s, m = small_config.n_users, small_config.n_symbols, small_config.n_antennas

        assert frame.effective.g.shape == (k, s)
        assert frame.symbols.x.shape == (k, s)
        assert frame.array.a.shape == (k, m)
        assert frame.observation.y_raw.shape == (s, m)
        assert frame.observation.y_demixed.shape == (s, k)
        assert frame.observation.snr_db == 10.0

    def test_default_snr_from_config(self, small_config):
        """测试未给定 SNR 时使用配置值"""
        frame = simulate_frame(small_config, 3)
        assert frame.observation.snr_db == small_config.snr_db

    def test_snr_only_changes_noise(self, small_config):
        """测试同一种子在不同 SNR 下几何与符号相同"""
        low = simulate_frame(small_config, 3, 0.0)
        high = simulate_frame(small_config, 3, 20.0)
        assert np.array_equal(low.effective.g, high.effective.g)
        assert np.array_equal(low.symbols.x, high.symbols.x)
        assert low.observation.noise_variance > high.observation.noise_variance

    def test_noise_enhancement_limit_rejects_frame(self, small_config):
        """测试解混噪声放大超过上限时拒绝该帧"""
        config = replace(small_config, max_noise_enhancement=1.0)
        with pytest.raises(DegenerateGeometryError) as exc_info:
            simulate_frame(config, 3, 10.0)
        assert exc_info.value.details['noise_enhancement'] > 1.0


class TestScoreFrame:
    """单帧打分测试"""

    def test_basis_only_built_for_em(self, small_config):
        """测试只有选择 EM 时才校验 BEM 阶数"""
        frame = simulate_frame(small_config, 3, 10.0)
        too_large = small_config.n_data + 1

        metrics = score_frame(frame, small_config,
                              [EstimationMethod.PB, EstimationMethod.PLS], 3, too_large)
        assert [m.method for m in metrics] == [EstimationMethod.PB, EstimationMethod.PLS]

        with pytest.raises(DimensionError):
            score_frame(frame, small_config, [EstimationMethod.EM], 3, too_large)

class TestRunTrial:
    """单次试验测试"""

    def test_method_order_and_fields(self, small_config):
        """测试输出按 PB、PLS、EM 排序"""
        metrics = run_trial(small_config, 11, 10.0)

        assert [m.method for m in metrics] == EstimationMethod.ordered()
        for metric in metrics:
            assert isinstance(metric, TrialMetrics)
            assert np.isfinite(metric.nmse) and metric.nmse >= 0
            assert 0.0 <= metric.ser <= 1.0
            assert metric.snr_db == 10.0
            assert metric.trial_seed == 11
            assert metric.d_order == small_config.bem_order

    def test_deterministic(self, small_config):
        """测试相同种子结果完全相同"""
        assert run_trial(small_config, 5, 5.0) == run_trial(small_config, 5, 5.0)

    def test_method_subset(self, small_config):
        """测试只运行部分方法"""
        metrics = run_trial(small_config, 5, 5.0, methods=['em', 'pb'])
        assert [m.method for m in metrics] == [EstimationMethod.PB, EstimationMethod.EM]

    def test_static_noiseless_is_exact(self, static_config):
        """测试静态无噪声场景下所有方法都完全准确"""
        for metric in run_trial(static_config, 8, 400.0):
            assert metric.nmse < 1e-8
            assert metric.ser == 0.0
            assert not metric.flagged

    def test_variants_share_frame(self, small_config):
        """测试多组参数复用同一帧"""
        results = run_trial_variants(small_config, trial_seed=4, snr_db=10.0,
                                     variants=[(1, 3), (5, 3), (5, 20)])
        assert len(results) == 3
        pb_values = [r[0].nmse for r in results]
        assert pb_values[0] == pb_values[1] == pb_values[2]
        assert [r[2].d_order for r in results] == [3, 3, 20]

    def test_degenerate_geometry_is_reseeded(self, small_config):
        """测试几何退化时换种子重试"""
        original = monte_carlo.simulate_frame

        def flaky(config, trial_seed, snr_db=None):
            if trial_seed == 7:
                raise DegenerateGeometryError("测试退化")
            return original(config, trial_seed, snr_db)

        with patch.object(monte_carlo, 'simulate_frame', side_effect=flaky):
            metrics = run_trial(small_config, 7, 10.0)
        assert all(m.trial_seed == 7 + RESEED_STRIDE for m in metrics)

    def test_retries_exhausted(self, small_config):
        """测试重试耗尽后抛出不可恢复错误"""
        with patch.object(monte_carlo, 'simulate_frame',
                          side_effect=DegenerateGeometryError("始终退化")):
            with pytest.raises(SchedulerError) as exc_info:
                run_trial(small_config, 7, 10.0)
        assert not exc_info.value.recoverable
        assert isinstance(exc_info.value.cause, DegenerateGeometryError)

    def test_noise_enhancement_retries_exhausted(self, small_config):
        """测试噪声放大始终超限时重试耗尽"""
        config = replace(small_config, max_noise_enhancement=1.0)
        with pytest.raises(SchedulerError) as exc_info:
            run_trial(config, 7, 10.0)
        assert isinstance(exc_info.value.cause, DegenerateGeometryError)

    def test_non_retryable_error_propagates(self, small_config):
        """测试不可重试的错误直接抛出"""
        with patch.object(monte_carlo, 'simulate_frame',
                          side_effect=NumericalError("数值错误")) as mocked:
            with pytest.raises(NumericalError):
                run_trial(small_config, 7, 10.0)
        assert mocked.call_count == 1


class TestSummarizeTrials:
    """试验聚合测试"""

    def test_summary_values(self):
        """测试均值与置信半宽"""
        trials = [
            [TrialMetrics(nmse=value, ser=value / 10, snr_db=0.0, method=EstimationMethod.EM,
                          n_em=1, d_order=3)]
            for value in (1.0, 2.0, 3.0)
        ]
        summary = summarize_trials(trials)[EstimationMethod.EM]
        assert summary.mean_nmse == pytest.approx(2.0)
        assert summary.median_ser == pytest.approx(0.2)
        assert summary.ci_nmse == pytest.approx(1.96 / np.sqrt(3))


class TestMonteCarloScheduler:
    """调度器测试"""

    def test_invalid_workers(self):
        """测试非法并发数"""
        with pytest.raises(SchedulerError):
            MonteCarloScheduler(0)

    @pytest.mark.asyncio
    async def test_results_in_seed_order(self):
        """测试结果按种子顺序返回"""
        scheduler = MonteCarloScheduler(workers=4)
        results = await scheduler.run(lambda seed: seed * seed, list(range(20)))
        assert results == [seed * seed for seed in range(20)]
        assert scheduler.completed == 20

    @pytest.mark.asyncio
    async def test_worker_count_does_not_change_results(self, small_config):
        """测试并发数不影响试验结果"""
        seeds = trial_seeds(small_config)

        def task(seed):
            return run_trial(small_config, seed, 10.0)

        serial = await MonteCarloScheduler(1).run(task, seeds)
        parallel = await MonteCarloScheduler(3).run(task, seeds)
        assert serial == parallel

    @pytest.mark.asyncio
    async def test_simulation_error_propagates(self):
        """测试仿真错误原样抛出"""
        def task(seed):
            if seed == 2:
                raise NumericalError("失败")
            return seed

        with pytest.raises(NumericalError):
            await MonteCarloScheduler(2).run(task, [1, 2, 3])

    @pytest.mark.asyncio
    async def test_unexpected_error_wrapped(self):
        """测试未预期异常包装为 SchedulerError"""
        def task(seed):
            raise RuntimeError("意外")

        with pytest.raises(SchedulerError) as exc_info:
            await MonteCarloScheduler(1).run(task, [9])
        assert exc_info.value.details['trial_seed'] == 9


@pytest.mark.slow
@pytest.mark.integration
class TestEstimatorOrdering:
    """统计趋势测试（多次试验）"""

    @pytest.mark.asyncio
    async def test_em_beats_pb_at_high_snr(self, small_config):
        """测试高 SNR 时 EM 的平均 NMSE 低于 PB"""
        config = replace(small_config, trials=500)
        results = await MonteCarloScheduler(2).run(
            lambda seed: run_trial(config, seed, 20.0), trial_seeds(config))
        summary = summarize_trials(results)
        assert summary[EstimationMethod.EM].mean_nmse < summary[EstimationMethod.PB].mean_nmse
        assert summary[EstimationMethod.EM].mean_nmse < summary[EstimationMethod.PLS].mean_nmse
