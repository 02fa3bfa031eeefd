#!/usr/bin/env python3
"""
LEO 卫星大规模 MIMO 上行信道估计仿真入口

子命令:
  sweep-snr    SNR 扫描（NMSE/SER 随 SNR 变化）
  sweep-iters  EM 迭代次数扫描
  sweep-d      BEM 阶数扫描
  trial        运行单次试验并打印各方法指标
"""

import argparse
import asyncio
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from leo_em_estimator import __version__
from leo_em_estimator.models.sweep import SweepResult
from leo_em_estimator.models.system_config import SystemConfig
from leo_em_estimator.services.config_manager import ConfigManager, dump_config
from leo_em_estimator.services.monte_carlo import MonteCarloScheduler, run_trial
from leo_em_estimator.services.result_writer import emit_results
from leo_em_estimator.services.sweeps import (sweep_bem_order, sweep_em_iterations,
                                              sweep_snr)
from leo_em_estimator.utils.error_handler import global_error_handler
from leo_em_estimator.utils.exceptions import ConfigError, SimulationError
from leo_em_estimator.utils.log_manager import get_logger, log_manager
from leo_em_estimator.utils.performance_monitor import ResourceMonitor

COMMANDS = ('sweep-snr', 'sweep-iters', 'sweep-d', 'trial')


def _float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"无法解析为数值列表: {text}")


def _int_list(text: str) -> List[int]:
    try:
        return [int(item) for item in text.split(',') if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"无法解析为整数列表: {text}")


def _name_list(text: str) -> List[str]:
    return [item.strip().lower() for item in text.split(',') if item.strip()]


class SimulationApp:
    """仿真应用程序：加载配置、配置日志并执行子命令"""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config_manager: Optional[ConfigManager] = None
        self.config: Optional[SystemConfig] = None
        self.monitor = ResourceMonitor()
        self.logger = get_logger('main')

    def initialize(self) -> SystemConfig:
        """加载配置文件（可选）并应用命令行覆盖"""
        args = self.args
        logging_config: Dict[str, Any] = {}
        if args.config:
            self.config_manager = ConfigManager(args.config)
            base = self.config_manager.load_config()
            logging_config = self.config_manager.get_logging_config()
        else:
            self.config_manager = ConfigManager('<defaults>')
            base = SystemConfig()

        if args.log_level:
            logging_config['log_level'] = args.log_level
        if logging_config:
            try:
                log_manager.configure(logging_config)
            except ValueError as e:
                raise ConfigError(str(e), key='log_level', cause=e)

        self.config = self.config_manager.apply_overrides(
            base,
            trials=args.trials,
            base_seed=args.seed,
            workers=args.workers,
            snr_grid=args.snr_grid,
            iter_grid=args.iter_grid,
            d_grid=args.d_grid,
            snr_db=args.snr,
            methods=args.methods,
        )
        return self.config

    def _offsets(self) -> List[Optional[float]]:
        return list(self.args.subcarriers) if self.args.subcarriers else [None]

    def _config_for(self, offset: Optional[float]) -> SystemConfig:
        if offset is None:
            return self.config
        return self.config_manager.apply_overrides(self.config, subcarrier_offset=offset)

    def _write(self, result: SweepResult, offset: Optional[float]) -> Path:
        name = result.name if offset is None else f"{result.name}_c{offset:g}"
        csv_path, _ = emit_results(result, Path(self.args.out) / f"{name}.csv")
        print(f"已写出 {csv_path}")
        return csv_path

    async def run(self) -> int:
        """执行子命令，返回退出码"""
        global_error_handler.reset_error_stats()
        try:
            return await self._dispatch()
        finally:
            self._log_summary()

    def _log_summary(self):
        """记录本次运行的换种子次数与内存峰值"""
        reseeds = global_error_handler.get_error_stats()
        if reseeds:
            self.logger.info(f"换种子重试统计: {reseeds}")
        peak = self.monitor.peak_memory_mb()
        if peak is not None:
            self.logger.info(f"内存峰值 {peak:.1f} MB")

    async def _dispatch(self) -> int:
        command = self.args.command
        scheduler = MonteCarloScheduler(self.config.workers)

        if command == 'trial':
            return self._run_trial()

        for offset in self._offsets():
            config = self._config_for(offset)
            if command == 'sweep-snr':
                results = [await sweep_snr(config, scheduler=scheduler, monitor=self.monitor)]
            elif command == 'sweep-iters':
                results = await sweep_em_iterations(config, scheduler=scheduler,
                                                    monitor=self.monitor)
            else:
                results = [await sweep_bem_order(config, scheduler=scheduler,
                                                 monitor=self.monitor)]
            for result in results:
                self._write(result, offset)
        return 0

    def _run_trial(self) -> int:
        for offset in self._offsets():
            config = self._config_for(offset)
            metrics = run_trial(config, config.base_seed, config.snr_db)
            print(f"种子 {config.base_seed}, SNR {config.snr_db:g} dB, "
                  f"子载波偏移 {config.subcarrier_offset:g}")
            for metric in metrics:
                flag = " (含奇异位置)" if metric.flagged else ""
                print(f"  {metric.method.value:>3}: NMSE={metric.nmse:.4e} "
                      f"SER={metric.ser:.4f}{flag}")
        return 0


def create_argument_parser() -> argparse.ArgumentParser:
    """创建命令行参数解析器"""
    parser = argparse.ArgumentParser(
        prog='leo-em-sim',
        description='LEO 卫星大规模 MIMO-OFDM 上行信道估计仿真（P-LS / PB / EM + DLP-BEM）',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例用法:
  %(prog)s sweep-snr --trials 100 --out results
  %(prog)s sweep-iters --config config/default.yaml
  %(prog)s sweep-d --snr 10 --d-grid 3,5,10,50
  %(prog)s trial --seed 7 --snr 20
  %(prog)s trial --config config/fast_example.yaml --print-config
        """
    )
    parser.add_argument('--version', '-v', action='version',
                        version=f'%(prog)s {__version__}')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='YAML配置文件路径（缺省使用内置默认值）')
    common.add_argument('--trials', type=int, help='每个扫描点的试验次数')
    common.add_argument('--seed', type=int, help='基础随机种子')
    common.add_argument('--out', default='results', help='结果输出目录')
    common.add_argument('--snr-grid', type=_float_list, help='SNR 网格 (dB)，逗号分隔')
    common.add_argument('--iter-grid', type=_int_list, help='EM 迭代次数网格')
    common.add_argument('--d-grid', type=_int_list, help='BEM 阶数网格')
    common.add_argument('--snr', type=float, help='固定 SNR (dB)')
    common.add_argument('--methods', type=_name_list, help='估计方法，如 pb,pls,em')
    common.add_argument('--workers', type=int, help='并发上限（线程数）')
    common.add_argument('--subcarriers', type=_float_list,
                        help='子载波偏移 c 列表，每个偏移输出一个结果文件')
    common.add_argument('--log-level',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        help='设置日志级别（覆盖配置文件设置）')
    common.add_argument('--print-config', action='store_true',
                        help='打印解析后的配置并退出')

    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    helps = {
        'sweep-snr': 'SNR 扫描',
        'sweep-iters': 'EM 迭代次数扫描（每个 em_snr_list 中的 SNR 一个结果）',
        'sweep-d': 'BEM 阶数扫描',
        'trial': '运行单次试验',
    }
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common], help=helps[command])
    return parser


async def main(argv: Optional[Sequence[str]] = None) -> int:
    """主函数，返回进程退出码"""
    parser = create_argument_parser()
    args = parser.parse_args(argv)
    logger = get_logger('main')

    try:
        app = SimulationApp(args)
        config = app.initialize()
        if args.print_config:
            print(dump_config(config), end='')
            return 0
        return await app.run()
    except KeyboardInterrupt:
        print("\n用户中断程序", file=sys.stderr)
        return 1
    except ConfigError as e:
        print(f"配置错误: {e.format_error()}", file=sys.stderr)
        return 1
    except SimulationError as e:
        logger.error(f"仿真失败: {e.format_error()}", exc_info=True)
        print(f"仿真错误: {e.format_error()}", file=sys.stderr)
        return 1
    finally:
        log_manager.cleanup()


if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
