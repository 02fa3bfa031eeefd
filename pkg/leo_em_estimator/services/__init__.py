"""服务层：配置、蒙特卡洛调度、参数扫描与结果文件"""

from .config_manager import ConfigManager, build_config, dump_config
from .monte_carlo import (MonteCarloScheduler, SimulatedFrame, derive_seeds, run_trial,
                          run_trial_variants, score_frame, simulate_frame,
                          summarize_trials, trial_seeds)
from .sweeps import sweep_bem_order, sweep_em_iterations, sweep_snr
from .result_writer import emit_results, load_results

__all__ = [
    'ConfigManager', 'build_config', 'dump_config',
    'MonteCarloScheduler', 'SimulatedFrame', 'derive_seeds', 'run_trial',
    'run_trial_variants', 'score_frame', 'simulate_frame', 'summarize_trials',
    'trial_seeds',
    'sweep_bem_order', 'sweep_em_iterations', 'sweep_snr',
    'emit_results', 'load_results',
]
