"""测试共用夹具"""

from dataclasses import replace

import pytest

from leo_em_estimator.models.system_config import SystemConfig


@pytest.fixture
def small_config() -> SystemConfig:
    """缩小规模的配置：4 个用户、8×8 阵列、20 个数据符号"""
    return replace(
        SystemConfig(),
        n_users=4,
        array_mx=8,
        array_my=8,
        n_data=20,
        n_em=5,
        bem_order=3,
        trials=4,
        snr_grid=(0.0, 20.0),
        iter_grid=(1, 3),
        d_grid=(3, 20),
        em_snr_list=(10.0,),
    )


@pytest.fixture
def static_config(small_config) -> SystemConfig:
    """静态极限场景：用户静止且无多径时延"""
    return replace(small_config, max_user_doppler_hz=0.0, delay_spread_s=0.0)
