"""用户几何、阵列响应与信道参数抽样"""

from typing import List, Sequence, Tuple

import numpy as np

from ..models.channel import UserGeometry, UserChannelState, ArrayResponseMatrix
from ..models.system_config import (SystemConfig, ArrayGeometry, SPEED_OF_LIGHT,
                                    EARTH_RADIUS_M)
from ..utils.config_validator import ConfigValidator
from ..utils.exceptions import DegenerateGeometryError
from ..utils.log_manager import get_logger

logger = get_logger('channel.geometry')

# 单个用户方向的最大重抽次数
MAX_DIRECTION_DRAWS = 100


def slant_range(altitude_m: float, elevation_deg: float,
                earth_radius_m: float = EARTH_RADIUS_M) -> float:
    """
    球面地球模型下的星地斜距

    Args:
        altitude_m: 卫星轨道高度（米）
        elevation_deg: 用户仰角（度）
        earth_radius_m: 地球半径（米）

    Returns:
        斜距（米）
    """
    elevation = np.deg2rad(elevation_deg)
    orbit_radius = earth_radius_m + altitude_m
    return float(np.sqrt(orbit_radius ** 2 - (earth_radius_m * np.cos(elevation)) ** 2)
                 - earth_radius_m * np.sin(elevation))


def free_space_path_loss_db(distance_m: float, carrier_hz: float) -> float:
    """自由空间路径损耗（dB）

    仅作为文档化的工具函数；仿真中大尺度增益固定为 β_k = 1，
    工作点完全由 SNR 控制。
    """
    return float(20.0 * np.log10(4.0 * np.pi * distance_m * carrier_hz / SPEED_OF_LIGHT))


def steering_vector(n_elements: int, spatial_frequency: float) -> np.ndarray:
    """单轴导向矢量 v_d(𝒟)，第 n 个元素为 exp{-jπn𝒟}/√M_d"""
    n = np.arange(n_elements)
    return np.exp(-1j * np.pi * n * spatial_frequency) / np.sqrt(n_elements)


def response_row(geometry: ArrayGeometry, theta_x: float, theta_y: float) -> np.ndarray:
    """单个方向的UPA响应 v_x(sinθʸcosθˣ) ⊗ v_y(cosθʸ)，范数为 1"""
    return np.kron(steering_vector(geometry.m_x, np.sin(theta_y) * np.cos(theta_x)),
                   steering_vector(geometry.m_y, np.cos(theta_y)))


def upa_response(geometry: ArrayGeometry,
                 users: Sequence[UserGeometry]) -> ArrayResponseMatrix:
    """
    计算UPA响应矩阵 A

    第 k 行为 v_x(sinθʸcosθˣ) ⊗ v_y(cosθʸ)，行范数为 1。

    Args:
        geometry: 阵列几何
        users: 各用户几何

    Returns:
        K×M 阵列响应矩阵
    """
    rows = [response_row(geometry, user.theta_x, user.theta_y) for user in users]
    if not rows:
        return ArrayResponseMatrix(np.zeros((0, geometry.m), dtype=complex))
    return ArrayResponseMatrix(np.vstack(rows))


def draw_direction(geometry: ArrayGeometry, rng: np.random.Generator,
                   accepted: List[np.ndarray], max_correlation: float) -> Tuple[float, float]:
    """
    抽取一个与已接受用户在空间上可分的到达方向

    θˣ ~ U[0, 2π)，θʸ ~ U[0, π]；若与任一已接受用户的 |a_kᴴa_j| 超过
    max_correlation 则重新抽取。max_correlation >= 1 时不做检查。
    接受的响应行会追加到 accepted。

    Raises:
        DegenerateGeometryError: 连续 MAX_DIRECTION_DRAWS 次都无法满足间隔要求
    """
    for _ in range(MAX_DIRECTION_DRAWS):
        theta_x = float(rng.uniform(0.0, 2.0 * np.pi))
        theta_y = float(rng.uniform(0.0, np.pi))
        row = response_row(geometry, theta_x, theta_y)
        separated = (max_correlation >= 1.0 or not accepted
                     or np.max(np.abs(np.vstack(accepted).conj() @ row)) <= max_correlation)
        if separated:
            accepted.append(row)
            return theta_x, theta_y
    raise DegenerateGeometryError(
        f"连续 {MAX_DIRECTION_DRAWS} 次抽取的方向都与已有用户过于接近",
        details={'max_correlation': max_correlation, 'accepted_users': len(accepted)})


def sample_user_states(config: SystemConfig, rng_seed: int) -> List[UserChannelState]:
    """
    抽样一帧内 K 个用户的信道参数

    仰角在 [最小仰角, 90°] 内均匀分布，斜距由轨道高度与仰角决定，
    卫星/用户多普勒与多径时延在配置给出的上限内均匀分布，
    路径增益为标准复高斯。任意两个用户的阵列响应相关系数不超过
    max_user_correlation。相同种子得到完全相同的结果。

    Args:
        config: 系统配置
        rng_seed: 随机种子

    Returns:
        长度为 K 的用户信道状态列表

    Raises:
        ConfigError: 配置非法
        DegenerateGeometryError: 无法抽到满足间隔要求的用户方向
    """
    ConfigValidator.validate_system_config(config)
    rng = np.random.default_rng(rng_seed)
    geometry = config.array

    states = []
    accepted: List[np.ndarray] = []
    for _ in range(config.n_users):
        elevation = rng.uniform(config.min_elevation_deg, 90.0)
        distance = slant_range(config.altitude_m, elevation)
        theta_x, theta_y = draw_direction(geometry, rng, accepted,
                                          config.max_user_correlation)
        user_geometry = UserGeometry(
            theta_x=theta_x,
            theta_y=theta_y,
            distance=distance,
            elevation=float(elevation),
        )

        num_paths = int(rng.integers(1, config.max_paths, endpoint=True))
        path_gains = (rng.standard_normal(num_paths)
                      + 1j * rng.standard_normal(num_paths)) / np.sqrt(2.0)

        states.append(UserChannelState(
            geometry=user_geometry,
            rician_kappa=config.rician_kappa,
            num_paths=num_paths,
            path_gains=path_gains,
            tau_los=distance / SPEED_OF_LIGHT,
            tau_mp=rng.uniform(0.0, config.delay_spread_s, num_paths),
            nu_sat=float(rng.uniform(-config.max_sat_doppler_hz,
                                     config.max_sat_doppler_hz)),
            nu_ut_los=float(rng.uniform(-config.max_user_doppler_hz,
                                        config.max_user_doppler_hz)),
            nu_ut_nlos=rng.uniform(-config.max_user_doppler_hz,
                                   config.max_user_doppler_hz, num_paths),
            beta=config.beta,
        ))

    logger.debug(f"种子 {rng_seed} 抽样了 {len(states)} 个用户的信道状态")
    return states
