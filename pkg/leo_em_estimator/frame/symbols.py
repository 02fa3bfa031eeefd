"""星座映射与 Zadoff-Chu 导频生成"""

from functools import lru_cache

import numpy as np

from ..models.frame import SymbolMatrix
from ..models.system_config import SystemConfig, Constellation
from ..utils.exceptions import ConfigError


@lru_cache(maxsize=None)
def _alphabet(constellation: Constellation) -> np.ndarray:
    if constellation is Constellation.QAM16:
        levels = np.array([-3.0, -1.0, 1.0, 3.0])
        points = (levels[:, None] + 1j * levels[None, :]).ravel()
        alphabet = points / np.sqrt(10.0)
    elif constellation is Constellation.QPSK:
        alphabet = np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]) / np.sqrt(2.0)
    else:
        raise ConfigError(f"不支持的星座: {constellation}", key='constellation')
    alphabet.setflags(write=False)
    return alphabet


def constellation_alphabet(constellation: Constellation) -> np.ndarray:
    """单位平均能量的星座点集合"""
    return _alphabet(constellation)


def largest_prime_below(n: int) -> int:
    """小于 n 的最大素数；不存在时返回 1"""
    for candidate in range(n - 1, 1, -1):
        if all(candidate % d for d in range(2, int(candidate ** 0.5) + 1)):
            return candidate
    return 1


def zadoff_chu_sequence(length: int, root: int) -> np.ndarray:
    """
    长度为 length、根为 root 的 Zadoff-Chu 序列

    奇数长度使用 n(n+1)，偶数长度使用 n²，保证恒模与理想循环自相关。
    """
    n = np.arange(length)
    exponent = n * (n + 1) if length % 2 else n * n
    return np.exp(-1j * np.pi * root * exponent / length)


def pilot_block(n_users: int, pilot_count: int) -> np.ndarray:
    """
    K×N_p 导频矩阵

    每个导频符号使用同一个长度为 K 的 ZC 根序列，用户 k 取循环移位 k 后的元素。
    """
    zc = zadoff_chu_sequence(n_users, largest_prime_below(n_users))
    users = np.arange(n_users)[:, None]
    columns = np.arange(pilot_count)[None, :]
    return zc[(users + columns) % n_users]


def build_symbol_matrix(config: SystemConfig, rng_seed: int,
                        n_symbols: int = None) -> SymbolMatrix:
    """
    构造一帧发送符号矩阵 X（导频在前，数据在后）

    Args:
        config: 系统配置
        rng_seed: 数据符号随机种子
        n_symbols: 期望的帧长 S；给定时必须等于导频数加数据数

    Returns:
        发送符号矩阵

    Raises:
        ConfigError: 导频/数据数量非法或与帧长不一致
    """
    if config.n_pilots < 1 or config.n_data < 1:
        raise ConfigError("导频与数据符号数都必须 >= 1", key='n_pilots')
    if n_symbols is not None and n_symbols != config.n_symbols:
        raise ConfigError(
            f"导频数 {config.n_pilots} + 数据数 {config.n_data} 与帧长 {n_symbols} 不一致",
            key='n_data')

    rng = np.random.default_rng(rng_seed)
    alphabet = constellation_alphabet(config.constellation)
    data_indices = rng.integers(0, alphabet.size, size=(config.n_users, config.n_data))

    x = np.hstack([pilot_block(config.n_users, config.n_pilots), alphabet[data_indices]])
    return SymbolMatrix(x=x, pilot_count=config.n_pilots,
                        constellation=config.constellation, data_indices=data_indices)
