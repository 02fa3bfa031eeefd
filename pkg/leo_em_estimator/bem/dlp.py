"""离散勒让德多项式基扩展（DLP-BEM）"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..models.channel import frozen_array
from ..utils.exceptions import DimensionError, NumericalError
from ..utils.log_manager import get_logger

logger = get_logger('bem.dlp')

ORTHONORMAL_TOLERANCE = 1e-9
FAILURE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class BasisMatrix:
    """S×D 正交归一基 Ψ 及其投影算子 ΨΨᵀ"""
    psi: np.ndarray
    projector: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'psi', frozen_array(self.psi, float))
        object.__setattr__(self, 'projector', frozen_array(self.projector, float))

    @property
    def length(self) -> int:
        return self.psi.shape[0]

    @property
    def order(self) -> int:
        return self.psi.shape[1]


def legendre_polynomials(length: int, order: int) -> np.ndarray:
    """
    三项递推计算未归一化的离散勒让德多项式 η_q(s)，s = 1..S

    η₁ = 1，η₂ = 1 − 2(s−1)/(S−1)，q ≥ 3 时
    η_q = [(2q−3)(S−2s+1)η_{q−1} − (q−2)(S+q−2)η_{q−2}] / [(q−1)(S−q+1)]

    Returns:
        S×D 矩阵，第 q 列为 η_q
    """
    s = np.arange(1, length + 1, dtype=float)
    eta = np.empty((length, order))
    eta[:, 0] = 1.0
    if order >= 2:
        eta[:, 1] = 1.0 - 2.0 * (s - 1.0) / (length - 1.0)
    for q in range(3, order + 1):
        denominator = (q - 1.0) * (length - q + 1.0)
        eta[:, q - 1] = ((2.0 * q - 3.0) * (length - 2.0 * s + 1.0) * eta[:, q - 2]
                         - (q - 2.0) * (length + q - 2.0) * eta[:, q - 3]) / denominator
    return eta


def normalization_coefficients(length: int, order: int) -> np.ndarray:
    """归一化系数 ζ_q，满足 ‖η_q‖ = ζ_q"""
    zeta = np.empty(order)
    zeta[0] = np.sqrt(length)
    if order >= 2:
        zeta[1] = np.sqrt(length * (length + 1.0) / (3.0 * (length - 1.0)))
    for q in range(3, order + 1):
        zeta[q - 1] = np.sqrt((2.0 * q - 3.0) * (length + q - 1.0)
                              / ((2.0 * q - 1.0) * (length - q + 1.0))) * zeta[q - 2]
    return zeta


def _orthonormality_residual(psi: np.ndarray) -> float:
    return float(np.max(np.abs(psi.T @ psi - np.eye(psi.shape[1]))))


def _reorthonormalize(psi: np.ndarray) -> np.ndarray:
    """QR 重新正交化，保持每列与原列同号"""
    q, r = np.linalg.qr(psi)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


@lru_cache(maxsize=64)
def build_basis(length: int, order: int) -> BasisMatrix:
    """
    构造 DLP 基矩阵（按 (S, D) 缓存）

    Args:
        length: 序列长度 S
        order: 基函数个数 D（1 ≤ D ≤ S）

    Returns:
        基矩阵

    Raises:
        DimensionError: S < 2 或 D 超出范围
        NumericalError: 重新正交化后残差仍然过大
    """
    if length < 2:
        raise DimensionError("DLP 基的长度至少为 2", expected=">= 2", actual=length)
    if order < 1 or order > length:
        raise DimensionError("DLP 基的阶数必须在 1..S 之间",
                             expected=f"1..{length}", actual=order)

    psi = legendre_polynomials(length, order) / normalization_coefficients(length, order)

    residual = _orthonormality_residual(psi)
    if not residual <= ORTHONORMAL_TOLERANCE:
        logger.debug(f"S={length}, D={order} 递推残差 {residual:.2e}，执行重新正交化")
        psi = _reorthonormalize(psi)
        residual = _orthonormality_residual(psi)
        if not residual <= FAILURE_TOLERANCE:
            raise NumericalError(f"DLP 基正交性残差 {residual:.2e} 超出容限")

    return BasisMatrix(psi=psi, projector=psi @ psi.T)


def _check_length(basis: BasisMatrix, series: np.ndarray) -> np.ndarray:
    data = np.asarray(series)
    if data.shape[-1] != basis.length:
        raise DimensionError("序列长度与基长度不一致",
                             expected=basis.length, actual=data.shape[-1])
    return data


def project(basis: BasisMatrix, series: np.ndarray) -> np.ndarray:
    """
    沿最后一维投影到 DLP 子空间：ΨΨᵀ·h

    投影算子为实矩阵，对实部与虚部分别作用；支持 K×S 批量输入。
    """
    data = _check_length(basis, series)
    return data @ basis.projector.T


def coefficients(basis: BasisMatrix, series: np.ndarray) -> np.ndarray:
    """展开系数 c = Ψᵀ·h（沿最后一维）"""
    data = _check_length(basis, series)
    return data @ basis.psi
