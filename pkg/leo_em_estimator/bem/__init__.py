"""基扩展模型模块"""

from .dlp import (BasisMatrix, build_basis, project, coefficients,
                  legendre_polynomials, normalization_coefficients)

__all__ = ['BasisMatrix', 'build_basis', 'project', 'coefficients',
           'legendre_polynomials', 'normalization_coefficients']
