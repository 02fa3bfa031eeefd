"""上行帧模块

观测合成位于 ``frame.observation``，需要时显式导入。
"""

from .symbols import (constellation_alphabet, zadoff_chu_sequence, largest_prime_below,
                      pilot_block, build_symbol_matrix)

__all__ = ['constellation_alphabet', 'zadoff_chu_sequence', 'largest_prime_below',
           'pilot_block', 'build_symbol_matrix']
