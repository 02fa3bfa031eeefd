"""
LEO卫星大规模MIMO上行信道估计仿真器

基于EM算法与离散勒让德多项式基扩展(DLP-BEM)的信道估计、
基线估计器以及蒙特卡洛基准测试框架。
"""

__version__ = "1.0.0"
__author__ = "LEO EM Simulator Team"
