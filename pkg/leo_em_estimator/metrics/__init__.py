"""指标与检测模块"""

from .detection import (DetectionResult, nmse, equalize_detect,
                        slice_symbols, snr_to_sigma2, sigma2_from_signal,
                        received_signal, measured_snr_db, awgn_qam_ser, summarize,
                        snr_at_target_ser, relative_reduction)

__all__ = ['DetectionResult', 'nmse', 'equalize_detect',
           'slice_symbols', 'snr_to_sigma2', 'sigma2_from_signal', 'received_signal',
           'measured_snr_db', 'awgn_qam_ser', 'summarize', 'snr_at_target_ser',
           'relative_reduction']
