"""信道建模模块"""

from .fading import (channel_sample, channel_samples, compensation_matrix,
                     effective_channel, symbol_times, subcarrier_offset)
from .geometry import (sample_user_states, upa_response, slant_range,
                       free_space_path_loss_db, steering_vector)

__all__ = ['sample_user_states', 'upa_response', 'slant_range',
           'free_space_path_loss_db', 'steering_vector', 'channel_sample',
           'channel_samples', 'compensation_matrix', 'effective_channel',
           'symbol_times', 'subcarrier_offset']
