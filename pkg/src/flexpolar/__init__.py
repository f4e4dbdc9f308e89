"""Polar coding with dominance-lattice block analysis and fast block decoders."""
from .bench import LatencyParams, case_latency, code_latency_report, sc_block_latency
from .construction import (BEC_DESIGN_EPS, CodeConfig, NotProperlyDesigned, build_code,
                           block_masks, load_code, save_code)
from .domlattice import (BitPermutation, IndexSet, canonical_table, enumerate_admissible_sets,
                         is_dominance_closed, is_domination_contiguous)
from .fastdec import (classify_block, decode_block, decode_block8, decode_block16,
                      min_distance, ml_oracle_decode, wagner_decode)
from .llr import LLR_MAX, cn_op, count_ops, vn_op
from .scdec import DecodeResult, hybrid_decode, sc_decode
from .sim import BerPoint, ChannelSpec, Decoder, StopRule, awgn_bpsk_llrs, ber_sweep
from .xform import (block_parallel_transform, encode_nonsystematic, encode_systematic,
                    polar_transform)

__version__ = "0.1.0"
