"""
标签模块 - 阶段1草图、基础方案、XOR提升、最小完美哈希与乘积标签
"""
from .label import BitReader, BitWriter, Label
from .hamming_sketch import (
    DistanceOneLabeling,
    alphabet_copy,
    binary_copy,
    build_distance_one,
    copy_accepts,
    decode_distance_one,
    default_q,
)
from .base_schemes import BaseScheme, decode_base, encode_base, make_scheme, scheme_for_factors
from .xor_lift import XorLift, build_lift, lift_label, rebuild_lift, xor_decode
from .mphf import Mphf, build_mphf, deserialize_mphf, eval_mphf, serialize_mphf
from .product_labeler import (
    decode,
    encode,
    encode_induced,
    encode_subgraph,
    label_stats,
    parse_label,
)
from .label_file import query_labels, read_label_file, write_label_file

__all__ = [
    'BitReader',
    'BitWriter',
    'Label',
    'DistanceOneLabeling',
    'alphabet_copy',
    'binary_copy',
    'build_distance_one',
    'copy_accepts',
    'decode_distance_one',
    'default_q',
    'BaseScheme',
    'decode_base',
    'encode_base',
    'make_scheme',
    'scheme_for_factors',
    'XorLift',
    'build_lift',
    'lift_label',
    'rebuild_lift',
    'xor_decode',
    'Mphf',
    'build_mphf',
    'deserialize_mphf',
    'eval_mphf',
    'serialize_mphf',
    'decode',
    'encode',
    'encode_induced',
    'encode_subgraph',
    'label_stats',
    'parse_label',
    'query_labels',
    'read_label_file',
    'write_label_file',
]
