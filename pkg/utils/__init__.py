"""
工具模块
"""
from .logger import setup_logger
from .file_handler import (
    save_json,
    load_json,
    dumps_json,
    save_csv,
    load_csv,
    write_lines,
    read_lines,
)
from .helpers import (
    index_bits,
    safe_log2,
    popcount,
    nibbles_within_one,
    format_count,
    hex_width,
    to_hex,
    pair_count,
    mean,
)

__all__ = [
    'setup_logger',
    'save_json',
    'load_json',
    'dumps_json',
    'save_csv',
    'load_csv',
    'write_lines',
    'read_lines',
    'index_bits',
    'safe_log2',
    'popcount',
    'nibbles_within_one',
    'format_count',
    'hex_width',
    'to_hex',
    'pair_count',
    'mean',
]
