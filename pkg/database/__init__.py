"""
数据来源模块: 铺砌文件读取与内置铺砌目录
"""
from .tiling_reader import parse_tiling, read_tiling_file
from .catalog import TilingCatalog, BuiltinInfo, BuiltinLookupError, builtin_tiling, list_builtins

__all__ = [
    'parse_tiling',
    'read_tiling_file',
    'TilingCatalog',
    'BuiltinInfo',
    'BuiltinLookupError',
    'builtin_tiling',
    'list_builtins'
]
