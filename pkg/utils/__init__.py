# utils/__init__.py
"""
工具模块初始化文件

日志、命令行错误处理、导出与统计。
"""
# 版本信息
__version__ = '1.0.0'

# 导出子模块
from .logger import setup_logger, get_logger, log_error


__all__ = [
    'setup_logger',
    'get_logger',
    'log_error'
]
