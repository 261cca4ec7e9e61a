"""
命令行界面模块
"""
from .cli import run, build_parser

__all__ = ['run', 'build_parser']
