# utils/export/__init__.py
"""
导出模块初始化文件

提供数据导出功能的接口。
"""
from .tsv_export import TSVExporter, TextExporter
from .base_export import ExportError, FileOperationError, DataValidationError

__all__ = [
    'TSVExporter',
    'TextExporter',
    'ExportError',
    'FileOperationError',
    'DataValidationError'
]
