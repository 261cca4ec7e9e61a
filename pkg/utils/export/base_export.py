# export/base_export.py
"""
导出功能的基类
"""

from abc import ABC, abstractmethod
import os
from typing import List, Any, Optional
from datetime import datetime
from fractions import Fraction
from ..logger import get_logger


class ExportError(Exception):
    """导出异常基类"""
    pass


class DataValidationError(ExportError):
    """数据验证错误"""
    pass


class FileOperationError(ExportError):
    """文件操作错误"""
    pass


class BaseExporter(ABC):
    """导出器基类"""

    def __init__(self, export_dir: Optional[str] = None, encoding: str = 'utf-8'):
        """
        Args:
            export_dir: 未指定目标文件时使用的导出目录（默认 exports/）
            encoding: 文件编码
        """
        self.logger = get_logger(__name__)
        self.export_dir = export_dir or 'exports'
        self.encoding = encoding

    def _resolve_path(self, path: Optional[str], prefix: str, extension: str) -> str:
        """目标路径: 显式给出的文件，或导出目录下带时间戳的文件"""
        try:
            if path is None:
                os.makedirs(self.export_dir, exist_ok=True)
                path = os.path.join(self.export_dir, self._get_filename(prefix, extension))
            else:
                parent = os.path.dirname(os.path.abspath(path))
                os.makedirs(parent, exist_ok=True)
            return path
        except OSError as e:
            raise FileOperationError(f"创建导出目录失败: {str(e)}")

    def _get_filename(self, prefix: str, extension: str) -> str:
        """生成导出文件名"""
        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        return f"{prefix}_{timestamp}.{extension}"

    def _validate_data(self, headers: List[str], data: List[List[Any]]) -> bool:
        """验证数据有效性"""
        if not headers:
            raise DataValidationError("表头不能为空")
        for row in data:
            if len(row) != len(headers):
                raise DataValidationError("数据列数与表头不匹配")
        return True

    @abstractmethod
    def export_data(self, headers: List[str], data: List[List[Any]],
                    path: Optional[str] = None, comments: Optional[List[str]] = None,
                    filename_prefix: str = "export") -> str:
        """
        导出表格数据

        Returns:
            str: 导出文件的完整路径

        Raises:
            ExportError: 导出过程中的错误
        """
        pass

    def format_cell_value(self, value: Any) -> str:
        """格式化单元格值，有理数写成 p/q"""
        if value is None:
            return ""
        if isinstance(value, Fraction):
            return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
        return str(value)
