# export/tsv_export.py
"""
TSV 与纯文本导出
"""

import csv
from typing import List, Any, Optional

from .base_export import BaseExporter, ExportError


class TSVExporter(BaseExporter):
    """TSV导出器类: '#' 开头的注释行之后是表头和数据行"""

    def __init__(self, export_dir: Optional[str] = None, encoding: str = 'utf-8', delimiter: str = '\t'):
        super().__init__(export_dir, encoding)
        self.delimiter = delimiter
        self.line_terminator = '\n'

    def export_data(self, headers: List[str], data: List[List[Any]],
                    path: Optional[str] = None, comments: Optional[List[str]] = None,
                    filename_prefix: str = "export") -> str:
        """
        导出数据到TSV文件

        Args:
            headers: 表头列表
            data: 数据列表
            path: 目标文件；为 None 时写入导出目录
            comments: 写在表头之前的注释行（不含 '#'）
            filename_prefix: 文件名前缀

        Raises:
            ExportError: 导出过程中的错误
        """
        self._validate_data(headers, data)
        filepath = self._resolve_path(path, filename_prefix, 'tsv')
        try:
            with open(filepath, 'w', encoding=self.encoding, newline='') as f:
                for line in comments or []:
                    f.write(f"# {line}{self.line_terminator}")
                writer = csv.writer(f, delimiter=self.delimiter, lineterminator=self.line_terminator)
                writer.writerow(headers)
                for row in data:
                    writer.writerow([self.format_cell_value(cell) for cell in row])
        except OSError as e:
            self.logger.error(f"TSV导出失败: {str(e)}", exc_info=True)
            raise ExportError(f"TSV导出失败: {str(e)}")
        self.logger.info(f"TSV文件导出成功: {filepath}")
        return filepath


class TextExporter(BaseExporter):
    """把命令输出原样写入文件"""

    def export_data(self, headers: List[str], data: List[List[Any]],
                    path: Optional[str] = None, comments: Optional[List[str]] = None,
                    filename_prefix: str = "export") -> str:
        self._validate_data(headers, data)
        lines = [f"# {c}" for c in comments or []]
        lines += [" ".join(self.format_cell_value(cell) for cell in row) for row in data]
        return self.export_text("\n".join(lines) + "\n", path, filename_prefix)

    def export_text(self, text: str, path: Optional[str] = None, filename_prefix: str = "export") -> str:
        filepath = self._resolve_path(path, filename_prefix, 'txt')
        try:
            with open(filepath, 'w', encoding=self.encoding, newline='') as f:
                f.write(text)
        except OSError as e:
            self.logger.error(f"文本导出失败: {str(e)}", exc_info=True)
            raise ExportError(f"文本导出失败: {str(e)}")
        self.logger.info(f"文本导出成功: {filepath}")
        return filepath
