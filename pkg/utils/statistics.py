"""
统计分析模块

按总大小和顶点汇总理想计数。
"""
from typing import Dict, Any, List

import pandas as pd

from models.ideal import SeriesByDim
from .logger import get_logger


class StatisticsError(Exception):
    """统计分析异常类"""
    pass


class SeriesStatistics:
    """SeriesByDim 的汇总表"""

    def __init__(self, series: SeriesByDim):
        self.series = series
        self.logger = get_logger(__name__)

    def frame(self) -> pd.DataFrame:
        """每个维数向量一行: size, x0..x{r-1}, count"""
        n = self.series.vertex_count
        rows = [[alpha.total, *alpha.entries, count] for alpha, count in self.series.items()]
        columns = ['size'] + [f'x{i}' for i in range(n)] + ['count']
        return pd.DataFrame(rows, columns=columns)

    def by_size(self) -> pd.DataFrame:
        """
        每个总大小一行: 维数向量个数、系数和，以及各顶点的加权总维数
        """
        df = self.frame()
        sizes = pd.DataFrame({'size': range(self.series.max_size + 1)})
        if df.empty:
            sizes['terms'] = 0
            sizes['count'] = 0
            return sizes
        weighted = df.copy()
        for col in [c for c in df.columns if c.startswith('x')]:
            weighted[col] = df[col] * df['count']
        summary = weighted.groupby('size').agg(
            terms=('count', 'size'),
            count=('count', 'sum'),
            **{col: (col, 'sum') for col in df.columns if col.startswith('x')}
        ).reset_index()
        result = sizes.merge(summary, on='size', how='left').fillna(0)
        return result.astype({c: 'int64' for c in result.columns})

    def get_summary(self) -> Dict[str, Any]:
        """汇总信息"""
        try:
            table = self.by_size()
            return {
                'vertex': self.series.vertex,
                'max_size': self.series.max_size,
                'signed': self.series.signed,
                'authoritative': self.series.authoritative,
                'terms': int(table['terms'].sum()),
                'total': int(table['count'].sum()),
            }
        except Exception as e:
            self.logger.error(f"统计汇总失败: {str(e)}", exc_info=True)
            raise StatisticsError(f"统计汇总失败: {str(e)}")

    def to_lines(self) -> List[str]:
        """注释行形式的汇总表，附加在命令输出之后"""
        table = self.by_size()
        return ["# " + line for line in table.to_string(index=False).splitlines()]
