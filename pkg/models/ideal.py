from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .cover import PathClass
from .tiling import DimVector


@dataclass(frozen=True)
class Ideal:
    """路径偏序的有限理想 Ω 及其维数向量 Ω̄"""
    elements: FrozenSet[PathClass]
    dim_vector: DimVector

    @classmethod
    def from_elements(cls, elements: Iterable[PathClass], vertex_count: int) -> 'Ideal':
        elems = frozenset(elements)
        counts = [0] * vertex_count
        for c in elems:
            counts[c.vertex] += 1
        return cls(elems, DimVector(tuple(counts)))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, c: PathClass) -> bool:
        return c in self.elements

    def heights(self) -> Dict:
        """每个覆盖顶点上的元素个数 |Ω_v|"""
        h: Dict = {}
        for c in self.elements:
            h[c.end] = h.get(c.end, 0) + 1
        return h

    def serialize(self) -> str:
        """规范序列化: 元素排序后拼接"""
        return ";".join(str(c) for c in sorted(self.elements))

    def validate(self) -> List[str]:
        """检查维数向量与元素是否一致"""
        errors = []
        counts = [0] * len(self.dim_vector)
        for c in self.elements:
            if c.vertex >= len(counts):
                errors.append(f"元素 {c} 的顶点超出范围")
                continue
            counts[c.vertex] += 1
        if tuple(counts) != self.dim_vector.entries:
            errors.append("维数向量与元素计数不一致")
        return errors


@dataclass
class SeriesByDim:
    """按维数向量分级的计数: Z^{i0}(A) 或 Z_DT^{i0}(A) 的系数"""
    vertex_count: int
    vertex: int
    max_size: int
    signed: bool = False
    coefficients: Dict[DimVector, int] = field(default_factory=dict)
    authoritative: bool = True

    def add(self, alpha: DimVector, count: int = 1) -> None:
        if len(alpha) != self.vertex_count:
            raise ValueError("维数向量长度与顶点数不一致")
        self.coefficients[alpha] = self.coefficients.get(alpha, 0) + count

    def merge(self, other: 'SeriesByDim') -> 'SeriesByDim':
        """逐系数相加（并行子树合并）"""
        for alpha, count in other.coefficients.items():
            self.add(alpha, count)
        self.authoritative = self.authoritative and other.authoritative
        return self

    def __getitem__(self, alpha: DimVector) -> int:
        return self.coefficients.get(alpha, 0)

    def items(self) -> List[Tuple[DimVector, int]]:
        """按 (总次数, 字典序 α) 排序的非零项"""
        return sorted(((a, c) for a, c in self.coefficients.items() if c != 0),
                      key=lambda item: item[0].sort_key())

    def by_size(self) -> List[int]:
        """各总次数上的系数和，0..max_size"""
        sizes = [0] * (self.max_size + 1)
        for alpha, count in self.coefficients.items():
            if alpha.total <= self.max_size:
                sizes[alpha.total] += count
        return sizes

    def header(self) -> str:
        return (f"# vertex={self.vertex} max_size={self.max_size} "
                f"signed={'true' if self.signed else 'false'}")

    def to_text(self) -> str:
        lines = [self.header()]
        if not self.authoritative:
            lines.append("# partial=true (resource limit reached, not authoritative)")
        for alpha, count in self.items():
            lines.append(f"alpha=<{alpha}> count={count}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> 'SeriesByDim':
        """解析 to_text 的输出"""
        header: Optional[Dict[str, str]] = None
        rows: List[Tuple[DimVector, int]] = []
        authoritative = True
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if body.startswith("vertex="):
                    header = dict(part.split("=", 1) for part in body.split())
                elif body.startswith("partial=true"):
                    authoritative = False
                continue
            alpha_part, count_part = line.split()
            entries = alpha_part[len("alpha=<"):-1]
            alpha = DimVector(tuple(int(e) for e in entries.split(",")))
            rows.append((alpha, int(count_part[len("count="):])))
        if header is None:
            raise ValueError("缺少级数头部行")
        n = len(rows[0][0]) if rows else 0
        series = cls(n, int(header['vertex']), int(header['max_size']),
                     header.get('signed') == 'true', authoritative=authoritative)
        for alpha, count in rows:
            series.add(alpha, count)
        return series

    def equals(self, other: 'SeriesByDim') -> bool:
        mine = {a: c for a, c in self.coefficients.items() if c != 0}
        theirs = {a: c for a, c in other.coefficients.items() if c != 0}
        return mine == theirs
