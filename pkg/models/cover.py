"""
万有覆盖箭图上的对象: 覆盖顶点、覆盖箭头和路径类 (端点, ω 指数)
"""
from dataclasses import dataclass
from typing import Tuple

Cell = Tuple[int, int]


@dataclass(frozen=True, order=True)
class CoverVertex:
    """覆盖顶点 (箭图顶点, 基本区域平移)"""
    vertex: int
    cell: Cell

    def shifted(self, shift: Cell, vertex: int) -> 'CoverVertex':
        return CoverVertex(vertex, (self.cell[0] + shift[0], self.cell[1] + shift[1]))

    @property
    def radius(self) -> int:
        """到原点格子的 Chebyshev 距离"""
        return max(abs(self.cell[0]), abs(self.cell[1]))

    def __str__(self) -> str:
        return f"{self.vertex}@({self.cell[0]},{self.cell[1]})"


@dataclass(frozen=True, order=True)
class CoverArrow:
    """覆盖箭头: 基本箭头名称加上其起点所在格子"""
    name: str
    cell: Cell

    def __str__(self) -> str:
        return f"{self.name} {self.cell[0]} {self.cell[1]}"


@dataclass(frozen=True, order=True)
class PathClass:
    """路径偏序 Δ_{i0} 的元素: 最短路径之上的 ω 指数 k"""
    end: CoverVertex
    k: int = 0

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("路径类的 ω 指数必须非负")

    @property
    def vertex(self) -> int:
        return self.end.vertex

    def __str__(self) -> str:
        return f"({self.end},{self.k})"
