"""
整数矩阵的 Smith 标准形

基于扩展 Euclid 消元，使用 numpy object 数组保存任意精度整数。
返回 D = L·A·R，同时维护 R 的逆矩阵，供权格坐标和截面使用。
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SNFResult:
    """Smith 标准形结果

    diagonal: D 的对角元 d_1 | d_2 | ...（只含非零项）
    left, right, right_inverse: 幺模矩阵 L, R, R⁻¹
    """
    diagonal: Tuple[int, ...]
    left: np.ndarray
    right: np.ndarray
    right_inverse: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> Tuple[int, ...]:
        """大于1的不变因子"""
        return tuple(d for d in self.diagonal if d > 1)


def _identity(n: int) -> np.ndarray:
    eye = np.zeros((n, n), dtype=object)
    for i in range(n):
        eye[i, i] = 1
    return eye


class SmithNormalForm:
    """
    Smith 标准形计算类

    Parameters
    ----------
    matrix: 整数矩阵 (m, n)，m 可以为 0
    """

    def __init__(self, matrix: Sequence[Sequence[int]], columns: Optional[int] = None):
        rows = [list(r) for r in matrix]
        n = columns if columns is not None else (len(rows[0]) if rows else 0)
        self.A = np.zeros((len(rows), n), dtype=object)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("矩阵各行长度不一致")
            for j, value in enumerate(row):
                self.A[i, j] = int(value)
        self.left = _identity(self.num_row)
        self.right = _identity(self.num_column)
        self.right_inverse = _identity(self.num_column)

    @property
    def num_row(self) -> int:
        return self.A.shape[0]

    @property
    def num_column(self) -> int:
        return self.A.shape[1]

    # 初等变换；列变换同步更新 R⁻¹

    def _swap_rows(self, a: int, b: int) -> None:
        if a != b:
            self.A[[a, b]] = self.A[[b, a]]
            self.left[[a, b]] = self.left[[b, a]]

    def _swap_columns(self, a: int, b: int) -> None:
        if a != b:
            self.A[:, [a, b]] = self.A[:, [b, a]]
            self.right[:, [a, b]] = self.right[:, [b, a]]
            self.right_inverse[[a, b]] = self.right_inverse[[b, a]]

    def _add_row(self, target: int, source: int, k: int) -> None:
        self.A[target, :] = self.A[target, :] + k * self.A[source, :]
        self.left[target, :] = self.left[target, :] + k * self.left[source, :]

    def _add_column(self, target: int, source: int, k: int) -> None:
        self.A[:, target] = self.A[:, target] + k * self.A[:, source]
        self.right[:, target] = self.right[:, target] + k * self.right[:, source]
        self.right_inverse[source, :] = self.right_inverse[source, :] - k * self.right_inverse[target, :]

    def _negate_row(self, i: int) -> None:
        self.A[i, :] = -self.A[i, :]
        self.left[i, :] = -self.left[i, :]

    def _nonzero_min_abs(self, s: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(s, self.num_row):
            for j in range(s, self.num_column):
                value = self.A[i, j]
                if value != 0 and (best is None or abs(value) < abs(self.A[best[0], best[1]])):
                    best = (i, j)
        return best

    def _clear_cross(self, s: int) -> bool:
        """消去第 s 行和第 s 列；若余数非零则换入更小的主元并返回 False"""
        for i in range(s + 1, self.num_row):
            if self.A[i, s] != 0:
                self._add_row(i, s, -(self.A[i, s] // self.A[s, s]))
                if self.A[i, s] != 0:
                    self._swap_rows(s, i)
                    return False
        for j in range(s + 1, self.num_column):
            if self.A[s, j] != 0:
                self._add_column(j, s, -(self.A[s, j] // self.A[s, s]))
                if self.A[s, j] != 0:
                    self._swap_columns(s, j)
                    return False
        return True

    def _find_non_divisible(self, s: int) -> Optional[int]:
        pivot = self.A[s, s]
        for i in range(s + 1, self.num_row):
            for j in range(s + 1, self.num_column):
                if self.A[i, j] % pivot != 0:
                    return i
        return None

    def compute(self) -> SNFResult:
        diagonal = []
        for s in range(min(self.num_row, self.num_column)):
            pos = self._nonzero_min_abs(s)
            if pos is None:
                break
            self._swap_rows(s, pos[0])
            self._swap_columns(s, pos[1])
            while True:
                if not self._clear_cross(s):
                    continue
                row = self._find_non_divisible(s)
                if row is None:
                    break
                # 把不可整除的行加到主元行，下一轮得到更小的余数
                self._add_row(s, row, 1)
            if self.A[s, s] < 0:
                self._negate_row(s)
            diagonal.append(int(self.A[s, s]))

        logger.debug(f"Smith 标准形: {self.num_row}x{self.num_column}, 不变因子 {diagonal}")
        return SNFResult(tuple(diagonal), self.left, self.right, self.right_inverse)


def smith_normal_form(matrix: Sequence[Sequence[int]], columns: Optional[int] = None) -> SNFResult:
    """计算 Smith 标准形（columns 用于零行矩阵）"""
    return SmithNormalForm(matrix, columns).compute()
