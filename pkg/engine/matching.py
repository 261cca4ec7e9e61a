"""
完美匹配枚举与 R-荷

对偶表述: 箭头集合与箭图的每个面恰好相交一次，用精确覆盖回溯求解
（列 = 面，行 = 箭头，每个箭头覆盖它所在的两个面）。
"""
from collections import Counter
from fractions import Fraction
from typing import Dict, Hashable, Iterator, List, Sequence, Set, Tuple

from models.matching import Matching, RCharge
from models.tiling import TilingSpec
from utils.logger import get_logger
from .lp import InfeasibleError, LinearProgram, maximize_min_slack

logger = get_logger(__name__)


class ExactCover:
    """
    精确覆盖回溯（Algorithm X，字典-集合表示）

    每次选择候选行最少的列（最受约束的面）分支。子类可覆写 _admit/_release 在分支前剪枝。
    """

    def __init__(self, columns: Sequence[Hashable], rows: Dict[Hashable, Sequence[Hashable]]):
        self.rows = {r: tuple(cols) for r, cols in rows.items()}
        self.columns: Dict[Hashable, Set[Hashable]] = {c: set() for c in columns}
        for r, cols in self.rows.items():
            for c in cols:
                self.columns[c].add(r)

    def solutions(self) -> Iterator[List[Hashable]]:
        yield from self._search([])

    def _search(self, partial: List[Hashable]) -> Iterator[List[Hashable]]:
        if not self.columns:
            yield list(partial)
            return
        column = min(self.columns, key=lambda c: (len(self.columns[c]), str(c)))
        for r in sorted(self.columns[column], key=str):
            if not self._admit(r):
                continue
            partial.append(r)
            removed = self._select(r)
            yield from self._search(partial)
            self._deselect(r, removed)
            partial.pop()
            self._release(r)

    def _admit(self, r: Hashable) -> bool:
        return True

    def _release(self, r: Hashable) -> None:
        pass

    def _select(self, r: Hashable) -> List[Set[Hashable]]:
        removed = []
        for c in self.rows[r]:
            for other in self.columns[c]:
                for c2 in self.rows[other]:
                    if c2 != c:
                        self.columns[c2].discard(other)
            removed.append(self.columns.pop(c))
        return removed

    def _deselect(self, r: Hashable, removed: List[Set[Hashable]]) -> None:
        for c in reversed(self.rows[r]):
            self.columns[c] = removed.pop()
            for other in self.columns[c]:
                for c2 in self.rows[other]:
                    if c2 != c:
                        self.columns[c2].add(other)


def _face_incidence(t: TilingSpec) -> Dict[str, List[int]]:
    incidence: Dict[str, List[int]] = {a.name: [] for a in t.arrows}
    for i, face in enumerate(t.faces):
        for name in face.cycle:
            incidence[name].append(i)
    return incidence


def perfect_matchings(t: TilingSpec) -> List[Matching]:
    """全部完美匹配，按排序后的箭头名列表字典序输出"""
    incidence = _face_incidence(t)
    solver = ExactCover(range(len(t.faces)), incidence)
    found = [Matching(frozenset(sol)) for sol in solver.solutions()]
    found.sort(key=lambda m: m.sort_key())
    logger.debug(f"{t.name}: {len(found)} 个完美匹配")
    return found


def matching_counts(t: TilingSpec) -> Dict[str, int]:
    """每个箭头属于多少个完美匹配"""
    counts = Counter({a.name: 0 for a in t.arrows})
    for m in perfect_matchings(t):
        counts.update(m.arrows)
    return dict(counts)


def is_non_degenerate(t: TilingSpec) -> Tuple[bool, List[str]]:
    """非退化: 每个箭头都属于某个完美匹配；返回 (标志, 未覆盖箭头)"""
    counts = matching_counts(t)
    uncovered = [a.name for a in t.arrows if counts[a.name] == 0]
    return not uncovered, uncovered


def reference_matching(t: TilingSpec) -> Matching:
    """字典序最小的完美匹配 M₀"""
    matchings = perfect_matchings(t)
    if not matchings:
        raise ValueError(f"tiling {t.name} has no perfect matching")
    return matchings[0]


def _vertex_ends(t: TilingSpec) -> List[Counter]:
    """每个顶点处的箭头端点计数（圈计两次）"""
    ends = [Counter() for _ in range(t.vertex_count)]
    for a in t.arrows:
        ends[a.src][a.name] += 1
        ends[a.dst][a.name] += 1
    return ends


def r_charge(t: TilingSpec) -> RCharge:
    """
    精确线性规划求 R-荷

    max t  s.t.  t <= R_a <= 1 - t,  每个面 Σ R_a = 2,  每个顶点 Σ_{端点} (1 - R_a) = 2

    Raises:
        InfeasibleError: 最优 t <= 0
    """
    n = len(t.arrows)
    index = t.arrow_index
    lp = LinearProgram(n + 1)
    slack = n
    for a in range(n):
        lp.add_constraint({a: 1, slack: -1}, '>=', 0)
        lp.add_constraint({a: 1, slack: 1}, '<=', 1)
    for face in t.faces:
        lp.add_constraint({index[a]: c for a, c in Counter(face.cycle).items()}, '==', 2)
    for v, ends in enumerate(_vertex_ends(t)):
        degree = sum(ends.values())
        lp.add_constraint({index[a]: c for a, c in ends.items()}, '==', degree - 2)
    lp.set_objective({slack: 1})

    try:
        solution = maximize_min_slack(lp, slack)
    except InfeasibleError:
        logger.warning(f"{t.name}: R-荷不可行")
        raise
    values = {a.name: solution.values[i] for i, a in enumerate(t.arrows)}
    logger.info(f"{t.name}: R-荷可行, 松弛 {solution.values[slack]}")
    return RCharge(values, solution.values[slack])


def r_charge_residuals(t: TilingSpec, values: Dict[str, Fraction]) -> List[str]:
    """R-荷两族方程的非零残差，用于报告"""
    out = []
    for i, face in enumerate(t.faces):
        residual = sum(values[a] for a in face.cycle) - 2
        if residual != 0:
            out.append(f"face {i} residual {residual}")
    for v, ends in enumerate(_vertex_ends(t)):
        residual = sum(c * (1 - values[a]) for a, c in ends.items()) - 2
        if residual != 0:
            out.append(f"vertex {v} residual {residual}")
    return out
