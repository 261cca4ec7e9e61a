"""
精确有理数线性规划

两阶段单纯形法，全部使用 Fraction 运算，Bland 规则防止循环。
所有变量非负，目标为最大化。
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from utils.logger import get_logger

logger = get_logger(__name__)

Number = Fraction


class InfeasibleError(Exception):
    """线性规划不可行（或最优松弛不为正）"""

    def __init__(self, message: str, optimum: Optional[Fraction] = None):
        super().__init__(message)
        self.optimum = optimum


class UnboundedError(Exception):
    """线性规划无界"""
    pass


@dataclass
class LPSolution:
    """最优解: 目标值与各变量取值"""
    value: Fraction
    values: List[Fraction]


@dataclass
class LinearProgram:
    """
    线性规划模型

    max c·x  s.t.  每条约束 a·x (<=|>=|==) b,  x >= 0
    """
    num_vars: int
    objective: List[Fraction] = field(default_factory=list)
    constraints: List[Tuple[List[Fraction], str, Fraction]] = field(default_factory=list)

    def __post_init__(self):
        if not self.objective:
            self.objective = [Fraction(0)] * self.num_vars

    def set_objective(self, coeffs: Dict[int, Number]) -> None:
        self.objective = [Fraction(0)] * self.num_vars
        for j, c in coeffs.items():
            self.objective[j] = Fraction(c)

    def add_constraint(self, coeffs: Dict[int, Number], sense: str, rhs: Number) -> None:
        if sense not in ('<=', '>=', '=='):
            raise ValueError(f"未知的约束类型: {sense}")
        row = [Fraction(0)] * self.num_vars
        for j, c in coeffs.items():
            row[j] += Fraction(c)
        self.constraints.append((row, sense, Fraction(rhs)))

    def solve(self) -> LPSolution:
        return _TwoPhaseSimplex(self).run()


class _TwoPhaseSimplex:
    """单纯形表求解器"""

    def __init__(self, lp: LinearProgram):
        self.n = lp.num_vars
        self.objective = lp.objective
        rows = []
        for coeffs, sense, rhs in lp.constraints:
            if rhs < 0:
                coeffs = [-c for c in coeffs]
                rhs = -rhs
                sense = {'<=': '>=', '>=': '<=', '==': '=='}[sense]
            rows.append((coeffs, sense, rhs))

        n_slack = sum(1 for _, s, _ in rows if s != '==')
        n_art = sum(1 for _, s, _ in rows if s != '<=')
        self.art_start = self.n + n_slack
        width = self.art_start + n_art

        self.tableau: List[List[Fraction]] = []
        self.basis: List[int] = []
        slack_col, art_col = self.n, self.art_start
        for coeffs, sense, rhs in rows:
            row = list(coeffs) + [Fraction(0)] * (width - self.n) + [rhs]
            if sense == '<=':
                row[slack_col] = Fraction(1)
                self.basis.append(slack_col)
                slack_col += 1
            else:
                if sense == '>=':
                    row[slack_col] = Fraction(-1)
                    slack_col += 1
                row[art_col] = Fraction(1)
                self.basis.append(art_col)
                art_col += 1
            self.tableau.append(row)
        self.width = width

    def _objective_row(self, costs: Sequence[Fraction]) -> List[Fraction]:
        """检验数行: -c_j 加上基变量行的组合，末项为当前目标值"""
        obj = [-c for c in costs] + [Fraction(0)]
        for i, b in enumerate(self.basis):
            cb = costs[b]
            if cb != 0:
                row = self.tableau[i]
                obj = [o + cb * r for o, r in zip(obj, row)]
        return obj

    def _pivot(self, obj: List[Fraction], r: int, j: int) -> List[Fraction]:
        pivot_row = self.tableau[r]
        p = pivot_row[j]
        pivot_row = [v / p for v in pivot_row]
        self.tableau[r] = pivot_row
        for i, row in enumerate(self.tableau):
            if i != r and row[j] != 0:
                f = row[j]
                self.tableau[i] = [a - f * b for a, b in zip(row, pivot_row)]
        if obj[j] != 0:
            f = obj[j]
            obj = [a - f * b for a, b in zip(obj, pivot_row)]
        self.basis[r] = j
        return obj

    def _iterate(self, obj: List[Fraction], columns: int) -> List[Fraction]:
        while True:
            entering = next((j for j in range(columns) if obj[j] < 0), None)
            if entering is None:
                return obj
            best: Optional[Tuple[Fraction, int, int]] = None
            for i, row in enumerate(self.tableau):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    key = (ratio, self.basis[i], i)
                    if best is None or key < best:
                        best = key
            if best is None:
                raise UnboundedError("linear program is unbounded")
            obj = self._pivot(obj, best[2], entering)

    def run(self) -> LPSolution:
        # 第一阶段: 最大化 -Σ 人工变量
        if self.width > self.art_start:
            phase1 = [Fraction(0)] * self.art_start + [Fraction(-1)] * (self.width - self.art_start)
            obj = self._iterate(self._objective_row(phase1), self.width)
            if obj[-1] < 0:
                raise InfeasibleError("linear program is infeasible", optimum=obj[-1])
            self._drive_out_artificials()

        # 第二阶段: 去掉人工列
        self.tableau = [row[:self.art_start] + [row[-1]] for row in self.tableau]
        self.width = self.art_start
        costs = list(self.objective) + [Fraction(0)] * (self.art_start - self.n)
        obj = self._iterate(self._objective_row(costs), self.width)

        values = [Fraction(0)] * self.n
        for i, b in enumerate(self.basis):
            if b < self.n:
                values[b] = self.tableau[i][-1]
        logger.debug(f"单纯形求解完成: 目标值 {obj[-1]}")
        return LPSolution(obj[-1], values)

    def _drive_out_artificials(self) -> None:
        """把留在基中的（取值为零的）人工变量换出，冗余行删除"""
        i = 0
        while i < len(self.tableau):
            if self.basis[i] >= self.art_start:
                row = self.tableau[i]
                j = next((j for j in range(self.art_start) if row[j] != 0), None)
                if j is None:
                    del self.tableau[i]
                    del self.basis[i]
                    continue
                self._pivot([Fraction(0)] * (self.width + 1), i, j)
            i += 1


def maximize_min_slack(lp: LinearProgram, slack_index: int) -> LPSolution:
    """
    求解并要求松弛变量的最优值严格为正

    Raises:
        InfeasibleError: 约束不可行或最优松弛 <= 0
    """
    try:
        solution = lp.solve()
    except InfeasibleError:
        logger.info("线性规划不可行")
        raise
    if solution.values[slack_index] <= 0:
        raise InfeasibleError(f"optimal slack {solution.values[slack_index]} is not positive",
                              optimum=solution.values[slack_index])
    return solution
