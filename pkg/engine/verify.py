"""
一致性验证

条件 C 的有界直接搜索、分级分解特征恒等式的数值检验，以及汇总的一致性报告。
"""
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from models.report import ConsistencyReport
from models.tiling import TilingSpec
from utils.logger import get_logger
from .cover import class_children, class_weight, mu_table
from .lattice import (LatticeError, PositivityCertificate, WeightLattice, positivity_certificate,
                      weight_lattice)
from .lp import InfeasibleError
from .matching import (is_non_degenerate, perfect_matchings, r_charge, r_charge_residuals,
                       reference_matching)

logger = get_logger(__name__)

Weight = Tuple[int, ...]


@dataclass
class ConditionCResult:
    """条件 C 搜索结果"""
    bound: int
    states: int = 0
    frontier: int = 0
    conclusive: bool = True
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def avoids_some_matching(matchings, content: Sequence[int], names: Sequence[str]) -> bool:
    """内容向量对应的路径是否与某个完美匹配不相交"""
    used = {n for c, n in zip(content, names) if c}
    return any(not (used & m.arrows) for m in matchings)


def check_condition_c(t: TilingSpec, cycle_bound: Optional[int] = None,
                      max_states: int = 200_000) -> ConditionCResult:
    """
    条件 C 的直接检验

    状态为 (起点, 当前终点, 仍被避开的完美匹配集合)。对每个避开某个完美匹配的路径，
    要求在终点处存在箭头 a 使 v·a 仍避开某个完美匹配，起点处对偶地存在箭头 b 使 b·v 亦然。
    路径长度上限为 cycle_bound 乘以最大面长；状态数超过 max_states 时报告不确定。
    """
    matchings = perfect_matchings(t)
    bound = cycle_bound if cycle_bound is not None else len(matchings)
    result = ConditionCResult(bound=bound)
    if not matchings:
        result.violations.append("no perfect matchings")
        return result

    full = frozenset(range(len(matchings)))
    avoid = {a.name: frozenset(i for i, m in enumerate(matchings) if a.name not in m.arrows)
             for a in t.arrows}
    out = {v: t.out_arrows(v) for v in range(t.vertex_count)}
    inc = {v: t.in_arrows(v) for v in range(t.vertex_count)}
    depth_limit = bound * max(len(f.cycle) for f in t.faces)

    State = Tuple[int, int, FrozenSet[int]]
    parent: Dict[State, Optional[Tuple[State, str]]] = {}
    level: List[State] = []
    for v in range(t.vertex_count):
        s = (v, v, full)
        parent[s] = None
        level.append(s)

    def witness(state: State) -> str:
        names = []
        cur = parent[state]
        while cur is not None:
            prev, name = cur
            names.append(name)
            cur = parent[prev]
        return " ".join(reversed(names)) or f"e{state[0]}"

    depth = 0
    while level:
        nxt: List[State] = []
        for state in level:
            source, current, support = state
            if not any(support & avoid[a.name] for a in out[current]):
                result.violations.append(f"path {witness(state)}: no arrow at the end keeps it shortest")
            if not any(support & avoid[b.name] for b in inc[source]):
                result.violations.append(f"path {witness(state)}: no arrow at the start keeps it shortest")
            for a in out[current]:
                narrowed = support & avoid[a.name]
                if not narrowed:
                    continue
                child = (source, a.dst, narrowed)
                if child in parent:
                    continue
                if depth >= depth_limit:
                    # 长度上限处仍有新状态
                    result.conclusive = False
                    result.frontier += 1
                    continue
                parent[child] = (state, a.name)
                nxt.append(child)
        if len(parent) > max_states:
            result.conclusive = False
            result.frontier = len(nxt)
            logger.warning(f"条件 C 搜索超出状态预算 {max_states}，前沿 {len(nxt)}")
            break
        level = nxt
        depth += 1

    result.states = len(parent)
    logger.info(f"{t.name}: 条件 C 检查 {result.states} 个状态, 违反 {len(result.violations)}")
    return result


@dataclass
class ResolutionCheck:
    """分解特征恒等式检验结果"""
    vertex: int
    degree_bound: int
    checked: int = 0
    failing_weight: Optional[Weight] = None
    residual: int = 0

    @property
    def ok(self) -> bool:
        return self.failing_weight is None


@dataclass(frozen=True)
class ResolutionSupports:
    """各顶点 P_j 的分级支撑（R-次数不超过 degree_bound 的路径类权）"""
    lattice: WeightLattice
    certificate: PositivityCertificate
    degree_bound: int
    supports: Dict[int, FrozenSet[Weight]] = field(hash=False, compare=False)


def _weights_up_to(mt, lattice: WeightLattice, cert: PositivityCertificate, bound: int) -> FrozenSet[Weight]:
    root = mt.root
    degree = {root: Fraction(0)}
    queue = deque([root])
    while queue:
        c = queue.popleft()
        for arrow, child in class_children(mt, c):
            d = degree[c] + cert.arrow_values[arrow.name]
            if d <= bound and child not in degree:
                degree[child] = d
                queue.append(child)
    return frozenset(class_weight(mt, lattice, c) for c in degree)


def resolution_supports(t: TilingSpec, degree_bound: int) -> ResolutionSupports:
    """为每个顶点构造 μ 表并收集支撑"""
    lattice = weight_lattice(t)
    cert = positivity_certificate(lattice)
    m0 = reference_matching(t)
    steps = floor(Fraction(degree_bound) / min(cert.arrow_values.values()))
    radius = (steps + 1) * t.max_shift + 2
    supports = {}
    for j in range(t.vertex_count):
        mt = mu_table(t, m0, j, radius)
        supports[j] = _weights_up_to(mt, lattice, cert, degree_bound)
        logger.debug(f"P_{j}: {len(supports[j])} 个权, 半径 {radius}")
    return ResolutionSupports(lattice, cert, degree_bound, supports)


def verify_resolution_character(t: TilingSpec, i: int, degree_bound: int,
                                supports: Optional[ResolutionSupports] = None) -> ResolutionCheck:
    """
    在 R-次数不超过 degree_bound 的每个权 λ 上检验

        f_i(λ−ω̄) − Σ_{b:k→i} f_k(λ+wt(b)−ω̄) + Σ_{a:i→j} f_j(λ−wt(a)) − f_i(λ) + δ_{λ,0} = 0

    其中 f_j 为 P_j 的支撑指示函数。返回第一个失败的权（按 R-次数再按坐标排序）。
    """
    if not 0 <= i < t.vertex_count:
        raise ValueError(f"vertex {i} out of range 0..{t.vertex_count - 1}")
    data = supports if supports is not None else resolution_supports(t, degree_bound)
    if data.degree_bound < degree_bound:
        raise ValueError("supports were computed for a smaller degree bound")
    lattice, cert, supp = data.lattice, data.certificate, data.supports
    omega = lattice.omega_bar
    wt = lattice.arrow_weight
    zero = lattice.zero()

    def sub(a: Weight, b: Weight) -> Weight:
        return tuple(x - y for x, y in zip(a, b))

    def add(a: Weight, b: Weight) -> Weight:
        return tuple(x + y for x, y in zip(a, b))

    def f(j: int, lam: Weight) -> int:
        return 1 if lam in supp[j] else 0

    in_arrows = t.in_arrows(i)
    out_arrows = t.out_arrows(i)

    candidates = {zero}
    candidates.update(supp[i])
    candidates.update(add(w, omega) for w in supp[i])
    for a in out_arrows:
        candidates.update(add(w, wt[a.name]) for w in supp[a.dst])
    for b in in_arrows:
        candidates.update(add(sub(w, wt[b.name]), omega) for w in supp[b.src])

    ordered = sorted((cert.evaluate(lam), lam) for lam in candidates)
    result = ResolutionCheck(i, degree_bound)
    for rdeg, lam in ordered:
        if rdeg > degree_bound:
            break
        total = f(i, sub(lam, omega))
        total -= sum(f(b.src, sub(add(lam, wt[b.name]), omega)) for b in in_arrows)
        total += sum(f(a.dst, sub(lam, wt[a.name])) for a in out_arrows)
        total -= f(i, lam)
        total += 1 if lam == zero else 0
        result.checked += 1
        if total != 0:
            result.failing_weight = lam
            result.residual = total
            logger.warning(f"分解特征在顶点 {i} 权 {lam} 处失败: 残差 {total}")
            break
    return result


def consistency_report(t: TilingSpec, condition_c: bool = False, cycle_bound: Optional[int] = None,
                       max_states: int = 200_000, resolution_bound: Optional[int] = None) -> ConsistencyReport:
    """
    汇总非退化、权格无挠、R-荷可行性；失败只记录不抛出

    可选: condition_c 运行条件 C 搜索；resolution_bound 给定时对每个顶点检验分解特征。
    """
    report = ConsistencyReport(tiling=t.name)

    flag, uncovered = is_non_degenerate(t)
    report.non_degenerate = flag
    report.uncovered = uncovered
    if uncovered:
        report.violations.append(f"arrows in no perfect matching: {','.join(uncovered)}")

    positive = False
    try:
        lattice = weight_lattice(t)
        report.lattice_free = True
        report.lattice_rank = lattice.lattice_rank
        try:
            positivity_certificate(lattice)
            positive = True
        except InfeasibleError:
            report.violations.append("no strictly positive functional on the weight lattice")
    except LatticeError as e:
        report.violations.append(str(e))

    try:
        charge = r_charge(t)
        report.r_charge_feasible = True
        report.r_charge_slack = str(charge.slack)
        report.violations.extend(r_charge_residuals(t, charge.values))
    except InfeasibleError:
        report.violations.append("R-charge linear program is infeasible")

    if condition_c:
        result = check_condition_c(t, cycle_bound, max_states)
        report.condition_c_checked = True
        report.condition_c_bound = result.bound
        report.condition_c_conclusive = result.conclusive
        report.condition_c_ok = result.ok
        report.violations.extend(result.violations)

    if resolution_bound is not None and positive:
        supports = resolution_supports(t, resolution_bound)
        report.resolution_bound = resolution_bound
        for i in range(t.vertex_count):
            check = verify_resolution_character(t, i, resolution_bound, supports=supports)
            if not check.ok:
                report.resolution_failures.append(f"{i}@{','.join(map(str, check.failing_weight))}")
        report.violations.extend(f"resolution character fails at vertex {f}" for f in report.resolution_failures)

    logger.info(f"{t.name}: 一致性证书 {'通过' if report.certified else '未通过'}")
    return report
