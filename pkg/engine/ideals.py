"""
路径偏序 Δ_{i₀} 的有限理想枚举与配分函数

规范深度优先: 全序 (R-次数, 顶点, dx, dy, k) 延拓偏序，每步只添加大于上一个元素的可添加元素，
因此每个理想恰好出现一次（其元素按全序排列的唯一序列）。
"""
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from models.cover import PathClass
from models.ideal import Ideal, SeriesByDim
from models.tiling import DimVector, TilingSpec, ringel_form
from utils.logger import get_logger
from .cover import CoverContext, MuTable, build_cover, class_children, class_predecessors
from .lattice import PositivityCertificate

logger = get_logger(__name__)

OrderKey = Tuple[Fraction, int, int, int, int]


class ConsistencyError(Exception):
    """缺少一致性证书且未指定强制执行"""
    pass


class ResourceLimitError(Exception):
    """理想数量或时间预算耗尽；partial 为不具权威性的部分结果"""

    def __init__(self, message: str, partial: Optional[SeriesByDim] = None):
        super().__init__(message)
        self.partial = partial


@dataclass
class EnumerationLimits:
    """资源限制"""
    max_ideals: Optional[int] = None
    time_budget_seconds: Optional[float] = None


class _Budget:
    """所有工作线程共享的计数与计时"""

    def __init__(self, limits: Optional[EnumerationLimits] = None):
        self.limits = limits or EnumerationLimits()
        self.visited = 0
        self.started = time.monotonic()
        self._lock = threading.Lock()

    def tick(self) -> None:
        with self._lock:
            self.visited += 1
            visited = self.visited
        if self.limits.max_ideals is not None and visited > self.limits.max_ideals:
            raise ResourceLimitError(f"ideal count exceeded {self.limits.max_ideals}")
        if self.limits.time_budget_seconds is not None and visited % 4096 == 0:
            if time.monotonic() - self.started > self.limits.time_budget_seconds:
                raise ResourceLimitError(f"time budget of {self.limits.time_budget_seconds}s exceeded")


class ClassOrder:
    """路径类的全序键与前驱/后继缓存"""

    def __init__(self, mt: MuTable, cert: PositivityCertificate):
        self.mt = mt
        self.cert = cert
        self._end_degree: Dict = {}
        self._children: Dict[PathClass, Tuple[PathClass, ...]] = {}
        self._preds: Dict[PathClass, Tuple[PathClass, ...]] = {}
        self._keys: Dict[PathClass, OrderKey] = {}

    def key(self, c: PathClass) -> OrderKey:
        k = self._keys.get(c)
        if k is None:
            deg = self._end_degree.get(c.end)
            if deg is None:
                self.mt.mu_of(c.end)
                deg = self.cert.degree(self.mt.rep_content[c.end], self.mt.tiling.arrow_names)
                self._end_degree[c.end] = deg
            k = (deg + 2 * c.k, c.end.vertex, c.end.cell[0], c.end.cell[1], c.k)
            self._keys[c] = k
        return k

    def children(self, c: PathClass) -> Tuple[PathClass, ...]:
        kids = self._children.get(c)
        if kids is None:
            kids = tuple(sorted({child for _, child in class_children(self.mt, c)}, key=self.key))
            self._children[c] = kids
        return kids

    def predecessors(self, c: PathClass) -> Tuple[PathClass, ...]:
        preds = self._preds.get(c)
        if preds is None:
            preds = tuple({p for _, p in class_predecessors(self.mt, c)})
            self._preds[c] = preds
        return preds


class _IdealSearch:
    """规范 DFS；visit 回调接收 (当前元素集合, 维数向量计数)"""

    def __init__(self, order: ClassOrder, vertex_count: int, max_size: int, budget: _Budget):
        self.order = order
        self.n = vertex_count
        self.max_size = max_size
        self.budget = budget

    def _extend(self, members: Set[PathClass], x: PathClass, rest: List[PathClass]) -> List[PathClass]:
        """添加 x 之后的候选: rest 中的元素加上前驱全在理想中的 x 的后继"""
        fresh = [c for c in self.order.children(x)
                 if c not in members and all(p in members for p in self.order.predecessors(c))]
        if not fresh:
            return rest
        return sorted(rest + fresh, key=self.order.key)

    def run(self, members: Set[PathClass], counts: List[int], candidates: List[PathClass],
            visit: Callable[[Set[PathClass], List[int]], None]) -> None:
        self.budget.tick()
        visit(members, counts)
        if len(members) >= self.max_size:
            return
        for idx, x in enumerate(candidates):
            members.add(x)
            counts[x.vertex] += 1
            self.run(members, counts, self._extend(members, x, candidates[idx + 1:]), visit)
            counts[x.vertex] -= 1
            members.discard(x)


def _first_level(order: ClassOrder, root: PathClass) -> List[PathClass]:
    return [c for c in order.children(root) if set(order.predecessors(c)) <= {root}]


def enumerate_ideals(mt: MuTable, cert: PositivityCertificate, max_size: int,
                     limits: Optional[EnumerationLimits] = None) -> Iterator[Ideal]:
    """
    按规范 DFS 顺序产生全部大小不超过 max_size 的有限理想

    Raises:
        WindowError: 枚举触及窗口边界
        ResourceLimitError: 超出资源限制
    """
    if max_size < 0:
        raise ValueError("max_size must be non-negative")
    order = ClassOrder(mt, cert)
    n = mt.tiling.vertex_count
    found: List[Ideal] = []

    def collect(members: Set[PathClass], counts: List[int]) -> None:
        found.append(Ideal(frozenset(members), DimVector(tuple(counts))))

    search = _IdealSearch(order, n, max_size, _Budget(limits))
    # 生成器形式: 先物化再逐个产出，保持确定的 DFS 顺序
    search.run(set(), [0] * n, [mt.root] if max_size > 0 else [], collect)
    yield from found


def _series_of_subtree(order: ClassOrder, n: int, max_size: int, budget: _Budget,
                       root: PathClass, first: List[PathClass], idx: int, vertex: int) -> SeriesByDim:
    series = SeriesByDim(n, vertex, max_size)

    def count(members: Set[PathClass], counts: List[int]) -> None:
        series.add(DimVector(tuple(counts)))

    search = _IdealSearch(order, n, max_size, budget)
    x = first[idx]
    members = {root, x}
    counts = [0] * n
    counts[root.vertex] += 1
    counts[x.vertex] += 1
    try:
        candidates = search._extend(members, x, first[idx + 1:])
        search.run(members, counts, candidates, count)
    except ResourceLimitError as e:
        series.authoritative = False
        raise ResourceLimitError(str(e), series)
    return series


def ideal_series(ctx: CoverContext, max_size: int, threads: int = 1,
                 limits: Optional[EnumerationLimits] = None) -> SeriesByDim:
    """
    枚举理想并按维数向量计数

    第一层分裂: 空理想、{根}，以及以根的每个可添加后继开头的子树；子树可并行，按系数相加合并。
    """
    mt = ctx.table
    n = mt.tiling.vertex_count
    budget = _Budget(limits)
    total = SeriesByDim(n, mt.base.vertex, max_size)
    total.add(DimVector.zero(n))
    if max_size == 0:
        return total
    root = mt.root
    total.add(DimVector.unit(n, root.vertex))
    if max_size == 1:
        return total

    order = ClassOrder(mt, ctx.certificate)
    first = sorted(_first_level(order, root), key=order.key)
    tasks = range(len(first))
    started = time.monotonic()
    if threads > 1 and len(first) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_series_of_subtree, ClassOrder(mt, ctx.certificate), n, max_size,
                                   budget, root, first, idx, root.vertex) for idx in tasks]
            parts = []
            failure: Optional[ResourceLimitError] = None
            for fut in futures:
                try:
                    parts.append(fut.result())
                except ResourceLimitError as e:
                    failure = failure or e
                    if e.partial is not None:
                        parts.append(e.partial)
    else:
        parts, failure = [], None
        for idx in tasks:
            try:
                parts.append(_series_of_subtree(order, n, max_size, budget, root, first, idx, root.vertex))
            except ResourceLimitError as e:
                failure = e
                if e.partial is not None:
                    parts.append(e.partial)
                break

    for part in parts:
        total.merge(part)
    if failure is not None:
        total.authoritative = False
        logger.warning(f"枚举中止: {failure}")
        raise ResourceLimitError(str(failure), total)
    logger.info(f"理想枚举完成: max_size={max_size}, {sum(total.by_size())} 个理想, "
                f"{time.monotonic() - started:.2f}s")
    return total


def brute_force_series(mt: MuTable, max_size: int) -> SeriesByDim:
    """朴素枚举: 逐元素生长、按闭包过滤、去重；与全序无关，作为对照"""
    n = mt.tiling.vertex_count
    series = SeriesByDim(n, mt.base.vertex, max_size)
    series.add(DimVector.zero(n))
    if max_size == 0:
        return series
    level: Set[FrozenSet[PathClass]] = {frozenset([mt.root])}
    size = 1
    while level:
        for ideal in level:
            series.add(Ideal.from_elements(ideal, n).dim_vector)
        if size == max_size:
            break
        grown: Set[FrozenSet[PathClass]] = set()
        for ideal in level:
            for element in ideal:
                for _, child in class_children(mt, element):
                    if child in ideal:
                        continue
                    if all(p in ideal for _, p in class_predecessors(mt, child)):
                        grown.add(ideal | {child})
        level = grown
        size += 1
    return series


def is_downward_closed(mt: MuTable, elements: FrozenSet[PathClass]) -> bool:
    return all(p in elements for c in elements for _, p in class_predecessors(mt, c))


def dt_sign(t: TilingSpec, base_vertex: int, a: DimVector) -> int:
    """(−1)^{α_{i₀} + ⟨α,α⟩}"""
    exponent = a[base_vertex] + ringel_form(t, a, a)
    return 1 if exponent % 2 == 0 else -1


def require_certificate(t: TilingSpec, force: bool = False) -> None:
    """
    Raises:
        ConsistencyError: 一致性证书不成立且未强制
    """
    from .verify import consistency_report

    report = consistency_report(t)
    if report.certified:
        return
    if force:
        logger.warning(f"{t.name}: 一致性未认证，按 --force 继续计算")
        return
    raise ConsistencyError(f"tiling {t.name} is not certified consistent: "
                           + "; ".join(report.violations or ["certificate missing"]))


def partition_function(t: TilingSpec, base_vertex: int, max_size: int, force: bool = False,
                       radius: Optional[int] = None, threads: int = 1,
                       limits: Optional[EnumerationLimits] = None,
                       ctx: Optional[CoverContext] = None) -> SeriesByDim:
    """Z^{i₀}(A) 截断到总次数 max_size"""
    require_certificate(t, force)
    if ctx is None:
        ctx = build_cover(t, base_vertex, max_size, radius=radius)
    return ideal_series(ctx, max_size, threads=threads, limits=limits)


def apply_dt_signs(t: TilingSpec, series: SeriesByDim) -> SeriesByDim:
    signed = SeriesByDim(series.vertex_count, series.vertex, series.max_size, signed=True,
                         authoritative=series.authoritative)
    for alpha, count in series.coefficients.items():
        signed.add(alpha, dt_sign(t, series.vertex, alpha) * count)
    return signed


def dt_partition_function(t: TilingSpec, base_vertex: int, max_size: int, **kwargs) -> SeriesByDim:
    """Z_DT^{i₀}(A): 每个系数乘以 dt_sign(α)"""
    return apply_dt_signs(t, partition_function(t, base_vertex, max_size, **kwargs))
