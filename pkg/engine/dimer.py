"""
理想与完美匹配的对应

I(Ω) 由 Ω′ = Ω ∪ (Q̃₀ × ℤ_{<0}) 定义；在 (端点, k) 模型中，覆盖箭头 â: ŝ→t̂ 属于 I(Ω)
当且仅当 h(t̂) − h(ŝ) <= δ(â) − 1，其中 δ(â) = μ(ŝ) + χ(â) − μ(t̂)，h 为 Ω 在各覆盖顶点上的元素个数。
"""
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from models.cover import CoverArrow, CoverVertex, PathClass
from models.dimer import HeightField, MatchingDiff
from models.ideal import Ideal, SeriesByDim
from models.tiling import DimVector, TilingSpec
from utils.logger import get_logger
from .cover import MuTable, WindowError, build_cover
from .ideals import is_downward_closed, require_certificate
from .matching import ExactCover

logger = get_logger(__name__)


class DimerError(Exception):
    """匹配差分不是与 I₀ 共尾的完美匹配"""
    pass


class HeightError(DimerError):
    """高度函数不可积或出现负值"""
    pass


def faces_through(mt: MuTable, arrow: CoverArrow) -> List[List[CoverArrow]]:
    """包含该覆盖箭头的覆盖面（每个基本面中的每个出现位置一个）"""
    t = mt.tiling
    result = []
    for face in t.faces:
        for pos, name in enumerate(face.cycle):
            if name != arrow.name:
                continue
            # 回退到面循环起点所在的格子
            cx, cy = arrow.cell
            for prev in face.cycle[:pos]:
                shift = t.arrow(prev).shift
                cx, cy = cx - shift[0], cy - shift[1]
            arrows = []
            for step in face.cycle:
                arrows.append(CoverArrow(step, (cx, cy)))
                shift = t.arrow(step).shift
                cx, cy = cx + shift[0], cy + shift[1]
            result.append(arrows)
    return result


def in_canonical(mt: MuTable, arrow: CoverArrow) -> bool:
    return mt.arrow_slack(arrow) >= 1


def in_matching(mt: MuTable, d: MatchingDiff, arrow: CoverArrow) -> bool:
    """χ_I(â)，I = (I₀ ∖ removed) ∪ added"""
    if arrow in d.added:
        return True
    if arrow in d.removed:
        return False
    return in_canonical(mt, arrow)


def _check_faces(mt: MuTable, d: MatchingDiff) -> None:
    for arrow in sorted(d.support):
        for face in faces_through(mt, arrow):
            hits = sum(1 for a in face if in_matching(mt, d, a))
            if hits != 1:
                raise DimerError(f"face through {arrow} meets the arrow set {hits} times")


def ideal_to_matching(mt: MuTable, om: Ideal) -> MatchingDiff:
    """
    Ω ↦ I(Ω) 与 I₀ 的对称差

    Raises:
        WindowError: 支撑附近的 μ 不在可信窗口内
        DimerError: 结果不满足每面恰一个箭头
    """
    heights = om.heights()
    added, removed = set(), set()
    touched: Set[CoverArrow] = set()
    for v in heights:
        touched.update(arrow for arrow, _ in mt.outgoing(v))
        touched.update(arrow for arrow, _ in mt.incoming(v))
    for arrow in touched:
        s, t = mt.tail(arrow), mt.head(arrow)
        delta = mt.arrow_slack(arrow)
        in_i = heights.get(t, 0) - heights.get(s, 0) <= delta - 1
        in_i0 = delta >= 1
        if in_i and not in_i0:
            added.add(arrow)
        elif in_i0 and not in_i:
            removed.add(arrow)
    diff = MatchingDiff(frozenset(added), frozenset(removed))
    _check_faces(mt, diff)
    return diff


def _box(cells: Iterable[Tuple[int, int]]) -> Tuple[int, int, int, int]:
    cells = list(cells)
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    return min(xs), max(xs), min(ys), max(ys)


def height_field(mt: MuTable, d: MatchingDiff) -> HeightField:
    """
    积分 χ_I − χ_{I₀}: 对每个覆盖箭头 h(ŝ) − h(t̂) = Δ(â)

    在支撑包围盒外扩一个最大平移量的区域内积分，盒外顶点高度为 0。

    Raises:
        DimerError: removed 不在 I₀ 中或 added 已在 I₀ 中
        HeightError: 积分与路径有关，或出现负高度
    """
    if d.is_empty:
        return HeightField({})
    for arrow in d.removed:
        if not in_canonical(mt, arrow):
            raise DimerError(f"removed arrow {arrow} is not in the canonical matching")
    for arrow in d.added:
        if in_canonical(mt, arrow):
            raise DimerError(f"added arrow {arrow} is already in the canonical matching")

    t = mt.tiling
    ends = set()
    for arrow in d.support:
        ends.add(mt.tail(arrow))
        ends.add(mt.head(arrow))
    x0, x1, y0, y1 = _box(v.cell for v in ends)
    s = t.max_shift
    X0, X1, Y0, Y1 = x0 - s, x1 + s, y0 - s, y1 + s

    def inside(v: CoverVertex) -> bool:
        return X0 <= v.cell[0] <= X1 and Y0 <= v.cell[1] <= Y1

    region = [CoverVertex(v, (x, y)) for v in range(t.vertex_count)
              for x in range(X0, X1 + 1) for y in range(Y0, Y1 + 1)]
    h: Dict[CoverVertex, int] = {}
    queue = deque()
    for v in region:
        if not (x0 <= v.cell[0] <= x1 and y0 <= v.cell[1] <= y1):
            h[v] = 0
            queue.append(v)

    while queue:
        v = queue.popleft()
        for arrow, w in mt.outgoing(v):
            if inside(w) and w not in h:
                h[w] = h[v] - d.delta(arrow)
                queue.append(w)
        for arrow, u in mt.incoming(v):
            if inside(u) and u not in h:
                h[u] = h[v] + d.delta(arrow)
                queue.append(u)

    missing = [v for v in region if v not in h]
    if missing:
        raise HeightError(f"height is not determined at {missing[0]}")
    for v in region:
        for arrow, w in mt.outgoing(v):
            if inside(w) and h[v] - h[w] != d.delta(arrow):
                raise HeightError(f"height integral is path dependent at arrow {arrow}")
    negative = sorted(v for v, value in h.items() if value < 0)
    if negative:
        raise HeightError(f"negative height {h[negative[0]]} at {negative[0]}")
    return HeightField({v: value for v, value in h.items() if value != 0})


def matching_to_ideal(mt: MuTable, d: MatchingDiff) -> Ideal:
    """
    Ω = {(v̂, k) | 0 <= k <= h(v̂) − 1}

    Raises:
        HeightError: 高度无效，或所得集合不是理想
    """
    heights = height_field(mt, d)
    elements = frozenset(PathClass(v, k) for v, h in heights.values.items() for k in range(h))
    for c in elements:
        mt.mu_of(c.end)
    if not is_downward_closed(mt, elements):
        raise HeightError("heights do not describe an order ideal at this base")
    return Ideal.from_elements(elements, mt.tiling.vertex_count)


@dataclass
class RoundtripReport:
    """往返检验统计"""
    total: int = 0
    passed: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.total == self.passed


def roundtrip_suite(mt: MuTable, ideals: Iterable[Ideal]) -> RoundtripReport:
    """对每个理想检查 Ω ↦ I(Ω) ↦ Ω、I ↦ Ω ↦ I 以及 |Ω| = Σ h"""
    report = RoundtripReport()
    for om in ideals:
        report.total += 1
        try:
            diff = ideal_to_matching(mt, om)
            heights = height_field(mt, diff)
            back = matching_to_ideal(mt, diff)
            if back.elements != om.elements:
                report.failures.append(f"ideal {om.serialize()} did not round-trip")
                continue
            if heights.total != len(om):
                report.failures.append(f"ideal {om.serialize()}: sum of heights {heights.total} != {len(om)}")
                continue
            if ideal_to_matching(mt, back) != diff:
                report.failures.append(f"matching of {om.serialize()} did not round-trip")
                continue
            report.passed += 1
        except DimerError as e:
            report.failures.append(f"ideal {om.serialize()}: {e}")
    return report


def matching_radius(t: TilingSpec, max_size: int, margin: int = 2) -> int:
    """内部区域半径加上一个面的跨度，使边界面上的 I₀ 可求值"""
    longest = max(len(f.cycle) for f in t.faces)
    return (max_size + 1) * t.max_shift + longest * t.max_shift + margin


Face = Tuple[CoverArrow, ...]


class _BoundedCover(ExactCover):
    """选行时累计被迫取正高度的顶点（含紧祖先），超过上界即剪枝"""

    def __init__(self, columns: Sequence[int], rows: Dict[CoverArrow, Sequence[int]],
                 closures: Dict[CoverArrow, FrozenSet[CoverVertex]], bound: int):
        super().__init__(columns, rows)
        self.closures = closures
        self.bound = bound
        self.pruned = 0
        self._count: Dict[CoverVertex, int] = {}

    def _admit(self, r: CoverArrow) -> bool:
        closure = self.closures.get(r, frozenset())
        fresh = sum(1 for v in closure if v not in self._count)
        if len(self._count) + fresh > self.bound:
            self.pruned += 1
            return False
        for v in closure:
            self._count[v] = self._count.get(v, 0) + 1
        return True

    def _release(self, r: CoverArrow) -> None:
        for v in self.closures.get(r, frozenset()):
            self._count[v] -= 1
            if not self._count[v]:
                del self._count[v]


class MatchingRoute:
    """
    与 I₀ 在内部区域外一致的完美匹配枚举：窗口面上的精确覆盖

    内部半径 r_in = (max_size + 1)·s；两端都在内部区域的箭头为自由箭头，其余冻结为 I₀。
    列为 I₀ 箭头自由的覆盖面，行为自由箭头，覆盖它所在的两个面。

    h >= 0 时紧箭头 u→v (δ = 0) 上 h(u) >= h(v)。选入非 I₀ 箭头使其起点为正，被挤出的 I₀ 箭头
    使其终点为正，正顶点的全部紧祖先也为正，所以这些祖先闭包的并的大小是 Σh 的下界。
    下界单独已超过 max_size 的行在建表时删去；只剩 I₀ 一行的面直接确定；其余在回溯中剪枝
    （计入 pruned）。每个解积分出高度，负高度计入 discarded，Σh 超界计入 oversize。
    """

    def __init__(self, mt: MuTable, max_size: int):
        self.mt = mt
        self.max_size = max_size
        self.inner_radius = (max_size + 1) * mt.tiling.max_shift
        self.accepted = 0
        self.discarded = 0
        self.oversize = 0
        self.pruned = 0
        self._closures: Dict[CoverVertex, Optional[FrozenSet[CoverVertex]]] = {}
        self._prepare()

    def _closure(self, v: CoverVertex) -> Optional[FrozenSet[CoverVertex]]:
        if v not in self._closures:
            self._closures[v] = self._tight_ancestors(v)
        return self._closures[v]

    def _tight_ancestors(self, v: CoverVertex) -> Optional[FrozenSet[CoverVertex]]:
        """v 的紧祖先闭包（含 v）；超过 max_size 个或触及冻结区时为 None"""
        r_in = self.inner_radius
        if v.radius > r_in:
            return None
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for arrow, u in self.mt.incoming(x):
                if u == x or u in seen or self.mt.arrow_slack(arrow) != 0:
                    continue
                if u.radius > r_in:
                    return None
                seen.add(u)
                if len(seen) > self.max_size:
                    return None
                stack.append(u)
        return frozenset(seen) if len(seen) <= self.max_size else None

    def _prepare(self) -> None:
        mt = self.mt
        r_in = self.inner_radius
        inner = mt.vertices(r_in)
        if mt.base not in inner:
            raise WindowError("base vertex lies outside the matching window")

        free: Set[CoverArrow] = set()
        for v in inner:
            for arrow, w in mt.outgoing(v):
                if w.radius <= r_in:
                    free.add(arrow)

        canonical: Dict[Face, CoverArrow] = {}
        faces_of: Dict[CoverArrow, List[Face]] = {}
        for arrow in sorted(free):
            faces_of[arrow] = []
            for face in faces_through(mt, arrow):
                key = tuple(face)
                if key not in canonical:
                    hits = [a for a in face if in_canonical(mt, a)]
                    if len(hits) != 1:
                        raise DimerError(f"face through {arrow} meets the canonical matching {len(hits)} times")
                    canonical[key] = hits[0]
                faces_of[arrow].append(key)

        def movable(g: CoverArrow) -> bool:
            # 挤出 I₀ 箭头 g 使其终点为正
            return g in free and self._closure(mt.head(g)) is not None

        columns = {f: set() for f, g in canonical.items() if movable(g)}
        rows: Dict[CoverArrow, Tuple[Face, ...]] = {}
        closures: Dict[CoverArrow, FrozenSet[CoverVertex]] = {}
        for arrow, faces in faces_of.items():
            if not all(f in columns for f in faces):
                continue
            if in_canonical(mt, arrow):
                rows[arrow] = tuple(faces)
                continue
            positives = [mt.tail(arrow)] + [mt.head(canonical[f]) for f in faces]
            parts = [self._closure(v) for v in positives]
            if any(p is None for p in parts):
                continue
            union = frozenset().union(*parts)
            if len(union) > self.max_size:
                continue
            rows[arrow] = tuple(faces)
            closures[arrow] = union
        for arrow, faces in rows.items():
            for f in faces:
                columns[f].add(arrow)

        forced = _propagate_forced(columns, rows)
        rows = {a: faces for a, faces in rows.items() if all(f in columns and a in columns[f] for f in faces)}
        empty = [f for f, candidates in columns.items() if not candidates]
        if empty:
            raise DimerError(f"face {' '.join(map(str, empty[0]))} has no admissible arrow")

        self.canonical_core = frozenset(canonical[f] for f in columns)
        # 列用面的序号，分支时按序号打破平局
        index = {f: i for i, f in enumerate(sorted(columns))}
        self.cover = _BoundedCover(range(len(index)), {a: [index[f] for f in faces] for a, faces in rows.items()},
                                   closures, self.max_size)
        logger.debug(f"匹配路线: 自由箭头 {len(free)}, 待定面 {len(columns)}, 候选行 {len(rows)}, "
                     f"直接确定 {len(forced)}")

    def run(self) -> SeriesByDim:
        mt = self.mt
        series = SeriesByDim(mt.tiling.vertex_count, mt.base.vertex, self.max_size)
        for solution in self.cover.solutions():
            chosen = frozenset(solution)
            diff = MatchingDiff(frozenset(a for a in chosen if a not in self.canonical_core),
                                self.canonical_core - chosen)
            try:
                heights = height_field(mt, diff)
            except HeightError:
                self.discarded += 1
                continue
            if heights.total > self.max_size:
                self.oversize += 1
                continue
            self._accept(series, heights)
        self.pruned = self.cover.pruned
        logger.info(f"匹配路线: 接受 {self.accepted}, 负高度 {self.discarded}, 超界 {self.oversize}, "
                    f"剪枝 {self.pruned}")
        return series

    def _accept(self, series: SeriesByDim, heights: HeightField) -> None:
        alpha = [0] * self.mt.tiling.vertex_count
        for v, h in heights.values.items():
            if v.radius >= self.inner_radius:
                raise WindowError(f"accepted matching reaches the frozen boundary at {v}")
            alpha[v.vertex] += h
        self.accepted += 1
        series.add(DimVector(tuple(alpha)))


def _propagate_forced(columns: Dict[Face, Set[CoverArrow]],
                      rows: Dict[CoverArrow, Tuple[Face, ...]]) -> List[CoverArrow]:
    """反复选取只剩一个候选行的面，返回被选中的行"""
    forced: List[CoverArrow] = []
    queue = deque(f for f, candidates in columns.items() if len(candidates) == 1)
    while queue:
        f = queue.popleft()
        if f not in columns or len(columns[f]) != 1:
            continue
        (arrow,) = columns[f]
        forced.append(arrow)
        for g in rows[arrow]:
            for other in columns.pop(g):
                if other == arrow:
                    continue
                for h in rows[other]:
                    if h in columns:
                        columns[h].discard(other)
                        if len(columns[h]) == 1:
                            queue.append(h)
    return forced


def z_via_matchings(t: TilingSpec, base_vertex: int, max_size: int, force: bool = False) -> SeriesByDim:
    """Σ_I Π x_{π(v)}^{h_I(v)}，不经过理想枚举"""
    require_certificate(t, force)
    ctx = build_cover(t, base_vertex, max_size, radius=matching_radius(t, max_size))
    return MatchingRoute(ctx.table, max_size).run()
