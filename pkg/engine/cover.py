"""
万有覆盖箭图窗口与最短路径表 μ

覆盖顶点 (v, (dx,dy))，覆盖箭头 â: (s, c) → (t, c + shift(a))，权为 χ_{M₀}(a)。
μ 由 0-1 BFS（双端队列）在 Chebyshev 半径窗口内求得，
并在半径 +1 的窗口上复算以确认稳定。路径类用 (覆盖端点, ω 指数 k) 表示。
"""
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from models.cover import CoverArrow, CoverVertex, PathClass
from models.matching import Matching
from models.tiling import ArrowSpec, TilingSpec
from utils.logger import get_logger
from .lattice import PositivityCertificate, WeightLattice, positivity_certificate, weight_lattice
from .matching import reference_matching

logger = get_logger(__name__)

Content = Tuple[int, ...]


class CoverError(Exception):
    """覆盖窗口计算异常基类"""
    pass


class WindowError(CoverError):
    """访问超出可信窗口，或稳定性检查在最大半径内失败"""
    pass


class ZeroCycleError(CoverError):
    """窗口中存在 χ=0 的有向圈（铺砌不一致）"""
    pass


def required_radius(t: TilingSpec, max_size: int, margin: int = 2) -> int:
    """大小为 max_size 的理想及其前驱检查所需的窗口半径"""
    return (max_size + 1) * t.max_shift + margin


@dataclass(frozen=True)
class MuTable:
    """窗口内的最短路径表

    mu[v̂] 为从 base 出发的最短严格路径的 M₀-次数，rep_content[v̂] 为其一条见证路径的箭头计数。
    只有半径不超过 trusted_radius 的顶点可用于路径类运算。
    """
    tiling: TilingSpec
    m0: Matching
    base: CoverVertex
    window_radius: int
    mu: Dict[CoverVertex, int] = field(hash=False, compare=False)
    rep_content: Dict[CoverVertex, Content] = field(hash=False, compare=False)
    stabilized: bool = False
    out_arrows: Dict[int, Tuple[ArrowSpec, ...]] = field(hash=False, compare=False, default_factory=dict)
    in_arrows: Dict[int, Tuple[ArrowSpec, ...]] = field(hash=False, compare=False, default_factory=dict)

    @property
    def trusted_radius(self) -> int:
        return self.window_radius - 1

    @property
    def root(self) -> PathClass:
        return PathClass(self.base, 0)

    def chi(self, name: str) -> int:
        return self.m0.indicator(name)

    def in_window(self, v: CoverVertex) -> bool:
        return v.radius <= self.trusted_radius and v in self.mu

    def mu_of(self, v: CoverVertex) -> int:
        if not self.in_window(v):
            raise WindowError(f"cover vertex {v} lies outside the trusted window "
                              f"(radius {self.trusted_radius}); enlarge the radius")
        return self.mu[v]

    def head(self, arrow: CoverArrow) -> CoverVertex:
        a = self.tiling.arrow(arrow.name)
        return CoverVertex(a.dst, (arrow.cell[0] + a.shift[0], arrow.cell[1] + a.shift[1]))

    def tail(self, arrow: CoverArrow) -> CoverVertex:
        return CoverVertex(self.tiling.arrow(arrow.name).src, arrow.cell)

    def outgoing(self, v: CoverVertex) -> List[Tuple[CoverArrow, CoverVertex]]:
        return [(CoverArrow(a.name, v.cell), v.shifted(a.shift, a.dst)) for a in self.out_arrows[v.vertex]]

    def incoming(self, v: CoverVertex) -> List[Tuple[CoverArrow, CoverVertex]]:
        out = []
        for a in self.in_arrows[v.vertex]:
            cell = (v.cell[0] - a.shift[0], v.cell[1] - a.shift[1])
            out.append((CoverArrow(a.name, cell), CoverVertex(a.src, cell)))
        return out

    def arrow_slack(self, arrow: CoverArrow) -> int:
        """μ(ŝ) + χ(â) − μ(t̂)，非负"""
        return self.mu_of(self.tail(arrow)) + self.chi(arrow.name) - self.mu_of(self.head(arrow))

    def vertices(self, radius: Optional[int] = None) -> List[CoverVertex]:
        r = self.trusted_radius if radius is None else radius
        return sorted(v for v in self.mu if v.radius <= r)


def _adjacency(t: TilingSpec) -> Tuple[Dict[int, Tuple[ArrowSpec, ...]], Dict[int, Tuple[ArrowSpec, ...]]]:
    out = {v: tuple(t.out_arrows(v)) for v in range(t.vertex_count)}
    inc = {v: tuple(t.in_arrows(v)) for v in range(t.vertex_count)}
    return out, inc


def _zero_one_bfs(t: TilingSpec, out: Dict[int, Tuple[ArrowSpec, ...]], m0: Matching,
                  base: CoverVertex, radius: int) -> Tuple[Dict[CoverVertex, int], Dict[CoverVertex, Content]]:
    index = t.arrow_index
    n = len(t.arrows)
    dist = {base: 0}
    content = {base: (0,) * n}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        d = dist[v]
        for a in out[v.vertex]:
            w = v.shifted(a.shift, a.dst)
            if w.radius > radius:
                continue
            weight = m0.indicator(a.name)
            nd = d + weight
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                step = list(content[v])
                step[index[a.name]] += 1
                content[w] = tuple(step)
                if weight == 0:
                    queue.appendleft(w)
                else:
                    queue.append(w)
    return dist, content


def _check_zero_cycles(t: TilingSpec, m0: Matching, radius: int) -> None:
    """χ=0 弧在窗口内必须无圈（Kahn 拓扑排序）"""
    zero_arrows = [a for a in t.arrows if m0.indicator(a.name) == 0]
    nodes = [CoverVertex(v, (x, y))
             for v in range(t.vertex_count)
             for x in range(-radius, radius + 1)
             for y in range(-radius, radius + 1)]
    succ: Dict[CoverVertex, List[CoverVertex]] = {v: [] for v in nodes}
    indeg: Dict[CoverVertex, int] = {v: 0 for v in nodes}
    by_src: Dict[int, List[ArrowSpec]] = {}
    for a in zero_arrows:
        by_src.setdefault(a.src, []).append(a)
    for v in nodes:
        for a in by_src.get(v.vertex, ()):
            w = v.shifted(a.shift, a.dst)
            if w.radius <= radius:
                succ[v].append(w)
                indeg[w] += 1
    queue = deque(v for v in nodes if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if seen != len(nodes):
        stuck = min(v for v in nodes if indeg[v] > 0)
        raise ZeroCycleError(f"zero-weight cycle through {stuck} with reference matching {m0.serialize()}")


def _agree(a: Dict[CoverVertex, int], b: Dict[CoverVertex, int], radius: int) -> bool:
    inner_a = {v: d for v, d in a.items() if v.radius <= radius}
    inner_b = {v: d for v, d in b.items() if v.radius <= radius}
    return inner_a == inner_b


def _check_matching(t: TilingSpec, m0: Matching) -> None:
    for i, face in enumerate(t.faces):
        hits = sum(m0.indicator(a) for a in face.cycle)
        if hits != 1:
            raise ValueError(f"{m0.serialize()} is not a perfect matching: face {i} meets it {hits} times")


def mu_table(t: TilingSpec, m0: Matching, base_vertex: int, radius: int,
             max_radius: Optional[int] = None) -> MuTable:
    """
    计算窗口最短路径表

    Args:
        max_radius: 给定时，稳定性检查失败则逐步扩大半径，超过该值抛出 WindowError；
            为 None 时只记录 stabilized 标志

    Raises:
        WindowError: 基本区域内有不可达顶点，或在 max_radius 内未稳定
        ZeroCycleError: 窗口中存在零权圈
    """
    if radius < 1:
        raise ValueError("window radius must be at least 1")
    if not 0 <= base_vertex < t.vertex_count:
        raise ValueError(f"base vertex {base_vertex} out of range 0..{t.vertex_count - 1}")
    _check_matching(t, m0)
    out, inc = _adjacency(t)
    base = CoverVertex(base_vertex, (0, 0))

    _check_zero_cycles(t, m0, radius + 1)
    dist, content = _zero_one_bfs(t, out, m0, base, radius)
    for v in range(t.vertex_count):
        if CoverVertex(v, (0, 0)) not in dist:
            raise WindowError(f"vertex {v} in the base cell is unreachable from {base}")

    stabilized = False
    while True:
        larger, larger_content = _zero_one_bfs(t, out, m0, base, radius + 1)
        if _agree(dist, larger, radius - 1):
            stabilized = True
            break
        if max_radius is None:
            break
        if radius + 1 > max_radius:
            raise WindowError(f"mu table did not stabilize up to radius {max_radius}")
        logger.info(f"μ 表在半径 {radius} 未稳定，扩大窗口")
        radius += 1
        _check_zero_cycles(t, m0, radius + 1)
        dist, content = larger, larger_content

    logger.debug(f"μ 表: base={base}, 半径 {radius}, {len(dist)} 个覆盖顶点, 稳定={stabilized}")
    return MuTable(t, m0, base, radius, dist, content, stabilized, out, inc)


def class_children(mt: MuTable, c: PathClass) -> List[Tuple[CoverArrow, PathClass]]:
    """沿每个出箭头的后继类，k' = k + μ(end) + χ(â) − μ(t̂) >= 0"""
    m = mt.mu_of(c.end)
    result = []
    for arrow, head in mt.outgoing(c.end):
        k = c.k + m + mt.chi(arrow.name) - mt.mu_of(head)
        result.append((arrow, PathClass(head, k)))
    return result


def class_predecessors(mt: MuTable, c: PathClass) -> List[Tuple[CoverArrow, PathClass]]:
    """沿每个入箭头的前驱类，只保留 k >= 0 的候选"""
    m = mt.mu_of(c.end)
    result = []
    for arrow, tail in mt.incoming(c.end):
        k = c.k + m - mt.chi(arrow.name) - mt.mu_of(tail)
        if k >= 0:
            result.append((arrow, PathClass(tail, k)))
    return result


def class_weight(mt: MuTable, w: WeightLattice, c: PathClass) -> Tuple[int, ...]:
    """wt(见证路径) + k·ω̄"""
    mt.mu_of(c.end)
    base = w.coord(mt.rep_content[c.end])
    return w.add(base, w.scale(c.k, w.omega_bar))


def class_rdegree(mt: MuTable, cert: PositivityCertificate, c: PathClass) -> Fraction:
    """R-次数: R(wt(见证路径)) + 2k，沿每个箭头严格递增"""
    mt.mu_of(c.end)
    return cert.degree(mt.rep_content[c.end], mt.tiling.arrow_names) + 2 * c.k


@dataclass(frozen=True)
class CanonicalMatching:
    """典范完美匹配 I₀ 及其在可信窗口上的具体箭头集"""
    table: MuTable
    arrows: frozenset

    def __contains__(self, arrow: CoverArrow) -> bool:
        return self.table.arrow_slack(arrow) >= 1


def canonical_matching(mt: MuTable) -> CanonicalMatching:
    """
    I₀ = {â: ŝ→t̂ | μ(ŝ) + χ(â) − μ(t̂) >= 1}

    Raises:
        WindowError: μ 表未稳定
    """
    if not mt.stabilized:
        raise WindowError("canonical matching requires a stabilized mu table")
    members = set()
    for v in mt.vertices():
        for arrow, head in mt.outgoing(v):
            if mt.in_window(head) and mt.arrow_slack(arrow) >= 1:
                members.add(arrow)
    return CanonicalMatching(mt, frozenset(members))


def window_faces(mt: MuTable, radius: int) -> List[List[CoverArrow]]:
    """起点单元半径不超过 radius 且所有顶点都在可信窗口内的覆盖面"""
    t = mt.tiling
    faces = []
    for face in t.faces:
        for x in range(-radius, radius + 1):
            for y in range(-radius, radius + 1):
                cell = (x, y)
                arrows = []
                ok = True
                for name in face.cycle:
                    a = t.arrow(name)
                    arrow = CoverArrow(name, cell)
                    if not (mt.in_window(mt.tail(arrow)) and mt.in_window(mt.head(arrow))):
                        ok = False
                        break
                    arrows.append(arrow)
                    cell = (cell[0] + a.shift[0], cell[1] + a.shift[1])
                if ok:
                    faces.append(arrows)
    return faces


def dump_mu(mt: MuTable) -> List[str]:
    """调试输出: 每行 "vertex dx dy mu"（按覆盖顶点排序）"""
    lines = [f"# base={mt.base} radius={mt.window_radius} stabilized={'true' if mt.stabilized else 'false'}",
             "# vertex dx dy mu"]
    for v in sorted(mt.mu):
        lines.append(f"{v.vertex} {v.cell[0]} {v.cell[1]} {mt.mu[v]}")
    return lines


@dataclass(frozen=True)
class CoverContext:
    """一次 DT 计算所需的全部覆盖数据"""
    table: MuTable
    lattice: WeightLattice
    certificate: PositivityCertificate


def build_cover(t: TilingSpec, base_vertex: int, max_size: int, radius: Optional[int] = None,
                margin: int = 2, max_radius: Optional[int] = 64,
                m0: Optional[Matching] = None) -> CoverContext:
    """参考匹配 + 权格 + 正性证书 + 稳定的 μ 表"""
    if m0 is None:
        m0 = reference_matching(t)
    lattice = weight_lattice(t)
    cert = positivity_certificate(lattice)
    r = radius if radius is not None else required_radius(t, max_size, margin)
    limit = max(max_radius, r) if max_radius is not None else None
    table = mu_table(t, m0, base_vertex, r, max_radius=limit)
    return CoverContext(table, lattice, cert)
