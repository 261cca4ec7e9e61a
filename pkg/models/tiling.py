"""
砖块铺砌（brane tiling）模型

环面上的二部图以其对偶箭图的形式保存：顶点、带平移量的箭头以及带符号的面。
"""
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

Shift = Tuple[int, int]


class TilingError(Exception):
    """铺砌数据异常基类"""
    pass


class TilingParseError(TilingError):
    """铺砌文件语法错误"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TilingValidationError(TilingError):
    """铺砌不满足不变量"""
    pass


@dataclass(frozen=True)
class ArrowSpec:
    """箭头: 名称、起点、终点和环面平移量"""
    name: str
    src: int
    dst: int
    shift: Shift = (0, 0)

    def __post_init__(self):
        if not self.name:
            raise ValueError("箭头名称不能为空")
        if self.src < 0 or self.dst < 0:
            raise ValueError("箭头端点必须是非负整数")

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


@dataclass(frozen=True)
class FaceSpec:
    """面: 符号(+1 白色 / -1 黑色)和首尾相接的箭头循环"""
    sign: int
    cycle: Tuple[str, ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("面的符号必须是 +1 或 -1")
        if not self.cycle:
            raise ValueError("面的箭头循环不能为空")


@dataclass(frozen=True)
class PotentialTerm:
    """势函数中的一项 ±w_F"""
    sign: int
    necklace: Tuple[str, ...]

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'} {' '.join(self.necklace)}"


@dataclass(frozen=True)
class DimVector:
    """维数向量 α ∈ ℕ^{Q₀}"""
    entries: Tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.entries):
            raise ValueError("维数向量的分量必须非负")

    @classmethod
    def zero(cls, n: int) -> 'DimVector':
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, i: int) -> 'DimVector':
        return cls(tuple(1 if j == i else 0 for j in range(n)))

    @property
    def total(self) -> int:
        return sum(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __add__(self, other: 'DimVector') -> 'DimVector':
        if len(other) != len(self):
            raise ValueError("维数向量长度不一致")
        return DimVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """按总次数、再按字典序排序"""
        return (self.total, self.entries)

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)


@dataclass(frozen=True)
class Violation:
    """不变量违反记录"""
    invariant: str
    witness: str

    def __str__(self) -> str:
        return f"{self.invariant}: {self.witness}"


@dataclass
class ValidationReport:
    """铺砌校验报告"""
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, invariant: str, witness: str) -> None:
        self.violations.append(Violation(invariant, witness))

    def lines(self) -> List[str]:
        out = [f"ok: {'true' if self.ok else 'false'}"]
        out.extend(f"violation: {v}" for v in self.violations)
        return out


@dataclass(frozen=True)
class TilingSpec:
    """环面上的砖块铺砌 / 对偶箭图

    vertex_count 个箭图顶点, arrows 为 Q₁, faces 为 Q₂。
    所有字段构造后不可变，可在线程间共享。
    """
    vertex_count: int
    arrows: Tuple[ArrowSpec, ...]
    faces: Tuple[FaceSpec, ...]
    name: str = "tiling"

    def __post_init__(self):
        if self.vertex_count <= 0:
            raise ValueError("顶点数必须是正整数")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            dup = [n for n, c in Counter(names).items() if c > 1][0]
            raise ValueError(f"duplicate arrow name {dup}")

    # 基本查询

    @property
    def arrow_names(self) -> Tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    @property
    def arrow_index(self) -> Dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    def arrow(self, name: str) -> ArrowSpec:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(f"unknown arrow {name}")

    def out_arrows(self, v: int) -> List[ArrowSpec]:
        return [a for a in self.arrows if a.src == v]

    def in_arrows(self, v: int) -> List[ArrowSpec]:
        return [a for a in self.arrows if a.dst == v]

    @property
    def max_shift(self) -> int:
        """箭头平移量的最大 Chebyshev 范数（至少为1）"""
        return max([1] + [max(abs(a.shift[0]), abs(a.shift[1])) for a in self.arrows])

    def face_content(self, face: FaceSpec) -> Tuple[int, ...]:
        """d₂(F): 面在 ℤ^{Q₁} 中的箭头计数向量"""
        index = self.arrow_index
        content = [0] * len(self.arrows)
        for name in face.cycle:
            content[index[name]] += 1
        return tuple(content)

    # 序列化

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TilingSpec':
        """从字典创建铺砌实例"""
        return cls(
            vertex_count=data['vertex_count'],
            arrows=tuple(ArrowSpec(a['name'], a['src'], a['dst'], tuple(a.get('shift', (0, 0))))
                         for a in data['arrows']),
            faces=tuple(FaceSpec(f['sign'], tuple(f['cycle'])) for f in data['faces']),
            name=data.get('name', 'tiling')
        )

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'name': self.name,
            'vertex_count': self.vertex_count,
            'arrows': [{'name': a.name, 'src': a.src, 'dst': a.dst, 'shift': list(a.shift)}
                       for a in self.arrows],
            'faces': [{'sign': f.sign, 'cycle': list(f.cycle)} for f in self.faces]
        }

    def to_text(self) -> str:
        """按铺砌文件格式输出"""
        lines = [f"# {self.name}", f"vertices {self.vertex_count}"]
        for a in self.arrows:
            lines.append(f"arrow {a.name} {a.src} {a.dst} {a.shift[0]} {a.shift[1]}")
        for f in self.faces:
            lines.append(f"face {'+' if f.sign > 0 else '-'} {' '.join(f.cycle)}")
        return "\n".join(lines) + "\n"

    def validate(self) -> List[str]:
        """验证铺砌数据的完整性，返回错误信息列表"""
        return [str(v) for v in validate_tiling(self).violations]


def validate_tiling(t: TilingSpec) -> ValidationReport:
    """检查 TilingSpec 的全部不变量，失败项带见证信息，不抛异常"""
    report = ValidationReport()
    names = {a.name: a for a in t.arrows}

    for a in t.arrows:
        if a.src >= t.vertex_count or a.dst >= t.vertex_count:
            report.add("arrow endpoints in range", f"arrow {a.name}")

    unknown = [(i, n) for i, f in enumerate(t.faces) for n in f.cycle if n not in names]
    for i, n in unknown:
        report.add("face uses declared arrows", f"face {i} arrow {n}")
    if unknown or not report.ok:
        return report

    # 每个箭头恰在一个 +1 面和一个 -1 面中
    plus: Counter = Counter()
    minus: Counter = Counter()
    for f in t.faces:
        (plus if f.sign > 0 else minus).update(f.cycle)
    for a in t.arrows:
        if plus[a.name] != 1:
            report.add("face incidence", f"arrow {a.name} not in exactly one +1 face")
        if minus[a.name] != 1:
            report.add("face incidence", f"arrow {a.name} not in exactly one -1 face")

    # 面循环首尾相接，平移量之和为零
    for i, f in enumerate(t.faces):
        m = len(f.cycle)
        for k in range(m):
            cur, nxt = names[f.cycle[k]], names[f.cycle[(k + 1) % m]]
            if cur.dst != nxt.src:
                report.add("face cycle composes", f"face {i} between {cur.name} and {nxt.name}")
        sx = sum(names[n].shift[0] for n in f.cycle)
        sy = sum(names[n].shift[1] for n in f.cycle)
        if (sx, sy) != (0, 0):
            report.add("face cycle contractible", f"face {i} shift sum ({sx},{sy})")

    euler = t.vertex_count - len(t.arrows) + len(t.faces)
    if euler != 0:
        report.add("euler characteristic", f"|Q0|-|Q1|+|Q2| = {euler}")

    if not _is_connected(t):
        report.add("connected", "quiver is disconnected")

    if report.ok:
        for v in _vertices_with_broken_links(t):
            report.add("vertex link", f"faces around vertex {v} do not form a single cycle")
        index = _shift_lattice_index(t)
        if index != 1:
            report.add("homology", f"cycle shifts generate a sublattice of index {index} in Z^2")
    return report


def _is_connected(t: TilingSpec) -> bool:
    adj: Dict[int, List[int]] = defaultdict(list)
    for a in t.arrows:
        adj[a.src].append(a.dst)
        adj[a.dst].append(a.src)
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == t.vertex_count


def _vertices_with_broken_links(t: TilingSpec) -> List[int]:
    """面角把箭头端点连成图；每个顶点处必须恰好是一个圈"""
    names = {a.name: a for a in t.arrows}
    corners: Dict[int, Dict[Tuple[str, str], List[Tuple[str, str]]]] = defaultdict(lambda: defaultdict(list))
    for f in t.faces:
        m = len(f.cycle)
        for k in range(m):
            cur, nxt = f.cycle[k], f.cycle[(k + 1) % m]
            v = names[cur].dst
            a, b = (cur, 'in'), (nxt, 'out')
            corners[v][a].append(b)
            corners[v][b].append(a)
    broken = []
    for v in range(t.vertex_count):
        graph = corners[v]
        if not graph:
            broken.append(v)
            continue
        start = next(iter(graph))
        seen = {start}
        stack = [start]
        while stack:
            node = stack.pop()
            for nb in graph[node]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(graph):
            broken.append(v)
    return broken


def _shift_lattice_index(t: TilingSpec) -> int:
    """圈空间平移量生成的子格在 ℤ² 中的指数（0 表示秩不足）"""
    pos: Dict[int, Shift] = {0: (0, 0)}
    tree = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for a in t.arrows:
            if a.src == v and a.dst not in pos:
                pos[a.dst] = (pos[v][0] + a.shift[0], pos[v][1] + a.shift[1])
                tree.add(a.name)
                queue.append(a.dst)
            elif a.dst == v and a.src not in pos:
                pos[a.src] = (pos[v][0] - a.shift[0], pos[v][1] - a.shift[1])
                tree.add(a.name)
                queue.append(a.src)
    vectors = []
    for a in t.arrows:
        if a.name in tree:
            continue
        vectors.append((pos[a.src][0] + a.shift[0] - pos[a.dst][0],
                        pos[a.src][1] + a.shift[1] - pos[a.dst][1]))
    g = 0
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            g = gcd(g, vectors[i][0] * vectors[j][1] - vectors[i][1] * vectors[j][0])
    return g


def _canonical_rotation(cycle: Sequence[str]) -> Tuple[str, ...]:
    """字典序最小的箭头名放在首位（并列时取整体字典序最小的旋转）"""
    rotations = [tuple(cycle[k:]) + tuple(cycle[:k]) for k in range(len(cycle))]
    return min(rotations)


def potential_terms(t: TilingSpec) -> List[PotentialTerm]:
    """W = Σ_{F∈Q₂⁺} w_F − Σ_{F∈Q₂⁻} w_F，每个面一项"""
    return [PotentialTerm(f.sign, _canonical_rotation(f.cycle)) for f in t.faces]


def ringel_form(t: TilingSpec, a: DimVector, b: DimVector) -> int:
    """Ringel 形式 ⟨a,b⟩ = Σ a_i b_i − Σ_{i→j} a_i b_j"""
    if len(a) != t.vertex_count or len(b) != t.vertex_count:
        raise ValueError(f"dimension mismatch: expected {t.vertex_count} entries")
    value = sum(x * y for x, y in zip(a.entries, b.entries))
    value -= sum(a[arr.src] * b[arr.dst] for arr in t.arrows)
    return value
