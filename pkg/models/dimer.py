from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List

from .cover import CoverArrow, CoverVertex


@dataclass(frozen=True)
class MatchingDiff:
    """与典范匹配 I₀ 的有限对称差

    I = (I₀ ∖ removed) ∪ added
    """
    added: FrozenSet[CoverArrow] = frozenset()
    removed: FrozenSet[CoverArrow] = frozenset()

    def __post_init__(self):
        if self.added & self.removed:
            raise ValueError("added 与 removed 不能相交")

    @property
    def is_empty(self) -> bool:
        return not self.added and not self.removed

    @property
    def support(self) -> FrozenSet[CoverArrow]:
        return self.added | self.removed

    def delta(self, arrow: CoverArrow) -> int:
        """χ_I(a) − χ_{I₀}(a)"""
        if arrow in self.added:
            return 1
        if arrow in self.removed:
            return -1
        return 0

    def serialize(self) -> str:
        lines = [f"add {a}" for a in sorted(self.added)]
        lines += [f"del {a}" for a in sorted(self.removed)]
        return "\n".join(sorted(lines))

    @classmethod
    def parse(cls, text: str) -> 'MatchingDiff':
        added, removed = set(), set()
        for line in text.splitlines():
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 4 or parts[0] not in ("add", "del"):
                raise ValueError(f"无法解析匹配差分行: {line}")
            arrow = CoverArrow(parts[1], (int(parts[2]), int(parts[3])))
            (added if parts[0] == "add" else removed).add(arrow)
        return cls(frozenset(added), frozenset(removed))


@dataclass
class HeightField:
    """高度函数 h_I，有限支撑"""
    values: Dict[CoverVertex, int] = field(default_factory=dict)

    def __getitem__(self, v: CoverVertex) -> int:
        return self.values.get(v, 0)

    @property
    def total(self) -> int:
        return sum(self.values.values())

    def support(self) -> List[CoverVertex]:
        return sorted(v for v, h in self.values.items() if h != 0)
