from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Tuple, Any


@dataclass(frozen=True)
class Matching:
    """完美匹配模型类

    对偶表述: 箭头集合与箭图的每个面恰好相交一次。
    """
    arrows: FrozenSet[str]

    def __post_init__(self):
        if not self.arrows:
            raise ValueError("完美匹配不能为空")

    def indicator(self, name: str) -> int:
        """特征函数 χ_M"""
        return 1 if name in self.arrows else 0

    @property
    def sorted_arrows(self) -> Tuple[str, ...]:
        return tuple(sorted(self.arrows))

    def sort_key(self) -> Tuple[str, ...]:
        return self.sorted_arrows

    def serialize(self) -> str:
        """逗号分隔的有序箭头名"""
        return ",".join(self.sorted_arrows)

    @classmethod
    def parse(cls, line: str) -> 'Matching':
        return cls(frozenset(p.strip() for p in line.split(",") if p.strip()))

    def __len__(self) -> int:
        return len(self.arrows)


@dataclass(frozen=True)
class RCharge:
    """R-荷: 每个箭头取 (0,1) 中的有理数"""
    values: Dict[str, Fraction] = field(hash=False)
    slack: Fraction = Fraction(0)

    def __post_init__(self):
        for name, value in self.values.items():
            if not 0 < value < 1:
                raise ValueError(f"R-荷 {name}={value} 不在开区间 (0,1) 内")

    def __getitem__(self, name: str) -> Fraction:
        return self.values[name]

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式（有理数写成 p/q 字符串）"""
        return {name: str(value) for name, value in sorted(self.values.items())}

    def lines(self) -> List[str]:
        return [f"R[{name}] = {value}" for name, value in sorted(self.values.items())]
