from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class ConsistencyReport:
    """一致性报告: 条件 B / C 的证书状态"""
    tiling: str
    non_degenerate: bool = False
    uncovered: List[str] = field(default_factory=list)
    lattice_free: bool = False
    lattice_rank: Optional[int] = None
    r_charge_feasible: bool = False
    r_charge_slack: Optional[str] = None
    condition_c_checked: bool = False
    condition_c_bound: Optional[int] = None
    condition_c_conclusive: bool = True
    condition_c_ok: bool = True
    resolution_bound: Optional[int] = None
    resolution_failures: List[str] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return (self.non_degenerate and self.lattice_free and self.r_charge_feasible and self.condition_c_ok
                and not self.resolution_failures)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'tiling': self.tiling,
            'certified': self.certified,
            'non_degenerate': self.non_degenerate,
            'uncovered': list(self.uncovered),
            'lattice_free': self.lattice_free,
            'lattice_rank': self.lattice_rank,
            'r_charge_feasible': self.r_charge_feasible,
            'r_charge_slack': self.r_charge_slack,
            'condition_c_checked': self.condition_c_checked,
            'condition_c_bound': self.condition_c_bound,
            'condition_c_conclusive': self.condition_c_conclusive,
            'condition_c_ok': self.condition_c_ok,
            'resolution_bound': self.resolution_bound,
            'resolution_failures': list(self.resolution_failures),
            'violations': list(self.violations),
        }

    def lines(self) -> List[str]:
        """以 "key: value" 行输出"""
        out = []
        for key, value in self.to_dict().items():
            if isinstance(value, bool):
                value = 'true' if value else 'false'
            elif isinstance(value, list):
                value = ",".join(value) if value else "-"
            elif value is None:
                value = "-"
            out.append(f"{key}: {value}")
        return out
