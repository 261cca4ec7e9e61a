"""
权格 Λ = ℤ^{Q₁} / ⟨d₂(F) − d₂(F₀)⟩ 及其正性证书
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Sequence, Tuple

import numpy as np

from models.tiling import TilingSpec
from utils.logger import get_logger
from .lp import InfeasibleError, LinearProgram, maximize_min_slack
from .snf import smith_normal_form

logger = get_logger(__name__)

Vector = Tuple[int, ...]


class LatticeError(Exception):
    """权格计算异常"""
    pass


class TorsionError(LatticeError):
    """权格有挠（存在大于1的不变因子）"""

    def __init__(self, factors: Sequence[int]):
        self.factors = tuple(factors)
        super().__init__(f"weight lattice has torsion: invariant factors {list(self.factors)}")


@dataclass(frozen=True)
class WeightLattice:
    """权格 Λ

    projection 的第 j 行是第 j 个坐标泛函；section 的第 j 行是 e_j 在 ℤ^{Q₁} 中的一个原像。
    """
    arrow_names: Tuple[str, ...]
    relation_basis: Tuple[Vector, ...]
    lattice_rank: int
    invariant_factors: Tuple[int, ...]
    projection: Tuple[Vector, ...]
    section: Tuple[Vector, ...]
    face_contents: Tuple[Vector, ...]
    omega_bar: Vector
    arrow_weight: Dict[str, Vector] = field(hash=False, compare=False)

    @property
    def ambient_rank(self) -> int:
        return len(self.arrow_names)

    def coord(self, content: Sequence[int]) -> Vector:
        """ℤ^{Q₁} → ℤ^{rank} 的坐标映射"""
        if len(content) != self.ambient_rank:
            raise ValueError("dimension mismatch: content vector length differs from arrow count")
        return _project(self.projection, content)

    def add(self, a: Vector, b: Vector) -> Vector:
        return tuple(x + y for x, y in zip(a, b))

    def scale(self, k: int, a: Vector) -> Vector:
        return tuple(k * x for x in a)

    def zero(self) -> Vector:
        return (0,) * self.lattice_rank


def _project(projection: Sequence[Vector], content: Sequence[int]) -> Vector:
    if not projection:
        return ()
    proj = np.array(projection, dtype=object)
    vec = np.array(list(content), dtype=object)
    return tuple(int(x) for x in proj.dot(vec))


def weight_lattice(t: TilingSpec) -> WeightLattice:
    """
    通过关系矩阵的 Smith 标准形计算权格

    Raises:
        TorsionError: 存在大于1的不变因子
        LatticeError: 各面的坐标不一致
    """
    contents = [t.face_content(f) for f in t.faces]
    base = contents[0]
    relations = [tuple(c - b for c, b in zip(content, base)) for content in contents[1:]]
    n = len(t.arrows)

    snf = smith_normal_form(relations, columns=n)
    if snf.torsion:
        logger.warning(f"{t.name}: 权格有挠 {snf.torsion}")
        raise TorsionError(snf.torsion)

    rho = snf.rank
    rank = n - rho
    projection = tuple(tuple(int(snf.right[a, rho + j]) for a in range(n)) for j in range(rank))
    section = tuple(tuple(int(snf.right_inverse[rho + j, a]) for a in range(n)) for j in range(rank))

    omega = _project(projection, base)
    for i, content in enumerate(contents):
        if _project(projection, content) != omega:
            raise LatticeError(f"face {i} has weight {_project(projection, content)} != {omega}")

    weights = {}
    for idx, name in enumerate(t.arrow_names):
        unit = [0] * n
        unit[idx] = 1
        weights[name] = _project(projection, unit)

    logger.info(f"{t.name}: 权格秩 {rank}, 关系秩 {rho}")
    return WeightLattice(
        arrow_names=t.arrow_names,
        relation_basis=tuple(relations),
        lattice_rank=rank,
        invariant_factors=snf.diagonal,
        projection=projection,
        section=section,
        face_contents=tuple(contents),
        omega_bar=omega,
        arrow_weight=weights,
    )


@dataclass(frozen=True)
class PositivityCertificate:
    """Λ 上的有理线性泛函 R，R(a) > 0 且 R(ω̄) = 2"""
    functional: Tuple[Fraction, ...]
    arrow_values: Dict[str, Fraction] = field(hash=False, compare=False)
    slack: Fraction = Fraction(0)

    def evaluate(self, weight: Sequence[int]) -> Fraction:
        return sum((r * w for r, w in zip(self.functional, weight)), Fraction(0))

    def degree(self, content: Sequence[int], names: Sequence[str]) -> Fraction:
        """路径内容向量的 R-次数"""
        return sum((c * self.arrow_values[n] for c, n in zip(content, names) if c), Fraction(0))


def positivity_certificate(w: WeightLattice) -> PositivityCertificate:
    """
    求 R: max t  s.t.  R_a >= t,  每个面 Σ R_a = 2

    Raises:
        InfeasibleError: 最优 t <= 0（存在权为零的非负箭头组合）
    """
    n = w.ambient_rank
    lp = LinearProgram(n + 1)
    slack = n
    for a in range(n):
        lp.add_constraint({a: 1, slack: -1}, '>=', 0)
    for content in w.face_contents:
        lp.add_constraint({a: c for a, c in enumerate(content) if c}, '==', 2)
    lp.add_constraint({slack: 1}, '<=', 1)
    lp.set_objective({slack: 1})
    try:
        solution = maximize_min_slack(lp, slack)
    except InfeasibleError:
        logger.warning("正性证书不存在")
        raise

    values = {name: solution.values[a] for a, name in enumerate(w.arrow_names)}
    functional = tuple(
        sum((Fraction(s) * solution.values[a] for a, s in enumerate(row) if s), Fraction(0))
        for row in w.section
    )
    cert = PositivityCertificate(functional, values, solution.values[slack])
    if cert.evaluate(w.omega_bar) != 2:
        raise LatticeError(f"certificate gives R(omega) = {cert.evaluate(w.omega_bar)}")
    return cert
