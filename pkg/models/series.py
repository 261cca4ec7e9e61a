"""
截断幂级数与有理函数猜测

系数为精确有理数，按总次数截断。
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


class SeriesError(Exception):
    """幂级数运算异常（常数项条件、截断次数不一致等）"""
    pass


def format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass
class TruncatedSeries:
    """ℚ⟦x_1..x_r⟧ 中截断到总次数 trunc_degree 的元素"""
    num_vars: int
    trunc_degree: int
    coefficients: Dict[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("变量个数必须为正")
        if self.trunc_degree < 0:
            raise ValueError("截断次数不能为负数")
        clean: Dict[Exponent, Fraction] = {}
        for e, c in self.coefficients.items():
            e = tuple(e)
            if len(e) != self.num_vars:
                raise ValueError(f"指数 {e} 与变量个数 {self.num_vars} 不一致")
            if any(x < 0 for x in e):
                raise ValueError(f"指数 {e} 含负数")
            c = Fraction(c)
            if c != 0 and sum(e) <= self.trunc_degree:
                clean[e] = clean.get(e, Fraction(0)) + c
        self.coefficients = {e: c for e, c in clean.items() if c != 0}

    @classmethod
    def zero(cls, num_vars: int, trunc_degree: int) -> 'TruncatedSeries':
        return cls(num_vars, trunc_degree)

    @classmethod
    def constant(cls, value: Scalar, num_vars: int, trunc_degree: int) -> 'TruncatedSeries':
        return cls(num_vars, trunc_degree, {(0,) * num_vars: Fraction(value)})

    @classmethod
    def variable(cls, index: int, num_vars: int, trunc_degree: int) -> 'TruncatedSeries':
        e = [0] * num_vars
        e[index] = 1
        return cls(num_vars, trunc_degree, {tuple(e): Fraction(1)})

    @classmethod
    def from_list(cls, values: Sequence[Scalar], trunc_degree: Optional[int] = None) -> 'TruncatedSeries':
        """单变量: values[k] 为 x^k 的系数"""
        d = len(values) - 1 if trunc_degree is None else trunc_degree
        return cls(1, max(d, 0), {(k,): Fraction(v) for k, v in enumerate(values)})

    def __getitem__(self, e: Union[int, Exponent]) -> Fraction:
        key = (e,) if isinstance(e, int) else tuple(e)
        return self.coefficients.get(key, Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self[(0,) * self.num_vars]

    def homogeneous_parts(self) -> List[Dict[Exponent, Fraction]]:
        """parts[d] 为总次数 d 的部分"""
        parts: List[Dict[Exponent, Fraction]] = [dict() for _ in range(self.trunc_degree + 1)]
        for e, c in self.coefficients.items():
            parts[sum(e)][e] = c
        return parts

    def to_list(self) -> List[Fraction]:
        """单变量系数表 [c_0..c_D]"""
        if self.num_vars != 1:
            raise SeriesError("to_list 只适用于单变量级数")
        return [self[k] for k in range(self.trunc_degree + 1)]

    def _check(self, other: 'TruncatedSeries') -> None:
        if self.num_vars != other.num_vars:
            raise SeriesError(f"变量个数不一致: {self.num_vars} != {other.num_vars}")
        if self.trunc_degree != other.trunc_degree:
            raise SeriesError(f"截断次数不一致: {self.trunc_degree} != {other.trunc_degree}")

    def _lift(self, other) -> 'TruncatedSeries':
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.constant(other, self.num_vars, self.trunc_degree)
        return NotImplemented

    def __add__(self, other) -> 'TruncatedSeries':
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.coefficients)
        for e, c in other.coefficients.items():
            out[e] = out.get(e, Fraction(0)) + c
        return TruncatedSeries(self.num_vars, self.trunc_degree, out)

    __radd__ = __add__

    def __neg__(self) -> 'TruncatedSeries':
        return self.scale(-1)

    def __sub__(self, other) -> 'TruncatedSeries':
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> 'TruncatedSeries':
        return (-self) + other

    def scale(self, c: Scalar) -> 'TruncatedSeries':
        c = Fraction(c)
        return TruncatedSeries(self.num_vars, self.trunc_degree,
                               {e: v * c for e, v in self.coefficients.items()})

    def __mul__(self, other) -> 'TruncatedSeries':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        D = self.trunc_degree
        left = [(e, sum(e), c) for e, c in self.coefficients.items()]
        right = [(e, sum(e), c) for e, c in other.coefficients.items()]
        out: Dict[Exponent, Fraction] = {}
        for ea, da, ca in left:
            for eb, db, cb in right:
                if da + db > D:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, Fraction(0)) + ca * cb
        return TruncatedSeries(self.num_vars, D, out)

    __rmul__ = __mul__

    def terms(self) -> List[Tuple[Exponent, Fraction]]:
        """按 (总次数, 指数逆字典序) 排序的非零项"""
        return sorted(self.coefficients.items(), key=lambda item: (sum(item[0]), tuple(-x for x in item[0])))

    def to_text(self, variable: str = "x") -> str:
        """每行一项 "c * x^k"（多变量为 "c * x0^a*x1^b"），按次数升序"""
        lines = []
        for e, c in self.terms():
            if self.num_vars == 1:
                monomial = f"{variable}^{e[0]}"
            else:
                monomial = "*".join(f"{variable}{i}^{k}" for i, k in enumerate(e) if k) or f"{variable}^0"
            lines.append(f"{format_fraction(c)} * {monomial}")
        return "\n".join(lines) + ("\n" if lines else "")


def poly_text(coeffs: Iterable[Fraction], variable: str = "x") -> str:
    """单变量多项式的 "c * x^k" 形式，项之间以 " + " 连接"""
    parts = [f"{format_fraction(Fraction(c))} * {variable}^{k}" for k, c in enumerate(coeffs) if c != 0]
    return " + ".join(parts) if parts else "0"


@dataclass
class RationalFunctionGuess:
    """单变量有理函数猜测 numerator / denominator，系数由低到高"""
    numerator: List[Fraction]
    denominator: List[Fraction]
    valid_through: int

    def __post_init__(self):
        if not self.denominator or self.denominator[0] != 1:
            raise ValueError("分母常数项必须为 1")

    @property
    def order(self) -> int:
        return len(self.denominator) - 1

    def to_text(self) -> str:
        return (f"numerator: {poly_text(self.numerator)}\n"
                f"denominator: {poly_text(self.denominator)}\n"
                f"valid_through: {self.valid_through}\n")
