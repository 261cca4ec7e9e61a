"""
截断幂级数的 λ-环运算

Adams 运算 ψ_n、plethystic Exp/Log、单变量特化、Berlekamp–Massey 递推检测与有理函数展开。
全部为精确有理数运算。
"""
from dataclasses import dataclass
from fractions import Fraction
from tokenize import TokenError
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol, fraction, together
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import (convert_xor, implicit_multiplication_application, parse_expr,
                                        standard_transformations)
from sympy.polys.polyerrors import PolynomialError

from models.ideal import SeriesByDim
from models.series import Exponent, RationalFunctionGuess, SeriesError, TruncatedSeries, format_fraction
from utils.logger import get_logger

logger = get_logger(__name__)

Coeffs = List[Fraction]


def _mul_parts(a: Dict[Exponent, Fraction], b: Dict[Exponent, Fraction]) -> Dict[Exponent, Fraction]:
    out: Dict[Exponent, Fraction] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return out


def _accumulate(target: Dict[Exponent, Fraction], part: Dict[Exponent, Fraction], factor: Fraction) -> None:
    for e, c in part.items():
        target[e] = target.get(e, Fraction(0)) + factor * c


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    """
    log f，要求 f(0) = 1

    按齐次分量递推: d·L_d = d·g_d − Σ_{j<d} j·L_j·g_{d−j}，g = f − 1。
    """
    if f.constant_term != 1:
        raise SeriesError(f"log requires constant term 1, got {format_fraction(f.constant_term)}")
    g = f.homogeneous_parts()
    D = f.trunc_degree
    logs: List[Dict[Exponent, Fraction]] = [dict() for _ in range(D + 1)]
    for d in range(1, D + 1):
        acc: Dict[Exponent, Fraction] = {}
        _accumulate(acc, g[d], Fraction(d))
        for j in range(1, d):
            if logs[j] and g[d - j]:
                _accumulate(acc, _mul_parts(logs[j], g[d - j]), Fraction(-j))
        logs[d] = {e: c / d for e, c in acc.items() if c != 0}
    out: Dict[Exponent, Fraction] = {}
    for part in logs:
        out.update(part)
    return TruncatedSeries(f.num_vars, D, out)


def series_exp(h: TruncatedSeries) -> TruncatedSeries:
    """
    exp h，要求 h(0) = 0

    d·E_d = Σ_{1<=j<=d} j·h_j·E_{d−j}，E_0 = 1。
    """
    if h.constant_term != 0:
        raise SeriesError(f"exp requires constant term 0, got {format_fraction(h.constant_term)}")
    parts = h.homogeneous_parts()
    D = h.trunc_degree
    n = h.num_vars
    exps: List[Dict[Exponent, Fraction]] = [{(0,) * n: Fraction(1)}] + [dict() for _ in range(D)]
    for d in range(1, D + 1):
        acc: Dict[Exponent, Fraction] = {}
        for j in range(1, d + 1):
            if parts[j] and exps[d - j]:
                _accumulate(acc, _mul_parts(parts[j], exps[d - j]), Fraction(j))
        exps[d] = {e: c / d for e, c in acc.items() if c != 0}
    out: Dict[Exponent, Fraction] = {}
    for part in exps:
        out.update(part)
    return TruncatedSeries(n, D, out)


def series_arith(op: str, *args: TruncatedSeries) -> TruncatedSeries:
    """
    统一入口: add / mul（两个参数）、log / exp（一个参数）

    Raises:
        SeriesError: 常数项条件不满足、截断次数不一致或未知运算
    """
    if op in ("add", "mul"):
        if len(args) != 2:
            raise SeriesError(f"{op} takes two series")
        a, b = args
        if a.trunc_degree != b.trunc_degree or a.num_vars != b.num_vars:
            raise SeriesError(f"{op}: truncation or variable count mismatch")
        return a + b if op == "add" else a * b
    if op in ("log", "exp"):
        if len(args) != 1:
            raise SeriesError(f"{op} takes one series")
        return series_log(args[0]) if op == "log" else series_exp(args[0])
    raise SeriesError(f"unknown series operation: {op}")


def adams(n: int, f: TruncatedSeries) -> TruncatedSeries:
    """ψ_n(f)(x_1..x_r) = f(x_1^n..x_r^n)"""
    if n < 1:
        raise SeriesError("Adams operation needs n >= 1")
    return TruncatedSeries(f.num_vars, f.trunc_degree,
                           {tuple(n * x for x in e): c for e, c in f.coefficients.items()})


def mobius(n: int) -> int:
    """Möbius 函数（试除）"""
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def plethystic_exp(f: TruncatedSeries) -> TruncatedSeries:
    """Exp(f) = exp(Σ_{n>=1} ψ_n(f)/n)"""
    if f.constant_term != 0:
        raise SeriesError("plethystic exponential requires constant term 0")
    total = TruncatedSeries.zero(f.num_vars, f.trunc_degree)
    for n in range(1, f.trunc_degree + 1):
        total = total + adams(n, f).scale(Fraction(1, n))
    return series_exp(total)


def plethystic_log(f: TruncatedSeries) -> TruncatedSeries:
    """Log(f) = Σ_{n>=1} μ(n)/n · ψ_n(log f)"""
    if f.constant_term != 1:
        raise SeriesError("plethystic logarithm requires constant term 1")
    log_f = series_log(f)
    total = TruncatedSeries.zero(f.num_vars, f.trunc_degree)
    for n in range(1, f.trunc_degree + 1):
        mu = mobius(n)
        if mu:
            total = total + adams(n, log_f).scale(Fraction(mu, n))
    return total


def specialize(f: TruncatedSeries) -> TruncatedSeries:
    """x_1 = .. = x_r = x"""
    out: Dict[Exponent, Fraction] = {}
    for e, c in f.coefficients.items():
        key = (sum(e),)
        out[key] = out.get(key, Fraction(0)) + c
    return TruncatedSeries(1, f.trunc_degree, out)


def series_from_counts(series: SeriesByDim, trunc_degree: Optional[int] = None) -> TruncatedSeries:
    """维数向量计数 → ℚ⟦x_1..x_r⟧"""
    D = series.max_size if trunc_degree is None else trunc_degree
    if D > series.max_size:
        raise SeriesError(f"truncation {D} exceeds the enumerated size {series.max_size}")
    return TruncatedSeries(series.vertex_count, D,
                           {alpha.entries: Fraction(c) for alpha, c in series.coefficients.items()})


def log_specialized(series: SeriesByDim, trunc_degree: Optional[int] = None) -> TruncatedSeries:
    """Log(Z)|_{x_i = x}，在特化后的单变量级数上取 Log"""
    return plethystic_log(specialize(series_from_counts(series, trunc_degree)))


# ---- 单变量多项式 ----

def poly_trim(p: Sequence[Fraction]) -> Coeffs:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Coeffs:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_pow(a: Sequence[Fraction], n: int) -> Coeffs:
    if n < 0:
        raise ValueError("negative polynomial power")
    result: Coeffs = [Fraction(1)]
    base = list(a)
    while n:
        if n & 1:
            result = poly_mul(result, base)
        base = poly_mul(base, base)
        n >>= 1
    return result


def expand_rational(numerator: Sequence[Fraction], denominator: Sequence[Fraction],
                    trunc_degree: int) -> TruncatedSeries:
    """
    numerator / denominator 展开到 x^trunc_degree

    Raises:
        SeriesError: denominator(0) = 0
    """
    den = [Fraction(c) for c in denominator]
    if not den or den[0] == 0:
        raise SeriesError("denominator must have a nonzero constant term")
    num = [Fraction(c) for c in numerator]
    coeffs: Coeffs = []
    for n in range(trunc_degree + 1):
        value = num[n] if n < len(num) else Fraction(0)
        for j in range(1, min(n, len(den) - 1) + 1):
            value -= den[j] * coeffs[n - j]
        coeffs.append(value / den[0])
    return TruncatedSeries.from_list(coeffs, trunc_degree)


def berlekamp_massey(seq: Sequence[Fraction]) -> Coeffs:
    """
    最短线性递推的连接多项式 C（C[0] = 1）:
    对 n >= L 有 Σ_{j=0..L} C[j]·s[n−j] = 0
    """
    s = [Fraction(v) for v in seq]
    C: Coeffs = [Fraction(1)]
    B: Coeffs = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n] + sum(C[i] * s[n - i] for i in range(1, min(L, len(C) - 1) + 1))
        if d == 0:
            m += 1
            continue
        coef = d / b
        shifted = [Fraction(0)] * m + [coef * x for x in B]
        T = list(C)
        if len(shifted) > len(C):
            C = C + [Fraction(0)] * (len(shifted) - len(C))
        for i, x in enumerate(shifted):
            C[i] -= x
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    C = C + [Fraction(0)] * (L + 1 - len(C))
    return C[:L + 1]


def detect_recurrence(seq: Sequence[Fraction], min_terms: int = 4) -> Optional[RationalFunctionGuess]:
    """
    把序列看作 Σ s_n x^n，猜测有理函数

    项数少于 min_terms，或递推阶数超过 len(seq)//2 − 1 时证据不足，返回 None。
    """
    s = [Fraction(v) for v in seq]
    if len(s) < max(min_terms, 1):
        return None
    C = berlekamp_massey(s)
    order = len(C) - 1
    if order > len(s) // 2 - 1:
        logger.debug(f"递推阶数 {order} 超出证据阈值，长度 {len(s)}")
        return None
    product = poly_mul(s, C) if any(s) else []
    numerator = poly_trim(product[:order]) if order else poly_trim(product[:1])
    guess = RationalFunctionGuess(numerator or [Fraction(0)], C, len(s) - 1)
    logger.info(f"检测到 {order} 阶递推")
    return guess


def parse_rational_function(text: str, variable: str = "x") -> Tuple[Coeffs, Coeffs]:
    """
    解析 "(x+2x^2)/(1-x^6)^2" 形式的单变量有理函数

    Raises:
        SeriesError: 无法解析，或不是 variable 的有理函数
    """
    x = Symbol(variable)
    transformations = standard_transformations + (implicit_multiplication_application, convert_xor)
    try:
        expr = parse_expr(text, local_dict={variable: x}, transformations=transformations)
        num, den = fraction(together(expr))
        coeffs = []
        for part in (num, den):
            poly = Poly(part, x)
            coeffs.append([Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())])
    except (SympifyError, SyntaxError, TokenError, TypeError, AttributeError, PolynomialError) as e:
        raise SeriesError(f"cannot parse rational function {text!r}: {e}") from e
    numerator, denominator = coeffs
    if not denominator or denominator[0] == 0:
        raise SeriesError(f"denominator of {text!r} vanishes at {variable}=0")
    lead = denominator[0]
    return [c / lead for c in numerator], [c / lead for c in denominator]


@dataclass
class SeriesComparison:
    """逐次数比较的结果"""
    through: int
    mismatch_degree: Optional[int] = None
    expected: Fraction = Fraction(0)
    got: Fraction = Fraction(0)

    @property
    def match(self) -> bool:
        return self.mismatch_degree is None

    def message(self) -> str:
        if self.match:
            return f"MATCH through degree {self.through}"
        return (f"MISMATCH at degree {self.mismatch_degree}: expected {format_fraction(self.expected)}, "
                f"got {format_fraction(self.got)}")


def compare_series(expected: TruncatedSeries, got: TruncatedSeries, through: int) -> SeriesComparison:
    """比较两个单变量级数的 x^0..x^through 系数"""
    if expected.num_vars != 1 or got.num_vars != 1:
        raise SeriesError("compare_series expects one-variable series")
    if through > min(expected.trunc_degree, got.trunc_degree):
        raise SeriesError(f"cannot compare through degree {through}: series are truncated earlier")
    for k in range(through + 1):
        if expected[k] != got[k]:
            return SeriesComparison(through, k, expected[k], got[k])
    return SeriesComparison(through)
