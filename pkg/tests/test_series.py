"""
截断幂级数、plethystic Exp/Log、递推检测与有理函数
"""
import random
from fractions import Fraction

import pytest

from engine.ideals import partition_function
from engine.series import (adams, berlekamp_massey, compare_series, detect_recurrence, expand_rational,
                           log_specialized, mobius, parse_rational_function, plethystic_exp, plethystic_log,
                           poly_mul, poly_pow, series_arith, series_exp, series_from_counts, series_log,
                           specialize)
from models.series import RationalFunctionGuess, SeriesError, TruncatedSeries

F = Fraction

CASES = 50
DEGREE = 8


def _random_series(rng: random.Random, num_vars: int, degree: int) -> TruncatedSeries:
    coefficients = {}
    for _ in range(12):
        e = tuple(rng.randint(0, degree) for _ in range(num_vars))
        if 0 < sum(e) <= degree:
            coefficients[e] = F(rng.randint(-5, 5), rng.randint(1, 4))
    return TruncatedSeries(num_vars, degree, coefficients)


def test_series_normalizes_and_truncates():
    s = TruncatedSeries(1, 3, {(0,): 1, (2,): 0, (5,): 7})
    assert s.coefficients == {(0,): F(1)}
    assert TruncatedSeries.from_list([1, 2, 3]).trunc_degree == 2
    with pytest.raises(ValueError):
        TruncatedSeries(2, 3, {(1,): 1})


def test_arithmetic():
    x = TruncatedSeries.variable(0, 1, 4)
    one = TruncatedSeries.constant(1, 1, 4)
    geometric = one + x + x * x + x * x * x + x * x * x * x
    assert ((one - x) * geometric).coefficients == {(0,): F(1)}
    assert (2 * x)[1] == 2
    with pytest.raises(SeriesError):
        x + TruncatedSeries.variable(0, 1, 3)


def test_series_arith_entry_point():
    x = TruncatedSeries.variable(0, 1, 3)
    assert series_arith("add", x, x)[1] == 2
    assert series_arith("mul", x, x)[2] == 1
    assert series_arith("exp", x)[3] == F(1, 6)
    with pytest.raises(SeriesError):
        series_arith("div", x, x)
    with pytest.raises(SeriesError):
        series_arith("log", x)


def _random_pairs(seed: int):
    rng = random.Random(seed)
    for i in range(CASES):
        num_vars = 1 + i % 2
        yield _random_series(rng, num_vars, DEGREE), _random_series(rng, num_vars, DEGREE)


def test_log_and_exp_are_inverse():
    for h, _ in _random_pairs(20240611):
        assert series_log(series_exp(h)).coefficients == h.coefficients


def test_plethystic_exp_and_log_are_inverse():
    for f, _ in _random_pairs(7):
        assert plethystic_log(plethystic_exp(f)).coefficients == f.coefficients


def test_plethystic_exp_turns_sums_into_products():
    for f, g in _random_pairs(11):
        assert plethystic_exp(f + g).coefficients == (plethystic_exp(f) * plethystic_exp(g)).coefficients


def test_plethystic_log_turns_products_into_sums():
    for f, g in _random_pairs(13):
        one = TruncatedSeries.constant(1, f.num_vars, DEGREE)
        a, b = one + f, one + g
        assert plethystic_log(a * b).coefficients == (plethystic_log(a) + plethystic_log(b)).coefficients


def test_adams_operations_compose():
    for f, _ in _random_pairs(17):
        for m in (1, 2, 3):
            for n in (1, 2, 4):
                assert adams(m, adams(n, f)).coefficients == adams(m * n, f).coefficients


def test_exp_requires_constant_term_zero():
    with pytest.raises(SeriesError):
        series_exp(TruncatedSeries.constant(1, 1, 3))
    with pytest.raises(SeriesError):
        plethystic_log(TruncatedSeries.variable(0, 1, 3))


def test_macmahon_function():
    # Exp(Σ k x^k) 为平面分拆的生成函数
    f = TruncatedSeries.from_list([0, 1, 2, 3, 4, 5, 6, 7, 8])
    assert plethystic_exp(f).to_list() == [1, 1, 3, 6, 13, 24, 48, 86, 160]


def test_plethystic_exp_of_monomial():
    # Exp(x) = 1/(1-x)
    x = TruncatedSeries.variable(0, 1, 5)
    assert plethystic_exp(x).to_list() == [1] * 6


def test_adams_and_mobius():
    f = TruncatedSeries(2, 6, {(1, 0): 1, (1, 1): 3})
    assert adams(2, f).coefficients == {(2, 0): F(1), (2, 2): F(3)}
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
    with pytest.raises(SeriesError):
        adams(0, f)


def test_specialize():
    f = TruncatedSeries(2, 3, {(1, 0): 1, (0, 1): 2, (1, 1): F(1, 2)})
    assert specialize(f).to_list() == [0, 3, F(1, 2), 0]


def test_c3_log_is_sum_of_k_x_k(c3):
    series = partition_function(c3, 0, 7)
    assert log_specialized(series).to_list() == list(range(8))
    assert series_from_counts(series, 4).trunc_degree == 4
    with pytest.raises(SeriesError):
        series_from_counts(series, 8)


def test_spp_log_at_vertex_one(spp):
    log = log_specialized(partition_function(spp, 1, 5))
    assert log.to_list() == [0, 1, 2, 3, 2, 5]


def test_spp_log_through_7(spp):
    log = log_specialized(partition_function(spp, 1, 7))
    assert log.to_list() == [0, 1, 2, 3, 2, 5, 6, 7]


@pytest.mark.parametrize("name, vertex, golden", [
    ('spp', 1, "(x + 2x^2 + 3x^3 + 2x^4 + 5x^5 + 6x^6 + 5x^7 + 2x^8 + 3x^9 + 2x^10 + x^11)/(1 - x^6)^2"),
    ('spp', 2, "(x + x^2 + 3x^3 + 3x^4 + 5x^5 + 6x^6 + 5x^7 + 3x^8 + 3x^9 + x^10 + x^11)/(1 - x^6)^2"),
    ('dp3', 1, "(x + x^2 + 2x^3 + 2x^4 + 5x^5 + 6x^6 + 5x^7 + 2x^8 + 2x^9 + x^10 + x^11)/(1 - x^6)^2"),
])
def test_golden_rational_functions(name, vertex, golden):
    from database import builtin_tiling
    t = builtin_tiling(name)
    log = log_specialized(partition_function(t, vertex, 12))
    num, den = parse_rational_function(golden)
    assert compare_series(expand_rational(num, den, 12), log, 12).match


def test_expand_rational():
    s = expand_rational([0, 1, 1], [1, 0, 0, -1], 7)
    assert s.to_list() == [0, 1, 1, 0, 1, 1, 0, 1]
    with pytest.raises(SeriesError):
        expand_rational([1], [0, 1], 3)


def test_poly_helpers():
    assert poly_mul([1, -1], [1, 1]) == [1, 0, -1]
    assert poly_pow([1, 0, 0, 0, 0, 0, -1], 2) == [1] + [0] * 5 + [-2] + [0] * 5 + [1]
    assert poly_mul([], [1]) == []


def test_berlekamp_massey():
    assert berlekamp_massey([0, 1, 2, 3, 4, 5, 6, 7]) == [1, -2, 1]
    assert berlekamp_massey([1, 1, 2, 3, 5, 8, 13, 21]) == [1, -1, -1]
    assert berlekamp_massey([0, 0, 0, 0]) == [1]


def test_detect_recurrence():
    guess = detect_recurrence([0, 1, 2, 3, 4, 5, 6, 7])
    assert guess.numerator == [0, 1]
    assert guess.denominator == [1, -2, 1]
    assert guess.order == 2
    assert guess.valid_through == 7
    assert "denominator: 1 * x^0 + -2 * x^1 + 1 * x^2" in guess.to_text()
    fib = detect_recurrence([1, 1, 2, 3, 5, 8, 13, 21])
    assert fib.numerator == [1]
    assert detect_recurrence([1, 2, 3]) is None
    assert detect_recurrence([1, 1, 2, 3, 5, 8, 13, 21], min_terms=10) is None
    assert detect_recurrence([1, 0, 0, 0, 0, 0, 0, 1]) is None


def test_guess_requires_normalized_denominator():
    with pytest.raises(ValueError):
        RationalFunctionGuess([F(1)], [F(2), F(1)], 3)


def test_parse_rational_function():
    num, den = parse_rational_function("(x+x^2)/(1-x^3)")
    assert num == [0, 1, 1]
    assert den == [1, 0, 0, -1]
    num, den = parse_rational_function("2/(2-2x)")
    assert (num, den) == ([1], [1, -1])
    for bad in ("x+", "1/x", "sin(x)"):
        with pytest.raises(SeriesError):
            parse_rational_function(bad)


def test_compare_series_messages():
    a = TruncatedSeries.from_list([1, 2, 3])
    b = TruncatedSeries.from_list([1, 2, 4])
    assert compare_series(a, a, 2).message() == "MATCH through degree 2"
    result = compare_series(a, b, 2)
    assert not result.match
    assert result.message() == "MISMATCH at degree 2: expected 3, got 4"
    with pytest.raises(SeriesError):
        compare_series(a, b, 5)


def test_to_text():
    s = TruncatedSeries.from_list([0, F(1, 2), 0, 3])
    assert s.to_text() == "1/2 * x^1\n3 * x^3\n"
    m = TruncatedSeries(2, 2, {(1, 1): 2})
    assert m.to_text() == "2 * x0^1*x1^1\n"
