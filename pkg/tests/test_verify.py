"""
一致性报告、条件 C 搜索与分解特征检验
"""
import pytest

from database import builtin_tiling
from engine.verify import (check_condition_c, consistency_report, resolution_supports,
                           verify_resolution_character)


BUILTINS = [('c3', None), ('conifold', None), ('spp', None), ('dp3', None), ('c3-zn', 2), ('c3-zn', 3)]


@pytest.mark.parametrize("name, param", BUILTINS)
def test_builtins_are_certified(name, param):
    report = consistency_report(builtin_tiling(name, param))
    assert report.certified
    assert report.violations == []
    assert report.lattice_free
    assert not report.condition_c_checked


def test_report_lines(c3):
    lines = consistency_report(c3).lines()
    assert lines[0] == "tiling: c3"
    assert "certified: true" in lines
    assert "uncovered: -" in lines
    assert "r_charge_slack: 1/3" in lines


def test_condition_c_on_c3(c3):
    result = check_condition_c(c3)
    assert result.ok
    assert result.conclusive
    assert result.bound == 3
    assert result.states > 0


def test_condition_c_in_report(conifold):
    report = consistency_report(conifold, condition_c=True)
    assert report.condition_c_checked
    assert report.condition_c_ok
    assert report.certified


def test_condition_c_state_budget(dp3):
    result = check_condition_c(dp3, max_states=10)
    assert not result.conclusive


@pytest.mark.parametrize("name, param", BUILTINS)
def test_resolution_character(name, param):
    t = builtin_tiling(name, param)
    supports = resolution_supports(t, 6)
    for i in range(t.vertex_count):
        check = verify_resolution_character(t, i, 6, supports=supports)
        assert check.ok, check.failing_weight
        assert check.checked > 0


def test_resolution_character_arguments(c3):
    with pytest.raises(ValueError):
        verify_resolution_character(c3, 1, 2)
    supports = resolution_supports(c3, 2)
    with pytest.raises(ValueError):
        verify_resolution_character(c3, 0, 4, supports=supports)


def test_resolution_in_report(c3):
    report = consistency_report(c3, resolution_bound=3)
    assert report.resolution_bound == 3
    assert report.resolution_failures == []
    assert "resolution_bound: 3" in report.lines()
    assert report.certified
