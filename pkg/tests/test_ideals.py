"""
理想枚举与 DT 配分函数
"""
import pytest

import engine.verify
from engine.cover import build_cover
from engine.ideals import (ConsistencyError, EnumerationLimits, ResourceLimitError, brute_force_series,
                           dt_partition_function, dt_sign, enumerate_ideals, ideal_series, is_downward_closed,
                           partition_function, require_certificate)
from models.ideal import SeriesByDim
from models.report import ConsistencyReport
from models.tiling import DimVector

C3_COUNTS = [1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500, 859, 1479]


def test_c3_plane_partitions(c3):
    series = partition_function(c3, 0, 9)
    assert series.by_size() == C3_COUNTS[:10]
    assert series[DimVector((4,))] == 13
    assert series.authoritative


def test_c3_plane_partitions_through_12(c3):
    assert partition_function(c3, 0, 12).by_size() == C3_COUNTS


def test_conifold_counts(conifold):
    assert partition_function(conifold, 0, 3).by_size() == [1, 1, 2, 5]
    assert partition_function(conifold, 1, 3).by_size() == [1, 1, 2, 5]


def test_enumeration_yields_distinct_ideals(conifold_cover):
    ideals = list(enumerate_ideals(conifold_cover.table, conifold_cover.certificate, 5))
    assert len({om.elements for om in ideals}) == len(ideals)
    for om in ideals:
        assert len(om) <= 5
        assert om.validate() == []
        assert is_downward_closed(conifold_cover.table, om.elements)
    assert ideals[0].elements == frozenset()


@pytest.mark.parametrize("name, param, counts", [
    ('c3', None, C3_COUNTS[:7]),
    ('conifold', None, [1, 1, 2, 5, 10, 18, 32]),
    ('spp', None, None),
    ('dp3', None, [1, 1, 2, 4, 7, 14, 26]),
    ('c3-zn', 2, None),
    ('c3-zn', 3, [1, 1, 3, 6, 13, 24, 48]),
])
def test_canonical_search_agrees_with_brute_force(name, param, counts):
    from database import builtin_tiling
    t = builtin_tiling(name, param)
    ctx = build_cover(t, 0, 6)
    series = ideal_series(ctx, 6)
    assert series.equals(brute_force_series(ctx.table, 6))
    if counts is not None:
        assert series.by_size() == counts


def test_threads_give_the_same_series(spp):
    ctx = build_cover(spp, 1, 5)
    assert ideal_series(ctx, 5, threads=3).equals(ideal_series(ctx, 5))


def test_small_sizes(c3_cover):
    assert ideal_series(c3_cover, 0).by_size() == [1]
    assert ideal_series(c3_cover, 1).by_size() == [1, 1]
    assert list(enumerate_ideals(c3_cover.table, c3_cover.certificate, 0))[0].elements == frozenset()
    with pytest.raises(ValueError):
        list(enumerate_ideals(c3_cover.table, c3_cover.certificate, -1))


def test_dt_signs_on_c3(c3):
    signed = dt_partition_function(c3, 0, 5)
    assert signed.signed
    for k, count in enumerate(C3_COUNTS[:6]):
        assert signed[DimVector((k,))] == (-1) ** k * count


def test_dt_sign_uses_ringel_form(conifold):
    assert dt_sign(conifold, 0, DimVector((1, 0))) == 1
    # α = (1,1): 1 + (1 + 1 - 4) 为奇数
    assert dt_sign(conifold, 0, DimVector((1, 1))) == -1


def test_resource_limit_keeps_partial_result(c3_cover):
    with pytest.raises(ResourceLimitError) as info:
        ideal_series(c3_cover, 6, limits=EnumerationLimits(max_ideals=40))
    partial = info.value.partial
    assert partial is not None
    assert not partial.authoritative
    assert "partial=true" in partial.to_text()
    assert sum(partial.by_size()) < sum(C3_COUNTS[:7])


def test_uncertified_tiling_is_refused(c3, monkeypatch):
    monkeypatch.setattr(engine.verify, 'consistency_report',
                        lambda t: ConsistencyReport(tiling=t.name, violations=["no certificate"]))
    with pytest.raises(ConsistencyError, match="not certified"):
        require_certificate(c3)
    require_certificate(c3, force=True)


def test_series_text_round_trip(conifold):
    series = partition_function(conifold, 0, 3)
    again = SeriesByDim.from_text(series.to_text())
    assert again.equals(series)
    assert again.max_size == 3
    assert series.to_text().splitlines()[0] == "# vertex=0 max_size=3 signed=false"
