"""
理想与完美匹配的对应、高度函数和匹配路线
"""
import pytest

from engine.cover import build_cover
from engine.dimer import (DimerError, HeightError, MatchingRoute, height_field, ideal_to_matching,
                          matching_radius, matching_to_ideal, roundtrip_suite, z_via_matchings)
from engine.ideals import enumerate_ideals, partition_function
from models.cover import CoverArrow, CoverVertex
from models.dimer import MatchingDiff
from models.ideal import Ideal


def _matching_cover(t, size, base=0):
    return build_cover(t, base, size, radius=matching_radius(t, size))


@pytest.fixture(scope='module')
def c3_matching_cover(c3):
    return _matching_cover(c3, 4)


def test_root_ideal_flips_arrows_around_base(c3_matching_cover):
    mt = c3_matching_cover.table
    root = Ideal.from_elements([mt.root], 1)
    diff = ideal_to_matching(mt, root)
    assert diff.added == frozenset(CoverArrow(n, (0, 0)) for n in 'xyz')
    assert diff.removed == frozenset({CoverArrow('x', (-1, 0)), CoverArrow('y', (0, -1)),
                                      CoverArrow('z', (1, 1))})
    heights = height_field(mt, diff)
    assert heights.values == {mt.base: 1}
    assert matching_to_ideal(mt, diff).elements == root.elements


def test_empty_ideal_is_canonical_matching(c3_matching_cover):
    mt = c3_matching_cover.table
    empty = Ideal.from_elements([], 1)
    diff = ideal_to_matching(mt, empty)
    assert diff.is_empty
    assert height_field(mt, diff).total == 0


@pytest.mark.parametrize("name, size", [('c3', 4), ('conifold', 4), ('spp', 3)])
def test_roundtrip_suite(name, size):
    from database import builtin_tiling
    t = builtin_tiling(name)
    ctx = _matching_cover(t, size)
    ideals = list(enumerate_ideals(ctx.table, ctx.certificate, size))
    report = roundtrip_suite(ctx.table, ideals)
    assert report.ok, report.failures[:1]
    assert report.total == len(ideals)


def test_bad_difference_is_rejected(c3_matching_cover):
    mt = c3_matching_cover.table
    with pytest.raises(DimerError, match="not in the canonical matching"):
        height_field(mt, MatchingDiff(removed=frozenset({CoverArrow('x', (0, 0))})))
    with pytest.raises(DimerError, match="already in the canonical matching"):
        height_field(mt, MatchingDiff(added=frozenset({CoverArrow('x', (-1, 0))})))


def test_reversed_difference_is_rejected(c3_matching_cover):
    mt = c3_matching_cover.table
    root = ideal_to_matching(mt, Ideal.from_elements([mt.root], 1))
    flipped = MatchingDiff(added=root.removed, removed=root.added)
    with pytest.raises(DimerError):
        height_field(mt, flipped)


def test_height_error_is_a_dimer_error():
    assert issubclass(HeightError, DimerError)


def test_diff_serialization_parses_back():
    diff = MatchingDiff(frozenset({CoverArrow('x', (0, 0))}), frozenset({CoverArrow('y', (0, -1))}))
    assert MatchingDiff.parse(diff.serialize()) == diff
    with pytest.raises(ValueError):
        MatchingDiff.parse("flip x 0 0")
    with pytest.raises(ValueError):
        MatchingDiff(frozenset({CoverArrow('x', (0, 0))}), frozenset({CoverArrow('x', (0, 0))}))


def test_matching_route_on_c3(c3):
    assert z_via_matchings(c3, 0, 4).by_size() == [1, 1, 3, 6, 13]


def test_matching_route_on_conifold(conifold):
    for base in (0, 1):
        assert z_via_matchings(conifold, base, 3).equals(partition_function(conifold, base, 3))


def test_matching_route_counts_cuts(spp):
    ctx = _matching_cover(spp, 3, base=1)
    route = MatchingRoute(ctx.table, 3)
    series = route.run()
    assert series.equals(partition_function(spp, 1, 3))
    assert route.accepted == sum(series.by_size())
    assert route.discarded >= 0


def test_matching_route_size_zero(c3):
    assert z_via_matchings(c3, 0, 0).by_size() == [1]


@pytest.mark.parametrize("name, base, counts", [
    ('conifold', 0, [1, 1, 2, 5, 10, 18, 32, 59, 106]),
    ('spp', 1, [1, 1, 3, 6, 11, 22, 42, 74, 133]),
])
def test_routes_agree_through_size_8(name, base, counts):
    from database import builtin_tiling
    t = builtin_tiling(name)
    ctx = _matching_cover(t, 8, base)
    ideals = list(enumerate_ideals(ctx.table, ctx.certificate, 8))
    report = roundtrip_suite(ctx.table, ideals)
    assert report.ok, report.failures[:1]
    assert report.total == report.passed == sum(counts)
    series = MatchingRoute(ctx.table, 8).run()
    assert series.by_size() == counts
    assert series.equals(partition_function(t, base, 8))


def test_single_box_is_an_exact_cover_of_the_faces_around_base(c3):
    ctx = _matching_cover(c3, 1)
    route = MatchingRoute(ctx.table, 1)
    # 只有 base 的紧祖先闭包足够小: 其周围六个面待定，其余面全部冻结
    assert len(route.cover.columns) == 6
    assert route.canonical_core == frozenset({CoverArrow('x', (-1, 0)), CoverArrow('y', (0, -1)),
                                              CoverArrow('z', (1, 1))})
    solutions = sorted(sorted(map(str, s)) for s in route.cover.solutions())
    assert solutions == [['x -1 0', 'y 0 -1', 'z 1 1'], ['x 0 0', 'y 0 0', 'z 0 0']]


def test_route_counts_each_matching_once(c3):
    ctx = _matching_cover(c3, 4)
    route = MatchingRoute(ctx.table, 4)
    series = route.run()
    assert series.by_size() == [1, 1, 3, 6, 13]
    assert route.accepted == 24
    assert route.discarded == 0
    assert route.pruned >= 0 and route.oversize >= 0


def test_matching_route_on_c3_through_8(c3):
    assert z_via_matchings(c3, 0, 8).equals(partition_function(c3, 0, 8))


def test_matching_route_on_dp3(dp3):
    assert z_via_matchings(dp3, 1, 4).equals(partition_function(dp3, 1, 4))


def test_heights_are_zero_away_from_support(c3_matching_cover):
    mt = c3_matching_cover.table
    om = Ideal.from_elements([mt.root], 1)
    heights = height_field(mt, ideal_to_matching(mt, om))
    assert heights[CoverVertex(0, (2, 2))] == 0
