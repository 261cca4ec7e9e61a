"""
完美匹配、R-荷与覆盖窗口
"""
from fractions import Fraction

import pytest

from engine.cover import (WindowError, ZeroCycleError, build_cover, canonical_matching, class_children,
                          class_predecessors, class_rdegree, class_weight, dump_mu, mu_table, required_radius,
                          window_faces)
from engine.ideals import enumerate_ideals
from engine.matching import (ExactCover, is_non_degenerate, matching_counts, perfect_matchings, r_charge,
                             r_charge_residuals, reference_matching)
from models.cover import CoverArrow, CoverVertex, PathClass
from models.matching import Matching


def test_exact_cover_finds_all_solutions():
    solver = ExactCover([1, 2, 3], {'A': [1, 2], 'B': [3], 'C': [1], 'D': [2, 3], 'E': [1, 3]})
    found = sorted(tuple(sorted(s)) for s in solver.solutions())
    assert found == [('A', 'B'), ('C', 'D')]


class _WithoutRowA(ExactCover):
    def _admit(self, r):
        return r != 'A'


def test_exact_cover_admit_hook_skips_rows():
    solver = _WithoutRowA([1, 2, 3], {'A': [1, 2], 'B': [3], 'C': [1], 'D': [2, 3], 'E': [1, 3]})
    assert [sorted(s) for s in solver.solutions()] == [['C', 'D']]


def test_c3_and_conifold_matchings(c3, conifold):
    assert [m.serialize() for m in perfect_matchings(c3)] == ['x', 'y', 'z']
    assert [m.serialize() for m in perfect_matchings(conifold)] == ['x0', 'x1', 'y0', 'y1']
    assert reference_matching(c3) == Matching(frozenset({'x'}))


def test_spp_matchings(spp):
    matchings = perfect_matchings(spp)
    assert len(matchings) == 6
    for m in matchings:
        for face in spp.faces:
            assert sum(m.indicator(a) for a in face.cycle) == 1
    ok, uncovered = is_non_degenerate(spp)
    assert ok and uncovered == []
    assert matching_counts(spp)['x11'] == 2


def test_matching_serialization():
    m = Matching.parse("y, x ,z")
    assert m.serialize() == "x,y,z"
    with pytest.raises(ValueError):
        Matching(frozenset())


def test_r_charge(c3, conifold, dp3):
    assert set(r_charge(c3).values.values()) == {Fraction(2, 3)}
    assert set(r_charge(conifold).values.values()) == {Fraction(1, 2)}
    charge = r_charge(dp3)
    assert charge.slack > 0
    assert r_charge_residuals(dp3, charge.values) == []


def test_mu_on_c3(c3_cover):
    mt = c3_cover.table
    # 最短路径上 x 的个数
    for a in range(-3, 4):
        for b in range(-3, 4):
            assert mt.mu_of(CoverVertex(0, (a, b))) == max(a, 0, a - b)
    assert mt.stabilized
    with pytest.raises(WindowError):
        mt.mu_of(CoverVertex(0, (mt.window_radius, 0)))


def test_slack_and_canonical_matching(c3_cover):
    mt = c3_cover.table
    assert mt.arrow_slack(CoverArrow('x', (0, 0))) == 0
    assert mt.arrow_slack(CoverArrow('x', (-1, 0))) == 1
    i0 = canonical_matching(mt)
    assert CoverArrow('x', (-1, 0)) in i0
    assert CoverArrow('y', (0, 0)) not in i0
    # I₀ 与窗口内每个面恰好相交一次
    for face in window_faces(mt, 3):
        assert sum(1 for a in face if a in i0) == 1


def test_path_classes_of_root(c3_cover):
    mt = c3_cover.table
    root = mt.root
    children = class_children(mt, root)
    assert sorted(c.end.cell for _, c in children) == [(-1, -1), (0, 1), (1, 0)]
    assert all(c.k == 0 for _, c in children)
    assert class_predecessors(mt, root) == []
    assert class_rdegree(mt, c3_cover.certificate, root) == 0
    for arrow, child in children:
        assert class_rdegree(mt, c3_cover.certificate, child) == Fraction(2, 3)
        assert (arrow, root) in class_predecessors(mt, child)


def test_omega_exponent_raises_degree(c3_cover):
    c = PathClass(c3_cover.table.base, 1)
    assert class_rdegree(c3_cover.table, c3_cover.certificate, c) == 2
    with pytest.raises(ValueError):
        PathClass(c3_cover.table.base, -1)


def test_mu_table_arguments(c3):
    m0 = reference_matching(c3)
    with pytest.raises(ValueError):
        mu_table(c3, m0, 0, 0)
    with pytest.raises(ValueError):
        mu_table(c3, m0, 1, 4)
    with pytest.raises(ValueError, match="not a perfect matching"):
        mu_table(c3, Matching(frozenset({'x', 'y'})), 0, 4)


def test_zero_weight_cycle_is_rejected():
    from database import parse_tiling
    t = parse_tiling("vertices 2\n"
                     "arrow a 0 1 0 0\narrow b 1 0 0 0\narrow c 0 0 1 0\narrow d 0 0 0 1\n"
                     "face + c\nface - d\n", name="bad")
    with pytest.raises(ZeroCycleError):
        mu_table(t, Matching(frozenset({'c', 'd'})), 0, 2)


def test_build_cover_radius(conifold):
    ctx = build_cover(conifold, 1, 3)
    assert ctx.table.window_radius >= required_radius(conifold, 3)
    assert ctx.table.base == CoverVertex(1, (0, 0))
    lines = dump_mu(ctx.table)
    assert lines[0].startswith("# base=1@(0,0)")
    assert "1 0 0 0" in lines


def test_class_weight_adds_arrow_weights(conifold_cover):
    mt, lattice = conifold_cover.table, conifold_cover.lattice
    assert class_weight(mt, lattice, mt.root) == lattice.zero()
    assert class_weight(mt, lattice, PathClass(mt.base, 1)) == lattice.omega_bar
    level, seen = [mt.root], {mt.root}
    for _ in range(4):
        following = []
        for c in level:
            for arrow, child in class_children(mt, c):
                expected = lattice.add(class_weight(mt, lattice, c), lattice.arrow_weight[arrow.name])
                assert class_weight(mt, lattice, child) == expected
                if child not in seen:
                    seen.add(child)
                    following.append(child)
        level = following


def _canonical_arrows(mt, radius):
    return {arrow for v in mt.vertices(radius) for arrow, _ in mt.outgoing(v) if mt.arrow_slack(arrow) >= 1}


@pytest.mark.parametrize("name", ['conifold', 'spp', 'dp3'])
def test_canonical_matching_ignores_reference_matching(name):
    from database import builtin_tiling
    t = builtin_tiling(name)
    found = [_canonical_arrows(mu_table(t, m0, 0, 6), 3) for m0 in perfect_matchings(t)]
    assert len(found) > 1
    assert all(arrows == found[0] for arrows in found)


@pytest.mark.parametrize("name", ['c3', 'conifold', 'spp', 'dp3'])
def test_mu_satisfies_triangle_inequality(name):
    from database import builtin_tiling
    mt = build_cover(builtin_tiling(name), 0, 4).table
    for v in mt.vertices():
        for arrow, head in mt.outgoing(v):
            if mt.in_window(head):
                assert mt.mu_of(head) <= mt.mu_of(v) + mt.chi(arrow.name)


def test_c3_ideals_are_plane_partitions(c3_cover):
    mt = c3_cover.table
    assert mt.tiling.arrow_names == ('x', 'y', 'z')

    def box(c):
        return tuple(n + c.k for n in mt.rep_content[c.end])

    counts = [0] * 7
    shapes = set()
    for om in enumerate_ideals(mt, c3_cover.certificate, 6):
        boxes = frozenset(box(c) for c in om.elements)
        assert len(boxes) == len(om)
        for p in boxes:
            for i in range(3):
                if p[i]:
                    assert p[:i] + (p[i] - 1,) + p[i + 1:] in boxes
        shapes.add(boxes)
        counts[len(boxes)] += 1
    assert len(shapes) == sum(counts)
    assert counts == [1, 1, 3, 6, 13, 24, 48]
