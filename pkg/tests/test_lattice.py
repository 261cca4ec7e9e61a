"""
Smith 标准形、精确单纯形、权格与正性证书
"""
from fractions import Fraction

import numpy as np
import pytest

from engine.lattice import positivity_certificate, weight_lattice
from engine.lp import InfeasibleError, LinearProgram, UnboundedError, maximize_min_slack
from engine.snf import smith_normal_form


def test_snf_diagonal_and_transforms():
    matrix = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    result = smith_normal_form(matrix)
    assert result.diagonal == (2, 6, 12)
    a = np.array(matrix, dtype=object)
    d = result.left.dot(a).dot(result.right)
    for i in range(3):
        for j in range(3):
            assert d[i, j] == (result.diagonal[i] if i == j else 0)
    ident = result.right.dot(result.right_inverse)
    assert all(ident[i, j] == (1 if i == j else 0) for i in range(3) for j in range(3))


def test_snf_rank_and_torsion():
    result = smith_normal_form([[2, 0], [0, 0]])
    assert result.rank == 1
    assert result.torsion == (2,)
    assert smith_normal_form([[1, 1], [1, -1]]).diagonal == (1, 2)


def test_snf_of_empty_relation_list():
    result = smith_normal_form([], columns=3)
    assert result.rank == 0
    assert result.torsion == ()


def test_lp_optimum_is_exact():
    lp = LinearProgram(2)
    lp.add_constraint({0: 1, 1: 2}, '<=', 4)
    lp.add_constraint({0: 3, 1: 1}, '<=', 6)
    lp.set_objective({0: 1, 1: 1})
    solution = lp.solve()
    assert solution.value == Fraction(14, 5)
    assert solution.values == [Fraction(8, 5), Fraction(6, 5)]


def test_lp_equality_and_infeasible():
    lp = LinearProgram(2)
    lp.add_constraint({0: 1, 1: 1}, '==', 1)
    lp.set_objective({0: 1})
    assert lp.solve().value == 1

    bad = LinearProgram(1)
    bad.add_constraint({0: 1}, '>=', 2)
    bad.add_constraint({0: 1}, '<=', 1)
    with pytest.raises(InfeasibleError):
        bad.solve()


def test_lp_unbounded():
    lp = LinearProgram(1)
    lp.set_objective({0: 1})
    with pytest.raises(UnboundedError):
        lp.solve()


def test_min_slack_must_be_positive():
    lp = LinearProgram(2)
    lp.add_constraint({0: 1, 1: 1}, '<=', 0)
    lp.set_objective({1: 1})
    with pytest.raises(InfeasibleError):
        maximize_min_slack(lp, 1)
    with pytest.raises(ValueError):
        lp.add_constraint({0: 1}, '<', 1)


def test_c3_weight_lattice(c3):
    lattice = weight_lattice(c3)
    assert lattice.lattice_rank == 3
    assert lattice.invariant_factors == ()
    cert = positivity_certificate(lattice)
    assert cert.evaluate(lattice.omega_bar) == 2
    assert set(cert.arrow_values.values()) == {Fraction(2, 3)}


def test_conifold_weight_lattice(conifold):
    lattice = weight_lattice(conifold)
    assert lattice.lattice_rank == 4
    cert = positivity_certificate(lattice)
    assert all(v == Fraction(1, 2) for v in cert.arrow_values.values())


@pytest.mark.parametrize("name", ['spp', 'dp3'])
def test_certificate_positive_on_arrows(name):
    from database import builtin_tiling
    t = builtin_tiling(name)
    lattice = weight_lattice(t)
    cert = positivity_certificate(lattice)
    assert min(cert.arrow_values.values()) > 0
    assert cert.evaluate(lattice.omega_bar) == 2
    for content in lattice.face_contents:
        assert cert.degree(content, lattice.arrow_names) == 2
