import random

import pytest
from hypothesis import given

from chartfold import dihedral, figures, perm
from chartfold.chart import Chart, ChartError, black, branch_points, validate
from chartfold.compile import build_planar_cover_chart, compile_chart, resolve_all, resolve_branch
from chartfold.cover import cover_invariants, global_monodromies, sheet_trace_oracle
from chartfold.dihedral import DihedralElement
from tests.conftest import chart_from_seed, seeds


def test_submarine_compiles_to_three_spheres():
    inv = cover_invariants(compile_chart(figures.submarine_dihedral()))
    assert (inv.components, inv.euler_total) == (3, 6)


def test_compile_needs_dihedral_chart():
    with pytest.raises(ChartError):
        compile_chart(figures.submarine())


def test_resolve_branch_leaves_black_alone():
    c = figures.submarine()
    assert resolve_branch(c, 1) == c
    with pytest.raises(ChartError):
        resolve_branch(c, 0)


@given(seeds)
def test_compilation_is_natural(seed):
    d = chart_from_seed(seed, "dihedral", degrees=(3, 5), steps=random.Random(seed).randint(0, 10))
    c = compile_chart(d)
    assert validate(c) == []
    assert global_monodromies(c) == global_monodromies(d)
    assert cover_invariants(c).summary() == cover_invariants(d).summary() == sheet_trace_oracle(c).summary()


@given(seeds)
def test_resolution_gives_simple_points_and_keeps_invariants(seed):
    c = compile_chart(chart_from_seed(seed, "dihedral", degrees=(3, 5)))
    r = resolve_all(c)
    assert all(bp.is_simple for bp in branch_points(r))
    before, after = cover_invariants(c).summary(), cover_invariants(r).summary()
    assert (after[0],) + after[2:] == (before[0],) + before[2:]


def test_planar_cover_from_the_example_product():
    n = 5
    r = DihedralElement.r(n)
    x = DihedralElement.x(n)
    colors = [r, x * r * dihedral.inverse(x), x * x]
    c = build_planar_cover_chart(n, colors)
    inv = cover_invariants(c)
    assert inv.branch_count == 3 and inv.euler_total == 2 and inv.components == 1


def test_planar_cover_needs_trivial_product():
    with pytest.raises(ChartError):
        build_planar_cover_chart(5, [DihedralElement.r(5), DihedralElement.x(5)])


@pytest.mark.parametrize("n", [3, 5, 7])
def test_cyclic_pair_is_a_sphere(n):
    x = DihedralElement.x(n)
    inv = cover_invariants(build_planar_cover_chart(n, [x, dihedral.inverse(x)]))
    assert (inv.components, inv.euler_total) == (1, 2)


def test_bowls_use_reduced_reflection_words():
    c = compile_chart(Chart(7, "dihedral", (black(1, "r"), black(1, "r", "-"))))
    assert len(c.events[0].labels) == len(dihedral.letter_psi_word(7, "r", reduced=True))
    assert perm.is_reduced(7, dihedral.letter_psi_word(7, "r", True))
