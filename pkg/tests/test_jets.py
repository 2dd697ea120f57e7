import pytest

from graphseries.catalog import INF, inverse_pochhammer
from graphseries.errors import BudgetExceeded, SpecViolation
from graphseries.graphs import builtin
from graphseries.jets import (
    JetPresentation,
    compare_with_graph_series,
    hilbert_series,
    jet_generators,
    random_primes,
)

from oracles import inv_poch, partitions, poly_mul, rogers_ramanujan_count


def test_fat_point_rogers_ramanujan():
    t = hilbert_series(JetPresentation.fat_point(12))
    assert t.dims == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9]
    assert t.dims == rogers_ramanujan_count(12)
    assert t.certification == "dual-prime"


def test_fat_point_degree_two_generator():
    pres = JetPresentation.fat_point(2)
    gens = jet_generators(pres, 2)
    assert gens == [{((0, 1), (0, 1)): 1}]
    assert hilbert_series(pres).dims[2] == 1


def test_two_lines_degree_two():
    pres = JetPresentation(2, ((1, 2),), 2)
    assert len(jet_generators(pres, 2)) == 1
    # monomials of degree 2 in two letters: x1_2, x2_2, x1_1^2, x2_1^2, x1_1 x2_1
    assert hilbert_series(pres).dims[2] == 4


def test_degree_one_has_no_generators():
    pres = JetPresentation(3, ((1, 2), (2, 3)), 1)
    assert jet_generators(pres, 1) == []
    assert hilbert_series(pres).dims == [1, 3]


def test_two_lines_series():
    t = hilbert_series(JetPresentation(2, ((1, 2),), 10))
    ref = poly_mul(inv_poch(1, 10), partitions(10), 10)
    assert t.dims == ref


def test_free_ring():
    t = hilbert_series(JetPresentation.free(2, 8))
    assert t.dims == poly_mul(partitions(8), partitions(8), 8)


@pytest.mark.parametrize("name", ["A2", "A3", "C3"])
def test_matches_graph_series(name):
    spec = builtin(name)
    res = compare_with_graph_series(JetPresentation.from_graph(spec.graph, 10), spec)
    assert res.matches, res.as_dict()
    assert res.certification == "dual-prime"


def test_exact_mode_agrees_with_modular():
    pres = JetPresentation.from_graph(builtin("C3").graph, 6)
    exact = hilbert_series(pres, mode="exact")
    modular = hilbert_series(pres, mode="single-prime", seed=7)
    assert exact.dims == modular.dims
    assert exact.certification == "exact-rational"


def test_removing_relation_never_decreases():
    pres = JetPresentation.from_graph(builtin("C3").graph, 8)
    base = hilbert_series(pres).dims
    for rel in pres.relations:
        smaller = hilbert_series(pres.without(rel)).dims
        assert all(a >= b for a, b in zip(smaller, base))


def test_unit_coefficients_same_ranks():
    pres = JetPresentation.from_graph(builtin("A3").graph, 9)
    assert hilbert_series(pres).dims == hilbert_series(pres, unit_coefficients=True).dims


def test_dims_start_with_one_and_ell():
    t = hilbert_series(JetPresentation.from_graph(builtin("D4").graph, 4))
    assert t.dims[:2] == [1, 4]


def test_budget():
    with pytest.raises(BudgetExceeded):
        hilbert_series(JetPresentation.fat_point(15))
    with pytest.raises(BudgetExceeded):
        hilbert_series(JetPresentation.fat_point(9), mode="exact")


def test_presentation_validation():
    with pytest.raises(SpecViolation):
        JetPresentation(2, ((1, 3),))
    with pytest.raises(SpecViolation):
        JetPresentation(2, ((1, 2), (2, 1)))
    with pytest.raises(SpecViolation):
        JetPresentation.from_graph(builtin("B2").graph)


def test_primes_are_seeded_and_large():
    a = random_primes(2, seed=3)
    assert a == random_primes(2, seed=3)
    assert all(p.bit_length() == 62 for p in a)
    assert a[0] != a[1]


def test_parallel_degrees_match():
    pres = JetPresentation.from_graph(builtin("A3").graph, 8)
    assert hilbert_series(pres, jobs=2).dims == hilbert_series(pres).dims
