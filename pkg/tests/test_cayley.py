from __future__ import annotations

from itertools import combinations, product

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from freecayley.cayley import (
    CaveatRegime,
    CayleySpec,
    ElementaryGroup,
    GroupTable,
    PowerGroup,
    SizeCapExceeded,
    cauchy_element,
    check_sum_distinctness,
    chromatic_bounds,
    chromatic_number_cayley,
    clique_down,
    clique_number,
    clique_up,
    code_is_coclique,
    coset_partition,
    cover_structure,
    cyclic_group,
    expected_free_omega,
    free_connection_set,
    free_quotient,
    independence_number,
    lift_connection_set,
    materialize,
    neighbor_query,
    neighborhood_of_identity,
    quotient_connection_set,
    symmetric_group,
    verify_induced_copy,
    verify_lift,
)
from freecayley.codes import certify, code_from_generator, repetition_code, trivial_code
from freecayley.fplinalg import MatModP, extend_to_basis
from freecayley.graph import (
    Graph,
    chromatic_number,
    complete_graph,
    cycle_graph,
    empty_graph,
    is_equitable,
    max_clique,
    quotient_by_partition,
    triangle_graph,
)

from conftest import graphs, to_nx


def nx_omega(g: Graph) -> int:
    return max((len(c) for c in nx.find_cliques(to_nx(g))), default=0)


@st.composite
def elementary_specs(draw, max_order=27):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 3))
    while p ** n > max_order:
        n -= 1
    group = ElementaryGroup(p, n)
    elems = [e for e in group.elements() if any(e)]
    reps = sorted({min(e, group.inv(e)) for e in elems})
    chosen = draw(st.lists(st.sampled_from(reps), unique=True, max_size=len(reps))) if reps else []
    return CayleySpec(group, tuple(chosen) + tuple(group.inv(c) for c in chosen))


# --- specs and materialisation ----------------------------------------------

def test_spec_validation():
    g = ElementaryGroup(3, 2)
    with pytest.raises(ValueError):
        CayleySpec(g, ((0, 0),))
    with pytest.raises(ValueError):
        CayleySpec(g, ((1, 0),))  # inverse (2, 0) missing
    with pytest.raises(ValueError):
        CayleySpec(g, ((3, 0), (0, 0)))


def test_free_connection_set_examples():
    assert free_connection_set(complete_graph(3), 2).connection == ((0, 1, 1), (1, 0, 1), (1, 1, 0))
    assert free_connection_set(complete_graph(2), 3).connection == ((1, 2), (2, 1))
    assert free_connection_set(empty_graph(4), 5).connection == ()


@settings(max_examples=60, deadline=None)
@given(graphs(max_order=6), st.sampled_from([2, 3, 5, 7]))
def test_free_connection_set_size(x, p):
    spec = free_connection_set(x, p)
    assert len(spec.connection) == (x.size if p == 2 else 2 * x.size)
    assert spec.group.identity not in spec.connection


def test_materialize_examples():
    c4 = materialize(CayleySpec(ElementaryGroup(2, 2), ((0, 1), (1, 0))))
    assert nx.is_isomorphic(to_nx(c4), nx.cycle_graph(4))
    g = materialize(free_connection_set(complete_graph(3), 2))
    assert g.order == 8 and all(g.degree(v) == 3 for v in range(8)) and nx_omega(g) == 4
    assert materialize(CayleySpec(ElementaryGroup(3, 2), ())).size == 0
    with pytest.raises(SizeCapExceeded):
        materialize(CayleySpec(ElementaryGroup(2, 5), ()), max_vertices=16)


def test_neighbor_query_matches_materialize():
    spec = free_connection_set(cycle_graph(4), 3)
    g = materialize(spec)
    elems = spec.group.elements()
    idx = {e: i for i, e in enumerate(elems)}
    for e in elems[:10]:
        assert sorted(idx[n] for n in neighbor_query(spec, e)) == g.neighbors(idx[e])


def test_neighbourhood_examples():
    nb = neighborhood_of_identity(free_connection_set(complete_graph(3), 2))
    assert nb == complete_graph(3)
    assert neighborhood_of_identity(CayleySpec(ElementaryGroup(2, 3), ())).order == 0
    nb5 = neighborhood_of_identity(free_connection_set(complete_graph(3), 5))
    assert nx.is_isomorphic(to_nx(nb5), nx.cycle_graph(6))


@settings(max_examples=80, deadline=None)
@given(elementary_specs())
def test_transitivity_shortcut(spec):
    size, wit = clique_number(spec)
    assert size == nx_omega(materialize(spec))
    assert spec.group.identity in wit
    assert all(spec.adjacent(a, b) for a, b in combinations(wit, 2))


@settings(max_examples=60, deadline=None)
@given(elementary_specs(max_order=16))
def test_cayley_chromatic_oracle_matches_generic(spec):
    g = materialize(spec)
    assert chromatic_number_cayley(spec) == chromatic_number(g)[0]
    b = chromatic_bounds(spec)
    assert b.alpha == independence_number(spec)[0] == max_clique(nx_complement(g))[0]
    if b.colouring is not None:
        assert all(b.colouring[a] != b.colouring[c] for a in b.colouring for c in neighbor_query(spec, a))


def nx_complement(g: Graph) -> Graph:
    return Graph(g.order, [e for e in combinations(range(g.order), 2) if not g.has_edge(*e)])


@settings(max_examples=40, deadline=None)
@given(elementary_specs(max_order=27))
def test_resolve_above_returns_certified_lower_bound(spec):
    chi = chromatic_number(materialize(spec))[0]
    got = chromatic_number_cayley(spec, resolve_above=0)
    assert got <= chi


def test_cubelike_graphs_have_no_omega_three(ensemble):
    for x in ensemble:
        assert clique_number(free_connection_set(x, 2))[0] != 3
    for conn in combinations([e for e in product(range(2), repeat=3) if any(e)], 3):
        assert clique_number(CayleySpec(ElementaryGroup(2, 3), conn))[0] != 3


# --- omega ladder with the trivial code ---------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_free_omega_ladder(ensemble, p):
    for x in ensemble[:80]:
        om = max_clique(x)[0]
        assert clique_number(free_connection_set(x, p))[0] == expected_free_omega(om, p)


# --- sum distinctness ---------------------------------------------------------

def test_sum_distinctness_examples():
    for v in range(1, 7):
        assert check_sum_distinctness(v, 5).ok
    rep = check_sum_distinctness(2, 3)
    assert rep.ok and ("3-sum", (0, 0, 0), (1, 1, 1)) in rep.permitted
    rep2 = check_sum_distinctness(3, 2)
    assert rep2.ok and any(kind == "2-sum" for kind, _, _ in rep2.permitted)


def test_sum_distinctness_detects_collisions():
    # a repeated generator breaks every statement
    rep = check_sum_distinctness(3, 5, [(1, 0), (0, 1), (1, 0)])
    assert not rep.ok and not rep.checks["3-sums"].ok and not rep.checks["sidon"].ok
    # for p = 3 the only 3-sum collisions are 3 g_i = 0 = 3 g_j
    rep3 = check_sum_distinctness(2, 3, [(1, 0), (0, 1)])
    assert rep3.ok and rep3.permitted


def test_sum_distinctness_count_oracle():
    # for p >= 5, distinct 3-sums means as many sums as 3-multisets
    v, p = 5, 5
    sums = {tuple(sum(1 for t in ms if t == i) % p for i in range(v))
            for ms in __import__("itertools").combinations_with_replacement(range(v), 3)}
    assert len(sums) == len(list(__import__("itertools").combinations_with_replacement(range(v), 3)))
    assert check_sum_distinctness(v, p).ok


# --- quotients ----------------------------------------------------------------

def test_quotient_examples():
    spec = free_connection_set(complete_graph(3), 2)
    ident = quotient_connection_set(spec, trivial_code(2, 3), extend_to_basis([], 2, 3))
    assert ident == spec
    code = certify(repetition_code(3))
    basis = extend_to_basis(code.basis(), 2, 3)
    assert basis.vectors == ((1, 1, 1), (1, 0, 0), (0, 1, 0))
    q = quotient_connection_set(spec, code, basis)
    assert len(q.connection) == 3 == len(spec.connection)
    assert nx.is_isomorphic(to_nx(materialize(q)), nx.complete_graph(4))


def test_quotient_requires_certified_distance():
    spec = free_connection_set(complete_graph(3), 2)
    code = repetition_code(3)  # no certificate
    with pytest.raises(ValueError):
        quotient_connection_set(spec, code, extend_to_basis(code.basis(), 2, 3))
    weak = certify(code_from_generator(MatModP.from_rows(2, [[1, 1, 0]])))
    with pytest.raises(ValueError):
        quotient_connection_set(spec, weak, extend_to_basis(weak.basis(), 2, 3))


QUOTIENT_CASES = [
    (cycle_graph(5), 2, repetition_code(5)),
    (complete_graph(4), 2, repetition_code(4)),
    (cycle_graph(4), 3, code_from_generator(MatModP.from_rows(3, [[1, 1, 1, 1]]))),
    (Graph(6, [(0, 1), (1, 2), (3, 4)]), 2, code_from_generator(MatModP.from_rows(2, [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1]]))),
]


@pytest.mark.parametrize("x, p, code", QUOTIENT_CASES)
def test_quotient_spec_equals_partition_quotient(x, p, code):
    code = certify(code)
    fq = free_quotient(x, p, code)
    full = materialize(fq.free)
    part = coset_partition(fq.free, code)
    assert is_equitable(full, part).ok
    collapsed = quotient_by_partition(full, part)
    assert nx.is_isomorphic(to_nx(collapsed), to_nx(materialize(fq.spec)))


def test_bijection_needs_more_than_distance_three():
    # e_0 + e_1 and e_2 + e_3 differ by 1111, a codeword of the d = 4 repetition code
    fq = free_quotient(complete_graph(4), 2, certify(repetition_code(4)))
    assert not fq.injective and len(fq.spec.connection) == 3
    assert free_quotient(cycle_graph(5), 2, certify(repetition_code(5))).injective


def test_distance_ladder_examples():
    fq = free_quotient(cycle_graph(5), 2, certify(repetition_code(5)))
    assert code_is_coclique(fq).ok and verify_induced_copy(fq).ok
    ident = free_quotient(cycle_graph(5), 2)
    assert verify_induced_copy(ident).ok
    # a distance-3 code can collapse a non-edge onto an edge; this is a verdict, not an error
    d3 = certify(code_from_generator(MatModP.from_rows(2, [[1, 1, 1, 0, 0], [0, 0, 1, 1, 1]])))
    assert d3.distance.d == 3
    verdict = verify_induced_copy(free_quotient(Graph(5, [(0, 1)]), 2, d3))
    assert not verdict.ok and verdict.witness == (3, 4)


def test_induced_copy_needs_certificate():
    fq = free_quotient(cycle_graph(5), 2, certify(repetition_code(5)))
    from dataclasses import replace
    with pytest.raises(ValueError):
        verify_induced_copy(replace(fq, code=repetition_code(5)))


def test_rep7_quotient_preserves_ladder(ensemble):
    code = certify(repetition_code(7))
    for x in [g for g in ensemble if g.order == 7][:15]:
        fq = free_quotient(x, 2, code)
        assert code_is_coclique(fq).ok
        assert verify_induced_copy(fq).ok
        assert clique_number(fq.spec)[0] == expected_free_omega(max_clique(x)[0], 2)


# --- clique transfer ----------------------------------------------------------

def test_clique_up_examples():
    fq = free_quotient(complete_graph(3), 2)
    assert clique_up([1], fq).image == ((0, 0, 0),)
    t = clique_up([0, 1, 2], fq)
    assert set(t.image) <= {(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)} and len(t.image) == 3
    # the triangle closes to the K4 {0, 110, 101, 011} in the cubelike graph
    k4 = list(t.image) + [(0, 1, 1)]
    assert all(fq.spec.adjacent(a, b) for a, b in combinations(k4, 2))
    fq5 = free_quotient(complete_graph(3), 5)
    assert len(clique_up([0, 1, 2], fq5).image) == 3
    with pytest.raises(ValueError):
        clique_up([0, 1, 2], free_quotient(cycle_graph(5), 2))


@pytest.mark.parametrize("x, p", [(complete_graph(4), 5), (complete_graph(5), 2), (complete_graph(3), 3),
                                  (complete_graph(4), 7), (complete_graph(6), 2)])
def test_round_trip(x, p):
    fq = free_quotient(x, p)
    up = clique_up(list(range(x.order)), fq)
    down = clique_down(up.image, fq)
    assert sorted(down.image) == list(range(x.order)) and down.anchor == up.anchor


def test_round_trip_on_ensemble(ensemble):
    for p in (3, 5):
        for x in ensemble[:60]:
            k, s = max_clique(x)
            fq = free_quotient(x, p)
            if p == 3 and k < 3:
                continue
            down = clique_down(clique_up(s, fq).image, fq)
            assert len(down.image) == k and x.is_clique(down.image)


def test_clique_down_translates_and_signals_caveats():
    fq = free_quotient(complete_graph(4), 5)
    t = clique_up([0, 1, 2, 3], fq).image
    shift = (1, 2, 3, 4)
    moved = [fq.spec.group.mul(e, shift) for e in t]
    assert len(clique_down(moved, fq).image) == 4
    assert clique_down([(0, 0, 0, 0)], fq).image == (0,)
    with pytest.raises(CaveatRegime):
        clique_down(list(clique_up([0, 1, 2], free_quotient(complete_graph(3), 2)).image), free_quotient(complete_graph(3), 2))
    with pytest.raises(CaveatRegime):
        fq3 = free_quotient(complete_graph(2), 3)
        clique_down(list(clique_up([0, 1], fq3).image), fq3)
    with pytest.raises(ValueError):
        clique_down([(0, 0, 0, 0), (1, 1, 0, 0)], fq)


# --- neighbourhood structure --------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5])
def test_cover_structure_on_small_graphs(ensemble, p):
    for x in [g for g in ensemble if g.order <= 6]:
        assert cover_structure(x, p).ok


def test_cover_examples():
    assert cover_structure(complete_graph(3), 2).ok
    assert cover_structure(complete_graph(3), 5).ok
    for p in (2, 3, 5):
        assert cover_structure(cycle_graph(5), p).ok
        assert triangle_graph(cycle_graph(5)).size == 0


def test_triangle_free_neighbourhood_is_edgeless():
    for p in (2, 5):
        assert neighborhood_of_identity(free_connection_set(cycle_graph(6), p)).size == 0
    nb3 = neighborhood_of_identity(free_connection_set(cycle_graph(6), 3))
    assert nb3.size == len(nb3.masks) // 2  # exactly the matching {c, -c}


# --- groups and lifting -------------------------------------------------------

def test_group_table_validation():
    assert symmetric_group(3).order == 6
    with pytest.raises(ValueError):
        GroupTable(((0, 1), (1, 1)))
    # identity row fine but not associative
    bad = ((0, 1, 2), (1, 0, 0), (2, 0, 1))
    with pytest.raises(ValueError):
        GroupTable(bad)


def test_cauchy_examples():
    assert cauchy_element(cyclic_group(4), 2) == 2
    s3 = symmetric_group(3)
    assert s3.element_order(cauchy_element(s3, 3)) == 3
    assert cauchy_element(cyclic_group(6), 3) == 2
    with pytest.raises(ValueError):
        cauchy_element(cyclic_group(4), 3)


def test_lift_examples():
    base = CayleySpec(ElementaryGroup(2, 1), ((1,),))
    z4 = cyclic_group(4)
    lifted = lift_connection_set(base, z4, 2)
    assert lifted.connection == ((2,),)
    g = materialize(lifted)
    assert nx.is_isomorphic(to_nx(g), nx.disjoint_union(nx.complete_graph(2), nx.complete_graph(2)))
    with pytest.raises(ValueError):
        lift_connection_set(base, z4, 1)


@pytest.mark.parametrize("table, p", [(cyclic_group(4), 2), (cyclic_group(6), 2), (cyclic_group(6), 3),
                                      (symmetric_group(3), 2), (symmetric_group(3), 3)])
def test_lift_blocks_and_omega(table, p):
    for m in (1, 2):
        group = ElementaryGroup(p, m)
        nonzero = [e for e in group.elements() if any(e)]
        for conn in [nonzero, nonzero[: 1 if p == 2 else 0] + [group.inv(nonzero[0])] + [nonzero[0]]]:
            base = CayleySpec(group, tuple(conn))
            h = cauchy_element(table, p)
            lifted = lift_connection_set(base, table, h)
            rep = verify_lift(base, lifted, h)
            assert rep.ok and rep.blocks == (table.order // p) ** m
            assert clique_number(lifted)[0] == clique_number(base)[0]
            if nx.is_connected(to_nx(materialize(base))):
                assert nx.number_connected_components(to_nx(materialize(lifted))) == rep.blocks


def test_power_group_laws():
    g = PowerGroup(symmetric_group(3), 2)
    for a in g.elements()[:12]:
        assert g.mul(a, g.inv(a)) == g.identity
