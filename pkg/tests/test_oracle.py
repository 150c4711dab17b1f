from fractions import Fraction
from itertools import combinations, product
from math import factorial

import pytest
from hypothesis import given, strategies as st

from hypertrace import (
    Hypergraph,
    InputError,
    ResourceLimitError,
    arborescence_count,
    build_R,
    c_H_oracle,
    c_tree,
    euler_rootings,
    hyperpath,
    hyperstar,
    is_eulerian,
    loose_cycle,
    matrix_power_trace,
    single_edge,
    trace,
    trace_bruteforce,
    weighted,
)
from hypertrace.enumerate import connected_subhypergraphs, enumerate_hypertrees, weight_compositions
from hypertrace.oracle import MultiDigraph, RootedEdgeMultiset, integer_determinant
from hypertrace.traces import WeightedSubhypergraph, coefficient

from strategies import hypertrees, unicyclics


def _naive_det(a):
    n = len(a)
    if n == 0:
        return 1
    return sum((-1) ** j * a[0][j] * _naive_det([row[:j] + row[j + 1:] for row in a[1:]]) for j in range(n))


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=4, max_size=4), st.integers(1, 4))
def test_bareiss_matches_cofactor_expansion(rows, k):
    a = [r[:k] for r in rows[:k]]
    assert integer_determinant(a) == _naive_det(a)


def _all_arborescences(g, root):
    # brute force: choose one out-arc per non-root vertex, keep the acyclic choices
    others = [v for v in g.vertices if v != root]
    options = [[(v, w, c) for (a, w), c in g.arcs.items() if a == v] for v in others]
    total = 0
    for pick in product(*options):
        nxt = {v: w for v, w, _ in pick}
        ok = True
        for v in others:
            seen, x = set(), v
            while x != root:
                if x in seen:
                    ok = False
                    break
                seen.add(x)
                x = nxt[x]
            if not ok:
                break
        if ok:
            mult = 1
            for _, _, c in pick:
                mult *= c
            total += mult
    return total


def test_doubled_directed_triangle():
    g = MultiDigraph((0, 1, 2), {(0, 1): 2, (1, 2): 2, (2, 0): 2})
    assert arborescence_count(g, 0) == 4
    assert is_eulerian(g)


def test_single_vertex_arborescence():
    assert arborescence_count(MultiDigraph((5,), {}), 5) == 1
    with pytest.raises(InputError):
        arborescence_count(MultiDigraph((0, 1), {(0, 1): 1, (1, 0): 1}), 7)


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda t: t[0] != t[1]), st.integers(1, 3), max_size=7), st.integers(0, 3))
def test_matrix_tree_against_enumeration(arcs, root):
    g = MultiDigraph((0, 1, 2, 3), arcs)
    assert arborescence_count(g, root) == _all_arborescences(g, root)


def test_eulerian_checks_balance_and_connectivity():
    assert not is_eulerian(MultiDigraph((0, 1), {(0, 1): 1}))
    two_loops = MultiDigraph((0, 1, 2, 3), {(0, 1): 1, (1, 0): 1, (2, 3): 1, (3, 2): 1})
    assert not is_eulerian(two_loops)
    assert not is_eulerian(MultiDigraph((0,), {}))


def test_build_R_single_rooted_edge():
    f = RootedEdgeMultiset.from_mapping(single_edge(3), {(0, 0): 1})
    g = build_R(f)
    assert g.arcs == {(0, 1): 1, (0, 2): 1}
    assert not is_eulerian(g)
    with pytest.raises(InputError):
        RootedEdgeMultiset.from_mapping(single_edge(3), {(0, 5): 1})


def test_ordering_count():
    f = RootedEdgeMultiset.from_mapping(hyperstar(2, 3), {(0, 0): 1, (1, 0): 2, (0, 1): 1})
    assert f.root_counts() == {0: 3, 1: 1}
    assert f.ordering_count() == factorial(3) // factorial(2)
    assert f.d == 4


def test_oracle_examples():
    assert trace_bruteforce(single_edge(2), 4) == 2
    assert trace_bruteforce(single_edge(3), 3) == 9
    assert trace_bruteforce(single_edge(3), 0) == 12
    for h in (single_edge(3), hyperpath(2, 3), loose_cycle(3, 4)):
        assert trace_bruteforce(h, 1) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_oracle_matches_matrix_powers_on_all_small_graphs(n):
    pool = list(combinations(range(n), 2))
    for k in range(len(pool) + 1):
        for edges in combinations(pool, k):
            h = Hypergraph(2, n, edges)
            for d in range(1, 7):
                assert trace_bruteforce(h, d) == matrix_power_trace(h, d), (edges, d)


@given(st.one_of(hypertrees(m=st.integers(3, 4), max_edges=3), unicyclics(m=st.just(3), max_extra=1)), st.integers(1, 8))
def test_closed_form_matches_oracle_property(h, d):
    assert trace(h, d) == trace_bruteforce(h, d)


def test_oracle_handles_non_linear_hypergraphs():
    h = Hypergraph(3, 4, ((0, 1, 2), (0, 1, 3)))
    value = trace_bruteforce(h, 6)
    assert value > 0 and value.denominator == 1


def test_budget():
    with pytest.raises(ResourceLimitError) as info:
        trace_bruteforce(hyperpath(3, 3), 9, budget=10)
    assert info.value.bound == 10
    with pytest.raises(InputError):
        trace_bruteforce(single_edge(3), 3, budget=0)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("HYPERTRACE_BUDGET", "3")
    with pytest.raises(ResourceLimitError):
        trace_bruteforce(hyperpath(3, 3), 9)
    monkeypatch.setenv("HYPERTRACE_BUDGET", "lots")
    with pytest.raises(InputError):
        trace_bruteforce(hyperpath(3, 3), 9)


def test_parallel_matches_serial():
    h = hyperpath(2, 3)
    assert trace_bruteforce(h, 9, jobs=2) == trace_bruteforce(h, 9)


def test_tree_rootings_are_unique():
    t = hyperpath(2, 3)
    ws = weighted(t, (1, 2))
    found = list(euler_rootings(ws))
    assert len(found) == 1
    assert dict(found[0].counts) == {(i, v): w for i, w in enumerate((1, 2)) for v in t.edges[i]}
    # expanded to tuples: prod_v r_v! / prod_e omega(e)!
    r = found[0].root_counts()
    want = 1
    for v, rv in r.items():
        want *= factorial(rv)
    for i, w in enumerate((1, 2)):
        for v in t.edges[i]:
            want //= factorial(w)
    assert found[0].ordering_count() == want


@pytest.mark.parametrize("m,k", [(2, 3), (3, 2), (3, 3), (4, 2)])
def test_c_tree_matches_oracle(m, k):
    for t in enumerate_hypertrees(m, k):
        for shape in connected_subhypergraphs(t, k):
            for w in weight_compositions(len(shape.edge_subset), len(shape.edge_subset) + 1):
                ws = WeightedSubhypergraph(shape, w.weights)
                assert coefficient(ws) == c_H_oracle(ws)


@pytest.mark.parametrize("m,k", [(3, 1), (3, 2), (3, 3)])
def test_closed_form_matches_oracle_on_small_hypertrees(m, k):
    for t in enumerate_hypertrees(m, k):
        for d in (m, 2 * m, 3 * m, 2 * m + 1):
            assert trace(t, d) == trace_bruteforce(t, d)


def test_closed_form_matches_oracle_on_cycles():
    for h in (loose_cycle(3, 3), loose_cycle(4, 3)):
        for d in (3, 6, 9, 12):
            assert trace(h, d) == trace_bruteforce(h, d)


def test_matrix_power_trace_requires_graphs():
    with pytest.raises(InputError):
        matrix_power_trace(single_edge(3), 3)
    assert matrix_power_trace(loose_cycle(3, 2), 3) == 6
    assert matrix_power_trace(single_edge(2), 0) == 2
