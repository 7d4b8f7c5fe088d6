import networkx as nx
from hypothesis import given
from hypothesis import strategies as st

from reldp.graphs import has_cycle, nontrivial_sccs, tarjan_scc

graphs = st.integers(1, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20))
)


def _succ(edges):
    out = {}
    for u, v in edges:
        out.setdefault(u, []).append(v)
    return lambda u: out.get(u, [])


@given(graphs)
def test_components_match_networkx(g):
    n, edges = g
    mine = {frozenset(c) for c in tarjan_scc(range(n), _succ(edges))}
    G = nx.DiGraph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    assert mine == {frozenset(c) for c in nx.strongly_connected_components(G)}


@given(graphs)
def test_reverse_topological_order(g):
    n, edges = g
    comps = tarjan_scc(range(n), _succ(edges))
    where = {v: i for i, c in enumerate(comps) for v in c}
    # an edge never points to a component emitted later
    assert all(where[u] >= where[v] for u, v in edges)


@given(graphs)
def test_cycle_detection_matches_networkx(g):
    n, edges = g
    G = nx.DiGraph(edges)
    G.add_nodes_from(range(n))
    assert has_cycle(range(n), _succ(edges)) == (not nx.is_directed_acyclic_graph(G))


def test_self_loop_is_nontrivial():
    assert nontrivial_sccs([0, 1], _succ([(0, 0), (0, 1)])) == [[0]]


def test_deep_chain_does_not_recurse():
    n = 5000
    comps = tarjan_scc(range(n), lambda u: [u + 1] if u + 1 < n else [])
    assert len(comps) == n
