import networkx as nx

from singular_bruhat import hasse_dot, hasse_graph

a = frozenset({0})


def test_a2_bruhat_hasse(A2):
    g = hasse_graph(A2, (), ())
    assert g.number_of_nodes() == 6 and g.number_of_edges() == 8
    # covers of S3 are exactly the length-one steps in Bruhat order
    for x, y in g.edges():
        assert A2.length_of(y) == A2.length_of(x) + 1 and A2.bruhat_leq(x, y)


def test_chain_and_single_node(A2, B3):
    chain = hasse_graph(A2, a, a)
    assert list(chain.edges()) == [(0, 1)]
    single = hasse_graph(A2, (), (0, 1))
    assert single.number_of_nodes() == 1 and single.number_of_edges() == 0


def test_reduction_matches_closure(B3):
    """Transitive closure of the covers recovers the order."""
    g = hasse_graph(B3, (0,), (2,))
    closure = nx.transitive_closure_dag(g)
    cosets = [g.nodes[k]["coset"] for k in g]
    for i, p in enumerate(cosets):
        for j, q in enumerate(cosets):
            assert (i != j and p <= q) == closure.has_edge(i, j)


def test_dot_text(A2):
    text = hasse_dot(A2, a, a)
    assert text.startswith("digraph bruhat {")
    assert 'n0 [label="e"];' in text and 'n1 [label="2"];' in text
    assert "n0 -> n1;" in text and text.rstrip().endswith("}")
