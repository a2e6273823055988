"""Double cosets of S4 and the Bruhat order between them.

Run with ``python demos/01_cosets_and_order.py``.
"""
from singular_bruhat import CoxeterGroup, cosets_tsv, enumerate_cosets, hasse_graph
from singular_bruhat.cosets import format_genset

W = CoxeterGroup.from_preset("A3")
print(W, "longest element", W.format(W.longest_element(range(3))))

# Parabolic subsets are 0-indexed in code; printed output is 1-indexed.
I = frozenset({0, 2})
J = frozenset({1})
cosets = enumerate_cosets(W, I, J)
print(f"\n{len(cosets)} cosets for I = {{{format_genset(I)}}}, J = {{{format_genset(J)}}}")
print(cosets_tsv(cosets))

# Sizes follow |W_I| |W_J| / |W_rightred|.
for p in cosets:
    expected = (len(W.parabolic_elements(p.left)) * len(W.parabolic_elements(p.right))
                // len(W.parabolic_elements(p.rightred)))
    assert expected == p.size

# The order can be read off minima or maxima; both give the same relation.
for p in cosets:
    for q in cosets:
        assert W.bruhat_leq(p.min, q.min) == W.bruhat_leq(p.max, q.max)

graph = hasse_graph(W, I, J)
print("covering relations:")
for x, y in sorted(graph.edges()):
    cx, cy = graph.nodes[x]["coset"], graph.nodes[y]["coset"]
    print(f"  {W.format(cx.min):>8} < {W.format(cy.min)}")
