"""Reduced expressions for cosets and the paths subordinate to them.

Run with ``python demos/02_expressions_and_paths.py``.
"""
from singular_bruhat import (
    CoxeterGroup,
    coset_of,
    enumerate_cosets,
    enumerate_paths,
    expr_length,
    find_reduced_expression,
    forward_path,
    is_reduced,
    parse_singlestep,
    term_set,
    to_multistep,
)

W = CoxeterGroup.from_preset("B3")
I = J = frozenset({0})

p = coset_of(W, W.index_of((1, 2, 1)), I, J)
e = find_reduced_expression(p)
print("coset:", p.describe())
print("reduced expression:", e, " multistep:", to_multistep(e))
print("expression length", expr_length(W, e), "coset length", p.length)

# Every subordinate path ends in a coset below p, and every such coset is reached.
paths = enumerate_paths(W, e)
termini = term_set(W, e)
below = {q for q in enumerate_cosets(W, I, J) if q <= p}
print(f"\n{len(paths)} subordinate paths, {len(termini)} distinct termini, {len(below)} cosets below p")
assert termini == below

# Exactly one path keeps the maximum fixed on the way down; it ends at p itself.
fwd = forward_path(W, e)
assert fwd.terminus == p and sum(path.terminus == p for path in paths) == 1
print("\nforward path:")
print(fwd.render())

# A non-reduced expression of a smaller coset still has the down-set as its termini.
f = parse_singlestep("[],[1],[],[1],[]", W.rank)
q = find_reduced_expression(coset_of(W, W.generators[0], (), ()))
print(f"\n{f} reduced? {is_reduced(W, f)}; a reduced one is {q}")
