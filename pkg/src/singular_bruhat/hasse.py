"""Hasse diagrams of the Bruhat order on ``W_I \\ W / W_J`` as DOT digraphs."""
from __future__ import annotations

import networkx as nx

from .cosets import DoubleCoset, coset_table, format_genset
from .coxeter import CoxeterGroup, format_word


def hasse_graph(group: CoxeterGroup, left, right) -> nx.DiGraph:
    """Covering relations of the coset order; nodes are coset positions, edges point upward."""
    tab = coset_table(group, left, right)
    mins = tab.mins
    leq = group.leq_table[mins[:, None], mins[None, :]]
    order = nx.DiGraph()
    for k, c in enumerate(tab.cosets):
        order.add_node(k, coset=c)
    n = len(mins)
    order.add_edges_from((a, b) for a in range(n) for b in range(n) if a != b and leq[a, b])
    cover = nx.transitive_reduction(order)
    cover.add_nodes_from(order.nodes(data=True))
    return cover


def _label(c: DoubleCoset) -> str:
    return format_word(c.group.word(c.min))


def hasse_dot(group: CoxeterGroup, left, right) -> str:
    """DOT source with nodes labelled by the minimal word of each coset."""
    graph = hasse_graph(group, left, right)
    name = f"{group.name} ({format_genset(left)} | {format_genset(right)})"
    lines = ["digraph bruhat {", f'  label="{name}";', "  rankdir=BT;", "  node [shape=box];"]
    for k, data in sorted(graph.nodes(data=True)):
        lines.append(f'  n{k} [label="{_label(data["coset"])}"];')
    for a, b in sorted(graph.edges()):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
