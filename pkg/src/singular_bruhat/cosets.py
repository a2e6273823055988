"""Parabolic double cosets ``W_I \\ W / W_J`` and their Bruhat order.

A coset is the triple ``(I, J, min)``: the same subset of ``W`` viewed for two
different pairs ``(I, J)`` gives two different cosets.  Partitions of ``W``
into ``(I, J)``-cosets are computed once per group and pair and cached on the
group.
"""
from __future__ import annotations

import operator
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .coxeter import CoxeterGroup, format_word
from .errors import MismatchedTypes, NotASuperset


def format_genset(gens) -> str:
    """1-indexed, space separated; the empty set is ``-``."""
    return " ".join(str(g + 1) for g in sorted(gens)) if gens else "-"


@dataclass(frozen=True)
class DoubleCoset:
    """An ``(I, J)``-coset with its cached attributes.

    Equality and hashing use ``(left, right, min)`` only.  ``length`` is the
    coset length ``2 l(max) - l(I) - l(J)``, not the length of an element.
    """

    left: frozenset[int]
    right: frozenset[int]
    min: int
    max: int = field(compare=False)
    size: int = field(compare=False)
    leftred: frozenset[int] = field(compare=False)
    rightred: frozenset[int] = field(compare=False)
    length: int = field(compare=False)
    group: CoxeterGroup = field(compare=False, repr=False)

    @property
    def parabolic_type(self) -> tuple[frozenset[int], frozenset[int]]:
        return (self.left, self.right)

    @property
    def elements(self) -> frozenset[int]:
        table = _table(self.group, self.left, self.right)
        return table.members[table.label[self.min]]

    def __contains__(self, w) -> bool:
        table = _table(self.group, self.left, self.right)
        return table.label[operator.index(w)] == table.label[self.min]

    def issubset(self, other: DoubleCoset) -> bool:
        """Containment of the underlying element sets."""
        return self.elements <= other.elements

    def __le__(self, other: DoubleCoset) -> bool:
        return coset_leq(self, other)

    def __lt__(self, other: DoubleCoset) -> bool:
        return self != other and coset_leq(self, other)

    def __mul__(self, other: DoubleCoset) -> DoubleCoset:
        return coset_star(self, other)

    def sort_key(self):
        return (self.length, self.min)

    def describe(self) -> str:
        g = self.group
        return (f"({format_genset(self.left)} | {format_genset(self.right)}) "
                f"min={format_word(g.word(self.min))} max={format_word(g.word(self.max))}")


class _CosetTable:
    """Partition of W into (I, J)-cosets."""

    def __init__(self, group: CoxeterGroup, left: frozenset[int], right: frozenset[int]):
        n = group.size
        label = np.full(n, -1, dtype=np.int64)
        blocks = []
        lgens, rgens = sorted(left), sorted(right)
        for start in range(n):
            if label[start] >= 0:
                continue
            block = [start]
            label[start] = -2
            queue = deque([start])
            while queue:
                w = queue.popleft()
                for s in lgens:
                    v = int(group.left_cayley[w, s])
                    if label[v] == -1:
                        label[v] = -2
                        block.append(v)
                        queue.append(v)
                for s in rgens:
                    v = int(group.right_cayley[w, s])
                    if label[v] == -1:
                        label[v] = -2
                        block.append(v)
                        queue.append(v)
            for w in block:
                label[w] = len(blocks)
            blocks.append(block)

        lI = group.genset_length(left)
        lJ = group.genset_length(right)
        length = group.length
        cosets = []
        for block in blocks:
            lens = length[block]
            lo = block[int(np.argmin(lens))]
            hi = block[int(np.argmax(lens))]
            cosets.append(DoubleCoset(
                left=left, right=right, min=lo, max=hi, size=len(block),
                leftred=_conjugate_meet(group, lo, right, left),
                rightred=_conjugate_meet(group, int(group.inverse[lo]), left, right),
                length=2 * int(length[hi]) - lI - lJ,
                group=group,
            ))
        order = sorted(range(len(cosets)), key=lambda i: cosets[i].sort_key())
        position = np.empty(len(cosets), dtype=np.int64)
        position[order] = np.arange(len(cosets))
        self.label = position[label]
        self.cosets = [cosets[i] for i in order]
        self.members = [frozenset(blocks[i]) for i in order]
        self.mins = np.array([c.min for c in self.cosets], dtype=np.int64)
        self.maxs = np.array([c.max for c in self.cosets], dtype=np.int64)
        self.index = {c.min: k for k, c in enumerate(self.cosets)}


def _conjugate_meet(group: CoxeterGroup, w: int, conj: frozenset[int], target: frozenset[int]):
    """``target ∩ w conj w^-1`` as a set of generators."""
    winv = int(group.inverse[w])
    out = set()
    for t in conj:
        c = group.multiply(group.multiply(w, group.generators[t]), winv)
        for s in target:
            if group.generators[s] == c:
                out.add(s)
    return frozenset(out)


def _table(group: CoxeterGroup, left, right) -> _CosetTable:
    cache = group.__dict__.setdefault("_coset_tables", {})
    key = (frozenset(left), frozenset(right))
    tab = cache.get(key)
    if tab is None:
        tab = cache[key] = _CosetTable(group, group.check_genset(left), group.check_genset(right))
    return tab


def coset_table(group: CoxeterGroup, left, right) -> _CosetTable:
    """The cached partition of ``W`` into ``(left, right)``-cosets.

    Exposes ``label`` (element -> coset position), ``cosets``, ``mins``, ``maxs``
    and ``index`` (min element -> coset position).
    """
    return _table(group, left, right)


def coset_of(group: CoxeterGroup, w, left, right) -> DoubleCoset:
    """The ``(left, right)``-coset containing ``w``."""
    tab = _table(group, left, right)
    return tab.cosets[tab.label[operator.index(w)]]


def identity_coset(group: CoxeterGroup, gens) -> DoubleCoset:
    """The ``(I, I)``-coset of the identity."""
    return coset_of(group, 0, gens, gens)


def enumerate_cosets(group: CoxeterGroup, left, right) -> list[DoubleCoset]:
    """All ``(left, right)``-cosets, sorted by (coset length, ShortLex of min)."""
    return list(_table(group, left, right).cosets)


def coset_leq(p: DoubleCoset, q: DoubleCoset) -> bool:
    if p.parabolic_type != q.parabolic_type:
        raise MismatchedTypes(
            f"cannot compare ({format_genset(p.left)} | {format_genset(p.right)})-coset "
            f"with ({format_genset(q.left)} | {format_genset(q.right)})-coset"
        )
    return p.group.bruhat_leq(p.min, q.min)


def _check_middle(p: DoubleCoset, q: DoubleCoset):
    if p.right != q.left:
        raise MismatchedTypes(
            f"right set {{{format_genset(p.right)}}} of the first coset differs from "
            f"left set {{{format_genset(q.left)}}} of the second"
        )


def coset_star(p: DoubleCoset, q: DoubleCoset) -> DoubleCoset:
    """The ``(I, K)``-coset whose maximum is ``max(p) * max(q)``."""
    _check_middle(p, q)
    g = p.group
    return coset_of(g, int(g.star_table[p.max, q.max]), p.left, q.right)


def reduced_compose(p: DoubleCoset, q: DoubleCoset) -> DoubleCoset | None:
    """``p . q`` when the composition is reduced, else ``None``.

    Reduced means ``l(max p * max q) = l(max p) + l(max q) - l(J)``.
    """
    _check_middle(p, q)
    g = p.group
    top = int(g.star_table[p.max, q.max])
    if g.length_of(top) != g.length_of(p.max) + g.length_of(q.max) - g.genset_length(p.right):
        return None
    return coset_of(g, top, p.left, q.right)


def project(p: DoubleCoset, left, right) -> DoubleCoset:
    """Image of ``p`` under ``W_I\\W/W_J -> W_K\\W/W_L`` for ``I ⊆ K``, ``J ⊆ L``."""
    K, L = frozenset(left), frozenset(right)
    if not (p.left <= K and p.right <= L):
        raise NotASuperset(
            f"({format_genset(K)} | {format_genset(L)}) does not contain "
            f"({format_genset(p.left)} | {format_genset(p.right)})"
        )
    return coset_of(p.group, p.min, K, L)


def sub_cosets(p: DoubleCoset, right) -> list[DoubleCoset]:
    """The ``(I, right)``-cosets contained in ``p``, for ``right ⊆ p.right``.

    Computed by partitioning the element set of ``p``; sorted by min index.
    """
    R = frozenset(right)
    if not R <= p.right:
        raise NotASuperset(f"{{{format_genset(R)}}} is not inside {{{format_genset(p.right)}}}")
    tab = _table(p.group, p.left, R)
    labels = sorted({int(tab.label[w]) for w in p.elements}, key=lambda k: tab.cosets[k].min)
    return [tab.cosets[k] for k in labels]


def cosets_tsv(cosets, header: bool = True) -> str:
    """Coset table as TSV: I, J, min-word, max-word, length, size, leftred, rightred."""
    lines = []
    if header:
        lines.append("\t".join(["I", "J", "min", "max", "length", "size", "leftred", "rightred"]))
    for c in cosets:
        g = c.group
        lines.append("\t".join([
            format_genset(c.left), format_genset(c.right),
            format_word(g.word(c.min)), format_word(g.word(c.max)),
            str(c.length), str(c.size),
            format_genset(c.leftred), format_genset(c.rightred),
        ]))
    return "\n".join(lines) + "\n"
