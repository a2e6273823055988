"""Singular expressions for double cosets.

A singlestep expression ``[I_0, ..., I_d]`` is a walk through subsets of S
adding or removing one generator per step; a multistep expression
``[[I_0 ⊆ K_1 ⊇ I_1 ⊆ ... ⊆ K_m ⊇ I_m]]`` records only its turning points.
"""
from __future__ import annotations

import heapq
import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .cosets import DoubleCoset, coset_of, coset_star, format_genset
from .coxeter import CoxeterGroup
from .errors import InvalidChain, InvalidExpression, JunctionMismatch, ParseError


def _as_subsets(subsets) -> tuple[frozenset[int], ...]:
    return tuple(frozenset(int(g) for g in s) for s in subsets)


@dataclass(frozen=True)
class SinglestepExpr:
    subsets: tuple[frozenset[int], ...]

    def __init__(self, subsets: Iterable[Iterable[int]]):
        subs = _as_subsets(subsets)
        if not subs:
            raise InvalidExpression("an expression needs at least one subset")
        for k in range(1, len(subs)):
            if len(subs[k] ^ subs[k - 1]) != 1:
                raise InvalidExpression(
                    f"step {k}: {{{format_genset(subs[k - 1])}}} -> {{{format_genset(subs[k])}}} "
                    "does not add or remove exactly one generator"
                )
        object.__setattr__(self, "subsets", subs)

    @property
    def width(self) -> int:
        return len(self.subsets) - 1

    @property
    def first(self) -> frozenset[int]:
        return self.subsets[0]

    @property
    def last(self) -> frozenset[int]:
        return self.subsets[-1]

    def __len__(self):
        return len(self.subsets)

    def __getitem__(self, k):
        return self.subsets[k]

    def is_up(self, k: int) -> bool:
        """Whether step ``k -> k+1`` adds a generator."""
        return self.subsets[k] < self.subsets[k + 1]

    def prefix(self, k: int) -> SinglestepExpr:
        """``[I_0, ..., I_k]``."""
        return SinglestepExpr(self.subsets[: k + 1])

    def __str__(self):
        return format_singlestep(self)

    def __matmul__(self, other: SinglestepExpr) -> SinglestepExpr:
        return concat(self, other)


@dataclass(frozen=True)
class MultistepExpr:
    """The chain ``(I_0, K_1, I_1, ..., K_m, I_m)``.

    Containments are ``I_{i-1} ⊆ K_i ⊇ I_i``.  Interior turning points are
    strict; only ``I_0 = K_1`` and ``K_m = I_m`` may hold with equality.
    """

    chain: tuple[frozenset[int], ...]

    def __init__(self, chain: Iterable[Iterable[int]]):
        ch = _as_subsets(chain)
        if len(ch) % 2 != 1:
            raise InvalidChain(f"chain must have odd length, got {len(ch)}")
        m = len(ch) // 2
        for i in range(1, m + 1):
            lo, K, hi = ch[2 * i - 2], ch[2 * i - 1], ch[2 * i]
            if not (lo <= K and hi <= K):
                raise InvalidChain(
                    f"K_{i} = {{{format_genset(K)}}} must contain I_{i - 1} = {{{format_genset(lo)}}} "
                    f"and I_{i} = {{{format_genset(hi)}}}"
                )
            if i > 1 and lo == K:
                raise InvalidChain(f"interior containment I_{i - 1} ⊂ K_{i} must be strict")
            if i < m and hi == K:
                raise InvalidChain(f"interior containment K_{i} ⊃ I_{i} must be strict")
            if lo == K == hi:
                raise InvalidChain(f"K_{i} equals both neighbours; write the width-0 chain instead")
        object.__setattr__(self, "chain", ch)

    @property
    def m(self) -> int:
        return len(self.chain) // 2

    @property
    def bottoms(self) -> tuple[frozenset[int], ...]:
        """``I_0, ..., I_m``."""
        return self.chain[0::2]

    @property
    def tops(self) -> tuple[frozenset[int], ...]:
        """``K_1, ..., K_m``."""
        return self.chain[1::2]

    @property
    def first(self) -> frozenset[int]:
        return self.chain[0]

    @property
    def last(self) -> frozenset[int]:
        return self.chain[-1]

    def __str__(self):
        return format_multistep(self)


# ---------------------------------------------------------------------------
# conversions


def to_multistep(e: SinglestepExpr) -> MultistepExpr:
    """Keep the local maxima and minima of a singlestep expression."""
    subs = e.subsets
    if e.width == 0:
        return MultistepExpr([subs[0]])
    chain = [subs[0]]
    if not e.is_up(0):
        chain.append(subs[0])  # starts going down: K_1 = I_0
    for k in range(1, e.width):
        up_before, up_after = e.is_up(k - 1), e.is_up(k)
        if up_before != up_after:
            chain.append(subs[k])
    if e.is_up(e.width - 1):
        chain.append(subs[-1])  # ends going up: I_m = K_m
    chain.append(subs[-1])
    return MultistepExpr(chain)


def to_singlestep(m: MultistepExpr) -> SinglestepExpr:
    """Fill in single steps, adding then removing generators in ascending order."""
    if not isinstance(m, MultistepExpr):
        m = MultistepExpr(m)
    current = set(m.first)
    out = [frozenset(current)]
    for i in range(1, m.m + 1):
        K, target = m.chain[2 * i - 1], m.chain[2 * i]
        for s in sorted(K - current):
            current.add(s)
            out.append(frozenset(current))
        for s in sorted(K - target):
            current.discard(s)
            out.append(frozenset(current))
    return SinglestepExpr(out)


def concat(e1: SinglestepExpr, e2: SinglestepExpr) -> SinglestepExpr:
    """``e1 ∘ e2``: splice at the shared junction subset."""
    if e1.last != e2.first:
        raise JunctionMismatch(
            f"first expression ends at {{{format_genset(e1.last)}}}, "
            f"second starts at {{{format_genset(e2.first)}}}"
        )
    return SinglestepExpr(e1.subsets + e2.subsets[1:])


# ---------------------------------------------------------------------------
# expressed coset, length, reducedness


def _bottoms_and_tops(e):
    if isinstance(e, SinglestepExpr):
        e = to_multistep(e)
    return e.bottoms, e.tops


def expressed_max(group: CoxeterGroup, e) -> int:
    """Demazure product of the longest elements along the expression."""
    subsets = e.subsets if isinstance(e, SinglestepExpr) else e.chain
    x = 0
    for s in subsets:
        x = group.demazure(x, group.longest_element(s))
    return x


def expressed_coset(group: CoxeterGroup, e) -> DoubleCoset:
    """The ``(I_0, I_last)``-coset whose maximum is :func:`expressed_max`."""
    return coset_of(group, expressed_max(group, e), e.first, e.last)


def multistep_length(group: CoxeterGroup, m: MultistepExpr) -> int:
    """``-l(I_0) + 2 l(K_1) - 2 l(I_1) + ... + 2 l(K_m) - l(I_m)``; zero for width 0."""
    if m.m == 0:
        return 0
    lengths = [group.genset_length(s) for s in m.chain]
    total = -lengths[0] - lengths[-1]
    for k, ln in enumerate(lengths[1:-1], start=1):
        total += 2 * ln if k % 2 == 1 else -2 * ln
    return total


def expr_length(group: CoxeterGroup, e) -> int:
    if isinstance(e, MultistepExpr):
        return multistep_length(group, e)
    lens = [group.genset_length(s) for s in e.subsets]
    return sum(abs(b - a) for a, b in zip(lens, lens[1:]))


def reduced_factors(group: CoxeterGroup, e) -> list[int]:
    """Factors ``w_{K_1} w_{I_1}^{-1}, ..., w_{K_m} w_{I_m}^{-1}, w_{I_m}``.

    For a width-0 expression ``[I]`` this is just ``[w_I]``.
    """
    bottoms, tops = _bottoms_and_tops(e)
    factors = []
    for K, I in zip(tops, bottoms[1:]):
        wI = group.longest_element(I)
        factors.append(group.multiply(group.longest_element(K), int(group.inverse[wI])))
    factors.append(group.longest_element(bottoms[-1]))
    return factors


def is_reduced(group: CoxeterGroup, e) -> bool:
    """Whether the factor product of :func:`reduced_factors` is length-additive and equals ``max p``."""
    top = expressed_max(group, e)
    x, total = 0, 0
    for f in reduced_factors(group, e):
        x = group.multiply(x, f)
        total += group.length_of(f)
    return x == top and group.length_of(x) == total


# ---------------------------------------------------------------------------
# reduced expressions


def find_reduced_expression(p: DoubleCoset) -> SinglestepExpr:
    """A reduced singlestep expression for ``p``.

    Dijkstra over states ``(current max, current subset)`` starting at
    ``(w_I, I)``; a step to ``K'`` costs ``|l(K') - l(K)|`` and replaces the max
    by ``max * w_{K'}``.  Ties are broken by fewer steps and then by the move
    sequence, where adding precedes removing and smaller generators come first.
    """
    g = p.group
    start = (g.longest_element(p.left), p.left)
    goal = (p.max, p.right)
    best = {start: (0, 0, ())}
    heap = [(0, 0, (), start)]
    while heap:
        weight, width, moves, state = heapq.heappop(heap)
        if best.get(state, (None,))[:3] != (weight, width, moves):
            continue
        if state == goal:
            break
        x, K = state
        lK = g.genset_length(K)
        for kind in (0, 1):
            for s in range(g.rank):
                if (s in K) != bool(kind):
                    continue
                K2 = K - {s} if kind else K | {s}
                lK2 = g.genset_length(K2)
                x2 = g.demazure(x, g.longest_element(K2))
                key = (weight + abs(lK2 - lK), width + 1, moves + ((kind, s),))
                nxt = (x2, K2)
                if nxt not in best or key < best[nxt]:
                    best[nxt] = key
                    heapq.heappush(heap, (*key, nxt))
    else:
        raise RuntimeError(f"no expression reaches {p.describe()}")

    weight, _, moves = best[goal]
    if weight != p.length:
        raise RuntimeError(f"shortest expression for {p.describe()} has length {weight} != {p.length}")
    subsets = [p.left]
    for kind, s in moves:
        subsets.append(subsets[-1] - {s} if kind else subsets[-1] | {s})
    return SinglestepExpr(subsets)


def enumerate_expressions(rank: int, max_width: int, start=None) -> Iterator[SinglestepExpr]:
    """All singlestep expressions of width ``<= max_width``.

    Starting subsets run over all of S (or just ``start``); each expression is
    followed by its extensions, with generators toggled in ascending order.
    """
    from itertools import combinations

    if start is None:
        starts = [frozenset(c) for k in range(rank + 1) for c in combinations(range(rank), k)]
    else:
        starts = [frozenset(start)]

    def grow(subs):
        yield SinglestepExpr(subs)
        if len(subs) - 1 < max_width:
            last = subs[-1]
            for s in range(rank):
                yield from grow(subs + (last ^ {s},))

    for st in starts:
        yield from grow((st,))


# ---------------------------------------------------------------------------
# text formats


def format_singlestep(e: SinglestepExpr) -> str:
    """``[1],[1 2],[1]``; the empty set is ``[]``."""
    return ",".join("[" + " ".join(str(g + 1) for g in sorted(s)) + "]" for s in e.subsets)


def format_multistep(m: MultistepExpr) -> str:
    """``[[1 < 1 2 > 1]]``, omitting ``I_0`` when it equals ``K_1`` and ``I_m`` when it equals ``K_m``."""
    ch = m.chain
    if m.m == 0:
        return f"[[{format_genset(ch[0])}]]"
    parts = []
    if ch[0] != ch[1]:
        parts += [format_genset(ch[0]), "<"]
    for i in range(1, m.m + 1):
        parts.append(format_genset(ch[2 * i - 1]))
        if i < m.m or ch[2 * i] != ch[2 * i - 1]:
            parts += [">", format_genset(ch[2 * i])]
            if i < m.m:
                parts.append("<")
    return "[[" + " ".join(parts) + "]]"


_SUBSET_RE = re.compile(r"\[([^\[\]]*)\]")


def _parse_genset(body: str, rank: int | None, text: str) -> frozenset[int]:
    body = body.strip()
    if body in ("", "-"):
        return frozenset()
    out = set()
    for tok in re.split(r"[\s,]+", body):
        if not tok.isdigit() or int(tok) < 1:
            raise ParseError(f"bad generator token {tok!r} in {text!r}")
        g = int(tok) - 1
        if rank is not None and g >= rank:
            raise ParseError(f"generator {tok!r} out of range 1..{rank} in {text!r}")
        out.add(g)
    return frozenset(out)


def parse_singlestep(text: str, rank: int | None = None) -> SinglestepExpr:
    """Parse ``[1],[1 2],[1]`` (1-indexed generators, ``[]`` for the empty set)."""
    s = text.strip()
    pieces = []
    pos = 0
    for match in _SUBSET_RE.finditer(s):
        gap = s[pos:match.start()].strip()
        if gap not in ("", ","):
            raise ParseError(f"unexpected token {gap!r} in expression {text!r}")
        pieces.append(_parse_genset(match.group(1), rank, text))
        pos = match.end()
    tail = s[pos:].strip()
    if tail:
        raise ParseError(f"unexpected token {tail!r} in expression {text!r}")
    if not pieces:
        raise ParseError(f"no subsets found in expression {text!r}")
    return SinglestepExpr(pieces)


def parse_multistep(text: str, rank: int | None = None) -> MultistepExpr:
    """Parse ``[[1 < 1 2 > 1]]``; a leading ``>`` or trailing ``<`` part uses the boundary convention."""
    s = text.strip()
    if not (s.startswith("[[") and s.endswith("]]")):
        raise ParseError(f"multistep expression must be wrapped in [[ ]]: {text!r}")
    tokens = re.split(r"\s*([<>])\s*", s[2:-2].strip())
    sets = [_parse_genset(t, rank, text) for t in tokens[0::2]]
    ops = tokens[1::2]
    if not ops:
        return MultistepExpr(sets)
    if ops[0] == ">":
        sets.insert(0, sets[0])
        ops.insert(0, "<")
    if ops[-1] == "<":
        sets.append(sets[-1])
        ops.append(">")
    if any(op != want for op, want in zip(ops, "<>" * len(ops))):
        raise ParseError(f"containments must alternate < and > in {text!r}")
    return MultistepExpr(sets)


def star_of_expressed(group: CoxeterGroup, e1: SinglestepExpr, e2: SinglestepExpr) -> DoubleCoset:
    return coset_star(expressed_coset(group, e1), expressed_coset(group, e2))
