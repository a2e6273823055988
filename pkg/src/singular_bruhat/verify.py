"""Exhaustive verification of the Bruhat-order statements on a finite group.

Every statement is a named check.  A check runs over all tuples in its scope
(all subsets of S, all cosets, all expressions up to a width cap, ...) and
collects counterexamples, reporting the smallest first.

Typical use::

    G = CoxeterGroup.from_preset("B3")
    results = run_suite(G, width_cap=5)
    print(summary(results))
"""
from __future__ import annotations

import heapq
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cosets import (
    DoubleCoset,
    coset_table,
    enumerate_cosets,
    format_genset,
    reduced_compose,
)
from .coxeter import CoxeterGroup, format_word, subword_products
from .errors import UnknownCheckName
from .expressions import (
    SinglestepExpr,
    concat,
    enumerate_expressions,
    expr_length,
    expressed_coset,
    find_reduced_expression,
    is_reduced,
    multistep_length,
    to_multistep,
    to_singlestep,
)
from .paths import concat_paths, count_paths, enumerate_paths, forward_path

MAX_REPORTED = 25
ASSOC_SAMPLES = 100_000
ASSOC_EXHAUSTIVE_LIMIT = 48


def default_width_cap(group: CoxeterGroup) -> int:
    return {1: 6, 2: 6, 3: 5}.get(group.rank, 4)


@dataclass
class CheckResult:
    name: str
    group: str
    universe: int
    failures: list[str]
    elapsed: float
    failure_count: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def tsv_row(self, timings: bool = False) -> str:
        cells = [self.name, self.group, str(self.universe), str(self.failure_count)]
        if timings:
            cells.append(f"{self.elapsed:.3f}")
        cells.append("PASS" if self.passed else "FAIL")
        return "\t".join(cells)


class _Failures:
    """Keeps the smallest counterexamples by (total length, ShortLex indices)."""

    def __init__(self, limit: int):
        self.limit = limit
        self.count = 0
        self._heap: list = []

    def add(self, key, render: Callable[[], str] | str):
        self.count += 1
        item = (tuple(-k for k in _flatten(key)), self.count, render)
        if len(self._heap) < self.limit:
            heapq.heappush(self._heap, item)
        elif item[0] > self._heap[0][0]:
            heapq.heapreplace(self._heap, item)

    def rendered(self) -> list[str]:
        items = sorted(self._heap, key=lambda it: (tuple(-k for k in it[0]), it[1]))
        return [r() if callable(r) else r for _, _, r in items]


def _flatten(key):
    out = []
    for k in key:
        if isinstance(k, (tuple, list)):
            out.extend(_flatten(k))
        else:
            out.append(int(k))
    return out


# ---------------------------------------------------------------------------
# shared, cached data for one group and width cap


class _ExprInfo:
    __slots__ = ("expr", "coset", "paths", "terms", "term_pos", "reduced", "length")


class Context:
    def __init__(self, group: CoxeterGroup, width_cap: int, max_failures: int = MAX_REPORTED):
        self.g = group
        self.cap = width_cap
        self.max_failures = max_failures
        self._info: dict[tuple, _ExprInfo] = {}
        self._star: dict[tuple, np.ndarray] = {}

    @property
    def leq(self) -> np.ndarray:
        return self.g.leq_table

    @cached_property
    def gensets(self) -> list[frozenset[int]]:
        return self.g.all_gensets

    @cached_property
    def expressions(self) -> list[SinglestepExpr]:
        return list(enumerate_expressions(self.g.rank, self.cap))

    @cached_property
    def by_first(self) -> dict[frozenset[int], list[SinglestepExpr]]:
        out: dict[frozenset[int], list[SinglestepExpr]] = {}
        for e in self.expressions:
            out.setdefault(e.first, []).append(e)
        return out

    def expression_pairs(self):
        """Composable pairs ``(e1, e2)`` with total width within the cap."""
        for e1 in self.expressions:
            for e2 in self.by_first[e1.last]:
                if e1.width + e2.width <= self.cap:
                    yield e1, e2

    def info(self, e: SinglestepExpr) -> _ExprInfo:
        key = e.subsets
        inf = self._info.get(key)
        if inf is None:
            g = self.g
            inf = _ExprInfo()
            inf.expr = e
            inf.coset = expressed_coset(g, e)
            inf.paths = enumerate_paths(g, e)
            inf.terms = frozenset(p.terminus for p in inf.paths)
            tab = coset_table(g, e.first, e.last)
            inf.term_pos = np.array(sorted(tab.index[c.min] for c in inf.terms), dtype=np.int64)
            inf.reduced = is_reduced(g, e)
            inf.length = expr_length(g, e)
            self._info[key] = inf
        return inf

    def table(self, left, right):
        return coset_table(self.g, left, right)

    def coset_leq_matrix(self, left, right) -> np.ndarray:
        mins = self.table(left, right).mins
        return self.leq[np.ix_(mins, mins)]

    def downset_pos(self, q: DoubleCoset) -> np.ndarray:
        tab = self.table(q.left, q.right)
        return np.flatnonzero(self.leq[tab.mins, q.min])

    def star_index(self, I, J, K) -> np.ndarray:
        """``[a, b] ->`` position of ``a * b`` among ``(I, K)``-cosets, for ``a`` an (I,J)- and ``b`` a (J,K)-coset."""
        key = (I, J, K)
        out = self._star.get(key)
        if out is None:
            a, b, c = self.table(I, J), self.table(J, K), self.table(I, K)
            top = self.g.star_table[np.ix_(a.maxs, b.maxs)]
            out = self._star[key] = c.label[top]
        return out

    def reduced_mask(self, I, J, K) -> np.ndarray:
        a, b = self.table(I, J), self.table(J, K)
        ln = self.g.length
        top = self.g.star_table[np.ix_(a.maxs, b.maxs)]
        return ln[top] == ln[a.maxs][:, None] + ln[b.maxs][None, :] - self.g.genset_length(J)

    @cached_property
    def all_cosets(self) -> list[DoubleCoset]:
        out = []
        for I in self.gensets:
            for J in self.gensets:
                out.extend(enumerate_cosets(self.g, I, J))
        return out

    @cached_property
    def rex(self) -> dict[DoubleCoset, SinglestepExpr]:
        return {p: find_reduced_expression(p) for p in self.all_cosets}

    def fmt(self, x) -> str:
        return format_word(self.g.word(int(x)))

    def new_failures(self) -> _Failures:
        return _Failures(self.max_failures)


def _cdesc(p: DoubleCoset) -> str:
    return p.describe()


def _ckey(*cosets: DoubleCoset):
    """Total coset length, then the ShortLex indices of the minima."""
    return (sum(c.length for c in cosets),) + tuple(c.min for c in cosets)


def _pairs_under(mat: np.ndarray):
    a, b = np.nonzero(mat)
    return a, b


# ---------------------------------------------------------------------------
# check registry

CHECKS: dict[str, tuple[Callable[[Context], tuple[int, _Failures]], str]] = {}


def check(name: str, statement: str):
    def deco(fn):
        CHECKS[name] = (fn, statement)
        return fn
    return deco


def manifest() -> list[tuple[str, str]]:
    """``(check name, statement verified)`` for every registered check."""
    return [(name, stmt) for name, (_, stmt) in CHECKS.items()]


# -- elements ---------------------------------------------------------------


@check("bruhat-subword", "recursive Bruhat comparison equals the subword oracle on all element pairs")
def _bruhat_subword(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    n = g.size
    for y in range(n):
        below = subword_products(g, g.word(y))
        for x in range(n):
            if bool(ctx.leq[x, y]) != (x in below):
                F.add((g.length[x] + g.length[y], x, y),
                      f"x={ctx.fmt(x)} y={ctx.fmt(y)}: table says {bool(ctx.leq[x, y])}, subwords say {x in below}")
    return n * n, F


@check("demazure-assoc", "(x*y)*z = x*(y*z); exhaustive up to 48 elements, else 100000 seeded random triples")
def _demazure_assoc(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    D = g.star_table
    n = g.size
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        x, y, z = (a.ravel() for a in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij"))
    else:
        rng = np.random.default_rng(20240601)
        x, y, z = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
    lhs = D[D[x, y], z]
    rhs = D[x, D[y, z]]
    for k in np.flatnonzero(lhs != rhs):
        a, b, c = int(x[k]), int(y[k]), int(z[k])
        F.add((g.length[a] + g.length[b] + g.length[c], a, b, c),
              f"x={ctx.fmt(a)} y={ctx.fmt(b)} z={ctx.fmt(c)}: {ctx.fmt(lhs[k])} != {ctx.fmt(rhs[k])}")
    return len(x), F


@check("demazure-length", "l(x*y) >= max(l(x), l(y)); l(xy) = l(x)+l(y) iff xy = x*y; "
                          "right descents of x*y contain those of y and of x*x those of x; w_I * w_I = w_I")
def _demazure_length(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    D, M, ln = g.star_table, g.mult_table, g.length
    n = g.size
    big = ln[D] >= np.maximum(ln[:, None], ln[None, :])
    additive = ln[M] == ln[:, None] + ln[None, :]
    agree = additive == (M == D)
    for x, y in zip(*np.nonzero(~(big & agree))):
        F.add((ln[x] + ln[y], x, y), f"x={ctx.fmt(x)} y={ctx.fmt(y)}: x*y={ctx.fmt(D[x, y])}, xy={ctx.fmt(M[x, y])}")
    for x in range(n):
        for y in range(n):
            if not g.right_descents(y) <= g.right_descents(int(D[x, y])):
                F.add((ln[x] + ln[y], x, y), f"x={ctx.fmt(x)} y={ctx.fmt(y)}: x*y loses a right descent of y")
    for I in ctx.gensets:
        w = g.longest_element(I)
        if D[w, w] != w:
            F.add((ln[w], w), f"w_I*w_I != w_I for I={{{format_genset(I)}}}")
    return 2 * n * n + len(ctx.gensets), F


@check("star-monotone", "a <= b implies a*c <= b*c")
def _star_monotone(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    L, D, ln = ctx.leq, g.star_table, g.length
    universe = 0
    a_idx, b_idx = _pairs_under(L)
    for c in range(g.size):
        ok = L[D[a_idx, c], D[b_idx, c]]
        universe += len(a_idx)
        for k in np.flatnonzero(~ok):
            a, b = int(a_idx[k]), int(b_idx[k])
            F.add((ln[a] + ln[b] + ln[c], a, b, c),
                  f"a={ctx.fmt(a)} <= b={ctx.fmt(b)}, c={ctx.fmt(c)}: a*c={ctx.fmt(D[a, c])} not <= b*c={ctx.fmt(D[b, c])}")
    return universe, F


@check("lifting-product", "v <= w implies: for each x some x' <= x has vx <= w.x' (and mirrored: xv <= x'.w)")
def _lifting_product(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    L, M, ln = ctx.leq, g.mult_table, g.length
    n = g.size
    additive = ln[M] == ln[:, None] + ln[None, :]
    v_idx, w_idx = _pairs_under(L)
    universe = 0
    for side in ("right", "left"):
        for x in range(n):
            cand = np.flatnonzero(L[:, x])
            if side == "right":
                target = M[v_idx, x]                              # vx
                wx = M[np.ix_(w_idx, cand)]                       # w x'
                red = additive[np.ix_(w_idx, cand)]
            else:
                target = M[x, v_idx]                              # xv
                wx = M[np.ix_(cand, w_idx)].T                     # x' w
                red = additive[np.ix_(cand, w_idx)].T
            ok = (L[target[:, None], wx] & red).any(axis=1)
            universe += len(v_idx)
            for k in np.flatnonzero(~ok):
                v, w = int(v_idx[k]), int(w_idx[k])
                F.add((ln[v] + ln[w] + ln[x], v, w, x),
                      f"{side}: v={ctx.fmt(v)} <= w={ctx.fmt(w)}, x={ctx.fmt(x)}: no witness x' <= x")
    return universe, F


@check("lifting-factor", "v <= w = z.x implies some x' <= x^-1 has vx' <= z (and mirrored: w = x.z, x'v <= z)")
def _lifting_factor(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    L, M, ln, inv = ctx.leq, g.mult_table, g.length, g.inverse
    n = g.size
    universe = 0
    for side in ("right", "left"):
        for x in range(n):
            xi = int(inv[x])
            z = M[:, xi] if side == "right" else M[xi, :]       # z = w x^-1  or  x^-1 w
            factorises = ln[z] + ln[x] == ln
            cand = np.flatnonzero(L[:, xi])
            for w in np.flatnonzero(factorises):
                vs = np.flatnonzero(L[:, w])
                prods = M[np.ix_(vs, cand)] if side == "right" else M[np.ix_(cand, vs)].T
                ok = L[prods, z[w]].any(axis=1)
                universe += len(vs)
                for k in np.flatnonzero(~ok):
                    v = int(vs[k])
                    F.add((ln[v] + ln[w] + ln[x], v, int(w), x),
                          f"{side}: v={ctx.fmt(v)} <= w={ctx.fmt(w)} = {ctx.fmt(z[w])} . {ctx.fmt(x)}: no witness")
    return universe, F


# -- cosets -----------------------------------------------------------------


@check("coset-structure", "unique length-min and -max; min <= x <= max for all x in p; max = w_I*min*w_J; "
                          "size = |W_I||W_J|/|W_rightred|; min rightred min^-1 = leftred; "
                          "length 0 iff I = J and p is the identity coset")
def _coset_structure(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    ln, L = g.length, ctx.leq
    universe = 0
    for p in ctx.all_cosets:
        universe += 1
        els = np.array(sorted(p.elements))
        problems = []
        if (ln[els] == ln[p.min]).sum() != 1 or (ln[els] == ln[p.max]).sum() != 1:
            problems.append("min or max not unique by length")
        if not (L[p.min, els].all() and L[els, p.max].all()):
            problems.append("elements not between min and max in Bruhat order")
        wI, wJ = g.longest_element(p.left), g.longest_element(p.right)
        if g.demazure(g.demazure(wI, p.min), wJ) != p.max:
            problems.append("max != w_I * min * w_J")
        expected = (len(g.parabolic_elements(p.left)) * len(g.parabolic_elements(p.right))
                    // len(g.parabolic_elements(p.rightred)))
        if expected != p.size or p.size != len(els):
            problems.append(f"size {p.size} vs formula {expected}")
        conj = {g.multiply(g.multiply(p.min, g.generators[t]), int(g.inverse[p.min])) for t in p.rightred}
        if conj != {g.generators[s] for s in p.leftred}:
            problems.append("min rightred min^-1 != leftred")
        ident = p.left == p.right and p.min == 0
        if (p.length == 0) != ident:
            problems.append(f"length {p.length} but identity-coset={ident}")
        if problems:
            F.add(_ckey(p), f"{_cdesc(p)}: " + "; ".join(problems))
    return universe, F


@check("rex-search", "the reduced-expression search returns a reduced expression expressing p "
                     "whose length is 2 l(max) - l(I) - l(J)")
def _rex_search(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    for p, e in ctx.rex.items():
        if expressed_coset(g, e) != p or not is_reduced(g, e) or expr_length(g, e) != p.length:
            F.add(_ckey(p), f"{_cdesc(p)}: search returned {e} (length {expr_length(g, e)}, "
                            f"reduced={is_reduced(g, e)}, expresses {expressed_coset(g, e).describe()})")
    return len(ctx.rex), F


@check("bruhat-min-max", "for (I,J)-cosets: min p <= min q iff max p <= max q")
def _bruhat_min_max(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for I in ctx.gensets:
        for J in ctx.gensets:
            tab = ctx.table(I, J)
            by_min = ctx.leq[np.ix_(tab.mins, tab.mins)]
            by_max = ctx.leq[np.ix_(tab.maxs, tab.maxs)]
            universe += by_min.size
            for a, b in zip(*np.nonzero(by_min != by_max)):
                p, q = tab.cosets[a], tab.cosets[b]
                F.add(_ckey(p, q),
                      f"p={_cdesc(p)}, q={_cdesc(q)}: min-order {bool(by_min[a, b])}, max-order {bool(by_max[a, b])}")
    return universe, F


@check("bruhat-reduced-term", "p <= q iff p is the terminus of a path subordinate to a reduced expression of q")
def _bruhat_reduced_term(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for q, e in ctx.rex.items():
        inf = ctx.info(e)
        tab = ctx.table(q.left, q.right)
        universe += len(tab.cosets)
        if not inf.reduced or inf.coset != q:
            F.add(_ckey(q), f"q={_cdesc(q)}: search output {e} is not a reduced expression for q")
            continue
        below = set(ctx.downset_pos(q).tolist())
        terms = set(inf.term_pos.tolist())
        for k in sorted(below ^ terms):
            p = tab.cosets[k]
            F.add(_ckey(p, q),
                  f"p={_cdesc(p)}, q={_cdesc(q)}, expression {e}: p<=q is {k in below}, p in Term is {k in terms}")
    return universe, F


@check("bruhat-any-expression", "p <= q iff p is the terminus of a path subordinate to every expression of q "
                                "(all expressions up to the width cap)")
def _bruhat_any_expression(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for e in ctx.expressions:
        inf = ctx.info(e)
        q = inf.coset
        tab = ctx.table(q.left, q.right)
        universe += len(tab.cosets)
        below = ctx.downset_pos(q)
        missing = np.setdiff1d(below, inf.term_pos)
        extra = np.setdiff1d(inf.term_pos, below)
        for k in missing:
            p = tab.cosets[k]
            F.add((e.width,) + _ckey(p, q), f"expression {e} of q={_cdesc(q)}: p={_cdesc(p)} <= q but is no terminus")
        for k in extra:
            p = tab.cosets[k]
            F.add((e.width,) + _ckey(p, q), f"expression {e} of q={_cdesc(q)}: terminus p={_cdesc(p)} is not <= q")
    return universe, F


@check("length-monotone", "q <= p implies l(q) <= l(p), with equality iff q = p")
def _length_monotone(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for I in ctx.gensets:
        for J in ctx.gensets:
            tab = ctx.table(I, J)
            lens = np.array([c.length for c in tab.cosets])
            le = ctx.coset_leq_matrix(I, J)
            a, b = np.nonzero(le)
            universe += len(a)
            bad = (lens[a] > lens[b]) | ((lens[a] == lens[b]) != (a == b))
            for k in np.flatnonzero(bad):
                q, p = tab.cosets[a[k]], tab.cosets[b[k]]
                F.add(_ckey(q, p), f"q={_cdesc(q)} <= p={_cdesc(p)} but lengths {q.length}, {p.length}")
    return universe, F


@check("projection-monotone", "for I ⊆ K, J ⊆ L the quotient map to (K,L)-cosets is order preserving")
def _projection_monotone(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for I, K, J, L in _projection_tuples(ctx):
        src, dst = ctx.table(I, J), ctx.table(K, L)
        proj = dst.label[src.mins]
        le_src = ctx.coset_leq_matrix(I, J)
        le_dst = ctx.coset_leq_matrix(K, L)[np.ix_(proj, proj)]
        universe += int(le_src.sum())
        for a, b in zip(*np.nonzero(le_src & ~le_dst)):
            p, q = src.cosets[a], src.cosets[b]
            F.add(_ckey(p, q), f"p={_cdesc(p)} <= p'={_cdesc(q)} but images "
                                        f"{dst.cosets[proj[a]].describe()} , {dst.cosets[proj[b]].describe()} are not ordered")
    return universe, F


@check("projection-downsets", "for I ⊆ K, J ⊆ L and each (K,L)-coset q: the preimage of {<= q} is the down-set "
                              "of the preimage of q, and the preimage of q has a unique maximum")
def _projection_downsets(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for I, K, J, L in _projection_tuples(ctx):
        src, dst = ctx.table(I, J), ctx.table(K, L)
        proj = dst.label[src.mins]
        le_src = ctx.coset_leq_matrix(I, J)
        le_dst = ctx.coset_leq_matrix(K, L)
        for qk, q in enumerate(dst.cosets):
            universe += 1
            lhs = le_dst[proj, qk]
            fibre = proj == qk
            rhs = le_src[:, fibre].any(axis=1)
            problems = []
            if not np.array_equal(lhs, rhs):
                problems.append("preimage of the down-set differs from the down-set of the preimage")
            fib = np.flatnonzero(fibre)
            tops = [k for k in fib if le_src[fib, k].all()]
            if len(tops) != 1:
                problems.append(f"preimage has {len(tops)} maxima")
            if problems:
                F.add(_ckey(q), f"({format_genset(I)} | {format_genset(J)}) -> q={_cdesc(q)}: " + "; ".join(problems))
    return universe, F


def _projection_tuples(ctx: Context):
    for I in ctx.gensets:
        for K in ctx.gensets:
            if not I <= K:
                continue
            for J in ctx.gensets:
                for L in ctx.gensets:
                    if J <= L:
                        yield I, K, J, L


@check("star-inclusions", "p an (I,J)-, q a (J,K)-, q' a (J,K')-coset with K' ⊆ K and q' ⊆ q: p*q' ⊆ p*q")
def _star_inclusions(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    gs = ctx.gensets
    for I in gs:
        for J in gs:
            for K in gs:
                for K2 in gs:
                    if not K2 <= K:
                        continue
                    small, big = ctx.table(J, K2), ctx.table(J, K)
                    up = big.label[small.mins]                    # q' -> q
                    S_small = ctx.star_index(I, J, K2)            # p*q' among (I,K')
                    S_big = ctx.star_index(I, J, K)               # p*q among (I,K)
                    lift = ctx.table(I, K).label[ctx.table(I, K2).mins]
                    ok = lift[S_small] == S_big[:, up]
                    universe += ok.size
                    for a, b in zip(*np.nonzero(~ok)):
                        p, q2 = ctx.table(I, J).cosets[a], small.cosets[b]
                        F.add(_ckey(p, q2), f"p={_cdesc(p)}, q'={_cdesc(q2)} inside q={big.cosets[up[b]].describe()}: "
                                                     f"p*q' not inside p*q")
    return universe, F


def _concat_triples(ctx: Context):
    """Per parabolic quadruple: star positions ``T[p, q, r]`` and the pairs ``q' <= q``."""
    gs = ctx.gensets
    for K in gs:
        for I in gs:
            for J in gs:
                le_q = ctx.coset_leq_matrix(I, J)
                qa, qb = np.nonzero(le_q)
                S1 = ctx.star_index(K, I, J)
                for L in gs:
                    S2 = ctx.star_index(K, J, L)
                    T = S2[S1]                                   # (p, q, r)
                    yield K, I, J, L, T, qa, qb


@check("concat-monotone", "q' <= q implies p*q'*r <= p*q*r for all composable p, r")
def _concat_monotone(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for K, I, J, L, T, qa, qb in _concat_triples(ctx):
        le = ctx.coset_leq_matrix(K, L)
        ok = le[T[:, qa, :], T[:, qb, :]]
        universe += ok.size
        for pi, k, ri in zip(*np.nonzero(~ok)):
            _concat_failure(ctx, F, K, I, J, L, pi, qa[k], qb[k], ri, "p*q'*r not <= p*q*r")
    return universe, F


@check("concat-strict", "q' < q and p.q.r reduced imply p*q'*r < p.q.r")
def _concat_strict(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for K, I, J, L, T, qa, qb in _concat_triples(ctx):
        strict = qa != qb
        qa_s, qb_s = qa[strict], qb[strict]
        if not len(qa_s):
            continue
        R1 = ctx.reduced_mask(K, I, J)                          # p.q
        R2 = ctx.reduced_mask(K, J, L)                          # (p.q).r
        S1 = ctx.star_index(K, I, J)
        pq = S1[:, qb_s]                                        # (p, pair)
        mask = R1[:, qb_s][:, :, None] & R2[pq]                 # (p, pair, r)
        le = ctx.coset_leq_matrix(K, L)
        lo, hi = T[:, qa_s, :], T[:, qb_s, :]
        ok = le[lo, hi] & (lo != hi)
        universe += int(mask.sum())
        for pi, k, ri in zip(*np.nonzero(mask & ~ok)):
            _concat_failure(ctx, F, K, I, J, L, pi, qa_s[k], qb_s[k], ri, "p*q'*r not < p.q.r")
    return universe, F


@check("concat-absorbing", "with r the unique (J,S)-coset, p*q'*r = p*q*r for all q' <= q")
def _concat_absorbing(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    S = frozenset(range(ctx.g.rank))
    for K, I, J, L, T, qa, qb in _concat_triples(ctx):
        if L != S:
            continue
        ok = T[:, qa, :] == T[:, qb, :]
        universe += ok.size
        for pi, k, ri in zip(*np.nonzero(~ok)):
            _concat_failure(ctx, F, K, I, J, L, pi, qa[k], qb[k], ri, "p*q'*r != p*q*r")
    return universe, F


def _concat_failure(ctx, F, K, I, J, L, pi, qa, qb, ri, what):
    p = ctx.table(K, I).cosets[pi]
    q2, q = ctx.table(I, J).cosets[qa], ctx.table(I, J).cosets[qb]
    r = ctx.table(J, L).cosets[ri]
    F.add(_ckey(p, q2, q, r),
          lambda: f"p={_cdesc(p)}, q'={_cdesc(q2)}, q={_cdesc(q)}, r={_cdesc(r)}: {what}")


@check("reduced-compose-criterion", "l(max p * max q) = l(max p) + l(max q) - l(J) iff "
                                    "max(p*q) = max p . (w_J^-1 max q) = (max p w_J^-1) . max q")
def _reduced_compose_criterion(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    M, ln, inv = g.mult_table, g.length, g.inverse
    universe = 0
    for I in ctx.gensets:
        for J in ctx.gensets:
            wJi = int(inv[g.longest_element(J)])
            for K in ctx.gensets:
                A, B = ctx.table(I, J), ctx.table(J, K)
                by_length = ctx.reduced_mask(I, J, K)
                top = g.star_table[np.ix_(A.maxs, B.maxs)]
                right = M[wJi, B.maxs]                         # w_J^-1 max q
                left = M[A.maxs, wJi]                          # max p w_J^-1
                prod1 = M[np.ix_(A.maxs, right)]
                prod2 = M[np.ix_(left, B.maxs)]
                red1 = ln[prod1] == ln[A.maxs][:, None] + ln[right][None, :]
                red2 = ln[prod2] == ln[left][:, None] + ln[B.maxs][None, :]
                quoted = red1 & (prod1 == top) & red2 & (prod2 == top)
                universe += by_length.size
                for a, b in zip(*np.nonzero(by_length != quoted)):
                    p, q = A.cosets[a], B.cosets[b]
                    F.add(_ckey(p, q), f"p={_cdesc(p)}, q={_cdesc(q)}: length criterion "
                                                f"{bool(by_length[a, b])}, factorisation criterion {bool(quoted[a, b])}")
                    if by_length[a, b] != (reduced_compose(p, q) is not None):
                        F.add(_ckey(p, q), f"p={_cdesc(p)}, q={_cdesc(q)}: reduced_compose disagrees")
    return universe, F


# -- expressions ------------------------------------------------------------


@check("expr-length-agreement", "singlestep length sum |l(I_k) - l(I_k-1)| equals the multistep length; "
                                "multistep and singlestep forms express the same coset and round-trip")
def _expr_length_agreement(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    for e in ctx.expressions:
        m = to_multistep(e)
        problems = []
        if expr_length(g, e) != multistep_length(g, m):
            problems.append(f"singlestep length {expr_length(g, e)} != multistep {multistep_length(g, m)}")
        if expressed_coset(g, m) != expressed_coset(g, e):
            problems.append("multistep form expresses a different coset")
        if to_multistep(to_singlestep(m)) != m:
            problems.append("multistep form does not round-trip")
        if problems:
            F.add((e.width,), f"expression {e} ({m}): " + "; ".join(problems))
    return len(ctx.expressions), F


@check("reduced-iff-length", "an expression is reduced iff its length equals the length of its coset")
def _reduced_iff_length(ctx: Context):
    F = ctx.new_failures()
    for e in ctx.expressions:
        inf = ctx.info(e)
        if inf.reduced != (inf.length == inf.coset.length):
            F.add((e.width,), f"expression {e}: reduced={inf.reduced}, length {inf.length}, coset length {inf.coset.length}")
    return len(ctx.expressions), F


@check("reduced-subexpressions", "contiguous subexpressions of reduced expressions are reduced")
def _reduced_subexpressions(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for e in ctx.expressions:
        if not ctx.info(e).reduced:
            continue
        for i in range(len(e)):
            for j in range(i, len(e)):
                sub = SinglestepExpr(e.subsets[i:j + 1])
                universe += 1
                if not ctx.info(sub).reduced:
                    F.add((e.width, i, j), f"expression {e} is reduced but [{i}..{j}] = {sub} is not")
    return universe, F


@check("reduced-concat-compose", "the concatenation of reduced expressions of p and q is reduced "
                                 "iff p.q is a reduced composition")
def _reduced_concat_compose(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for e1, e2 in ctx.expression_pairs():
        i1, i2 = ctx.info(e1), ctx.info(e2)
        if not (i1.reduced and i2.reduced):
            continue
        universe += 1
        joint = ctx.info(concat(e1, e2)).reduced
        composed = reduced_compose(i1.coset, i2.coset) is not None
        if joint != composed:
            F.add((e1.width + e2.width,), f"{e1} ∘ {e2}: concatenation reduced={joint}, reduced composition={composed}")
    return universe, F


# -- paths ------------------------------------------------------------------


@check("path-enumeration", "enumerated subordinate paths are valid, distinct, and as many as a "
                           "dynamic-programming count predicts")
def _path_enumeration(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    universe = 0
    for e in ctx.expressions:
        paths = ctx.info(e).paths
        universe += len(paths)
        problems = []
        for path in paths:
            bad = path.problems()
            if bad:
                problems.append(f"path {[c.describe() for c in path.cosets]}: {bad[0]}")
                break
        if len({p.cosets for p in paths}) != len(paths):
            problems.append("duplicate paths")
        expected = count_paths(g, e)
        if expected != len(paths):
            problems.append(f"{len(paths)} paths enumerated, {expected} counted")
        if problems:
            F.add((e.width,), f"expression {e}: " + "; ".join(problems))
    return universe, F


@check("forward-path", "each expression has exactly one forward path; it is subordinate and its terminus is "
                       "the expressed coset")
def _forward_path(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    for e in ctx.expressions:
        inf = ctx.info(e)
        fwd = forward_path(g, e)
        forwards = [p for p in inf.paths if p.is_forward()]
        problems = []
        if fwd.problems() or not fwd.is_forward():
            problems.append("forward path is not a forward subordinate path")
        if fwd.terminus != inf.coset:
            problems.append(f"terminus {fwd.terminus.describe()} != expressed {inf.coset.describe()}")
        if len(forwards) != 1 or forwards[0] != fwd:
            problems.append(f"{len(forwards)} forward paths among the enumeration")
        if problems:
            F.add((e.width,), f"expression {e}: " + "; ".join(problems))
    return len(ctx.expressions), F


@check("term-downset", "Term(I_•) = {<= p} for every expression I_• of p (up to the width cap)")
def _term_downset(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for e in ctx.expressions:
        inf = ctx.info(e)
        universe += 1
        below = ctx.downset_pos(inf.coset)
        if not np.array_equal(below, inf.term_pos):
            tab = ctx.table(e.first, e.last)
            F.add((e.width,), lambda e=e, inf=inf, below=below, tab=tab:
                  f"expression {e} of {inf.coset.describe()}: Term = "
                  f"{[tab.cosets[k].describe() for k in inf.term_pos]}, down-set = "
                  f"{[tab.cosets[k].describe() for k in below]}")
    return universe, F


@check("term-star-term", "Term(I_•) * Term(J_•) ⊆ Term(I_• ∘ J_•)")
def _term_star_term(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for e1, e2 in ctx.expression_pairs():
        i1, i2 = ctx.info(e1), ctx.info(e2)
        S = ctx.star_index(e1.first, e1.last, e2.last)
        prods = np.unique(S[np.ix_(i1.term_pos, i2.term_pos)])
        joint = ctx.info(concat(e1, e2)).term_pos
        universe += 1
        if not np.isin(prods, joint).all():
            F.add((e1.width + e2.width,), f"{e1} ∘ {e2}: product of termini not inside Term of the concatenation")
    return universe, F


@check("term-up", "Term(I_• ∘ [J, Js]) = Term(I_•) * (W_J W_Js)")
def _term_up(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    universe = 0
    for e in ctx.expressions:
        if e.width >= ctx.cap:
            continue
        J = e.last
        for s in range(g.rank):
            if s in J:
                continue
            Js = J | {s}
            universe += 1
            ext = SinglestepExpr(e.subsets + (Js,))
            ident = ctx.table(J, Js).label[0]
            image = np.unique(ctx.star_index(e.first, J, Js)[ctx.info(e).term_pos, ident])
            if not np.array_equal(image, ctx.info(ext).term_pos):
                F.add((e.width,), f"{e} then add {s + 1}: Term differs from Term(e) * W_J W_Js")
    return universe, F


@check("term-down", "Term(I_• ∘ [J, J-t]) = {q ⊆ p : p in Term(I_•)} ⊇ {W_I max(p) W_J-t} = Term(I_•) * (W_J W_J-t)")
def _term_down(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for e in ctx.expressions:
        if e.width >= ctx.cap:
            continue
        I, J = e.first, e.last
        for t in sorted(J):
            Jt = J - {t}
            universe += 1
            ext = SinglestepExpr(e.subsets + (Jt,))
            terms = ctx.info(e).term_pos
            parent, child = ctx.table(I, J), ctx.table(I, Jt)
            inside = np.isin(parent.label, terms)
            contained = np.unique(child.label[inside])
            ident = ctx.table(J, Jt).label[0]
            starred = np.unique(ctx.star_index(I, J, Jt)[terms, ident])
            by_max = np.unique(child.label[parent.maxs[terms]])
            got = ctx.info(ext).term_pos
            problems = []
            if not np.array_equal(got, contained):
                problems.append("Term differs from the sub-cosets of Term(e)")
            if not np.isin(starred, got).all():
                problems.append("Term(e) * W_J W_J-t not inside")
            if not np.array_equal(starred, by_max):
                problems.append("{W_I max(p) W_J-t} != Term(e) * W_J W_J-t")
            if problems:
                F.add((e.width,), f"{e} then remove {t + 1}: " + "; ".join(problems))
    return universe, F


@check("path-concatenation", "p_• ∘ q_• is a path subordinate to P_• ∘ Q_• with terminus term(p_•) * term(q_•)")
def _path_concatenation(ctx: Context):
    F = ctx.new_failures()
    universe = 0
    for e1, e2 in ctx.expression_pairs():
        i1, i2 = ctx.info(e1), ctx.info(e2)
        firsts = {}
        for pp in i1.paths:
            firsts.setdefault(pp.terminus, pp)
        for pp in firsts.values():
            for qq in i2.paths:
                universe += 1
                joined = concat_paths(pp, qq)
                bad = joined.problems()
                if not bad and joined.terminus != pp.terminus * qq.terminus:
                    bad = ["terminus is not the star product of termini"]
                if bad:
                    F.add((e1.width + e2.width,), lambda e1=e1, e2=e2, bad=bad, pp=pp, qq=qq:
                          f"{e1} ∘ {e2}, termini {pp.terminus.describe()} and {qq.terminus.describe()}: {bad[0]}")
    return universe, F


@check("forward-concatenation", "the concatenation of forward paths is the forward path of the concatenation")
def _forward_concatenation(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    universe = 0
    for e1, e2 in ctx.expression_pairs():
        universe += 1
        joined = concat_paths(forward_path(g, e1), forward_path(g, e2))
        if joined != forward_path(g, concat(e1, e2)) or not joined.is_forward():
            F.add((e1.width + e2.width,), f"{e1} ∘ {e2}: concatenated forward paths are not forward")
    return universe, F


@check("unique-forward-path", "a reduced expression of p has exactly one subordinate path with terminus p, "
                              "the forward path")
def _unique_forward_path(ctx: Context):
    g, F = ctx.g, ctx.new_failures()
    universe = 0
    for e in ctx.expressions:
        inf = ctx.info(e)
        if not inf.reduced:
            continue
        universe += 1
        hits = [p for p in inf.paths if p.terminus == inf.coset]
        if len(hits) != 1 or hits[0] != forward_path(g, e):
            F.add((e.width,), f"reduced expression {e} of {inf.coset.describe()}: "
                              f"{len(hits)} paths end at p")
    return universe, F


# ---------------------------------------------------------------------------


def run_suite(group: CoxeterGroup, width_cap: int | None = None, checks: Iterable[str] | None = None,
              max_failures: int = MAX_REPORTED) -> list[CheckResult]:
    """Run the selected checks (all by default) in registry order."""
    if width_cap is None:
        width_cap = default_width_cap(group)
    if width_cap < 0:
        raise ValueError("width_cap must be >= 0")
    names = list(CHECKS) if checks is None else list(checks)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise UnknownCheckName(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}")
    wanted = set(names)
    ctx = Context(group, width_cap, max_failures)
    results = []
    for name, (fn, _) in CHECKS.items():
        if name not in wanted:
            continue
        start = time.perf_counter()
        universe, failures = fn(ctx)
        results.append(CheckResult(
            name=name, group=group.name, universe=int(universe), failures=failures.rendered(),
            elapsed=time.perf_counter() - start, failure_count=failures.count,
        ))
    return results


def report_tsv(results: list[CheckResult], timings: bool = False) -> str:
    """One row per check.  Timings are opt-in so the default report is byte-deterministic."""
    head = ["check", "group", "universe", "failures"] + (["seconds"] if timings else []) + ["status"]
    lines = ["\t".join(head)]
    lines += [r.tsv_row(timings) for r in results]
    return "\n".join(lines) + "\n"


def summary(results: list[CheckResult], timings: bool = False) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status}  {r.name:<26} {r.group:<8} {r.universe:>10} tuples"
        lines.append(line + (f"  {r.elapsed:7.2f}s" if timings else ""))
        for f in r.failures:
            lines.append(f"      counterexample: {f}")
        if r.failure_count > len(r.failures):
            lines.append(f"      ... {r.failure_count - len(r.failures)} more")
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
