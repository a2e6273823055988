"""Paths subordinate to a singlestep expression, and their termini.

For ``I_• = [I_0, ..., I_d]`` a subordinate path is a sequence of cosets
``p_k ∈ W_{I_0} \\ W / W_{I_k}`` starting at the identity coset, where an
up-step moves to the unique coset containing ``p_k`` and a down-step picks any
coset contained in ``p_k``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cosets import DoubleCoset, coset_of, coset_star, format_genset, identity_coset, sub_cosets
from .coxeter import CoxeterGroup, format_word
from .errors import JunctionMismatch
from .expressions import SinglestepExpr, concat


@dataclass(frozen=True)
class SubordinatePath:
    expr: SinglestepExpr
    cosets: tuple[DoubleCoset, ...]

    @property
    def terminus(self) -> DoubleCoset:
        return self.cosets[-1]

    def __len__(self):
        return len(self.cosets)

    def problems(self) -> list[str]:
        """Violations of the subordinate-path conditions (empty if valid)."""
        e, ps = self.expr, self.cosets
        out = []
        if len(ps) != len(e):
            return [f"{len(ps)} cosets for an expression with {len(e)} subsets"]
        g = ps[0].group
        I0 = e.first
        for k, (p, Ik) in enumerate(zip(ps, e.subsets)):
            if p.parabolic_type != (I0, Ik):
                out.append(f"step {k}: coset type ({format_genset(p.left)} | {format_genset(p.right)}) "
                           f"should be ({format_genset(I0)} | {format_genset(Ik)})")
        if out:
            return out
        if ps[0] != identity_coset(g, I0):
            out.append("step 0: not the identity coset")
        for k in range(e.width):
            p, q = ps[k], ps[k + 1]
            if e.is_up(k):
                if not p.issubset(q):
                    out.append(f"step {k + 1}: up-step coset does not contain the previous one")
            elif not q.issubset(p):
                out.append(f"step {k + 1}: down-step coset is not inside the previous one")
        return out

    def is_forward(self) -> bool:
        e, ps = self.expr, self.cosets
        return all(e.is_up(k) or ps[k + 1].max == ps[k].max for k in range(e.width))

    def render(self) -> str:
        """One line per step: ``k: I_k | min=... max=...``."""
        g = self.cosets[0].group
        return "\n".join(
            f"{k}: {format_genset(Ik)} | min={format_word(g.word(p.min))} max={format_word(g.word(p.max))}"
            for k, (Ik, p) in enumerate(zip(self.expr.subsets, self.cosets))
        )

    def __matmul__(self, other: SubordinatePath) -> SubordinatePath:
        return concat_paths(self, other)


def _successors(group: CoxeterGroup, e: SinglestepExpr, k: int, p: DoubleCoset) -> list[DoubleCoset]:
    nxt = e.subsets[k + 1]
    if e.is_up(k):
        return [coset_of(group, p.min, e.first, nxt)]
    return sub_cosets(p, nxt)


def enumerate_paths(group: CoxeterGroup, e: SinglestepExpr) -> list[SubordinatePath]:
    """All paths subordinate to ``e``, depth first, branches ordered by min element."""
    out = []
    stack = [identity_coset(group, e.first)]

    def walk(k):
        if k == e.width:
            out.append(SubordinatePath(e, tuple(stack)))
            return
        for q in _successors(group, e, k, stack[-1]):
            stack.append(q)
            walk(k + 1)
            stack.pop()

    walk(0)
    return out


def count_paths(group: CoxeterGroup, e: SinglestepExpr) -> int:
    """Number of subordinate paths, counted by dynamic programming over cosets."""
    counts = {identity_coset(group, e.first): 1}
    for k in range(e.width):
        nxt: dict[DoubleCoset, int] = {}
        for p, c in counts.items():
            for q in _successors(group, e, k, p):
                nxt[q] = nxt.get(q, 0) + c
        counts = nxt
    return sum(counts.values())


def forward_path(group: CoxeterGroup, e: SinglestepExpr) -> SubordinatePath:
    """The path that keeps the maximal element fixed at every down-step."""
    ps = [identity_coset(group, e.first)]
    for k in range(e.width):
        p, nxt = ps[-1], e.subsets[k + 1]
        anchor = p.min if e.is_up(k) else p.max
        ps.append(coset_of(group, anchor, e.first, nxt))
    return SubordinatePath(e, tuple(ps))


def terminus(path: SubordinatePath) -> DoubleCoset:
    return path.terminus


def term_set(group: CoxeterGroup, e: SinglestepExpr) -> frozenset[DoubleCoset]:
    """``Term(e)``: termini of all subordinate paths."""
    return frozenset(path.terminus for path in enumerate_paths(group, e))


def concat_paths(pp: SubordinatePath, qq: SubordinatePath) -> SubordinatePath:
    """``[p_0, ..., p_c = p, p*q_1, ..., p*q_d]`` where ``p`` is the terminus of ``pp``."""
    if pp.expr.last != qq.expr.first:
        raise JunctionMismatch(
            f"first path ends at {{{format_genset(pp.expr.last)}}}, "
            f"second starts at {{{format_genset(qq.expr.first)}}}"
        )
    p = pp.terminus
    tail = tuple(coset_star(p, q) for q in qq.cosets[1:])
    return SubordinatePath(concat(pp.expr, qq.expr), pp.cosets + tail)


def render_paths(paths) -> str:
    blocks = [f"path {i}\n{path.render()}" for i, path in enumerate(paths)]
    return "\n".join(blocks) + ("\n" if blocks else "")
