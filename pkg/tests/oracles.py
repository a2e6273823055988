"""Independent models of the small groups, used as test oracles.

Each group is realised concretely (permutations, signed permutations or
dihedral pairs), so lengths, products, Bruhat order and cosets can be computed
without touching the package's tables.  Bruhat order here is the closure of
``x < xt`` over reflections ``t``, a different definition from the one the
package implements.
"""
from __future__ import annotations

from collections import deque
from functools import cached_property


def _perm_mul(x, y):
    # (x y)(i) = x(y(i))
    return tuple(x[i] for i in y)


def _signed_mul(x, y):
    # signed permutations of 1..n as tuples of nonzero ints: w(i) = x[i-1]
    out = []
    for v in y:
        img = x[abs(v) - 1]
        out.append(img if v > 0 else -img)
    return tuple(out)


def _dihedral_mul(k):
    def mul(x, y):
        a, f = x
        b, g = y
        return ((a + (-b if f else b)) % k, f ^ g)
    return mul


class Model:
    """A finite group given by generator elements and a multiplication."""

    def __init__(self, gens, mul, identity):
        self.gens = list(gens)
        self.mul = mul
        self.identity = identity

    @classmethod
    def type_a(cls, rank):
        n = rank + 1
        gens = []
        for i in range(rank):
            p = list(range(n))
            p[i], p[i + 1] = p[i + 1], p[i]
            gens.append(tuple(p))
        return cls(gens, _perm_mul, tuple(range(n)))

    @classmethod
    def type_b(cls, rank):
        # generator 0 negates the first coordinate; m(0,1) = 4
        n = rank
        ident = tuple(range(1, n + 1))
        gens = [(-1,) + ident[1:]]
        for i in range(n - 1):
            p = list(ident)
            p[i], p[i + 1] = p[i + 1], p[i]
            gens.append(tuple(p))
        return cls(gens, _signed_mul, ident)

    @classmethod
    def dihedral(cls, k):
        return cls([(0, 1), (1, 1)], _dihedral_mul(k), (0, 0))

    @classmethod
    def for_preset(cls, name):
        if name == "A1xA1":
            return cls.dihedral(2)
        if name in ("A2", "A3"):
            return cls.type_a(int(name[1]))
        if name == "B2":
            return cls.dihedral(4)
        if name == "B3":
            return cls.type_b(3)
        if name.startswith("I2("):
            return cls.dihedral(int(name[3:-1]))
        raise KeyError(name)

    @cached_property
    def length(self) -> dict:
        dist = {self.identity: 0}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for s in self.gens:
                v = self.mul(w, s)
                if v not in dist:
                    dist[v] = dist[w] + 1
                    queue.append(v)
        return dist

    @property
    def elements(self):
        return list(self.length)

    def inverse(self, x):
        for y in self.length:
            if self.mul(x, y) == self.identity:
                return y
        raise AssertionError("no inverse")

    def evaluate(self, word):
        w = self.identity
        for s in word:
            w = self.mul(w, self.gens[s])
        return w

    @cached_property
    def reflections(self):
        return {self.mul(self.mul(w, s), self.inverse(w)) for w in self.length for s in self.gens}

    @cached_property
    def below(self) -> dict:
        """Bruhat down-sets from ``x < xt`` whenever ``l(x) < l(xt)``."""
        out = {}
        for y in sorted(self.length, key=self.length.get):
            acc = {y}
            for t in self.reflections:
                x = self.mul(y, t)
                if self.length[x] < self.length[y]:
                    acc |= out[x]
            out[y] = frozenset(acc)
        return out

    def leq(self, x, y) -> bool:
        return x in self.below[y]

    def demazure(self, x, word):
        w = x
        for s in word:
            v = self.mul(w, self.gens[s])
            if self.length[v] > self.length[w]:
                w = v
        return w

    def subgroup(self, gens) -> frozenset:
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for s in gens:
                v = self.mul(w, self.gens[s])
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return frozenset(seen)

    def longest(self, gens):
        return max(self.subgroup(gens), key=self.length.get)

    def double_coset(self, w, left, right) -> frozenset:
        return frozenset(self.mul(self.mul(u, w), v) for u in self.subgroup(left) for v in self.subgroup(right))

    def partition(self, left, right) -> list[frozenset]:
        seen, blocks = set(), []
        for w in sorted(self.length, key=self.length.get):
            if w not in seen:
                block = self.double_coset(w, left, right)
                seen |= block
                blocks.append(block)
        return blocks

    def coset_max(self, block):
        return max(block, key=self.length.get)

    def coset_min(self, block):
        return min(block, key=self.length.get)

    def coset_leq(self, p, q) -> bool:
        return self.leq(self.coset_max(p), self.coset_max(q))

    def expressed(self, subsets) -> frozenset:
        """Coset of the Demazure fold of the longest elements along the expression."""
        top = self.identity
        for gens in subsets:
            w = self.longest(gens)
            top = self.demazure(top, _word_of(self, w))
        return self.double_coset(top, subsets[0], subsets[-1])

    def termini(self, subsets) -> set[frozenset]:
        """Termini of subordinate paths, computed on explicit element sets."""
        first = subsets[0]
        layer = {self.double_coset(self.identity, first, first)}
        for prev, nxt in zip(subsets, subsets[1:]):
            new = set()
            for p in layer:
                if len(nxt) > len(prev):
                    new.add(self.double_coset(next(iter(p)), first, nxt))
                else:
                    seen = set()
                    for w in p:
                        if w not in seen:
                            block = self.double_coset(w, first, nxt)
                            seen |= block
                            new.add(block)
            layer = new
        return layer

    def path_count(self, subsets) -> int:
        first = subsets[0]
        counts = {self.double_coset(self.identity, first, first): 1}
        for prev, nxt in zip(subsets, subsets[1:]):
            new: dict = {}
            for p, c in counts.items():
                if len(nxt) > len(prev):
                    succ = [self.double_coset(next(iter(p)), first, nxt)]
                else:
                    succ, seen = [], set()
                    for w in p:
                        if w not in seen:
                            block = self.double_coset(w, first, nxt)
                            seen |= block
                            succ.append(block)
                for q in succ:
                    new[q] = new.get(q, 0) + c
            counts = new
        return sum(counts.values())


def _word_of(model: Model, w):
    """Some reduced word for ``w``, by descending along the length function."""
    word = []
    while w != model.identity:
        for s, g in enumerate(model.gens):
            v = model.mul(w, g)
            if model.length[v] < model.length[w]:
                word.append(s)
                w = v
                break
    return word[::-1]


def element_map(group, model: Model) -> list:
    """Package index -> model element."""
    return [model.evaluate(group.word(x)) for x in range(group.size)]
