"""Finite Coxeter groups enumerated from their Coxeter matrix.

Elements are identified with their canonical reduced word: the ShortLex-least
word among all reduced words for the element (Matsumoto: the reduced words of
an element form one orbit under braid moves).  After enumeration every element
is an integer index, with index order equal to ShortLex order of the canonical
words, so index 0 is the identity and lengths are non-decreasing in the index.

All products, Demazure products and Bruhat comparisons are backed by dense
tables computed once per group.
"""
from __future__ import annotations

import operator
import re
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CapExceeded, InvalidMatrix, ParseError

Word = tuple[int, ...]
GenSet = frozenset  # frozenset[int], 0-indexed generators

DEFAULT_CAP = 5000


def genset(gens: Iterable[int] = ()) -> frozenset[int]:
    return frozenset(int(g) for g in gens)


# ---------------------------------------------------------------------------
# Coxeter matrices


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric Coxeter matrix with unit diagonal and entries >= 2 elsewhere."""

    rank: int
    m: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidMatrix(f"rank must be positive, got {self.rank}")
        if len(self.m) != self.rank or any(len(row) != self.rank for row in self.m):
            raise InvalidMatrix("matrix must be rank x rank")
        for i in range(self.rank):
            if self.m[i][i] != 1:
                raise InvalidMatrix(f"diagonal entry m({i + 1},{i + 1}) must be 1")
            for j in range(self.rank):
                if self.m[i][j] != self.m[j][i]:
                    raise InvalidMatrix(f"matrix is not symmetric at ({i + 1},{j + 1})")
                if i != j and self.m[i][j] < 2:
                    raise InvalidMatrix(
                        f"off-diagonal entry m({i + 1},{j + 1}) = {self.m[i][j]} must be >= 2"
                    )

    @classmethod
    def from_entries(cls, rank: int, entries: dict[tuple[int, int], int] | None = None):
        """Build from 0-indexed ``{(i, j): m_ij}``; unlisted pairs commute."""
        rows = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
        for (i, j), v in (entries or {}).items():
            if i == j:
                raise InvalidMatrix("diagonal entries are fixed to 1")
            if not (0 <= i < rank and 0 <= j < rank):
                raise InvalidMatrix(f"generator pair ({i + 1},{j + 1}) out of range")
            rows[i][j] = rows[j][i] = int(v)
        return cls(rank, tuple(tuple(r) for r in rows))

    def __getitem__(self, ij):
        i, j = ij
        return self.m[i][j]


_I2_RE = re.compile(r"^I2\((\d+)\)$")

PRESET_NAMES = ("A1", "A1xA1", "A2", "A3", "B2", "B3", "H3", "I2(k)")


def preset_matrix(name: str) -> CoxeterMatrix:
    """Coxeter matrix of a named finite type (A1, A1xA1, A2, A3, B2, B3, H3, I2(k))."""
    key = name.strip()
    table = {
        "A1": (1, {}),
        "A1xA1": (2, {}),
        "A2": (2, {(0, 1): 3}),
        "B2": (2, {(0, 1): 4}),
        "A3": (3, {(0, 1): 3, (1, 2): 3}),
        "B3": (3, {(0, 1): 4, (1, 2): 3}),
        "H3": (3, {(0, 1): 5, (1, 2): 3}),
    }
    if key in table:
        rank, entries = table[key]
        return CoxeterMatrix.from_entries(rank, entries)
    match = _I2_RE.match(key)
    if match:
        k = int(match.group(1))
        if k < 2:
            raise InvalidMatrix(f"I2(k) needs k >= 2, got {k}")
        return CoxeterMatrix.from_entries(2, {(0, 1): k})
    raise KeyError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")


def parse_group_file(text: str) -> CoxeterMatrix:
    """Parse the line-oriented group format.

    ``rank N`` followed by ``m i j v`` lines with 1-indexed generators.
    Blank lines and ``#`` comments are ignored; unlisted pairs default to 2.
    """
    rank = None
    entries: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] == "rank" and len(tokens) == 2:
                if rank is not None:
                    raise ParseError(f"line {lineno}: duplicate rank line")
                rank = int(tokens[1])
            elif tokens[0] == "m" and len(tokens) == 4:
                if rank is None:
                    raise ParseError(f"line {lineno}: 'm' line before 'rank'")
                i, j, v = (int(t) for t in tokens[1:])
                if not (1 <= i <= rank and 1 <= j <= rank) or i == j:
                    raise ParseError(f"line {lineno}: bad generator pair {i} {j}")
                if v < 2:
                    raise ParseError(f"line {lineno}: m value {v} must be >= 2")
                entries[(i - 1, j - 1)] = v
            else:
                raise ParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: bad integer in {raw.strip()!r}") from None
    if rank is None:
        raise ParseError("missing 'rank N' line")
    return CoxeterMatrix.from_entries(rank, entries)


# ---------------------------------------------------------------------------
# Word combinatorics (Tits' solution of the word problem)


def shortlex_key(word: Sequence[int]):
    return (len(word), tuple(word))


def _braid_neighbours(word: Word, m: CoxeterMatrix):
    n = len(word)
    for i in range(n - 1):
        s, t = word[i], word[i + 1]
        if s == t:
            continue
        k = m[s, t]
        if i + k > n:
            continue
        if all(word[i + j] == (s if j % 2 == 0 else t) for j in range(k)):
            swapped = tuple(t if j % 2 == 0 else s for j in range(k))
            yield word[:i] + swapped + word[i + k:]


def braid_orbit(word: Sequence[int], m: CoxeterMatrix) -> set[Word]:
    """All words reachable from ``word`` by braid moves."""
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for v in _braid_neighbours(w, m):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def _find_nil(word: Word) -> int:
    for i in range(len(word) - 1):
        if word[i] == word[i + 1]:
            return i
    return -1


def reduce_word(word: Sequence[int], m: CoxeterMatrix) -> Word:
    """Canonical reduced word of the product of ``word``, by nil and braid moves.

    A word is reduced iff no word in its braid orbit has two equal adjacent
    letters; deleting such a pair and repeating terminates in a reduced word
    for the same element.  The ShortLex-least word of that final orbit is
    returned.  Exponential in the worst case; intended for short words and as
    a table-free oracle.
    """
    current = tuple(word)
    while True:
        seen = {current}
        queue = deque([current])
        nil = None
        while queue and nil is None:
            w = queue.popleft()
            i = _find_nil(w)
            if i >= 0:
                nil = w[:i] + w[i + 2:]
                break
            for v in _braid_neighbours(w, m):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        if nil is None:
            return min(seen, key=shortlex_key)
        current = nil


def format_word(word: Sequence[int]) -> str:
    """Hyphen-joined 1-indexed generators; the empty word is ``e``."""
    return "-".join(str(s + 1) for s in word) if len(word) else "e"


def parse_word(text: str, rank: int | None = None) -> Word:
    """Inverse of :func:`format_word`.

    Also accepts letter words (``"aba"`` with a = generator 1) and ``""``,
    ``"-"`` or ``"e"`` for the identity.
    """
    s = text.strip()
    if s in ("", "-", "e", "1_W"):
        return ()
    if s.isalpha():
        word = tuple(ord(c) - ord("a") for c in s.lower())
    else:
        word = []
        for tok in re.split(r"[-\s,]+", s):
            if not tok:
                continue
            if not tok.isdigit() or int(tok) < 1:
                raise ParseError(f"bad generator token {tok!r} in word {text!r}")
            word.append(int(tok) - 1)
        word = tuple(word)
    if rank is not None:
        for g in word:
            if not 0 <= g < rank:
                raise ParseError(f"generator {g + 1} out of range 1..{rank} in word {text!r}")
    return word


# ---------------------------------------------------------------------------
# Groups


class Element:
    """A group element: a group handle plus an index.

    Supports ``x * y`` (group product), ``x @ y`` (Demazure product), ``x <= y``
    (Bruhat order) and ``operator.index``, so group methods accept either
    ``Element`` or plain indices.
    """

    __slots__ = ("group", "index")

    def __init__(self, group: CoxeterGroup, index: int):
        if not 0 <= index < group.size:
            raise IndexError(f"element index {index} out of range for group of size {group.size}")
        self.group = group
        self.index = int(index)

    def __index__(self):
        return self.index

    def __int__(self):
        return self.index

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.group is other.group and self.index == other.index
        return NotImplemented

    def __hash__(self):
        return hash((id(self.group), self.index))

    def __repr__(self):
        return f"Element({format_word(self.word)})"

    @property
    def word(self) -> Word:
        return self.group.word(self.index)

    @property
    def length(self) -> int:
        return self.group.length_of(self.index)

    def inverse(self) -> Element:
        return Element(self.group, self.group.inverse[self.index])

    def __mul__(self, other):
        return Element(self.group, self.group.multiply(self, other))

    def __matmul__(self, other):
        return Element(self.group, self.group.demazure(self, other))

    def __le__(self, other):
        return self.group.bruhat_leq(self, other)

    def __lt__(self, other):
        return self.index != operator.index(other) and self.group.bruhat_leq(self, other)


class CoxeterGroup:
    """A fully enumerated finite Coxeter system.

    Use :func:`build_group` (or :meth:`from_preset`) rather than calling the
    constructor directly.
    """

    def __init__(self, matrix: CoxeterMatrix, words: list[Word],
                 reduced_words: dict[Word, int], cap: int, name: str | None = None):
        self.matrix = matrix
        self.rank = matrix.rank
        self.name = name or "W"
        self.cap = cap
        self.words = words
        self._word_index = reduced_words
        n = len(words)
        rank = self.rank
        self.length = np.array([len(w) for w in words], dtype=np.int64)
        right = np.empty((n, rank), dtype=np.int64)
        left = np.empty((n, rank), dtype=np.int64)
        for x, w in enumerate(words):
            for s in range(rank):
                right[x, s] = self._lookup(w + (s,))
                left[x, s] = self._lookup((s,) + w)
        self.right_cayley = right
        self.left_cayley = left
        self.right_descent = self.length[right] < self.length[:, None]
        self.left_descent = self.length[left] < self.length[:, None]
        self.generators = [int(right[0, s]) for s in range(rank)]
        self.inverse = np.array([self._lookup(tuple(reversed(w))) for w in words], dtype=np.int64)
        self._longest: dict[frozenset[int], int] = {}
        self._parabolic: dict[frozenset[int], tuple[int, ...]] = {}

    # -- construction -------------------------------------------------------

    @classmethod
    def from_preset(cls, name: str, cap: int = DEFAULT_CAP) -> CoxeterGroup:
        return build_group(preset_matrix(name), cap=cap, name=name.strip())

    def _lookup(self, word: Word) -> int:
        """Index of a word that is reduced or one letter longer than reduced."""
        idx = self._word_index.get(word)
        if idx is not None:
            return idx
        # one appended/prepended letter cancels: strip a nil after braid moves
        return self._word_index[reduce_word(word, self.matrix)]

    # -- basic data ---------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.words)

    def __len__(self):
        return self.size

    def __iter__(self):
        return (Element(self, i) for i in range(self.size))

    def __repr__(self):
        return f"CoxeterGroup({self.name}, rank={self.rank}, size={self.size})"

    @property
    def identity(self) -> int:
        return 0

    def element(self, word) -> Element:
        """Element for a word: a sequence of 0-indexed generators, or text as in :func:`parse_word`."""
        if isinstance(word, str):
            word = parse_word(word, self.rank)
        return Element(self, self.index_of(word))

    def index_of(self, word: Sequence[int]) -> int:
        x = 0
        for s in word:
            if not 0 <= s < self.rank:
                raise ValueError(f"generator {s} out of range for rank {self.rank}")
            x = int(self.right_cayley[x, s])
        return x

    def word(self, x) -> Word:
        return self.words[operator.index(x)]

    def format(self, x) -> str:
        return format_word(self.word(x))

    def length_of(self, x) -> int:
        return int(self.length[operator.index(x)])

    def reduced_words(self, x) -> set[Word]:
        return braid_orbit(self.word(x), self.matrix)

    def right_descents(self, x) -> frozenset[int]:
        x = operator.index(x)
        return frozenset(s for s in range(self.rank) if self.right_descent[x, s])

    def left_descents(self, x) -> frozenset[int]:
        x = operator.index(x)
        return frozenset(s for s in range(self.rank) if self.left_descent[x, s])

    def check_genset(self, gens) -> frozenset[int]:
        gs = genset(gens)
        bad = [g for g in gs if not 0 <= g < self.rank]
        if bad:
            raise ValueError(f"generators {sorted(bad)} outside 0..{self.rank - 1}")
        return gs

    @cached_property
    def all_gensets(self) -> list[frozenset[int]]:
        """All subsets of S, ordered by size and then lexicographically."""
        from itertools import combinations

        out = []
        for k in range(self.rank + 1):
            out.extend(frozenset(c) for c in combinations(range(self.rank), k))
        return out

    # -- products -----------------------------------------------------------

    @cached_property
    def mult_table(self) -> np.ndarray:
        """``mult_table[x, y] = x y``."""
        n = self.size
        table = np.empty((n, n), dtype=np.int64)
        table[:, 0] = np.arange(n)
        for y in range(1, n):
            s = self.words[y][-1]
            prev = int(self.right_cayley[y, s])
            table[:, y] = self.right_cayley[table[:, prev], s]
        return table

    @cached_property
    def star_table(self) -> np.ndarray:
        """``star_table[x, y] = x * y`` (Demazure product)."""
        n = self.size
        ext = np.where(self.right_descent, np.arange(n)[:, None], self.right_cayley)
        table = np.empty((n, n), dtype=np.int64)
        table[:, 0] = np.arange(n)
        for y in range(1, n):
            s = self.words[y][-1]
            prev = int(self.right_cayley[y, s])
            table[:, y] = ext[table[:, prev], s]
        return table

    def multiply(self, x, y) -> int:
        x = operator.index(x)
        for s in self.words[operator.index(y)]:
            x = int(self.right_cayley[x, s])
        return x

    def demazure(self, x, y) -> int:
        """Demazure product: fold y's word into x, ``w*s = ws`` if longer else ``w``."""
        x = operator.index(x)
        for s in self.words[operator.index(y)]:
            if not self.right_descent[x, s]:
                x = int(self.right_cayley[x, s])
        return x

    def is_reduced_product(self, x, y) -> bool:
        """``l(xy) = l(x) + l(y)``."""
        x, y = operator.index(x), operator.index(y)
        return int(self.length[self.mult_table[x, y]]) == int(self.length[x] + self.length[y])

    # -- Bruhat order -------------------------------------------------------

    @cached_property
    def leq_table(self) -> np.ndarray:
        """Boolean matrix ``leq_table[x, y] = (x <= y)`` in Bruhat order.

        Column ``y`` is filled from column ``ys`` where ``s`` is the smallest
        right descent of ``y``: ``x <= y`` iff ``xs <= ys`` when ``xs < x`` and
        iff ``x <= ys`` otherwise.  Index order is length order, so ``ys`` is
        always done first.
        """
        n = self.size
        table = np.zeros((n, n), dtype=bool)
        table[0, 0] = True
        x_all = np.arange(n)
        for y in range(1, n):
            s = int(np.flatnonzero(self.right_descent[y])[0])
            ys = int(self.right_cayley[y, s])
            xs = self.right_cayley[:, s]
            down = self.right_descent[:, s]
            table[:, y] = np.where(down, table[xs, ys], table[x_all, ys])
        return table

    def bruhat_leq(self, x, y) -> bool:
        return bool(self.leq_table[operator.index(x), operator.index(y)])

    def bruhat_interval_below(self, y) -> np.ndarray:
        return np.flatnonzero(self.leq_table[:, operator.index(y)])

    # -- parabolic subgroups ------------------------------------------------

    def longest_element(self, gens) -> int:
        """Longest element of the parabolic subgroup, by greedy ascent."""
        key = self.check_genset(gens)
        if key not in self._longest:
            w = 0
            order = sorted(key)
            grown = True
            while grown:
                grown = False
                for s in order:
                    if not self.right_descent[w, s]:
                        w = int(self.right_cayley[w, s])
                        grown = True
                        break
            self._longest[key] = w
        return self._longest[key]

    def genset_length(self, gens) -> int:
        """``l(I) = l(w_I)``."""
        return int(self.length[self.longest_element(gens)])

    def parabolic_elements(self, gens) -> tuple[int, ...]:
        """Elements of ``W_I``, sorted by index."""
        key = self.check_genset(gens)
        if key not in self._parabolic:
            seen = {0}
            queue = deque([0])
            while queue:
                w = queue.popleft()
                for s in key:
                    v = int(self.right_cayley[w, s])
                    if v not in seen:
                        seen.add(v)
                        queue.append(v)
            self._parabolic[key] = tuple(sorted(seen))
        return self._parabolic[key]


def build_group(matrix: CoxeterMatrix, cap: int = DEFAULT_CAP, name: str | None = None) -> CoxeterGroup:
    """Enumerate the group of ``matrix`` breadth-first by length.

    Each element is stored with its full set of reduced words, so a generator
    ``s`` is a right descent exactly when some reduced word ends in ``s``.
    Raises :class:`CapExceeded` if more than ``cap`` elements turn up.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    word_index: dict[Word, int] = {(): 0}
    canonical: list[Word] = [()]
    orbits: list[set[Word]] = [{()}]
    frontier = [0]
    while frontier:
        new_frontier = []
        for x in frontier:
            ends = {u[-1] for u in orbits[x] if u}
            for s in range(matrix.rank):
                if s in ends:
                    continue
                candidate = canonical[x] + (s,)
                if candidate in word_index:
                    continue
                orbit = braid_orbit(candidate, matrix)
                idx = len(canonical)
                if idx >= cap:
                    raise CapExceeded(
                        f"more than {cap} elements; group is infinite or larger than the cap"
                    )
                canonical.append(min(orbit, key=shortlex_key))
                orbits.append(orbit)
                for u in orbit:
                    word_index[u] = idx
                new_frontier.append(idx)
        frontier = new_frontier

    # renumber so that index order is ShortLex order of canonical words
    order = sorted(range(len(canonical)), key=lambda i: shortlex_key(canonical[i]))
    renumber = {old: new for new, old in enumerate(order)}
    words = [canonical[old] for old in order]
    reduced = {u: renumber[i] for u, i in word_index.items()}
    return CoxeterGroup(matrix, words, reduced, cap, name)


def subword_products(group: CoxeterGroup, word: Sequence[int]) -> set[int]:
    """Set of elements expressed by subwords of ``word`` (the subword oracle)."""
    reach = {0}
    for s in word:
        reach |= {int(group.right_cayley[x, s]) for x in reach}
    return reach
