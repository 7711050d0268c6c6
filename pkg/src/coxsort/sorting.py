"""Coxeter elements, c-sorting words and c-sortable elements."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

from .elements import Element, format_word
from .errors import NotInParabolic, NotInitial
from .root_system import CoxeterSystem


def _linear_extension(letters: frozenset[int], edges: frozenset[tuple[int, int]]) -> tuple[int, ...]:
    """Lexicographically smallest word compatible with the orientation."""
    indeg = {s: 0 for s in letters}
    for _, b in edges:
        indeg[b] += 1
    word = []
    ready = sorted(s for s in letters if indeg[s] == 0)
    while ready:
        s = ready.pop(0)
        word.append(s)
        for a, b in edges:
            if a == s:
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
        ready.sort()
    if len(word) != len(letters):
        raise ValueError("orientation has a directed cycle")
    return tuple(word)


class CoxeterElement:
    """A Coxeter element of a standard parabolic subgroup ``W_J``.

    Built from any word that uses each letter of ``J`` exactly once.  Two
    Coxeter elements are equal when they induce the same orientation of the
    diagram; ``word`` is the lexicographically smallest representative.
    ``J`` defaults to all of ``S``.
    """

    def __init__(self, system: CoxeterSystem, word: Iterable[int]):
        word = tuple(int(s) for s in word)
        support = frozenset(word)
        if len(support) != len(word):
            raise ValueError(f"word {word} repeats a letter")
        if any(not 0 <= s < system.rank for s in word):
            raise ValueError(f"word {word} has letters outside 0..{system.rank - 1}")
        self.system = system
        self.support = support
        self.edges = frozenset(
            (a, b)
            for i, a in enumerate(word)
            for b in word[i + 1:]
            if system.matrix[a][b] != 2
        )
        self.word = _linear_extension(support, self.edges)

    @classmethod
    def standard(cls, system: CoxeterSystem) -> "CoxeterElement":
        return cls(system, range(system.rank))

    @classmethod
    def from_orientation(cls, system, support, edges) -> "CoxeterElement":
        return cls(system, _linear_extension(frozenset(support), frozenset(edges)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoxeterElement):
            return NotImplemented
        return (
            self.system is other.system
            and self.support == other.support
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((id(self.system), self.support, self.edges))

    def __repr__(self) -> str:
        return f"CoxeterElement({format_word(self.word)})"

    @property
    def is_full(self) -> bool:
        return len(self.support) == self.system.rank

    @cached_property
    def element(self) -> Element:
        return self.system.element(self.word)

    @cached_property
    def coxeter_number(self) -> int:
        """Multiplicative order of the element."""
        w, k = self.element, 1
        while not w.is_identity():
            w = w * self.element
            k += 1
        return k

    def initial_letters(self) -> frozenset[int]:
        targets = {b for _, b in self.edges}
        return frozenset(s for s in self.support if s not in targets)

    def final_letters(self) -> frozenset[int]:
        sources = {a for a, _ in self.edges}
        return frozenset(s for s in self.support if s not in sources)

    def conjugate(self, s: int) -> "CoxeterElement":
        """``s c s`` for an initial letter ``s``; ``s`` is final in the result."""
        if s not in self.initial_letters():
            raise NotInitial(f"s{s} is not initial in {format_word(self.word)}")
        return CoxeterElement(self.system, [a for a in self.word if a != s] + [s])

    def conjugate_final(self, s: int) -> "CoxeterElement":
        """``s c s`` for a final letter ``s``; ``s`` is initial in the result."""
        if s not in self.final_letters():
            raise NotInitial(f"s{s} is not final in {format_word(self.word)}")
        return CoxeterElement(self.system, [s] + [a for a in self.word if a != s])

    def restrict(self, J: Iterable[int]) -> "CoxeterElement":
        """Delete the letters outside ``J``."""
        J = frozenset(J)
        return CoxeterElement(self.system, [a for a in self.word if a in J])

    def without(self, s: int) -> "CoxeterElement":
        """``sc`` for an initial letter (or ``cs`` for a final one): restriction to ``S - {s}``."""
        return self.restrict(self.support - {s})

    def inverse(self) -> "CoxeterElement":
        return CoxeterElement(self.system, reversed(self.word))

    def is_bipartite(self) -> bool:
        init, fin = self.initial_letters(), self.final_letters()
        return all(s in init or s in fin for s in self.support)


def all_coxeter_elements(system: CoxeterSystem, J: Iterable[int] | None = None) -> list[CoxeterElement]:
    """Every Coxeter element of ``W_J``, one per orientation of the diagram."""
    J = frozenset(range(system.rank) if J is None else J)
    diagram = [(a, b) for a, b in system.edges if a in J and b in J]
    out = []
    for choice in itertools.product((False, True), repeat=len(diagram)):
        edges = frozenset((b, a) if flip else (a, b) for (a, b), flip in zip(diagram, choice))
        out.append(CoxeterElement.from_orientation(system, J, edges))
    return out


# --------------------------------------------------------------------------
# Sorting words


@dataclass(frozen=True)
class SortingWord:
    """A c-sorting word cut into blocks at the dividers of ``c^infinity``."""

    blocks: tuple[tuple[int, ...], ...]
    positions: tuple[int, ...]

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.blocks))

    @property
    def block_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.positions)

    def __str__(self) -> str:
        if not self.blocks:
            return "1"
        return "|".join(format_word(b) for b in self.blocks)


def sorting_word(w: Element, c: CoxeterElement) -> SortingWord:
    """The c-sorting word of ``w``.

    Scans ``c^infinity`` and takes every letter that is a left descent of what
    is left of ``w``.  Raises :class:`NotInParabolic` if ``w`` is not in the
    parabolic subgroup generated by the letters of ``c``.
    """
    if w.system is not c.system:
        raise ValueError("element and Coxeter element live in different systems")
    system = c.system
    N = system.num_reflections
    tables = system.reflection_tables
    u = w.inverse.perm
    remaining = w.length
    blocks, positions = [], []
    n = len(c.word)
    pass_no = 0
    while remaining:
        block = []
        for i, s in enumerate(c.word):
            if u[s] >= N:
                block.append(s)
                positions.append(pass_no * n + i)
                tab = tables[s]
                u = tuple(u[x] for x in tab)
                remaining -= 1
        if not block:
            raise NotInParabolic(f"{w!r} is not in the parabolic generated by {sorted(c.support)}")
        blocks.append(tuple(block))
        pass_no += 1
    return SortingWord(tuple(blocks), tuple(positions))


def _decreasing(block_sets) -> bool:
    return all(b <= a for a, b in zip(block_sets, block_sets[1:]))


def is_sortable(w: Element, c: CoxeterElement) -> bool:
    """Whether the blocks of the c-sorting word of ``w`` are weakly decreasing."""
    try:
        sw = sorting_word(w, c)
    except NotInParabolic:
        return False
    return _decreasing(sw.block_sets)


def enumerate_sortables(c: CoxeterElement) -> Iterator[Element]:
    """Depth-first walk of the search tree of c-sortable elements.

    Children of ``v`` are the elements ``vs`` whose c-sorting word is that of
    ``v`` with ``s`` appended; they are visited in increasing order of ``s``.
    """
    root = c.system.identity
    stack = [(root, ())]
    letters = sorted(c.support)
    while stack:
        v, word = stack.pop()
        yield v
        children = []
        for s in letters:
            if v.has_right_descent(s):
                continue
            child = v.right_multiply(s)
            sw = sorting_word(child, c)
            if sw.letters == word + (s,) and _decreasing(sw.block_sets):
                children.append((child, sw.letters))
        stack.extend(reversed(children))


@lru_cache(maxsize=256)
def sortable_elements(c: CoxeterElement) -> tuple[Element, ...]:
    """All c-sortable elements, in search-tree order (cached)."""
    return tuple(enumerate_sortables(c))


def prefix_reflections(system: CoxeterSystem, word: Iterable[int]) -> list[int]:
    """Reflection ids ``a1 ... a_{j-1} a_j a_{j-1} ... a1`` for ``j = 1..len(word)``."""
    out = []
    p = system.identity
    for a in word:
        out.append(p.perm[a])
        p = p.right_multiply(a)
    return out


def bipartite_path(c: CoxeterElement) -> list[int]:
    """Shortest sequence of initial letters conjugating ``c`` to a bipartite element.

    Breadth-first over orientations; ties are broken by letter index, so the
    result is deterministic.  Empty when ``c`` is already bipartite.
    """
    if c.is_bipartite():
        return []
    parent: dict[CoxeterElement, tuple[CoxeterElement, int] | None] = {c: None}
    queue = deque([c])
    while queue:
        cur = queue.popleft()
        for s in sorted(cur.initial_letters()):
            nxt = cur.conjugate(s)
            if nxt in parent:
                continue
            parent[nxt] = (cur, s)
            if nxt.is_bipartite():
                path = []
                node = nxt
                while parent[node] is not None:
                    node, letter = parent[node]
                    path.append(letter)
                return path[::-1]
            queue.append(nxt)
    raise AssertionError("no bipartite Coxeter element reachable")


def apply_path(c: CoxeterElement, letters: Iterable[int]) -> CoxeterElement:
    for s in letters:
        c = c.conjugate(s)
    return c
