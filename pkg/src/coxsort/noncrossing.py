"""Absolute order, the noncrossing partitions ``[1,c]_T`` and the map ``nc_c``."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .elements import Element, format_word
from .errors import BijectionViolation, NotNoncrossing, NotSortable
from .sorting import CoxeterElement, is_sortable, prefix_reflections, sortable_elements, sorting_word

TOL = 1e-8


@dataclass(frozen=True)
class TWord:
    """A word in the alphabet of reflections (reflection ids)."""

    letters: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def product(self, system) -> Element:
        w = system.identity
        for t in self.letters:
            w = w * system.reflection(t)
        return w

    def is_reduced(self, system) -> bool:
        return len(self.letters) == absolute_length(self.product(system))


@dataclass(frozen=True)
class NCPartition:
    element: Element
    rank: int
    canonical_generators: tuple[int, ...]


def _moved(w: Element) -> np.ndarray:
    return w.system.matrix_of(w) - np.eye(w.system.rank)


@lru_cache(maxsize=None)
def absolute_length(w: Element) -> int:
    """Codimension of the fixed space of ``w`` in the reflection representation."""
    if w.is_identity():
        return 0
    return int(np.linalg.matrix_rank(_moved(w), tol=TOL))


def fixed_space(w: Element) -> np.ndarray:
    """Orthonormal basis (columns, simple-root coordinates) of the space fixed by ``w``."""
    M = _moved(w)
    _, sv, vt = np.linalg.svd(M)
    rank = int((sv > TOL).sum())
    return vt[rank:].T


def fixed_space_contains(x: Element, y: Element) -> bool:
    """Whether ``U_x`` contains ``U_y``."""
    basis = fixed_space(y)
    if basis.shape[1] == 0:
        return True
    return bool(np.abs(_moved(x) @ basis).max() < 1e-6)


def le_T(x: Element, y: Element) -> bool:
    """Absolute order, via additivity of absolute length."""
    return absolute_length(x) + absolute_length(x.inverse * y) == absolute_length(y)


def parabolic_reflections(x: Element) -> frozenset[int]:
    """Reflections ``t`` whose hyperplane contains the fixed space of ``x``.

    ``U_t`` contains ``U_x`` exactly when the root of ``t`` lies in the image
    of ``x - 1``, the orthogonal complement of ``U_x``.
    """
    system = x.system
    M = _moved(x)
    r = absolute_length(x)
    out = []
    for t in range(system.num_reflections):
        aug = np.column_stack([M, system.root(t)])
        if np.linalg.matrix_rank(aug, tol=TOL) == r:
            out.append(t)
    return frozenset(out)


def canonical_generators(x: Element) -> tuple[int, ...]:
    """Canonical generators of the parabolic subgroup attached to ``x``."""
    return x.system.simple_within(parabolic_reflections(x))


@lru_cache(maxsize=256)
def nc_interval(c: CoxeterElement) -> tuple[NCPartition, ...]:
    """Every ``x <=_T c``, grown breadth first by rank, with rank and canonical generators."""
    system = c.system
    target = c.element
    refls = [system.reflection(t) for t in range(system.num_reflections)]
    seen = {system.identity}
    order = [system.identity]
    queue = deque(order)
    while queue:
        x = queue.popleft()
        r = absolute_length(x)
        for t in refls:
            y = x * t
            if y in seen or absolute_length(y) != r + 1 or not le_T(y, target):
                continue
            seen.add(y)
            order.append(y)
            queue.append(y)
    return tuple(NCPartition(x, absolute_length(x), canonical_generators(x)) for x in order)


def _cover_sequence(w: Element, c: CoxeterElement) -> tuple[int, ...]:
    covers = w.cover_reflections()
    word = sorting_word(w, c).letters
    return tuple(t for t in prefix_reflections(c.system, word) if t in covers)


def nc_map(w: Element, c: CoxeterElement) -> Element:
    """Product of the cover reflections of ``w`` in the order given by its c-sorting word."""
    if not is_sortable(w, c):
        raise NotSortable(f"{format_word(w.reduced_word())} is not c-sortable")
    return TWord(_cover_sequence(w, c)).product(c.system)


@lru_cache(maxsize=256)
def _inverse_table(c: CoxeterElement) -> dict[Element, Element]:
    table: dict[Element, Element] = {}
    for w in sortable_elements(c):
        x = nc_map(w, c)
        if x in table:
            raise BijectionViolation(
                f"nc map is not injective: {table[x]!r} and {w!r} both give {x!r}"
            )
        table[x] = w
    interval = {p.element for p in nc_interval(c)}
    if set(table) != interval:
        raise BijectionViolation("image of the nc map differs from the noncrossing partitions")
    return table


def nc_inverse(x: Element, c: CoxeterElement) -> Element:
    """The c-sortable element mapping to ``x``."""
    if not le_T(x, c.element):
        raise NotNoncrossing(f"{x!r} is not below c in absolute order")
    return _inverse_table(c)[x]


def canonical_T_word(x: Element, c: CoxeterElement) -> TWord:
    """Cover reflections of the preimage of ``x``, in c-sorting-word order."""
    return TWord(_cover_sequence(nc_inverse(x, c), c))
