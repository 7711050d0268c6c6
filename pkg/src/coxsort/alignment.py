"""The c-orientation of rank-two parabolic subgroups and c-aligned elements."""

from __future__ import annotations

from functools import lru_cache

from .elements import Element
from .errors import Reducible
from .root_system import RankTwoParabolic
from .sorting import CoxeterElement, prefix_reflections, sorting_word


@lru_cache(maxsize=256)
def reflection_order(c: CoxeterElement) -> tuple[int, ...]:
    """Reflections of ``W_J`` ordered by the prefixes of the c-sorting word of ``w0``."""
    system = c.system
    w0 = system.longest_element(c.support)
    return tuple(prefix_reflections(system, sorting_word(w0, c).letters))


@lru_cache(maxsize=256)
def _positions(c: CoxeterElement) -> dict[int, int]:
    return {t: i for i, t in enumerate(reflection_order(c))}


@lru_cache(maxsize=256)
def parabolics_of(c: CoxeterElement) -> tuple[RankTwoParabolic, ...]:
    """Irreducible rank-two parabolics contained in ``W_J`` for ``J`` the support of ``c``."""
    T_J = c.system.reflections_in(c.support)
    return tuple(p for p in c.system.irreducible_rank_two_parabolics if p.reflections <= T_J)


def orient(c: CoxeterElement, parabolic: RankTwoParabolic) -> tuple[int, int]:
    """The c-oriented edge ``(t1, t2)`` between the canonical generators."""
    if not parabolic.irreducible:
        raise Reducible("canonical generators commute")
    pos = _positions(c)
    a, b = parabolic.generators
    if a not in pos or b not in pos:
        raise ValueError("parabolic is not inside the parabolic subgroup of c")
    return (a, b) if pos[a] < pos[b] else (b, a)


def orientation_cycle(c: CoxeterElement, parabolic: RankTwoParabolic) -> list[tuple[int, int]]:
    """All directed edges of the c-orientation on the reflections of ``parabolic``.

    Adjacent reflections are consecutive terms of the chain plus the pair of
    canonical generators; the edges form one directed cycle.
    """
    chain = list(parabolic.chain)
    first, _ = orient(c, parabolic)
    if first != chain[0]:
        chain.reverse()
    # chain[0] -> chain[-1] -> chain[-2] -> ... -> chain[1] -> chain[0]
    cycle = [chain[0]] + chain[:0:-1]
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


@lru_cache(maxsize=256)
def _alignment_tests(c: CoxeterElement) -> tuple[tuple[int, int, int, RankTwoParabolic], ...]:
    tables = c.system.reflection_tables
    out = []
    for par in parabolics_of(c):
        t1, t2 = orient(c, par)
        out.append((t1, t2, tables[t2][t1], par))
    return tuple(out)


def alignment_violation(w: Element, c: CoxeterElement) -> RankTwoParabolic | None:
    """First parabolic ``W'`` with ``t2 t1 t2`` an inversion of ``w`` but ``t1`` not."""
    inv = w.inversion_set()
    for t1, _, flip, par in _alignment_tests(c):
        if flip in inv and t1 not in inv:
            return par
    return None


def is_aligned(w: Element, c: CoxeterElement) -> bool:
    """Whether ``w`` is c-aligned.  Elements outside ``W_J`` are not."""
    if c.support != frozenset(range(c.system.rank)) and not w.in_standard_parabolic(c.support):
        return False
    return alignment_violation(w, c) is None


def is_aligned_dyer(w: Element, c: CoxeterElement) -> bool:
    """Second formulation: ``I(w)`` meeting ``W' - {t2}`` forces ``t1`` into ``I(w)``."""
    if c.support != frozenset(range(c.system.rank)) and not w.in_standard_parabolic(c.support):
        return False
    inv = w.inversion_set()
    for t1, t2, _, par in _alignment_tests(c):
        if t1 not in inv and (inv & (par.reflections - {t2})):
            return False
    return True
