"""Almost reflections, c-compatibility, c-clusters and the map ``cl_c``.

An almost reflection is encoded as an int: a reflection id ``t >= 0``, or
``-1 - s`` for the formal negative ``-s`` of a simple generator.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import networkx as nx

from .elements import format_word
from .errors import IterationCap, NotSortable, SearchExhausted
from .root_system import CoxeterSystem
from .sorting import CoxeterElement, bipartite_path, is_sortable, prefix_reflections, sorting_word


def negative(s: int) -> int:
    return -1 - s


def is_negative(t: int) -> bool:
    return t < 0


def simple_of(t: int) -> int:
    """The simple generator ``s`` of a formal negative ``-s``."""
    return -1 - t


def almost_reflections(system: CoxeterSystem, J: Iterable[int] | None = None) -> list[int]:
    """``(T_J)_{>=-1}``: formal negatives first, then reflections by id."""
    J = frozenset(range(system.rank) if J is None else J)
    negs = [negative(s) for s in sorted(J)]
    return negs + sorted(system.reflections_in(J))


def format_almost(system: CoxeterSystem, t: int) -> str:
    if is_negative(t):
        return f"-s{simple_of(t)}"
    return format_word(system.reflection(t).reduced_word())


def sort_key(t: int) -> tuple[int, int]:
    return (0, simple_of(t)) if is_negative(t) else (1, t)


def sigma(system: CoxeterSystem, s: int, t: int) -> int:
    """The involution ``sigma_s`` of ``T_{>=-1}``."""
    if t == s:
        return negative(s)
    if t == negative(s):
        return s
    if is_negative(t):
        return t
    return system.reflection_tables[s][t]


def _in_complement(system: CoxeterSystem, s: int, t: int) -> bool:
    """Whether ``t`` lies in ``(T_<s>)_{>=-1}`` for ``<s> = S - {s}``."""
    if is_negative(t):
        return simple_of(t) != s
    return s not in system.root_support[t]


def mu(t: int, c: CoxeterElement) -> int:
    """Least ``k`` with a sequence ``s_0 .. s_k`` of initial letters ending at ``t_k = -s_k``."""
    system = c.system
    start = (t, c)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cur, cc = queue.popleft()
        d = dist[(cur, cc)]
        for s in sorted(cc.initial_letters()):
            if cur == negative(s):
                return d
        for s in sorted(cc.initial_letters()):
            nxt = (sigma(system, s, cur), cc.conjugate(s))
            if nxt not in dist:
                dist[nxt] = d + 1
                queue.append(nxt)
    raise SearchExhausted(f"no sequence reaches a formal negative from {format_almost(system, t)}")


def _letter_stream(c: CoxeterElement):
    """Initial letters to conjugate by: a path to a bipartite element, then its two halves in turn."""
    yield from bipartite_path(c)
    b = c
    for s in bipartite_path(c):
        b = b.conjugate(s)
    while True:
        sources = sorted(b.initial_letters())
        yield from sources
        for s in sources:
            b = b.conjugate(s)


_memo: dict[tuple[CoxeterElement, int, int], bool] = {}


def compatible(t1: int, t2: int, c: CoxeterElement) -> bool:
    """The c-compatibility relation on distinct elements of ``(T_J)_{>=-1}``.

    ``J`` is the support of ``c``.  Rule (i) settles any pair containing a
    formal negative; otherwise both arguments are moved by ``sigma_s`` along
    a stream of initial letters until one becomes negative.
    """
    if t1 == t2:
        raise ValueError("compatibility is only defined for distinct elements")
    system = c.system
    a, b = sorted((t1, t2))
    key = (c, a, b)
    if key in _memo:
        return _memo[key]
    h = c.coxeter_number
    cap = 4 * h * max(len(c.support), 1)
    visited = []
    cc = c
    result = None
    for step, s in enumerate(_letter_stream(c)):
        if (cc, a, b) in _memo:
            result = _memo[(cc, a, b)]
            break
        visited.append((cc, a, b))
        if is_negative(a) or is_negative(b):
            neg, other = (a, b) if is_negative(a) else (b, a)
            result = _in_complement(system, simple_of(neg), other)
            break
        if step >= cap:
            raise IterationCap(f"no formal negative after {cap} conjugations")
        a, b = sorted((sigma(system, s, a), sigma(system, s, b)))
        cc = cc.conjugate(s)
    for k in visited:
        _memo[k] = result
    return result


def clear_cache() -> None:
    _memo.clear()


@dataclass(frozen=True)
class Cluster:
    members: tuple[int, ...]

    @property
    def positive(self) -> bool:
        return not any(is_negative(t) for t in self.members)

    def __len__(self) -> int:
        return len(self.members)

    @classmethod
    def of(cls, members: Iterable[int]) -> "Cluster":
        return cls(tuple(sorted(set(members), key=sort_key)))

    def format(self, system: CoxeterSystem) -> list[str]:
        return [format_almost(system, t) for t in self.members]


@lru_cache(maxsize=256)
def compatibility_graph(c: CoxeterElement) -> nx.Graph:
    nodes = almost_reflections(c.system, c.support)
    g = nx.Graph()
    g.add_nodes_from(nodes)
    for i, t1 in enumerate(nodes):
        for t2 in nodes[i + 1:]:
            if compatible(t1, t2, c):
                g.add_edge(t1, t2)
    return g


@lru_cache(maxsize=256)
def enumerate_clusters(c: CoxeterElement) -> tuple[Cluster, ...]:
    """Maximal c-compatible subsets, sorted."""
    g = compatibility_graph(c)
    clusters = [Cluster.of(q) for q in nx.find_cliques(g)]
    return tuple(sorted(clusters, key=lambda k: [sort_key(t) for t in k.members]))


def cl_map(w, c: CoxeterElement) -> Cluster:
    """Last reflection for each simple generator, or ``-s`` if it never occurs."""
    if not is_sortable(w, c):
        raise NotSortable(f"{format_word(w.reduced_word())} is not c-sortable")
    return Cluster.of(_last_reflections(w, c).values())


def _last_reflections(w, c: CoxeterElement) -> dict[int, int]:
    word = sorting_word(w, c).letters
    refl = prefix_reflections(c.system, word)
    last = {s: negative(s) for s in c.support}
    for a, t in zip(word, refl):
        last[a] = t
    return last
