"""Group elements as signed permutations of the root system.

An :class:`Element` stores ``perm``, the image of every signed root index
(``0..N-1`` positive, ``N..2N-1`` negative).  Equality and hashing go through
``perm``, never through words.

Conventions: descents are right descents (``l(ws) < l(w)``), inversions are
left inversions (``l(tw) < l(w)``).
"""

from __future__ import annotations

from functools import cached_property
from typing import TYPE_CHECKING, Iterable

from .errors import SystemMismatch

if TYPE_CHECKING:
    from .root_system import CoxeterSystem


class Element:
    def __init__(self, system: "CoxeterSystem", perm: tuple[int, ...]):
        self.system = system
        self.perm = perm

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.system is other.system and self.perm == other.perm

    def __hash__(self) -> int:
        return hash(self.perm)

    def __repr__(self) -> str:
        return f"Element({format_word(self.reduced_word())})"

    def __mul__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        if other.system is not self.system:
            raise SystemMismatch("elements belong to different Coxeter systems")
        a, b = self.perm, other.perm
        return Element(self.system, tuple(a[x] for x in b))

    # -- basic data --------------------------------------------------------

    @cached_property
    def length(self) -> int:
        N = self.system.num_reflections
        return sum(1 for x in self.perm[:N] if x >= N)

    @cached_property
    def inverse(self) -> "Element":
        inv = [0] * len(self.perm)
        for i, x in enumerate(self.perm):
            inv[x] = i
        return Element(self.system, tuple(inv))

    def is_identity(self) -> bool:
        return self.length == 0

    def apply(self, r: int) -> int:
        """Image of signed root index ``r``."""
        return self.perm[r]

    def right_multiply(self, s: int) -> "Element":
        """``w s`` for a simple generator ``s``."""
        tab = self.system.reflection_tables[s]
        p = self.perm
        return Element(self.system, tuple(p[x] for x in tab))

    def left_multiply(self, s: int) -> "Element":
        """``s w`` for a simple generator ``s``."""
        tab = self.system.reflection_tables[s]
        return Element(self.system, tuple(tab[x] for x in self.perm))

    def conjugate(self, s: int) -> "Element":
        """``s w s``."""
        return self.left_multiply(s).right_multiply(s)

    def has_right_descent(self, s: int) -> bool:
        return self.perm[s] >= self.system.num_reflections

    def has_left_descent(self, s: int) -> bool:
        return self.inverse.perm[s] >= self.system.num_reflections

    # -- inversions, descents, cover reflections ---------------------------

    def inversion_set(self) -> frozenset[int]:
        """Reflections ``t`` with ``l(tw) < l(w)``, i.e. ``w^{-1}(alpha_t) < 0``."""
        N = self.system.num_reflections
        inv = self.inverse.perm
        return frozenset(t for t in range(N) if inv[t] >= N)

    def descents(self) -> frozenset[int]:
        return frozenset(s for s in range(self.system.rank) if self.has_right_descent(s))

    def left_descents(self) -> frozenset[int]:
        return frozenset(s for s in range(self.system.rank) if self.has_left_descent(s))

    def cover_reflections(self) -> frozenset[int]:
        """``{w s w^{-1} : s a descent}``; the root of ``w s w^{-1}`` is ``-w(alpha_s)``."""
        N = self.system.num_reflections
        return frozenset(self.perm[s] - N for s in self.descents())

    def reduced_word(self) -> tuple[int, ...]:
        """Lexicographically first reduced word: peel off the smallest left descent."""
        letters = []
        w = self
        while w.length:
            s = min(w.left_descents())
            letters.append(s)
            w = w.left_multiply(s)
        return tuple(letters)

    def support(self) -> frozenset[int]:
        return frozenset(self.reduced_word())

    def has_full_support(self) -> bool:
        return len(self.support()) == self.system.rank

    def in_standard_parabolic(self, J: Iterable[int]) -> bool:
        """Whether ``w`` lies in ``W_J``, tested as ``I(w)`` inside ``T_J``."""
        J = frozenset(J)
        supports = self.system.root_support
        return all(supports[t] <= J for t in self.inversion_set())

    def is_reflection(self) -> bool:
        return self.system.reflection_id(self) is not None


def multiply(a: Element, b: Element) -> Element:
    return a * b


def format_word(word: Iterable[int]) -> str:
    """``(0, 1, 0)`` -> ``"s0s1s0"``; the empty word is ``"1"``."""
    word = tuple(word)
    return "".join(f"s{s}" for s in word) if word else "1"
