"""Permutation models of types A, B and D, barrings, and the pattern conditions.

Index conventions.  Simple generators are numbered from 0 internally.  Type
A_n is realized on ``[n+1]`` with internal generator ``i`` acting as the
transposition ``(i+1 i+2)``, so the usual ``s_1, ..., s_n`` are shifted down
by one; this module is the only place that shift happens.  Types B_n and D_n
keep the usual numbering: ``s0 = (-1 1)`` in B and ``s0 = (-2 1)(-1 2)`` in D,
``s_i = (i i+1)(-i-1 -i)`` otherwise.

One-line notation: type A stores ``pi(1) ... pi(n+1)``; types B and D store
the long one-line notation ``pi(-n) ... pi(-1) pi(1) ... pi(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

from .elements import Element
from .errors import KindMismatch
from .root_system import CoxeterSystem
from .sorting import CoxeterElement

KINDS = ("A", "B", "D")


def _check_kind(system: CoxeterSystem, kind: str) -> int:
    if kind not in KINDS:
        raise KindMismatch(f"unknown kind {kind!r}")
    ct = system.cartan_type
    if ct is None or ct[0] != kind:
        raise KindMismatch(f"{system.label} was not built as type {kind}")
    return ct[1]


def generator_map(kind: str, n: int, s: int) -> Callable[[int], int]:
    """The simple generator ``s`` as a map on ``[n+1]`` (A) or ``+-[n]`` (B, D)."""
    if kind == "A":
        a, b = s + 1, s + 2
    elif s == 0 and kind == "B":
        return lambda x: -x if abs(x) == 1 else x
    elif s == 0 and kind == "D":
        swap = {1: -2, -2: 1, -1: 2, 2: -1}
        return lambda x: swap.get(x, x)
    else:
        a, b = s, s + 1

    def move(x: int) -> int:
        sign = -1 if x < 0 else 1
        y = abs(x)
        if y == a:
            return sign * b
        if y == b:
            return sign * a
        return x

    return move


# --------------------------------------------------------------------------
# One-line notation


@dataclass(frozen=True)
class OneLine:
    kind: str
    entries: tuple[int, ...]

    @property
    def n(self) -> int:
        """Rank of the group."""
        return len(self.entries) - 1 if self.kind == "A" else len(self.entries) // 2

    def __call__(self, i: int) -> int:
        """``pi(i)``."""
        if self.kind == "A":
            return self.entries[i - 1]
        n = self.n
        return self.entries[n + i - 1] if i > 0 else self.entries[n + i]

    def __str__(self) -> str:
        return " ".join(f"({x})" if x < 0 else str(x) for x in self.entries)

    @classmethod
    def from_map(cls, kind: str, n: int, pi: Callable[[int], int]) -> "OneLine":
        if kind == "A":
            return cls(kind, tuple(pi(i) for i in range(1, n + 2)))
        return cls(kind, tuple(pi(i) for i in list(range(-n, 0)) + list(range(1, n + 1))))

    def descents(self) -> frozenset[int]:
        """Descents read off the one-line notation (internal generator indices)."""
        n, pi = self.n, self
        if self.kind == "A":
            return frozenset(i for i in range(n) if pi(i + 1) > pi(i + 2))
        out = {i for i in range(1, n) if pi(i) > pi(i + 1)}
        if self.kind == "B" and pi(-1) > pi(1):
            out.add(0)
        if self.kind == "D" and pi(-1) > pi(2):
            out.add(0)
        return frozenset(out)


def to_one_line(w: Element, kind: str) -> OneLine:
    n = _check_kind(w.system, kind)
    gens = [generator_map(kind, n, s) for s in range(n)]
    domain = range(1, n + 2) if kind == "A" else [i for i in range(-n, n + 1) if i]
    values = {i: i for i in domain}
    # pi = s_{a1} o ... o s_{ak}; right-multiplying by s precomposes
    for a in w.reduced_word():
        g = gens[a]
        values = {i: values[g(i)] for i in domain}
    return OneLine.from_map(kind, n, values.__getitem__)


def from_one_line(p: OneLine | Sequence[int], system: CoxeterSystem, kind: str | None = None) -> Element:
    """Element of ``system`` with the given one-line notation."""
    if not isinstance(p, OneLine):
        if kind is None:
            raise KindMismatch("kind is required for a bare sequence")
        p = OneLine(kind, tuple(p))
    n = _check_kind(system, p.kind)
    _validate(p, n)
    gens = [generator_map(p.kind, n, s) for s in range(n)]
    domain = range(1, n + 2) if p.kind == "A" else [i for i in range(-n, n + 1) if i]
    values = {i: p(i) for i in domain}
    letters = []
    cur = OneLine.from_map(p.kind, n, values.__getitem__)
    while True:
        desc = cur.descents()
        if not desc:
            break
        s = min(desc)
        g = gens[s]
        values = {i: values[g(i)] for i in domain}
        letters.append(s)
        cur = OneLine.from_map(p.kind, n, values.__getitem__)
    return system.element(reversed(letters))


def _validate(p: OneLine, n: int) -> None:
    e = p.entries
    if p.kind == "A":
        if sorted(e) != list(range(1, n + 2)):
            raise ValueError(f"{e} is not a permutation of [{n + 1}]")
        return
    if len(e) != 2 * n or sorted(abs(x) for x in e) != sorted(list(range(1, n + 1)) * 2):
        raise ValueError(f"{e} is not a long one-line notation on +-[{n}]")
    if any(p(-i) != -p(i) for i in range(1, n + 1)):
        raise ValueError(f"{e} is not a signed permutation")
    if p.kind == "D" and sum(1 for i in range(1, n + 1) if p(i) < 0) % 2:
        raise ValueError(f"{e} is not even-signed")


# --------------------------------------------------------------------------
# Barrings


@dataclass(frozen=True)
class Barring:
    """Upper- and lower-barred integers (negatives included for B and D).

    In type D, ``n`` and ``-n`` are both upper- and lower-barred, and the two
    central elements are neither.
    """

    kind: str
    upper: frozenset[int]
    lower: frozenset[int]
    central: frozenset[int] = frozenset()
    symmetric: bool | None = None

    def is_upper(self, x: int) -> bool:
        return x in self.upper

    def is_lower(self, x: int) -> bool:
        return x in self.lower

    def is_central(self, x: int) -> bool:
        return x in self.central


def barring(c: CoxeterElement, kind: str) -> Barring:
    """The barring encoding the diagram orientation of ``c``."""
    n = _check_kind(c.system, kind)
    if not c.is_full:
        raise ValueError("barrings are defined for Coxeter elements of the whole group")
    E = c.edges
    upper, lower = set(), set()

    def bar(i: int, up: bool) -> None:
        (upper if up else lower).add(i)
        if kind != "A":
            (lower if up else upper).add(-i)

    if kind == "A":
        # paper index i in [2, n] is the edge s_{i-1} -- s_i, internal (i-2, i-1)
        for i in range(2, n + 1):
            bar(i, (i - 1, i - 2) in E)
        return Barring(kind, frozenset(upper), frozenset(lower))
    if kind == "B":
        for i in range(1, n):
            bar(i, (i, i - 1) in E)
        return Barring(kind, frozenset(upper), frozenset(lower))
    for i in range(3, n):
        bar(i, (i, i - 1) in E)
    symmetric = ((0, 2) in E) == ((1, 2) in E)
    if symmetric:
        bar(2, (2, 0) in E)
        central = {1, -1}
    else:
        bar(1, (2, 0) in E)
        central = {2, -2}
    upper |= {n, -n}
    lower |= {n, -n}
    return Barring(kind, frozenset(upper), frozenset(lower), frozenset(central), symmetric)


def coxeter_cycles(c: CoxeterElement, kind: str) -> list[tuple[int, ...]]:
    """Cycle form of ``c`` predicted from its barring.

    Type A: ``(1 d_1 .. d_l n+1 u_k .. u_1)``; types B and D: ``(-n d .. n u ..)``,
    plus the short cycle of the central elements in type D.  Here ``d`` and
    ``u`` are the lower- and upper-barred elements in increasing order.
    """
    n = _check_kind(c.system, kind)
    b = barring(c, kind)
    if kind == "A":
        low = sorted(x for x in b.lower if 2 <= x <= n)
        up = sorted(x for x in b.upper if 2 <= x <= n)
        return [(1, *low, n + 1, *reversed(up))]
    low = sorted(x for x in b.lower if abs(x) < n)
    up = sorted(x for x in b.upper if abs(x) < n)
    cycles = [(-n, *low, n, *reversed(up))]
    if kind == "D":
        a = min(b.central, key=abs)
        cycles.append((-abs(a), abs(a)))
    return cycles


def cycles_of(p: OneLine) -> list[tuple[int, ...]]:
    """Nontrivial cycles of a one-line permutation, each starting at its smallest entry."""
    domain = range(1, p.n + 2) if p.kind == "A" else [i for i in range(-p.n, p.n + 1) if i]
    seen, out = set(), []
    for start in domain:
        if start in seen:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = p(x)
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def normalize_cycle(cyc: Sequence[int]) -> tuple[int, ...]:
    k = cyc.index(min(cyc))
    return tuple(cyc[k:]) + tuple(cyc[:k])


# --------------------------------------------------------------------------
# Pattern conditions


Pattern = Callable[[int, int, int], bool]


def _find(entries: Sequence[int], pattern: Pattern, mirrored: bool = False) -> tuple[int, int, int] | None:
    """First subsequence ``x y z`` matching ``pattern``.

    With ``mirrored`` the pattern is tested on ``-z -y -x``, the image of the
    subsequence under the symmetry of a long one-line notation.
    """
    for x, y, z in combinations(entries, 3):
        if mirrored:
            if pattern(-z, -y, -x):
                return (x, y, z)
        elif pattern(x, y, z):
            return (x, y, z)
    return None


def _distinct_abs(a: int, b: int, c: int) -> bool:
    return len({abs(a), abs(b), abs(c)}) == 3


def _patterns(kind: str, b: Barring) -> dict[str, Pattern]:
    up, low, cen = b.is_upper, b.is_lower, b.is_central
    if kind == "A":
        return {
            "A1": lambda j, k, i: i < j < k and up(j),
            "A2": lambda k, i, j: i < j < k and low(j),
        }
    if kind == "B":
        return {"B": lambda j, k, i: i < j < k and up(j)}
    return {
        "D1": lambda j, k, i: i < j < k and _distinct_abs(i, j, k) and up(j),
        "D2": lambda j, k, i: i < j < k and _distinct_abs(i, j, k) and cen(j) and low(k) and low(i),
        "D3": lambda j, k, i: -k < i < j < k and _distinct_abs(i, j, k) and cen(j) and up(k) and low(i),
        "D4": lambda j, k, i: i < j < k < -i and _distinct_abs(i, j, k) and cen(j) and low(k) and up(i),
    }


def condition_witness(p: OneLine, b: Barring, mirrored: bool = False) -> tuple[str, tuple[int, int, int]] | None:
    """Name of the violated clause and the offending subsequence, if any."""
    if b.kind != p.kind:
        raise KindMismatch(f"barring of type {b.kind} used with a type {p.kind} permutation")
    if mirrored and p.kind == "A":
        raise ValueError("type A one-line notation has no mirror symmetry")
    for name, pattern in _patterns(p.kind, b).items():
        hit = _find(p.entries, pattern, mirrored)
        if hit is not None:
            return name, hit
    return None


def _condition(kind: str):
    def check(p: OneLine, b: Barring, mirrored: bool = False) -> bool:
        if p.kind != kind:
            raise KindMismatch(f"condition ({kind}) applied to a type {p.kind} permutation")
        return condition_witness(p, b, mirrored) is None

    check.__name__ = f"condition_{kind}"
    check.__doc__ = f"Whether ``p`` avoids every forbidden subsequence of condition ({kind})."
    return check


condition_A = _condition("A")
condition_B = _condition("B")
condition_D = _condition("D")


def satisfies_condition(p: OneLine, b: Barring, mirrored: bool = False) -> bool:
    return {"A": condition_A, "B": condition_B, "D": condition_D}[p.kind](p, b, mirrored)


def condition_B_alternative(p: OneLine, b: Barring) -> bool:
    """Condition (B) in its second form: no subsequence ``k i j`` with ``j`` lower-barred, ``i<j<k``."""
    if p.kind != "B":
        raise KindMismatch("condition (B) needs a type B permutation")
    return _find(p.entries, lambda k, i, j: i < j < k and b.is_lower(j)) is None


def is_231_avoiding(p: OneLine) -> bool:
    if p.kind != "A":
        raise KindMismatch("231-avoidance is a type A notion")
    return not any(z < x < y for x, y, z in combinations(p.entries, 3))
