"""Finite Coxeter systems realized through their root systems.

A :class:`CoxeterSystem` is built from a Coxeter matrix.  The positive roots
are enumerated by closing the simple roots under the simple reflections, in
the geometric representation with bilinear form ``B(s, t) = -cos(pi/m(s,t))``.
Positive roots are indexed ``0..N-1`` and index the reflections of the group;
negative roots get the index of their negation plus ``N``.  The simple roots
always come first, so simple generator ``s`` is reflection ``s``.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .errors import MalformedMatrix, NotFinite

if TYPE_CHECKING:
    from .elements import Element

EPS = 1e-9
ROUND_DIGITS = 6
MAX_ROOTS = 10_000
INF = 0  # matrix entry meaning m(s,t) = infinity


# --------------------------------------------------------------------------
# Coxeter matrices


def coxeter_matrix(entries: Sequence[Sequence[object]]) -> tuple[tuple[int, ...], ...]:
    """Validate a Coxeter matrix and return it as a tuple of tuples.

    Infinite entries may be written as ``0``, ``-1``, ``None``, ``"inf"`` or
    ``math.inf``; they are normalized to ``0``.
    """
    try:
        rows = [list(r) for r in entries]
    except TypeError as exc:
        raise MalformedMatrix("matrix must be a sequence of rows") from exc
    n = len(rows)
    if n == 0:
        raise MalformedMatrix("rank must be positive")
    out = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedMatrix(f"row {i} has length {len(row)}, expected {n}")
        new_row = []
        for j, m in enumerate(row):
            new_row.append(_normalize_entry(m, i, j))
        out.append(tuple(new_row))
    for i in range(n):
        if out[i][i] != 1:
            raise MalformedMatrix(f"diagonal entry ({i},{i}) must be 1")
        for j in range(n):
            if i != j and out[i][j] == 1:
                raise MalformedMatrix(f"off-diagonal entry ({i},{j}) must be >= 2")
            if out[i][j] != out[j][i]:
                raise MalformedMatrix(f"matrix is not symmetric at ({i},{j})")
    return tuple(out)


def _normalize_entry(m, i, j) -> int:
    if m is None or (isinstance(m, str) and m.lower() in ("inf", "infinity", "oo")):
        return INF
    if isinstance(m, float):
        if math.isinf(m):
            return INF
        if not m.is_integer():
            raise MalformedMatrix(f"entry ({i},{j}) is not an integer: {m}")
        m = int(m)
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise MalformedMatrix(f"entry ({i},{j}) is not an integer: {m!r}")
    m = int(m)
    if m <= 0:
        return INF
    return m


def named_matrix(kind: str, rank: int | None = None, m: int | None = None):
    """Coxeter matrix of a named irreducible type.

    Labelling: A, B, H, F and E follow a path (E with the branch node attached
    to node 3 in 0-based Bourbaki order); B has the 4-edge between 0 and 1; D
    has node 0 attached to node 2 so that ``s0 = (-2 1)(-1 2)``.
    """
    kind = kind.upper()
    if kind == "G":
        kind, rank, m = "I", 2, 6
    if kind == "I":
        if rank not in (None, 2):
            raise MalformedMatrix("type I has rank 2")
        if m is None or m < 2:
            raise MalformedMatrix("type I needs m >= 2")
        return coxeter_matrix([[1, m], [m, 1]])
    if rank is None or rank < 1:
        raise MalformedMatrix(f"type {kind} needs a positive rank")
    n = rank
    M = [[1 if i == j else 2 for j in range(n)] for i in range(n)]

    def edge(a, b, label=3):
        M[a][b] = M[b][a] = label

    if kind == "A":
        for i in range(n - 1):
            edge(i, i + 1)
    elif kind in ("B", "C"):
        if n < 2:
            raise MalformedMatrix("type B needs rank >= 2")
        edge(0, 1, 4)
        for i in range(1, n - 1):
            edge(i, i + 1)
    elif kind == "D":
        if n < 3:
            raise MalformedMatrix("type D needs rank >= 3")
        edge(0, 2)
        for i in range(1, n - 1):
            edge(i, i + 1)
    elif kind == "E":
        if n not in (6, 7, 8):
            raise MalformedMatrix("type E has rank 6, 7 or 8")
        # Bourbaki 1-3-4-5-6-7-8 with 2 on 4, shifted to 0-based.
        edge(0, 2)
        edge(1, 3)
        for i in range(2, n - 1):
            edge(i, i + 1)
    elif kind == "F":
        if n != 4:
            raise MalformedMatrix("type F has rank 4")
        edge(0, 1)
        edge(1, 2, 4)
        edge(2, 3)
    elif kind == "H":
        if n not in (2, 3, 4):
            raise MalformedMatrix("type H has rank 2, 3 or 4")
        edge(0, 1, 5)
        for i in range(1, n - 1):
            edge(i, i + 1)
    else:
        raise MalformedMatrix(f"unknown type {kind!r}")
    return coxeter_matrix(M)


_NAME_RE = re.compile(r"^\s*([A-Ia-i])\s*_?\s*(\d+)\s*(?:\(\s*(\d+)\s*\))?\s*$")


def parse_group_spec(spec) -> tuple[tuple[tuple[int, ...], ...], tuple[str, int] | None, str]:
    """Turn a group spec into ``(matrix, cartan_type, label)``.

    Accepts a bare matrix (list of rows), a dict (``{"type": "B", "rank": 4}``, ``{"type": "I", "rank": 2,
    "m": 5}`` or ``{"matrix": [[1, 4], [4, 1]]}``), a JSON string, a path to a
    JSON file, or a short name such as ``"B4"``, ``"I2(5)"`` or ``"G2"``.
    """
    if isinstance(spec, (str, Path)):
        text = str(spec).strip()
        if not text.startswith(("{", "[")) and not _NAME_RE.match(text):
            try:
                text = Path(text).read_text()
            except OSError as exc:
                raise MalformedMatrix(f"cannot read group spec {text!r}: {exc}") from exc
        if text.lstrip().startswith(("{", "[")):
            try:
                spec = json.loads(text)
            except json.JSONDecodeError as exc:
                raise MalformedMatrix(f"bad group JSON: {exc}") from exc
            if isinstance(spec, list):
                spec = {"matrix": spec}
        else:
            match = _NAME_RE.match(text)
            if not match:
                raise MalformedMatrix(f"cannot parse group name {text!r}")
            letter, rank, m = match.group(1).upper(), int(match.group(2)), match.group(3)
            spec = {"type": letter, "rank": rank}
            if m is not None:
                spec["m"] = int(m)
    if isinstance(spec, (list, tuple)):
        spec = {"matrix": spec}
    if not isinstance(spec, dict):
        raise MalformedMatrix("group spec must be a name, JSON object or file")
    if "matrix" in spec:
        matrix = coxeter_matrix(spec["matrix"])
        return matrix, None, "matrix" + json.dumps([list(r) for r in matrix], separators=(",", ":"))
    if "type" not in spec:
        raise MalformedMatrix("group spec needs 'type' or 'matrix'")
    letter = str(spec["type"]).upper()
    rank = spec.get("rank")
    m = spec.get("m")
    if letter == "I" and m is None and rank not in (None, 2):
        # "I5" style shorthand is not allowed; m must be explicit
        raise MalformedMatrix("type I needs an explicit m, e.g. I2(5)")
    matrix = named_matrix(letter, rank, m)
    if letter == "G":
        return matrix, ("G", 2), "G2"
    if letter == "I":
        return matrix, ("I", 2), f"I2({m})"
    if letter == "C":
        letter = "B"
    return matrix, (letter, int(rank)), f"{letter}{rank}"


# --------------------------------------------------------------------------
# Rank-two parabolic subgroups


@dataclass(frozen=True)
class RankTwoParabolic:
    """A rank-two parabolic subgroup, described by its reflections.

    ``generators`` holds the two canonical generators sorted by reflection id;
    ``chain`` is the sequence ``t1, t1 t2 t1, ..., t2 t1 t2, t2`` which lists
    every reflection of the subgroup once.
    """

    reflections: frozenset[int]
    generators: tuple[int, int]
    chain: tuple[int, ...]

    @property
    def irreducible(self) -> bool:
        return len(self.reflections) > 2

    @property
    def order(self) -> int:
        return 2 * len(self.reflections)


# --------------------------------------------------------------------------
# The system


class CoxeterSystem:
    """An immutable finite Coxeter system with its enumerated root system."""

    def __init__(self, matrix, cartan_type: tuple[str, int] | None = None, label: str | None = None):
        self.matrix = coxeter_matrix(matrix)
        self.rank = n = len(self.matrix)
        self.cartan_type = cartan_type
        self.label = label or "matrix"
        form = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                m = self.matrix[i][j]
                form[i, j] = -1.0 if m == INF else -math.cos(math.pi / m)
        self.bilinear_form = form
        if np.linalg.eigvalsh(form).min() <= EPS:
            raise NotFinite("bilinear form is not positive definite; the group is infinite")
        self._enumerate_roots()
        self._elements_cache: dict = {}

    @classmethod
    def from_spec(cls, spec) -> "CoxeterSystem":
        matrix, cartan_type, label = parse_group_spec(spec)
        return cls(matrix, cartan_type, label)

    @classmethod
    def named(cls, kind: str, rank: int | None = None, m: int | None = None) -> "CoxeterSystem":
        spec = {"type": kind, "rank": rank}
        if m is not None:
            spec["m"] = m
        return cls.from_spec(spec)

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.label})"

    # -- roots -------------------------------------------------------------

    def _key(self, v: np.ndarray) -> tuple[float, ...]:
        return tuple(float(x) + 0.0 for x in np.round(v, ROUND_DIGITS))

    def _enumerate_roots(self) -> None:
        n, B = self.rank, self.bilinear_form
        simple = [np.eye(n)[s] for s in range(n)]
        found: dict[tuple, np.ndarray] = {}
        queue = []
        for v in simple:
            found[self._key(v)] = v
            queue.append(v)
        while queue:
            r = queue.pop()
            Br = B @ r
            for s in range(n):
                img = r.copy()
                img[s] -= 2.0 * Br[s]
                if img.min() < -EPS and img.max() > EPS:
                    raise NotFinite("root with mixed signs encountered")
                if img.max() <= EPS:
                    img = -img
                key = self._key(img)
                if key not in found:
                    found[key] = img
                    queue.append(img)
                    if len(found) > MAX_ROOTS:
                        raise NotFinite(f"more than {MAX_ROOTS} positive roots")
        # simple roots first, then by height, ties broken lexicographically
        order = sorted(found, key=lambda k: (round(sum(k), ROUND_DIGITS), tuple(-x for x in k)))
        roots = np.array([found[k] for k in order])
        for s in range(n):
            if not np.allclose(roots[s], simple[s]):
                raise AssertionError("simple roots must sort first")
        self.positive_roots = roots
        self.num_reflections = N = len(roots)
        self._root_index = {}
        for i, r in enumerate(roots):
            self._root_index[self._key(r)] = i
            self._root_index[self._key(-r)] = i + N
        self.root_support = tuple(
            frozenset(int(s) for s in np.nonzero(r > EPS)[0]) for r in roots
        )
        self._signed_roots = np.vstack([roots, -roots])
        # reflection tables on signed roots: table[i][r] = t_i(r)
        gram = roots @ B  # row i is B(alpha_i, .)
        tables = []
        for i in range(N):
            coef = 2.0 * (self._signed_roots @ gram[i])
            images = self._signed_roots - np.outer(coef, roots[i])
            tables.append(tuple(self._root_index[self._key(v)] for v in images))
        self.reflection_tables = tuple(tables)

    def root_id(self, v) -> int:
        """Signed root index of a coordinate vector."""
        return self._root_index[self._key(np.asarray(v, dtype=float))]

    def root(self, r: int) -> np.ndarray:
        """Coordinates of signed root ``r``."""
        return self._signed_roots[r]

    def reflect_root(self, r: int, s: int) -> int:
        """Image of signed root ``r`` under simple reflection ``s``."""
        return self.reflection_tables[s][r]

    def reflect_root_vector(self, v, s: int) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        return v - 2.0 * (self.bilinear_form[s] @ v) * np.eye(self.rank)[s]

    @property
    def simple_generators(self) -> range:
        return range(self.rank)

    def reflections_in(self, J: Iterable[int]) -> frozenset[int]:
        """Reflections of the standard parabolic subgroup ``W_J``."""
        J = frozenset(J)
        return frozenset(i for i, sup in enumerate(self.root_support) if sup <= J)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``s < t`` of noncommuting simple generators."""
        n = self.rank
        return tuple(
            (s, t) for s in range(n) for t in range(s + 1, n) if self.matrix[s][t] != 2
        )

    def components(self, J: Iterable[int] | None = None) -> list[frozenset[int]]:
        """Connected components of the Coxeter diagram restricted to ``J``."""
        J = set(range(self.rank)) if J is None else set(J)
        comps = []
        while J:
            start = min(J)
            comp, stack = {start}, [start]
            while stack:
                a = stack.pop()
                for b in list(J):
                    if b not in comp and self.matrix[a][b] != 2:
                        comp.add(b)
                        stack.append(b)
            J -= comp
            comps.append(frozenset(comp))
        return comps

    # -- elements ----------------------------------------------------------

    @cached_property
    def identity(self) -> "Element":
        from .elements import Element

        return Element(self, tuple(range(2 * self.num_reflections)))

    def simple(self, s: int) -> "Element":
        return self.reflection(s)

    def reflection(self, t: int) -> "Element":
        return self._reflection_elements[t]

    @cached_property
    def _reflection_elements(self) -> tuple["Element", ...]:
        from .elements import Element

        return tuple(Element(self, tab) for tab in self.reflection_tables)

    @cached_property
    def _reflection_by_perm(self) -> dict[tuple[int, ...], int]:
        return {t.perm: i for i, t in enumerate(self._reflection_elements)}

    def reflection_id(self, w: "Element") -> int | None:
        """Reflection id of ``w``, or ``None`` if ``w`` is not a reflection."""
        return self._reflection_by_perm.get(w.perm)

    def element(self, word: Iterable[int]) -> "Element":
        """Evaluate a word in the simple generators."""
        w = self.identity
        for s in word:
            if not 0 <= s < self.rank:
                raise ValueError(f"letter {s} out of range for rank {self.rank}")
            w = w.right_multiply(s)
        return w

    def longest_element(self, J: Iterable[int] | None = None) -> "Element":
        """Longest element of ``W_J`` (of ``W`` when ``J`` is omitted)."""
        J = tuple(sorted(range(self.rank) if J is None else set(J)))
        key = ("w0", J)
        if key not in self._elements_cache:
            w = self.identity
            climbing = True
            while climbing:
                climbing = False
                for s in J:
                    if not w.has_right_descent(s):
                        w = w.right_multiply(s)
                        climbing = True
                        break
            self._elements_cache[key] = w
        return self._elements_cache[key]

    def elements(self) -> list["Element"]:
        """All group elements, in breadth-first order by length."""
        if "all" not in self._elements_cache:
            seen = {self.identity.perm: self.identity}
            frontier = [self.identity]
            while frontier:
                nxt = []
                for w in frontier:
                    for s in range(self.rank):
                        if not w.has_right_descent(s):
                            v = w.right_multiply(s)
                            if v.perm not in seen:
                                seen[v.perm] = v
                                nxt.append(v)
                frontier = nxt
            self._elements_cache["all"] = list(seen.values())
        return self._elements_cache["all"]

    @cached_property
    def order(self) -> int:
        """``|W|``, by enumeration."""
        return len(self.elements())

    def matrix_of(self, w: "Element") -> np.ndarray:
        """Matrix of ``w`` in the simple-root basis (column ``s`` is ``w(alpha_s)``)."""
        return self._signed_roots[list(w.perm[: self.rank])].T.copy()

    # -- rank-two parabolics -----------------------------------------------

    def plane_reflections(self, t1: int, t2: int) -> frozenset[int]:
        """Reflections whose roots lie in the plane spanned by the roots of ``t1``, ``t2``."""
        B = self.bilinear_form
        a, b = self.positive_roots[t1], self.positive_roots[t2]
        G = np.array([[a @ B @ a, a @ B @ b], [b @ B @ a, b @ B @ b]])
        rhs = np.vstack([self.positive_roots @ B @ a, self.positive_roots @ B @ b])
        coef = np.linalg.solve(G, rhs)
        resid = self.positive_roots - np.outer(coef[0], a) - np.outer(coef[1], b)
        return frozenset(int(i) for i in np.nonzero(np.abs(resid).max(axis=1) < 1e-6)[0])

    def extreme_generators(self, refls: Iterable[int]) -> tuple[int, ...]:
        """Reflections whose positive roots span the extreme rays of the cone
        generated by the positive roots of a rank-two parabolic."""
        refls = sorted(refls)
        if len(refls) == 2:
            return tuple(refls)
        B = self.bilinear_form
        a, b = self.positive_roots[refls[0]], self.positive_roots[refls[1]]
        G = np.array([[a @ B @ a, a @ B @ b], [b @ B @ a, b @ B @ b]])
        pts = {}
        for t in refls:
            r = self.positive_roots[t]
            pts[t] = np.linalg.solve(G, np.array([a @ B @ r, b @ B @ r]))
        extremes = []
        for t in refls:
            p = pts[t]
            crosses = [p[0] * q[1] - p[1] * q[0] for u, q in pts.items() if u != t]
            if all(x > -EPS for x in crosses) or all(x < EPS for x in crosses):
                extremes.append(t)
        return tuple(sorted(extremes))

    def simple_within(self, refls: Iterable[int]) -> tuple[int, ...]:
        """Reflections ``t`` in ``refls`` mapping every other positive root of the
        set to a positive root; these are the canonical generators of the
        parabolic subgroup with reflection set ``refls``."""
        refls = frozenset(refls)
        N = self.num_reflections
        out = []
        for t in refls:
            table = self.reflection_tables[t]
            if all(table[u] < N for u in refls if u != t):
                out.append(t)
        return tuple(sorted(out))

    def dyer_chain(self, t1: int, t2: int, size: int) -> tuple[int, ...]:
        """``t1, t1 t2 t1, t1 t2 t1 t2 t1, ...`` as reflection ids, ``size`` terms."""
        chain = []
        N = self.num_reflections
        # roots: alpha_1, t1(alpha_2), t1 t2 (alpha_1), ...
        for k in range(size):
            r = t1 if k % 2 == 0 else t2
            prefix = [t1 if j % 2 == 0 else t2 for j in range(k)]
            for u in reversed(prefix):
                r = self.reflection_tables[u][r]
            if r >= N:
                raise AssertionError("chain root is negative")
            chain.append(r)
        return tuple(chain)

    def rank_two_parabolic(self, t1: int, t2: int) -> RankTwoParabolic:
        """The rank-two parabolic subgroup containing reflections ``t1 != t2``."""
        if t1 == t2:
            raise ValueError("need two distinct reflections")
        return self._parabolic_index[self._pair_key(t1, t2)]

    @staticmethod
    def _pair_key(t1: int, t2: int) -> tuple[int, int]:
        return (t1, t2) if t1 < t2 else (t2, t1)

    @cached_property
    def _parabolic_index(self) -> dict[tuple[int, int], RankTwoParabolic]:
        index: dict[tuple[int, int], RankTwoParabolic] = {}
        N = self.num_reflections
        for t1, t2 in itertools.combinations(range(N), 2):
            if (t1, t2) in index:
                continue
            refls = self.plane_reflections(t1, t2)
            gens = self.extreme_generators(refls)
            if len(gens) != 2:
                raise AssertionError(f"plane of {t1},{t2} has {len(gens)} extreme rays")
            chain = self.dyer_chain(gens[0], gens[1], len(refls))
            par = RankTwoParabolic(refls, (gens[0], gens[1]), chain)
            for pair in itertools.combinations(sorted(refls), 2):
                index[pair] = par
        return index

    @cached_property
    def rank_two_parabolics(self) -> tuple[RankTwoParabolic, ...]:
        """Every rank-two parabolic subgroup, sorted by canonical generators."""
        unique = {p.generators: p for p in self._parabolic_index.values()}
        return tuple(unique[k] for k in sorted(unique))

    @cached_property
    def irreducible_rank_two_parabolics(self) -> tuple[RankTwoParabolic, ...]:
        return tuple(p for p in self.rank_two_parabolics if p.irreducible)


def build_system(spec_or_matrix) -> CoxeterSystem:
    """Build a system from a group spec (name, dict, JSON) or a raw matrix."""
    if isinstance(spec_or_matrix, (str, Path, dict)):
        return CoxeterSystem.from_spec(spec_or_matrix)
    return CoxeterSystem(spec_or_matrix)
