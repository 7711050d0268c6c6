"""Coxeter number, exponents, Catalan and Narayana counts, and the verification battery."""

from __future__ import annotations

import itertools
import json
import math
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import classical
from .alignment import is_aligned, is_aligned_dyer, orient, orientation_cycle
from .clusters import (
    Cluster,
    almost_reflections,
    cl_map,
    compatible,
    enumerate_clusters,
    format_almost,
    is_negative,
    mu,
    negative,
    sigma,
    simple_of,
)
from .elements import Element, format_word
from .errors import CoxeterError, NonInteger, NumericalDrift
from .noncrossing import (
    absolute_length,
    canonical_generators,
    canonical_T_word,
    fixed_space_contains,
    le_T,
    nc_interval,
    nc_map,
    nc_inverse,
)
from .root_system import CoxeterSystem
from .sorting import CoxeterElement, is_sortable, sortable_elements

SCHEMA_VERSION = 1
EXHAUSTIVE_LIMIT = 50_000
ROUND_TOL = 1e-6


# --------------------------------------------------------------------------
# Degrees


@dataclass(frozen=True)
class Degrees:
    """Coxeter numbers and exponents, one entry per irreducible component."""

    components: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def h(self) -> int:
        """Coxeter number (the order of a Coxeter element)."""
        return math.lcm(*(h for h, _ in self.components)) if self.components else 1

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(sorted(e for _, es in self.components for e in es))

    @property
    def group_order(self) -> int:
        return math.prod(e + 1 for e in self.exponents)


def _component_degrees(system: CoxeterSystem, J: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    c = CoxeterElement(system, sorted(J))
    h = c.coxeter_number
    idx = sorted(J)
    M = system.matrix_of(c.element)[np.ix_(idx, idx)]
    exps = []
    for z in np.linalg.eigvals(M):
        theta = math.atan2(z.imag, z.real) % (2 * math.pi)
        e = theta * h / (2 * math.pi)
        k = round(e)
        if abs(e - k) > ROUND_TOL:
            raise NumericalDrift(f"exponent {e} is not within {ROUND_TOL} of an integer")
        exps.append(k)
    return h, tuple(sorted(exps))


def degrees(system: CoxeterSystem) -> Degrees:
    comps = sorted(system.components(), key=min)
    return Degrees(tuple(_component_degrees(system, J) for J in comps))


def _product(d: Degrees, shift: int) -> int:
    total = Fraction(1)
    for h, exps in d.components:
        for e in exps:
            total *= Fraction(e + h + shift, e + 1)
    if total.denominator != 1:
        raise NonInteger(f"Catalan product evaluated to {total}")
    return int(total)


def catalan_formula(d: Degrees) -> int:
    """``prod (e_i + h + 1) / (e_i + 1)``, per component."""
    return _product(d, 1)


def positive_catalan_formula(d: Degrees) -> int:
    """``prod (e_i + h - 1) / (e_i + 1)``, per component."""
    return _product(d, -1)


# --------------------------------------------------------------------------
# Counts


@dataclass
class CountReport:
    catalan: int
    positive_catalan: int
    narayana: list[int]
    sortable_count: int
    nc_count: int
    cluster_count: int | None
    narayana_nc: list[int] = field(default_factory=list)
    full_support_count: int = 0
    positive_cluster_count: int | None = None
    proper_parabolic_count: int = 0
    all_match: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _distribution(values: Iterable[int], n: int) -> list[int]:
    counts = Counter(values)
    return [counts.get(k, 0) for k in range(n + 1)]


def count_report(c: CoxeterElement, clusters: bool = True) -> CountReport:
    """Independent counts of sortables, noncrossing partitions and clusters."""
    system = c.system
    n = len(c.support)
    d = degrees(system)
    sortables = sortable_elements(c)
    interval = nc_interval(c)
    full = sum(1 for w in sortables if w.support() == c.support)
    proper = sum(
        1 for w in sortables if any(w.in_standard_parabolic(c.support - {s}) for s in c.support)
    )
    report = CountReport(
        catalan=catalan_formula(d),
        positive_catalan=positive_catalan_formula(d),
        narayana=_distribution((len(w.descents()) for w in sortables), n),
        sortable_count=len(sortables),
        nc_count=len(interval),
        cluster_count=None,
        narayana_nc=_distribution((p.rank for p in interval), n),
        full_support_count=full,
        proper_parabolic_count=proper,
    )
    if clusters:
        cl = enumerate_clusters(c)
        report.cluster_count = len(cl)
        report.positive_cluster_count = sum(1 for k in cl if k.positive)
    checks = [
        report.catalan == report.sortable_count == report.nc_count,
        report.narayana == report.narayana_nc,
        report.positive_catalan == report.full_support_count,
        report.full_support_count == report.catalan - report.proper_parabolic_count,
    ]
    if clusters:
        checks += [
            report.cluster_count == report.catalan,
            report.positive_cluster_count == report.positive_catalan,
        ]
    report.all_match = all(checks)
    return report


# --------------------------------------------------------------------------
# Verification battery


@dataclass
class CheckResult:
    name: str
    status: str
    trials: int = 0
    witness: str | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status, "trials": self.trials}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    group: str
    coxeter_word: list[int]
    mode: str
    seed: int
    counts: dict
    checks: list[CheckResult]

    @property
    def failures(self) -> list[CheckResult]:
        return [ch for ch in self.checks if ch.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "group": self.group,
            "coxeter_word": self.coxeter_word,
            "mode": self.mode,
            "seed": self.seed,
            "counts": self.counts,
            "checks": [ch.to_dict() for ch in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class _Elements:
    """Group elements: enumerated when small enough, otherwise drawn as random words."""

    def __init__(self, system: CoxeterSystem, enumerable: bool):
        self.system = system
        self.enumerable = enumerable

    def all(self) -> list[Element]:
        return self.system.elements()

    def __len__(self) -> int:
        return degrees(self.system).group_order

    def draw(self, rng: random.Random) -> Element:
        if self.enumerable:
            return rng.choice(self.all())
        n = self.system.rank
        return self.system.element(rng.randrange(n) for _ in range(3 * self.system.num_reflections))


class _Context:
    def __init__(self, c: CoxeterElement, enumerable: bool):
        self.c = c
        self.system = system = c.system
        self.n = system.rank
        self.S = list(range(self.n))
        self.initial = sorted(c.initial_letters())
        self.final = sorted(c.final_letters())
        self.elements = _Elements(system, enumerable)
        self.sortables = list(sortable_elements(c))
        self.interval = [p.element for p in nc_interval(c)]
        self.almost = almost_reflections(system)
        self.pairs = list(itertools.combinations(self.almost, 2))
        self.subsets = [frozenset(J) for k in range(self.n + 1) for J in itertools.combinations(self.S, k)]
        self.parabolics = list(system.rank_two_parabolics)
        self.irreducible = list(system.irreducible_rank_two_parabolics)

    def fmt(self, w: Element) -> str:
        return format_word(w.reduced_word())

    def fmt_t(self, t: int) -> str:
        return format_almost(self.system, t)

    def conj(self, s: int, t: int) -> int:
        return t if t == s else self.system.reflection_tables[s][t]


@dataclass(frozen=True)
class _Check:
    name: str
    domains: Callable[[_Context], Sequence]
    test: Callable[..., str | None]
    applies: Callable[[_Context], bool] = lambda ctx: True


def _cases(domains: Sequence, mode: str, samples: int, rng: random.Random):
    """Every case, or ``samples`` random ones when the space is larger than that."""
    sizes = [len(d) for d in domains]
    total = math.prod(sizes)
    if mode == "exhaustive" or total <= samples:
        pools = [d.all() if isinstance(d, _Elements) else d for d in domains]
        return list(itertools.product(*pools))
    out = []
    for _ in range(samples):
        out.append(tuple(d.draw(rng) if isinstance(d, _Elements) else rng.choice(d) for d in domains))
    return out


# -- individual checks -------------------------------------------------------


def _chk_align(ctx, w):
    if is_sortable(w, ctx.c) != is_aligned(w, ctx.c):
        return f"w={ctx.fmt(w)}"


def _chk_align_dyer(ctx, w):
    if is_aligned(w, ctx.c) != is_aligned_dyer(w, ctx.c):
        return f"w={ctx.fmt(w)}"


def _classical_kind(ctx) -> str | None:
    ct = ctx.system.cartan_type
    if ct and ct[0] in classical.KINDS and (ct[0] != "D" or ct[1] >= 4):
        return ct[0]
    return None


def _chk_abd(ctx, w):
    kind = _classical_kind(ctx)
    b = classical.barring(ctx.c, kind)
    p = classical.to_one_line(w, kind)
    expect = is_sortable(w, ctx.c)
    forms = [classical.satisfies_condition(p, b)]
    if kind != "A":
        forms.append(classical.satisfies_condition(p, b, mirrored=True))
    if any(f != expect for f in forms):
        return f"w={ctx.fmt(w)} one-line={p}"


def _chk_sc(ctx, w, s):
    if w.has_left_descent(s):
        return None
    if is_sortable(w, ctx.c) != is_sortable(w, ctx.c.without(s)):
        return f"w={ctx.fmt(w)} s=s{s}"


def _chk_scs(ctx, w, s):
    if not w.has_left_descent(s):
        return None
    if is_sortable(w, ctx.c) != is_sortable(w.left_multiply(s), ctx.c.conjugate(s)):
        return f"w={ctx.fmt(w)} s=s{s}"


def _chk_nc_s(ctx, w, s):
    if not w.has_left_descent(s):
        return None
    x = nc_map(w, ctx.c)
    y = nc_map(w.left_multiply(s), ctx.c.conjugate(s))
    sel = ctx.system.simple(s)
    expect = x * sel if s in w.cover_reflections() else sel * x * sel
    if y != expect:
        return f"w={ctx.fmt(w)} s=s{s}"


def _chk_nc_lemma(ctx, w, s):
    covers = w.cover_reflections()
    if s not in covers:
        return None
    for t in covers - {s}:
        if s in ctx.system.root_support[t]:
            return f"w={ctx.fmt(w)} s=s{s} t={ctx.fmt_t(t)}"


def _chk_nc_lemma_2(ctx, w, s):
    if w.has_left_descent(s) != (s in w.cover_reflections()):
        return f"w={ctx.fmt(w)} s=s{s}"


def _chk_cl_s(ctx, w, s):
    got = set(cl_map(w, ctx.c).members)
    if w.has_left_descent(s):
        rest = cl_map(w.left_multiply(s), ctx.c.conjugate(s)).members
        expect = {sigma(ctx.system, s, t) for t in rest}
    else:
        expect = {negative(s)} | set(cl_map(w, ctx.c.without(s)).members)
    if got != expect:
        return f"w={ctx.fmt(w)} s=s{s}"


def _chk_cl_lemma(ctx, w, s):
    if w.has_left_descent(s) != (s in cl_map(w, ctx.c).members):
        return f"w={ctx.fmt(w)} s=s{s}"


def _chk_dyer(ctx, w, par):
    inv = w.inversion_set()
    flags = [t in inv for t in par.chain]
    k = sum(flags)
    if flags != [True] * k + [False] * (len(flags) - k) and flags != [False] * (len(flags) - k) + [True] * k:
        return f"w={ctx.fmt(w)} parabolic={[ctx.fmt_t(t) for t in par.chain]}"


def _chk_int(ctx, J, par):
    meet = par.reflections & ctx.system.reflections_in(J)
    if meet and meet != par.reflections and not (len(meet) == 1 and meet <= set(par.generators)):
        return f"J={sorted(J)} parabolic={[ctx.fmt_t(t) for t in par.chain]}"


def _chk_cover_para(ctx, w, J):
    T_J = ctx.system.reflections_in(J)
    if w.in_standard_parabolic(J) != (w.cover_reflections() <= T_J):
        return f"w={ctx.fmt(w)} J={sorted(J)}"


def _reflection_closure(system: CoxeterSystem, gens: frozenset[int]) -> frozenset[int]:
    N = system.num_reflections
    out = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for t in frontier:
            for u in list(out):
                for a, b in ((t, u), (u, t)):
                    v = system.reflection_tables[a][b] % N if a != b else a
                    if v not in out:
                        out.add(v)
                        nxt.append(v)
        frontier = nxt
    return frozenset(out)


def _chk_canon_lem(ctx, w):
    system = ctx.system
    covers = w.cover_reflections()
    refls = _reflection_closure(system, covers)
    span = np.array([system.root(t) for t in covers]).T if covers else np.zeros((ctx.n, 0))
    r = np.linalg.matrix_rank(span) if covers else 0
    para = {
        t for t in range(system.num_reflections)
        if np.linalg.matrix_rank(np.column_stack([span, system.root(t)])) == r
    }
    if refls != para or frozenset(system.simple_within(refls)) != covers:
        return f"w={ctx.fmt(w)}"


def _chk_abs_para(ctx, x, s):
    system = ctx.system
    comp = frozenset(ctx.S) - {s}
    i = x.in_standard_parabolic(comp)
    ii = all(s not in system.root_support[t] for t in canonical_T_word(x, ctx.c).letters)
    if i != ii:
        return f"x={ctx.fmt(x)} s=s{s} (i)/(ii)"
    if s in ctx.initial:
        sx = system.simple(s) * x
        iii = le_T(x, system.simple(s) * ctx.c.element)
        iv = le_T(x, sx) and le_T(sx, ctx.c.element)
        if not i == iii == iv:
            return f"x={ctx.fmt(x)} s=s{s} (i)={i} (iii)={iii} (iv)={iv}"


def _chk_family_i(ctx, par):
    a, b = par.generators
    for s, t in ((a, b), (b, a)):
        if s in ctx.initial and s < ctx.n and orient(ctx.c, par) != (s, t):
            return f"parabolic={[ctx.fmt_t(u) for u in par.chain]} s=s{s}"


def _chk_family_ii(ctx, par, s):
    cs = ctx.c.conjugate(s)
    t1, t2 = par.generators
    image = ctx.system.rank_two_parabolic(ctx.conj(s, t1), ctx.conj(s, t2))
    edges = set(orientation_cycle(cs, image))
    for a, b in orientation_cycle(ctx.c, par):
        if (ctx.conj(s, a), ctx.conj(s, b)) not in edges:
            return f"edge {ctx.fmt_t(a)}->{ctx.fmt_t(b)} s=s{s}"


def _chk_restrict_or(ctx, J, par):
    if len(J) < 2 or not par.reflections <= ctx.system.reflections_in(J):
        return None
    if orient(ctx.c, par) != orient(ctx.c.restrict(J), par):
        return f"J={sorted(J)} parabolic={[ctx.fmt_t(t) for t in par.chain]}"


def _in_almost(ctx, J, t) -> bool:
    if is_negative(t):
        return simple_of(t) in J
    return ctx.system.root_support[t] <= J


def _chk_restrict(ctx, J, pair):
    t1, t2 = pair
    if not J or not (_in_almost(ctx, J, t1) and _in_almost(ctx, J, t2)):
        return None
    if compatible(t1, t2, ctx.c) != compatible(t1, t2, ctx.c.restrict(J)):
        return f"J={sorted(J)} t1={ctx.fmt_t(t1)} t2={ctx.fmt_t(t2)}"


def _chk_c_inv(ctx, pair):
    t1, t2 = pair
    if compatible(t1, t2, ctx.c) != compatible(t1, t2, ctx.c.inverse()):
        return f"t1={ctx.fmt_t(t1)} t2={ctx.fmt_t(t2)}"


def _chk_subspaces(ctx, x, y):
    if le_T(x, y) != fixed_space_contains(x, y):
        return f"x={ctx.fmt(x)} y={ctx.fmt(y)}"


def _chk_t_word(ctx, x):
    word = canonical_T_word(x, ctx.c)
    if word.product(ctx.system) != x or len(word) != absolute_length(x):
        return f"x={ctx.fmt(x)} product"
    if tuple(sorted(word.letters)) != canonical_generators(x):
        return f"x={ctx.fmt(x)} generators"


def _chk_canonical_generators(ctx, par):
    system = ctx.system
    if not system.extreme_generators(par.reflections) == system.simple_within(par.reflections) == par.generators:
        return f"parabolic={[ctx.fmt_t(t) for t in par.chain]}"


def _chk_mu(ctx, t):
    k = mu(t, ctx.c)
    zero = is_negative(t) and simple_of(t) in ctx.initial
    if (k == 0) != zero:
        return f"t={ctx.fmt_t(t)} mu={k}"


CHECKS: tuple[_Check, ...] = (
    _Check("align", lambda x: [x.elements], _chk_align),
    _Check("align_dyer", lambda x: [x.elements], _chk_align_dyer),
    _Check("abd", lambda x: [x.elements], _chk_abd, lambda x: _classical_kind(x) is not None),
    _Check("sc", lambda x: [x.elements, x.initial], _chk_sc),
    _Check("scs", lambda x: [x.elements, x.initial], _chk_scs),
    _Check("nc_s", lambda x: [x.sortables, x.initial], _chk_nc_s),
    _Check("nc_lemma", lambda x: [x.sortables, sorted(set(x.initial) | set(x.final))], _chk_nc_lemma),
    _Check("nc_lemma_2", lambda x: [x.sortables, x.final], _chk_nc_lemma_2),
    _Check("cl_s", lambda x: [x.sortables, x.initial], _chk_cl_s),
    _Check("cl_lemma", lambda x: [x.sortables, x.final], _chk_cl_lemma),
    _Check("dyer", lambda x: [x.elements, x.parabolics], _chk_dyer),
    _Check("int", lambda x: [x.subsets, x.parabolics], _chk_int),
    _Check("cover_para", lambda x: [x.elements, x.subsets], _chk_cover_para),
    _Check("canon_lem", lambda x: [x.elements], _chk_canon_lem),
    _Check("abs_para", lambda x: [x.interval, x.S], _chk_abs_para),
    _Check("family_i", lambda x: [x.irreducible], _chk_family_i),
    _Check("family_ii", lambda x: [x.irreducible, x.initial], _chk_family_ii),
    _Check("restrict_or", lambda x: [x.subsets, x.irreducible], _chk_restrict_or),
    _Check("restrict", lambda x: [x.subsets, x.pairs], _chk_restrict),
    _Check("c_inv", lambda x: [x.pairs], _chk_c_inv),
    _Check("subspaces", lambda x: [x.interval, x.interval], _chk_subspaces),
    _Check("canonical_t_word", lambda x: [x.interval], _chk_t_word),
    _Check("canonical_generators", lambda x: [x.parabolics], _chk_canonical_generators),
    _Check("mu", lambda x: [x.almost], _chk_mu),
)

CHECK_NAMES = tuple(ch.name for ch in CHECKS) + ("nc_bijection", "cl_bijection", "compat_cross", "counts")


def _global_checks(ctx: _Context, counts: CountReport) -> list[CheckResult]:
    c, n = ctx.c, ctx.n
    out = []

    # nc bijection and rank
    witness = None
    images = {}
    for w in ctx.sortables:
        x = nc_map(w, c)
        if x in images:
            witness = f"w={ctx.fmt(w)} and w={ctx.fmt(images[x])} share an image"
            break
        images[x] = w
        if len(w.descents()) != absolute_length(x):
            witness = f"w={ctx.fmt(w)} rank"
            break
        if nc_inverse(x, c) != w:
            witness = f"w={ctx.fmt(w)} inverse"
            break
    if witness is None and set(images) != set(ctx.interval):
        witness = "image differs from the interval"
    out.append(CheckResult("nc_bijection", "fail" if witness else "pass", len(ctx.sortables), witness))

    # cl bijection and positivity
    witness = None
    clusters = set(enumerate_clusters(c))
    seen: dict[Cluster, Element] = {}
    for w in ctx.sortables:
        k = cl_map(w, c)
        if k in seen:
            witness = f"w={ctx.fmt(w)} and w={ctx.fmt(seen[k])} share a cluster"
            break
        seen[k] = w
        if len(k) != n or k.positive != (w.support() == frozenset(ctx.S)):
            witness = f"w={ctx.fmt(w)} size or positivity"
            break
    if witness is None and set(seen) != clusters:
        witness = "image differs from the maximal compatible sets"
    if witness is None and any(len(k) != n for k in clusters):
        witness = "cluster of the wrong size"
    out.append(CheckResult("cl_bijection", "fail" if witness else "pass", len(ctx.sortables), witness))

    # compatibility from cl images
    together = set()
    for k in seen:
        together.update(itertools.combinations(k.members, 2))
    together = {tuple(sorted(p)) for p in together}
    witness = None
    for t1, t2 in ctx.pairs:
        if compatible(t1, t2, c) != ((min(t1, t2), max(t1, t2)) in together):
            witness = f"t1={ctx.fmt_t(t1)} t2={ctx.fmt_t(t2)}"
            break
    out.append(CheckResult("compat_cross", "fail" if witness else "pass", len(ctx.pairs), witness))

    out.append(
        CheckResult("counts", "pass" if counts.all_match else "fail", 1,
                    None if counts.all_match else json.dumps(counts.to_dict(), sort_keys=True))
    )
    return out


def case_space_sizes(c: CoxeterElement) -> dict[str, int]:
    """Number of cases each per-case check has for ``c`` (before any sampling)."""
    ctx = _Context(c, enumerable=False)
    out = {}
    for chk in CHECKS:
        if chk.applies(ctx):
            out[chk.name] = math.prod(len(d) for d in chk.domains(ctx))
    return out


def resolve_mode(system: CoxeterSystem, mode: str) -> str:
    if mode not in ("auto", "exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "auto":
        return "exhaustive" if degrees(system).group_order <= EXHAUSTIVE_LIMIT else "sampled"
    return mode


def verify_all(
    c: CoxeterElement,
    mode: str = "auto",
    seed: int = 0,
    samples: int | Mapping[str, int] = 10_000,
    only: Iterable[str] | None = None,
) -> VerificationReport:
    """Run the whole battery for one Coxeter element of the whole group.

    In sampled mode each check draws ``samples`` cases (a single number, or a
    budget per check name) from a generator seeded by ``seed``, the check
    name and ``c``, so reports are reproducible.  A check whose case space
    has at most that many cases runs exhaustively.
    """
    if not c.is_full:
        raise ValueError("verify_all needs a Coxeter element of the whole group")
    system = c.system
    mode = resolve_mode(system, mode)
    enumerable = degrees(system).group_order <= EXHAUSTIVE_LIMIT or mode == "exhaustive"
    ctx = _Context(c, enumerable)
    wanted = set(CHECK_NAMES if only is None else only)
    unknown = wanted - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    global_names = set(CHECK_NAMES) - {ch.name for ch in CHECKS}
    counts = count_report(c) if only is None or wanted & global_names else None
    results = []
    for chk in CHECKS:
        if chk.name not in wanted:
            continue
        if not chk.applies(ctx):
            results.append(CheckResult(chk.name, "skip"))
            continue
        rng = random.Random(f"{seed}:{chk.name}:{format_word(c.word)}")
        budget = samples if isinstance(samples, int) else samples.get(chk.name, 10_000)
        cases = _cases(chk.domains(ctx), mode, budget, rng)
        witness = None
        for case in cases:
            try:
                witness = chk.test(ctx, *case)
            except CoxeterError as exc:
                witness = f"{type(exc).__name__}: {exc}"
            if witness:
                break
        results.append(CheckResult(chk.name, "fail" if witness else "pass", len(cases), witness))
    if counts is not None:
        results.extend(r for r in _global_checks(ctx, counts) if r.name in wanted)
    results.sort(key=lambda r: CHECK_NAMES.index(r.name))
    return VerificationReport(
        group=system.label,
        coxeter_word=list(c.word),
        mode=mode,
        seed=seed,
        counts=counts.to_dict() if counts is not None else {},
        checks=results,
    )
