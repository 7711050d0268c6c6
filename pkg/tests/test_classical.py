import pytest

from coxsort import CoxeterElement, all_coxeter_elements, is_sortable
from coxsort.classical import (
    OneLine,
    barring,
    condition_A,
    condition_B,
    condition_B_alternative,
    condition_D,
    condition_witness,
    coxeter_cycles,
    cycles_of,
    from_one_line,
    is_231_avoiding,
    normalize_cycle,
    satisfies_condition,
    to_one_line,
)
from coxsort.errors import KindMismatch

from conftest import coxeter, system


def test_identity_one_line():
    assert to_one_line(system("A2").identity, "A").entries == (1, 2, 3)


def test_b2_generators():
    W = system("B2")
    assert to_one_line(W.simple(0), "B").entries == (-2, 1, -1, 2)
    assert to_one_line(W.element([1, 0]), "B").entries == (-1, 2, -2, 1)
    assert str(to_one_line(W.element([1, 0]), "B")) == "(-1) 2 (-2) 1"


def test_d4_s0():
    p = to_one_line(system("D4").simple(0), "D")
    assert (p(1), p(2), p(3)) == (-2, -1, 3)


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        to_one_line(system("B2").identity, "A")
    with pytest.raises(KindMismatch):
        to_one_line(system("H3").identity, "B")


def test_invalid_one_line():
    with pytest.raises(ValueError):
        from_one_line(OneLine("D", (-3, -2, 1, -1, 2, 3)), system("D3"))
    with pytest.raises(ValueError):
        from_one_line(OneLine("A", (1, 1, 3)), system("A2"))


@pytest.mark.parametrize("spec, kind", [("A4", "A"), ("B3", "B"), ("D4", "D")])
def test_round_trip_and_descents(spec, kind):
    W = system(spec)
    seen = set()
    for w in W.elements():
        p = to_one_line(w, kind)
        assert from_one_line(p, W) == w
        assert p.descents() == w.descents()
        seen.add(p.entries)
    assert len(seen) == W.order


def test_b2_barring(c_B2):
    b = barring(c_B2, "B")
    assert b.upper == {-1} and b.lower == {1}


def test_a2_barring():
    b = barring(coxeter("A2", (0, 1)), "A")
    assert b.lower == {2} and b.upper == set()


def test_s9_barring_matches_cycle():
    # c = s8 s7 s4 s1 s2 s3 s5 s6 in S9, paper indices shifted down by one
    c = coxeter("A8", (7, 6, 3, 0, 1, 2, 4, 5))
    b = barring(c, "A")
    assert b.upper == {4, 7, 8} and b.lower == {2, 3, 5, 6}
    assert cycles_of(to_one_line(c.element, "A")) == [(1, 2, 3, 5, 6, 9, 8, 7, 4)]


@pytest.mark.parametrize("spec, kind", [("A5", "A"), ("B4", "B"), ("D4", "D"), ("D5", "D")])
def test_barring_predicts_cycle_form(spec, kind):
    for c in all_coxeter_elements(system(spec)):
        got = {normalize_cycle(x) for x in cycles_of(to_one_line(c.element, kind))}
        want = {normalize_cycle(x) for x in coxeter_cycles(c, kind)}
        assert got == want


def test_d_symmetric_and_asymmetric():
    W = system("D4")
    sym = CoxeterElement(W, [0, 1, 2, 3])
    asym = CoxeterElement(W, [0, 2, 1, 3])
    assert barring(sym, "D").symmetric and barring(sym, "D").central == {1, -1}
    assert not barring(asym, "D").symmetric and barring(asym, "D").central == {2, -2}
    for c in (sym, asym):
        b = barring(c, "D")
        assert {4, -4} <= b.upper & b.lower


def test_b2_condition_examples(c_B2):
    b = barring(c_B2, "B")
    W = system("B2")
    p = to_one_line(W.element([1, 0]), "B")
    assert not condition_B(p, b)
    assert condition_witness(p, b) == ("B", (-1, 2, -2))
    q = to_one_line(W.element([1, 0, 1]), "B")
    assert q.entries == (2, -1, 1, -2)
    assert not condition_B(q, b)
    assert condition_witness(q, b)[1] == (-1, 1, -2)
    assert condition_B(to_one_line(W.identity, "B"), b)


def test_identity_always_passes():
    for spec, kind, check in (("A3", "A", condition_A), ("B3", "B", condition_B), ("D4", "D", condition_D)):
        for c in all_coxeter_elements(system(spec)):
            assert check(to_one_line(system(spec).identity, kind), barring(c, kind))


def test_condition_kind_checked(c_B2):
    with pytest.raises(KindMismatch):
        condition_A(to_one_line(system("B2").identity, "B"), barring(c_B2, "B"))


@pytest.mark.parametrize("spec, kind", [("A4", "A"), ("B3", "B"), ("D4", "D")])
def test_conditions_match_sortability(spec, kind):
    W = system(spec)
    for c in all_coxeter_elements(W):
        b = barring(c, kind)
        for w in W.elements():
            p = to_one_line(w, kind)
            assert satisfies_condition(p, b) == is_sortable(w, c)
            if kind != "A":
                assert satisfies_condition(p, b, mirrored=True) == is_sortable(w, c)
            if kind == "B":
                assert condition_B_alternative(p, b) == is_sortable(w, c)


def test_231():
    assert is_231_avoiding(OneLine("A", (1, 2, 3)))
    assert not is_231_avoiding(OneLine("A", (2, 3, 1)))


@pytest.mark.parametrize("spec, count", [("A3", 14), ("A4", 42)])
def test_stack_sortable(spec, count):
    W = system(spec)
    c = CoxeterElement(W, reversed(range(W.rank)))
    avoiders = {w for w in W.elements() if is_231_avoiding(to_one_line(w, "A"))}
    assert avoiders == {w for w in W.elements() if is_sortable(w, c)}
    assert len(avoiders) == count
