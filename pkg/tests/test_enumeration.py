import json
from fractions import Fraction

import pytest

from coxsort import CoxeterSystem, all_coxeter_elements, catalan_formula, count_report, degrees, verify_all
from coxsort.enumeration import CHECK_NAMES, Degrees, positive_catalan_formula
from coxsort.errors import NonInteger

from conftest import coxeter, system


@pytest.mark.parametrize(
    "spec, h, exps",
    [("A2", 3, (1, 2)), ("B2", 4, (1, 3)), ("A3", 4, (1, 2, 3)), ("D4", 6, (1, 3, 3, 5)),
     ("H3", 10, (1, 5, 9)), ("F4", 12, (1, 5, 7, 11)), ("E6", 12, (1, 4, 5, 7, 8, 11))],
)
def test_degrees(spec, h, exps):
    d = degrees(system(spec))
    assert d.h == h and d.exponents == exps


@pytest.mark.parametrize("m", range(3, 9))
def test_dihedral_degrees(m):
    d = degrees(system(f"I2({m})"))
    assert d.h == m and d.exponents == (1, m - 1)
    assert catalan_formula(d) == m + 2


def test_group_order_from_degrees():
    for spec in ("A3", "B3", "H3", "D4"):
        assert degrees(system(spec)).group_order == system(spec).order


@pytest.mark.parametrize("spec, cat", [("A2", 5), ("B2", 6), ("H3", 32), ("H4", 280), ("E6", 833), ("E8", 25080)])
def test_catalan_formula(spec, cat):
    assert catalan_formula(degrees(system(spec))) == cat


@pytest.mark.parametrize("n", range(1, 6))
def test_catalan_closed_forms(n):
    from math import comb

    assert catalan_formula(degrees(system(f"A{n}"))) == comb(2 * n + 2, n + 1) // (n + 2)
    if n >= 2:
        assert catalan_formula(degrees(system(f"B{n}"))) == comb(2 * n, n)
    if n >= 4:
        assert catalan_formula(degrees(system(f"D{n}"))) == comb(2 * n, n) - comb(2 * n - 2, n - 1)


def test_non_integer_detected():
    with pytest.raises(NonInteger):
        catalan_formula(Degrees(((5, (2,)),)))


def test_reducible_degrees():
    W = CoxeterSystem([[1, 2, 2], [2, 1, 3], [2, 3, 1]])
    d = degrees(W)
    assert d.components == ((2, (1,)), (3, (1, 2)))
    assert catalan_formula(d) == 10
    assert positive_catalan_formula(d) == 2


def test_b2_count_report(c_B2):
    rep = count_report(c_B2)
    assert rep.catalan == rep.sortable_count == rep.nc_count == rep.cluster_count == 6
    assert rep.narayana == rep.narayana_nc == [1, 4, 1]
    assert rep.positive_catalan == rep.full_support_count == rep.positive_cluster_count == 3
    assert rep.all_match


def test_a3_count_report():
    for c in all_coxeter_elements(system("A3")):
        rep = count_report(c)
        assert rep.catalan == 14 and rep.narayana == [1, 6, 6, 1] and rep.all_match


def test_verify_b2(c_B2):
    rep = verify_all(c_B2, mode="exhaustive")
    assert rep.ok
    assert [ch.name for ch in rep.checks] == list(CHECK_NAMES)
    data = json.loads(rep.to_json())
    assert data["schema_version"] == 1 and data["coxeter_word"] == [0, 1]


def test_verify_a3_all():
    for c in all_coxeter_elements(system("A3")):
        assert verify_all(c, mode="exhaustive").ok


def test_sampled_is_deterministic():
    c = coxeter("B3", (0, 1, 2))
    a = verify_all(c, mode="sampled", seed=7, samples=50).to_json()
    b = verify_all(c, mode="sampled", seed=7, samples=50).to_json()
    assert a == b


def test_failures_are_reported(monkeypatch, c_B2):
    import coxsort.enumeration as enum

    original = enum.is_aligned
    monkeypatch.setattr(enum, "is_aligned", lambda w, c: original(w, c.inverse()))
    rep = verify_all(c_B2, mode="exhaustive", only=["align"])
    assert not rep.ok and rep.failures[0].witness.startswith("w=")


def test_unknown_check(c_B2):
    with pytest.raises(ValueError):
        verify_all(c_B2, only=["nope"])
