import pytest

from coxsort import (
    absolute_length,
    all_coxeter_elements,
    canonical_T_word,
    format_word,
    le_T,
    nc_interval,
    nc_inverse,
    nc_map,
    sortable_elements,
)
from coxsort.errors import NotNoncrossing, NotSortable
from coxsort.noncrossing import TWord, canonical_generators, fixed_space, fixed_space_contains

from conftest import coxeter, system
from oracles import absolute_lengths_bfs

B2_NC = {"1": "1", "s0": "s0", "s0s1": "s0s1s0", "s0s1s0": "s1s0s1", "s0s1s0s1": "s0s1", "s1": "s1"}


def fmt(w):
    return format_word(w.reduced_word())


def test_basic_absolute_lengths(B2):
    assert absolute_length(B2.identity) == 0
    for t in range(B2.num_reflections):
        assert absolute_length(B2.reflection(t)) == 1
    assert absolute_length(B2.element([0, 1])) == 2
    assert absolute_length(B2.longest_element()) == 2


@pytest.mark.parametrize("spec", ["A3", "B3", "H3", "G2"])
def test_absolute_length_oracle(spec):
    W = system(spec)
    dist = absolute_lengths_bfs(W)
    assert len(dist) == W.order
    for w, d in dist.items():
        assert absolute_length(w) == d


def test_coxeter_elements_have_full_rank():
    for spec in ("A3", "D4", "F4"):
        for c in all_coxeter_elements(system(spec)):
            assert absolute_length(c.element) == system(spec).rank


def test_le_T_examples(B2, c_B2):
    assert le_T(B2.identity, B2.element([1, 0, 1]))
    assert le_T(B2.element([0, 1, 0]), c_B2.element)
    assert not le_T(c_B2.element, B2.simple(0))


def test_b2_interval(c_B2):
    interval = nc_interval(c_B2)
    assert {fmt(p.element) for p in interval} == {"1", "s0", "s1", "s0s1s0", "s1s0s1", "s0s1"}
    ranks = [sum(1 for p in interval if p.rank == k) for k in range(3)]
    assert ranks == [1, 4, 1]


def test_a2_interval():
    assert len(nc_interval(coxeter("A2", (0, 1)))) == 5


def test_b2_nc_map(B2, c_B2):
    got = {fmt(w): fmt(nc_map(w, c_B2)) for w in sortable_elements(c_B2)}
    assert got == B2_NC


def test_nc_map_rejects_unsortable(B2, c_B2):
    with pytest.raises(NotSortable):
        nc_map(B2.element([1, 0]), c_B2)


def test_b2_inverse(B2, c_B2):
    assert nc_inverse(B2.element([1, 0, 1]), c_B2) == B2.element([0, 1, 0])
    assert nc_inverse(B2.identity, c_B2) == B2.identity
    assert nc_inverse(c_B2.element, c_B2) == B2.longest_element()
    with pytest.raises(NotNoncrossing):
        nc_inverse(B2.element([1, 0]), c_B2)


def test_canonical_t_word(B2, c_B2):
    assert canonical_T_word(c_B2.element, c_B2) == TWord((0, 1))
    assert canonical_T_word(B2.identity, c_B2) == TWord(())
    for t in range(B2.num_reflections):
        assert canonical_T_word(B2.reflection(t), c_B2) == TWord((t,))


@pytest.mark.parametrize("spec", ["A3", "B3", "H3", "D4"])
def test_nc_bijection(spec):
    W = system(spec)
    for c in all_coxeter_elements(W):
        interval = {p.element: p for p in nc_interval(c)}
        images = [nc_map(w, c) for w in sortable_elements(c)]
        assert len(set(images)) == len(images)
        assert set(images) == set(interval)
        for w, x in zip(sortable_elements(c), images):
            assert len(w.descents()) == interval[x].rank
            word = canonical_T_word(x, c)
            assert word.is_reduced(W) and word.product(W) == x
            assert tuple(sorted(word.letters)) == interval[x].canonical_generators


def test_fixed_spaces(B2):
    assert fixed_space(B2.identity).shape == (2, 2)
    assert fixed_space(B2.simple(0)).shape == (2, 1)
    assert fixed_space(B2.longest_element()).shape == (2, 0)
    assert fixed_space_contains(B2.simple(0), B2.element([0, 1]))
    assert not fixed_space_contains(B2.element([0, 1]), B2.simple(0))


def test_canonical_generators_of_rank_one(B2):
    assert canonical_generators(B2.element([0, 1, 0])) == (2,)


def test_subspaces_theorem():
    for c in all_coxeter_elements(system("A3")):
        elems = [p.element for p in nc_interval(c)]
        for x in elems:
            for y in elems:
                assert le_T(x, y) == fixed_space_contains(x, y)


def test_prefix_reading_of_absolute_order():
    # x <=_T y iff x^{-1} y <=_T y, checked on the interval of A3
    for c in all_coxeter_elements(system("A3")):
        elems = [p.element for p in nc_interval(c)]
        for x in elems:
            for y in elems:
                assert le_T(x, y) == le_T(x.inverse * y, y)
