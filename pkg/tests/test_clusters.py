import itertools

import pytest

from coxsort import all_coxeter_elements, cl_map, compatible, enumerate_clusters, mu, negative, sigma, sortable_elements
from coxsort.clusters import Cluster, almost_reflections, format_almost
from coxsort import format_word

from conftest import coxeter, system

B2_CL = {
    "1": {"-s0", "-s1"},
    "s0": {"s0", "-s1"},
    "s0s1": {"s0", "s0s1s0"},
    "s0s1s0": {"s1s0s1", "s0s1s0"},
    "s0s1s0s1": {"s1s0s1", "s1"},
    "s1": {"-s0", "s1"},
}


def names(system_, cluster):
    return {format_almost(system_, t) for t in cluster.members}


def test_sigma_cases(B2):
    assert sigma(B2, 0, negative(0)) == 0
    assert sigma(B2, 0, 0) == negative(0)
    assert sigma(B2, 0, negative(1)) == negative(1)
    assert format_almost(B2, sigma(B2, 0, 1)) == "s0s1s0"


def test_sigma_involution():
    W = system("H3")
    for s in range(W.rank):
        for t in almost_reflections(W):
            assert sigma(W, s, sigma(W, s, t)) == t


def test_mu(c_B2):
    assert mu(negative(0), c_B2) == 0
    assert mu(negative(1), c_B2) == 1
    assert mu(0, c_B2) == 2


def test_mu_zero_only_for_initial_negatives():
    for c in all_coxeter_elements(system("A3")):
        for t in almost_reflections(c.system):
            zero = t < 0 and -1 - t in c.initial_letters()
            assert (mu(t, c) == 0) == zero


def test_b2_compatibility(c_B2):
    assert compatible(negative(0), 1, c_B2)
    assert not compatible(negative(0), 0, c_B2)
    assert compatible(0, 2, c_B2)
    with pytest.raises(ValueError):
        compatible(0, 0, c_B2)


def test_b2_clusters(B2, c_B2):
    clusters = enumerate_clusters(c_B2)
    assert sorted(map(sorted, (names(B2, k) for k in clusters))) == sorted(map(sorted, B2_CL.values()))
    assert sum(k.positive for k in clusters) == 3


def test_b2_cl_map(B2, c_B2):
    got = {format_word(w.reduced_word()): names(B2, cl_map(w, c_B2)) for w in sortable_elements(c_B2)}
    assert got == B2_CL


def test_a2_cluster_count():
    assert len(enumerate_clusters(coxeter("A2", (0, 1)))) == 5


def test_cluster_order_deterministic(c_B2):
    assert enumerate_clusters(c_B2) == tuple(sorted(enumerate_clusters(c_B2), key=lambda k: [(t >= 0, t if t >= 0 else -1 - t) for t in k.members]))
    assert Cluster.of([3, negative(1), 0]).members == (negative(1), 0, 3)


@pytest.mark.parametrize("spec", ["A3", "B3", "H3", "D4"])
def test_cl_bijection(spec):
    W = system(spec)
    full = frozenset(range(W.rank))
    for c in all_coxeter_elements(W):
        clusters = set(enumerate_clusters(c))
        images = {}
        for w in sortable_elements(c):
            k = cl_map(w, c)
            assert k not in images
            images[k] = w
            assert len(k) == W.rank
            assert k.positive == (w.support() == full)
        assert set(images) == clusters


@pytest.mark.parametrize("spec", ["A3", "B3", "H3"])
def test_compatibility_from_clusters(spec):
    W = system(spec)
    for c in all_coxeter_elements(W):
        together = set()
        for w in sortable_elements(c):
            together.update(itertools.combinations(sorted(cl_map(w, c).members), 2))
        for t1, t2 in itertools.combinations(sorted(almost_reflections(W)), 2):
            assert compatible(t1, t2, c) == ((t1, t2) in together)


def test_compatibility_symmetric_and_inverse_invariant():
    W = system("H3")
    for c in all_coxeter_elements(W):
        for t1, t2 in itertools.combinations(almost_reflections(W), 2):
            assert compatible(t1, t2, c) == compatible(t2, t1, c) == compatible(t1, t2, c.inverse())


def test_restricted_compatibility():
    W = system("B3")
    for c in all_coxeter_elements(W):
        J = frozenset({0, 1})
        nodes = almost_reflections(W, J)
        for t1, t2 in itertools.combinations(nodes, 2):
            assert compatible(t1, t2, c) == compatible(t1, t2, c.restrict(J))
