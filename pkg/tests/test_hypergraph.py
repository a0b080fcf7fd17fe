import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from hyperlap import (
    ArgumentError,
    InputError,
    Simplex,
    SimplexLookupError,
    register_hypergraph,
    remove_hyperedges,
)
from hyperlap.toy import TOY_HYPEREDGES

from conftest import hypergraphs, random_hypergraph


def brute_neighbors(registry, a):
    va = set(registry[a].vertices)
    out = set()
    for b in range(len(registry)):
        vb = set(registry[b].vertices)
        if va < vb or vb < va:
            out.add(b)
    return out


class TestRegister:
    def test_toy_counts(self, toy):
        assert [toy.count(k) for k in range(3)] == [6, 8, 3]
        assert toy.n == 2
        assert len(toy) == 17

    def test_toy_keeps_input_order(self, toy):
        assert [s.vertices for s in toy.simplices[6:]] == list(TOY_HYPEREDGES)

    def test_single_vertex(self):
        reg = register_hypergraph({1}, [])
        assert reg.n == 0
        assert len(reg) == 1

    def test_duplicates_merge(self):
        reg = register_hypergraph({1, 2}, [{1, 2}, {2, 1}])
        assert reg.count(1) == 1
        assert reg[reg.id_of((1, 2))].weight == 1.0

    def test_multiplicity_policy_adds_weights(self):
        reg = register_hypergraph({1, 2, 3}, [({1, 2}, 1.0), ({2, 1}, 1.5), ({1, 3}, 1.0)], policy="multiplicity")
        assert reg[reg.id_of((1, 2))].weight == 2.5
        assert reg[reg.id_of((1, 3))].weight == 1.0

    def test_isolated_vertex_is_present(self):
        reg = register_hypergraph([1, 2, 3], [(1, 2)])
        assert reg.vertices == (1, 2, 3)
        assert reg.neighbors(reg.id_of([3])) == set()

    def test_singleton_hyperedge_does_not_duplicate_vertex(self):
        reg = register_hypergraph([1, 2], [(1,), (1, 2), (1,)])
        assert reg.count(0) == 2 and reg.count(1) == 1

    def test_unknown_vertex(self):
        with pytest.raises(InputError, match="unknown"):
            register_hypergraph({1, 2}, [(1, 3)])

    def test_empty_hyperedge(self):
        with pytest.raises(InputError, match="empty"):
            register_hypergraph({1, 2}, [()])

    def test_simplex_rejects_unsorted(self):
        with pytest.raises(InputError):
            Simplex((2, 1))
        with pytest.raises(InputError):
            Simplex((1, 1))

    def test_lookup_errors(self, toy):
        with pytest.raises(SimplexLookupError):
            toy[17]
        with pytest.raises(SimplexLookupError):
            toy.id_of((2, 6))
        with pytest.raises(SimplexLookupError):
            toy.neighbors(-1)


class TestAdjacency:
    def test_subset_pair(self, toy):
        assert toy.adjacent(toy.id_of((1, 3)), toy.id_of((1, 3, 4)))

    def test_equal_dimension(self, toy):
        assert not toy.adjacent(toy.id_of((1, 2)), toy.id_of((1, 3)))

    def test_vertex_three_has_seven_neighbors(self, toy):
        assert len(toy.neighbors(toy.id_of([3]))) == 7

    def test_vertex_two(self, toy):
        assert toy.neighbors(toy.id_of([2])) == {toy.id_of((1, 2))}

    def test_triangle_neighbors(self, toy):
        got = toy.neighbors(toy.id_of((1, 3, 4)))
        want = {toy.id_of(v) for v in ([1], [3], [4], (1, 3), (3, 4), (1, 4))}
        assert got == want

    def test_vertex_to_triangle_without_edge(self):
        # adjacency is any proper subset, not only codimension one
        reg = register_hypergraph({1, 2, 3}, [(1, 2, 3)])
        assert reg.adjacent(reg.id_of([1]), reg.id_of((1, 2, 3)))

    @settings(max_examples=100, deadline=None)
    @given(hypergraphs())
    def test_neighbors_match_brute_force(self, reg):
        for a in range(len(reg)):
            assert reg.neighbors(a) == brute_neighbors(reg, a)

    @settings(max_examples=50, deadline=None)
    @given(hypergraphs())
    def test_symmetric_irreflexive(self, reg):
        for a, b in itertools.product(range(len(reg)), repeat=2):
            assert reg.adjacent(a, b) == reg.adjacent(b, a)
            if reg.adjacent(a, b):
                assert reg.dim(a) != reg.dim(b)
        assert not any(reg.adjacent(a, a) for a in range(len(reg)))

    @settings(max_examples=50, deadline=None)
    @given(hypergraphs())
    def test_dimension_major_ids(self, reg):
        dims = reg.dims()
        assert dims == sorted(dims)


class TestRemove:
    def test_remove_edge(self, toy):
        out = remove_hyperedges(toy, [toy.id_of((1, 3))])
        assert (1, 3) not in out
        assert out.count(1) == 7
        assert out.vertices == toy.vertices

    def test_remove_everything(self, toy):
        out = remove_hyperedges(toy, toy.hyperedge_ids())
        assert len(out) == 6 and out.n == 0

    def test_remove_vertex_rejected(self, toy):
        with pytest.raises(ArgumentError):
            remove_hyperedges(toy, [0])

    def test_original_untouched(self, toy):
        remove_hyperedges(toy, [6, 7])
        assert len(toy) == 17


def test_random_generator_is_valid():
    rng = np.random.default_rng(3)
    for _ in range(20):
        reg = random_hypergraph(rng)
        assert reg.num_vertices >= 1
