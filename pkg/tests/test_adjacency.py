# tests/test_adjacency.py
import numpy as np
import pytest

from core.errors import EmptyClass, InvalidParameter, MotifTooLarge, UnknownEntity, UnknownTuple
from core.graph import complete_graph, cycle_graph, empty_graph, path_graph
from adjacency.matrices import (
    boundary_matrix,
    cell_adjacency_matrix,
    hypergraph_operator,
    incidence_matrix,
    masked_power,
    symmetric_normalize,
)
from adjacency.motifs import motif_adjacency, motif_copies, standard_motif, subgraph_counts
from adjacency.neighborhoods import (
    boundary,
    coboundary,
    down_adjacency,
    local_down_adjacency,
    lower_adjacent,
    upper_adjacent,
)
from hogdm.structures import EntityRef, build_hypergraph
from transform.lifting import cell_lift, clique_complex_lift, iso_type_lift

V = lambda i: EntityRef("vertex", i)
E = lambda j: EntityRef("hyperedge", j)


@pytest.fixture
def triangle_complex():
    # hyperedges in order: {0,1}, {0,2}, {1,2}, {0,1,2}
    return clique_complex_lift(complete_graph(3), 3)


# ----------------------------------------------------------------------------
# Boundary relations
# ----------------------------------------------------------------------------


def test_boundary_is_every_proper_subset(triangle_complex):
    assert boundary(triangle_complex, E(3)) == {V(0), V(1), V(2), E(0), E(1), E(2)}
    assert boundary(triangle_complex, E(0)) == {V(0), V(1)}
    assert boundary(triangle_complex, V(0)) == set()


def test_coboundary_of_a_vertex(triangle_complex):
    assert coboundary(triangle_complex, V(0)) == {E(0), E(1), E(3)}


def test_upper_and_lower_adjacency(triangle_complex):
    assert upper_adjacent(triangle_complex, E(0), same_dimension=True) == {E(1), E(2)}
    assert E(0) in upper_adjacent(triangle_complex, E(0), exclude_self=False)
    assert lower_adjacent(triangle_complex, V(0)) == set()
    assert lower_adjacent(triangle_complex, E(0), same_dimension=True) == {E(1), E(2)}


def test_unknown_entity(triangle_complex):
    with pytest.raises(UnknownEntity):
        boundary(triangle_complex, E(9))


def test_cell_relations_use_covering():
    C = cell_lift(cycle_graph(4), 2, 4, 0)
    face = EntityRef("cell", 8)
    assert len(boundary(C, face)) == 4
    assert all(C.by_id[b.id].dim == 1 for b in boundary(C, face))
    assert len(coboundary(C, EntityRef("cell", 0))) == 2


# ----------------------------------------------------------------------------
# Tuple down-adjacency
# ----------------------------------------------------------------------------


def test_down_adjacency_of_a_pair():
    C = iso_type_lift(complete_graph(3), 2)
    assert down_adjacency(C, (0, 1)) == {(1, 1), (2, 1), (0, 0), (0, 2)}
    assert len(down_adjacency(C, (0, 1), inclusive=True)) == 5


def test_local_down_adjacency_follows_edges():
    C = iso_type_lift(path_graph(3), 2)
    assert local_down_adjacency(C, (0, 2)) == {(1, 2), (0, 1)}


def test_unknown_tuple():
    C = iso_type_lift(path_graph(3), 2)
    with pytest.raises(UnknownTuple):
        down_adjacency(C, (5, 5))


# ----------------------------------------------------------------------------
# Matrices
# ----------------------------------------------------------------------------


def test_incidence_matrix():
    M = incidence_matrix(build_hypergraph(3, [[0, 1], [1, 2]]))
    assert M.values.tolist() == [[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    assert M.cols == ("0-1", "1-2")


def test_boundary_matrices(triangle_complex):
    B1 = boundary_matrix(triangle_complex, 1)
    assert B1.shape == (3, 3)
    assert B1.values.sum(axis=0).tolist() == [2.0, 2.0, 2.0]
    B2 = boundary_matrix(triangle_complex, 2)
    assert B2.shape == (3, 1)
    assert B2.values.sum() == 3.0
    with pytest.raises(EmptyClass):
        boundary_matrix(triangle_complex, 0)
    with pytest.raises(EmptyClass):
        boundary_matrix(clique_complex_lift(path_graph(3), 3), 2)


def test_cell_adjacency_counts_shared_cofaces():
    C = cell_lift(cycle_graph(4), 2, 4, 0)
    A = cell_adjacency_matrix(C).values
    assert np.array_equal(A[:4, :4], cycle_graph(4).adjacency_matrix().astype(float))
    assert A.sum() == 20.0


def test_masked_power_maps_zero_to_zero():
    assert masked_power(np.array([0.0, 4.0]), -0.5).tolist() == [0.0, 0.5]


def test_hypergraph_operator_on_one_edge():
    B = incidence_matrix(build_hypergraph(2, [[0, 1]])).values
    assert np.allclose(hypergraph_operator(B), [[0.5, 0.5], [0.5, 0.5]])


def test_symmetric_normalize_handles_empty_rows():
    M = symmetric_normalize(np.array([[1.0, 1.0], [0.0, 0.0]]))
    assert np.allclose(M[1], 0.0)
    assert np.allclose(M[0], [1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0)])


# ----------------------------------------------------------------------------
# Motifs
# ----------------------------------------------------------------------------


def test_motif_copies_count_subgraphs_once():
    assert len(motif_copies(complete_graph(4), standard_motif("triangle"))) == 4
    assert len(motif_copies(complete_graph(4), standard_motif("square"))) == 3
    assert len(motif_copies(complete_graph(3), standard_motif("path3"))) == 3


def test_motif_copies_are_edge_sets_not_embeddings():
    K5 = complete_graph(5)
    assert len(motif_copies(K5, standard_motif("triangle"))) == 10
    assert len(motif_copies(K5, standard_motif("path3"))) == 30
    assert len(motif_copies(K5, standard_motif("square"))) == 15
    assert len(motif_copies(complete_graph(4), standard_motif("star3"))) == 4
    assert motif_copies(cycle_graph(4), standard_motif("square")) == {
        (frozenset(range(4)), frozenset([(0, 1), (1, 2), (2, 3), (0, 3)]))
    }
    assert motif_copies(path_graph(3), standard_motif("triangle")) == set()


def test_motif_adjacency_and_counts():
    W = motif_adjacency(complete_graph(4), standard_motif("triangle"))
    assert np.array_equal(W, 2 * (np.ones((4, 4), dtype=int) - np.eye(4, dtype=int)))
    counts = subgraph_counts(complete_graph(4), [standard_motif("triangle")])
    assert counts.vertex_counts == ((3,), (3,), (3,), (3,))
    assert set(counts.edge_counts) == {(2,)}


def test_motif_limits():
    with pytest.raises(InvalidParameter):
        standard_motif("pentagon")
    with pytest.raises(MotifTooLarge):
        motif_copies(complete_graph(6), complete_graph(6))
    with pytest.raises(InvalidParameter):
        motif_copies(complete_graph(3), empty_graph(2))
