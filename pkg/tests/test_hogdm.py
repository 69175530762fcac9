# tests/test_hogdm.py
import pytest

from core.errors import DuplicateEdge, EmptyStructure, InvalidParameter, KindMismatch, SizeMismatch, TooLarge, UnknownEntity
from core.graph import build_graph, complete_graph, cycle_graph, empty_graph, path_graph
from adjacency.motifs import standard_motif, subgraph_counts
from hogdm.queries import dimension, entity_classes, entity_refs, ho_isomorphic_bruteforce, p_node_sets, relabel
from hogdm.structures import (
    EntityRef,
    SimplicialComplex,
    build_cell_complex,
    build_hypergraph,
    build_nested_graph,
    build_node_tuple_collection,
    build_simplicial_complex,
    graph_as_hypergraph,
)
from hogdm.validation import validate
from transform.lifting import cell_lift, clique_complex_lift, motif_lift
from transform.subgraphs import ego_net_collection, node_deleted_collection


def test_hyperedges_in_canonical_order_with_features():
    H = build_hypergraph(4, [[0, 1, 2], [3, 0]], hyperedge_features=[[1.0], [2.0]])
    assert H.hyperedges == (frozenset({0, 3}), frozenset({0, 1, 2}))
    assert H.hyperedge_features == ((2.0,), (1.0,))
    assert H.memberships[0] == (0, 1)


def test_hypergraph_builder_rejects_bad_input():
    with pytest.raises(InvalidParameter):
        build_hypergraph(3, [[]])
    with pytest.raises(DuplicateEdge):
        build_hypergraph(3, [[0, 1], [1, 0]])
    with pytest.raises(DuplicateEdge):
        build_hypergraph(3, [[0, 0, 1]])


def test_graph_read_as_hypergraph():
    H = graph_as_hypergraph(path_graph(3), SimplicialComplex)
    assert H.kind == "sc"
    assert H.hyperedges == (frozenset({0, 1}), frozenset({1, 2}))


def test_entity_order_vertices_first():
    H = build_hypergraph(2, [[0, 1]])
    assert entity_refs(H) == [EntityRef("vertex", 0), EntityRef("vertex", 1), EntityRef("hyperedge", 0)]
    assert str(entity_refs(H)[2]) == "hyperedge:0"


def test_simplicial_state_classes_by_dimension():
    S = clique_complex_lift(complete_graph(3), 3)
    classes = entity_classes(S)
    assert list(classes) == ["simplex_0", "simplex_1", "simplex_2"]
    assert [len(refs) for refs in classes.values()] == [3, 3, 1]


def test_node_sets_and_dimension():
    S = clique_complex_lift(complete_graph(4), 4)
    assert len(p_node_sets(S, 0)) == 4
    assert len(p_node_sets(S, 1)) == 6
    assert len(p_node_sets(S, 2)) == 4
    assert dimension(S) == 3
    with pytest.raises(EmptyStructure):
        dimension(build_simplicial_complex(0, []))
    with pytest.raises(KindMismatch):
        dimension(path_graph(3))


def test_cell_complex_dimension_and_order():
    C = build_cell_complex([(2, 1, [0, 1]), (0, 0, []), (1, 0, [])])
    assert [c.id for c in C.cells] == [0, 1, 2]
    assert dimension(C) == 1
    assert C.vertex_sets[2] == frozenset({0, 1})


def test_cell_builder_rejects_unknown_boundary():
    with pytest.raises(UnknownEntity):
        build_cell_complex([(0, 0, []), (1, 1, [0, 5])])


def test_tuples_and_nested_builders():
    with pytest.raises(DuplicateEdge):
        build_node_tuple_collection(path_graph(2), [(0, 1), (0, 1)])
    with pytest.raises(SizeMismatch):
        build_nested_graph(path_graph(3), [path_graph(2)])


# ----------------------------------------------------------------------------
# Validation
# ----------------------------------------------------------------------------


def test_lifted_complexes_validate():
    assert validate(clique_complex_lift(complete_graph(4), 4)).ok
    assert validate(cell_lift(cycle_graph(6), 2, 6, 0)).ok
    assert validate(path_graph(4)).ok


def test_missing_faces_reported():
    report = validate(build_simplicial_complex(3, [[0, 1, 2]]))
    assert not report.ok
    assert len(report.violations) == 3
    assert all("missing subset" in v.message for v in report.violations)


def test_singleton_hyperedge_in_complex_reported():
    report = validate(build_simplicial_complex(2, [[0]]))
    assert [r["entity"] for r in report.as_records()] == ["hyperedge {0}"]


def test_open_two_cell_reported():
    cells = [(0, 0, []), (1, 0, []), (2, 0, []), (3, 1, [0, 1]), (4, 1, [1, 2]), (5, 2, [3, 4])]
    report = validate(build_cell_complex(cells))
    assert [v.entity for v in report.violations] == ["cell 5"]
    assert "closed cycle" in report.violations[0].message


def test_bad_cell_boundaries_reported():
    cells = [(0, 0, []), (1, 0, []), (2, 1, [0]), (3, 2, [0, 1])]
    report = validate(build_cell_complex(cells))
    assert {v.entity for v in report.violations} == {"cell 2", "cell 3"}


# ----------------------------------------------------------------------------
# Relabeling and structure isomorphism
# ----------------------------------------------------------------------------


def test_relabeled_hypergraph_is_isomorphic():
    H = build_hypergraph(4, [[0, 1, 2], [2, 3]])
    assert ho_isomorphic_bruteforce(H, relabel(H, [3, 2, 1, 0]))
    assert not ho_isomorphic_bruteforce(H, build_hypergraph(4, [[0, 1, 2], [0, 1]]))


def test_relabeled_cell_complex_is_isomorphic():
    C = cell_lift(cycle_graph(5), 2, 5, 0)
    assert ho_isomorphic_bruteforce(C, relabel(C, [4, 0, 3, 1, 2]))
    assert not ho_isomorphic_bruteforce(C, cell_lift(cycle_graph(5), 2, 4, 0))


def test_relabeled_collections_are_isomorphic():
    G = path_graph(4)
    p = [2, 0, 3, 1]
    structures = [
        build_node_tuple_collection(G, [(0, 1), (1, 1), (3, 2, 0)]),
        ego_net_collection(G, 1),
        node_deleted_collection(G),
        motif_lift(G, [standard_motif("path3")]),
        subgraph_counts(G, [standard_motif("path3")]),
        build_nested_graph(G, [complete_graph(3), path_graph(2), empty_graph(0), path_graph(3)]),
    ]
    for S in structures:
        assert ho_isomorphic_bruteforce(S, relabel(S, p)), S.kind


def test_collections_that_differ_are_not_isomorphic():
    G = path_graph(4)
    inner = [complete_graph(3), path_graph(2), empty_graph(0), path_graph(3)]
    swapped = [path_graph(2), complete_graph(3), empty_graph(0), path_graph(3)]
    assert not ho_isomorphic_bruteforce(build_nested_graph(G, inner), build_nested_graph(G, swapped))
    triangle, path3 = standard_motif("triangle"), standard_motif("path3")
    assert not ho_isomorphic_bruteforce(subgraph_counts(G, [triangle]), subgraph_counts(G, [path3]))
    assert not ho_isomorphic_bruteforce(motif_lift(G, [path3]), motif_lift(cycle_graph(4), [path3]))
    a = build_node_tuple_collection(G, [(0, 1)])
    assert ho_isomorphic_bruteforce(a, build_node_tuple_collection(G, [(3, 2)]))
    assert not ho_isomorphic_bruteforce(a, build_node_tuple_collection(G, [(1, 0)]))
    featured = build_graph(3, [(0, 1), (1, 2)], [[1.0], [2.0], [1.0]])
    assert not ho_isomorphic_bruteforce(ego_net_collection(featured, 1), ego_net_collection(path_graph(3), 1))


def test_isomorphism_refuses_mixed_kinds_and_large_inputs():
    with pytest.raises(KindMismatch):
        ho_isomorphic_bruteforce(build_hypergraph(2, [[0, 1]]), build_simplicial_complex(2, [[0, 1]]))
    big = build_hypergraph(9, [])
    with pytest.raises(TooLarge):
        ho_isomorphic_bruteforce(big, big)
