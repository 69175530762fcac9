# tests/test_io.py
import json

import pytest

from core.errors import BudgetExceeded, DocumentError, InvalidParameter, OutOfRange
from core.graph import are_isomorphic_bruteforce, build_graph, complete_graph, cycle_graph, path_graph
from adjacency.matrices import incidence_matrix
from adjacency.motifs import standard_motif, subgraph_counts
from hogdm.structures import build_hypergraph
from io_ops.corpus import enumerate_corpus, load_corpus, sample_pairs, save_corpus
from io_ops.documents import (
    dump_document,
    load_document,
    read_document,
    read_edge_list,
    to_document,
    write_edge_list,
    write_features_csv,
)
from io_ops.reports import (
    channels_frame,
    count_frame,
    counts_from_channels,
    matrix_frame,
    read_report,
    to_csv_text,
)
from transform.lifting import cell_lift, iso_type_lift
from transform.subgraphs import ego_net_collection
from wiring.channels import channel_count, compile_imp

# ----------------------------------------------------------------------------
# Documents
# ----------------------------------------------------------------------------


def test_documents_load_back_to_equal_structures():
    structures = [
        build_graph(3, [(0, 1), (1, 2)], [[0.5], [1.0], [2.25]]),
        build_hypergraph(4, [[0, 1, 2], [2, 3]], hyperedge_features=[[1.0], [3.0]]),
        cell_lift(cycle_graph(5), 2, 5, 0),
        iso_type_lift(path_graph(3), 2),
        ego_net_collection(path_graph(4), 1),
        subgraph_counts(complete_graph(4), [standard_motif("triangle")]),
    ]
    for H in structures:
        assert load_document(dump_document(H)) == H, H.kind


def test_dump_is_byte_stable():
    C = cell_lift(cycle_graph(6), 2, 6, 0)
    assert dump_document(C) == dump_document(C)
    assert dump_document(C).endswith("}\n")
    assert list(json.loads(dump_document(C))) == sorted(to_document(C))


def test_bad_documents():
    with pytest.raises(DocumentError):
        load_document("not json")
    with pytest.raises(DocumentError):
        load_document('{"kind": "blob"}')
    with pytest.raises(DocumentError):
        load_document('{"kind": "graph"}')
    with pytest.raises(DocumentError):
        load_document("[1, 2]")
    with pytest.raises(OutOfRange):
        load_document('{"kind": "graph", "n": 2, "edges": [[0, 5]]}')


def test_edge_lists():
    G = read_edge_list("3 2\n0 1\n1 2\n")
    assert G == path_graph(3)
    assert write_edge_list(G) == "3 2\n0 1\n1 2\n"
    featured = read_edge_list("2 1\n# comment\n0 1\n", "1.5\n-2\n")
    assert featured.features == ((1.5,), (-2.0,))
    assert read_edge_list("2 1\n0 1\n", write_features_csv(featured)) == featured
    with pytest.raises(DocumentError):
        read_edge_list("3 2\n0 1\n")
    with pytest.raises(DocumentError):
        read_edge_list("0 1\nx y\n")
    with pytest.raises(DocumentError):
        read_edge_list("")


def test_read_document_by_suffix(tmp_path):
    (tmp_path / "p3.txt").write_text("3 2\n0 1\n1 2\n", encoding="utf-8")
    (tmp_path / "c4.json").write_text(dump_document(cycle_graph(4)), encoding="utf-8")
    assert read_document(tmp_path / "p3.txt") == path_graph(3)
    assert read_document(tmp_path / "c4.json") == cycle_graph(4)
    with pytest.raises(DocumentError):
        read_document(tmp_path / "missing.json")


# ----------------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------------


def test_reports_carry_the_seed():
    frame = count_frame({"incidence-up": 5, "incidence-down": 5})
    text = to_csv_text(frame, seed=3)
    assert text.splitlines()[:2] == ["# seed=3", "tag,count"]
    assert text.splitlines()[-1] == "total,10"
    assert read_report(text).equals(frame)


def test_channel_table_counts_back():
    W = compile_imp(build_hypergraph(3, [[0, 1, 2], [1, 2]]))
    frame = channels_frame(W)
    assert list(frame.columns) == ["src", "dst", "tag", "via", "slot", "weight"]
    assert counts_from_channels(read_report(to_csv_text(frame, seed=0))) == channel_count(W)
    with pytest.raises(DocumentError):
        counts_from_channels(frame.drop(columns=["tag"]))


def test_matrix_frame_names_rows():
    frame = matrix_frame(incidence_matrix(build_hypergraph(3, [[0, 1], [1, 2]])))
    assert list(frame.columns) == ["entity", "0-1", "1-2"]
    assert len(frame) == 3


# ----------------------------------------------------------------------------
# Corpora
# ----------------------------------------------------------------------------


def test_enumeration_counts_isomorphism_classes():
    corpus = enumerate_corpus(6)
    assert [len(corpus.of_size(n)) for n in range(1, 7)] == [1, 2, 4, 11, 34, 156]
    assert corpus.names[:3] == ("n1_g0000", "n2_g0000", "n2_g0001")


def test_enumeration_without_dedup_and_limits():
    assert len(enumerate_corpus(3, dedup=False)) == 1 + 2 + 8
    with pytest.raises(InvalidParameter):
        enumerate_corpus(0)
    with pytest.raises(BudgetExceeded):
        enumerate_corpus(8)


def test_corpus_directory_round_trip(tmp_path):
    corpus = enumerate_corpus(4)
    save_corpus(corpus, tmp_path / "corpus")
    loaded = load_corpus(tmp_path / "corpus")
    assert loaded.names == corpus.names
    assert loaded.graphs == corpus.graphs
    with pytest.raises(DocumentError):
        load_corpus(tmp_path / "nowhere")


def test_sampled_pairs_are_seeded():
    a = sample_pairs(6, 6, seed=11)
    assert a == sample_pairs(6, 6, seed=11)
    assert all(are_isomorphic_bruteforce(G, H) for _, G, _, H in a[:3])
    assert [name for name, _, _, _ in a] == [f"p{i:04d}a" for i in range(6)]


def test_sampled_pairs_at_a_fixed_size():
    pairs = sample_pairs(10, 7, seed=2, n_min=7)
    assert {G.n for _, G, _, _ in pairs} == {7}
    assert {H.n for _, _, _, H in pairs} == {7}
    assert sample_pairs(6, 6, seed=11, n_min=2) == sample_pairs(6, 6, seed=11)
    with pytest.raises(InvalidParameter):
        sample_pairs(4, 5, seed=0, n_min=6)
    with pytest.raises(InvalidParameter):
        sample_pairs(4, 5, seed=0, n_min=0)
