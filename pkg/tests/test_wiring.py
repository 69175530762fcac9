# tests/test_wiring.py
import numpy as np
import pytest

from core.errors import EmptyRelationSet, InvalidParameter, KindMismatch, MixedTupleLengths, UnknownFunctionKind
from core.graph import complete_graph, cycle_graph, path_graph
from engine.presets import list_presets, load_preset
from hogdm.structures import SimplicialComplex, build_hypergraph, graph_as_hypergraph
from transform.lifting import cell_lift, clique_complex_lift, iso_type_lift
from transform.subgraphs import ego_net_collection
from wiring.channels import (
    channel_count,
    channel_total,
    compile_bamp,
    compile_cwn,
    compile_damp,
    compile_imp,
    compile_multihop,
    compile_subgraph,
    damp_channel_total,
    damp_complexity_bound,
)
from wiring.flavor import FlavorTag, classify_flavor, message_kinds


def random_hypergraph(rng, n=6, m=4):
    sets = set()
    while len(sets) < m:
        size = int(rng.integers(1, n + 1))
        sets.add(frozenset(int(v) for v in rng.choice(n, size=size, replace=False)))
    return build_hypergraph(n, [sorted(e) for e in sets])


# ----------------------------------------------------------------------------
# IMP
# ----------------------------------------------------------------------------


def test_imp_counts_incidences_both_ways():
    W = compile_imp(build_hypergraph(3, [[0, 1, 2], [1, 2]]))
    assert channel_count(W) == {"incidence-down": 5, "incidence-up": 5}
    assert channel_total(W) == 10


def test_imp_total_is_twice_the_incidences():
    rng = np.random.default_rng(4)
    for _ in range(20):
        H = random_hypergraph(rng)
        assert channel_total(compile_imp(H)) == 2 * sum(len(e) for e in H.hyperedges)


def test_imp_needs_a_hypergraph():
    with pytest.raises(KindMismatch):
        compile_imp(path_graph(3))


# ----------------------------------------------------------------------------
# BAMP and CWN
# ----------------------------------------------------------------------------


def test_bamp_boundary_channels_on_triangle():
    S = clique_complex_lift(complete_graph(3), 3)
    assert channel_count(compile_bamp(S, ["boundary"])) == {"boundary": 12}


def test_bamp_upper_restricted_to_edges():
    S = clique_complex_lift(complete_graph(3), 3)
    W = compile_bamp(S, ["upper"], restrict_to=1)
    assert channel_total(W) == 6
    assert all(c.via is not None for c in W.channels)


def test_bamp_coboundary_on_a_path():
    S = graph_as_hypergraph(path_graph(3), SimplicialComplex)
    assert channel_count(compile_bamp(S, ["coboundary"])) == {"coboundary": 4}


def test_bamp_relation_checks():
    S = clique_complex_lift(complete_graph(3), 3)
    with pytest.raises(EmptyRelationSet):
        compile_bamp(S, [])
    with pytest.raises(InvalidParameter):
        compile_bamp(S, ["sideways"])
    with pytest.raises(KindMismatch):
        compile_bamp(path_graph(3), ["boundary"])


def test_cwn_on_a_hexagon_cell():
    W = compile_cwn(cell_lift(cycle_graph(6), 2, 6, 0))
    assert W.scheme == "CWN"
    assert channel_count(W) == {"boundary": 18, "upper": 42}


def test_cwn_needs_cells():
    with pytest.raises(KindMismatch):
        compile_cwn(clique_complex_lift(complete_graph(3), 3))


def test_channels_are_canonically_sorted():
    W = compile_bamp(clique_complex_lift(complete_graph(3), 3), ["boundary", "upper"])
    keys = [c.sort_key for c in W.channels]
    assert keys == sorted(keys)


# ----------------------------------------------------------------------------
# DAMP
# ----------------------------------------------------------------------------


def test_damp_inclusive_count():
    W = compile_damp(iso_type_lift(complete_graph(3), 2), inclusive=True)
    assert channel_count(W) == {"down": 36, "self-loop": 18}
    assert channel_total(W) == 54


@pytest.mark.parametrize("n", [3, 4, 5])
def test_damp_pairs_match_the_complexity_bound(n):
    total = channel_total(compile_damp(iso_type_lift(path_graph(n), 2), inclusive=True))
    assert total == damp_channel_total(2, n) == damp_complexity_bound(2, n)


@pytest.mark.parametrize("n", [3, 4])
def test_damp_triples_stay_under_the_bound(n):
    total = channel_total(compile_damp(iso_type_lift(path_graph(n), 3), inclusive=True))
    assert total == damp_channel_total(3, n) == 3 * n ** 4
    assert total <= damp_complexity_bound(3, n)


def test_damp_exclusive_and_local():
    C = iso_type_lift(path_graph(3), 2)
    assert channel_total(compile_damp(C)) == damp_channel_total(2, 3, inclusive=False) == 36
    assert channel_count(compile_damp(C, local=True)) == {"local-down": 24}


def test_damp_refuses_mixed_lengths():
    with pytest.raises(MixedTupleLengths):
        compile_damp(iso_type_lift(path_graph(3), 3, lengths="upto"))


# ----------------------------------------------------------------------------
# Multi-hop and subgraphs
# ----------------------------------------------------------------------------


def test_multihop_walk_counts():
    W = compile_multihop(path_graph(3), [1, 2])
    assert channel_count(W) == {"hop-1": 4, "hop-2": 2}
    assert {c.weight for c in W.with_tag("hop-2")} == {1.0}
    assert max(c.weight for c in compile_multihop(cycle_graph(4), [2]).channels) == 2.0
    with pytest.raises(InvalidParameter):
        compile_multihop(path_graph(3), [0])


def test_subgraph_channels_weight_overlap():
    W = compile_subgraph(ego_net_collection(path_graph(3), 1))
    assert channel_total(W) == 6
    weights = {(c.src.id, c.dst.id): c.weight for c in W.channels}
    assert weights[(0, 1)] == 2.0
    assert weights[(0, 2)] == 1.0


# ----------------------------------------------------------------------------
# Flavors
# ----------------------------------------------------------------------------


def test_presets_declare_their_flavor():
    assert len(list_presets()) >= 6
    for name in list_presets():
        spec = load_preset(name)
        assert classify_flavor(spec) == spec["flavor"], name


def test_flavor_rules():
    conv = {"layers": [{"kind": "graph_mp", "psi": {"message": {"kind": "fixed-scalar"}}}]}
    att = {"layers": [{"kind": "hgconv"}, {"kind": "hat"}]}
    gen = {"layers": [{"kind": "hat"}, {"kind": "imp", "psi": {"V": {"kind": "mlp"}}}]}
    assert classify_flavor(conv) == FlavorTag.CONVOLUTIONAL
    assert classify_flavor(att) == FlavorTag.ATTENTIONAL
    assert classify_flavor(gen) == FlavorTag.GENERAL
    assert message_kinds(att) == ["fixed-scalar", "attention"]


def test_unknown_kinds_rejected():
    with pytest.raises(UnknownFunctionKind):
        classify_flavor({"layers": [{"kind": "transformer"}]})
    with pytest.raises(UnknownFunctionKind):
        classify_flavor({"layers": [{"kind": "imp", "psi": {"V": {"kind": "oracle"}}}]})
