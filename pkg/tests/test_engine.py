# tests/test_engine.py
import numpy as np
import pytest

from core.errors import (
    EmptyIncidence,
    EmptyState,
    InvalidParameter,
    OuterRequiresVertexAnchoring,
    ShapeMismatch,
    UnknownFunctionKind,
)
from core.graph import build_graph, complete_graph, cycle_graph, empty_graph, path_graph, relabel_random
from engine.complexes import bamp_layer, ccxn_layer, cwn_layer, s2cnn_layer
from engine.functions import aggregate, apply_function, grouped_softmax
from engine.layers import (
    channel_arrays,
    edge_arrays,
    gcn_reference_operator,
    graph_mp_layer,
    hat_attention,
    hgconv_layer,
    hgconv_preactivation,
    imp_layer,
    kgnn_layer,
    readout,
)
from engine.model import embed, initial_state, run_model
from engine.pipelines import nested_run, run_subgraph_pipeline
from engine.presets import load_preset
from hogdm.queries import relabel
from hogdm.structures import build_hypergraph, build_nested_graph
from io_ops.corpus import random_graph
from transform.lifting import cell_lift, clique_complex_lift, iso_type_lift
from transform.subgraphs import ego_net_collection, node_deleted_collection
from wiring.channels import compile_multihop

TOL = 1e-9


def featured_hypergraph(seed=0, width=3):
    rng = np.random.default_rng(seed)
    edges = [[0, 1, 2], [2, 3], [3, 4, 0], [1, 4]]
    return build_hypergraph(5, edges, rng.normal(size=(5, width)), rng.normal(size=(4, width)))


def featured_graph(seed=0, width=2):
    rng = np.random.default_rng(seed)
    G = build_graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
    return build_graph(G.n, G.edges, rng.normal(size=(G.n, width)))


# ----------------------------------------------------------------------------
# Functions and aggregation
# ----------------------------------------------------------------------------


def test_aggregators():
    msgs = np.array([[1.0], [3.0], [5.0]])
    index = np.array([0, 0, 2])
    assert aggregate(msgs, index, 3, "sum").ravel().tolist() == [4.0, 0.0, 5.0]
    assert aggregate(msgs, index, 3, "mean").ravel().tolist() == [2.0, 0.0, 5.0]
    assert aggregate(msgs, index, 3, "max").ravel().tolist() == [3.0, 0.0, 5.0]
    with pytest.raises(InvalidParameter):
        aggregate(msgs, index, 3, "median")


def test_grouped_softmax_sums_to_one_per_group():
    alpha = grouped_softmax(np.array([1.0, 2.0, 3.0, 50.0]), np.array([0, 0, 1, 1]), 2)
    assert abs(alpha[:2].sum() - 1.0) < TOL
    assert abs(alpha[2:].sum() - 1.0) < TOL


def test_function_kinds():
    rng = np.random.default_rng(0)
    a, b = np.ones((2, 2)), 2 * np.ones((2, 2))
    assert np.array_equal(apply_function(None, [a, b], rng), b)
    assert np.array_equal(apply_function({"kind": "project", "arg": 0}, [a, b], rng), a)
    assert np.array_equal(apply_function({"kind": "sum"}, [a, b], rng), 3 * np.ones((2, 2)))
    linear = apply_function({"kind": "linear", "weights": np.eye(4)[:, :2].tolist()}, [a, b], rng)
    assert np.array_equal(linear, a)
    with pytest.raises(UnknownFunctionKind):
        apply_function({"kind": "oracle"}, [a], rng)
    with pytest.raises(ShapeMismatch):
        apply_function({"kind": "linear", "weights": [[1.0]]}, [a], rng)


# ----------------------------------------------------------------------------
# Hypergraph layers
# ----------------------------------------------------------------------------


def test_imp_defaults_sum_members_then_incidences():
    H = build_hypergraph(2, [[0, 1]])
    out = imp_layer(H, {"vertex": np.array([[1.0], [2.0]]), "hyperedge": np.array([[0.0]])})
    assert out["hyperedge"].tolist() == [[3.0]]
    assert out["vertex"].tolist() == [[3.0], [3.0]]


def test_layers_do_not_modify_their_input():
    H = featured_hypergraph()
    state = initial_state(H)
    before = {k: v.copy() for k, v in state.items()}
    run_model(H, load_preset("imp-general"), state=state)
    for k in state:
        assert np.array_equal(state[k], before[k])


def test_hgconv_on_a_single_edge():
    out = hgconv_layer(complete_graph(2), {"vertex": np.array([[1.0], [0.0]])})
    assert np.allclose(out["vertex"], [[0.5], [0.5]])


def test_hgconv_recovers_gcn():
    rng = np.random.default_rng(11)
    theta = rng.normal(size=(4, 4))
    for _ in range(20):
        n = int(rng.integers(1, 9))
        G = random_graph(n, 0.4, rng)
        X = rng.normal(size=(n, 4))
        ours = hgconv_preactivation(G, {"vertex": X}, theta=theta)
        reference = gcn_reference_operator(G) @ X @ theta
        assert np.max(np.abs(ours - reference), initial=0.0) < 1e-12


def test_hgconv_is_equivariant():
    H = featured_hypergraph(1)
    p = [3, 0, 4, 1, 2]
    out = hgconv_layer(H, initial_state(H))["vertex"]
    moved = relabel(H, p)
    out_moved = hgconv_layer(moved, initial_state(moved))["vertex"]
    assert np.allclose(out_moved[p], out, atol=TOL)


def test_hat_attention_normalizes_each_competing_set():
    H = featured_hypergraph(2)
    state = initial_state(H)
    by_edge = hat_attention(H, state, normalize="hyperedge")
    assert np.allclose(by_edge.sum(axis=0), 1.0, atol=TOL)
    by_vertex = hat_attention(H, state, normalize="vertex")
    assert np.allclose(by_vertex.sum(axis=1), 1.0, atol=TOL)
    with pytest.raises(InvalidParameter):
        hat_attention(H, state, normalize="both")


def test_hat_needs_incidences():
    H = build_hypergraph(2, [])
    with pytest.raises(EmptyIncidence):
        hat_attention(H, {"vertex": np.ones((2, 1)), "hyperedge": np.ones((0, 1))})


def test_shape_checks():
    with pytest.raises(ShapeMismatch):
        hgconv_layer(complete_graph(3), {"vertex": np.ones((2, 1))})


# ----------------------------------------------------------------------------
# Complex, tuple and graph layers
# ----------------------------------------------------------------------------


def test_bamp_boundary_sums_faces():
    S = clique_complex_lift(complete_graph(3), 3)
    out = bamp_layer(S, initial_state(S), ["boundary"])
    assert out["simplex_0"].ravel().tolist() == [1.0, 1.0, 1.0]
    assert out["simplex_1"].ravel().tolist() == [3.0, 3.0, 3.0]
    assert out["simplex_2"].ravel().tolist() == [7.0]


def test_cwn_layer_on_a_square_cell():
    C = cell_lift(cycle_graph(4), 2, 4, 0)
    out = cwn_layer(C, initial_state(C))
    assert out["cell_0"].ravel().tolist() == [3.0] * 4
    assert out["cell_1"].ravel().tolist() == [6.0] * 4
    assert out["cell_2"].ravel().tolist() == [5.0]


def test_complex_layers_keep_shapes():
    C = cell_lift(cycle_graph(4), 2, 4, 0)
    state = initial_state(C)
    out = ccxn_layer(C, state)
    assert {k: v.shape for k, v in out.items()} == {k: v.shape for k, v in state.items()}
    S = clique_complex_lift(complete_graph(4), 3)
    state = initial_state(S)
    out = s2cnn_layer(S, state)
    assert {k: v.shape for k, v in out.items()} == {k: v.shape for k, v in state.items()}


def test_kgnn_sums_down_neighbors():
    C = iso_type_lift(path_graph(2), 2)
    ones = {"tuple": np.ones((4, 1))}
    assert kgnn_layer(C, ones)["tuple"].ravel().tolist() == [3.0, 3.0, 3.0, 3.0]
    assert kgnn_layer(C, ones, local=True)["tuple"].ravel().tolist() == [3.0, 3.0, 3.0, 3.0]


def test_graph_mp_sum_of_neighbors():
    out = graph_mp_layer(path_graph(3), {"vertex": np.array([[1.0], [2.0], [4.0]])}, phi={"kind": "sum"})
    assert out["vertex"].ravel().tolist() == [3.0, 7.0, 6.0]


def test_edge_arrays_match_hop_one_wiring():
    for G in (cycle_graph(6), build_graph(4, [(0, 1), (2, 1), (1, 3), (3, 0)], directed=True)):
        src, dst = edge_arrays(G)
        hop_src, hop_dst = channel_arrays(compile_multihop(G, [1]).channels)
        assert src.tolist() == hop_src.tolist()
        assert dst.tolist() == hop_dst.tolist()


def test_graph_mp_runs_past_the_multi_hop_cap():
    G = cycle_graph(65)
    out = embed(G, load_preset("graph-mp"), seed=1)
    assert np.all(np.isfinite(out))
    assert np.max(np.abs(embed(relabel_random(G, 4), load_preset("graph-mp"), seed=1) - out)) < 1e-6


def test_unknown_layer_kind():
    with pytest.raises(UnknownFunctionKind):
        run_model(path_graph(2), {"layers": [{"kind": "transformer"}]})


# ----------------------------------------------------------------------------
# Readout and presets
# ----------------------------------------------------------------------------


def test_readouts():
    state = {"vertex": np.array([[1.0, 2.0], [3.0, 0.0]])}
    assert readout(state, "sum").tolist() == [4.0, 2.0]
    assert readout(state, "max").tolist() == [3.0, 2.0]
    assert readout(state, "histogram").tolist() == [1.0, 2.0, 3.0, 0.0]
    with pytest.raises(EmptyState):
        readout({})
    with pytest.raises(InvalidParameter):
        readout(state, "median")


def test_featureless_structures_start_from_ones():
    state = initial_state(build_hypergraph(3, [[0, 1]]))
    assert state["vertex"].tolist() == [[1.0], [1.0], [1.0]]
    assert state["hyperedge"].tolist() == [[1.0]]


def preset_inputs(seed):
    G = featured_graph(seed)
    moved = relabel_random(G, seed + 100)
    H = featured_hypergraph(seed)
    H_moved = relabel(H, [int(x) for x in np.random.default_rng(seed).permutation(H.n)])
    return {
        "imp-general": (H, H_moved),
        "hgconv": (H, H_moved),
        "hat": (H, H_moved),
        "mpsn": (clique_complex_lift(G, 3), clique_complex_lift(moved, 3)),
        "sc-conv": (clique_complex_lift(G, 3), clique_complex_lift(moved, 3)),
        "cwn": (cell_lift(G, 2, 6, 0), cell_lift(moved, 2, 6, 0)),
        "ccxn": (cell_lift(G, 2, 6, 0), cell_lift(moved, 2, 6, 0)),
        "kgnn": (iso_type_lift(G, 2), iso_type_lift(moved, 2)),
        "graph-mp": (G, moved),
    }


@pytest.mark.parametrize("seed", range(3))
def test_presets_are_permutation_invariant(seed):
    for name, (A, B) in preset_inputs(seed).items():
        spec = load_preset(name)
        a, b = embed(A, spec, seed=seed), embed(B, spec, seed=seed)
        assert a.shape == b.shape, name
        assert np.max(np.abs(a - b)) < TOL, name


def test_runs_are_reproducible():
    H = featured_hypergraph()
    spec = load_preset("imp-general")
    assert np.array_equal(embed(H, spec, seed=5), embed(H, spec, seed=5))


# ----------------------------------------------------------------------------
# Subgraph and nested pipelines
# ----------------------------------------------------------------------------


@pytest.mark.parametrize("outer", ["EgoAverage", "NestedOuterMP", "BagPool", "Fuse"])
def test_subgraph_pipelines_are_invariant(outer):
    base = load_preset("graph-mp")
    G = build_graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])
    a = run_subgraph_pipeline(ego_net_collection(G, 1), base, outer=outer, seed=0)
    b = run_subgraph_pipeline(ego_net_collection(relabel_random(G, 9), 1), base, outer=outer, seed=0)
    assert np.max(np.abs(a - b)) < TOL


def test_annotated_pipeline_widens_features():
    base = load_preset("graph-mp")
    S = ego_net_collection(complete_graph(4), 1)
    plain = run_subgraph_pipeline(S, base, outer="BagPool")
    counted = run_subgraph_pipeline(S, base, outer="BagPool", annotate=[complete_graph(3)])
    assert counted.shape[0] == plain.shape[0] + 1


def test_outer_modes_need_anchors():
    S = node_deleted_collection(cycle_graph(4))
    base = load_preset("graph-mp")
    assert run_subgraph_pipeline(S, base, outer="BagPool").shape == (1,)
    with pytest.raises(OuterRequiresVertexAnchoring):
        run_subgraph_pipeline(S, base, outer="EgoAverage")
    with pytest.raises(InvalidParameter):
        run_subgraph_pipeline(S, base, outer="Everything")


def test_nested_run_with_an_empty_inner_graph():
    base = load_preset("graph-mp")
    N = build_nested_graph(path_graph(3), [complete_graph(3), path_graph(2), empty_graph(0)])
    out = nested_run(N, base, base)
    assert out.shape == (1,)
    moved = relabel(N, [2, 0, 1])
    assert np.max(np.abs(nested_run(moved, base, base) - out)) < TOL
