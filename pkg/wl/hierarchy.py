# wl/hierarchy.py
"""
The Weisfeiler-Lehman hierarchy on plain graphs: 1-WL, k-WL, k-FWL,
delta-k-WL, local k-WL and local k-WL with counts.

Every test runs on the disjoint union of its inputs with one shared
color space. Tuple tests build their tuple universe per graph, so a
tuple never mixes vertices of two inputs.
"""

from collections import Counter
from itertools import product
from typing import Callable, Dict, List, Sequence, Tuple

import networkx as nx

from core.config import HOGNNConfig
from core.errors import BudgetExceeded, DisconnectedInput, EmptyCollection, InvalidParameter, KindMismatch
from core.graph import Graph, build_graph, disjoint_union, to_networkx
from transform.lifting import iso_type
from wl.lifted import lifted_test
from wl.refinement import RefinementTest, Run, Verdict, distinct_pairs, refine


def _union(graphs: Sequence[Graph]) -> Tuple[Graph, List[int]]:
    """Disjoint union of all graphs with the offset of each."""
    if not graphs:
        raise EmptyCollection("refinement needs at least one graph")
    for g in graphs:
        if not isinstance(g, Graph):
            raise KindMismatch(f"this test compares plain graphs, not {g.kind}")
    U, offsets = graphs[0], [0]
    for g in graphs[1:]:
        U, offset = disjoint_union(U, g)
        offsets.append(offset)
    return U, offsets


# ----------------------------------------------------------------------------
# 1-WL
# ----------------------------------------------------------------------------


def _run_wl1(graphs: Sequence[Graph]) -> Run:
    U, offsets = _union(graphs)
    initial = [U.features[v] if U.features is not None else () for v in range(U.n)]

    def label(u: int, v: int):
        return U.edge_feature(u, v) if U.edge_features is not None else ()

    def signature(colors, v):
        incoming = tuple(sorted((colors[u], label(u, v)) for u in U.in_neighbors(v)))
        if not U.directed:
            return incoming
        outgoing = tuple(sorted((colors[w], label(v, w)) for w in U.neighbors(v)))
        return incoming, outgoing

    per_round = sum(len(U.in_neighbors(v)) for v in range(U.n))
    if U.directed:
        per_round += sum(len(U.neighbors(v)) for v in range(U.n))
    groups = [list(range(off, off + g.n)) for g, off in zip(graphs, offsets)]
    return refine(initial, signature), groups, per_round


# ----------------------------------------------------------------------------
# Tuple universes
# ----------------------------------------------------------------------------


class TupleUniverse:
    """All k-tuples of every input graph, with per-coordinate replacement tables.

    replace[i][j][w] is the id of tuple i with coordinate j replaced by w.
    """

    def __init__(self, graphs: Sequence[Graph], k: int):
        _union(graphs)  # feature compatibility
        if k < 2:
            raise InvalidParameter(f"tuple tests need k >= 2, got {k}")
        if k > HOGNNConfig.MAX_K:
            raise BudgetExceeded(f"tuple tests are capped at k <= {HOGNNConfig.MAX_K}, got {k}")
        for g in graphs:
            if g.n > HOGNNConfig.MAX_TUPLE_N:
                raise BudgetExceeded(f"tuple tests are capped at n <= {HOGNNConfig.MAX_TUPLE_N}, got {g.n}")

        self.k = k
        self.graphs = list(graphs)
        self.tuples: List[Tuple[int, ...]] = []
        self.owner: List[int] = []
        self.groups: List[List[int]] = []
        self.replace: List[List[List[int]]] = []
        for gi, g in enumerate(graphs):
            start = len(self.tuples)
            local = list(product(range(g.n), repeat=k))
            index = {t: start + i for i, t in enumerate(local)}
            for t in local:
                self.tuples.append(t)
                self.owner.append(gi)
                self.replace.append([
                    [index[t[:j] + (w,) + t[j + 1:]] for w in range(g.n)] for j in range(k)
                ])
            self.groups.append(list(range(start, len(self.tuples))))

    def graph_of(self, i: int) -> Graph:
        return self.graphs[self.owner[i]]

    def initial_colors(self) -> List[tuple]:
        return [iso_type(t, self.graph_of(i)) for i, t in enumerate(self.tuples)]

    def global_messages(self) -> int:
        return sum(self.k * self.graph_of(i).n for i in range(len(self.tuples)))

    def local_messages(self) -> int:
        return sum(
            sum(self.graph_of(i).degree(x) for x in t) for i, t in enumerate(self.tuples)
        )


def _run_tuples(graphs: Sequence[Graph], k: int, make_signature) -> Run:
    universe = TupleUniverse(graphs, k)
    signature, per_round = make_signature(universe)
    return refine(universe.initial_colors(), signature), universe.groups, per_round


def _kwl_signature(U: TupleUniverse):
    def signature(colors, i):
        return tuple(tuple(sorted(colors[r] for r in U.replace[i][j])) for j in range(U.k))
    return signature, U.global_messages()


def _kfwl_signature(U: TupleUniverse):
    def signature(colors, i):
        reps = U.replace[i]
        n = len(reps[0])
        return tuple(sorted(tuple(colors[reps[j][w]] for j in range(U.k)) for w in range(n)))
    return signature, U.global_messages()


def _delta_signature(U: TupleUniverse):
    def signature(colors, i):
        t, g = U.tuples[i], U.graph_of(i)
        return tuple(
            tuple(sorted((colors[r], int(g.has_edge(t[j], w))) for w, r in enumerate(U.replace[i][j])))
            for j in range(U.k)
        )
    return signature, U.global_messages()


def _local_signature(U: TupleUniverse):
    def signature(colors, i):
        t, g = U.tuples[i], U.graph_of(i)
        return tuple(tuple(sorted(colors[U.replace[i][j][w]] for w in g.neighbors(t[j]))) for j in range(U.k))
    return signature, U.local_messages()


def _counted_signature(U: TupleUniverse):
    def signature(colors, i):
        t, g = U.tuples[i], U.graph_of(i)
        parts = []
        for j in range(U.k):
            row = U.replace[i][j]
            seen = Counter(colors[r] for r in row)
            parts.append(tuple(sorted((colors[row[w]], seen[colors[row[w]]]) for w in g.neighbors(t[j]))))
        return tuple(parts)
    return signature, U.local_messages()


def _is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    nxG = to_networkx(g)
    return nx.is_weakly_connected(nxG) if g.directed else nx.is_connected(nxG)


def with_auxiliary_vertex(G: Graph) -> Graph:
    """G plus one vertex adjacent to every vertex, marked by an extra feature column."""
    n = G.n
    if G.features is None:
        features = [(0.0,)] * n + [(1.0,)]
    else:
        features = [row + (0.0,) for row in G.features] + [(0.0,) * G.width + (1.0,)]
    edges = list(G.edges) + [(v, n) for v in range(n)]
    return build_graph(n + 1, edges, features, G.directed)


def _prepare_local(graphs: Sequence[Graph], auxiliary: bool) -> List[Graph]:
    if auxiliary:
        return [with_auxiliary_vertex(g) for g in graphs]
    for g in graphs:
        if not _is_connected(g):
            raise DisconnectedInput("local k-WL with counts needs connected graphs; add the auxiliary vertex")
    return list(graphs)


# ----------------------------------------------------------------------------
# Public tests
# ----------------------------------------------------------------------------


def wl1_test() -> RefinementTest:
    return RefinementTest("wl1", _run_wl1)


def kwl_test(k: int) -> RefinementTest:
    return RefinementTest(f"kwl:{k}", lambda gs: _run_tuples(gs, k, _kwl_signature))


def kfwl_test(k: int) -> RefinementTest:
    return RefinementTest(f"kfwl:{k}", lambda gs: _run_tuples(gs, k, _kfwl_signature))


def delta_kwl_test(k: int) -> RefinementTest:
    return RefinementTest(f"dkwl:{k}", lambda gs: _run_tuples(gs, k, _delta_signature))


def klwl_test(k: int) -> RefinementTest:
    return RefinementTest(f"klwl:{k}", lambda gs: _run_tuples(gs, k, _local_signature))


def klwl_plus_test(k: int, auxiliary: bool = False) -> RefinementTest:
    name = f"klwlp:{k}" + ("+aux" if auxiliary else "")
    return RefinementTest(name, lambda gs: _run_tuples(_prepare_local(gs, auxiliary), k, _counted_signature))


def wl1(G1: Graph, G2: Graph) -> Verdict:
    return wl1_test().verdict(G1, G2)


def kwl(G1: Graph, G2: Graph, k: int) -> Verdict:
    return kwl_test(k).verdict(G1, G2)


def kfwl(G1: Graph, G2: Graph, k: int) -> Verdict:
    return kfwl_test(k).verdict(G1, G2)


def delta_kwl(G1: Graph, G2: Graph, k: int) -> Verdict:
    return delta_kwl_test(k).verdict(G1, G2)


def klwl(G1: Graph, G2: Graph, k: int) -> Verdict:
    return klwl_test(k).verdict(G1, G2)


def klwl_plus(G1: Graph, G2: Graph, k: int, auxiliary: bool = False) -> Verdict:
    return klwl_plus_test(k, auxiliary).verdict(G1, G2)


TEST_FAMILIES: Dict[str, Callable[[int], RefinementTest]] = {
    "kwl": kwl_test,
    "kfwl": kfwl_test,
    "dkwl": delta_kwl_test,
    "klwl": klwl_test,
    "klwlp": klwl_plus_test,
}


def resolve_test(name: str, auxiliary: bool = False) -> RefinementTest:
    """wl1, kwl:K, kfwl:K, dkwl:K, klwl:K, klwlp:K, lifted:cqc or lifted:cell."""
    if name == "wl1":
        return wl1_test()
    family, _, arg = name.partition(":")
    if family == "lifted":
        return lifted_test(arg)
    if family not in TEST_FAMILIES or not arg:
        raise InvalidParameter(f"unknown test {name!r}; use wl1, kwl:K, kfwl:K, dkwl:K, klwl:K, klwlp:K, lifted:cqc, lifted:cell")
    try:
        k = int(arg)
    except ValueError:
        raise InvalidParameter(f"test {name!r} needs an integer k")
    if family == "klwlp":
        return klwl_plus_test(k, auxiliary)
    return TEST_FAMILIES[family](k)


def distinguished_pairs(graphs: Sequence, test) -> List[Tuple[int, int]]:
    """All index pairs (i < j) the test distinguishes, from one batch refinement."""
    if isinstance(test, str):
        test = resolve_test(test)
    return distinct_pairs(test.histograms(graphs))
