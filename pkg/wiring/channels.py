# wiring/channels.py
"""
Message-channel compilation. A wiring set lists every (src -> dst)
channel a layer sends messages over; undirected relations emit both
directions. Channel lists are sorted canonically so that every
aggregation downstream reduces in the same order.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set

import numpy as np

from core import trace
from core.config import HOGNNConfig
from core.errors import BudgetExceeded, EmptyRelationSet, InvalidParameter, KindMismatch, MixedTupleLengths
from core.graph import Graph
from adjacency.neighborhoods import boundary, coboundary, down_replacements, local_replacements, lower_pairs, upper_pairs
from hogdm.queries import entity_dimension, entity_refs
from hogdm.structures import CellComplex, EntityRef, Hypergraph, NodeTupleCollection, SubgraphCollection

RELATIONS = ("boundary", "coboundary", "upper", "lower")

SCHEMES = ("IMP", "BAMP", "CWN", "DAMP", "MULTIHOP", "SUBGRAPH")


@dataclass(frozen=True)
class Channel:
    src: EntityRef
    dst: EntityRef
    tag: str
    via: Optional[EntityRef] = None
    slot: Optional[int] = None  # tuple coordinate for down-adjacency channels
    weight: float = 1.0

    @property
    def sort_key(self):
        via = self.via.sort_key if self.via is not None else (-1, -1)
        return (self.src.sort_key, self.dst.sort_key, via, self.tag, -1 if self.slot is None else self.slot)


@dataclass(frozen=True)
class WiringSet:
    channels: tuple
    scheme: str

    def __len__(self) -> int:
        return len(self.channels)

    def with_tag(self, tag: str) -> List[Channel]:
        return [c for c in self.channels if c.tag == tag]

    @property
    def tags(self) -> List[str]:
        return sorted({c.tag for c in self.channels})


def make_wiring(channels: Iterable[Channel], scheme: str) -> WiringSet:
    if scheme not in SCHEMES:
        raise InvalidParameter(f"unknown wiring scheme {scheme!r}")
    ordered = tuple(sorted(channels, key=lambda c: c.sort_key))
    return WiringSet(channels=ordered, scheme=scheme)


# ----------------------------------------------------------------------------
# Incidence (IMP)
# ----------------------------------------------------------------------------


def compile_imp(H: Hypergraph) -> WiringSet:
    """One vertex->hyperedge and one hyperedge->vertex channel per incidence."""
    if not isinstance(H, Hypergraph):
        raise KindMismatch(f"incidence wiring needs a hypergraph, not {H.kind}")
    channels = []
    for j, e in enumerate(H.hyperedges):
        for v in sorted(e):
            channels.append(Channel(EntityRef("vertex", v), EntityRef("hyperedge", j), "incidence-up"))
            channels.append(Channel(EntityRef("hyperedge", j), EntityRef("vertex", v), "incidence-down"))
    return make_wiring(channels, "IMP")


# ----------------------------------------------------------------------------
# Boundary-adjacency (BAMP / CWN)
# ----------------------------------------------------------------------------


def _dims(restrict_to) -> Optional[Set[int]]:
    if restrict_to is None:
        return None
    if isinstance(restrict_to, int):
        return {restrict_to}
    return {int(d) for d in restrict_to}


def compile_bamp(S, use: Sequence[str], restrict_to=None, scheme: str = "BAMP") -> WiringSet:
    """Channels for the selected boundary relations.

    boundary: b -> c for b in B(c); coboundary: d -> c for d in C(c);
    upper: d -> c via every shared coboundary delta; lower: b -> c via every
    shared boundary tau. restrict_to keeps channels whose endpoints both
    have one of the given dimensions.
    """
    if not isinstance(S, (Hypergraph, CellComplex)):
        raise KindMismatch(f"boundary wiring needs a simplicial or cell complex, not {S.kind}")
    selected = [r for r in RELATIONS if r in set(use)]
    unknown = set(use) - set(RELATIONS)
    if unknown:
        raise InvalidParameter(f"unknown relations {sorted(unknown)}; choose from {list(RELATIONS)}")
    if not selected:
        raise EmptyRelationSet("select at least one of boundary, coboundary, upper, lower")

    dims = _dims(restrict_to)
    channels: List[Channel] = []
    for c in entity_refs(S):
        if "boundary" in selected:
            channels += [Channel(b, c, "boundary") for b in boundary(S, c)]
        if "coboundary" in selected:
            channels += [Channel(d, c, "coboundary") for d in coboundary(S, c)]
        if "upper" in selected:
            channels += [Channel(d, c, "upper", via=delta) for d, delta in upper_pairs(S, c)]
        if "lower" in selected:
            channels += [Channel(b, c, "lower", via=tau) for b, tau in lower_pairs(S, c)]

    if dims is not None:
        channels = [
            ch for ch in channels
            if entity_dimension(S, ch.src) in dims and entity_dimension(S, ch.dst) in dims
        ]
    trace.trace("wiring.bamp", {"relations": selected, "channels": len(channels)})
    return make_wiring(channels, scheme)


def compile_cwn(C: CellComplex) -> WiringSet:
    if not isinstance(C, CellComplex):
        raise KindMismatch(f"cellular wiring needs a cell complex, not {C.kind}")
    return compile_bamp(C, ["boundary", "upper"], scheme="CWN")


# ----------------------------------------------------------------------------
# Down-adjacency (DAMP)
# ----------------------------------------------------------------------------


def compile_damp(C: NodeTupleCollection, local: bool = False, inclusive: bool = False) -> WiringSet:
    """One channel u -> v per tuple u in the (local) down-adjacency of v.

    inclusive adds the k self-replacements of every k-tuple as self-loop channels.
    """
    if not isinstance(C, NodeTupleCollection):
        raise KindMismatch(f"down-adjacency wiring needs a node-tuple collection, not {C.kind}")
    if len(C.lengths) > 1:
        raise MixedTupleLengths(f"tuples must share one length, found {sorted(C.lengths)}")

    tag = "local-down" if local else "down"
    channels: List[Channel] = []
    for i, v in enumerate(C.tuples):
        dst = EntityRef("tuple", i)
        replacements = local_replacements(C, v) if local else down_replacements(C, v)
        for j, u in replacements:
            if u != v:
                channels.append(Channel(EntityRef("tuple", C.tuple_index[u]), dst, tag, slot=j))
        if inclusive:
            channels += [Channel(dst, dst, "self-loop", slot=j) for j in range(len(v))]
    return make_wiring(channels, "DAMP")


def damp_channel_total(k: int, n: int, inclusive: bool = True) -> int:
    """Exact channel count of compile_damp on the full collection of k-tuples over n vertices.

    Inclusive wiring gives k * n^(k+1), which matches the k * n^(2k-1) bound only at k = 2;
    for k = 3 the bound overshoots by a factor n^(k-2).
    """
    if inclusive:
        return k * n ** (k + 1)
    return k * (n - 1) * n ** k


def damp_complexity_bound(k: int, n: int) -> int:
    """Per-iteration message bound k * n^(2k-1); equals the exact count for k = 2."""
    return k * n ** (2 * k - 1)


# ----------------------------------------------------------------------------
# Multi-hop and subgraph channels
# ----------------------------------------------------------------------------


def compile_multihop(G: Graph, hops: Sequence[int]) -> WiringSet:
    """hop-k channel u -> v whenever a walk of length k joins them (u != v); weight = walk count."""
    if G.n > HOGNNConfig.MAX_MULTIHOP_N:
        raise BudgetExceeded(f"multi-hop wiring is capped at n <= {HOGNNConfig.MAX_MULTIHOP_N}, got {G.n}")
    A = G.adjacency_matrix()
    channels: List[Channel] = []
    for k in sorted(set(hops)):
        if k < 1:
            raise InvalidParameter(f"hop counts start at 1, got {k}")
        Ak = np.linalg.matrix_power(A, k)
        for u, v in zip(*np.nonzero(Ak)):
            if u != v:
                channels.append(
                    Channel(EntityRef("vertex", int(u)), EntityRef("vertex", int(v)), f"hop-{k}", weight=float(Ak[u, v]))
                )
    return make_wiring(channels, "MULTIHOP")


def compile_subgraph(S: SubgraphCollection) -> WiringSet:
    """subgraph-adj channels between subgraphs whose vertex sets meet; weight = overlap size."""
    if not isinstance(S, SubgraphCollection):
        raise KindMismatch(f"subgraph wiring needs a subgraph collection, not {S.kind}")
    sets = [set(s.vertices) for s in S.subgraphs]
    channels: List[Channel] = []
    for i in range(len(sets)):
        for j in range(len(sets)):
            overlap = len(sets[i] & sets[j])
            if i != j and overlap:
                channels.append(Channel(EntityRef("subgraph", i), EntityRef("subgraph", j), "subgraph-adj", weight=float(overlap)))
    return make_wiring(channels, "SUBGRAPH")


# ----------------------------------------------------------------------------
# Accounting
# ----------------------------------------------------------------------------


def channel_count(W: WiringSet) -> Dict[str, int]:
    """Exact channel counts per relation tag."""
    return dict(sorted(Counter(c.tag for c in W.channels).items()))


def channel_total(W: WiringSet) -> int:
    return len(W.channels)
