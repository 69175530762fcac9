# transform/cycles.py
from typing import FrozenSet, List, Set, Tuple

import networkx as nx

from core.graph import Edge, Graph, to_networkx

Cycle = Tuple[int, ...]


def canonical_cycle(cycle: Cycle) -> Cycle:
    """Rotate to start at the smallest vertex and pick the direction with the smaller second vertex."""
    k = len(cycle)
    i = cycle.index(min(cycle))
    forward = tuple(cycle[(i + t) % k] for t in range(k))
    backward = tuple(cycle[(i - t) % k] for t in range(k))
    return min(forward, backward)


def _bounded(cycles, max_length: int) -> List[Cycle]:
    found: Set[Cycle] = {canonical_cycle(tuple(c)) for c in cycles if 3 <= len(c) <= max_length}
    return sorted(found, key=lambda c: (len(c), c))


def simple_cycles(G: Graph, max_length: int) -> List[Cycle]:
    """All simple cycles with 3..max_length vertices, deduplicated up to rotation and reflection."""
    if max_length < 3:
        return []
    return _bounded(nx.simple_cycles(to_networkx(G), length_bound=max_length), max_length)


def chordless_cycles(G: Graph, max_length: int) -> List[Cycle]:
    """Induced cycles with 3..max_length vertices, in the same canonical form as simple_cycles."""
    if max_length < 3:
        return []
    return _bounded(nx.chordless_cycles(to_networkx(G), length_bound=max_length), max_length)


def cycle_edges(cycle: Cycle) -> FrozenSet[Edge]:
    k = len(cycle)
    return frozenset((min(cycle[i], cycle[(i + 1) % k]), max(cycle[i], cycle[(i + 1) % k])) for i in range(k))


def is_chordless(G: Graph, cycle: Cycle) -> bool:
    """True when no edge joins two non-consecutive cycle vertices (an induced cycle)."""
    return to_networkx(G).subgraph(cycle).number_of_edges() == len(cycle)


def cliques(G: Graph, max_size: int) -> List[Tuple[int, ...]]:
    """Cliques with 1..max_size vertices, sorted by (size, members)."""
    out = []
    for clique in nx.enumerate_all_cliques(to_networkx(G)):
        if len(clique) > max_size:
            break
        out.append(tuple(sorted(clique)))
    return sorted(out, key=lambda c: (len(c), c))
