# adjacency/neighborhoods.py
"""
Neighborhood operators.

Hypergraphs and simplicial complexes use strict containment of vertex
sets over V and E (a vertex v reads as {v}). Cell complexes use the
covering relation of the cell poset: a cell's boundary is the set of
cells one dimension below that it lists.
"""

from functools import lru_cache
from typing import Dict, List, Optional, Set, Tuple

from core.config import HOGNNConfig
from core.errors import KindMismatch, UnknownTuple
from hogdm.queries import entity_dimension, entity_refs, require_entity, vertex_set
from hogdm.structures import CellComplex, EntityRef, Hypergraph, NodeTupleCollection

Relation = Dict[EntityRef, Tuple[EntityRef, ...]]


@lru_cache(maxsize=64)
def _poset(H) -> Tuple[Relation, Relation]:
    """(boundary map, coboundary map) with every list in canonical order."""
    refs = entity_refs(H)
    boundary: Dict[EntityRef, List[EntityRef]] = {r: [] for r in refs}
    coboundary: Dict[EntityRef, List[EntityRef]] = {r: [] for r in refs}

    if isinstance(H, CellComplex):
        for c in H.cells:
            ref = EntityRef("cell", c.id)
            for b in sorted(c.boundary, key=lambda x: (H.by_id[x].dim, x)):
                boundary[ref].append(EntityRef("cell", b))
                coboundary[EntityRef("cell", b)].append(ref)
    elif isinstance(H, Hypergraph):
        sets = {r: vertex_set(H, r) for r in refs}
        for c in refs:
            for b in refs:
                if sets[b] < sets[c]:
                    boundary[c].append(b)
                    coboundary[b].append(c)
    else:
        raise KindMismatch(f"boundary relations are defined for hypergraphs and complexes, not {H.kind}")

    freeze = lambda rel: {k: tuple(sorted(v, key=lambda r: r.sort_key)) for k, v in rel.items()}
    return freeze(boundary), freeze(coboundary)


def _exclude(exclude_self: Optional[bool]) -> bool:
    return HOGNNConfig.EXCLUDE_SELF if exclude_self is None else exclude_self


def boundary(H, c: EntityRef) -> Set[EntityRef]:
    require_entity(H, c)
    return set(_poset(H)[0][c])


def coboundary(H, c: EntityRef) -> Set[EntityRef]:
    require_entity(H, c)
    return set(_poset(H)[1][c])


def lower_pairs(H, c: EntityRef) -> List[Tuple[EntityRef, EntityRef]]:
    """(b, tau) for every tau in boundary(c) and every b != c bounded by tau."""
    require_entity(H, c)
    bnd, cob = _poset(H)
    return [(b, tau) for tau in bnd[c] for b in cob[tau] if b != c]


def upper_pairs(H, c: EntityRef) -> List[Tuple[EntityRef, EntityRef]]:
    """(d, delta) for every delta in coboundary(c) and every d != c bounding delta."""
    require_entity(H, c)
    bnd, cob = _poset(H)
    return [(d, delta) for delta in cob[c] for d in bnd[delta] if d != c]


def _finish(H, c: EntityRef, found: Set[EntityRef], exclude_self, same_dimension: bool) -> Set[EntityRef]:
    if _exclude(exclude_self):
        found.discard(c)
    if same_dimension:
        dim = entity_dimension(H, c)
        found = {r for r in found if entity_dimension(H, r) == dim}
    return found


def lower_adjacent(H, c: EntityRef, exclude_self: Optional[bool] = None, same_dimension: bool = False) -> Set[EntityRef]:
    require_entity(H, c)
    bnd, cob = _poset(H)
    found = {b for tau in bnd[c] for b in cob[tau]}
    return _finish(H, c, found, exclude_self, same_dimension)


def upper_adjacent(H, c: EntityRef, exclude_self: Optional[bool] = None, same_dimension: bool = False) -> Set[EntityRef]:
    require_entity(H, c)
    bnd, cob = _poset(H)
    found = {d for delta in cob[c] for d in bnd[delta]}
    return _finish(H, c, found, exclude_self, same_dimension)


# ----------------------------------------------------------------------------
# Node-tuple neighborhoods
# ----------------------------------------------------------------------------


def _require_tuple(C: NodeTupleCollection, v) -> Tuple[int, ...]:
    v = tuple(int(x) for x in v)
    if v not in C.tuple_index:
        raise UnknownTuple(f"tuple {v} is not in the collection")
    return v


def down_replacements(C: NodeTupleCollection, v) -> List[Tuple[int, Tuple[int, ...]]]:
    """(j, u) for every coordinate j and every w in V with u = v[j <- w] in C; v itself appears k times."""
    v = _require_tuple(C, v)
    out = []
    for j in range(len(v)):
        for w in range(C.base.n):
            u = v[:j] + (w,) + v[j + 1:]
            if u in C.tuple_index:
                out.append((j, u))
    return out


def down_adjacency(C: NodeTupleCollection, v, inclusive: bool = False) -> Set[Tuple[int, ...]]:
    v = _require_tuple(C, v)
    found = {u for _, u in down_replacements(C, v)}
    if not inclusive:
        found.discard(v)
    return found


def local_replacements(C: NodeTupleCollection, v) -> List[Tuple[int, Tuple[int, ...]]]:
    v = _require_tuple(C, v)
    base = C.base
    out = []
    for j in range(len(v)):
        for w in sorted(set(base.neighbors(v[j])) | set(base.in_neighbors(v[j]))):
            u = v[:j] + (w,) + v[j + 1:]
            if u in C.tuple_index:
                out.append((j, u))
    return out


def local_down_adjacency(C: NodeTupleCollection, v) -> Set[Tuple[int, ...]]:
    return {u for _, u in local_replacements(C, v)}
