# wl/lifted.py
"""
Color refinement over simplicial and cell complexes. Each entity's
signature is, per selected relation, the multiset of (neighbor color,
via color) pairs taken from the boundary-adjacency wiring.
"""

from typing import Callable, Dict, List, Sequence, Tuple

from core.config import HOGNNConfig
from core.errors import EmptyCollection, InvalidParameter, KindMismatch
from core.graph import Graph
from hogdm.queries import entity_dimension, entity_refs
from hogdm.structures import CellComplex, EntityRef, SimplicialComplex
from transform.lifting import cell_lift, clique_complex_lift
from wiring.channels import RELATIONS, compile_bamp
from wl.refinement import RefinementTest, Run, Verdict, refine

DEFAULT_RELATIONS = ("boundary", "upper")


def _feature(S, ref: EntityRef) -> tuple:
    if isinstance(S, CellComplex):
        return tuple(S.features[S.position[ref.id]]) if S.features is not None else ()
    block = S.vertex_features if ref.cls == "vertex" else S.hyperedge_features
    return tuple(block[ref.id]) if block is not None else ()


def _check_kinds(structures: Sequence):
    if not structures:
        raise EmptyCollection("lifted refinement needs at least one complex")
    kinds = {type(S) for S in structures}
    if len(kinds) > 1 or not kinds <= {SimplicialComplex, CellComplex}:
        names = sorted(getattr(S, "kind", type(S).__name__) for S in structures)
        raise KindMismatch(f"lifted refinement compares complexes of one kind, got {names}")


def _run_lifted(structures: Sequence, relations: Sequence[str]) -> Run:
    _check_kinds(structures)
    selected = [r for r in RELATIONS if r in set(relations)]

    initial: List[tuple] = []
    groups: List[List[int]] = []
    # incoming[i][r] = [(src id, via id or -1), ...]
    incoming: List[List[List[Tuple[int, int]]]] = []
    per_round = 0
    for S in structures:
        refs = entity_refs(S)
        start = len(initial)
        index = {ref: start + i for i, ref in enumerate(refs)}
        for ref in refs:
            initial.append((entity_dimension(S, ref), _feature(S, ref)))
            incoming.append([[] for _ in selected])

        wiring = compile_bamp(S, relations)
        per_round += len(wiring)
        for slot, rel in enumerate(selected):
            for ch in wiring.with_tag(rel):
                via = index[ch.via] if ch.via is not None else -1
                incoming[index[ch.dst]][slot].append((index[ch.src], via))
        groups.append(list(range(start, len(initial))))

    def signature(colors, i):
        return tuple(
            tuple(sorted((colors[src], colors[via] if via >= 0 else -1) for src, via in chans))
            for chans in incoming[i]
        )

    return refine(initial, signature), groups, per_round


def lifted_refinement(relations: Sequence[str] = DEFAULT_RELATIONS, name: str = "lifted") -> RefinementTest:
    return RefinementTest(name, lambda structures: _run_lifted(structures, relations))


def lifted_refine(A, B, relations: Sequence[str] = DEFAULT_RELATIONS) -> Verdict:
    """Pairwise verdict for two simplicial or two cell complexes."""
    return lifted_refinement(relations).verdict(A, B)


LIFTS: Dict[str, Callable[[Graph], object]] = {
    "cqc": lambda G: clique_complex_lift(G, HOGNNConfig.LIFTED_CLIQUE_K),
    "cell": lambda G: cell_lift(G, 2, HOGNNConfig.LIFTED_CELL_K_IND_CYCLE, 0),
}


def lifted_test(lift: str, relations: Sequence[str] = DEFAULT_RELATIONS) -> RefinementTest:
    """Refinement of the lifted complexes of plain graphs."""
    if lift not in LIFTS:
        raise InvalidParameter(f"unknown lifting {lift!r} for lifted refinement; choose from {sorted(LIFTS)}")
    make = LIFTS[lift]
    return RefinementTest(
        f"lifted:{lift}",
        lambda graphs: _run_lifted([make(G) for G in graphs], relations),
    )
