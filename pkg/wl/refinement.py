# wl/refinement.py
"""
Generic color refinement over an indexed universe of entities.

A round maps every entity to (old color, signature) and interns the
pairs into fresh integers. Interning assigns ids in sorted signature
order, so the coloring does not depend on the order entities or input
structures were presented. Refinement stops once a round leaves the
number of color classes unchanged: new colors always refine old ones,
so an equal class count means an equal partition.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from core import trace

DISTINGUISHED = "Distinguished"
INCONCLUSIVE = "Inconclusive"

GraphColor = Tuple[Tuple[int, int], ...]
Signature = Callable[[Sequence[int], int], Hashable]


class Interner:
    """Injective table from observed keys to dense integers, rebuilt each round."""

    def __init__(self):
        self.table: Dict[Hashable, int] = {}

    def intern_round(self, keys: Sequence[Hashable]) -> List[int]:
        self.table = {key: i for i, key in enumerate(sorted(set(keys)))}
        return [self.table[key] for key in keys]

    def __len__(self) -> int:
        return len(self.table)


@dataclass(frozen=True)
class Coloring:
    colors: Tuple[int, ...]
    rounds: int
    classes: int

    def histogram(self, members: Sequence[int]) -> GraphColor:
        return graph_color([self.colors[i] for i in members])


@dataclass(frozen=True)
class Verdict:
    outcome: str
    rounds: int
    messages: int
    messages_per_round: int = 0

    @property
    def distinguished(self) -> bool:
        return self.outcome == DISTINGUISHED

    def as_record(self) -> Dict[str, object]:
        return {"verdict": self.outcome, "rounds": self.rounds, "messages": self.messages}


def graph_color(colors: Sequence[int]) -> GraphColor:
    """Canonical histogram: sorted (color, count) pairs."""
    return tuple(sorted(Counter(colors).items()))


def refine(initial: Sequence[Hashable], signature: Signature, max_rounds: Optional[int] = None) -> Coloring:
    """Refine until the partition is stable.

    `signature(colors, i)` must return a canonical (sorted) encoding of the
    neighborhood of entity i under the current colors.
    """
    interner = Interner()
    colors = interner.intern_round(list(initial))
    classes = len(interner)
    limit = max(len(colors), 1) if max_rounds is None else max_rounds
    rounds = 0
    while rounds < limit:
        keys = [(colors[i], signature(colors, i)) for i in range(len(colors))]
        new = interner.intern_round(keys)
        rounds += 1
        if len(interner) == classes:
            break
        colors, classes = new, len(interner)
    trace.trace("wl.refine", {"entities": len(colors), "rounds": rounds, "classes": classes})
    return Coloring(colors=tuple(colors), rounds=rounds, classes=classes)


def compare(coloring: Coloring, groups: Sequence[Sequence[int]], messages_per_round: int) -> Verdict:
    """Distinguished iff the first two member groups have different histograms."""
    left, right = (coloring.histogram(g) for g in groups[:2])
    outcome = DISTINGUISHED if left != right else INCONCLUSIVE
    return Verdict(
        outcome=outcome,
        rounds=coloring.rounds,
        messages=coloring.rounds * messages_per_round,
        messages_per_round=messages_per_round,
    )


def histograms(coloring: Coloring, groups: Sequence[Sequence[int]]) -> List[GraphColor]:
    return [coloring.histogram(g) for g in groups]


# (coloring, member groups per input, messages per round)
Run = Tuple[Coloring, List[List[int]], int]


@dataclass(frozen=True)
class RefinementTest:
    name: str
    run: Callable[[Sequence], Run]

    def verdict(self, A, B) -> Verdict:
        coloring, groups, per_round = self.run([A, B])
        return compare(coloring, groups, per_round)

    def histograms(self, structures: Sequence) -> List[GraphColor]:
        if not structures:
            return []
        coloring, groups, _ = self.run(list(structures))
        return histograms(coloring, groups)


def distinct_pairs(hists: Sequence[GraphColor]) -> List[Tuple[int, int]]:
    """Index pairs (i < j) whose histograms differ."""
    buckets: Dict[GraphColor, int] = {}
    label = [buckets.setdefault(h, len(buckets)) for h in hists]
    return [(i, j) for i in range(len(hists)) for j in range(i + 1, len(hists)) if label[i] != label[j]]
