# wl/battery.py
from typing import Any, Dict, List, Sequence, Set, Tuple

import pandas as pd

from core import trace
from core.graph import Graph
from wl.hierarchy import resolve_test
from wl.refinement import DISTINGUISHED, RefinementTest, distinct_pairs

BATTERY_COLUMNS = ["test", "graph_a", "graph_b", "verdict", "rounds", "messages"]
CONTAINMENT_COLUMNS = ["test_a", "test_b", "distinguished_a", "distinguished_b", "a_contains_b", "equal"]
CORPUS_COLUMNS = ["test", "graphs", "pairs", "distinguished"]

# (name_a, graph_a, name_b, graph_b)
NamedPair = Tuple[str, Graph, str, Graph]


def _as_tests(tests: Sequence) -> List[RefinementTest]:
    return [resolve_test(t) if isinstance(t, str) else t for t in tests]


def battery_row(test: RefinementTest, pair: NamedPair) -> Dict[str, Any]:
    name_a, A, name_b, B = pair
    verdict = test.verdict(A, B)
    return {"test": test.name, "graph_a": name_a, "graph_b": name_b, **verdict.as_record()}


def battery(pairs: Sequence[NamedPair], tests: Sequence) -> pd.DataFrame:
    """One row per (test, pair): verdict, rounds and total messages."""
    tests = _as_tests(tests)
    rows = []
    for test in tests:
        trace.step(f"battery: {test.name} over {len(pairs)} pairs")
        rows.extend(battery_row(test, pair) for pair in pairs)
    return pd.DataFrame(rows, columns=BATTERY_COLUMNS)


def distinguished_sets(frame: pd.DataFrame) -> Dict[str, Set[Tuple[str, str]]]:
    sets: Dict[str, Set[Tuple[str, str]]] = {}
    for test, group in frame.groupby("test", sort=False):
        hits = group[group["verdict"] == DISTINGUISHED]
        sets[test] = set(zip(hits["graph_a"], hits["graph_b"]))
    return sets


def containment(sets: Dict[str, Set]) -> pd.DataFrame:
    """For every ordered pair of tests: does A's distinguished set contain B's?"""
    rows = []
    names = list(sets)
    for a in names:
        for b in names:
            if a == b:
                continue
            rows.append({
                "test_a": a,
                "test_b": b,
                "distinguished_a": len(sets[a]),
                "distinguished_b": len(sets[b]),
                "a_contains_b": sets[b] <= sets[a],
                "equal": sets[a] == sets[b],
            })
    return pd.DataFrame(rows, columns=CONTAINMENT_COLUMNS)


def corpus_sets(graphs: Sequence[Graph], names: Sequence[str], tests: Sequence) -> Dict[str, Set[Tuple[str, str]]]:
    """Distinguished name pairs per test, from one batch refinement per test."""
    out = {}
    for test in _as_tests(tests):
        trace.step(f"corpus refinement: {test.name} over {len(graphs)} graphs")
        out[test.name] = {(names[i], names[j]) for i, j in distinct_pairs(test.histograms(graphs))}
    return out


def corpus_summary(graphs: Sequence[Graph], names: Sequence[str], tests: Sequence) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """(per-test distinguished counts, containment table) over every pair of the corpus."""
    sets = corpus_sets(graphs, names, tests)
    pairs = len(graphs) * (len(graphs) - 1) // 2
    summary = pd.DataFrame(
        [{"test": t, "graphs": len(graphs), "pairs": pairs, "distinguished": len(s)} for t, s in sets.items()],
        columns=CORPUS_COLUMNS,
    )
    return summary, containment(sets)
