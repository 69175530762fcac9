# io_ops/corpus.py
"""
Desk-scale graph corpora: exhaustive enumeration of small graphs (with
optional deduplication up to isomorphism), seeded random graphs and
seeded pair samples for the soundness and lifting checks.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np

from core import trace
from core.config import HOGNNConfig
from core.errors import BudgetExceeded, DocumentError, InvalidParameter
from core.graph import Graph, build_graph, find_graph_isomorphism, relabel_random
from io_ops.documents import read_document, write_document


@dataclass(frozen=True)
class Corpus:
    names: Tuple[str, ...]
    graphs: Tuple[Graph, ...]
    notes: Dict[str, str] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.graphs)

    def items(self) -> List[Tuple[str, Graph]]:
        return list(zip(self.names, self.graphs))

    def of_size(self, n: int) -> List[Graph]:
        return [g for g in self.graphs if g.n == n]


def _bucket_key(G: Graph) -> tuple:
    """Isomorphism invariant used to bucket candidates before the exact check."""
    degrees = [G.degree(v) for v in range(G.n)]
    profile = sorted((degrees[v], tuple(sorted(degrees[u] for u in G.neighbors(v)))) for v in range(G.n))
    return (G.n, G.m, tuple(profile))


def _extend(G: Graph) -> List[Graph]:
    """Every graph obtained by adding one vertex joined to some subset of G's vertices."""
    n = G.n
    out = []
    for size in range(n + 1):
        for nbrs in combinations(range(n), size):
            out.append(build_graph(n + 1, list(G.edges) + [(v, n) for v in nbrs]))
    return out


def _dedup(candidates: List[Graph]) -> List[Graph]:
    buckets: Dict[tuple, List[Graph]] = defaultdict(list)
    kept: List[Graph] = []
    for G in candidates:
        bucket = buckets[_bucket_key(G)]
        if any(find_graph_isomorphism(H, G) is not None for H in bucket):
            continue
        bucket.append(G)
        kept.append(G)
    return kept


def _all_graphs(n: int) -> List[Graph]:
    pairs = list(combinations(range(n), 2))
    return [
        build_graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
        for mask in range(1 << len(pairs))
    ]


def enumerate_corpus(n_max: int, dedup: bool = True) -> Corpus:
    """All undirected graphs on 1..n_max vertices; with dedup one per isomorphism class.

    The deduplicated corpus grows one vertex at a time: every class on n
    vertices is some class on n-1 vertices plus a vertex joined to a subset.
    """
    if n_max < 1:
        raise InvalidParameter(f"n_max must be at least 1, got {n_max}")
    if n_max > HOGNNConfig.MAX_CORPUS_N:
        raise BudgetExceeded(f"corpus enumeration is capped at n <= {HOGNNConfig.MAX_CORPUS_N}, got {n_max}")

    names: List[str] = []
    graphs: List[Graph] = []
    layer = [build_graph(1, [])]
    for n in range(1, n_max + 1):
        if n > 1:
            layer = _dedup([H for G in layer for H in _extend(G)]) if dedup else _all_graphs(n)
        layer = sorted(layer, key=lambda g: (g.m, g.edges))
        for i, G in enumerate(layer):
            names.append(f"n{n}_g{i:04d}")
            graphs.append(G)
        trace.step(f"corpus: {len(layer)} graphs on {n} vertices")
    notes = {"source": "enumeration", "n_max": str(n_max), "dedup": str(dedup)}
    return Corpus(names=tuple(names), graphs=tuple(graphs), notes=notes)


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p) with independent edge draws in lexicographic pair order."""
    pairs = list(combinations(range(n), 2))
    draws = rng.random(len(pairs))
    return build_graph(n, [e for e, x in zip(pairs, draws) if x < p])


def sample_pairs(
    count: int, n_max: int, seed: int, p: float = 0.5, n_min: int = 2
) -> List[Tuple[str, Graph, str, Graph]]:
    """`count` pairs: the first half permuted copies (isomorphic), the rest independent draws.

    Sizes are drawn from n_min..n_max; n_min == n_max fixes the size of every pair.
    """
    if not 1 <= n_min <= n_max:
        raise InvalidParameter(f"need 1 <= n_min <= n_max, got n_min={n_min}, n_max={n_max}")
    rng = np.random.default_rng(seed)
    pairs = []
    for i in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        G = random_graph(n, p, rng)
        if i < count // 2 + count % 2:
            H = relabel_random(G, int(rng.integers(0, 2 ** 31 - 1)))
            pairs.append((f"p{i:04d}a", G, f"p{i:04d}b", H))
        else:
            pairs.append((f"p{i:04d}a", G, f"p{i:04d}b", random_graph(n, p, rng)))
    return pairs


def save_corpus(corpus: Corpus, directory: Union[str, Path]) -> List[Path]:
    directory = Path(directory)
    return [write_document(G, directory / f"{name}.json") for name, G in corpus.items()]


def load_corpus(directory: Union[str, Path]) -> Corpus:
    directory = Path(directory)
    if not directory.is_dir():
        raise DocumentError(f"corpus directory {directory} does not exist")
    names, graphs = [], []
    for path in sorted(directory.glob("*.json")):
        G = read_document(path)
        if not isinstance(G, Graph):
            raise DocumentError(f"{path.name} is a {G.kind} document; corpora hold plain graphs")
        names.append(path.stem)
        graphs.append(G)
    return Corpus(names=tuple(names), graphs=tuple(graphs), notes={"source": str(directory)})
