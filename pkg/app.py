# app.py - HOGNN lab command line
"""
HOGNN lab: liftings, lowerings, message wiring, forward passes and
Weisfeiler-Lehman experiments on desk-scale graphs.

Every command reads HOGDM documents (JSON, or .txt edge lists) and writes
a document or a comma-separated report to --out (stdout by default).
Exit status: 0 success, 2 invalid input or usage, 1 internal error.
"""

import argparse
import sys
from itertools import combinations
from pathlib import Path
from typing import List, Optional

import pandas as pd

from core import trace
from core.config import HOGNNConfig, load_env_config
from core.errors import ErrorHandler, KindMismatch, UsageError, handle_command_error
from core.graph import Graph, are_isomorphic_bruteforce
from core.state import ExperimentConfig
from adjacency.motifs import motif_list
from engine.model import embed, run_model
from engine.pipelines import OUTER_MODES, nested_run, run_subgraph_pipeline
from engine.presets import load_preset
from hogdm.structures import CellComplex, NestedGraph, SimplicialComplex, graph_as_hypergraph
from hogdm.validation import validate
from io_ops.corpus import enumerate_corpus, load_corpus, sample_pairs, save_corpus
from io_ops.documents import dump_document, read_document
from io_ops.reports import (
    channels_frame,
    count_frame,
    counts_from_channels,
    embedding_frame,
    emit,
    read_report,
    records_frame,
    state_frame,
    write_report,
)
from transform.lifting import cell_lift, clique_complex_lift, iso_type_lift, motif_lift
from transform.lowering import lowering
from transform.subgraphs import ego_net_collection, node_deleted_collection, reconstruction_collection
from wiring.channels import (
    RELATIONS,
    WiringSet,
    channel_count,
    compile_bamp,
    compile_cwn,
    compile_damp,
    compile_imp,
    compile_multihop,
    compile_subgraph,
)
from wiring.flavor import classify_flavor
from wl.battery import battery, containment, corpus_summary, distinguished_sets
from wl.hierarchy import resolve_test
from wl.lifted import lifted_refinement

LIFT_KINDS = ("cqc", "cell", "isotype", "ego", "drop", "reconstruction", "motif")
LOWER_KINDS = ("clique", "star", "bipartite", "weighted")
WIRE_SCHEMES = ("imp", "bamp", "cwn", "damp", "multihop", "subgraph")

# ==============================================================================
# INPUT HELPERS
# ==============================================================================


def _csv_list(text: Optional[str]) -> List[str]:
    return [part.strip() for part in (text or "").split(",") if part.strip()]


def _int_list(text: Optional[str]) -> List[int]:
    try:
        return [int(part) for part in _csv_list(text)]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}")


def _seed(args) -> int:
    return HOGNNConfig.DEFAULT_SEED if args.seed is None else args.seed


def experiment_config(args) -> ExperimentConfig:
    """Reproducibility record of one run: command parameters, seed, size caps and output path."""
    skip = {"command", "handler", "seed", "out", "trace"}
    return ExperimentConfig(
        command=args.command,
        params={key: value for key, value in sorted(vars(args).items()) if key not in skip},
        seed=_seed(args),
        budgets=HOGNNConfig.budget_snapshot(),
        out=args.out,
    )


def _require_graph(H, what: str) -> Graph:
    if not isinstance(H, Graph):
        raise KindMismatch(f"{what} needs a plain graph document, got {H.kind}")
    return H


def _read_graph(path: str, what: str) -> Graph:
    return _require_graph(read_document(path), what)


def _collection(G: Graph, args):
    if args.collection == "ego":
        return ego_net_collection(G, args.radius, induced=not args.non_induced)
    if args.collection == "drop":
        return node_deleted_collection(G, args.mode, args.count, _seed(args), args.probability)
    return reconstruction_collection(G, args.size)


# ==============================================================================
# COMMANDS
# ==============================================================================


def cmd_lift(args) -> int:
    G = _read_graph(args.input, "lift")
    kind = args.kind
    if kind == "cqc":
        H = clique_complex_lift(G, args.k or HOGNNConfig.LIFTED_CLIQUE_K)
    elif kind == "cell":
        H = cell_lift(G, args.k_cl, args.k_ind_cycle, args.k_cycle)
    elif kind == "isotype":
        H = iso_type_lift(G, args.k or 2, args.lengths)
    elif kind == "motif":
        H = motif_lift(G, motif_list(_csv_list(args.motifs) or ["triangle"]))
    else:
        args.collection = kind
        H = _collection(G, args)
    emit(dump_document(H), args.out)
    return 0


def cmd_lower(args) -> int:
    emit(dump_document(lowering(read_document(args.input), args.kind)), args.out)
    return 0


def build_wiring(args) -> WiringSet:
    H = read_document(args.input)
    scheme = args.scheme
    if scheme == "imp":
        return compile_imp(graph_as_hypergraph(H) if isinstance(H, Graph) else H)
    if scheme == "bamp":
        if isinstance(H, Graph):
            H = graph_as_hypergraph(H, SimplicialComplex)
        return compile_bamp(H, _csv_list(args.relations) or list(RELATIONS), _int_list(args.restrict_to) or None)
    if scheme == "cwn":
        if isinstance(H, Graph):
            H = cell_lift(H, 2, HOGNNConfig.LIFTED_CELL_K_IND_CYCLE, 0)
        return compile_cwn(H)
    if scheme == "damp":
        if isinstance(H, Graph):
            H = iso_type_lift(H, args.k or 2)
        return compile_damp(H, local=args.local, inclusive=args.inclusive)
    if scheme == "multihop":
        return compile_multihop(_require_graph(H, "multi-hop wiring"), _int_list(args.hops) or [1])
    if isinstance(H, Graph):
        H = ego_net_collection(H, args.radius)
    return compile_subgraph(H)


def cmd_wire(args) -> int:
    W = build_wiring(args)
    trace.ok(f"{W.scheme}: {len(W)} channels")
    write_report(channels_frame(W), args.out, _seed(args))
    return 0


def cmd_count(args) -> int:
    if args.channels:
        counts = counts_from_channels(read_report(Path(args.channels).read_text(encoding="utf-8")))
    elif args.input and args.scheme:
        counts = channel_count(build_wiring(args))
    else:
        raise UsageError("count needs --channels FILE or --scheme with --input")
    write_report(count_frame(counts), args.out, _seed(args))
    return 0


def cmd_mp_run(args) -> int:
    seed = _seed(args)
    spec = load_preset(args.model)
    if args.classify:
        row = {"model": spec.get("name", args.model), "declared": spec.get("flavor", ""), "flavor": classify_flavor(spec)}
        write_report(records_frame([row], ["model", "declared", "flavor"]), args.out, seed)
        return 0

    if not args.input:
        raise UsageError("mp-run needs --input unless --classify is given")
    H = read_document(args.input)
    outer_spec = load_preset(args.outer_model) if args.outer_model else None
    if args.pipeline == "subgraph":
        G = _require_graph(H, "the subgraph pipeline")
        annotate = motif_list(_csv_list(args.annotate)) if args.annotate else None
        vector = run_subgraph_pipeline(
            _collection(G, args), spec, outer=args.outer, outer_spec=outer_spec,
            pool=args.pool, fuse=args.fuse, annotate=annotate, seed=seed,
        )
    elif isinstance(H, NestedGraph):
        vector = nested_run(H, spec, outer_spec or {"layers": [], "readout": spec.get("readout", "sum")}, seed=seed)
    elif args.state:
        write_report(state_frame(run_model(H, spec, seed=seed)), args.out, seed)
        return 0
    else:
        vector = embed(H, spec, seed=seed)
    write_report(embedding_frame(vector), args.out, seed)
    return 0


def _test_for(name: str, A, B, args):
    complexes = (SimplicialComplex, CellComplex)
    if name.startswith("lifted") and isinstance(A, complexes) and isinstance(B, complexes):
        return lifted_refinement(_csv_list(args.relations) or ("boundary", "upper"), name=name)
    return resolve_test(name, auxiliary=args.auxiliary)


def cmd_wl_test(args) -> int:
    A, B = read_document(args.a), read_document(args.b)
    test = _test_for(args.test, A, B, args)
    verdict = test.verdict(A, B)
    row = {"test": test.name, "graph_a": Path(args.a).stem, "graph_b": Path(args.b).stem, **verdict.as_record()}
    write_report(records_frame([row], ["test", "graph_a", "graph_b", "verdict", "rounds", "messages"]), args.out, _seed(args))
    return 0


def _battery_pairs(args):
    if args.sample:
        return sample_pairs(args.sample, args.n_max, _seed(args), n_min=args.n_min), None
    if args.corpus:
        corpus = load_corpus(args.corpus)
    elif args.enumerate:
        corpus = enumerate_corpus(args.enumerate, dedup=True)
    else:
        raise UsageError("battery needs --corpus DIR, --enumerate N or --sample COUNT")
    items = corpus.items()
    pairs = [(na, ga, nb, gb) for (na, ga), (nb, gb) in combinations(items, 2)]
    return pairs, corpus


def cmd_battery(args) -> int:
    seed = _seed(args)
    tests = _csv_list(args.tests) or ["wl1"]
    pairs, corpus = _battery_pairs(args)

    if args.batch:
        if corpus is None:
            raise UsageError("--batch works on a corpus, not on sampled pairs")
        summary, table = corpus_summary(corpus.graphs, corpus.names, tests)
        write_report(summary, args.out, seed)
    else:
        frame = battery(pairs, tests)
        if args.oracle:
            iso = {(na, nb): are_isomorphic_bruteforce(ga, gb) for na, ga, nb, gb in pairs}
            frame["isomorphic"] = [iso[(a, b)] for a, b in zip(frame["graph_a"], frame["graph_b"])]
        write_report(frame, args.out, seed)
        table = containment(distinguished_sets(frame))
    if args.containment:
        write_report(table, args.containment, seed)
    return 0


def cmd_corpus(args) -> int:
    corpus = enumerate_corpus(args.n_max, dedup=not args.no_dedup)
    if args.dir:
        save_corpus(corpus, args.dir)
    rows = [{"name": name, "n": G.n, "m": G.m} for name, G in corpus.items()]
    write_report(pd.DataFrame(rows, columns=["name", "n", "m"]), args.out, _seed(args))
    return 0


def cmd_validate(args) -> int:
    report = validate(read_document(args.input))
    write_report(records_frame(report.as_records(), ["entity", "message"]), args.out, _seed(args))
    if report.ok:
        print(f"✅ valid {report.kind}", file=sys.stderr)
        return 0
    print(f"❌ {len(report.violations)} violation(s) in {report.kind}", file=sys.stderr)
    return 2


# ==============================================================================
# PARSER
# ==============================================================================


def _wiring_arguments(p: argparse.ArgumentParser, required: bool):
    p.add_argument("--scheme", choices=WIRE_SCHEMES, required=required)
    p.add_argument("--input", "--graph", dest="input", required=required, help="structure or graph document")
    p.add_argument("--relations", help="comma-separated subset of boundary,coboundary,upper,lower")
    p.add_argument("--restrict-to", help="comma-separated dimensions both channel endpoints must have")
    p.add_argument("--k", type=int, help="tuple length when a graph is lifted for DAMP")
    p.add_argument("--local", action="store_true")
    p.add_argument("--inclusive", action="store_true")
    p.add_argument("--hops", help="comma-separated hop counts for multi-hop wiring")
    p.add_argument("--radius", type=int, default=1)


def _collection_arguments(p: argparse.ArgumentParser):
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--non-induced", action="store_true")
    p.add_argument("--mode", choices=("all", "sampled"), default="all")
    p.add_argument("--count", type=int)
    p.add_argument("--probability", type=float)
    p.add_argument("--size", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default=None, help="output file (stdout when omitted)")
    common.add_argument("--trace", action="store_true", help="print trace lines to stderr")

    parser = argparse.ArgumentParser(prog="hognn", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lift", parents=[common], help="lift a plain graph")
    p.add_argument("--kind", choices=LIFT_KINDS, required=True)
    p.add_argument("--input", "--graph", dest="input", required=True)
    p.add_argument("--k", type=int, help="clique size (cqc) or tuple length (isotype)")
    p.add_argument("--k-cl", type=int, default=2)
    p.add_argument("--k-ind-cycle", type=int, default=HOGNNConfig.LIFTED_CELL_K_IND_CYCLE)
    p.add_argument("--k-cycle", type=int, default=0)
    p.add_argument("--lengths", choices=("exact", "upto"), default="exact")
    p.add_argument("--motifs", help="comma-separated motif names")
    _collection_arguments(p)
    p.set_defaults(handler=cmd_lift)

    p = sub.add_parser("lower", parents=[common], help="lower a hypergraph or complex")
    p.add_argument("--kind", choices=LOWER_KINDS, required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(handler=cmd_lower)

    p = sub.add_parser("wire", parents=[common], help="compile message channels")
    _wiring_arguments(p, required=True)
    p.set_defaults(handler=cmd_wire)

    p = sub.add_parser("count", parents=[common], help="count channels per relation")
    p.add_argument("--channels", help="channel table written by wire")
    _wiring_arguments(p, required=False)
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("mp-run", parents=[common], help="run a model forward")
    p.add_argument("--model", required=True, help="preset name or model file")
    p.add_argument("--input", "--graph", dest="input", help="structure document")
    p.add_argument("--classify", action="store_true", help="report the model's flavor instead of running it")
    p.add_argument("--state", action="store_true", help="write the final state instead of the readout")
    p.add_argument("--pipeline", choices=("none", "subgraph"), default="none")
    p.add_argument("--collection", choices=("ego", "drop", "reconstruction"), default="ego")
    p.add_argument("--outer", choices=OUTER_MODES, default="BagPool")
    p.add_argument("--outer-model", help="preset or model file for the outer stage")
    p.add_argument("--pool", default=None)
    p.add_argument("--fuse", choices=("concat", "sum"), default="concat")
    p.add_argument("--annotate", help="comma-separated motif names appended as vertex counts")
    _collection_arguments(p)
    p.set_defaults(handler=cmd_mp_run)

    p = sub.add_parser("wl-test", parents=[common], help="compare two inputs with one refinement test")
    p.add_argument("--test", required=True, help="wl1 | kwl:K | kfwl:K | dkwl:K | klwl:K | klwlp:K | lifted:cqc | lifted:cell")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--auxiliary", action="store_true", help="add the auxiliary vertex before local tests")
    p.add_argument("--relations", help="relations for lifted refinement on complexes")
    p.set_defaults(handler=cmd_wl_test)

    p = sub.add_parser("battery", parents=[common], help="run several tests over many pairs")
    p.add_argument("--tests", required=True, help="comma-separated test names")
    p.add_argument("--corpus", help="directory of graph documents")
    p.add_argument("--enumerate", type=int, help="enumerate all graphs up to this many vertices")
    p.add_argument("--sample", type=int, help="number of sampled pairs")
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--n-min", type=int, default=2, help="smallest sampled graph; equal to --n-max fixes the size")
    p.add_argument("--batch", action="store_true", help="one refinement per test over the whole corpus")
    p.add_argument("--oracle", action="store_true", help="add a brute-force isomorphism column")
    p.add_argument("--containment", help="file for the containment summary")
    p.set_defaults(handler=cmd_battery)

    p = sub.add_parser("corpus", parents=[common], help="enumerate small graphs")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--no-dedup", action="store_true")
    p.add_argument("--dir", help="write one graph document per corpus entry here")
    p.set_defaults(handler=cmd_corpus)

    p = sub.add_parser("validate", parents=[common], help="check a structure's invariants")
    p.add_argument("--input", required=True)
    p.set_defaults(handler=cmd_validate)

    return parser


def run_cli(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2

    command = args.command
    tracing = HOGNNConfig.TRACE_ENABLED
    try:
        load_env_config()
        if args.trace:
            HOGNNConfig.update_config(trace_enabled=True)
        trace.banner(f"hognn {command}")
        trace.trace("cli.config", experiment_config(args))
        return args.handler(args)
    except Exception as e:
        report = handle_command_error(e, command)
        print(ErrorHandler().format_message(report), file=sys.stderr)
        return report["exit_status"]
    finally:
        HOGNNConfig.TRACE_ENABLED = tracing


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
