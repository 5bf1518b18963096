"""Command-line front end tying the pipeline together.

Commands: build, detect, ties, stats, synth, sample. Every command writes a
JSON run manifest next to its outputs with input/output digests, seeds and
per-stage timings, so runs can be checked for byte-exact reproduction.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import community, ingest, stats, synth, ties
from .community import LouvainConfig
from .errors import DataError
from .graph import Graph


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


class RunManifest:
    """Accumulates inputs, outputs, seeds and timings for one invocation."""

    def __init__(self, command: str, parameters: dict, output_dir: Path):
        self.command = command
        self.parameters = parameters
        self.output_dir = output_dir
        self.inputs: list[dict] = []
        self.outputs: list[dict] = []
        self.seeds: dict = {}
        self.timings: dict = {}
        self.report: dict = {}

    def add_input(self, path) -> None:
        p = Path(path)
        self.inputs.append({"path": str(p), "sha256": _sha256(p)})

    def add_output(self, path) -> None:
        p = Path(path)
        self.outputs.append({"path": str(p), "sha256": _sha256(p)})

    def stage(self, name: str):
        manifest = self

        class _Stage:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                manifest.timings[name] = time.perf_counter() - self.t0
                return False

        return _Stage()

    def write(self) -> Path:
        path = self.output_dir / f"{self.command}.manifest.json"
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "inputs": self.inputs,
            "seeds": self.seeds,
            "timings": self.timings,
            "report": self.report,
            "outputs": self.outputs,
        }
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        return path


def _outdir(args) -> Path:
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_graph(path) -> Graph:
    return ingest.read_graph(path)


def cmd_build(args) -> None:
    out = _outdir(args)
    visited = list(args.visited or [])
    if len(visited) > len(args.edges):
        raise UsageError("more --visited files than edge files")
    manifest = RunManifest(
        "build",
        {"edges": [str(p) for p in args.edges], "visited": [str(p) for p in visited]},
        out,
    )
    samples = []
    with manifest.stage("parse"):
        def _load(i):
            vpath = visited[i] if i < len(visited) else None
            return ingest.load_crawl_sample(args.edges[i], vpath)

        with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
            samples = list(pool.map(_load, range(len(args.edges))))
    for path in args.edges:
        manifest.add_input(path)
    for path in visited:
        manifest.add_input(path)
    for path, sample in zip(args.edges, samples):
        print(f"sample {path}: {len(sample.edges)} edge lines, {len(sample.visited)} visited")
        manifest.report.setdefault("samples", []).append(
            {"path": str(path), "raw_edges": len(sample.edges), "visited": len(sample.visited)}
        )
    merged = samples[0]
    with manifest.stage("merge"):
        for sample in samples[1:]:
            merged, overlap = ingest.merge_samples(merged, sample)
            print(f"merge: visited overlap {overlap}, merged visited {len(merged.visited)}")
            manifest.report.setdefault("overlaps", []).append(overlap)
    with manifest.stage("core"):
        g = ingest.extract_visited_core(merged)
    print(
        f"core: {g.node_count} nodes, {g.edge_count} edges "
        f"(undirected, counted once); dropped {g.self_loops_dropped} self-loops, "
        f"{g.duplicates_dropped} duplicate edges"
    )
    manifest.report.update(
        {
            "core_nodes": g.node_count,
            "core_edges": g.edge_count,
            "edge_counting": "each undirected edge counted once",
            "self_loops_dropped": g.self_loops_dropped,
            "duplicates_dropped": g.duplicates_dropped,
        }
    )
    graph_path = out / "core.edges"
    ids_path = out / "core.ids"
    with manifest.stage("write"):
        ingest.write_edge_list(g, graph_path)
        with open(ids_path, "w", encoding="utf-8") as f:
            for dense, orig in enumerate(g.original_ids.tolist()):
                f.write(f"{dense} {orig}\n")
    manifest.add_output(graph_path)
    manifest.add_output(ids_path)
    manifest.write()


def cmd_detect(args) -> None:
    out = _outdir(args)
    manifest = RunManifest(
        "detect",
        {"graph": str(args.graph), "min_gain": args.min_gain, "max_levels": args.max_levels},
        out,
    )
    manifest.seeds["vertex_order_seed"] = args.seed
    manifest.add_input(args.graph)
    with manifest.stage("load"):
        g = _load_graph(args.graph)
    cfg = LouvainConfig(
        min_gain=args.min_gain, max_levels=args.max_levels, vertex_order_seed=args.seed
    )
    with manifest.stage("louvain"):
        dend = community.louvain(g, cfg)
    with manifest.stage("write"):
        written = community.write_dendrogram(dend, out)
    for path in written:
        manifest.add_output(path)
    for i, (part, q) in enumerate(zip(dend.levels, dend.modularities)):
        print(f"level {i}: {part.community_count} communities, Q={q:.6f}")
    final = dend.final
    threshold, fraction = community.resolution_limit(g, final)
    sizes = stats.community_sizes(final)
    print(f"resolution threshold: {threshold:.1f}; communities below: {fraction:.1%}")
    print(
        f"final: {final.community_count} communities over {g.node_count} nodes "
        f"(mean size {g.node_count / final.community_count:.2f}, max {int(sizes.max())})"
    )
    manifest.report.update(
        {
            "levels": [
                {"level": i, "communities": part.community_count, "modularity": q}
                for i, (part, q) in enumerate(zip(dend.levels, dend.modularities))
            ],
            "resolution_threshold": threshold,
            "below_threshold_fraction": fraction,
            "final_communities": final.community_count,
            "mean_community_size": g.node_count / final.community_count,
            "max_community_size": int(sizes.max()),
        }
    )
    if args.truth:
        manifest.add_input(args.truth)
        truth = community.read_partition(args.truth)
        score = stats.nmi(dend.final, truth)
        print(f"NMI vs truth: {score:.4f}")
        manifest.report["nmi_vs_truth"] = score
    manifest.write()


def cmd_ties(args) -> None:
    out = _outdir(args)
    manifest = RunManifest(
        "ties",
        {
            "graph": str(args.graph),
            "partition": str(args.partition),
            "tipping_point_definition": (
                "smallest degree k with mean weak count exceeding mean strong "
                "count over vertices of degree > k"
            ),
        },
        out,
    )
    manifest.add_input(args.graph)
    manifest.add_input(args.partition)
    with manifest.stage("load"):
        g = _load_graph(args.graph)
        p = community.read_partition(args.partition)
    with manifest.stage("classify"):
        labeling = ties.classify_ties(g, p)
        strong, weak = ties.tie_counts_per_node(g, labeling)
    labels_path = out / "ties.labels"
    counts_path = out / "tie_counts.csv"
    means_path = out / "tie_degree_means.csv"
    with manifest.stage("write"):
        ties.write_labeling(g, labeling, labels_path)
        with open(counts_path, "w", encoding="utf-8") as f:
            f.write("vertex,strong,weak\n")
            for v in range(g.node_count):
                f.write(f"{v},{strong[v]},{weak[v]}\n")
        with open(means_path, "w", encoding="utf-8") as f:
            f.write("degree,mean_strong,mean_weak,vertex_count\n")
            for d, ms, mw, c in ties.tie_means_by_degree(g, labeling):
                f.write(f"{d},{ms:.12g},{mw:.12g},{c}\n")
    for path in (labels_path, counts_path, means_path):
        manifest.add_output(path)
    wf, sf = ties.tie_ratio(labeling)
    print(f"ties: {labeling.weak_count} weak / {labeling.strong_count} strong")
    print(f"ratio: weak {wf:.4f}, strong {sf:.4f}")
    k = ties.tipping_point(strong, weak)
    print(f"tipping point: {'none' if k is None else k}")
    manifest.report.update(
        {
            "weak_count": labeling.weak_count,
            "strong_count": labeling.strong_count,
            "weak_fraction": wf,
            "strong_fraction": sf,
            "tipping_point": k,
        }
    )
    manifest.write()


_STATS_SELECTORS = ("ccdf", "sizes", "density", "linkfraction", "fit")


def _log_binned(series: stats.CcdfSeries, bins: int) -> list[tuple[float, float]]:
    """Geometric-bin means of a CCDF for plot-friendly output."""
    positive = series.values > 0
    x = series.values[positive]
    p = series.tail_probs[positive]
    if x.size == 0:
        return []
    edges = np.geomspace(x.min(), x.max(), bins + 1)
    edges[-1] *= 1.0 + 1e-12
    out = []
    which = np.digitize(x, edges) - 1
    for b in range(bins):
        mask = which == b
        if mask.any():
            out.append((float(x[mask].mean()), float(p[mask].mean())))
    return out


def cmd_stats(args) -> None:
    out = _outdir(args)
    select = args.select.split(",") if args.select else list(_STATS_SELECTORS)
    for name in select:
        if name not in _STATS_SELECTORS:
            raise UsageError(f"unknown selector '{name}' (choose from {', '.join(_STATS_SELECTORS)})")
    manifest = RunManifest(
        "stats",
        {
            "graph": str(args.graph),
            "partition": str(args.partition),
            "labeling": str(args.labeling),
            "select": select,
            "ccdf_of": args.ccdf_of,
            "fit_of": args.fit_of,
            "log_bins": args.log_bins,
            "link_fraction_definition": (
                "per community: incident weak ties / total weak ties; "
                "communities without incident weak ties omitted"
            ),
        },
        out,
    )
    for path in (args.graph, args.partition, args.labeling):
        manifest.add_input(path)
    with manifest.stage("load"):
        g = _load_graph(args.graph)
        p = community.read_partition(args.partition)
        labeling = ties.read_labeling(g, args.labeling)
        if p.node_count != g.node_count:
            raise DataError("partition and graph cover different vertex sets")
    written: list[Path] = []

    def _ccdf_samples() -> np.ndarray:
        if args.ccdf_of == "degree":
            return g.degrees
        if args.ccdf_of == "community-size":
            return stats.community_sizes(p)
        strong, weak = ties.tie_counts_per_node(g, labeling)
        return strong if args.ccdf_of == "strong" else weak

    with manifest.stage("compute"):
        if "ccdf" in select:
            series = stats.ccdf(_ccdf_samples())
            path = out / "ccdf.csv"
            stats.write_ccdf_csv(series, path)
            written.append(path)
            if args.log_bins:
                binned = _log_binned(series, args.log_bins)
                path = out / "ccdf_binned.csv"
                with open(path, "w", encoding="utf-8") as f:
                    f.write("x,prob\n")
                    for x, pr in binned:
                        f.write(f"{x:.12g},{pr:.12g}\n")
                written.append(path)
        if "sizes" in select:
            path = out / "sizes.csv"
            stats.write_sizes_csv(stats.community_sizes(p), path)
            written.append(path)
        if "density" in select:
            path = out / "density.csv"
            stats.write_density_csv(stats.density_map(g, p, labeling), path)
            written.append(path)
        if "linkfraction" in select:
            path = out / "linkfraction.csv"
            stats.write_link_fraction_csv(g, p, labeling, path)
            written.append(path)
            path = out / "linkfraction_communities.csv"
            stats.write_link_fraction_communities_csv(g, p, labeling, path)
            written.append(path)
        if "fit" in select:
            if args.fit_of == "ccdf":
                series = stats.ccdf(_ccdf_samples())
                keep = (series.values > 0) & (series.tail_probs > 0)
                slope, intercept, r2 = stats.loglog_slope(
                    series.values[keep], series.tail_probs[keep]
                )
            else:
                pairs = stats.link_fraction(g, p, labeling)
                xs = [s for s, _ in pairs]
                ys = [fr for _, fr in pairs]
                slope, intercept, r2 = stats.loglog_slope(xs, ys)
            path = out / "fit.csv"
            stats.write_fit_csv(slope, intercept, r2, path)
            written.append(path)
            print(f"fit ({args.fit_of}): slope={slope:.4f} intercept={intercept:.4f} r2={r2:.4f}")
    for path in written:
        manifest.add_output(path)
    print(f"stats: wrote {len(written)} file(s) to {out}")
    manifest.write()


def cmd_synth(args) -> None:
    out = _outdir(args)
    manifest = RunManifest("synth", {"generator": args.generator}, out)
    manifest.seeds["generator_seed"] = args.seed
    graph_path = out / "graph.edges"
    if args.generator == "bernoulli":
        manifest.parameters.update({"n": args.n, "p": args.p})
        with manifest.stage("generate"):
            g = synth.bernoulli_graph(args.n, args.p, args.seed)
        ingest.write_edge_list(g, graph_path)
        manifest.add_output(graph_path)
        print(f"bernoulli graph: {g.node_count} nodes, {g.edge_count} edges")
    else:
        manifest.parameters.update(
            {"n": args.n, "blocks": args.blocks, "p_in": args.p_in, "p_out": args.p_out}
        )
        with manifest.stage("generate"):
            g, truth = synth.planted_partition(args.n, args.blocks, args.p_in, args.p_out, args.seed)
        ingest.write_edge_list(g, graph_path)
        truth_path = out / "truth.partition"
        community.write_partition(truth, truth_path)
        manifest.add_output(graph_path)
        manifest.add_output(truth_path)
        print(
            f"planted graph: {g.node_count} nodes, {g.edge_count} edges, "
            f"{args.blocks} blocks of {args.n // args.blocks}"
        )
    manifest.write()


def cmd_sample(args) -> None:
    out = _outdir(args)
    manifest = RunManifest("sample", {"sampler": args.sampler, "graph": str(args.graph)}, out)
    manifest.seeds["sampler_seed"] = args.seed
    manifest.add_input(args.graph)
    with manifest.stage("load"):
        g = _load_graph(args.graph)
    with manifest.stage("sample"):
        if args.sampler == "uniform":
            manifest.parameters.update({"id_space": args.id_space, "count": args.count})
            id_space = args.id_space if args.id_space is not None else g.node_count
            trace = synth.uniform_sample(g, id_space, args.count, args.seed)
        else:
            if args.seeds:
                seed_vertices = [int(s) for s in args.seeds.split(",")]
            else:
                rng = np.random.default_rng([args.seed, 1])
                eligible = np.nonzero(g.degrees > 0)[0]
                if eligible.size == 0:
                    raise DataError("graph has no vertex with degree >= 1")
                k = min(args.seed_count, eligible.size)
                seed_vertices = rng.choice(eligible, size=k, replace=False).tolist()
            manifest.parameters.update({"steps": args.steps, "walk_seeds": seed_vertices})
            trace = synth.mhrw_sample(g, seed_vertices, args.steps, args.seed)
    trace_path = out / "trace.csv"
    bias_path = out / "bias.json"
    with manifest.stage("write"):
        synth.write_trace_csv(trace, trace_path)
        report = synth.bias_report(g, trace)
        bias_path.write_text(
            json.dumps(
                {
                    "method": trace.method,
                    "visited": int(trace.visited.size),
                    "sample_mean_degree": report.sample_mean_degree,
                    "population_mean_degree": report.population_mean_degree,
                    "relative_bias": report.relative_bias,
                },
                indent=2,
            )
            + "\n",
            encoding="utf-8",
        )
    manifest.add_output(trace_path)
    manifest.add_output(bias_path)
    print(
        f"{trace.method}: visited {trace.visited.size} vertices; "
        f"sample mean degree {report.sample_mean_degree:.3f} vs population "
        f"{report.population_mean_degree:.3f} (relative bias {report.relative_bias:+.2%})"
    )
    manifest.write()


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="root seed for all randomness")
    p.add_argument("--threads", type=int, default=1, help="worker bound for parallel stages")
    p.add_argument("--output-dir", default=".", help="directory for outputs and the manifest")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weakties", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("build", help="parse, merge and core-extract crawl samples")
    p.add_argument("edges", nargs="+", help="edge-list file(s), one per crawl sample")
    p.add_argument(
        "--visited",
        action="append",
        help="visited-id file for the matching edge file (else inferred from first endpoints)",
    )
    _add_common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("detect", help="run community detection and write the dendrogram")
    p.add_argument("graph", help="edge-list graph file")
    p.add_argument("--min-gain", type=float, default=1e-7)
    p.add_argument("--max-levels", type=int, default=32)
    p.add_argument("--truth", help="ground-truth partition file for NMI reporting")
    _add_common(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("ties", help="classify strong/weak ties against a partition")
    p.add_argument("graph")
    p.add_argument("partition")
    _add_common(p)
    p.set_defaults(func=cmd_ties)

    p = sub.add_parser("stats", help="write the CSV statistics battery")
    p.add_argument("graph")
    p.add_argument("partition")
    p.add_argument("labeling")
    p.add_argument("--select", help=f"comma list from: {', '.join(_STATS_SELECTORS)}")
    p.add_argument(
        "--ccdf-of",
        choices=["degree", "community-size", "strong", "weak"],
        default="degree",
    )
    p.add_argument("--fit-of", choices=["ccdf", "linkfraction"], default="ccdf")
    p.add_argument("--log-bins", type=int, default=0, help="also write a log-binned CCDF")
    _add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("synth", help="generate synthetic graphs")
    gen = p.add_subparsers(dest="generator", required=True)
    b = gen.add_parser("bernoulli", help="uniform random graph")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--p", type=float, required=True)
    _add_common(b)
    b.set_defaults(func=cmd_synth)
    pl = gen.add_parser("planted", help="equal-block planted partition")
    pl.add_argument("--n", type=int, required=True)
    pl.add_argument("--blocks", type=int, required=True)
    pl.add_argument("--p-in", type=float, required=True)
    pl.add_argument("--p-out", type=float, required=True)
    _add_common(pl)
    pl.set_defaults(func=cmd_synth)

    p = sub.add_parser("sample", help="run a vertex sampler and report bias")
    sam = p.add_subparsers(dest="sampler", required=True)
    u = sam.add_parser("uniform", help="rejection sampling over a sparse id space")
    u.add_argument("--graph", required=True)
    u.add_argument("--id-space", type=int, default=None)
    u.add_argument("--count", type=int, required=True)
    _add_common(u)
    u.set_defaults(func=cmd_sample)
    m = sam.add_parser("mhrw", help="degree-corrected random walks")
    m.add_argument("--graph", required=True)
    m.add_argument("--steps", type=int, required=True, help="steps per walk")
    m.add_argument("--seed-count", type=int, default=synth.MHRW_DEFAULT_SEED_COUNT)
    m.add_argument("--seeds", help="comma-separated seed vertices (overrides --seed-count)")
    _add_common(m)
    m.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            raise UsageError("a command is required (see --help)")
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be >= 1")
        args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal invariant violation
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
