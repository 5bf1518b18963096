"""Edge-list parsing, crawl-sample merging, and visited-core extraction.

A crawl sample distinguishes users that were actually queried (visited)
from users merely discovered on the frontier. The core graph keeps only
friendships between visited users, so every retained vertex was crawled.
"""

from __future__ import annotations

import logging
from array import array
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError, ParseError
from .graph import Graph, build_graph

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CrawlSample:
    """Raw edges (duplicates allowed) plus the sorted set of visited ids."""

    edges: np.ndarray
    visited: np.ndarray


def _open_lines(source):
    if isinstance(source, (str, Path)):
        return open(source, "rb"), True
    return source, False


def parse_edge_list(source) -> np.ndarray:
    """Parse "u v" lines into an (k, 2) int64 array, in file order.

    Blank lines and lines starting with '#' are skipped. Any other line must
    hold exactly two non-negative decimal ids; offenders raise
    :class:`ParseError` with the 1-based line number.
    """
    f, close = _open_lines(source)
    buf = array("q")
    try:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line:
                continue
            comment = b"#" if isinstance(line, bytes) else "#"
            if line.startswith(comment):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("expected two whitespace-separated ids", lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("ids must be decimal integers", lineno) from None
            if u < 0 or v < 0:
                raise ParseError("ids must be non-negative", lineno)
            buf.append(u)
            buf.append(v)
    finally:
        if close:
            f.close()
    return np.asarray(buf, dtype=np.int64).reshape(-1, 2)


def parse_id_list(source) -> np.ndarray:
    """Parse a one-id-per-line file into a sorted unique id array."""
    f, close = _open_lines(source)
    buf = array("q")
    try:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line:
                continue
            comment = b"#" if isinstance(line, bytes) else "#"
            if line.startswith(comment):
                continue
            try:
                value = int(line)
            except ValueError:
                raise ParseError("expected a single decimal id", lineno) from None
            if value < 0:
                raise ParseError("ids must be non-negative", lineno)
            buf.append(value)
    finally:
        if close:
            f.close()
    return np.unique(np.asarray(buf, dtype=np.int64))


def load_crawl_sample(edge_source, visited_source=None) -> CrawlSample:
    """Read one crawl sample from an edge-list file and an optional visited file.

    Without a visited file, visited ids are inferred as the first endpoint of
    every edge line (crawler convention: each line is ego followed by friend).
    Visited ids incident to no edge are dropped to keep the sample coherent.
    """
    edges = parse_edge_list(edge_source)
    if visited_source is not None:
        visited = parse_id_list(visited_source)
    else:
        visited = np.unique(edges[:, 0]) if edges.size else np.zeros(0, dtype=np.int64)
    if edges.size:
        endpoints = np.unique(edges)
        kept = visited[np.isin(visited, endpoints, assume_unique=True)]
    else:
        kept = np.zeros(0, dtype=np.int64)
    dropped = visited.size - kept.size
    if dropped:
        log.warning("dropped %d visited id(s) with no incident edge", dropped)
    return CrawlSample(edges=edges, visited=kept)


def merge_samples(a: CrawlSample, b: CrawlSample) -> tuple[CrawlSample, int]:
    """Union of two samples sharing one id space.

    Edge duplicates are preserved for the graph builder to collapse, so the
    merge stays a pure union with auditable counts. Returns the merged sample
    and the visited-set overlap count.
    """
    edges = np.concatenate([a.edges, b.edges]) if (a.edges.size or b.edges.size) else a.edges
    visited = np.union1d(a.visited, b.visited)
    overlap = int(np.intersect1d(a.visited, b.visited, assume_unique=True).size)
    return CrawlSample(edges=edges, visited=visited), overlap


def extract_visited_core(s: CrawlSample) -> Graph:
    """Graph over edges whose both endpoints were visited.

    Vertices left without such an edge are dropped during the build, so the
    result's vertex set is a subset of the visited set and every vertex has
    degree at least one. The result may be empty.
    """
    if s.edges.size == 0:
        return build_graph(s.edges)
    keep = np.isin(s.edges[:, 0], s.visited, assume_unique=False) & np.isin(
        s.edges[:, 1], s.visited, assume_unique=False
    )
    return build_graph(s.edges[keep])


def write_edge_list(g: Graph, path, header: bool = True) -> None:
    """Serialize dense edges as "u v" lines, with a "# nodes=..." header comment.

    The header lets loaders rebuild graphs that contain isolated vertices;
    generic parsers skip it as a comment.
    """
    with open(path, "w", encoding="utf-8") as f:
        if header:
            f.write(f"# nodes={g.node_count} edges={g.edge_count}\n")
        for u, v in g.edges.tolist():
            f.write(f"{u} {v}\n")


def declared_node_count(path) -> int | None:
    """Node count from a leading "# nodes=N" header, if present."""
    with open(path, "r", encoding="utf-8") as f:
        for raw in f:
            line = raw.strip()
            if not line:
                continue
            if not line.startswith("#"):
                return None
            for token in line[1:].split():
                if token.startswith("nodes="):
                    try:
                        return int(token[len("nodes="):])
                    except ValueError:
                        return None
    return None


def read_graph(path) -> Graph:
    """Load a graph file, honoring the optional "# nodes=N" header."""
    pairs = parse_edge_list(path)
    declared = declared_node_count(path)
    if declared is None:
        return build_graph(pairs)
    return Graph.from_edges(declared, pairs)
