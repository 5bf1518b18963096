"""Dataset construction walkthrough: parse, merge, and extract the visited core.

Two simulated crawl samples over one anonymized id space are written to
disk, loaded back, merged (reporting the visited-set overlap), and reduced
to the core graph of edges between visited users.
"""

import tempfile
from pathlib import Path

import numpy as np

from weakties import (
    bernoulli_graph,
    extract_visited_core,
    load_crawl_sample,
    merge_samples,
    uniform_sample,
    write_edge_list,
)

rng = np.random.default_rng(0)
workdir = Path(tempfile.mkdtemp(prefix="weakties-demo-"))
print(f"working in {workdir}\n")

# The "platform": a hidden friendship graph nobody observes directly.
population = bernoulli_graph(n=3000, p=0.004, seed=1)
print(f"hidden population graph: {population.node_count} users, {population.edge_count} friendships")

# Each crawl visits a subset of users and records the ego -> friend lists.
def crawl(seed: int, count: int) -> Path:
    visited = uniform_sample(population, id_space=3000, count=count, seed=seed).visited
    visited_set = set(visited.tolist())
    path = workdir / f"crawl_{seed}.edges"
    with open(path, "w", encoding="utf-8") as f:
        f.write("# simulated crawl output: each line is ego friend\n")
        for ego in visited.tolist():
            for friend in population.neighbors(ego).tolist():
                f.write(f"{ego} {friend}\n")
    return path

file_a = crawl(seed=11, count=900)
file_b = crawl(seed=22, count=900)

# Visited ids are inferred from the first endpoint of each line.
sample_a = load_crawl_sample(file_a)
sample_b = load_crawl_sample(file_b)
print(f"sample A: {len(sample_a.edges)} edge lines, {len(sample_a.visited)} visited users")
print(f"sample B: {len(sample_b.edges)} edge lines, {len(sample_b.visited)} visited users")

merged, overlap = merge_samples(sample_a, sample_b)
print(f"\nmerged: {len(merged.visited)} visited users, overlap between crawls: {overlap}")

core = extract_visited_core(merged)
print(
    f"visited core: {core.node_count} users, {core.edge_count} friendships "
    f"({core.duplicates_dropped} duplicate lines collapsed)"
)
print(f"mean degree in the core: {core.degrees.mean():.2f} "
      f"(population: {population.degrees.mean():.2f})")
print("every core vertex keeps at least one edge:", int(core.degrees.min()) >= 1)

out = workdir / "core.edges"
write_edge_list(core, out)
print(f"\ncore graph written to {out}")
