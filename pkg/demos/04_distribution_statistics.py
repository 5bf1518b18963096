"""The statistics battery: CCDFs, community sizes, the weak-tie density map,
link fractions, and log-log slope fits.

Every table is also written as CSV, the same files the `weakties stats`
command produces.
"""

import tempfile
from pathlib import Path

import numpy as np

from weakties import (
    ccdf,
    classify_ties,
    community_sizes,
    density_map,
    link_fraction,
    loglog_slope,
    louvain,
    planted_partition,
)
from weakties.stats import (
    write_ccdf_csv,
    write_density_csv,
    write_fit_csv,
    write_link_fraction_csv,
    write_sizes_csv,
)

out = Path(tempfile.mkdtemp(prefix="weakties-stats-"))

# uneven blocks produce a spread of community sizes
g, _ = planted_partition(n=900, blocks=60, p_in=0.35, p_out=0.003, seed=9)
partition = louvain(g).final
labeling = classify_ties(g, partition)
print(f"graph: {g.node_count} vertices, {g.edge_count} edges, "
      f"{partition.community_count} communities, {labeling.weak_count} weak ties\n")

degree_ccdf = ccdf(g.degrees)
print("degree CCDF, first five points (x, Pr(X > x)):")
for x, prob in degree_ccdf.points[:5]:
    print(f"  {x:4.0f}  {prob:.3f}")
write_ccdf_csv(degree_ccdf, out / "ccdf.csv")

sizes = community_sizes(partition)
write_sizes_csv(sizes, out / "sizes.csv")
print(f"\ncommunity sizes: min={sizes.min()} median={int(np.median(sizes))} max={sizes.max()}")

dm = density_map(g, partition, labeling)
write_density_csv(dm, out / "density.csv")
heaviest = max(dm.counts.items(), key=lambda kv: kv[1])
print(f"density map: {len(dm.counts)} size pairs, total mass {dm.total} "
      f"(= 2 x {labeling.weak_count} weak ties); heaviest cell {heaviest}")

pairs = link_fraction(g, partition, labeling)
write_link_fraction_csv(g, partition, labeling, out / "linkfraction.csv")
print("\nlink fraction by community size (size, mean share of all weak ties):")
for size, mean_fraction in pairs[:8]:
    print(f"  size={size:3d}  fraction={mean_fraction:.4f}")

# slope of the degree CCDF tail on log-log axes
keep = (degree_ccdf.values > 0) & (degree_ccdf.tail_probs > 0)
slope, intercept, r2 = loglog_slope(degree_ccdf.values[keep], degree_ccdf.tail_probs[keep])
write_fit_csv(slope, intercept, r2, out / "fit.csv")
print(f"\nlog-log fit of the degree CCDF: slope={slope:.2f}, r^2={r2:.3f}")
print(f"\nCSV battery written to {out}")
