"""Strong and weak ties: classification, per-node counts, and the tipping point.

Edges inside a community are strong ties; edges between communities are
weak ties. On graphs with many small communities the weak ties dominate,
and above some degree the average vertex carries more weak than strong.
"""

import numpy as np

from weakties import (
    classify_ties,
    louvain,
    planted_partition,
    tie_counts_per_node,
    tie_means_by_degree,
    tie_ratio,
    tipping_point,
)

# many small blocks with plenty of cross traffic: weak ties outnumber strong
g, truth = planted_partition(n=1200, blocks=120, p_in=0.5, p_out=0.004, seed=5)
partition = louvain(g).final
print(f"graph: {g.node_count} vertices, {g.edge_count} edges; "
      f"{partition.community_count} detected communities")

labeling = classify_ties(g, partition)
weak_fraction, strong_fraction = tie_ratio(labeling)
print(f"weak ties: {labeling.weak_count} ({weak_fraction:.0%}), "
      f"strong ties: {labeling.strong_count} ({strong_fraction:.0%})\n")

strong, weak = tie_counts_per_node(g, labeling)
assert (strong + weak == g.degrees).all()

print("degree-binned averages (degree, mean strong, mean weak, vertices):")
for degree_value, mean_strong, mean_weak, count in tie_means_by_degree(g, labeling)[:12]:
    marker = "  <- weak overtakes" if mean_weak > mean_strong else ""
    print(f"  k={degree_value:3d}  strong={mean_strong:5.2f}  weak={mean_weak:5.2f}  n={count}{marker}")

k = tipping_point(strong, weak)
print(f"\ntipping point: {'none' if k is None else k} "
      "(smallest k where vertices of degree > k average more weak than strong)")
