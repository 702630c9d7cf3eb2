"""Cap vertex degrees with the marking scheme and compare matchings.

Run:  python3 demos/walkthrough_degree_cap.py
"""

from __future__ import annotations

import random

from hedcs import DegreeCappedEngine, capped_delta_prime, maximum_matching_exact
from hedcs.graph import EdgeSetView, edge_key

rng = random.Random(3)
n = 300
edges = {edge_key(0, v) for v in range(1, 281)}  # one hub with 280 neighbours
while len(edges) < 400:
    u, v = rng.sample(range(n), 2)
    edges.add(edge_key(u, v))
edges = sorted(edges)

dp = capped_delta_prime(len(edges), 0.1)
print(f"m={len(edges)}  hub degree=280  cap D'={dp}")
eng = DegreeCappedEngine(n, 1, 8, 0.05, len(edges), seed=1, edges=edges, delta_prime=dp)
print(f"capped subgraph: {len(eng.marks.tilde)} edges, max degree {eng.marks.max_tilde_degree()}")

mu = maximum_matching_exact(EdgeSetView(n, edges)).size
mu_tilde = maximum_matching_exact(EdgeSetView(n, eng.marks.tilde_edges())).size
print(f"mu(G)={mu}  mu(G~)={mu_tilde}  engine |M|={eng.matching.size}")

worst = 0
for u, v in rng.sample(edges, 150):
    fwd, _ = eng.apply_update("-", u, v)
    worst = max(worst, len(fwd))
print(f"after 150 deletions: max forwarded events per update = {worst}, |M|={eng.matching.size}")
