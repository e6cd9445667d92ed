"""Uniform spanning trees as a determinantal process.

The measure P(T) proportional to the product of edge weights over T is
determinantal: its kernel is the orthogonal projection onto the exact
1-forms, written in the orthonormal edge basis.  Marginals are literally
kernel entries, and the number of weighted trees is a reduced Laplacian
determinant.
"""

import numpy as np

import detgraph as dg
from detgraph import dpp

g = dg.grid_graph(4, 4)
print(f"4x4 grid: {g.num_vertices} vertices, {g.num_edges} edges")

kernel = dg.build_kernel(g, dg.MeasureSpec.ust())
print(f"kernel rank = {kernel.rank} = |V| - 1")

# edge marginals are diagonal entries: P(e in T) = K[e, e]
diag = np.diag(kernel.matrix).real
print(f"corner edge marginal {diag[0]:.4f}, central edge marginal {diag[17]:.4f}")

# the tree polynomial counts weighted trees; at unit weights it is a count
count = dg.kirchhoff_T(g).real
print(f"number of spanning trees: {count:.0f}")

# exact samples; frequencies of any fixed tree follow its density
samples = dpp.sample_batch(kernel, seed=0, count=2000)
sizes = {len(s) for s in samples}
print(f"2000 samples drawn, all of size {sizes} (always |V| - 1)")

empirical = np.zeros(g.num_edges)
for s in samples:
    for e in s:
        empirical[e] += 1
empirical /= len(samples)
print(f"max |empirical - kernel| marginal gap: {np.abs(empirical - diag).max():.4f}")

# inclusion probabilities of edge pairs are 2x2 minors and are negatively
# associated: P(e, f in T) <= P(e in T) P(f in T)
pair = dg.inclusion_probability(kernel, (0, 1))
print(f"P(edges 0,1 both in T) = {pair:.4f} <= {diag[0] * diag[1]:.4f}")
