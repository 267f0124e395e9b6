"""Two recoloring tricks that shorten monochromatic structures.

Tail recoloring: shift the color of every endpoint of a longest
monochromatic square-step chain; the longest chain in the window gets
strictly shorter while the color count only doubles.

Path recoloring: on a distance graph, encode each vertex's longest
upward monochromatic path length into its color; afterwards no edge that
used to be monochromatic stays monochromatic.
"""

import numpy as np

from ladderkit import (
    Explicit,
    KthPowers,
    OrderedGraph,
    WindowColoring,
    path_recoloring,
    tail_recoloring,
)
from ladderkit.core import chain_lengths, upward_path_lengths

rng = np.random.default_rng(3)
n = 3000
spec = KthPowers(2)

c = WindowColoring(rng.integers(1, 3, size=n).tolist(), r=2)
cur = c
print(f"tail recoloring, square steps, window [1, {n}]:")
for step in range(4):
    k = int(chain_lengths(cur, spec)[0].max())
    print(f"  {cur.r:>3} colors: longest monochromatic chain = {k}")
    if k < 2:
        break
    cur = tail_recoloring(cur, spec)
print()

spec2 = Explicit([1, 2, 4])
g = OrderedGraph.distance_graph(spec2, 800)
a = WindowColoring(rng.integers(1, 3, size=800).tolist(), r=2)
gamma = path_recoloring(g, a)
beta = upward_path_lengths(g, a)
mono_before = sum(1 for x, y in g.edges() if a.color(x) == a.color(y))
mono_after = sum(1 for x, y in g.edges()
                 if a.color(x) == a.color(y)
                 and gamma.color(x) == gamma.color(y))
print(f"path recoloring on G_{{1,2,4}} over [1, 800]:")
print(f"  monochromatic edges before: {mono_before}, surviving after: "
      f"{mono_after}")
print(f"  colors used: {a.r} -> {gamma.r} (max path length "
      f"{int(beta.max())})")
assert mono_after == 0
