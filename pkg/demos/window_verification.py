"""Exhaustive window checks: thresholds, grids, and extremal objects.

Small windows can be decided completely.  This script recovers the
classical 2-coloring/3-AP threshold at window 9, certifies a window size
that forces monochromatic 2x2 grids, and computes exact extremal
square-difference-free sets and chromatic numbers of distance-graph
windows.
"""

import numpy as np

from ladderkit import (
    AllNaturals,
    KthPowers,
    WindowColoring,
    WindowProperty,
    certified_grid_window,
    check_window_property,
    distance_graph_chromatic_window,
    find_mono_grid,
    max_s_free_subset,
    validate_witness,
)

for n in (7, 8, 9, 10):
    v = check_window_property(
        WindowProperty("Ladder", AllNaturals(), r=2, n_max=n, k=3))
    tail = ""
    if v.counterexample is not None:
        tail = " blocker " + "".join(
            map(str, v.counterexample.color_array().tolist()))
    print(f"every 2-coloring of [1, {n:>2}] has a 3-AP: {v.outcome}"
          f" ({v.nodes_explored} nodes){tail}")
print()

b = certified_grid_window(2, [2, 2])
print(f"certified window for monochromatic 2x2 grids, 2 colors: {b}")
rng = np.random.default_rng(1)
c = WindowColoring(rng.integers(1, 3, size=b).tolist(), r=2)
w = find_mono_grid(AllNaturals(), c, [2, 2])
assert w is not None and validate_witness(w, c, AllNaturals())
pts = [w.points[k] for k in sorted(w.points)]
print(f"sample grid in a random coloring: points {pts}, color {w.color}, "
      f"axis steps {w.axis_steps}")
print()

for n in (20, 40, 60):
    free = max_s_free_subset(KthPowers(2), n)
    print(f"largest square-difference-free subset of [1, {n:>2}]: "
          f"{len(free)} elements (exact={free.exact})")
print()

for n in (10, 30, 60):
    chrom = distance_graph_chromatic_window(KthPowers(2), n)
    print(f"chromatic number of the square-distance graph on [1, {n:>2}]: "
          f"{chrom.number} (exact={chrom.exact})")
