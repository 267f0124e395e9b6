"""Square steps: an explicit walk and the dead ends that block greedy ones.

The recursion z_1 = 6, z_{n+1} = z_n^2/4 + 1 produces integers whose
squares form a chain with perfect-square gaps, so square-difference
chains of any length exist inside the squares themselves.  On the other
hand, concrete colorings contain dead ends: integers whose every
square-step successor has a different color.
"""

import numpy as np

from ladderkit import KthPowers, WindowColoring, find_dead_ends, square_walk

state = square_walk(8)
print("walk terms:", list(state.terms))
print("square gaps are perfect squares:")
for a, b in zip(state.squares, state.squares[1:]):
    root = int((b - a) ** 0.5)
    print(f"  {b} - {a} = {b - a} = {root}^2")
assert state.check()
print()

rng = np.random.default_rng(0)
n = 500
c = WindowColoring(rng.integers(1, 3, size=n).tolist(), r=2)
dead = find_dead_ends(c, KthPowers(2))
print(f"random 2-coloring of [1, {n}]: {len(dead)} window dead ends")
print("first few:", dead[:10])
# dead ends are window-relative: a successor beyond N is never inspected
x = dead[0] if dead else None
if x is not None:
    succs = [x + k * k for k in range(1, 10) if x + k * k <= n]
    print(f"check {x}: colors of in-window successors "
          f"{[c.color(y) for y in succs]} vs its own color {c.color(x)}")
