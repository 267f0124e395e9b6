"""Searchers for monochromatic structures inside a window coloring.

Every searcher returns a witness that passes
:func:`ladderkit.core.validate_witness`, or ``None`` when the structure is
absent (absence is a normal result, not an error).  Tie-breaking is
lexicographic-first everywhere: smallest difference, then smallest start.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .colorings import block_coloring
from .core import (
    APWitness,
    DiffSetSpec,
    Explicit,
    GridWitness,
    OrderedGraph,
    PathWitness,
    SSeqWitness,
    WindowColoring,
    chain_lengths,
    diffset_members,
    upward_path_lengths,
)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Arithmetic progressions
# ---------------------------------------------------------------------------

def _first_ap_start(colors: np.ndarray, d: int, k: int) -> Optional[int]:
    """0-based start of the first monochromatic k-term AP with difference d."""
    n = len(colors)
    if k == 1:
        return 0
    if (k - 1) * d >= n:
        return None
    eq = colors[:-d] == colors[d:]
    run = eq  # run[i] true iff positions i..i+(j-1)d monochromatic, j = 2
    for j in range(3, k + 1):
        limit = n - (j - 1) * d
        run = eq[:limit] & run[d:d + limit]
        if not run.any():
            return None
    idx = np.flatnonzero(run)
    return int(idx[0]) if idx.size else None


def _longest_ap(colors: np.ndarray, d: int, cap: int):
    """(max run length <= cap, 0-based start) for difference d."""
    n = len(colors)
    if d >= n or cap == 1:
        return 1, 0
    eq = colors[:-d] == colors[d:]
    if not eq.any():
        return 1, 0
    best_k, best_start = 2, int(np.flatnonzero(eq)[0])
    run = eq
    j = 2
    while j < cap:
        limit = n - j * d
        if limit <= 0:
            break
        run = eq[:limit] & run[d:d + limit]
        if not run.any():
            break
        j += 1
        best_k, best_start = j, int(np.flatnonzero(run)[0])
    return best_k, best_start


def find_mono_ap(c: WindowColoring, spec: DiffSetSpec,
                 k: int) -> Optional[APWitness]:
    """First monochromatic k-term AP with difference in the spec."""
    if k < 1:
        raise ValueError("k must be >= 1")
    colors = np.asarray(c.color_array())
    if k == 1:
        members = diffset_members(spec, c.n_max)
        if not members:
            return None
        return APWitness(1, members[0], 1, c.color(1))
    limit = (c.n_max - 1) // (k - 1)
    if limit < 1:
        return None
    for d in diffset_members(spec, limit):
        start = _first_ap_start(colors, d, k)
        if start is not None:
            return APWitness(start + 1, d, k, int(colors[start]))
    return None


def max_mono_ap_length(c: WindowColoring, spec: DiffSetSpec, cap: int):
    """Maximum k <= cap admitting a monochromatic AP, with a witness."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    colors = np.asarray(c.color_array())
    members = diffset_members(spec, c.n_max) if c.n_max >= 1 else []
    if not members:
        return 1, None
    best_k, best_w = 1, APWitness(1, members[0], 1, c.color(1))
    for d in members:
        if d > c.n_max - 1:
            break
        k, start = _longest_ap(colors, d, cap)
        if k > best_k:
            best_k = k
            best_w = APWitness(start + 1, d, k, int(colors[start]))
            if best_k == cap:
                break
    return best_k, best_w


# ---------------------------------------------------------------------------
# S-sequences
# ---------------------------------------------------------------------------

def longest_mono_s_sequence(c: WindowColoring,
                            spec: DiffSetSpec) -> SSeqWitness:
    """Maximum-length monochromatic chain with steps in the spec.

    Longest-path dynamic programming over the window DAG (edges x -> x+s);
    ties resolved toward the smallest start, then smallest successor.
    """
    n = c.n_max
    colors = c.color_array()
    _, up = chain_lengths(c, spec)
    length = int(up.max())
    start = int(np.argmax(up)) + 1
    members = diffset_members(spec, n - 1) if n > 1 else []
    path = [start]
    cur = start
    while up[cur - 1] > 1:
        want = up[cur - 1] - 1
        for s in members:
            nxt = cur + s
            if nxt > n:
                break
            if colors[nxt - 1] == colors[cur - 1] and up[nxt - 1] == want:
                path.append(nxt)
                cur = nxt
                break
        else:  # pragma: no cover - DP guarantees a successor
            raise AssertionError("chain reconstruction failed")
    assert len(path) == length
    return SSeqWitness(tuple(path), c.color(start))


def find_dead_ends(c: WindowColoring, spec: DiffSetSpec) -> list[int]:
    """Window dead ends: integers all of whose in-window S-successors differ.

    Only in-window steps are checked, so a reported integer may still have
    a same-colored successor beyond the window.
    """
    n = c.n_max
    members = diffset_members(spec, n - 1) if n > 1 else []
    if not members:
        return []
    colors = np.asarray(c.color_array())
    top = n - members[0]
    dead = np.ones(top, dtype=bool)  # index i is integer i+1
    for s in members:
        m = min(top, n - s)
        dead[:m] &= colors[s:s + m] != colors[:m]
    return (np.flatnonzero(dead) + 1).tolist()


# ---------------------------------------------------------------------------
# Polynomial progressions
# ---------------------------------------------------------------------------

def find_poly_progression(c: WindowColoring, coeffs: Sequence[int], k: int):
    """First (d, then a) with a, a+p(d), ..., a+k*p(d) monochromatic.

    ``coeffs`` are ascending polynomial coefficients with zero constant
    term.  Returns ``(a, d, terms)`` or ``None``.
    """
    coeffs = list(coeffs)
    if not coeffs or coeffs[0] != 0 or all(v == 0 for v in coeffs):
        raise ValueError("polynomial must be nonzero with zero constant term")
    if k < 1:
        raise ValueError("k must be >= 1")
    while coeffs[-1] == 0:
        coeffs.pop()

    def p(x):
        v = 0
        for cc in reversed(coeffs):
            v = v * x + cc
        return v

    lead = coeffs[-1]
    tail = 2 + sum(abs(v) for v in coeffs[:-1]) // abs(lead)
    colors = np.asarray(c.color_array())
    n = c.n_max
    d = 1
    while True:
        v = p(d)
        if d >= tail and abs(v) * k >= n:
            return None
        if v != 0 and abs(v) * k < n:
            start = _first_ap_start(colors, abs(v), k + 1)
            if start is not None:
                if v > 0:
                    a = start + 1
                else:
                    a = start + 1 + k * abs(v)
                terms = [a + i * v for i in range(k + 1)]
                return a, d, terms
        d += 1


# ---------------------------------------------------------------------------
# Square walk
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WalkState:
    """Terms of the doubling walk z1=6, z_{n+1} = z_n^2/4 + 1 and their squares.

    Every term is congruent to 2 mod 4 and consecutive squares differ by
    the perfect square (z_n^2/4 - 1)^2, so the squares form a chain whose
    steps are squares.  All arithmetic is exact.
    """
    terms: tuple
    squares: tuple

    def check(self) -> bool:
        z = self.terms
        if not z or z[0] != 6:
            return False
        if tuple(t * t for t in z) != self.squares:
            return False
        for i, t in enumerate(z):
            if t % 4 != 2:
                return False
            if i + 1 < len(z):
                if t * t % 4 != 0 or z[i + 1] != t * t // 4 + 1:
                    return False
                diff = z[i + 1] ** 2 - t ** 2
                root = math.isqrt(diff)
                if root * root != diff or root != t * t // 4 - 1:
                    return False
        return True


def square_walk(count: int) -> WalkState:
    """First ``count`` terms of the walk, invariants verified exactly."""
    if count < 1:
        raise ValueError("count must be >= 1")
    terms = [6]
    while len(terms) < count:
        z = terms[-1]
        terms.append(z * z // 4 + 1)
    state = WalkState(tuple(terms), tuple(z * z for z in terms))
    assert state.check()
    return state


# ---------------------------------------------------------------------------
# Upward paths in ordered graphs
# ---------------------------------------------------------------------------

def find_upward_mono_path(g: OrderedGraph, c: WindowColoring,
                          k: int) -> Optional[PathWitness]:
    """Order-increasing monochromatic path of k vertices, if one exists."""
    if k < 1:
        raise ValueError("k must be >= 1")
    beta = upward_path_lengths(g, c)
    colors = c.color_array()
    starts = np.flatnonzero(beta >= k - 1)
    if not starts.size:
        return None
    cur = int(starts[0]) + 1
    path = [cur]
    while len(path) < k:
        for y in sorted(g.neighbors_above(cur)):
            if colors[y - 1] == colors[cur - 1] and beta[y - 1] >= beta[cur - 1] - 1:
                path.append(y)
                cur = y
                break
        else:  # pragma: no cover - beta guarantees a successor
            raise AssertionError("path reconstruction failed")
    return PathWitness(tuple(path), c.color(path[0]))


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------

def contract_diffset(spec: DiffSetSpec, n: int, bound: int) -> Explicit:
    """Members d with n*d in the spec and d <= bound, as an explicit spec."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    members = diffset_members(spec, n * bound)
    return Explicit([d // n for d in members if d % n == 0])


def _chain_in_segment(colors: np.ndarray, members: list[int], lo: int,
                      hi: int, length: int) -> Optional[list[int]]:
    """Monochromatic chain of ``length`` points inside [lo, hi], or None."""
    width = hi - lo + 1
    up = [1] * width
    for i in range(width - 1, -1, -1):
        x = lo + i
        for s in members:
            j = i + s
            if j >= width:
                break
            if colors[x - 1] == colors[x + s - 1] and up[j] + 1 > up[i]:
                up[i] = up[j] + 1
    best = max(up)
    if best < length:
        return None
    i = up.index(best)
    path = [lo + i]
    while len(path) < length:
        for s in members:
            j = i + s
            if j >= width:
                break
            if colors[lo + i - 1] == colors[lo + j - 1] and up[j] == up[i] - 1:
                i = j
                path.append(lo + i)
                break
    return path


def find_mono_grid(spec: DiffSetSpec, c: WindowColoring,
                   dims: Sequence[int], _level: int = 0):
    """Monochromatic grid with the given side lengths, or None.

    One recursion level per axis: certify the smallest block length N whose
    every window contains a monochromatic inner path, then recurse on the
    block coloring with the contracted difference set, and unfold the
    nested witness back to absolute positions.
    """
    dims = list(dims)
    if not dims or any(d < 2 for d in dims):
        raise ValueError("dims must be nonempty with every side >= 2")
    n = c.n_max
    colors = np.asarray(c.color_array())
    members = diffset_members(spec, n - 1) if n > 1 else []
    if not members:
        log.warning("grid search level %d: no usable steps in window",
                    _level)
        return None
    d0 = dims[0]

    if len(dims) == 1:
        path = _chain_in_segment(colors, members, 1, n, d0)
        if path is None:
            return None
        steps = tuple(b - a for a, b in zip(path, path[1:]))
        return GridWitness((d0,), {(i,): v for i, v in enumerate(path)},
                           c.color(path[0]), (steps,))

    block_len = None
    for N in range(2, n + 1):
        if all(_chain_in_segment(colors, members, a, a + N - 1, d0)
               is not None for a in range(1, n - N + 2)):
            block_len = N
            break
    if block_len is None:
        return None
    n_blocks = n // block_len
    if n_blocks < 2:
        return None
    bc = block_coloring(c, block_len)
    cspec = contract_diffset(spec, block_len, n_blocks - 1)
    if not cspec.values:
        log.warning("grid search level %d: contracted difference set is "
                    "empty for block length %d", _level, block_len)
        return None
    sub = find_mono_grid(cspec, bc, dims[1:], _level=_level + 1)
    if sub is None:
        return None

    b0 = min(sub.points.values())
    lo = (b0 - 1) * block_len + 1
    path = _chain_in_segment(colors, members, lo, b0 * block_len, d0)
    assert path is not None  # certified by the block-length scan
    offsets = [q - (b0 - 1) * block_len for q in path]
    points = {}
    for coords, bidx in sub.points.items():
        base = (bidx - 1) * block_len
        for i0, off in enumerate(offsets):
            points[(i0,) + coords] = base + off
    axis_steps = (tuple(b - a for a, b in zip(path, path[1:])),) + tuple(
        tuple(block_len * s for s in steps) for steps in sub.axis_steps)
    return GridWitness(tuple(dims), points, c.color(path[0]), axis_steps)


def _mono_group_threshold(r: int, d: int, exhaustive_limit: int = 4096) -> int:
    """Smallest N forcing d equal colors in every r-coloring of N symbols.

    Checked by exhaustive enumeration when r**N stays small, by the
    pigeonhole count otherwise (both give r*(d-1)+1).
    """
    import itertools
    n = d
    while True:
        if r ** n <= exhaustive_limit:
            ok = all(max(tup.count(col) for col in set(tup)) >= d
                     for tup in itertools.product(range(r), repeat=n))
        else:
            ok = -(-n // r) >= d
        if ok:
            return n
        n += 1


def certified_grid_window(r: int, dims: Sequence[int]) -> int:
    """Window size guaranteeing find_mono_grid succeeds, unrestricted steps.

    Valid for the all-naturals difference set: with arbitrary positive
    steps a monochromatic path of d vertices is just d equal colors, so
    the block-length scan always certifies some N up to the group
    threshold, and the block level needs enough blocks to force a repeat
    among the r**N possible block colors.  The bound takes the worst case
    over every block length the scan might select.
    """
    dims = list(dims)
    if any(d < 2 for d in dims):
        raise ValueError("grid sides must be >= 2")
    d0 = dims[0]
    if len(dims) == 1:
        return _mono_group_threshold(r, d0)
    n0 = _mono_group_threshold(r, d0)
    return max(n * certified_grid_window(r ** n, dims[1:])
               for n in range(d0, n0 + 1))
