"""Explicit coloring constructors and transformers.

Each function returns a fresh :class:`~ladderkit.core.WindowColoring`
whose provenance records the construction, so emitted files stay
auditable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    DiffSetSpec,
    OrderedGraph,
    WindowColoring,
    WindowMismatchError,
    chain_lengths,
    diffset_members,
    mod_coloring,
    upward_path_lengths,
)


class HypothesisError(ValueError):
    """A constructor was called outside its theorem hypotheses."""


class InsufficientPrefixError(ValueError):
    """The supplied prefix of S cannot certify an interval anchor."""


# ---------------------------------------------------------------------------
# Digit coloring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DigitColoringParams:
    m: int
    allow_small_base: bool = False

    def __post_init__(self):
        if self.m < 5 and not self.allow_small_base:
            raise HypothesisError(
                f"base m={self.m} below 5; pass allow_small_base=True to "
                "experiment outside the hypothesis")
        if self.m < 2:
            raise ValueError("base must be >= 2")


def base_m_digit_coloring(params: DigitColoringParams,
                          n_max: int) -> WindowColoring:
    """3-coloring by counting base-m digits equal to 2 at even positions.

    The color of n is 1 + (|{i >= 1 : digit of n at position 2i is 2}| mod 3),
    with digit positions counted from 0 at the least significant digit.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    m = params.m
    idx = np.arange(1, n_max + 1, dtype=np.int64)
    counts = np.zeros(n_max, dtype=np.int64)
    pos = 2
    while m ** pos <= n_max:
        counts += (idx // m ** pos) % m == 2
        pos += 2
    colors = counts % 3 + 1
    return WindowColoring(colors.tolist(), r=3,
                          provenance={"constructor": "base_m_digit",
                                      "m": m})


# ---------------------------------------------------------------------------
# Products and refinements
# ---------------------------------------------------------------------------

def product_coloring(c1: WindowColoring, c2: WindowColoring) -> WindowColoring:
    """Cartesian product: two integers share a color iff they do under both."""
    if c1.n_max != c2.n_max:
        raise WindowMismatchError(
            f"window mismatch: {c1.n_max} vs {c2.n_max}")
    a = c1.color_array()
    b = c2.color_array()
    colors = [(int(x) - 1) * c2.r + int(y) for x, y in zip(a, b)]
    return WindowColoring(colors, r=c1.r * c2.r,
                          provenance={"constructor": "product",
                                      "factors": [c1.provenance,
                                                  c2.provenance]})


def mod_refinement(c: WindowColoring, n: int) -> WindowColoring:
    """Refine so that different residues mod n never share a color."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    out = product_coloring(c, mod_coloring(c.n_max, n))
    return WindowColoring(out.color_array().tolist(), r=out.r,
                          provenance={"constructor": "mod_refinement",
                                      "n": n, "base": c.provenance})


def block_coloring(c: WindowColoring, block: int) -> WindowColoring:
    """Color block index b by the tuple of c over its length-N segment.

    Tuples are encoded canonically as base-r numerals, so the output color
    count is r**N and two block indices share a color iff their underlying
    tuples are identical.
    """
    if block < 1:
        raise ValueError("block length must be >= 1")
    n_blocks = c.n_max // block
    if n_blocks < 1:
        raise ValueError(f"window [1, {c.n_max}] holds no block of "
                         f"length {block}")
    cols = c.color_array().tolist()
    r = c.r
    out = []
    for b in range(n_blocks):
        code = 0
        for v in cols[b * block:(b + 1) * block]:
            code = code * r + (int(v) - 1)
        out.append(code + 1)
    return WindowColoring(out, r=r ** block,
                          provenance={"constructor": "block",
                                      "block": block, "base": c.provenance})


# ---------------------------------------------------------------------------
# Interval blocking coloring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalPlan:
    """Interval lengths and certified anchors for the blocking coloring.

    ``anchors[j]`` is the 1-based index x into the sorted prefix of S such
    that s[i+k] - s[i] exceeds the combined length of the first j intervals
    for every verifiable i >= x; ``lengths[j]`` then exceeds s[x].
    """
    lengths: tuple
    anchors: tuple
    k: int

    def boundaries(self):
        """Right endpoints of the intervals (cumulative lengths)."""
        out, total = [], 0
        for length in self.lengths:
            total += length
            out.append(total)
        return out


def interval_blocking_coloring(s_prefix: Sequence[int], k: int, n_max: int):
    """Two-phase coloring confining monochromatic S-sequences to intervals.

    Phase 1 partitions [1, n_max] into intervals whose lengths outpace the
    certified growth of k-apart gaps in S, alternating two base colors.
    Phase 2 splits each base color into k+1 sub-colors, greedily keeping
    every integer apart from the (at most k) same-base elements of earlier
    intervals lying at S-distance below it.  Uses 2k+2 colors total.

    Returns ``(coloring, plan)``.
    """
    s = list(s_prefix)
    if k < 1:
        raise ValueError("k must be >= 1")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if any(b <= a for a, b in zip(s, s[1:])) or (s and s[0] < 1):
        raise ValueError("s_prefix must be strictly increasing and positive")
    n_gaps = len(s) - k
    if n_gaps < 1:
        raise InsufficientPrefixError(
            f"prefix of length {len(s)} cannot certify any anchor for k={k}")
    gaps = [s[i + k] - s[i] for i in range(n_gaps)]
    suffix_min = gaps[:]
    for i in range(n_gaps - 2, -1, -1):
        suffix_min[i] = min(suffix_min[i], suffix_min[i + 1])

    lengths, anchors = [], []
    total = 0
    j = 1
    while total < n_max:
        x = next((i for i in range(n_gaps) if suffix_min[i] > total), None)
        if x is None:
            raise InsufficientPrefixError(
                f"no certified anchor for interval j={j}: gaps s[i+{k}]-s[i] "
                f"never exceed {total} over the supplied prefix")
        lengths.append(s[x] + 1)
        anchors.append(x + 1)
        total += s[x] + 1
        j += 1
    plan = IntervalPlan(tuple(lengths), tuple(anchors), k)

    bounds = plan.boundaries()
    interval_of = np.zeros(n_max + 1, dtype=np.int64)  # 1-based indices
    lo = 1
    for jj, hi in enumerate(bounds):
        interval_of[lo:min(hi, n_max) + 1] = jj
        lo = hi + 1

    members = [v for v in s if v <= n_max - 1]
    sub = np.zeros(n_max + 1, dtype=np.int64)
    base = interval_of % 2
    for x in range(1, n_max + 1):
        taken = set()
        for step in members:
            y = x - step
            if y < 1:
                break
            if base[y] == base[x] and interval_of[y] < interval_of[x]:
                taken.add(int(sub[y]))
        choice = next(cc for cc in range(k + 2) if cc not in taken)
        if choice > k:
            raise RuntimeError(
                f"more than {k} sub-color conflicts at {x}; plan invariants "
                "do not hold for the supplied prefix")
        sub[x] = choice

    colors = (base[1:] * (k + 1) + sub[1:] + 1).tolist()
    coloring = WindowColoring(colors, r=2 * k + 2,
                              provenance={"constructor": "interval_blocking",
                                          "k": k,
                                          "lengths": list(plan.lengths),
                                          "anchors": list(plan.anchors)})
    return coloring, plan


# ---------------------------------------------------------------------------
# Tail recoloring
# ---------------------------------------------------------------------------

def tail_recoloring(c: WindowColoring, spec: DiffSetSpec) -> WindowColoring:
    """Shift the color of every tail of a longest monochromatic S-chain.

    A tail is an integer that ends some maximum-length monochromatic
    S-chain of the window (it then has no same-colored S-successor).
    Tails get their color shifted by +r, doubling the color count; the
    maximum monochromatic S-chain length strictly decreases.

    When no chain of length >= 2 exists the coloring is returned unchanged
    with a warning flag in its provenance.
    """
    n = c.n_max
    down, up = chain_lengths(c, spec)
    k_max = int(down.max())
    if k_max <= 1:
        return WindowColoring(c.color_array().tolist(), r=c.r,
                              provenance={"constructor": "tail_recoloring",
                                          "warning": "no-op: no chain of "
                                                     "length >= 2",
                                          "base": c.provenance})
    tails = (down == k_max)
    assert bool(np.all(up[tails] == 1))
    colors = np.asarray(c.color_array()).copy()
    colors[tails] += c.r
    return WindowColoring(colors.tolist(), r=2 * c.r,
                          provenance={"constructor": "tail_recoloring",
                                      "recolored": int(tails.sum()),
                                      "chain_length": k_max,
                                      "base": c.provenance})


# ---------------------------------------------------------------------------
# Path recoloring
# ---------------------------------------------------------------------------

def path_recoloring(g: OrderedGraph, c: WindowColoring) -> WindowColoring:
    """Encode (color, longest-upward-path length) injectively per vertex.

    With beta the upward monochromatic path length (in edges), the new
    color of x is alpha(x) + r*beta(x).  On every monochromatic edge
    x < y we have beta(x) >= beta(y) + 1, so the output properly colors
    every edge that was monochromatic.
    """
    beta = upward_path_lengths(g, c)
    alpha = np.asarray(c.color_array())
    gamma = alpha + c.r * beta
    k = int(beta.max())
    return WindowColoring(gamma.tolist(), r=c.r * (1 + k),
                          provenance={"constructor": "path_recoloring",
                                      "max_beta": k, "base": c.provenance})
