"""Exhaustive and branch-and-bound window checkers.

These decide finite-window versions of coloring properties by searching
the full space of r-colorings (with symmetry breaking and incremental
pruning), or compute exact extremal objects on distance-graph windows.
Budgets turn runaway instances into an explicit 'unknown' outcome, never
a silent wrong answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import (
    DiffSetSpec,
    Verdict,
    WindowColoring,
    chain_lengths,
    constant_coloring,
    diffset_members,
    spec_from_json,
)
from .search import find_mono_grid, longest_mono_s_sequence

DEFAULT_NODE_BUDGET = 5_000_000


class BudgetError(RuntimeError):
    """The state-space estimate exceeds the configured budget."""


# ---------------------------------------------------------------------------
# Window properties
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WindowProperty:
    """A property of all r-colorings of [1, n_max].

    kind 'Ladder': every coloring has a monochromatic k-AP with difference
    in the spec.  'Accessible': every coloring has a monochromatic k-chain
    with steps in the spec.  'ChromIntersective': some color class meets
    the spec in its difference set (the k=2 chain case).  'GridForced':
    every coloring contains a monochromatic grid with the given dims.
    """
    kind: str
    spec: DiffSetSpec
    r: int
    n_max: int
    k: int = 0
    dims: tuple = ()

    def __post_init__(self):
        if self.kind not in ("Ladder", "Accessible", "ChromIntersective",
                             "GridForced"):
            raise ValueError(f"unknown property kind: {self.kind!r}")
        if self.r < 1 or self.n_max < 1:
            raise ValueError("r and n_max must be positive")
        if self.kind in ("Ladder", "Accessible") and self.k < 1:
            raise ValueError(f"{self.kind} needs k >= 1")
        if self.kind == "GridForced" and not self.dims:
            raise ValueError("GridForced needs dims")

    def to_json(self):
        out = {"kind": self.kind, "spec": self.spec.to_json(),
               "r": self.r, "n_max": self.n_max}
        if self.kind in ("Ladder", "Accessible"):
            out["k"] = self.k
        if self.kind == "GridForced":
            out["dims"] = list(self.dims)
        return out

    @classmethod
    def from_json(cls, obj: dict):
        return cls(kind=obj["kind"], spec=spec_from_json(obj["spec"]),
                   r=obj["r"], n_max=obj["n_max"], k=obj.get("k", 0),
                   dims=tuple(obj.get("dims", ())))


class _BudgetHit(Exception):
    pass


def check_window_property(p: WindowProperty,
                          node_budget: int = DEFAULT_NODE_BUDGET,
                          symmetry_breaking: bool = True) -> Verdict:
    """Decide a window property by exhaustive backtracking.

    Searches for a blocking coloring; 'holds' means none exists.  Symmetry
    breaking fixes the color of 1 and introduces new colors in ascending
    order, which is sound because all four properties are invariant under
    color permutation.  Exceeding the node budget yields outcome 'unknown'.
    """
    t0 = time.perf_counter()
    n, r = p.n_max, p.r
    members = diffset_members(p.spec, n - 1) if n > 1 else []
    chain_like = p.kind in ("Accessible", "ChromIntersective")
    k = 2 if p.kind == "ChromIntersective" else p.k

    if p.kind in ("Ladder", "Accessible") and p.k == 1:
        return Verdict("holds", nodes_explored=0,
                       elapsed=time.perf_counter() - t0,
                       note="k=1 structures are single integers")
    if p.kind != "GridForced" and not members:
        return Verdict("fails", counterexample=constant_coloring(n, 1, r),
                       nodes_explored=0, elapsed=time.perf_counter() - t0,
                       note="difference set empty within window; every "
                            "coloring blocks")

    colors = [0] * (n + 1)
    chain = [0] * (n + 1)
    nodes = 0

    def completes_structure(i: int) -> bool:
        ci = colors[i]
        if chain_like:
            best = 1
            for s in members:
                j = i - s
                if j < 1:
                    break
                if colors[j] == ci and chain[j] + 1 > best:
                    best = chain[j] + 1
            chain[i] = best
            return best >= k
        if p.kind == "Ladder":
            top = (i - 1) // (p.k - 1)
            for d in members:
                if d > top:
                    break
                a = i - (p.k - 1) * d
                if all(colors[a + t * d] == ci for t in range(p.k - 1)):
                    return True
            return False
        return False  # GridForced checks complete colorings only

    def leaf_blocks() -> bool:
        if p.kind != "GridForced":
            return True
        c = WindowColoring(colors[1:], r=r)
        return find_mono_grid(p.spec, c, p.dims) is None

    def dfs(i: int, max_used: int) -> bool:
        nonlocal nodes
        if i > n:
            return leaf_blocks()
        cap = min(r, max_used + 1) if symmetry_breaking else r
        for col in range(1, cap + 1):
            nodes += 1
            if nodes > node_budget:
                raise _BudgetHit
            colors[i] = col
            if not completes_structure(i):
                if dfs(i + 1, max(max_used, col)):
                    return True
        colors[i] = 0
        return False

    try:
        blocked = dfs(1, 0)
    except _BudgetHit:
        return Verdict("unknown", nodes_explored=nodes,
                       elapsed=time.perf_counter() - t0,
                       note=f"node budget {node_budget} exhausted")
    elapsed = time.perf_counter() - t0
    if blocked:
        ce = WindowColoring(colors[1:], r=r,
                            provenance={"constructor": "blocking_coloring",
                                        "property": p.to_json()})
        return Verdict("fails", counterexample=ce, nodes_explored=nodes,
                       elapsed=elapsed)
    return Verdict("holds", nodes_explored=nodes, elapsed=elapsed)


# ---------------------------------------------------------------------------
# Order decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderMap:
    """Chain orders of a finite set: longest S-chain starting at each point.

    ``top_class`` collects the elements of maximal order; the defining
    decomposition properties (orders inside the top class are all 1, and
    orders inside the rest stay below the maximum) are re-verified at
    construction time.
    """
    elements: tuple
    orders: dict
    k_max: int
    top_class: tuple


def _orders_within(elems: Sequence[int], spec: DiffSetSpec) -> dict:
    elems = sorted(elems)
    eset = set(elems)
    members = (diffset_members(spec, elems[-1] - elems[0])
               if len(elems) > 1 else [])
    orders = {}
    for x in reversed(elems):
        best = 1
        for s in members:
            y = x + s
            if y > elems[-1]:
                break
            if y in eset and orders[y] + 1 > best:
                best = orders[y] + 1
        orders[x] = best
    return orders


def order_in_set(a: Sequence[int], spec: DiffSetSpec) -> OrderMap:
    """Orders of every element of A, plus the maximal-order decomposition."""
    elems = sorted(set(a))
    if not elems or elems[0] < 1:
        raise ValueError("A must be a nonempty set of positive integers")
    orders = _orders_within(elems, spec)
    k_max = max(orders.values())
    top = tuple(x for x in elems if orders[x] == k_max)
    rest = [x for x in elems if orders[x] < k_max]
    if any(v != 1 for v in _orders_within(top, spec).values()):
        raise AssertionError("top class contains an S-step")
    if rest and max(_orders_within(rest, spec).values()) > k_max - 1:
        raise AssertionError("remainder class reaches the maximal order")
    return OrderMap(tuple(elems), orders, k_max, top)


# ---------------------------------------------------------------------------
# Maximum S-difference-free subsets
# ---------------------------------------------------------------------------

@dataclass
class SubsetResult:
    elements: list
    exact: bool
    note: str = ""

    def __len__(self):
        return len(self.elements)


def _greedy_s_free(members: list[int], n_max: int) -> list[int]:
    chosen = []
    cset = set()
    for x in range(1, n_max + 1):
        if all(x - s not in cset for s in members if s < x):
            chosen.append(x)
            cset.add(x)
    return chosen


def max_s_free_subset(spec: DiffSetSpec, n_max: int,
                      exact_limit: int = 200,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> SubsetResult:
    """Largest A within [1, n_max] with no difference of A in the spec.

    This is a maximum independent set of the distance-graph window.  Exact
    branch and bound up to ``exact_limit`` vertices; beyond that (or past
    the node budget) a greedy maximal set is returned, flagged as a lower
    bound.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    members = diffset_members(spec, n_max - 1) if n_max > 1 else []
    greedy = _greedy_s_free(members, n_max)
    if n_max > exact_limit:
        return SubsetResult(greedy, exact=False,
                            note=f"window exceeds exact limit {exact_limit}; "
                                 "greedy lower bound")
    best = list(greedy)
    nodes = 0

    def expand(candidates: list[int], current: list[int]):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise _BudgetHit
        if len(current) + len(candidates) <= len(best):
            return
        if not candidates:
            best = list(current)
            return
        v = candidates[0]
        keep = [u for u in candidates[1:]
                if u - v not in members_set]
        expand(keep, current + [v])
        expand(candidates[1:], current)

    members_set = set(members)
    try:
        expand(list(range(1, n_max + 1)), [])
    except _BudgetHit:
        return SubsetResult(greedy, exact=False,
                            note=f"node budget {node_budget} exhausted; "
                                 "greedy lower bound")
    except RecursionError:
        return SubsetResult(greedy, exact=False,
                            note="recursion limit hit; greedy lower bound")
    return SubsetResult(sorted(best), exact=True)


# ---------------------------------------------------------------------------
# Chromatic number of distance-graph windows
# ---------------------------------------------------------------------------

@dataclass
class ChromaticResult:
    number: int
    coloring: WindowColoring
    exact: bool
    note: str = ""


def _first_fit_coloring(members: list[int], n_max: int) -> list[int]:
    colors = [0] * (n_max + 1)
    for x in range(1, n_max + 1):
        used = {colors[x - s] for s in members if s < x}
        col = 1
        while col in used:
            col += 1
        colors[x] = col
    return colors[1:]


def _greedy_clique(members: list[int], n_max: int) -> list[int]:
    members_set = set(members)
    best = [1]
    for seed in range(1, min(n_max, 50) + 1):
        clique = [seed]
        for y in range(seed + 1, n_max + 1):
            if all(y - x in members_set for x in clique):
                clique.append(y)
        if len(clique) > len(best):
            best = clique
    return best


def distance_graph_chromatic_window(spec: DiffSetSpec, n_max: int,
                                    exact_limit: int = 64,
                                    node_budget: int = DEFAULT_NODE_BUDGET
                                    ) -> ChromaticResult:
    """Chromatic number of the distance graph restricted to [1, n_max].

    Exact (iteratively deepened k-colorability with symmetry breaking)
    within the limits; a first-fit upper bound, flagged as such, beyond.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    members = diffset_members(spec, n_max - 1) if n_max > 1 else []
    ff = _first_fit_coloring(members, n_max)
    ub = max(ff)
    ub_coloring = WindowColoring(ff, r=ub,
                                 provenance={"constructor": "first_fit",
                                             "spec": spec.to_json()})
    if n_max > exact_limit:
        return ChromaticResult(ub, ub_coloring, exact=False,
                               note=f"window exceeds exact limit "
                                    f"{exact_limit}; first-fit upper bound")
    lb = len(_greedy_clique(members, n_max))
    nodes = 0

    def colorable(k: int):
        nonlocal nodes
        colors = [0] * (n_max + 1)

        def dfs(x: int, max_used: int):
            nonlocal nodes
            if x > n_max:
                return True
            forbidden = {colors[x - s] for s in members if s < x}
            for col in range(1, min(k, max_used + 1) + 1):
                nodes += 1
                if nodes > node_budget:
                    raise _BudgetHit
                if col not in forbidden:
                    colors[x] = col
                    if dfs(x + 1, max(max_used, col)):
                        return True
            colors[x] = 0
            return False

        return colors[1:] if dfs(1, 0) else None

    try:
        for k in range(lb, ub):
            sol = colorable(k)
            if sol is not None:
                c = WindowColoring(sol, r=k,
                                   provenance={"constructor": "exact_color",
                                               "spec": spec.to_json()})
                return ChromaticResult(k, c, exact=True)
    except _BudgetHit:
        return ChromaticResult(ub, ub_coloring, exact=False,
                               note=f"node budget {node_budget} exhausted; "
                                    "first-fit upper bound")
    return ChromaticResult(ub, ub_coloring, exact=True)


# ---------------------------------------------------------------------------
# Walk-order experiments
# ---------------------------------------------------------------------------

@dataclass
class WalkOrderReport:
    """Heuristic evidence about short-chain colorings; never a proof.

    ``best_chain_length`` is the shortest maximum monochromatic chain
    length reached by any trial or seeded candidate.
    """
    spec: DiffSetSpec
    r: int
    n_max: int
    best_coloring: WindowColoring
    best_chain_length: int
    trial_lengths: list
    candidate_lengths: list
    note: str = ("heuristic evidence only; window experiments never decide "
                 "the order of a difference set")


def _max_chain(c: WindowColoring, spec: DiffSetSpec) -> int:
    down, _ = chain_lengths(c, spec)
    return int(down.max())


def walk_order_experiment(spec: DiffSetSpec, r: int, n_max: int,
                          trials: int, seed: int = 0,
                          local_steps: int = 60,
                          candidates: Optional[Sequence[WindowColoring]] = None
                          ) -> WalkOrderReport:
    """Adversarial search for r-colorings with short monochromatic chains.

    Random restarts followed by hill-climbing that recolors elements of a
    current longest chain, accepting moves that do not lengthen it.
    """
    if trials < 1 or r < 1:
        raise ValueError("trials and r must be >= 1")
    rng = np.random.default_rng(seed)
    best_c = None
    best_len = None
    trial_lengths = []
    for _ in range(trials):
        cols = rng.integers(1, r + 1, size=n_max)
        cur = WindowColoring(cols.tolist(), r=r,
                             provenance={"constructor": "random", "seed": seed})
        cur_len = _max_chain(cur, spec)
        for _ in range(local_steps):
            if cur_len <= 1:
                break
            chain = longest_mono_s_sequence(cur, spec).elements
            x = int(rng.choice(chain))
            new_col = int(rng.integers(1, r + 1))
            if new_col == cur.color(x):
                new_col = new_col % r + 1
            cols = np.asarray(cur.color_array()).copy()
            cols[x - 1] = new_col
            cand = WindowColoring(cols.tolist(), r=r,
                                  provenance=cur.provenance)
            cand_len = _max_chain(cand, spec)
            if cand_len <= cur_len:
                cur, cur_len = cand, cand_len
        trial_lengths.append(cur_len)
        if best_len is None or cur_len < best_len:
            best_c, best_len = cur, cur_len
    candidate_lengths = []
    for cand in candidates or []:
        clen = _max_chain(cand, spec)
        candidate_lengths.append(clen)
        if clen < best_len:
            best_c, best_len = cand, clen
    return WalkOrderReport(spec, r, n_max, best_c, best_len,
                           trial_lengths, candidate_lengths)
