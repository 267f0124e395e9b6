"""Domain types shared by the whole toolkit.

A *window coloring* assigns one of ``r`` colors (1-based) to every integer
in ``[1, N]``.  A *difference-set spec* describes a set of allowed step
sizes lazily, so callers can enumerate or test membership within any
finite bound without materializing an infinite set.  Witness objects are
machine-checkable certificates returned by the search routines; every one
of them can be re-validated from scratch with :func:`validate_witness`.

Conventions: the naturals start at 1, colors live in ``[1, r]``.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np


class SpecError(ValueError):
    """A structurally invalid difference-set description."""


class WindowMismatchError(ValueError):
    """Two colorings over different windows were combined."""


# ---------------------------------------------------------------------------
# Difference-set specs
# ---------------------------------------------------------------------------

class DiffSetSpec:
    """Base class for lazy descriptions of a set of positive integers."""

    kind = "DiffSetSpec"

    def contains(self, d: int) -> bool:
        raise NotImplementedError

    def members(self, bound: int) -> list[int]:
        raise NotImplementedError

    def params(self) -> dict:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {self.kind: self.params()}

    def __repr__(self):
        items = ", ".join(f"{k}={v!r}" for k, v in self.params().items())
        return f"{self.kind}({items})"

    def __eq__(self, other):
        return type(self) is type(other) and self.params() == other.params()

    def __hash__(self):
        return hash((self.kind, json.dumps(self.params(), sort_keys=True)))


class Explicit(DiffSetSpec):
    kind = "Explicit"

    def __init__(self, values: Iterable[int]):
        vals = list(values)
        if any(v < 1 for v in vals):
            raise SpecError("explicit difference sets must be positive")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise SpecError("explicit difference sets must be strictly increasing")
        self.values = vals

    def contains(self, d):
        i = bisect_left(self.values, d)
        return i < len(self.values) and self.values[i] == d

    def members(self, bound):
        return self.values[: bisect_right(self.values, bound)]

    def params(self):
        return {"values": list(self.values)}


class KthPowers(DiffSetSpec):
    kind = "KthPowers"

    def __init__(self, k: int):
        if k < 1:
            raise SpecError("power exponent must be >= 1")
        self.k = k

    def contains(self, d):
        root = round(d ** (1.0 / self.k))
        for cand in (root - 1, root, root + 1):
            if cand >= 1 and cand ** self.k == d:
                return True
        return False

    def members(self, bound):
        out = []
        i = 1
        while i ** self.k <= bound:
            out.append(i ** self.k)
            i += 1
        return out

    def params(self):
        return {"k": self.k}


class PolynomialImage(DiffSetSpec):
    """Positive values of an integer polynomial with zero constant term.

    ``coeffs`` are ascending: coeffs[i] multiplies x**i; coeffs[0] must be 0.
    """

    kind = "PolynomialImage"

    def __init__(self, coeffs: Sequence[int]):
        coeffs = list(coeffs)
        if not coeffs or all(c == 0 for c in coeffs):
            raise SpecError("polynomial must be nonzero")
        if coeffs[0] != 0:
            raise SpecError("polynomial must have zero constant term")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = coeffs

    def _eval(self, x: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def _tail_start(self) -> int:
        # beyond this x the leading term dominates, so |p| is increasing
        # and the sign is the sign of the leading coefficient
        lead = abs(self.coeffs[-1])
        return 2 + sum(abs(c) for c in self.coeffs[:-1]) // lead

    def members(self, bound):
        out = set()
        lead = self.coeffs[-1]
        n0 = self._tail_start()
        x = 1
        while True:
            v = self._eval(x)
            if 1 <= v <= bound:
                out.add(v)
            if x >= n0 and (v > bound or lead < 0):
                break
            x += 1
        return sorted(out)

    def contains(self, d):
        return d >= 1 and d in set(self.members(d))

    def params(self):
        return {"coeffs": list(self.coeffs)}


class OddPowerDiffs(DiffSetSpec):
    """Positive pairwise differences of the odd powers of a base m."""

    kind = "OddPowerDiffs"

    def __init__(self, m: int):
        if m < 2:
            raise SpecError("base must be >= 2")
        self.m = m

    def _odd_powers(self, limit: int) -> list[int]:
        out = []
        p = self.m
        step = self.m * self.m
        while p <= limit:
            out.append(p)
            p *= step
        return out

    def members(self, bound):
        # p_j - p_{j-1} = p_j(1 - m^-2) >= 3*p_j/4, so powers beyond
        # 2*bound cannot contribute a difference <= bound
        powers = self._odd_powers(2 * bound)
        diffs = {b - a for i, a in enumerate(powers) for b in powers[i + 1:]}
        return sorted(d for d in diffs if d <= bound)

    def contains(self, d):
        powers = self._odd_powers(2 * d)
        pset = set(powers)
        return any(a + d in pset for a in powers)

    def params(self):
        return {"m": self.m}


class DifferenceOf(DiffSetSpec):
    """The difference set A - A of an explicit finite generator A."""

    kind = "DifferenceOf"

    def __init__(self, values: Iterable[int]):
        vals = sorted(set(values))
        if not vals or vals[0] < 1:
            raise SpecError("generator set must be positive and nonempty")
        self.values = vals

    def contains(self, d):
        vset = set(self.values)
        return any(a + d in vset for a in self.values)

    def members(self, bound):
        diffs = {b - a for i, a in enumerate(self.values)
                 for b in self.values[i + 1:]}
        return sorted(d for d in diffs if d <= bound)

    def params(self):
        return {"values": list(self.values)}


class ResidueClass(DiffSetSpec):
    kind = "ResidueClass"

    def __init__(self, a: int, n: int):
        if n < 1 or not 0 <= a < n:
            raise SpecError("residue class needs 0 <= a < n")
        self.a = a
        self.n = n

    def contains(self, d):
        return d >= 1 and d % self.n == self.a

    def members(self, bound):
        start = self.a if self.a >= 1 else self.n
        return list(range(start, bound + 1, self.n))

    def params(self):
        return {"a": self.a, "n": self.n}


class AllNaturals(DiffSetSpec):
    kind = "AllNaturals"

    def contains(self, d):
        return d >= 1

    def members(self, bound):
        return list(range(1, bound + 1))

    def params(self):
        return {}


_SPEC_KINDS = {cls.kind: cls for cls in
               (Explicit, KthPowers, PolynomialImage, OddPowerDiffs,
                DifferenceOf, ResidueClass, AllNaturals)}


def spec_from_json(obj: dict) -> DiffSetSpec:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SpecError(f"malformed difference-set spec: {obj!r}")
    (kind, params), = obj.items()
    if kind not in _SPEC_KINDS:
        raise SpecError(f"unknown difference-set kind: {kind!r}")
    return _SPEC_KINDS[kind](**params)


def diffset_members(spec: DiffSetSpec, bound: int) -> list[int]:
    """All members of ``spec`` in ``[1, bound]``, strictly increasing."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    return spec.members(bound)


def diffset_contains(spec: DiffSetSpec, d: int) -> bool:
    """Membership test, consistent pointwise with :func:`diffset_members`."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return spec.contains(d)


# ---------------------------------------------------------------------------
# Window colorings
# ---------------------------------------------------------------------------

class WindowColoring:
    """An r-coloring of the integer window [1, N].

    Immutable after construction.  Colors are 1-based; ``provenance`` is a
    free-form descriptor recording which constructor produced the coloring.
    """

    __slots__ = ("n_max", "r", "_colors", "provenance")

    def __init__(self, colors: Sequence[int], r: Optional[int] = None,
                 provenance=None):
        colors = list(colors)
        if not colors:
            raise ValueError("window must be nonempty")
        lo, hi = min(colors), max(colors)
        if lo < 1:
            raise ValueError("colors are 1-based")
        if r is None:
            r = hi
        elif hi > r:
            raise ValueError(f"color {hi} exceeds declared r={r}")
        if hi <= np.iinfo(np.int64).max:
            arr = np.asarray(colors, dtype=np.int64)
        else:
            arr = np.asarray(colors, dtype=object)
        arr.setflags(write=False)
        object.__setattr__(self, "n_max", len(colors))
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "_colors", arr)
        object.__setattr__(self, "provenance", provenance)

    def __setattr__(self, name, value):
        raise AttributeError("WindowColoring is immutable")

    def color(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise IndexError(f"{n} outside window [1, {self.n_max}]")
        return int(self._colors[n - 1])

    def color_array(self) -> np.ndarray:
        """Read-only array of colors; index i holds the color of i+1."""
        return self._colors

    def __len__(self):
        return self.n_max

    def __eq__(self, other):
        return (isinstance(other, WindowColoring) and self.r == other.r
                and self.n_max == other.n_max
                and bool(np.all(self._colors == other._colors)))

    def __repr__(self):
        return f"WindowColoring(n_max={self.n_max}, r={self.r})"


def constant_coloring(n_max: int, color: int = 1, r: Optional[int] = None):
    return WindowColoring([color] * n_max, r=r or color,
                          provenance={"constructor": "constant"})


def mod_coloring(n_max: int, n: int) -> WindowColoring:
    """Colors by residue mod n, mapped into [1, n]."""
    cols = (np.arange(1, n_max + 1) % n) + 1
    return WindowColoring(cols.tolist(), r=n,
                          provenance={"constructor": "mod", "n": n})


def same_partition(c1: WindowColoring, c2: WindowColoring) -> bool:
    """True iff the two colorings induce the same partition of [1, N]."""
    if c1.n_max != c2.n_max:
        return False
    fwd, bwd = {}, {}
    for a, b in zip(c1.color_array().tolist(), c2.color_array().tolist()):
        if fwd.setdefault(a, b) != b or bwd.setdefault(b, a) != a:
            return False
    return True


# ---------------------------------------------------------------------------
# Coloring file format
# ---------------------------------------------------------------------------

def write_coloring(c: WindowColoring, path, header: Optional[dict] = None):
    """Text format: optional '#' comment lines, then 'N r', then the colors."""
    with open(path, "w") as f:
        if header is not None:
            f.write("# " + json.dumps(header, sort_keys=True) + "\n")
        f.write(f"{c.n_max} {c.r}\n")
        f.write(" ".join(str(int(x)) for x in c.color_array()) + "\n")


def read_coloring(path) -> WindowColoring:
    with open(path) as f:
        lines = [ln for ln in f if ln.strip() and not ln.startswith("#")]
    if len(lines) < 2:
        raise ValueError(f"malformed coloring file: {path}")
    n_max, r = map(int, lines[0].split())
    colors = [int(x) for x in lines[1].split()]
    if len(colors) != n_max:
        raise ValueError(f"coloring file declares N={n_max} but has "
                         f"{len(colors)} colors")
    return WindowColoring(colors, r=r, provenance={"source": str(path)})


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class APWitness:
    """A monochromatic arithmetic progression a, a+d, ..., a+(k-1)d."""
    a: int
    d: int
    k: int
    color: int

    @property
    def terms(self) -> list[int]:
        return [self.a + i * self.d for i in range(self.k)]


@dataclass(frozen=True)
class SSeqWitness:
    """A monochromatic increasing sequence with consecutive steps in S."""
    elements: tuple
    color: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))


@dataclass(frozen=True)
class PathWitness:
    """An order-increasing monochromatic path in a distance graph."""
    vertices: tuple
    color: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))


@dataclass(frozen=True)
class GridWitness:
    """A monochromatic grid embedded in the window.

    ``points`` maps grid coordinates (one index per axis, 0-based) to
    integers; ``axis_steps[i][j]`` is the integer difference taken when
    coordinate i moves from j to j+1 (shared by all parallel edges).
    """
    dims: tuple
    points: dict
    color: int
    axis_steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "axis_steps",
                           tuple(tuple(s) for s in self.axis_steps))

    def __eq__(self, other):
        return (isinstance(other, GridWitness) and self.dims == other.dims
                and self.points == other.points and self.color == other.color
                and self.axis_steps == other.axis_steps)


def witness_to_json(w) -> dict:
    if isinstance(w, APWitness):
        return {"type": "APWitness", "a": w.a, "d": w.d, "k": w.k,
                "color": w.color}
    if isinstance(w, SSeqWitness):
        return {"type": "SSeqWitness", "elements": list(w.elements),
                "color": w.color}
    if isinstance(w, PathWitness):
        return {"type": "PathWitness", "vertices": list(w.vertices),
                "color": w.color}
    if isinstance(w, GridWitness):
        return {"type": "GridWitness", "dims": list(w.dims),
                "points": [[list(k), v] for k, v in sorted(w.points.items())],
                "color": w.color,
                "axis_steps": [list(s) for s in w.axis_steps]}
    raise TypeError(f"not a witness: {w!r}")


def witness_from_json(obj: dict):
    t = obj.get("type")
    if t == "APWitness":
        return APWitness(obj["a"], obj["d"], obj["k"], obj["color"])
    if t == "SSeqWitness":
        return SSeqWitness(tuple(obj["elements"]), obj["color"])
    if t == "PathWitness":
        return PathWitness(tuple(obj["vertices"]), obj["color"])
    if t == "GridWitness":
        points = {tuple(k): v for k, v in obj["points"]}
        return GridWitness(tuple(obj["dims"]), points, obj["color"],
                           tuple(tuple(s) for s in obj["axis_steps"]))
    raise ValueError(f"unknown witness type: {t!r}")


def _in_window(c: WindowColoring, n: int) -> bool:
    return 1 <= n <= c.n_max


def validate_witness(w, c: WindowColoring, spec: DiffSetSpec) -> bool:
    """Re-check every invariant of a witness against a coloring and a spec.

    Out-of-window indices make validation fail (return False), not crash.
    """
    if isinstance(w, APWitness):
        if w.a < 1 or w.d < 1 or w.k < 1:
            return False
        terms = w.terms
        if not all(_in_window(c, t) for t in terms):
            return False
        if any(c.color(t) != w.color for t in terms):
            return False
        return diffset_contains(spec, w.d)
    if isinstance(w, SSeqWitness):
        xs = list(w.elements)
        if not xs or not all(_in_window(c, x) for x in xs):
            return False
        if any(y <= x for x, y in zip(xs, xs[1:])):
            return False
        if any(c.color(x) != w.color for x in xs):
            return False
        return all(diffset_contains(spec, y - x) for x, y in zip(xs, xs[1:]))
    if isinstance(w, PathWitness):
        xs = list(w.vertices)
        if not xs or not all(_in_window(c, x) for x in xs):
            return False
        if any(y <= x for x, y in zip(xs, xs[1:])):
            return False
        if any(c.color(x) != w.color for x in xs):
            return False
        return all(diffset_contains(spec, y - x) for x, y in zip(xs, xs[1:]))
    if isinstance(w, GridWitness):
        dims = w.dims
        if not dims or any(d < 1 for d in dims):
            return False
        coords = [()]
        for d in dims:
            coords = [cd + (i,) for cd in coords for i in range(d)]
        if set(w.points) != set(coords):
            return False
        if not all(_in_window(c, v) for v in w.points.values()):
            return False
        if any(c.color(v) != w.color for v in w.points.values()):
            return False
        if len(w.axis_steps) != len(dims):
            return False
        for axis, steps in enumerate(w.axis_steps):
            if len(steps) != dims[axis] - 1:
                return False
            for cd in coords:
                if cd[axis] + 1 >= dims[axis]:
                    continue
                nxt = cd[:axis] + (cd[axis] + 1,) + cd[axis + 1:]
                step = w.points[nxt] - w.points[cd]
                if step != steps[cd[axis]]:
                    return False
                if step == 0 or not diffset_contains(spec, abs(step)):
                    return False
        return True
    return False


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

@dataclass
class Verdict:
    """Result of an exhaustive window checker.

    ``outcome`` is 'holds', 'fails' or 'unknown' (budget exhausted).  A
    'fails' verdict always carries a blocking coloring as counterexample.
    """
    outcome: str
    counterexample: Optional[WindowColoring] = None
    nodes_explored: int = 0
    elapsed: float = 0.0
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.outcome == "holds"


# ---------------------------------------------------------------------------
# Ordered graphs
# ---------------------------------------------------------------------------

class OrderedGraph:
    """A finite graph on vertices 1..V carrying their natural total order.

    ``descriptor`` marks the graph as the distance graph of a difference
    set, which unlocks fast neighbor enumeration.
    """

    def __init__(self, vertex_count: int,
                 adjacency: Callable[[int, int], bool],
                 descriptor: Optional[DiffSetSpec] = None):
        if vertex_count < 1:
            raise ValueError("graph must have at least one vertex")
        self.vertex_count = vertex_count
        self.adjacency = adjacency
        self.descriptor = descriptor
        self._steps = (diffset_members(descriptor, vertex_count - 1)
                       if descriptor is not None and vertex_count > 1 else None)

    @classmethod
    def distance_graph(cls, spec: DiffSetSpec, vertex_count: int):
        def adj(x, y):
            return x != y and diffset_contains(spec, abs(x - y))
        return cls(vertex_count, adj, descriptor=spec)

    def neighbors_above(self, x: int) -> list[int]:
        if self._steps is not None:
            return [x + s for s in self._steps if x + s <= self.vertex_count]
        if self.descriptor is not None:
            return []
        return [y for y in range(x + 1, self.vertex_count + 1)
                if self.adjacency(x, y)]

    def edges(self):
        """All edges (x, y) with x < y."""
        for x in range(1, self.vertex_count + 1):
            for y in self.neighbors_above(x):
                yield x, y


# ---------------------------------------------------------------------------
# Shared dynamic programs
# ---------------------------------------------------------------------------

def chain_lengths(c: WindowColoring, spec: DiffSetSpec):
    """Longest monochromatic S-chain lengths through every window point.

    Returns ``(down, up)``: down[i] is the length of the longest chain
    ending at i+1, up[i] the longest starting at i+1 (lengths count
    vertices, so isolated points score 1).  Edges are x -> x+s for s in
    the spec with both endpoints in-window and equal colors.
    """
    n = c.n_max
    colors = np.asarray(c.color_array())
    steps = np.array(diffset_members(spec, n - 1) if n > 1 else [],
                     dtype=np.int64)
    down = np.ones(n, dtype=np.int64)
    up = np.ones(n, dtype=np.int64)
    if steps.size:
        for x in range(2, n + 1):
            preds = x - steps[steps < x]
            if preds.size:
                mask = colors[preds - 1] == colors[x - 1]
                if mask.any():
                    down[x - 1] = 1 + down[preds - 1][mask].max()
        for x in range(n - 1, 0, -1):
            succs = x + steps[steps <= n - x]
            if succs.size:
                mask = colors[succs - 1] == colors[x - 1]
                if mask.any():
                    up[x - 1] = 1 + up[succs - 1][mask].max()
    return down, up


def upward_path_lengths(g: OrderedGraph, c: WindowColoring) -> np.ndarray:
    """Edge-count lengths of longest upward monochromatic paths.

    beta[i] is 0 when vertex i+1 has no higher same-colored neighbor,
    else 1 plus the maximum over those neighbors.  Computed by a reverse
    sweep over the vertex order.
    """
    n = g.vertex_count
    if c.n_max != n:
        raise WindowMismatchError(
            f"coloring window {c.n_max} != vertex count {n}")
    colors = c.color_array()
    beta = np.zeros(n, dtype=np.int64)
    for x in range(n, 0, -1):
        best = -1
        cx = colors[x - 1]
        for y in g.neighbors_above(x):
            if colors[y - 1] == cx and beta[y - 1] > best:
                best = beta[y - 1]
        if best >= 0:
            beta[x - 1] = best + 1
    return beta
