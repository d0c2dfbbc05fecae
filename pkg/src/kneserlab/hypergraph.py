"""Kneser hypergraph construction and the colorability defect.

The Kneser hypergraph of a stable family has the family members as
vertices and the r-tuples of pairwise disjoint members as edges.  The
r-colorability defect of a ground hypergraph is the fewest ground
elements whose removal leaves the induced edge family r-colorable.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .core import BudgetError, ParamSet, mask_elements, resolve_budget, subset_mask
from .stable import enumerate_stable


@dataclass(frozen=True)
class KneserHypergraph:
    params: ParamSet
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def r(self) -> int:
        return self.params.r

    def vertex_elements(self) -> list[tuple[int, ...]]:
        return [mask_elements(v) for v in self.vertices]

    def adjacency(self) -> list[int]:
        """Neighbor bitmasks over vertex indices (r = 2 only)."""
        if self.params.r != 2:
            raise ValueError("adjacency masks are defined for graphs (r = 2)")
        adj = [0] * len(self.vertices)
        for a, b in self.edges:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return adj

    def incidence(self) -> list[list[int]]:
        """Edge-index lists per vertex."""
        inc: list[list[int]] = [[] for _ in self.vertices]
        for ei, edge in enumerate(self.edges):
            for v in edge:
                inc[v].append(ei)
        return inc

    def to_json(self) -> str:
        payload = {
            "n": self.params.n,
            "k": self.params.k,
            "r": self.params.r,
            "s": self.params.s,
            "mode": self.params.mode,
            "vertices": [list(v) for v in self.vertex_elements()],
            "edges": [list(e) for e in self.edges],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "KneserHypergraph":
        payload = json.loads(text)
        params = ParamSet(
            n=payload["n"],
            k=payload["k"],
            r=payload["r"],
            s=payload["s"],
            mode=payload["mode"],
        )
        vertices = tuple(subset_mask(v) for v in payload["vertices"])
        edges = tuple(tuple(e) for e in payload["edges"])
        return cls(params=params, vertices=vertices, edges=edges)


def build(params: ParamSet, budget: int | None = None) -> KneserHypergraph:
    """Construct the Kneser hypergraph of the (almost) s-stable family."""
    if not params.satisfies_standing_hypothesis():
        warnings.warn(
            f"n={params.n} below max(r,s)*k={max(params.r, params.s) * params.k}; "
            "the family may be small or edgeless",
            stacklevel=2,
        )
    vertices = enumerate_stable(params)
    r = params.r
    limit = resolve_budget(budget)
    scan = comb(len(vertices), r)
    if scan > limit:
        raise BudgetError(f"edge scan of {scan} {r}-tuples exceeds budget {limit}")
    edges = []
    for combo in combinations(range(len(vertices)), r):
        union = 0
        for idx in combo:
            v = vertices[idx]
            if union & v:
                break
            union |= v
        else:
            edges.append(combo)
    return KneserHypergraph(params=params, vertices=tuple(vertices), edges=tuple(edges))


@dataclass(frozen=True)
class GroundHypergraph:
    """A hypergraph on the ground set [n]; edges are subset masks."""

    n: int
    edge_family: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if any(e == 0 for e in self.edge_family):
            raise ValueError("the empty set must not be an edge")


def stable_ground(params: ParamSet) -> GroundHypergraph:
    """The ground hypergraph whose edges are the (almost) s-stable k-subsets."""
    return GroundHypergraph(n=params.n, edge_family=tuple(enumerate_stable(params)))


def colorability_defect_formula(n: int, k: int, r: int, s: int) -> int:
    """Closed form max(n - r*s*(k-1), 0); identical for both stability modes."""
    if r < 2 or k < 2:
        raise ValueError("defect formula needs r >= 2 and k >= 2")
    if n < s * k:
        raise ValueError(f"defect formula needs n >= s*k, got n={n}, s*k={s * k}")
    return max(n - r * s * (k - 1), 0)


def _ground_colorable(n: int, removed: int, edges: list[int], r: int) -> bool:
    """Can the surviving ground elements be r-colored with no monochromatic edge?

    Backtracks over ground elements in ascending order; an edge is checked
    the moment its largest element is colored.  Elements outside every
    surviving edge are unconstrained and skipped.
    """
    if not edges:
        return True
    relevant = 0
    for e in edges:
        relevant |= e
    elements = [i for i in mask_elements(relevant) if not (removed >> (i - 1)) & 1]
    by_max = {}
    for e in edges:
        by_max.setdefault(e.bit_length(), []).append(e)
    class_masks = [0] * (r + 1)

    def place(idx: int, used: int) -> bool:
        if idx == len(elements):
            return True
        elem = elements[idx]
        bit = 1 << (elem - 1)
        closing = by_max.get(elem, ())
        for color in range(1, min(used + 1, r) + 1):
            trial = class_masks[color] | bit
            if any(e & ~trial == 0 for e in closing):
                continue
            class_masks[color] = trial
            if place(idx + 1, max(used, color)):
                return True
            class_masks[color] = trial ^ bit
        return False

    return place(0, 0)


def colorability_defect(
    ground: GroundHypergraph, r: int, cap: int = 12
) -> int:
    """Exact r-colorability defect by increasing removal size.

    Tries removal sets R of size d = 0, 1, ... and returns the first d for
    which the edges inside [n] \\ R admit a proper r-coloring of the
    surviving elements.  Edgeless families are 1-colorable.
    """
    n = ground.n
    if n > cap:
        raise BudgetError(f"defect brute force capped at n <= {cap}, got n={n}")
    if r < 1:
        raise ValueError("need r >= 1")
    edges = list(ground.edge_family)
    for d in range(n + 1):
        for removal in combinations(range(1, n + 1), d):
            removed = subset_mask(removal)
            surviving = [e for e in edges if e & removed == 0]
            if _ground_colorable(n, removed, surviving, r):
                return d
    return n
