"""Explicit proper colorings of stable Kneser hypergraphs.

Two constructions cover the upper bound ceil((n - max(r,s)(k-1))/(r-1)):
an interval coloring by minimum element for r <= s, and its clamped
variant that is proper on the full Kneser hypergraph for r > s.  A third
construction lifts a coloring of an r-uniform family to an r1-uniform
family on a larger ground set without spending new colors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ParamSet, ceil_div, max_element, min_element
from .hypergraph import KneserHypergraph, build


@dataclass(frozen=True)
class Coloring:
    """A total coloring of the vertex list with colors in [t]."""

    colors: tuple[int, ...]
    t: int

    def __post_init__(self):
        for c in self.colors:
            if not 1 <= c <= self.t:
                raise ValueError(f"color {c} outside palette [1..{self.t}]")

    def distinct(self) -> int:
        return len(set(self.colors))


def verify_proper(hg: KneserHypergraph, coloring: Coloring) -> tuple[int, ...] | None:
    """None when proper, else the first edge whose vertices share one color."""
    if len(coloring.colors) != len(hg.vertices):
        raise ValueError(
            f"coloring covers {len(coloring.colors)} vertices, "
            f"hypergraph has {len(hg.vertices)}"
        )
    colors = coloring.colors
    for edge in hg.edges:
        first = colors[edge[0]]
        if all(colors[v] == first for v in edge[1:]):
            return edge
    return None


def upper_bound(n: int, k: int, r: int, s: int) -> int:
    """ceil((n - max(r,s)(k-1)) / (r-1)), an upper bound for both modes."""
    if k < 2 or r < 2:
        raise ValueError("upper bound needs k >= 2 and r >= 2")
    if n < max(r, s) * k:
        raise ValueError(f"upper bound needs n >= max(r,s)*k, got n={n}")
    return ceil_div(n - max(r, s) * (k - 1), r - 1)


def interval_color(members: int, r: int) -> int:
    """Color by minimum element: ceil(min(S) / (r-1))."""
    return ceil_div(min_element(members), r - 1)


def stable_upper_color(members: int, params: ParamSet) -> int:
    """Interval color of an almost s-stable vertex, valid for r <= s.

    Stability forces min(S) <= n - s(k-1), so the value lands in [t] with
    t = ceil((n - s(k-1)) / (r-1)).
    """
    if params.r > params.s:
        raise ValueError("interval coloring needs r <= s; use kneser_color instead")
    return interval_color(members, params.r)


def kneser_color(members: int, n: int, k: int, r: int) -> int:
    """Clamped interval color, proper on the full Kneser hypergraph.

    Classes 1..t-1 collect vertices by min-element intervals of width r-1;
    everything supported on the tail lands in class t.  The tail holds
    fewer than rk elements, so no r disjoint vertices share class t.
    """
    if n < r * k:
        raise ValueError(f"needs n >= r*k, got n={n}, r*k={r * k}")
    t = ceil_div(n - r * (k - 1), r - 1)
    return min(interval_color(members, r), t)


def stable_upper_coloring(params: ParamSet, hg: KneserHypergraph | None = None) -> Coloring:
    """The palette-tight upper-bound coloring of the stable family (r <= s)."""
    if hg is None:
        hg = build(params)
    t = upper_bound(params.n, params.k, params.r, params.s)
    colors = tuple(stable_upper_color(v, params) for v in hg.vertices)
    return Coloring(colors=colors, t=t)


def kneser_coloring(params: ParamSet, hg: KneserHypergraph | None = None) -> Coloring:
    """The clamped coloring on a family of k-subsets of [n] (any r, n >= rk)."""
    if hg is None:
        hg = build(params)
    t = ceil_div(params.n - params.r * (params.k - 1), params.r - 1)
    colors = tuple(kneser_color(v, params.n, params.k, params.r) for v in hg.vertices)
    return Coloring(colors=colors, t=t)


def family_upper_coloring(params: ParamSet, hg: KneserHypergraph | None = None) -> Coloring:
    """Whichever explicit construction matches the r versus s regime."""
    if params.r <= params.s:
        return stable_upper_coloring(params, hg)
    return kneser_coloring(params, hg)


def lift_params(params: ParamSet, r1: int, t: int) -> ParamSet:
    """Parameters of the lifted family: uniformity r1 on n + (r1 - r) * t elements."""
    return ParamSet(
        n=params.n + (r1 - params.r) * t,
        k=params.k,
        r=r1,
        s=params.s,
        mode=params.mode,
    )


def lift_color(members: int, params: ParamSet, r1: int, base: dict[int, int]) -> int:
    """Color of one lifted vertex: inherited below n, else ceil((max(S)-n)/(r1-r))."""
    top = max_element(members)
    if top <= params.n:
        return base[members]
    return ceil_div(top - params.n, r1 - params.r)


def lift_coloring(
    base: Coloring, params: ParamSet, r1: int
) -> tuple[ParamSet, Coloring]:
    """Lift a proper t-coloring of the r-uniform family to the r1-uniform one.

    Requires s >= r1 > r >= 2 and k >= 2.  Vertices inside [n] keep their
    color; vertices reaching beyond [n] are binned by how far their
    maximum exceeds n, in bins of width r1 - r.  Returns the lifted
    parameters and a coloring aligned to the lifted family's vertex order.
    """
    if not (params.s >= r1 > params.r >= 2):
        raise ValueError(f"lift needs s >= r1 > r >= 2, got r1={r1} for {params}")
    if params.k < 2:
        raise ValueError("lift needs k >= 2")
    source = build(params)
    if len(base.colors) != len(source.vertices):
        raise ValueError("base coloring does not match the source family")
    by_mask = dict(zip(source.vertices, base.colors))
    lifted = lift_params(params, r1, base.t)
    target = build(lifted)
    colors = tuple(lift_color(v, params, r1, by_mask) for v in target.vertices)
    return lifted, Coloring(colors=colors, t=base.t)


def coloring_by_mask(hg: KneserHypergraph, coloring: Coloring) -> dict[int, int]:
    """Vertex-mask to color mapping for labeling constructions."""
    if len(coloring.colors) != len(hg.vertices):
        raise ValueError("coloring does not match hypergraph")
    return dict(zip(hg.vertices, coloring.colors))
