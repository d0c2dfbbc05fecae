"""Exact chromatic number, local chromatic number, and colorful witnesses.

The t-colorability search is a saturation-guided backtracker with a
greedy-clique seed and a first-use cap on fresh colors; optimality
certificates are exhausted searches at t-1.  Budgets are node counts,
never wall time, so every search is reproducible.
"""

from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass
from itertools import combinations
from random import Random

from .core import BudgetError, NodeCounter, resolve_budget
from .coloring import Coloring, verify_proper
from .hypergraph import KneserHypergraph

sys.setrecursionlimit(20000)

VERTEX_CAP_GRAPH = 200
VERTEX_CAP_HYPER = 60


@dataclass
class SolveResult:
    """Outcome of an exact solve; indeterminate results carry a bracket."""

    chi: int | None
    witness: Coloring | None
    nodes: int
    millis: int
    lower: int
    upper: int | None

    @property
    def status(self) -> str:
        return "exact" if self.chi is not None else "indeterminate"

    def to_json(self) -> str:
        payload = {
            "status": self.status,
            "chi": self.chi,
            "witness": list(self.witness.colors) if self.witness else None,
            "nodes": self.nodes,
            "millis": self.millis,
            "lower": self.lower,
            "upper": self.upper,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


@dataclass(frozen=True)
class ColorfulWitness:
    """A completely multicolored complete bipartite subgraph.

    side_a holds the odd color ranks (including the smallest color), so
    the sorted colors alternate sides; every cross pair is an edge.
    """

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    colors_a: tuple[int, ...]
    colors_b: tuple[int, ...]


def _greedy_clique(adj: list[int]) -> list[int]:
    """Deterministic greedy clique: seed max degree, extend in the common
    neighborhood by degree, ties by lowest index."""
    n = len(adj)
    if n == 0:
        return []
    deg = [a.bit_count() for a in adj]
    start = max(range(n), key=lambda v: (deg[v], -v))
    clique = [start]
    common = adj[start]
    while common:
        best, best_deg = -1, -1
        m = common
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if deg[v] > best_deg:
                best, best_deg = v, deg[v]
        clique.append(best)
        common &= adj[best]
    return clique


def _color_graph(
    adj: list[int], t: int, counter: NodeCounter
) -> list[int] | None:
    """Proper t-coloring of a graph given as neighbor masks, or None.

    Saturation-guided vertex selection (ties: degree, then index), colors
    ascending, fresh colors capped at one beyond the number in use, and
    the greedy clique pre-colored 1..q.
    """
    n = len(adj)
    if n == 0:
        return []
    clique = _greedy_clique(adj)
    if len(clique) > t:
        return None
    colors = [0] * n
    sat = [0] * n
    deg = [a.bit_count() for a in adj]
    used = 0
    for i, v in enumerate(clique):
        c = i + 1
        colors[v] = c
        used = max(used, c)
        bit = 1 << c
        m = adj[v]
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            sat[u] |= bit
    full = (1 << (t + 1)) - 2

    def dfs(remaining: int, used: int) -> bool:
        if remaining == 0:
            return True
        best, best_key = -1, (-1, -1, 0)
        for v in range(n):
            if not colors[v]:
                key = (sat[v].bit_count(), deg[v], -v)
                if key > best_key:
                    best, best_key = v, key
        v = best
        cap = min(t, used + 1)
        avail = ~sat[v] & ((1 << (cap + 1)) - 2)
        while avail:
            low = avail & -avail
            c = low.bit_length() - 1
            avail ^= low
            counter.bump()
            colors[v] = c
            bit = 1 << c
            changed = []
            dead = False
            m = adj[v]
            while m:
                lowu = m & -m
                u = lowu.bit_length() - 1
                m ^= lowu
                if not colors[u] and not sat[u] & bit:
                    sat[u] |= bit
                    changed.append(u)
                    if sat[u] & full == full:
                        dead = True
                        break
            if not dead and dfs(remaining - 1, max(used, c)):
                return True
            for u in changed:
                sat[u] ^= bit
            colors[v] = 0
        return False

    if dfs(n - len(clique), used):
        return colors
    return None


def _color_hypergraph(
    hg: KneserHypergraph, t: int, counter: NodeCounter
) -> list[int] | None:
    """Proper t-coloring for r >= 3: no edge may end up monochromatic.

    An edge only constrains its last uncolored vertex, and only when all
    its other vertices share one color.
    """
    nv = len(hg.vertices)
    if nv == 0:
        return []
    r = hg.params.r
    incidence = hg.incidence()
    order = sorted(range(nv), key=lambda v: (-len(incidence[v]), v))
    colors = [0] * nv
    count = [0] * len(hg.edges)
    mono = [0] * len(hg.edges)

    def dfs(pos: int, used: int) -> bool:
        if pos == nv:
            return True
        v = order[pos]
        for c in range(1, min(t, used + 1) + 1):
            counter.bump()
            blocked = False
            for ei in incidence[v]:
                if count[ei] == r - 1 and mono[ei] == c:
                    blocked = True
                    break
            if blocked:
                continue
            colors[v] = c
            saved = []
            for ei in incidence[v]:
                saved.append((ei, mono[ei]))
                if count[ei] == 0:
                    mono[ei] = c
                elif mono[ei] != c:
                    mono[ei] = -1
                count[ei] += 1
            if dfs(pos + 1, max(used, c)):
                return True
            for ei, prev in saved:
                count[ei] -= 1
                mono[ei] = prev
            colors[v] = 0
        return False

    if dfs(0, 0):
        return colors
    return None


def is_colorable(
    hg: KneserHypergraph, t: int, node_budget: int | None = None
) -> Coloring | None:
    """A proper t-coloring if one exists, else None after exhausting the search.

    Raises BudgetError when the node budget runs out before a verdict.
    """
    if t < 1:
        raise ValueError("palette size must be positive")
    counter = NodeCounter(resolve_budget(node_budget))
    if hg.params.r == 2:
        colors = _color_graph(hg.adjacency(), t, counter)
    else:
        colors = _color_hypergraph(hg, t, counter)
    if colors is None:
        return None
    return Coloring(colors=tuple(colors), t=t)


def _fold_dominated(adj: list[int]) -> tuple[list[int], list[tuple[int, int]]]:
    """Iteratively delete vertices whose neighborhood lies inside a
    non-neighbor's neighborhood; chi and t-colorability are preserved."""
    n = len(adj)
    alive = [True] * n
    folds: list[tuple[int, int]] = []
    changed = True
    while changed:
        changed = False
        for u in range(n):
            if not alive[u]:
                continue
            au = adj[u]
            for v in range(n):
                if v == u or not alive[v] or (au >> v) & 1:
                    continue
                if au & ~adj[v] == 0:
                    folds.append((u, v))
                    alive[u] = False
                    bit = 1 << u
                    m = au
                    while m:
                        low = m & -m
                        w = low.bit_length() - 1
                        m ^= low
                        adj[w] &= ~bit
                    adj[u] = 0
                    changed = True
                    break
    return [i for i in range(n) if alive[i]], folds


def chromatic_number(
    hg: KneserHypergraph,
    node_budget: int | None = None,
    vertex_cap: int | None = None,
) -> SolveResult:
    """Least t admitting a proper coloring, certified by exhausted search at t-1.

    For graphs, dominated vertices are folded away first (sound for every
    palette size) and the search ladder starts at the greedy clique bound;
    the witness is unfolded back to the full vertex list and re-verified.
    """
    started = time.perf_counter()
    nv = len(hg.vertices)
    cap = vertex_cap
    if cap is None:
        cap = VERTEX_CAP_GRAPH if hg.params.r == 2 else VERTEX_CAP_HYPER
    if nv > cap:
        raise BudgetError(f"{nv} vertices exceed the solver cap {cap}")
    limit = resolve_budget(node_budget)

    def finish(chi, witness, nodes, lower, upper):
        millis = int((time.perf_counter() - started) * 1000)
        return SolveResult(
            chi=chi, witness=witness, nodes=nodes, millis=millis,
            lower=lower, upper=upper,
        )

    if nv == 0:
        return finish(0, Coloring(colors=(), t=0), 0, 0, 0)

    counter = NodeCounter(limit)
    if hg.params.r == 2:
        adj = hg.adjacency()
        keep, folds = _fold_dominated(adj)
        pos = {v: i for i, v in enumerate(keep)}
        core = [0] * len(keep)
        for i, v in enumerate(keep):
            m = adj[v]
            while m:
                low = m & -m
                u = low.bit_length() - 1
                m ^= low
                core[i] |= 1 << pos[u]
        lower = max(1, len(_greedy_clique(core)))
        for t in range(lower, len(core) + 1):
            try:
                colors = _color_graph(core, t, counter)
            except BudgetError as exc:
                return finish(None, None, exc.spent, t, None)
            if colors is not None:
                filled = [0] * nv
                for i, v in enumerate(keep):
                    filled[v] = colors[i]
                for u, v in reversed(folds):
                    filled[u] = filled[v]
                witness = Coloring(colors=tuple(filled), t=t)
                bad = verify_proper(hg, witness)
                if bad is not None:
                    raise AssertionError(f"unfolded witness improper on edge {bad}")
                return finish(t, witness, counter.count, t, t)
        raise AssertionError("ladder exhausted without a coloring")

    lower = 2 if hg.edges else 1
    for t in range(lower, nv + 1):
        try:
            colors = _color_hypergraph(hg, t, counter)
        except BudgetError as exc:
            return finish(None, None, exc.spent, t, None)
        if colors is not None:
            witness = Coloring(colors=tuple(colors), t=t)
            bad = verify_proper(hg, witness)
            if bad is not None:
                raise AssertionError(f"witness improper on edge {bad}")
            return finish(t, witness, counter.count, t, t)
    raise AssertionError("ladder exhausted without a coloring")


def local_chromatic_number(
    hg: KneserHypergraph, cap: int = 30, node_budget: int | None = None
) -> int:
    """Exact min over proper colorings of the max closed-neighborhood color count.

    Exhausts canonical colorings (fresh colors in first-use order, any
    palette size); a branch dies once some closed neighborhood already
    shows as many colors as the best complete coloring found.
    """
    if hg.params.r != 2:
        raise ValueError("local chromatic number is defined here for graphs only")
    nv = len(hg.vertices)
    if nv > cap:
        raise BudgetError(f"{nv} vertices exceed the local-chromatic cap {cap}")
    if nv == 0:
        return 0
    adj = hg.adjacency()
    closed = [adj[v] | (1 << v) for v in range(nv)]
    counter = NodeCounter(resolve_budget(node_budget))
    colors = [0] * nv
    seen = [0] * nv
    best = nv + 1

    def dfs(v: int, used: int):
        nonlocal best
        if v == nv:
            best = min(best, max(m.bit_count() for m in seen))
            return
        for c in range(1, min(used + 1, nv) + 1):
            counter.bump()
            bit_c = 1 << c
            m = adj[v]
            proper = True
            while m:
                low = m & -m
                u = low.bit_length() - 1
                m ^= low
                if colors[u] == c:
                    proper = False
                    break
            if not proper:
                continue
            colors[v] = c
            changed = []
            dead = False
            m = closed[v]
            while m:
                low = m & -m
                w = low.bit_length() - 1
                m ^= low
                if not seen[w] & bit_c:
                    seen[w] |= bit_c
                    changed.append(w)
                    if seen[w].bit_count() >= best:
                        dead = True
                        break
            if not dead:
                dfs(v + 1, max(used, c))
            for w in changed:
                seen[w] ^= bit_c
            colors[v] = 0

    dfs(0, 0)
    return best


def greedy_coloring(hg: KneserHypergraph, rng: Random) -> Coloring:
    """Proper coloring from a random vertex order, smallest available color."""
    if hg.params.r != 2:
        raise ValueError("greedy coloring implemented for graphs only")
    nv = len(hg.vertices)
    adj = hg.adjacency()
    order = list(range(nv))
    rng.shuffle(order)
    colors = [0] * nv
    top = 1
    for v in order:
        taken = 0
        m = adj[v]
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            if colors[u]:
                taken |= 1 << colors[u]
        c = 1
        while taken >> c & 1:
            c += 1
        colors[v] = c
        top = max(top, c)
    return Coloring(colors=tuple(colors), t=top)


def default_witness_width(hg: KneserHypergraph) -> int:
    p = hg.params
    return p.n - p.s * (p.k - 1)


def find_colorful_bipartite(
    hg: KneserHypergraph,
    coloring: Coloring,
    t: int | None = None,
    node_budget: int | None = None,
) -> ColorfulWitness | None:
    """Search for a completely multicolored complete bipartite subgraph.

    Picks t of the used colors, then one vertex per color in ascending
    color order, alternating sides; the side unions must stay disjoint.
    """
    if hg.params.r != 2:
        raise ValueError("colorful witnesses are defined for graphs")
    if t is None:
        t = default_witness_width(hg)
    if t < 1:
        raise ValueError("witness width must be positive")
    counter = NodeCounter(resolve_budget(node_budget))
    used = sorted(set(coloring.colors))
    if len(used) < t:
        return None
    by_color: dict[int, list[int]] = {c: [] for c in used}
    for v, c in enumerate(coloring.colors):
        by_color[c].append(v)
    vmask = hg.vertices
    chosen: list[int] = []

    def dfs(pos: int, mask_a: int, mask_b: int, palette: tuple[int, ...]) -> bool:
        if pos == t:
            return True
        on_a = pos % 2 == 0
        opposite = mask_b if on_a else mask_a
        for v in by_color[palette[pos]]:
            counter.bump()
            if vmask[v] & opposite:
                continue
            chosen.append(v)
            if on_a:
                if dfs(pos + 1, mask_a | vmask[v], mask_b, palette):
                    return True
            else:
                if dfs(pos + 1, mask_a, mask_b | vmask[v], palette):
                    return True
            chosen.pop()
        return False

    for palette in combinations(used, t):
        chosen.clear()
        if dfs(0, 0, 0, palette):
            return ColorfulWitness(
                side_a=tuple(chosen[0::2]),
                side_b=tuple(chosen[1::2]),
                colors_a=tuple(palette[0::2]),
                colors_b=tuple(palette[1::2]),
            )
    return None


def colorful_violation(
    hg: KneserHypergraph,
    coloring: Coloring,
    witness: ColorfulWitness,
    t: int | None = None,
) -> str | None:
    """None when the witness satisfies every invariant, else a description."""
    if t is None:
        t = default_witness_width(hg)
    if len(witness.side_a) != -(-t // 2) or len(witness.side_b) != t // 2:
        return f"side sizes {len(witness.side_a)},{len(witness.side_b)} != ceil/floor of {t}"
    if len(witness.side_a) != len(witness.colors_a) or len(witness.side_b) != len(
        witness.colors_b
    ):
        return "color lists do not match side sizes"
    for v, c in zip(witness.side_a + witness.side_b, witness.colors_a + witness.colors_b):
        if coloring.colors[v] != c:
            return f"vertex {v} colored {coloring.colors[v]}, witness claims {c}"
    all_colors = witness.colors_a + witness.colors_b
    if len(set(all_colors)) != t:
        return f"expected {t} distinct colors, got {sorted(all_colors)}"
    if hg.params.r == 2 and witness.side_a and witness.side_b:
        adj = hg.adjacency()
        for a in witness.side_a:
            for b in witness.side_b:
                if not (adj[a] >> b) & 1:
                    return f"cross pair ({a},{b}) is not an edge"
    set_a = set(witness.colors_a)
    for rank, c in enumerate(sorted(all_colors)):
        if (c in set_a) != (rank % 2 == 0):
            return f"color {c} at rank {rank + 1} sits on the wrong side"
    return None
