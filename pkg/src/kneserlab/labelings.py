"""Equivariant labelings of signed vectors and their lemma verifiers.

A proper coloring of a stable Kneser hypergraph induces a labeling of
the nonzero signed vectors (Z_p u {0})^n whose combinatorial conditions
are exactly those of the Z_p analogue of Tucker's lemma (general p) and
of the octahedral version of Fan's lemma (p = 2).  Verifying the
conditions exhaustively, and extracting the alternating chain Fan's
lemma promises, turns the chromatic lower-bound arguments into checkable
desk-scale computations.

Everything is driven by one statistic per part: the largest size, capped
at k, of a subset with pairwise gaps >= s contained in it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import (
    BudgetError,
    NodeCounter,
    ParamSet,
    mask_elements,
    max_element,
    resolve_budget,
)
from .coloring import Coloring, coloring_by_mask
from .hypergraph import KneserHypergraph
from .stable import (
    SignedParts,
    chains,
    enumerate_stable,
    signed_vector_count,
    signed_vectors,
    sv_max,
    sv_negate,
    sv_rotate,
)


class DecodeError(RuntimeError):
    """Chain decoding disagreed with the labeling; an implementation bug."""


class ChainNotFoundError(RuntimeError):
    """No alternating chain exists although the lemma guarantees one."""


@lru_cache(maxsize=None)
def part_spread(mask: int, s: int) -> int:
    """Largest subset of the mask with pairwise gaps >= s (greedy is optimal)."""
    count = 0
    prev = -s
    for e in mask_elements(mask):
        if e - prev >= s:
            count += 1
            prev = e
    return count


@lru_cache(maxsize=None)
def gap_subsets(mask: int, k: int, s: int) -> tuple[int, ...]:
    """All k-subsets of the mask with pairwise gaps >= s, as masks."""
    elems = mask_elements(mask)
    out: list[int] = []

    def grow(start: int, chosen: int, size: int, last: int):
        if size == k:
            out.append(chosen)
            return
        for i in range(start, len(elems)):
            e = elems[i]
            if e - last >= s:
                grow(i + 1, chosen | (1 << (e - 1)), size + 1, e)

    grow(0, 0, 0, -s)
    return tuple(out)


def stable_capacity(parts: SignedParts, s: int, k: int) -> int:
    """Largest q <= k with an almost s-stable q-subset inside one part."""
    return min(k, max(part_spread(part, s) for part in parts))


def capacity_parts(parts: SignedParts, s: int, k: int) -> tuple[int, ...]:
    """1-based indices of the parts attaining the stable capacity."""
    cap = stable_capacity(parts, s, k)
    return tuple(
        j + 1 for j, part in enumerate(parts) if min(k, part_spread(part, s)) >= cap
    )


def capacity_peak(parts: SignedParts, s: int, k: int) -> int:
    """Max element over the capacity-attaining parts."""
    return max(max_element(parts[j - 1]) for j in capacity_parts(parts, s, k))


def _validate_family_coloring(n: int, k: int, s: int, color_of: dict[int, int]):
    family = set(enumerate_stable(ParamSet(n=n, k=k, r=2, s=s, mode="path")))
    if set(color_of) != family:
        raise ValueError("coloring must cover exactly the almost s-stable k-subsets")


class ZpTuckerLabeling:
    """Z_p x [m] labeling of signed vectors built from a proper coloring.

    Vectors whose parts hold only small gap-subsets are labeled by the
    residue of their maximum (indices up to alpha = (s-1)(k-1)), vectors
    with a unique richest part by the capacity (indices alpha+1..alpha+k-1),
    and vectors containing a full family member by its color shifted past
    s(k-1).  The sign always points at the responsible part, which makes
    the map Z_p-equivariant.
    """

    def __init__(self, n: int, k: int, s: int, p: int, color_of: dict[int, int], t: int):
        if s < 2 or k < 2 or p < 2:
            raise ValueError("labeling needs s >= 2, k >= 2, p >= 2")
        _validate_family_coloring(n, k, s, color_of)
        self.n = n
        self.k = k
        self.s = s
        self.p = p
        self.color_of = dict(color_of)
        self.t = t
        self.alpha = (s - 1) * (k - 1)
        # the case-II offset s(k-1) equals alpha + (k-1)
        assert self.alpha + (k - 1) == s * (k - 1)
        self.m = self.alpha + (k - 1) + t
        self._memo: dict[SignedParts, tuple[int, int]] = {}

    def __call__(self, parts: SignedParts) -> tuple[int, int]:
        got = self._memo.get(parts)
        if got is not None:
            return got
        s, k = self.s, self.k
        spreads = [part_spread(part, s) for part in parts]
        peak_spread = max(spreads)
        if peak_spread >= k:
            best_mask = -1
            best_j = 0
            for j, part in enumerate(parts):
                if spreads[j] >= k:
                    for smask in gap_subsets(part, k, s):
                        if smask > best_mask:
                            best_mask = smask
                            best_j = j + 1
            label = (best_j, self.color_of[best_mask] + s * (k - 1))
        else:
            cap = peak_spread
            achieving = [j for j in range(self.p) if spreads[j] == cap]
            if len(achieving) == self.p:
                top = sv_max(parts)
                sign = next(
                    j + 1 for j, part in enumerate(parts) if (part >> (top - 1)) & 1
                )
                remainder = top - (s - 1) * (top // (s - 1))
                label = (sign, (cap - 1) * (s - 1) + remainder + 1)
            else:
                peak = max(max_element(parts[j]) for j in achieving)
                sign = next(
                    j + 1 for j in achieving if max_element(parts[j]) == peak
                )
                label = (sign, self.alpha + cap)
        self._memo[parts] = label
        return label


class FanLabeling:
    """Signed labeling of {+,-,0}^n \\ {0} built from a proper coloring (p = 2).

    Same three cases as the Z_p labeling; the label's sign records which
    side is responsible, so the map is antipodal.  In the color case the
    family member with the largest color wins, ties going to the largest
    mask, which keeps the choice independent of side swaps.
    """

    def __init__(self, n: int, k: int, s: int, color_of: dict[int, int], m_colors: int):
        if s < 2 or k < 2:
            raise ValueError("labeling needs s >= 2 and k >= 2")
        _validate_family_coloring(n, k, s, color_of)
        self.n = n
        self.k = k
        self.s = s
        self.color_of = dict(color_of)
        self.m_colors = m_colors
        self.label_bound = s * (k - 1) + m_colors
        self._memo: dict[SignedParts, int] = {}

    def best_colored(self, side: int) -> tuple[int, int] | None:
        """Largest (color, mask) pair over family members inside one side."""
        if part_spread(side, self.s) < self.k:
            return None
        best: tuple[int, int] | None = None
        for smask in gap_subsets(side, self.k, self.s):
            cand = (self.color_of[smask], smask)
            if best is None or cand > best:
                best = cand
        return best

    def __call__(self, parts: SignedParts) -> int:
        got = self._memo.get(parts)
        if got is not None:
            return got
        plus, minus = parts
        s, k = self.s, self.k
        sp = part_spread(plus, s)
        sm = part_spread(minus, s)
        if max(sp, sm) >= k:
            best_plus = self.best_colored(plus)
            best_minus = self.best_colored(minus)
            if best_minus is None or (best_plus is not None and best_plus > best_minus):
                label = best_plus[0] + s * (k - 1)
            else:
                label = -(best_minus[0] + s * (k - 1))
        else:
            cap = max(sp, sm)
            if sp >= cap and sm >= cap:
                top = sv_max(parts)
                sign = 1 if (plus >> (top - 1)) & 1 else -1
                remainder = top - (s - 1) * (top // (s - 1))
                label = sign * ((cap - 1) * (s - 1) + remainder + 1)
            else:
                sign = 1 if sp == cap else -1
                label = sign * (cap + (s - 1) * (k - 1))
        self._memo[parts] = label
        return label


def zp_labeling_from(hg: KneserHypergraph, coloring: Coloring) -> ZpTuckerLabeling:
    """Z_p labeling induced by a proper coloring of the path-mode family."""
    p = hg.params
    if p.mode != "path":
        raise ValueError("labelings are built over the almost-stable (path) family")
    return ZpTuckerLabeling(
        n=p.n, k=p.k, s=p.s, p=p.r, color_of=coloring_by_mask(hg, coloring), t=coloring.t
    )


def fan_labeling_from(hg: KneserHypergraph, coloring: Coloring) -> FanLabeling:
    """Signed labeling induced by a proper coloring of the path-mode family."""
    p = hg.params
    if p.mode != "path" or p.r != 2:
        raise ValueError("the signed labeling needs the path-mode graph (r = 2)")
    return FanLabeling(
        n=p.n, k=p.k, s=p.s,
        color_of=coloring_by_mask(hg, coloring), m_colors=coloring.t,
    )


@dataclass(frozen=True)
class Violation:
    """First failed check of a lemma verifier."""

    kind: str
    detail: str
    vectors: tuple[SignedParts, ...] = ()


def verify_zp_tucker(
    labeling,
    n: int,
    p: int,
    m: int,
    alpha: int,
    budget: int | None = None,
) -> Violation | None:
    """Check the Z_p Tucker hypotheses exhaustively, then the conclusion.

    Checks, in order: label range, equivariance under the cyclic sign
    rotation, equal small indices forcing equal signs along nested pairs,
    and no nested p-chain with one large index and p distinct signs.
    When everything holds the conclusion alpha + (m-alpha)(p-1) >= n must
    hold too; reporting it as a violation would mean the lemma failed.
    """
    limit = resolve_budget(budget)
    counter = NodeCounter(limit, start=signed_vector_count(n, p))
    table: dict[SignedParts, tuple[int, int]] = {}
    for parts in signed_vectors(n, p, budget=limit):
        sign, idx = labeling(parts)
        if not (1 <= sign <= p and 1 <= idx <= m):
            return Violation(
                kind="range",
                detail=f"label ({sign},{idx}) outside Z_{p} x [{m}]",
                vectors=(parts,),
            )
        table[parts] = (sign, idx)
    for parts, (sign, idx) in table.items():
        counter.bump()
        rotated = sv_rotate(parts)
        rsign, ridx = table[rotated]
        if ridx != idx or rsign != sign % p + 1:
            return Violation(
                kind="equivariance",
                detail=f"label of rotated vector is ({rsign},{ridx}), "
                f"expected ({sign % p + 1},{idx})",
                vectors=(parts, rotated),
            )
    levels: dict[int, list[SignedParts]] = {}
    for parts, (_, idx) in table.items():
        levels.setdefault(idx, []).append(parts)
    for idx in sorted(levels):
        if idx > alpha:
            continue
        group = levels[idx]
        for i, small in enumerate(group):
            for big in group[i + 1 :]:
                counter.bump()
                a, b = small, big
                if not _nested(a, b):
                    a, b = big, small
                    if not _nested(a, b):
                        continue
                if table[a][0] != table[b][0]:
                    return Violation(
                        kind="nested-pair",
                        detail=f"index {idx} <= alpha={alpha} with different signs",
                        vectors=(a, b),
                    )
    for idx in sorted(levels):
        if idx <= alpha:
            continue
        group = sorted(levels[idx], key=_size_key)
        chain = _distinct_sign_chain(group, table, p, counter)
        if chain is not None:
            return Violation(
                kind="nested-chain",
                detail=f"nested chain at index {idx} > alpha={alpha} "
                f"with {p} pairwise distinct signs",
                vectors=chain,
            )
    if alpha + (m - alpha) * (p - 1) < n:
        return Violation(
            kind="inequality",
            detail=f"hypotheses hold but {alpha}+({m}-{alpha})({p}-1) < {n}",
        )
    return None


def _nested(small: SignedParts, big: SignedParts) -> bool:
    return all(a & ~b == 0 for a, b in zip(small, big))


def _size_key(parts: SignedParts) -> tuple[int, SignedParts]:
    return (sum(part.bit_count() for part in parts), parts)


def _distinct_sign_chain(group, table, p, counter) -> tuple[SignedParts, ...] | None:
    """A nested chain inside one index level whose signs are pairwise distinct."""

    def extend(chain: list[SignedParts], signs: set[int]) -> bool:
        if len(chain) == p:
            return True
        last = chain[-1]
        for cand in group:
            counter.bump()
            if table[cand][0] in signs or not _nested(last, cand):
                continue
            chain.append(cand)
            signs.add(table[cand][0])
            if extend(chain, signs):
                return True
            signs.remove(table[cand][0])
            chain.pop()
        return False

    for start in group:
        chain = [start]
        if extend(chain, {table[start][0]}):
            return tuple(chain)
    return None


def verify_fan_antipodal(labeling, n: int, budget: int | None = None) -> Violation | None:
    """Check antipodality and the no-complementary-labels condition (p = 2)."""
    limit = resolve_budget(budget)
    table: dict[SignedParts, int] = {}
    for parts in signed_vectors(n, 2, budget=limit):
        label = labeling(parts)
        if label == 0:
            return Violation(kind="range", detail="label 0 is not signed", vectors=(parts,))
        table[parts] = label
    for parts, label in table.items():
        if table[sv_negate(parts)] != -label:
            return Violation(
                kind="antipodal",
                detail=f"label of -X is {table[sv_negate(parts)]}, expected {-label}",
                vectors=(parts, sv_negate(parts)),
            )
    for below, above in chains(n, 2, 2, budget=limit):
        if table[below] == -table[above]:
            return Violation(
                kind="complementary",
                detail=f"nested pair labeled {table[below]} and {table[above]}",
                vectors=(below, above),
            )
    return None


@dataclass(frozen=True)
class FanChain:
    """Saturated nested chain whose labels alternate in sign by rank."""

    vectors: tuple[SignedParts, ...]
    labels: tuple[int, ...]


def _alternating_feasible(sorted_labels: list[tuple[int, int]], n: int) -> bool:
    """Can the labels embed at increasing positions with sign (-1)^(pos-1)?

    Greedy earliest-position placement is optimal, so failure here is final.
    """
    pos = 0
    for _, sign in sorted_labels:
        pos += 1
        if (pos % 2 == 1) != (sign > 0):
            pos += 1
        if pos > n:
            return False
    return True


def extract_fan_chain(labeling, n: int, node_budget: int | None = None) -> FanChain:
    """Depth-first search for the alternating chain Fan's lemma guarantees.

    Grows X one signed coordinate at a time (coordinates ascending, plus
    before minus), pruning on repeated label magnitudes and on the
    parity-embedding test.  Exhaustion without a chain means the labeling
    violates the lemma, which is an implementation bug, so it raises.
    """
    counter = NodeCounter(resolve_budget(node_budget))
    chain: list[SignedParts] = []
    chain_labels: list[int] = []
    sorted_labels: list[tuple[int, int]] = []
    magnitudes: set[int] = set()

    def grow(plus: int, minus: int) -> bool:
        if len(chain) == n:
            return True
        taken = plus | minus
        for i in range(n):
            bit = 1 << i
            if taken & bit:
                continue
            for child in ((plus | bit, minus), (plus, minus | bit)):
                counter.bump()
                label = labeling(child)
                mag = abs(label)
                if mag in magnitudes:
                    continue
                entry = (mag, 1 if label > 0 else -1)
                magnitudes.add(mag)
                lo, hi = 0, len(sorted_labels)
                while lo < hi:
                    mid = (lo + hi) // 2
                    if sorted_labels[mid] < entry:
                        lo = mid + 1
                    else:
                        hi = mid
                sorted_labels.insert(lo, entry)
                if _alternating_feasible(sorted_labels, n):
                    chain.append(child)
                    chain_labels.append(label)
                    if grow(*child):
                        return True
                    chain.pop()
                    chain_labels.pop()
                sorted_labels.pop(lo)
                magnitudes.remove(mag)
        return False

    if not grow(0, 0):
        raise ChainNotFoundError(
            "no saturated chain with alternating labels; labeling violates the lemma"
        )
    return FanChain(vectors=tuple(chain), labels=tuple(chain_labels))


def colorful_from_fan(chain: FanChain, labeling: FanLabeling, hg: KneserHypergraph):
    """Decode the top of an alternating chain into a colorful bipartite witness.

    Positions s(k-1)+1..n of the chain carry the color-case labels; each
    decodes, on the side its sign names, to the family member the
    labeling selected there.  Chain nesting puts each side inside the
    final vector's corresponding part, so the two sides are disjoint and
    every cross pair is an edge.
    """
    from .solver import ColorfulWitness

    s, k, n = labeling.s, labeling.k, labeling.n
    base = s * (k - 1)
    width = n - base
    index_of = {mask: i for i, mask in enumerate(hg.vertices)}
    picks: list[tuple[int, int, int]] = []
    for i in range(1, width + 1):
        parts = chain.vectors[base + i - 1]
        label = chain.labels[base + i - 1]
        if abs(label) <= base:
            raise DecodeError(f"label {label} at position {base + i} is not a color label")
        side = parts[0] if label > 0 else parts[1]
        best = labeling.best_colored(side)
        if best is None or best[0] + base != abs(label):
            raise DecodeError(f"side selection does not reproduce label {label}")
        picks.append((index_of[best[1]], best[0], 1 if label > 0 else -1))
    for (_, c1, g1), (_, c2, g2) in zip(picks, picks[1:]):
        if c2 <= c1 or g2 == g1:
            raise DecodeError("decoded labels fail to alternate with increasing colors")
    return ColorfulWitness(
        side_a=tuple(v for i, (v, _, _) in enumerate(picks) if i % 2 == 0),
        side_b=tuple(v for i, (v, _, _) in enumerate(picks) if i % 2 == 1),
        colors_a=tuple(c for i, (_, c, _) in enumerate(picks) if i % 2 == 0),
        colors_b=tuple(c for i, (_, c, _) in enumerate(picks) if i % 2 == 1),
    )
