"""Ground-set combinatorics: stable subsets and signed vectors.

A k-subset of [n] is almost s-stable when its elements are pairwise at
distance >= s on the n-path, and s-stable when additionally at distance
<= n-s (distance >= s around the n-cycle).  Signed vectors are the
elements of (Z_p u {0})^n, stored as p-tuples of pairwise disjoint
subset masks.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

from .core import (
    BudgetError,
    Mode,
    ParamSet,
    mask_elements,
    resolve_budget,
    subset_mask,
)

SignedParts = tuple[int, ...]


def is_stable(members: int, n: int, s: int, mode: Mode) -> bool:
    """Stability predicate on a subset mask; singletons are always stable."""
    elems = mask_elements(members)
    if elems and elems[-1] > n:
        raise ValueError(f"subset {elems} not contained in [{n}]")
    for a, b in zip(elems, elems[1:]):
        if b - a < s:
            return False
    if mode == "cycle" and len(elems) >= 2 and elems[-1] - elems[0] > n - s:
        return False
    return True


def enumerate_stable(params: ParamSet) -> list[int]:
    """All (almost) s-stable k-subsets of [n] as masks, in lexicographic order."""
    n, k, s = params.n, params.k, params.s
    out = []
    for combo in combinations(range(1, n + 1), k):
        mask = subset_mask(combo)
        if is_stable(mask, n, s, params.mode):
            out.append(mask)
    return out


def count_stable(params: ParamSet) -> int:
    """Number of (almost) s-stable k-subsets of [n]."""
    return len(enumerate_stable(params))


def signed_vector_count(n: int, p: int) -> int:
    return (p + 1) ** n - 1


def signed_vectors(n: int, p: int, budget: int | None = None) -> Iterator[SignedParts]:
    """All nonzero vectors of (Z_p u {0})^n as p-tuples of disjoint masks."""
    if n < 1 or p < 2:
        raise ValueError(f"need n >= 1 and p >= 2, got n={n}, p={p}")
    total = signed_vector_count(n, p)
    limit = resolve_budget(budget)
    if total > limit:
        raise BudgetError(f"{total} signed vectors exceed budget {limit}")
    for values in product(range(p + 1), repeat=n):
        if not any(values):
            continue
        parts = [0] * p
        for i, v in enumerate(values):
            if v:
                parts[v - 1] |= 1 << i
        yield tuple(parts)


def chain_count(n: int, p: int, length: int) -> int:
    """Number of length-L chains X(1) <= ... <= X(L) with X(1) nonzero."""
    return (length * p + 1) ** n - ((length - 1) * p + 1) ** n


def chains(
    n: int, p: int, length: int, budget: int | None = None
) -> Iterator[tuple[SignedParts, ...]]:
    """All componentwise-nested chains of nonzero signed vectors.

    Per coordinate the admissible value sequences are all-zero or a zero
    prefix followed by a constant sign, so a chain is a product of
    coordinate sequences with a nonzero first vector.
    """
    if length < 1:
        raise ValueError("chain length must be positive")
    total = chain_count(n, p, length)
    limit = resolve_budget(budget)
    if total > limit:
        raise BudgetError(f"{total} chains exceed budget {limit}")
    options = [tuple([0] * length)]
    for start in range(length):
        for sign in range(1, p + 1):
            options.append(tuple([0] * start + [sign] * (length - start)))
    for grid in product(options, repeat=n):
        if not any(col[0] for col in grid):
            continue
        chain = []
        for level in range(length):
            parts = [0] * p
            for i in range(n):
                v = grid[i][level]
                if v:
                    parts[v - 1] |= 1 << i
            chain.append(tuple(parts))
        yield tuple(chain)


def sv_size(parts: SignedParts) -> int:
    """Number of nonzero coordinates."""
    return sum(part.bit_count() for part in parts)


def sv_union(parts: SignedParts) -> int:
    mask = 0
    for part in parts:
        mask |= part
    return mask


def sv_max(parts: SignedParts) -> int:
    """Largest element carrying a nonzero sign (0 for the zero vector)."""
    return sv_union(parts).bit_length()


def sv_contains(small: SignedParts, big: SignedParts) -> bool:
    """Componentwise order: every part of `small` inside the same part of `big`."""
    return all(a & ~b == 0 for a, b in zip(small, big))


def sv_rotate(parts: SignedParts, shift: int = 1) -> SignedParts:
    """Multiply by omega^shift: part j moves to part j+shift (cyclically)."""
    p = len(parts)
    return tuple(parts[(j - shift) % p] for j in range(p))


def sv_negate(parts: SignedParts) -> SignedParts:
    """Antipode for p=2: swap the plus and minus parts."""
    if len(parts) != 2:
        raise ValueError("negation is the p=2 rotation; use sv_rotate for p>2")
    return (parts[1], parts[0])


def sv_is_valid(parts: SignedParts) -> bool:
    seen = 0
    for part in parts:
        if part & seen:
            return False
        seen |= part
    return True
