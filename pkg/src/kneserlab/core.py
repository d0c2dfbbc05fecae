"""Shared primitives: parameter sets, enumeration budgets, bitmask subsets.

Ground elements are 1-based (element i lives at bit i-1) so that every
formula over [n] = {1, ..., n} can be written literally.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal

Mode = Literal["path", "cycle"]

MODES: tuple[Mode, ...] = ("path", "cycle")

#: Default cap on enumerated objects (vectors, chains, search nodes) per call.
DEFAULT_BUDGET = 20_000_000

BUDGET_ENV_VAR = "KNESERLAB_BUDGET"


class BudgetError(RuntimeError):
    """An enumeration or search exceeded its configured budget.

    Signals a desk-scale limit; the result is indeterminate, never wrong.
    """

    def __init__(self, message: str, spent: int = 0):
        super().__init__(message)
        self.spent = spent


def resolve_budget(budget: int | None = None) -> int:
    """Explicit budget, else KNESERLAB_BUDGET from the environment, else default."""
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_BUDGET


class NodeCounter:
    """Counts search or enumeration steps against a hard budget."""

    __slots__ = ("count", "limit")

    def __init__(self, limit: int, start: int = 0):
        self.count = start
        self.limit = limit

    def bump(self):
        self.count += 1
        if self.count > self.limit:
            raise BudgetError("node budget exceeded", spent=self.count)


@dataclass(frozen=True)
class ParamSet:
    """Parameters of a stable Kneser family over the ground set [n].

    n: ground-set size, k: subset size, r: hypergraph uniformity,
    s: stability gap, mode: "cycle" for s-stable, "path" for almost s-stable.
    """

    n: int
    k: int
    r: int = 2
    s: int = 1
    mode: Mode = "path"

    def __post_init__(self):
        if self.n < 1 or self.k < 1 or self.s < 1:
            raise ValueError(f"n, k, s must be positive: {self}")
        if self.r < 2:
            raise ValueError(f"uniformity r must be at least 2: {self}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be 'path' or 'cycle': {self.mode!r}")

    @property
    def key(self) -> str:
        return f"{self.n},{self.k},{self.r},{self.s},{self.mode}"

    def satisfies_standing_hypothesis(self) -> bool:
        """n >= max(r, s) * k, required for the bound theorems to apply."""
        return self.n >= max(self.r, self.s) * self.k


def subset_mask(elements: Iterable[int]) -> int:
    """Bitmask of a subset of [n]; element i maps to bit i-1."""
    mask = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"ground elements are 1-based, got {e}")
        mask |= 1 << (e - 1)
    return mask


def mask_elements(mask: int) -> tuple[int, ...]:
    """Sorted elements of a subset bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def iter_elements(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def min_element(mask: int) -> int:
    """Smallest element of a nonempty subset mask."""
    if not mask:
        raise ValueError("empty subset has no minimum")
    return (mask & -mask).bit_length()


def max_element(mask: int) -> int:
    """Largest element of a subset mask; max of the empty set is 0."""
    return mask.bit_length()


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)
