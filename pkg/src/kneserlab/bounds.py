"""Closed-form chromatic bounds and the parameter-grid sweep.

Per cell the sweep records the defect lower bound, the topological lower
bound (prime uniformity only), the explicit-coloring upper bound, and an
exact value: either the bounds meet, or the exact solver settles the
cell, or the record stays indeterminate with a bracket.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

from .core import BudgetError, Mode, ParamSet, ceil_div
from .coloring import upper_bound
from .hypergraph import build
from .solver import VERTEX_CAP_GRAPH, VERTEX_CAP_HYPER, chromatic_number

#: Per-cell search budget used by sweeps; cells beyond it stay indeterminate.
SCAN_NODE_BUDGET = 2_000_000

#: Grid exercised by the acceptance suite and the bound-ordering checks.
DEFAULT_GRID_TEXT = """\
[grid]
n = 4..10
k = 2..3
r = 2..3
s = 2..3
mode = both
"""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def lb_defect(n: int, k: int, r: int, s: int) -> int:
    """ceil(max(n - r*s*(k-1), 0) / (r-1)), the defect lower bound."""
    if k < 2 or r < 2:
        raise ValueError("defect bound needs k >= 2 and r >= 2")
    return ceil_div(max(n - r * s * (k - 1), 0), r - 1)


def lb_topo_almost(n: int, k: int, p: int, s: int) -> int:
    """ceil((n - (p+s-2)(k-1)) / (p-1)) for the almost s-stable family."""
    if not is_prime(p):
        raise ValueError(f"the topological bound needs prime uniformity, got {p}")
    if s < 2:
        raise ValueError("the topological bound needs s >= 2")
    if n < (p + s - 2) * (k - 1) + max(p, s):
        raise ValueError(f"n={n} below the theorem threshold")
    return ceil_div(n - (p + s - 2) * (k - 1), p - 1)


def lb_topo_stable(n: int, k: int, p: int, s: int) -> int:
    """ceil((n - (p+s-2)(k-1) - (s-1)) / (p-1)) for the s-stable family."""
    if not is_prime(p):
        raise ValueError(f"the topological bound needs prime uniformity, got {p}")
    if s < 2:
        raise ValueError("the topological bound needs s >= 2")
    if n < (p + s - 2) * (k - 1) + (s - 1) + max(p, s):
        raise ValueError(f"n={n} below the theorem threshold")
    return ceil_div(n - (p + s - 2) * (k - 1) - (s - 1), p - 1)


def lb_topo(n: int, k: int, p: int, s: int, mode: Mode) -> int | None:
    """The applicable topological bound, or None outside the theorem's scope."""
    fn = lb_topo_almost if mode == "path" else lb_topo_stable
    try:
        return fn(n, k, p, s)
    except ValueError:
        return None


CSV_COLUMNS = (
    "n", "k", "r", "s", "mode", "vertices", "edges",
    "lb_defect", "lb_topo", "ub", "exact", "status", "nodes", "millis",
)


@dataclass
class ScanRecord:
    """One sweep cell: bounds, exact value or bracket, and a verdict."""

    params: ParamSet
    vertices: int | None = None
    edges: int | None = None
    lb_defect: int | None = None
    lb_topo: int | None = None
    ub: int | None = None
    exact_lo: int | None = None
    exact_hi: int | None = None
    status: str = "indeterminate"
    nodes: int = 0
    millis: int = 0
    witness: tuple[int, ...] | None = None
    error: str | None = None

    @property
    def key(self) -> str:
        return self.params.key

    @property
    def exact(self) -> int | None:
        if self.exact_lo is not None and self.exact_lo == self.exact_hi:
            return self.exact_lo
        return None

    def exact_text(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        if self.exact_lo is None:
            return ""
        hi = "" if self.exact_hi is None else self.exact_hi
        return f"{self.exact_lo}..{hi}"

    def csv_row(self) -> str:
        p = self.params
        cells = [
            p.n, p.k, p.r, p.s, p.mode, self.vertices, self.edges,
            self.lb_defect, self.lb_topo, self.ub, self.exact_text(),
            self.status, self.nodes, self.millis,
        ]
        return ",".join("" if c is None else str(c) for c in cells)

    def to_json(self) -> str:
        p = self.params
        payload = {
            "key": self.key,
            "n": p.n, "k": p.k, "r": p.r, "s": p.s, "mode": p.mode,
            "vertices": self.vertices, "edges": self.edges,
            "lb_defect": self.lb_defect, "lb_topo": self.lb_topo, "ub": self.ub,
            "exact_lo": self.exact_lo, "exact_hi": self.exact_hi,
            "status": self.status, "nodes": self.nodes, "millis": self.millis,
            "witness": list(self.witness) if self.witness is not None else None,
            "witness_ref": self.key,
            "error": self.error,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ScanRecord":
        d = json.loads(line)
        return cls(
            params=ParamSet(n=d["n"], k=d["k"], r=d["r"], s=d["s"], mode=d["mode"]),
            vertices=d.get("vertices"),
            edges=d.get("edges"),
            lb_defect=d.get("lb_defect"),
            lb_topo=d.get("lb_topo"),
            ub=d.get("ub"),
            exact_lo=d.get("exact_lo"),
            exact_hi=d.get("exact_hi"),
            status=d.get("status", "indeterminate"),
            nodes=d.get("nodes", 0),
            millis=d.get("millis", 0),
            witness=tuple(d["witness"]) if d.get("witness") else None,
            error=d.get("error"),
        )


@dataclass(frozen=True)
class GridSpec:
    """Inclusive ranges for n, k, r, s plus the stability modes to sweep."""

    n: tuple[int, int]
    k: tuple[int, int]
    r: tuple[int, int]
    s: tuple[int, int]
    modes: tuple[Mode, ...] = ("path", "cycle")

    def cells(self):
        for n in range(self.n[0], self.n[1] + 1):
            for k in range(self.k[0], self.k[1] + 1):
                for r in range(self.r[0], self.r[1] + 1):
                    for s in range(self.s[0], self.s[1] + 1):
                        for mode in self.modes:
                            yield ParamSet(n=n, k=k, r=r, s=s, mode=mode)


DEFAULT_GRID = GridSpec(n=(4, 10), k=(2, 3), r=(2, 3), s=(2, 3))


def scan_cell(
    params: ParamSet,
    node_budget: int = SCAN_NODE_BUDGET,
    always_solve: bool = False,
) -> ScanRecord:
    """Compute every applicable bound for one cell and classify it.

    proved-equal: the exact value matches the upper bound (the conjectured
    value); gap: an exact value short of the upper bound; indeterminate:
    the cell is out of the solver's reach at this budget.  Cells whose
    bounds already meet are not solved unless always_solve is set.
    """
    record = ScanRecord(params=params)
    p = params
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            hg = build(p)
    except BudgetError as exc:
        record.error = str(exc)
        return record
    record.vertices = len(hg.vertices)
    record.edges = len(hg.edges)
    if p.k >= 2 and p.n >= p.s * p.k:
        record.lb_defect = lb_defect(p.n, p.k, p.r, p.s)
    record.lb_topo = lb_topo(p.n, p.k, p.r, p.s, p.mode)
    if p.k >= 2 and p.satisfies_standing_hypothesis():
        record.ub = upper_bound(p.n, p.k, p.r, p.s)
    lower = max(
        (b for b in (record.lb_defect, record.lb_topo) if b is not None),
        default=0,
    )
    lower = max(lower, 1 if record.vertices else 0, 2 if record.edges else 0)
    if record.ub is not None and lower == record.ub and not always_solve:
        record.exact_lo = record.exact_hi = record.ub
        record.status = "proved-equal"
        return record
    cap = VERTEX_CAP_GRAPH if p.r == 2 else VERTEX_CAP_HYPER
    if record.vertices <= cap:
        try:
            result = chromatic_number(hg, node_budget=node_budget)
        except BudgetError as exc:
            record.error = str(exc)
            result = None
        if result is not None:
            record.nodes = result.nodes
            record.millis = result.millis
            if result.chi is not None:
                record.exact_lo = record.exact_hi = result.chi
                if result.witness is not None:
                    record.witness = result.witness.colors
            else:
                record.exact_lo = max(lower, result.lower)
                record.exact_hi = record.ub
    else:
        record.exact_lo = lower if lower > 0 else None
        record.exact_hi = record.ub
    exact = record.exact
    stated_lb = max(
        (b for b in (record.lb_defect, record.lb_topo) if b is not None), default=0
    )
    if exact is not None and record.ub is not None and exact == record.ub:
        record.status = "proved-equal"
    elif exact is not None and (
        (record.ub is not None and exact < record.ub) or exact > stated_lb
    ):
        record.status = "gap"
    else:
        record.status = "indeterminate"
    return record


def scan(
    grid: GridSpec,
    cache=None,
    node_budget: int = SCAN_NODE_BUDGET,
) -> list[ScanRecord]:
    """Sweep the grid in deterministic cell order, reusing cached records.

    Cache hits are re-emitted verbatim, so repeating a sweep with an
    unchanged grid is idempotent and byte-stable.
    """
    known = cache.load() if cache is not None else {}
    records = []
    for params in grid.cells():
        got = known.get(params.key)
        if got is not None:
            records.append(got)
            continue
        record = scan_cell(params, node_budget=node_budget)
        records.append(record)
        if cache is not None:
            cache.append(record)
    return records


def records_to_csv(records: list[ScanRecord]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    lines.extend(record.csv_row() for record in records)
    return "\n".join(lines) + "\n"
