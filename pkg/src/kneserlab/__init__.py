"""kneserlab: exact chromatic workbench for stable Kneser families.

Builds (almost) s-stable Kneser graphs and hypergraphs, carries the
explicit coloring constructions behind their chromatic upper bounds,
solves small instances exactly, and verifies the combinatorial lemmas
(Z_p Tucker, octahedral Fan) that drive the lower bounds.
"""

from .bounds import (
    DEFAULT_GRID,
    GridSpec,
    ScanRecord,
    lb_defect,
    lb_topo,
    lb_topo_almost,
    lb_topo_stable,
    scan,
    scan_cell,
)
from .cache import ResultCache
from .coloring import (
    Coloring,
    family_upper_coloring,
    kneser_color,
    kneser_coloring,
    lift_coloring,
    stable_upper_color,
    stable_upper_coloring,
    upper_bound,
    verify_proper,
)
from .core import BudgetError, ParamSet
from .hypergraph import (
    GroundHypergraph,
    KneserHypergraph,
    build,
    colorability_defect,
    colorability_defect_formula,
    stable_ground,
)
from .labelings import (
    FanChain,
    FanLabeling,
    ZpTuckerLabeling,
    capacity_parts,
    capacity_peak,
    colorful_from_fan,
    extract_fan_chain,
    fan_labeling_from,
    stable_capacity,
    verify_fan_antipodal,
    verify_zp_tucker,
    zp_labeling_from,
)
from .solver import (
    ColorfulWitness,
    SolveResult,
    chromatic_number,
    colorful_violation,
    find_colorful_bipartite,
    greedy_coloring,
    is_colorable,
    local_chromatic_number,
)
from .stable import count_stable, enumerate_stable, is_stable, signed_vectors

__version__ = "0.1.0"
