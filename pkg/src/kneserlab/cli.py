"""Command-line surface: build, chi, scan, verify.

Exit codes: 0 success, 1 a verified mathematical statement failed (a
bug), 2 usage error, 3 a budget ran out before a verdict.
"""

from __future__ import annotations

import argparse
import configparser
import io
import sys
from random import Random

from .bounds import (
    GridSpec,
    SCAN_NODE_BUDGET,
    ScanRecord,
    lb_topo_almost,
    records_to_csv,
    scan,
    scan_cell,
)
from .cache import ResultCache
from .coloring import (
    family_upper_coloring,
    lift_coloring,
    stable_upper_coloring,
    verify_proper,
)
from .core import BudgetError, ParamSet
from .hypergraph import colorability_defect, colorability_defect_formula, stable_ground
from .hypergraph import build as build_hypergraph
from .labelings import (
    ChainNotFoundError,
    colorful_from_fan,
    extract_fan_chain,
    fan_labeling_from,
    verify_fan_antipodal,
    verify_zp_tucker,
    zp_labeling_from,
)
from .solver import (
    chromatic_number,
    colorful_violation,
    find_colorful_bipartite,
    greedy_coloring,
)

EXIT_OK = 0
EXIT_MATH_FAILURE = 1
EXIT_USAGE = 2
EXIT_INDETERMINATE = 3


def _params_from(args, r: int | None = None) -> ParamSet:
    return ParamSet(
        n=args.n, k=args.k, r=r if r is not None else args.r, s=args.s, mode=args.mode
    )


def _add_param_flags(parser, include_r: bool = True):
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--k", type=int, required=True)
    if include_r:
        parser.add_argument("--r", type=int, default=2)
    parser.add_argument("--s", type=int, default=1)
    parser.add_argument("--mode", choices=("path", "cycle"), default="path")


def cmd_build(args) -> int:
    hg = build_hypergraph(_params_from(args))
    text = hg.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_chi(args) -> int:
    params = _params_from(args)
    record = scan_cell(params, node_budget=args.node_budget, always_solve=True)
    def show(v):
        return "-" if v is None else v
    print(
        f"chi={record.exact_text() or '?'} "
        f"lb_defect={show(record.lb_defect)} "
        f"lb_topo={show(record.lb_topo)} "
        f"ub={show(record.ub)} "
        f"status={record.status}"
    )
    return EXIT_OK if record.exact is not None else EXIT_INDETERMINATE


def _parse_range(text: str) -> tuple[int, int]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    value = int(text)
    return value, value


def parse_scan_config(text: str) -> tuple[GridSpec, dict]:
    """Plain key=value config; the [grid] section holds n/k/r/s ranges."""
    if not text.lstrip().startswith("["):
        text = "[scan]\n" + text
    parser = configparser.ConfigParser()
    parser.read_file(io.StringIO(text))
    if not parser.has_section("grid"):
        raise ValueError("scan config needs a [grid] section")
    grid_sec = parser["grid"]
    mode_text = grid_sec.get("mode", "both").strip()
    if mode_text == "both":
        modes: tuple = ("path", "cycle")
    elif mode_text in ("path", "cycle"):
        modes = (mode_text,)
    else:
        raise ValueError(f"mode must be path, cycle, or both, got {mode_text!r}")
    grid = GridSpec(
        n=_parse_range(grid_sec.get("n", fallback="4..8")),
        k=_parse_range(grid_sec.get("k", fallback="2..2")),
        r=_parse_range(grid_sec.get("r", fallback="2..2")),
        s=_parse_range(grid_sec.get("s", fallback="2..2")),
        modes=modes,
    )
    options = {}
    if parser.has_section("scan"):
        options = dict(parser["scan"])
    return grid, options


def cmd_scan(args) -> int:
    with open(args.config, "r", encoding="utf-8") as handle:
        grid, options = parse_scan_config(handle.read())
    cache_path = args.cache or options.get("cache")
    cache = ResultCache(cache_path) if cache_path else None
    node_budget = int(options.get("node_budget", SCAN_NODE_BUDGET))
    records = scan(grid, cache=cache, node_budget=node_budget)
    csv_text = records_to_csv(records)
    out_path = args.out or options.get("out")
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    return EXIT_OK


def _report(checks: list[tuple[str, bool]]) -> int:
    failed = False
    for label, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {label}")
        failed = failed or not ok
    return EXIT_MATH_FAILURE if failed else EXIT_OK


def _optimal_coloring(params: ParamSet, node_budget=None):
    hg = build_hypergraph(params)
    result = chromatic_number(hg, node_budget=node_budget)
    if result.chi is None:
        raise BudgetError("exact solve needed for verification ran out of budget")
    return hg, result.witness


def verify_coloring(args) -> int:
    params = _params_from(args)
    hg = build_hypergraph(params)
    coloring = family_upper_coloring(params, hg)
    bad = verify_proper(hg, coloring)
    return _report(
        [(
            f"upper coloring proper with {coloring.t} colors on {params.key}",
            bad is None,
        )]
    )


def verify_lift(args) -> int:
    params = _params_from(args)
    base = stable_upper_coloring(params)
    lifted_params, lifted = lift_coloring(base, params, args.r1)
    hg = build_hypergraph(lifted_params)
    bad = verify_proper(hg, lifted)
    return _report(
        [(
            f"lifted coloring proper with {lifted.t} colors on {lifted_params.key}",
            bad is None,
        )]
    )


def verify_defect(args) -> int:
    checks = []
    for k in range(2, args.k_max + 1):
        for n in range(args.s * k, args.n_max + 1):
            for mode in ("path", "cycle"):
                params = ParamSet(n=n, k=k, r=args.r, s=args.s, mode=mode)
                formula = colorability_defect_formula(n, k, args.r, args.s)
                brute = colorability_defect(stable_ground(params), args.r)
                checks.append(
                    (f"defect formula={formula} brute={brute} on {params.key}",
                     formula == brute)
                )
    return _report(checks)


def verify_tucker(args) -> int:
    params = ParamSet(n=args.n, k=args.k, r=args.p, s=args.s, mode="path")
    hg, coloring = _optimal_coloring(params)
    labeling = zp_labeling_from(hg, coloring)
    violation = verify_zp_tucker(
        labeling, n=args.n, p=args.p, m=labeling.m, alpha=labeling.alpha
    )
    checks = [(
        f"labeling satisfies the Z_{args.p} Tucker hypotheses on {params.key}",
        violation is None,
    )]
    bound = lb_topo_almost(args.n, args.k, args.p, args.s)
    checks.append(
        (f"colors used t={coloring.t} >= topological bound {bound}",
         coloring.t >= bound)
    )
    return _report(checks)


def verify_fan(args) -> int:
    params = ParamSet(n=args.n, k=args.k, r=2, s=args.s, mode="path")
    hg, coloring = _optimal_coloring(params)
    labeling = fan_labeling_from(hg, coloring)
    violation = verify_fan_antipodal(labeling, args.n)
    checks = [(f"labeling antipodal and complement-free on {params.key}",
               violation is None)]
    try:
        chain = extract_fan_chain(labeling, args.n)
        witness = colorful_from_fan(chain, labeling, hg)
        problem = colorful_violation(hg, coloring, witness)
        checks.append((f"alternating chain decodes to a colorful witness",
                       problem is None))
    except ChainNotFoundError:
        checks.append(("alternating chain exists", False))
    return _report(checks)


def verify_colorful(args) -> int:
    params = ParamSet(n=args.n, k=args.k, r=2, s=args.s, mode="path")
    hg, optimal = _optimal_coloring(params)
    rng = Random(args.seed)
    colorings = [optimal]
    colorings += [greedy_coloring(hg, rng) for _ in range(args.colorings)]
    checks = []
    for i, coloring in enumerate(colorings):
        witness = find_colorful_bipartite(hg, coloring)
        ok = witness is not None and colorful_violation(hg, coloring, witness) is None
        labeling = fan_labeling_from(hg, coloring)
        try:
            chain = extract_fan_chain(labeling, args.n)
            fan_witness = colorful_from_fan(chain, labeling, hg)
            ok_fan = colorful_violation(hg, coloring, fan_witness) is None
        except ChainNotFoundError:
            ok_fan = False
        checks.append((f"coloring {i}: brute-force witness", ok))
        checks.append((f"coloring {i}: chain-extracted witness", ok_fan))
    passed = sum(1 for _, ok in checks if ok)
    print(f"{passed}/{len(checks)} witness checks passed on {params.key}")
    if all(ok for _, ok in checks):
        print(f"PASS colorful witnesses on {len(colorings)} colorings")
        return EXIT_OK
    return _report([(label, ok) for label, ok in checks if not ok])


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kneserlab",
        description="Exact workbench for stable Kneser graphs and hypergraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct a family and emit JSON")
    _add_param_flags(p_build)
    p_build.add_argument("--out", help="write JSON here instead of stdout")
    p_build.set_defaults(fn=cmd_build)

    p_chi = sub.add_parser("chi", help="exact chromatic number with bounds")
    _add_param_flags(p_chi)
    p_chi.add_argument("--node-budget", type=int, default=SCAN_NODE_BUDGET)
    p_chi.set_defaults(fn=cmd_chi)

    p_scan = sub.add_parser("scan", help="sweep a parameter grid to CSV")
    p_scan.add_argument("config", help="key=value config with a [grid] section")
    p_scan.add_argument("--out", help="write CSV here instead of stdout")
    p_scan.add_argument("--cache", help="append-only JSONL result cache")
    p_scan.set_defaults(fn=cmd_scan)

    p_verify = sub.add_parser("verify", help="check a construction or theorem instance")
    vsub = p_verify.add_subparsers(dest="what", required=True)

    v_col = vsub.add_parser("coloring", help="explicit upper-bound coloring is proper")
    _add_param_flags(v_col)
    v_col.set_defaults(fn=verify_coloring)

    v_lift = vsub.add_parser("lift", help="lifted coloring is proper")
    _add_param_flags(v_lift)
    v_lift.add_argument("--r1", type=int, required=True)
    v_lift.set_defaults(fn=verify_lift)

    v_def = vsub.add_parser("defect", help="defect formula matches brute force")
    v_def.add_argument("--n-max", type=int, required=True)
    v_def.add_argument("--k-max", type=int, required=True)
    v_def.add_argument("--r", type=int, default=2)
    v_def.add_argument("--s", type=int, default=2)
    v_def.set_defaults(fn=verify_defect)

    v_tuck = vsub.add_parser("tucker", help="Z_p Tucker hypotheses for the labeling")
    v_tuck.add_argument("--n", type=int, required=True)
    v_tuck.add_argument("--k", type=int, required=True)
    v_tuck.add_argument("--s", type=int, required=True)
    v_tuck.add_argument("--p", type=int, default=2)
    v_tuck.set_defaults(fn=verify_tucker)

    v_fan = vsub.add_parser("fan", help="signed labeling and chain extraction")
    v_fan.add_argument("--n", type=int, required=True)
    v_fan.add_argument("--k", type=int, required=True)
    v_fan.add_argument("--s", type=int, required=True)
    v_fan.set_defaults(fn=verify_fan)

    v_colf = vsub.add_parser("colorful", help="colorful witnesses, two routes")
    v_colf.add_argument("--n", type=int, required=True)
    v_colf.add_argument("--k", type=int, required=True)
    v_colf.add_argument("--s", type=int, required=True)
    v_colf.add_argument("--colorings", type=int, default=100)
    v_colf.add_argument("--seed", type=int, default=0)
    v_colf.set_defaults(fn=verify_colorful)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetError as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
