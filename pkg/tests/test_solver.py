from itertools import product
from random import Random

import pytest

from kneserlab.core import BudgetError, ParamSet
from kneserlab.coloring import Coloring, stable_upper_coloring, verify_proper
from kneserlab.hypergraph import KneserHypergraph, build
from kneserlab.solver import (
    chromatic_number,
    colorful_violation,
    find_colorful_bipartite,
    greedy_coloring,
    is_colorable,
    local_chromatic_number,
)


def graph_from_edges(num_vertices, edges):
    """Arbitrary test graph dressed as a Kneser structure on singletons."""
    params = ParamSet(n=num_vertices, k=1, r=2, s=1, mode="path")
    vertices = tuple(1 << i for i in range(num_vertices))
    return KneserHypergraph(params=params, vertices=vertices, edges=tuple(sorted(edges)))


def exhaustive_colorable(hg, t):
    """Independent oracle: try every assignment of t colors outright."""
    n = len(hg.vertices)
    for assignment in product(range(1, t + 1), repeat=n):
        if all(len({assignment[v] for v in e}) > 1 for e in hg.edges):
            return True
    return False


def test_petersen_is_not_two_colorable():
    petersen = build(ParamSet(n=5, k=2, r=2, s=1))
    assert not exhaustive_colorable(petersen, 2)
    assert is_colorable(petersen, 2) is None
    witness = is_colorable(petersen, 3)
    assert witness is not None
    assert verify_proper(petersen, witness) is None


def test_edgeless_single_color():
    hg = build(ParamSet(n=3, k=2, r=2, s=2, mode="path"))
    witness = is_colorable(hg, 1)
    assert witness == Coloring(colors=(1,), t=1)


def test_is_colorable_budget():
    hg = build(ParamSet(n=8, k=2, r=2, s=2, mode="path"))
    with pytest.raises(BudgetError):
        is_colorable(hg, 5, node_budget=3)


def test_chromatic_examples():
    assert chromatic_number(build(ParamSet(n=5, k=2, r=2, s=1))).chi == 3
    assert chromatic_number(build(ParamSet(n=6, k=2, r=2, s=3, mode="path"))).chi == 3
    assert chromatic_number(build(ParamSet(n=7, k=3, r=2, s=2, mode="cycle"))).chi == 3
    assert chromatic_number(build(ParamSet(n=7, k=2, r=2, s=3, mode="cycle"))).chi == 4


def test_chromatic_against_exhaustive_oracle():
    for params in (
        ParamSet(n=6, k=2, r=2, s=2, mode="path"),
        ParamSet(n=6, k=2, r=2, s=2, mode="cycle"),
        ParamSet(n=7, k=2, r=2, s=3, mode="path"),
        ParamSet(n=7, k=2, r=3, s=2, mode="path"),
    ):
        hg = build(params)
        result = chromatic_number(hg)
        assert result.witness is not None
        assert verify_proper(hg, result.witness) is None
        assert result.witness.t == result.chi
        assert not exhaustive_colorable(hg, result.chi - 1)
        assert exhaustive_colorable(hg, result.chi)


def test_chromatic_empty_and_indeterminate():
    empty = build(ParamSet(n=2, k=2, r=2, s=3, mode="path"))
    assert len(empty.vertices) == 0
    assert chromatic_number(empty).chi == 0
    hard = build(ParamSet(n=8, k=2, r=2, s=2, mode="path"))
    result = chromatic_number(hard, node_budget=2)
    assert result.chi is None
    assert result.status == "indeterminate"
    assert result.lower >= 1


def test_chromatic_monotonicity_random_instances():
    rng = Random(12345)
    for _ in range(50):
        n = rng.randint(4, 9)
        all_pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        edges = [e for e in all_pairs if rng.random() < 0.45]
        if not edges:
            continue
        g = graph_from_edges(n, edges)
        chi = chromatic_number(g).chi
        # adding an edge never decreases chi
        missing = [e for e in all_pairs if e not in edges]
        if missing:
            extra = rng.choice(missing)
            bigger = graph_from_edges(n, edges + [extra])
            assert chromatic_number(bigger).chi >= chi
        # deleting a vertex never increases chi
        victim = rng.randrange(n)
        kept = [v for v in range(n) if v != victim]
        relabel = {v: i for i, v in enumerate(kept)}
        smaller = graph_from_edges(
            n - 1,
            [(relabel[a], relabel[b]) for a, b in edges if victim not in (a, b)],
        )
        assert chromatic_number(smaller).chi <= chi


def brute_local_chromatic(hg):
    """Independent oracle: walk every set partition via restricted growth
    strings; the local value only depends on the partition."""
    n = len(hg.vertices)
    adj = hg.adjacency()
    closed = [adj[v] | (1 << v) for v in range(n)]
    edges = list(hg.edges)
    best = n + 1

    def walk(assignment, top):
        nonlocal best
        if len(assignment) == n:
            if any(assignment[a] == assignment[b] for a, b in edges):
                return
            worst = 0
            for v in range(n):
                seen = set()
                m = closed[v]
                while m:
                    low = m & -m
                    seen.add(assignment[low.bit_length() - 1])
                    m ^= low
                worst = max(worst, len(seen))
            best = min(best, worst)
            return
        for c in range(1, top + 2):
            walk(assignment + [c], max(top, c))

    walk([], 0)
    return best


def test_local_chromatic_examples():
    k4 = build(ParamSet(n=4, k=1, r=2, s=1))
    assert local_chromatic_number(k4) == 4
    hg = build(ParamSet(n=6, k=2, r=2, s=3, mode="path"))
    assert local_chromatic_number(hg) == 3 == brute_local_chromatic(hg)
    edgeless = build(ParamSet(n=3, k=2, r=2, s=2, mode="path"))
    assert local_chromatic_number(edgeless) == 1


def test_local_chromatic_against_oracle_small():
    for params in (
        ParamSet(n=5, k=2, r=2, s=2, mode="path"),
        ParamSet(n=6, k=2, r=2, s=2, mode="cycle"),
        ParamSet(n=7, k=2, r=2, s=3, mode="path"),
    ):
        hg = build(params)
        assert local_chromatic_number(hg) == brute_local_chromatic(hg)


def test_local_chromatic_rejects_big_or_hyper():
    with pytest.raises(BudgetError):
        local_chromatic_number(build(ParamSet(n=9, k=2, r=2, s=1)))
    with pytest.raises(ValueError):
        local_chromatic_number(build(ParamSet(n=6, k=2, r=3, s=2)))


def test_colorful_witness_example():
    params = ParamSet(n=6, k=2, r=2, s=3, mode="path")
    hg = build(params)
    col = stable_upper_coloring(params, hg)
    witness = find_colorful_bipartite(hg, col)
    assert witness is not None
    assert colorful_violation(hg, col, witness) is None
    verts = hg.vertex_elements()
    assert {verts[i] for i in witness.side_a} == {(1, 4), (3, 6)}
    assert {verts[i] for i in witness.side_b} == {(2, 5)}
    assert witness.colors_a == (1, 3)
    assert witness.colors_b == (2,)


def test_colorful_single_vertex_width():
    hg = build(ParamSet(n=3, k=2, r=2, s=2, mode="path"))
    col = Coloring(colors=(1,), t=1)
    witness = find_colorful_bipartite(hg, col, t=1)
    assert witness is not None
    assert witness.side_b == ()
    assert colorful_violation(hg, col, witness, t=1) is None


def test_colorful_on_sampled_greedy_colorings():
    params = ParamSet(n=7, k=2, r=2, s=3, mode="path")
    hg = build(params)
    rng = Random(7)
    colorings = [stable_upper_coloring(params, hg)]
    colorings += [greedy_coloring(hg, rng) for _ in range(10)]
    for col in colorings:
        assert verify_proper(hg, col) is None
        witness = find_colorful_bipartite(hg, col)
        assert witness is not None
        assert colorful_violation(hg, col, witness) is None
        assert len(witness.side_a) == 2 and len(witness.side_b) == 2
