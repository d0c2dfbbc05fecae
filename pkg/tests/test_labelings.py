from itertools import combinations
from random import Random

import pytest

from kneserlab.core import ParamSet, mask_elements, subset_mask
from kneserlab.coloring import coloring_by_mask, stable_upper_coloring
from kneserlab.hypergraph import build
from kneserlab.labelings import (
    ChainNotFoundError,
    FanLabeling,
    ZpTuckerLabeling,
    capacity_parts,
    capacity_peak,
    colorful_from_fan,
    extract_fan_chain,
    fan_labeling_from,
    gap_subsets,
    part_spread,
    stable_capacity,
    verify_fan_antipodal,
    verify_zp_tucker,
    zp_labeling_from,
)
from kneserlab.solver import (
    chromatic_number,
    colorful_violation,
    find_colorful_bipartite,
    greedy_coloring,
)
from kneserlab.stable import chains, is_stable, signed_vectors, sv_max, sv_rotate


def sm(elements):
    return subset_mask(elements)


def test_part_spread_matches_subset_oracle():
    for mask in range(1, 1 << 7):
        for s in (1, 2, 3):
            elems = mask_elements(mask)
            best = 0
            for size in range(len(elems), 0, -1):
                if any(
                    all(b - a >= s for a, b in zip(c, c[1:]))
                    for c in combinations(elems, size)
                ):
                    best = size
                    break
            assert part_spread(mask, s) == best


def test_gap_subsets_match_filter_oracle():
    for mask in (sm([1, 3, 5, 6]), sm([2, 4, 5, 7, 8]), sm([1, 2, 3])):
        for k in (1, 2, 3):
            for s in (2, 3):
                got = set(gap_subsets(mask, k, s))
                elems = mask_elements(mask)
                expect = {
                    sm(c)
                    for c in combinations(elems, k)
                    if all(b - a >= s for a, b in zip(c, c[1:]))
                }
                assert got == expect


def test_capacity_statistics_examples():
    assert stable_capacity((sm([1, 4]), sm([2])), s=3, k=3) == 2
    assert capacity_parts((sm([1, 4]), sm([2])), s=3, k=3) == (1,)
    assert capacity_peak((sm([1, 4]), sm([2])), s=3, k=3) == 4
    assert stable_capacity((sm([2]), 0), s=5, k=1) == 1
    assert stable_capacity((sm([1, 2, 3]), 0), s=3, k=3) == 1
    assert capacity_parts((sm([1, 4]), sm([2, 5])), s=3, k=3) == (1, 2)
    assert capacity_peak((sm([1, 4]), sm([2, 5])), s=3, k=3) == 5
    assert capacity_parts((sm([3]), sm([1])), s=2, k=2) == (1, 2)
    assert capacity_peak((sm([3]), sm([1])), s=2, k=2) == 3


def test_capacity_peak_equals_max_when_all_parts_attain():
    for parts in signed_vectors(5, 2):
        for s, k in ((2, 2), (3, 2)):
            if len(capacity_parts(parts, s, k)) == 2:
                assert capacity_peak(parts, s, k) == sv_max(parts)


def interval_labeling(n, k, s, p):
    params = ParamSet(n=n, k=k, r=p if p <= s else 2, s=s, mode="path")
    hg = build(ParamSet(n=n, k=k, r=2, s=s, mode="path"))
    col = stable_upper_coloring(ParamSet(n=n, k=k, r=2, s=s, mode="path"), hg)
    return ZpTuckerLabeling(
        n=n, k=k, s=s, p=p, color_of=coloring_by_mask(hg, col), t=col.t
    )


def test_zp_labeling_case_one_examples():
    lab = interval_labeling(9, 3, 3, 2)
    assert lab.alpha == 4
    assert lab((sm([1, 4]), sm([2, 5]))) == (2, 4)
    assert lab((sm([1, 4]), sm([2]))) == (1, 6)


def test_zp_labeling_case_two_example():
    lab = interval_labeling(6, 2, 3, 2)
    assert (lab.alpha, lab.m) == (2, 6)
    assert lab((sm([1, 4]), sm([2, 5]))) == (2, 5)


def test_zp_label_case_ranges_partition():
    for n, k, s in ((6, 2, 3), (6, 2, 2)):
        lab = interval_labeling(n, k, s, 2)
        for parts in signed_vectors(n, 2):
            sign, idx = lab(parts)
            cap = stable_capacity(parts, s, k)
            attaining = capacity_parts(parts, s, k)
            if cap == k:
                assert lab.alpha + k <= idx <= lab.m
            elif len(attaining) == 2:
                assert 1 <= idx <= lab.alpha
            else:
                assert lab.alpha + 1 <= idx <= lab.alpha + k - 1


def test_zp_label_equivariance_p3():
    params = ParamSet(n=6, k=2, r=3, s=3, mode="path")
    hg = build(params)
    col = stable_upper_coloring(params, hg)
    lab = ZpTuckerLabeling(
        n=6, k=2, s=3, p=3, color_of=coloring_by_mask(hg, col), t=col.t
    )
    for parts in signed_vectors(6, 3):
        sign, idx = lab(parts)
        for g in (1, 2):
            rsign, ridx = lab(sv_rotate(parts, g))
            assert ridx == idx
            assert rsign == (sign + g - 1) % 3 + 1


def test_nested_pairs_preserve_capacity_and_residue():
    # nested pairs with equal small label index agree on the capacity and
    # on the maximum modulo s-1
    n, k, s = 6, 2, 3
    lab = interval_labeling(n, k, s, 2)
    for below, above in chains(n, 2, 2):
        s1, i1 = lab(below)
        s2, i2 = lab(above)
        if i1 == i2 <= lab.alpha:
            assert s1 == s2
            assert stable_capacity(below, s, k) == stable_capacity(above, s, k)
            assert sv_max(below) % (s - 1) == sv_max(above) % (s - 1)


def test_verify_zp_tucker_on_interval_colorings():
    for n, k, s, p in ((6, 2, 3, 2), (6, 2, 2, 2), (4, 2, 2, 2)):
        lab = interval_labeling(n, k, s, p)
        assert verify_zp_tucker(lab, n=n, p=p, m=lab.m, alpha=lab.alpha) is None
        assert lab.alpha + (lab.m - lab.alpha) * (p - 1) >= n


def test_verify_zp_tucker_p3():
    params = ParamSet(n=6, k=2, r=3, s=3, mode="path")
    hg = build(params)
    col = stable_upper_coloring(params, hg)
    lab = ZpTuckerLabeling(
        n=6, k=2, s=3, p=3, color_of=coloring_by_mask(hg, col), t=col.t
    )
    assert verify_zp_tucker(lab, n=6, p=3, m=lab.m, alpha=lab.alpha) is None


def test_verify_zp_tucker_negative_control():
    # constant labeling breaks equivariance, the first check that can fail
    violation = verify_zp_tucker(lambda parts: (1, 1), n=2, p=2, m=1, alpha=1)
    assert violation is not None
    assert violation.kind == "equivariance"


def test_verify_zp_tucker_trivial_ground_set():
    def identity(parts):
        return (1, 1) if parts[0] else (2, 1)

    assert verify_zp_tucker(identity, n=1, p=2, m=1, alpha=1) is None


def fan_from_interval(n, k, s):
    params = ParamSet(n=n, k=k, r=2, s=s, mode="path")
    hg = build(params)
    col = stable_upper_coloring(params, hg)
    return hg, col, fan_labeling_from(hg, col)


def test_fan_labeling_examples():
    _, _, fan = fan_from_interval(6, 2, 3)
    assert fan((sm([1]), sm([3]))) == -2
    assert fan((sm([1, 3]), 0)) == 3
    assert fan((sm([1, 4]), sm([2, 5]))) == -5


def test_fan_labeling_antipodal_and_complement_free():
    for n, k, s in ((6, 2, 3), (7, 2, 3), (8, 2, 4), (6, 2, 2)):
        hg, col, fan = fan_from_interval(n, k, s)
        assert verify_fan_antipodal(fan, n) is None
    # and on a few non-optimal colorings
    params = ParamSet(n=6, k=2, r=2, s=2, mode="path")
    hg = build(params)
    rng = Random(3)
    for _ in range(3):
        col = greedy_coloring(hg, rng)
        fan = fan_labeling_from(hg, col)
        assert verify_fan_antipodal(fan, 6) is None


def test_fan_negative_control():
    violation = verify_fan_antipodal(lambda parts: 1, 2)
    assert violation is not None
    assert violation.kind == "antipodal"


def test_fan_chain_trivial():
    def signed(parts):
        return 1 if parts[0] else -1

    chain = extract_fan_chain(signed, 1)
    assert chain.vectors == ((1, 0),)
    assert chain.labels == (1,)


def test_fan_chain_not_found_raises():
    # labels collide in magnitude on every chain, so no alternating set exists
    with pytest.raises(ChainNotFoundError):
        extract_fan_chain(lambda parts: 1 if parts[0] else -1, 2)


def test_fan_chain_decodes_to_witness():
    hg, col, fan = fan_from_interval(6, 2, 3)
    chain = extract_fan_chain(fan, 6)
    assert [sum(p.bit_count() for p in v) for v in chain.vectors] == list(range(1, 7))
    witness = colorful_from_fan(chain, fan, hg)
    assert colorful_violation(hg, col, witness) is None
    verts = hg.vertex_elements()
    assert {verts[i] for i in witness.side_a} == {(1, 4), (3, 6)}
    assert {verts[i] for i in witness.side_b} == {(2, 5)}


def test_fan_and_bruteforce_agree_on_invariants():
    for n, k, s in ((7, 2, 3), (8, 2, 3)):
        params = ParamSet(n=n, k=k, r=2, s=s, mode="path")
        hg = build(params)
        result = chromatic_number(hg)
        rng = Random(11)
        colorings = [result.witness] + [greedy_coloring(hg, rng) for _ in range(5)]
        for col in colorings:
            direct = find_colorful_bipartite(hg, col)
            assert direct is not None
            assert colorful_violation(hg, col, direct) is None
            fan = fan_labeling_from(hg, col)
            chain = extract_fan_chain(fan, n)
            decoded = colorful_from_fan(chain, fan, hg)
            assert colorful_violation(hg, col, decoded) is None


def test_labeling_rejects_wrong_family():
    params = ParamSet(n=6, k=2, r=2, s=3, mode="cycle")
    hg = build(params)
    col = chromatic_number(hg).witness
    with pytest.raises(ValueError):
        fan_labeling_from(hg, col)
    with pytest.raises(ValueError):
        FanLabeling(n=6, k=2, s=3, color_of={}, m_colors=1)
