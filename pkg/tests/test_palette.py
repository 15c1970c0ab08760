"""Multiset enumeration, the palette axioms, search, involution, blending."""

from math import comb

import pytest

from extensor.errors import InputError
from extensor.palette import (
    Palette,
    canonical_palette,
    derive_involution,
    enumerate_multisets,
    is_palette,
    palettes_equivalent,
    reduce_palette,
    search_palette,
)


def test_enumerate_two_colors_size_four():
    out = enumerate_multisets(2, 4)
    assert out == [
        (1, 1, 1, 1),
        (1, 1, 1, 2),
        (1, 1, 2, 2),
        (1, 2, 2, 2),
        (2, 2, 2, 2),
    ]


def test_enumerate_counts():
    assert len(enumerate_multisets(3, 3)) == 10
    assert enumerate_multisets(1, 4) == [(1, 1, 1, 1)]
    for n in range(1, 6):
        for m in range(1, 5):
            assert len(enumerate_multisets(n, m)) == comb(n + m - 1, m)


def test_two_color_palette_is_ok():
    p = Palette(2, frozenset({(1, 1, 1, 1), (1, 1, 2, 2), (2, 2, 2, 2)}))
    assert is_palette(p).ok


def test_missing_pair_member_blames_axiom_two():
    p = Palette(2, frozenset({(1, 1, 1, 1), (2, 2, 2, 2)}))
    check = is_palette(p)
    assert not check.ok
    assert check.axiom == 2
    assert check.witness == ((1, 1, 2, 2),)


def test_double_completion_blames_axiom_one():
    p = Palette(
        2, frozenset({(1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 2, 2), (2, 2, 2, 2)})
    )
    check = is_palette(p)
    assert not check.ok
    assert check.axiom == 1
    assert check.witness[0] == (1, 1, 1)


def test_exchange_scan_finds_missing_derived_member():
    # dropping {3,3,4,4} from the 4-color palette leaves {1,1,3,3} and
    # {1,1,4,4} sharing the pair {1,1} with their derived member gone
    from extensor.palette import axiom3_violation

    damaged = Palette(
        4, frozenset(canonical_palette(4).members - {(3, 3, 4, 4)})
    )
    witness = axiom3_violation(damaged)
    assert witness is not None
    assert witness[2] == (3, 3, 4, 4)
    # the full check reports the membership demand first
    assert is_palette(damaged).axiom == 2


def test_exchange_axiom_passes_on_all_found_palettes():
    from extensor.palette import axiom3_violation

    for n in (1, 2, 4, 8):
        assert axiom3_violation(canonical_palette(n)) is None


def test_canonical_palettes_pass():
    for n in (1, 2, 4, 8):
        assert is_palette(canonical_palette(n)).ok


def test_canonical_rejects_non_powers():
    with pytest.raises(InputError):
        canonical_palette(3)


def test_canonical_one_color():
    assert canonical_palette(1).members == {(1, 1, 1, 1)}


def test_canonical_four_colors_has_eleven_members():
    p = canonical_palette(4)
    # brute confirmation: the pair multisets plus the all-distinct one
    pairs = {tuple(sorted((i, i, j, j))) for i in range(1, 5) for j in range(i, 5)}
    assert p.members == pairs | {(1, 2, 3, 4)}
    assert len(p.members) == 11


def test_search_two_colors_finds_canonical():
    out = search_palette(2)
    assert out.status == "found"
    assert out.palette.members == canonical_palette(2).members


def test_search_three_colors_proves_none():
    out = search_palette(3)
    assert out.status == "proven_none"


def test_search_four_colors_matches_canonical_up_to_relabeling():
    out = search_palette(4)
    assert out.status == "found"
    assert is_palette(out.palette).ok
    assert palettes_equivalent(out.palette, canonical_palette(4)) is not None


def test_search_five_and_six_prove_none():
    assert search_palette(5).status == "proven_none"
    assert search_palette(6).status == "proven_none"


def test_search_seven_with_budget_is_honest():
    out = search_palette(7, node_budget=10**5)
    assert out.status in ("proven_none", "budget_exhausted")


def test_search_budget_must_be_positive():
    with pytest.raises(InputError):
        search_palette(2, node_budget=0)


def test_tiny_budget_exhausts():
    out = search_palette(6, node_budget=5)
    assert out.status == "budget_exhausted"
    assert out.nodes == 6


def test_involution_two_colors():
    g = derive_involution(canonical_palette(2), 1, 2)
    assert g == (2, 1)


def test_involution_four_colors():
    p = canonical_palette(4)
    assert derive_involution(p, 1, 2) == (2, 1, 4, 3)
    assert derive_involution(p, 1, 3) == (3, 4, 1, 2)


def test_involution_requires_distinct_anchors():
    with pytest.raises(InputError):
        derive_involution(canonical_palette(2), 1, 1)


def test_involution_fixed_point_signals_odd_count():
    # a fabricated member set over 3 colors with {1,2,3,3}: g(3) = 3
    members = {
        tuple(sorted((i, i, j, j))) for i in range(1, 4) for j in range(i, 4)
    }
    members |= {(1, 2, 3, 3), (1, 1, 2, 3)}
    p = Palette(3, frozenset(members))
    with pytest.raises(InputError):
        # not a palette at all; the axioms fail before the pairing is attempted
        derive_involution(p, 1, 2)


def test_reduce_four_to_two():
    assert reduce_palette(canonical_palette(4)).members == canonical_palette(2).members


def test_reduce_two_to_one():
    assert reduce_palette(canonical_palette(2)).members == {(1, 1, 1, 1)}


def test_reduce_eight_to_four_is_palette():
    reduced = reduce_palette(canonical_palette(8))
    assert reduced.n == 4
    assert is_palette(reduced).ok


def test_reduction_chain_reaches_one_color():
    p = canonical_palette(8)
    for _ in range(3):
        p = reduce_palette(p)
    assert p.members == {(1, 1, 1, 1)}


def test_found_palettes_have_unique_completions():
    # re-verify axiom 1 independently of the search bookkeeping
    out = search_palette(4)
    for t in enumerate_multisets(4, 3):
        containing = [
            m
            for m in out.palette.members
            if _contains(m, t)
        ]
        assert len(containing) == 1


def _contains(member, triple):
    rest = list(member)
    for x in triple:
        if x in rest:
            rest.remove(x)
        else:
            return False
    return True
