"""Leaf trees, C/D relations, splittings, expansions, the leveled obstruction."""

from itertools import permutations

import pytest

from extensor.errors import InputError
from extensor.generate import SplitMix64, random_rooted_tree, random_unrooted_tree
from extensor.hyperext import is_even_hypergraph
from extensor.structures import SubsetMap
from extensor.treeset import (
    CRelation,
    DRelation,
    RootedLeafTree,
    UnrootedLeafTree,
    branching_point,
    c_monotonic_check,
    c_monotonic_sequences,
    c_relation,
    check_c_axioms,
    check_d_axioms,
    colored_extension,
    d_monotonic_check,
    d_relation,
    extend_c_to_d,
    leaf_order,
    leveled_obstruction_demo,
    leveled_pairs_preorder,
    monotonic_sequences_isomorphic,
    n_free_check,
    obstruction_fixture,
    ordered_extension,
    pair_coloring,
    splittings,
    triple_coloring,
)


def cherry():
    # root {a, {b, c}}
    return RootedLeafTree(3, ((0, 4), (1, 2)))


def star3():
    return RootedLeafTree(3, ((0, 1, 2),))


def caterpillar():
    # a, (b, (c, d))
    return RootedLeafTree(4, ((0, 5), (1, 6), (2, 3)))


def quartet():
    # unrooted 01|23
    return UnrootedLeafTree(4, ((0, 1, 5), (4, 2, 3)))


def test_cherry_relation():
    rel = c_relation(cherry())
    assert rel.holds(0, 1, 2)
    assert not rel.holds(1, 0, 2)


def test_star_has_only_degenerate_relations():
    rel = c_relation(star3())
    for a, b, c in permutations(range(3), 3):
        assert not rel.holds(a, b, c)
    assert rel.holds(0, 1, 1)


def test_quartet_relation():
    rel = d_relation(quartet())
    assert rel.holds(0, 1, 2, 3)
    assert not rel.holds(0, 2, 1, 3)


def test_axioms_on_random_trees():
    rng = SplitMix64(51)
    for _ in range(60):
        leaves = 3 + rng.below(8)
        assert check_c_axioms(c_relation(random_rooted_tree(rng, leaves))).ok
        assert check_d_axioms(d_relation(random_unrooted_tree(rng, leaves))).ok


def test_constructed_c2_violation():
    rel = c_relation(cherry())
    broken = CRelation(3, rel.triples | {(1, 0, 2)})
    check = check_c_axioms(broken)
    assert not check.ok
    # C1 scans first: the inserted triple lacks its mirror
    assert check.axiom in ("C1", "C2")


def test_constructed_d2_violation():
    rel = d_relation(quartet())
    broken = DRelation(4, rel.quadruples | {(0, 2, 1, 3), (2, 0, 1, 3), (1, 3, 0, 2), (3, 1, 0, 2), (0, 2, 3, 1), (2, 0, 3, 1), (1, 3, 2, 0), (3, 1, 2, 0)})
    check = check_d_axioms(broken)
    assert not check.ok
    assert check.axiom == "D2"


def test_skipped_axioms_are_reported():
    check = check_c_axioms(c_relation(cherry()))
    assert [name for name, _ in check.skipped] == ["C5", "C5*", "C6"]
    assert "infinite-scale" in check.skipped[0][1]


def test_branching_point_of_deep_pair():
    t = caterpillar()
    s = branching_point(t, (2, 3))
    assert s.node == 6
    assert sorted(map(sorted, s.sectors)) == [[2], [3]]
    assert sorted(s.initial_sector) == [0, 1]


def test_branching_point_at_root_has_empty_initial_sector():
    t = caterpillar()
    s = branching_point(t, (0, 1))
    assert s.node == t.root
    assert s.initial_sector == frozenset()
    assert s.degree == 3


def test_quartet_branching_point():
    s = branching_point(quartet(), (0, 1, 2))
    assert len(s.sectors) == 3
    assert s.initial_sector is None


def test_splitting_count_matches_internal_nodes():
    rng = SplitMix64(53)
    for _ in range(20):
        t = random_rooted_tree(rng, 3 + rng.below(7))
        assert len(splittings(t)) == len(t.children)


def test_extension_of_cherry_is_quartet():
    ext = extend_c_to_d(cherry())
    rel = d_relation(ext)
    assert rel.holds(3, 0, 1, 2)  # D(x0 a; bc) mirrors C(a; bc)
    assert rel.holds(0, 3, 1, 2)


def test_extension_of_star_has_no_nontrivial_relations():
    ext = extend_c_to_d(star3())
    rel = d_relation(ext)
    for quad in permutations(range(4)):
        assert not rel.holds(*quad)


def test_extension_identity_on_random_trees():
    rng = SplitMix64(57)
    for _ in range(25):
        t = random_rooted_tree(rng, 3 + rng.below(8))
        ext = extend_c_to_d(t)  # verifies both displayed identities internally
        assert ext.v == t.v + 1
        assert check_d_axioms(d_relation(ext)).ok


def test_splittings_correspond_under_extension():
    rng = SplitMix64(59)
    for _ in range(20):
        t = random_rooted_tree(rng, 3 + rng.below(7))
        ext = extend_c_to_d(t)
        assert len(splittings(t)) == len(splittings(ext))


def test_ordered_extension_of_plane_caterpillar():
    t = RootedLeafTree(3, ((0, 4), (1, 2)), plane=True)
    assert leaf_order(t) == (0, 1, 2)
    oe = ordered_extension(t)
    assert oe.circular.to_cycle() == (0, 1, 2, 3)
    assert oe.circular.validate()[0]


def test_ordered_extension_rejects_incompatible_order():
    t = RootedLeafTree(3, ((0, 4), (1, 2)), plane=True)
    # putting the outside leaf between the cherry leaves violates the axiom
    with pytest.raises(InputError):
        ordered_extension(t, order=(1, 0, 2))


def test_ordered_extension_needs_plane_structure():
    with pytest.raises(InputError):
        ordered_extension(cherry())


def test_pair_coloring_of_colored_caterpillar():
    t = RootedLeafTree(4, ((0, 5), (1, 6), (2, 3)), colors=(0, 0, 1))
    pc = pair_coloring(t)
    expected = {(0, 1): 0, (0, 2): 0, (0, 3): 0, (1, 2): 0, (1, 3): 0, (2, 3): 1}
    assert dict(pc.colors.items()) == expected


def test_colored_extension_triple_colors():
    t = RootedLeafTree(4, ((0, 5), (1, 6), (2, 3)), colors=(0, 0, 1))
    ext = colored_extension(t)
    tri = triple_coloring(ext)
    for x in (0, 1, 4):
        assert tri.colors.value_for(tuple(sorted((2, 3, x)))) == 1


def test_single_node_tree_is_monochromatic():
    t = RootedLeafTree(3, ((0, 1, 2),), colors=(0,))
    assert set(pair_coloring(t).colors.values) == {0}
    tri = triple_coloring(colored_extension(t))
    assert set(tri.colors.values) == {0}


def test_colored_extension_color_classes_are_even():
    rng = SplitMix64(61)
    for _ in range(20):
        t = random_rooted_tree(rng, 4 + rng.below(6), n_colors=2 + rng.below(2))
        tri = triple_coloring(colored_extension(t))
        for c in range(tri.n):
            mono = SubsetMap.from_function(
                tri.v, 3, lambda s: 1 if tri.colors.value_for(s) == c else 0
            )
            from extensor.hyperext import ColoredHypergraph

            assert is_even_hypergraph(ColoredHypergraph(tri.v, 3, 2, mono))[0]


def test_n_free_on_tree_colorings():
    rng = SplitMix64(63)
    for _ in range(25):
        t = random_rooted_tree(rng, 4 + rng.below(7), n_colors=2)
        assert n_free_check(pair_coloring(t))[0]


def test_explicit_path_is_caught():
    from extensor.hyperext import ColoredHypergraph

    # color 0 forms the consecutive path 0-1-2-3 on four vertices
    edges = {(0, 1), (1, 2), (2, 3)}
    table = SubsetMap.from_function(4, 2, lambda s: 0 if s in edges else 1)
    g = ColoredHypergraph(4, 2, 2, table)
    ok, witness = n_free_check(g)
    assert not ok
    assert witness == ((0, 1, 2, 3), 0)


def test_monochromatic_complete_graph_is_n_free():
    from extensor.hyperext import ColoredHypergraph

    g = ColoredHypergraph(5, 2, 1, SubsetMap.from_function(5, 2, lambda s: 0))
    assert n_free_check(g)[0]


def test_leveling_of_ranked_caterpillar():
    t = RootedLeafTree(4, ((0, 5), (1, 6), (2, 3)), ranks=(1, 2, 3))
    lev = leveled_pairs_preorder(t)
    assert lev.holds((0, 1), (2, 3))
    assert not lev.holds((2, 3), (0, 1))


def test_leveling_rejects_nonmonotone_ranks():
    t = RootedLeafTree(4, ((0, 5), (1, 6), (2, 3)), ranks=(2, 2, 3))
    with pytest.raises(InputError):
        leveled_pairs_preorder(t)


def test_spine_enumeration_is_monotonic():
    t = caterpillar()
    rel = c_relation(t)
    assert c_monotonic_check((0, 1, 2, 3), rel)
    assert not c_monotonic_check((3, 2, 1, 0), rel)


def test_d_monotonic_on_quartet_extension():
    ext = extend_c_to_d(caterpillar())
    rel = d_relation(ext)
    assert d_monotonic_check((0, 1, 2, 3), rel)


def test_monotonic_checks_reject_repeats():
    rel = c_relation(caterpillar())
    with pytest.raises(InputError):
        c_monotonic_check((0, 0, 1), rel)


def test_monotonic_isomorphism_on_random_leveled_trees():
    rng = SplitMix64(67)
    for _ in range(100):
        t = random_rooted_tree(rng, 3 + rng.below(8), ranked=True)
        rel = c_relation(t)
        lev = leveled_pairs_preorder(t)
        ok, witness = monotonic_sequences_isomorphic(rel, lev)
        assert ok, witness


def test_obstruction_fixture_shape():
    t = obstruction_fixture()
    assert t.v == 6
    assert t.ranks == (0, 1, 2, 1, 2)
    assert check_c_axioms(c_relation(t)).ok


def test_obstruction_demo_assertions():
    rep = leveled_obstruction_demo()
    assert rep.monotonic_sequences_hold
    assert rep.map_preserves_c
    assert rep.map_breaks_leveling
    assert rep.equal_length_isomorphic
    assert rep.sequences == ((0, 1, 6, 3, 5), (0, 2, 6, 4, 5))


def test_monotonic_sequence_enumeration():
    rel = c_relation(caterpillar())
    seqs = c_monotonic_sequences(rel, 4)
    assert (0, 1, 2, 3) in seqs
    assert all(len(set(s)) == 4 for s in seqs)


def test_tree_validation():
    with pytest.raises(InputError):
        RootedLeafTree(3, ((0,),))  # unary internal node
    with pytest.raises(InputError):
        RootedLeafTree(3, ((0, 1), (1, 2)))  # leaf with two parents
    with pytest.raises(InputError):
        UnrootedLeafTree(3, ((0, 1),))  # degree-2 internal node


def test_regular_tree_generation():
    from extensor.generate import random_regular_tree

    rng = SplitMix64(69)
    t = random_regular_tree(rng, 9, 3)
    assert all(len(kids) == 3 for kids in t.children)
    assert check_c_axioms(c_relation(t)).ok
    with pytest.raises(InputError):
        random_regular_tree(rng, 8, 3)  # 8 is not 3 + 2k


def test_induced_tree_restricts_relation():
    from extensor.structures import induced_substructure

    rng = SplitMix64(77)
    for _ in range(10):
        t = random_rooted_tree(rng, 6 + rng.below(4))
        keep = (0, 2, 3, 5)
        sub = induced_substructure(t, keep)
        relabel = {x: i for i, x in enumerate(keep)}
        big, small = c_relation(t), c_relation(sub)
        for a in keep:
            for b in keep:
                for c in keep:
                    assert big.holds(a, b, c) == small.holds(
                        relabel[a], relabel[b], relabel[c]
                    )


def test_induced_unrooted_tree_restricts_relation():
    from extensor.structures import induced_substructure

    rng = SplitMix64(81)
    for _ in range(10):
        t = random_unrooted_tree(rng, 6 + rng.below(4))
        keep = (0, 1, 3, 4)
        sub = induced_substructure(t, keep)
        relabel = {x: i for i, x in enumerate(keep)}
        big, small = d_relation(t), d_relation(sub)
        for quad in permutations(keep):
            assert big.holds(*quad) == small.holds(*(relabel[x] for x in quad))
