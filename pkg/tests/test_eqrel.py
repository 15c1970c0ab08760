"""Equivalence relations and the exhaustive extension refutation."""

import pytest

from extensor.eqrel import (
    EquivalenceRelation,
    forced_extension,
    refute_extension,
    singleton_type_report,
)
from extensor.errors import InputError
from extensor.hyperext import hyperedges
from extensor.perm import verify_one_point_extension


def test_forced_extension_two_pairs():
    e = EquivalenceRelation.from_classes(4, [{0, 1}, {2, 3}])
    assert set(hyperedges(forced_extension(e))) == {(0, 1, 4), (2, 3, 4)}


def test_forced_extension_single_triple_class():
    e = EquivalenceRelation.from_classes(3, [{0, 1, 2}])
    ext = forced_extension(e)
    assert (0, 1, 2) in hyperedges(ext)


def test_forced_extension_interior_triples():
    e = EquivalenceRelation.from_classes(6, [{0, 1, 2}, {3, 4, 5}])
    interior = [s for s in hyperedges(forced_extension(e)) if 6 not in s]
    assert interior == [(0, 1, 2), (3, 4, 5)]


def test_partition_validation():
    with pytest.raises(InputError):
        EquivalenceRelation.from_classes(4, [{0, 1}, {1, 2, 3}])
    with pytest.raises(InputError):
        EquivalenceRelation.from_classes(4, [{0, 1}])


def test_singleton_type_split_on_forced_extension():
    e = EquivalenceRelation.from_classes(4, [{0, 1}, {2, 3}])
    rep = singleton_type_report(e, forced_extension(e), 0)
    assert rep.vertex_is_equivalence and rep.x0_is_equivalence
    assert rep.vertex_singletons > 0 and rep.x0_singletons == 0
    assert rep.type_split


def test_singleton_report_never_splits_against_itself():
    e = EquivalenceRelation.from_classes(4, [{0, 1}, {2, 3}])
    rep = singleton_type_report(e, forced_extension(e), 4)
    assert not rep.type_split


def test_transitivity_failure_flagged():
    # hand-made candidate whose pair relation at vertex 4 is not transitive
    from extensor.hyperext import plain_hypergraph

    e = EquivalenceRelation.from_classes(4, [{0, 1}, {2, 3}])
    cand = plain_hypergraph(5, 3, [(0, 1, 4), (2, 3, 4), (1, 2, 4)])
    rep = singleton_type_report(e, cand, 0)
    assert not rep.x0_is_equivalence
    assert rep.x0_witness is not None


def test_forced_extension_fails_transitivity():
    for v, blocks in ((4, [{0, 1}, {2, 3}]), (6, [{0, 1, 2}, {3, 4, 5}])):
        e = EquivalenceRelation.from_classes(v, blocks)
        rep = verify_one_point_extension(e, forced_extension(e), bound=8)
        assert rep.is_one_point_extension
        assert not rep.is_transitive


def test_refutation_two_two():
    e = EquivalenceRelation.from_classes(4, [{0, 1}, {2, 3}])
    cert = refute_extension(e)
    assert cert.candidates_examined == 16
    assert cert.interior_triples == 4
    assert cert.passed == 0
    assert cert.failure_counts["consistency"] == 15
    assert len(cert.survivors) == 1
    assert cert.survivors[0].matches_forced
    assert cert.survivors[0].verdict == "type-split"
    assert cert.shapes_exercised == ("two-same-one-other",)


def test_refutation_three_three():
    e = EquivalenceRelation.from_classes(6, [{0, 1, 2}, {3, 4, 5}])
    cert = refute_extension(e)
    assert cert.candidates_examined == 2**20
    assert cert.passed == 0
    # the completion-consistency prefilter leaves exactly the forced candidate
    assert [s.matches_forced for s in cert.survivors] == [True]
    assert "all-same-class" in cert.shapes_exercised


def test_refutation_three_pairs():
    e = EquivalenceRelation.from_classes(6, [{0, 1}, {2, 3}, {4, 5}])
    cert = refute_extension(e)
    assert cert.passed == 0
    assert "all-distinct-classes" in cert.shapes_exercised
    # consistency alone does not force the interior here; the group check
    # disposes of the extra survivors
    extra = [s for s in cert.survivors if not s.matches_forced]
    assert extra
    assert all(s.verdict == "forcing" for s in extra)
    assert all(
        not (s.report.is_one_point_extension and s.report.is_transitive)
        for s in cert.survivors
    )


def test_refutation_consistency_witness_shape():
    e = EquivalenceRelation.from_classes(4, [{0, 1}, {2, 3}])
    cert = refute_extension(e)
    bits, quad, count = cert.first_consistency_witness
    assert count in (2, 3)
    assert len(quad) == 4


def test_interior_cap():
    e = EquivalenceRelation.from_classes(8, [{0, 1, 2, 3}, {4, 5, 6, 7}])
    with pytest.raises(InputError):
        refute_extension(e)
