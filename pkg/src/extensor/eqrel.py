"""Equivalence relations and the exhaustive refutation of their extensions.

The candidate space for a one-point extension is pinned down to 3-hypergraphs
whose boundary triples mirror the relation, leaving only interior triples
free.  Consistency of every derived pair relation (the cheap prefilter) is a
popcount condition on 4-subsets: each must carry 0, 1 or 4 hyperedges.  The
few survivors fall to the singleton-type split and the group check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import InputError
from .hyperext import ColoredHypergraph
from .perm import ExtensionReport, verify_one_point_extension
from .structures import (
    RelationalStructure,
    SubsetMap,
    apply_permutation,
    flatten,
    induced_substructure,
    subsets_colex,
)


@dataclass(frozen=True)
class EquivalenceRelation:
    v: int
    classes: tuple  # of frozensets, sorted by least element

    def __post_init__(self):
        seen = set()
        for block in self.classes:
            if not block:
                raise InputError("empty class")
            if seen & block:
                raise InputError("classes overlap")
            seen |= block
        if seen != set(range(self.v)):
            raise InputError(f"classes do not cover 0..{self.v - 1}")

    @classmethod
    def from_classes(cls, v, blocks):
        canon = tuple(sorted((frozenset(b) for b in blocks), key=min))
        return cls(v, canon)

    def related(self, a, b):
        return any(a in block and b in block for block in self.classes)

    def class_of(self, a):
        return next(block for block in self.classes if a in block)


@flatten.register
def _(e: EquivalenceRelation) -> RelationalStructure:
    tuples = frozenset(
        (a, b)
        for block in e.classes
        for a in block
        for b in block
        if a != b
    )
    return RelationalStructure(e.v, (("E", 2, tuples),))


@apply_permutation.register
def _(e: EquivalenceRelation, perm) -> EquivalenceRelation:
    return EquivalenceRelation.from_classes(
        e.v, [{perm[x] for x in block} for block in e.classes]
    )


@induced_substructure.register
def _(e: EquivalenceRelation, vertices) -> EquivalenceRelation:
    sub = sorted(set(vertices))
    index = {x: i for i, x in enumerate(sub)}
    blocks = [
        {index[x] for x in block if x in index}
        for block in e.classes
    ]
    return EquivalenceRelation.from_classes(len(sub), [b for b in blocks if b])


# -- the forced candidate ----------------------------------------------------


def forced_extension(e: EquivalenceRelation) -> ColoredHypergraph:
    """The only interior assignment compatible with consistency of the pair
    relations: a triple is a hyperedge iff its members are pairwise related
    (boundary triples through x0 mirror the relation itself)."""
    x0 = e.v

    def color(triple):
        if triple[-1] == x0:
            return 1 if e.related(triple[0], triple[1]) else 0
        a, b, c = triple
        return 1 if e.related(a, b) and e.related(b, c) and e.related(a, c) else 0

    table = SubsetMap.from_function(e.v + 1, 3, color)
    return ColoredHypergraph(e.v + 1, 3, 2, table, ext=x0)


# -- derived pair relations and the type split --------------------------------


def _pair_relation(h: ColoredHypergraph, c):
    """The relation "b ~ d iff {b, c, d} is a hyperedge" on the other vertices."""
    others = [x for x in range(h.v) if x != c]
    related = {
        (b, d)
        for b, d in combinations(others, 2)
        if h.colors.value_for(tuple(sorted((b, c, d)))) == 1
    }
    return others, related


def _equivalence_failure(others, related):
    """Transitivity witness (b, c, d) with b~c, c~d but not b~d, or None."""
    adj = {x: set() for x in others}
    for b, d in related:
        adj[b].add(d)
        adj[d].add(b)
    for c in others:
        for b in adj[c]:
            for d in adj[c]:
                if b < d and d not in adj[b]:
                    return (b, c, d)
    return None


@dataclass(frozen=True)
class SingletonTypeReport:
    vertex: int
    vertex_is_equivalence: bool
    vertex_witness: tuple | None
    vertex_singletons: int
    x0: int
    x0_is_equivalence: bool
    x0_witness: tuple | None
    x0_singletons: int
    type_split: bool


def singleton_type_report(
    e: EquivalenceRelation, h: ColoredHypergraph, a
) -> SingletonTypeReport:
    """Compare the derived pair relation at a vertex with the one at x0.

    A transitive extension would make all vertices interchangeable; a vertex
    whose pair relation has singleton classes while the one at x0 has none (or
    vice versa) is a type split refuting transitivity.
    """
    if h.v != e.v + 1 or h.k != 3 or h.n != 2:
        raise InputError("candidate must be a plain 3-hypergraph on v+1 vertices")
    x0 = e.v
    if not 0 <= a <= x0:
        raise InputError(f"vertex {a} out of range")

    def side(c):
        others, related = _pair_relation(h, c)
        witness = _equivalence_failure(others, related)
        partnered = {x for pair in related for x in pair}
        singletons = sum(1 for x in others if x not in partnered)
        return witness is None, witness, singletons

    a_ok, a_wit, a_single = side(a)
    x_ok, x_wit, x_single = side(x0)
    split = (
        a != x0
        and a_ok
        and x_ok
        and (a_single > 0) != (x_single > 0)
    )
    return SingletonTypeReport(
        vertex=a,
        vertex_is_equivalence=a_ok,
        vertex_witness=a_wit,
        vertex_singletons=a_single,
        x0=x0,
        x0_is_equivalence=x_ok,
        x0_witness=x_wit,
        x0_singletons=x_single,
        type_split=split,
    )


# -- exhaustive refutation ------------------------------------------------------


@dataclass(frozen=True)
class SurvivorVerdict:
    interior_bits: int
    matches_forced: bool
    type_split: bool
    report: ExtensionReport
    verdict: str  # "forcing" | "type-split" | "group" | "PASSED"


@dataclass(frozen=True)
class RefutationCertificate:
    v: int
    classes: tuple
    interior_triples: int
    candidates_examined: int
    failure_counts: dict
    first_consistency_witness: tuple | None  # (interior_bits, quad, edge_count)
    survivors: tuple
    shapes_exercised: tuple
    passed: int


def _interior_shapes(e: EquivalenceRelation):
    shapes = set()
    if len(e.classes) >= 2 and any(len(b) >= 2 for b in e.classes):
        shapes.add("two-same-one-other")
    if any(len(b) >= 3 for b in e.classes):
        shapes.add("all-same-class")
    if len(e.classes) >= 3:
        shapes.add("all-distinct-classes")
    return tuple(sorted(shapes))


def refute_extension(e: EquivalenceRelation, bound=8, max_interior=24) -> RefutationCertificate:
    """Enumerate every boundary-respecting 3-hypergraph on v+1 vertices and
    certify that none is a transitive one-point extension.

    Interior triples occupy the low bits of a colex-indexed triple bitmask, so
    the candidate space is a contiguous integer range filtered vectorially by
    the 0/1/4 popcount condition; survivors get the full treatment.
    """
    v = e.v
    x0 = v
    n_interior = comb(v, 3)
    if n_interior > max_interior:
        raise InputError(
            f"{n_interior} interior triples exceed the cap of {max_interior}"
        )
    if v + 1 > bound + 1:
        raise InputError(f"v+1={v + 1} exceeds the automorphism bound {bound}")

    all_triples = list(subsets_colex(v + 1, 3))
    n_triples = len(all_triples)
    # colex puts the triples avoiding the top vertex first
    assert all(x0 not in t for t in all_triples[:n_interior])
    rank_of = {t: i for i, t in enumerate(all_triples)}

    boundary = 0
    for i, t in enumerate(all_triples[n_interior:], start=n_interior):
        if e.related(t[0], t[1]):
            boundary |= 1 << i

    total = 1 << n_interior
    cands = np.arange(total, dtype=np.uint64) | np.uint64(boundary)

    ok = np.ones(total, dtype=bool)
    quads = list(combinations(range(v + 1), 4))
    for quad in quads:
        bits = [rank_of[t] for t in combinations(quad, 3)]
        cnt = sum(
            ((cands >> np.uint64(b)) & np.uint64(1)).astype(np.uint8) for b in bits
        )
        ok &= (cnt == 0) | (cnt == 1) | (cnt == 4)

    survivors_idx = np.nonzero(ok)[0]
    consistency_failed = total - len(survivors_idx)

    first_witness = None
    fails = np.nonzero(~ok)[0]
    if len(fails):
        bits_val = int(fails[0])
        mask = bits_val | boundary
        for quad in quads:
            cnt = sum(
                1 for t in combinations(quad, 3) if (mask >> rank_of[t]) & 1
            )
            if cnt not in (0, 1, 4):
                first_witness = (bits_val, quad, cnt)
                break

    forced = forced_extension(e)
    forced_interior = 0
    for i, t in enumerate(all_triples[:n_interior]):
        if forced.colors.value_for(t) == 1:
            forced_interior |= 1 << i

    def candidate_from(bits_val):
        mask = bits_val | boundary

        def color(triple):
            return (mask >> rank_of[triple]) & 1

        return ColoredHypergraph(
            v + 1, 3, 2, SubsetMap.from_function(v + 1, 3, color), ext=x0
        )

    counts = {
        "consistency": int(consistency_failed),
        "forcing": 0,
        "type-split": 0,
        "group": 0,
    }
    survivors = []
    passed = 0
    for idx in survivors_idx:
        bits_val = int(idx)
        cand = candidate_from(bits_val)
        matches = bits_val == forced_interior
        split = any(
            singleton_type_report(e, cand, a).type_split for a in range(v)
        )
        report = verify_one_point_extension(e, cand, x0, bound=bound)
        refuted = not (report.is_one_point_extension and report.is_transitive)
        if not refuted:
            verdict = "PASSED"
            passed += 1
        elif not matches:
            verdict = "forcing"
        elif split:
            verdict = "type-split"
        else:
            verdict = "group"
        if verdict in counts:
            counts[verdict] += 1
        survivors.append(
            SurvivorVerdict(
                interior_bits=bits_val,
                matches_forced=matches,
                type_split=split,
                report=report,
                verdict=verdict,
            )
        )

    return RefutationCertificate(
        v=v,
        classes=tuple(sorted(map(tuple, map(sorted, e.classes)))),
        interior_triples=n_interior,
        candidates_examined=total,
        failure_counts=counts,
        first_consistency_witness=first_witness,
        survivors=tuple(survivors),
        shapes_exercised=_interior_shapes(e),
        passed=passed,
    )
