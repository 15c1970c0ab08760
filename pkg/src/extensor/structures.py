"""Core finite-structure plumbing: subset tables and the uniform relational view.

Every specialized structure in this package (colored hypergraphs, orientations,
hypertournaments, orders, equivalence relations, leaf trees) flattens to a
:class:`RelationalStructure`, which is the only shape the automorphism engine
understands.  Subset-indexed data lives in :class:`SubsetMap`, a total table
keyed by the colex rank of each k-subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import singledispatch
from math import comb

from .errors import InputError

# ---------------------------------------------------------------------------
# k-subset combinatorics (combinatorial number system, colex order)
# ---------------------------------------------------------------------------


def _check_subset(subset, k=None, v=None):
    if k is not None and len(subset) != k:
        raise InputError(f"expected a {k}-subset, got {subset!r}")
    for i, x in enumerate(subset):
        if not isinstance(x, int) or x < 0:
            raise InputError(f"subset entries must be natural numbers: {subset!r}")
        if i and subset[i - 1] >= x:
            raise InputError(f"subset must be strictly increasing: {subset!r}")
        if v is not None and x >= v:
            raise InputError(f"entry {x} out of range for v={v}")


def rank_subset(subset, v=None):
    """Colex rank of a strictly increasing tuple of vertex indices."""
    _check_subset(subset, v=v)
    return sum(comb(x, i + 1) for i, x in enumerate(subset))


def unrank_subset(rank, k, v):
    """Inverse of :func:`rank_subset` over the k-subsets of {0..v-1}."""
    if k < 0 or k > v:
        raise InputError(f"no {k}-subsets of a {v}-set")
    if not 0 <= rank < comb(v, k):
        raise InputError(f"rank {rank} out of range 0..{comb(v, k) - 1}")
    out = []
    for i in range(k, 0, -1):
        x = i - 1
        while comb(x + 1, i) <= rank:
            x += 1
        out.append(x)
        rank -= comb(x, i)
    out.reverse()
    return tuple(out)


def subsets_colex(v, k):
    """Yield all k-subsets of {0..v-1} in colex order."""
    if k == 0:
        yield ()
        return
    for top in range(k - 1, v):
        for rest in subsets_colex(top, k - 1):
            yield rest + (top,)



# ---------------------------------------------------------------------------
# SubsetMap
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubsetMap:
    """Total map from the k-subsets of {0..v-1} to values, stored in colex order."""

    v: int
    k: int
    values: tuple

    def __post_init__(self):
        if not 1 <= self.k <= self.v:
            raise InputError(f"need 1 <= k <= v, got k={self.k}, v={self.v}")
        if len(self.values) != comb(self.v, self.k):
            raise InputError(
                f"table must have C({self.v},{self.k})={comb(self.v, self.k)} "
                f"entries, got {len(self.values)}"
            )

    @classmethod
    def from_function(cls, v, k, fn):
        return cls(v, k, tuple(fn(s) for s in subsets_colex(v, k)))

    def value_for(self, subset):
        _check_subset(tuple(subset), k=self.k, v=self.v)
        return self.values[rank_subset(tuple(subset))]

    def items(self):
        return zip(subsets_colex(self.v, self.k), self.values)

    def replace(self, subset, value):
        """Functional update of a single entry."""
        _check_subset(tuple(subset), k=self.k, v=self.v)
        r = rank_subset(tuple(subset))
        vals = list(self.values)
        vals[r] = value
        return SubsetMap(self.v, self.k, tuple(vals))


# ---------------------------------------------------------------------------
# RelationalStructure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RelationalStructure:
    """Vertex count plus named relations, each a set of distinct-entry tuples."""

    v: int
    relations: tuple  # of (name, arity, frozenset of tuples)

    def __post_init__(self):
        seen = set()
        for name, arity, tuples in self.relations:
            if name in seen:
                raise InputError(f"duplicate relation name {name!r}")
            seen.add(name)
            for t in tuples:
                if len(t) != arity:
                    raise InputError(f"tuple {t} does not match arity {arity} of {name}")
                if len(set(t)) != len(t):
                    raise InputError(f"tuple {t} in {name} has repeated entries")
                if any(x < 0 or x >= self.v for x in t):
                    raise InputError(f"tuple {t} in {name} out of range for v={self.v}")

    def relation(self, name):
        for n, arity, tuples in self.relations:
            if n == name:
                return arity, tuples
        raise InputError(f"no relation named {name!r}")


def make_structure(v, relations):
    """Build a RelationalStructure from (name, arity, iterable-of-tuples) triples."""
    rels = tuple(
        (name, arity, frozenset(map(tuple, tuples))) for name, arity, tuples in relations
    )
    return RelationalStructure(v, rels)


def merge_structures(a: RelationalStructure, b: RelationalStructure) -> RelationalStructure:
    """Union of relation lists over a common vertex set; names must not clash."""
    if a.v != b.v:
        raise InputError(f"vertex counts differ: {a.v} vs {b.v}")
    names_a = {name for name, _, _ in a.relations}
    rels = list(a.relations)
    for name, arity, tuples in b.relations:
        if name in names_a:
            name = "m." + name
        rels.append((name, arity, tuples))
    return RelationalStructure(a.v, tuple(rels))


# ---------------------------------------------------------------------------
# Shared views: flatten / apply_permutation / induced_substructure.
#
# Each specialized structure module registers its own implementations; a
# permutation is an automorphism of flatten(s) exactly when it preserves s.
# ---------------------------------------------------------------------------


@singledispatch
def flatten(s) -> RelationalStructure:
    """Uniform relational view of a specialized structure."""
    raise InputError(f"no flatten view registered for {type(s).__name__}")


@flatten.register
def _(s: RelationalStructure) -> RelationalStructure:
    return s


@singledispatch
def apply_permutation(s, perm):
    """Relabel vertices of a structure by a permutation (images tuple)."""
    raise InputError(f"no apply_permutation registered for {type(s).__name__}")


@apply_permutation.register
def _(s: RelationalStructure, perm) -> RelationalStructure:
    _check_perm(perm, s.v)
    rels = tuple(
        (name, arity, frozenset(tuple(perm[x] for x in t) for t in tuples))
        for name, arity, tuples in s.relations
    )
    return RelationalStructure(s.v, rels)


@singledispatch
def induced_substructure(s, vertices):
    """Restrict to a vertex subset, re-densifying indices.

    The index map is sorted(vertices)[i] -> i; callers needing it can rebuild
    it from the sorted subset.
    """
    raise InputError(f"no induced_substructure registered for {type(s).__name__}")


@induced_substructure.register
def _(s: RelationalStructure, vertices) -> RelationalStructure:
    sub = sorted(set(vertices))
    if any(x < 0 or x >= s.v for x in sub):
        raise InputError(f"vertices {vertices!r} out of range for v={s.v}")
    index = {x: i for i, x in enumerate(sub)}
    keep = set(sub)
    rels = tuple(
        (
            name,
            arity,
            frozenset(
                tuple(index[x] for x in t) for t in tuples if keep.issuperset(t)
            ),
        )
        for name, arity, tuples in s.relations
    )
    return RelationalStructure(len(sub), rels)


def _check_perm(perm, v):
    if len(perm) != v or sorted(perm) != list(range(v)):
        raise InputError(f"not a permutation of 0..{v - 1}: {perm!r}")
