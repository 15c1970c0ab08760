"""Hypertournaments, linear and circular orders, and the k! interpretation.

A k-hypertournament fixes one ordering per k-subset.  Against a background
linear order it is interdefinable with an edge-colored k-hypergraph on k!
colors (one per permutation), which routes the extension question through the
palette dichotomy: k! is a power of two only for k = 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import InputError
from .hyperext import ColoredHypergraph
from .palette import SearchOutcome, search_palette
from .perm import automorphism_group, is_transitive as group_is_transitive
from .structures import (
    RelationalStructure,
    SubsetMap,
    apply_permutation,
    flatten,
    induced_substructure,
)


@dataclass(frozen=True)
class Hypertournament:
    """One distinguished ordering per k-subset."""

    v: int
    k: int
    orderings: SubsetMap

    def __post_init__(self):
        if self.k < 2:
            raise InputError(f"hypertournament arity must be >= 2, got k={self.k}")
        if self.orderings.v != self.v or self.orderings.k != self.k:
            raise InputError("ordering table does not match v and k")
        for s, t in self.orderings.items():
            if tuple(sorted(t)) != s:
                raise InputError(f"ordering {t!r} is not an arrangement of {s}")

    def ordering_of(self, subset):
        return self.orderings.value_for(subset)


@flatten.register
def _(t: Hypertournament) -> RelationalStructure:
    tuples = frozenset(t.orderings.values)
    return RelationalStructure(t.v, (("T", t.k, tuples),))


@apply_permutation.register
def _(t: Hypertournament, perm) -> Hypertournament:
    inv = [0] * t.v
    for i, x in enumerate(perm):
        inv[x] = i

    def ordering(subset):
        pre = tuple(sorted(inv[x] for x in subset))
        return tuple(perm[x] for x in t.orderings.value_for(pre))

    table = SubsetMap.from_function(t.v, t.k, ordering)
    return Hypertournament(t.v, t.k, table)


@induced_substructure.register
def _(t: Hypertournament, vertices) -> Hypertournament:
    sub = sorted(set(vertices))
    if len(sub) < t.k:
        raise InputError(f"need at least k={t.k} vertices, got {len(sub)}")
    index = {x: i for i, x in enumerate(sub)}
    table = SubsetMap.from_function(
        len(sub),
        t.k,
        lambda s: tuple(index[x] for x in t.orderings.value_for(tuple(sub[i] for i in s))),
    )
    return Hypertournament(len(sub), t.k, table)


# -- linear and circular orders --------------------------------------------------


@dataclass(frozen=True)
class LinearOrder:
    """Vertices listed from least to greatest."""

    order: tuple

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise InputError(f"not an arrangement of 0..{len(self.order) - 1}")

    @property
    def v(self):
        return len(self.order)

    @classmethod
    def identity(cls, v):
        return cls(tuple(range(v)))

    def position(self, x):
        return self.order.index(x)

    def less(self, a, b):
        return self.position(a) < self.position(b)


@flatten.register
def _(o: LinearOrder) -> RelationalStructure:
    pos = {x: i for i, x in enumerate(o.order)}
    tuples = frozenset(
        (a, b) for a in range(o.v) for b in range(o.v) if a != b and pos[a] < pos[b]
    )
    return RelationalStructure(o.v, (("<", 2, tuples),))


@apply_permutation.register
def _(o: LinearOrder, perm) -> LinearOrder:
    return LinearOrder(tuple(perm[x] for x in o.order))


@induced_substructure.register
def _(o: LinearOrder, vertices) -> LinearOrder:
    sub = sorted(set(vertices))
    index = {x: i for i, x in enumerate(sub)}
    return LinearOrder(tuple(index[x] for x in o.order if x in index))


@dataclass(frozen=True)
class CircularOrder:
    """Ternary cyclic-order relation stored as its full triple set."""

    v: int
    triples: frozenset
    ext: int | None = field(default=None, compare=False)

    @classmethod
    def from_cycle(cls, cycle, ext=None):
        cycle = tuple(cycle)
        v = len(cycle)
        if sorted(cycle) != list(range(v)):
            raise InputError(f"cycle must arrange 0..{v - 1}, got {cycle!r}")
        if v < 3:
            raise InputError("a circular order needs at least 3 points")
        pos = {x: i for i, x in enumerate(cycle)}
        triples = set()
        for x, y, z in permutations(range(v), 3):
            dy = (pos[y] - pos[x]) % v
            dz = (pos[z] - pos[x]) % v
            if dy < dz:
                triples.add((x, y, z))
        return cls(v, frozenset(triples), ext=ext)

    def holds(self, x, y, z):
        return (x, y, z) in self.triples

    def to_cycle(self):
        """Canonical arrangement starting at vertex 0."""
        others = [x for x in range(self.v) if x != 0]
        position = {
            y: sum(1 for z in others if z != y and self.holds(0, z, y)) for y in others
        }
        others.sort(key=position.__getitem__)
        return (0, *others)

    def validate(self):
        """Exhaustive check of cyclic closure, antisymmetry, and cut transitivity."""
        for x, y, z in permutations(range(self.v), 3):
            h = self.holds(x, y, z)
            if h != self.holds(y, z, x):
                return False, ("closure", (x, y, z))
            if h == self.holds(x, z, y):
                return False, ("antisymmetry", (x, y, z))
        for x in range(self.v):
            others = [y for y in range(self.v) if y != x]
            for a in others:
                for b in others:
                    for c in others:
                        if len({a, b, c}) == 3:
                            if self.holds(x, a, b) and self.holds(x, b, c):
                                if not self.holds(x, a, c):
                                    return False, ("cut transitivity", (x, a, b, c))
        return True, None


@flatten.register
def _(c: CircularOrder) -> RelationalStructure:
    return RelationalStructure(c.v, (("C", 3, c.triples),))


@apply_permutation.register
def _(c: CircularOrder, perm) -> CircularOrder:
    triples = frozenset(tuple(perm[x] for x in t) for t in c.triples)
    return CircularOrder(c.v, triples)


@induced_substructure.register
def _(c: CircularOrder, vertices) -> CircularOrder:
    sub = sorted(set(vertices))
    if len(sub) < 3:
        raise InputError("a circular order needs at least 3 points")
    index = {x: i for i, x in enumerate(sub)}
    keep = set(sub)
    triples = frozenset(
        tuple(index[x] for x in t) for t in c.triples if keep.issuperset(t)
    )
    return CircularOrder(len(sub), triples)


def circular_from_linear(o: LinearOrder) -> CircularOrder:
    """One-point extension of a linear order to a circular order.

    The new point closes the line into a cycle: gamma(a, b, x0) iff a < b, and
    interior triples are the cyclic rotations of ascending ones.
    """
    if o.v < 2:
        raise InputError(f"need at least 2 points, got v={o.v}")
    return CircularOrder.from_cycle(o.order + (o.v,), ext=o.v)


# -- the k! colored-hypergraph interpretation -------------------------------------


def _perm_rank(p):
    """Lexicographic rank of a permutation of 0..k-1 in one-line notation."""
    k = len(p)
    rank = 0
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    rest = list(range(k))
    for i in range(k):
        fact //= k - i
        idx = rest.index(p[i])
        rank += idx * fact
        rest.pop(idx)
    return rank


def _perm_unrank(rank, k):
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    rest = list(range(k))
    out = []
    for i in range(k):
        fact //= k - i
        idx, rank = divmod(rank, fact)
        out.append(rest.pop(idx))
    return tuple(out)


def interpret_colored_graph(
    t: Hypertournament, order: LinearOrder | None = None
) -> ColoredHypergraph:
    """Color each k-subset by the permutation carrying its descending order to
    its tournament order.

    Colors are indexed by permutations of 0..k-1 in lexicographic one-line
    order.  Given the same background order the interpretation is invertible.
    """
    if order is None:
        order = LinearOrder.identity(t.v)
    if order.v != t.v:
        raise InputError(f"order is on {order.v} points, tournament on {t.v}")
    pos = {x: i for i, x in enumerate(order.order)}
    fact = 1
    for i in range(2, t.k + 1):
        fact *= i

    def color(subset):
        descending = tuple(sorted(subset, key=lambda x: -pos[x]))
        chosen = t.orderings.value_for(subset)
        # p moves position i to position p[i]: chosen[p[i]] = descending[i]
        p = [0] * t.k
        for i, x in enumerate(descending):
            p[i] = chosen.index(x)
        return _perm_rank(tuple(p))

    table = SubsetMap.from_function(t.v, t.k, color)
    return ColoredHypergraph(t.v, t.k, fact, table)


def tournament_from_colored(
    g: ColoredHypergraph, order: LinearOrder | None = None
) -> Hypertournament:
    """Inverse of the interpretation, given the same background order."""
    if order is None:
        order = LinearOrder.identity(g.v)
    fact = 1
    for i in range(2, g.k + 1):
        fact *= i
    if g.n != fact:
        raise InputError(f"expected {fact} colors for arity {g.k}, got {g.n}")
    pos = {x: i for i, x in enumerate(order.order)}

    def ordering(subset):
        descending = tuple(sorted(subset, key=lambda x: -pos[x]))
        p = _perm_unrank(g.colors.value_for(subset), g.k)
        chosen = [0] * g.k
        for i, x in enumerate(descending):
            chosen[p[i]] = x
        return tuple(chosen)

    table = SubsetMap.from_function(g.v, g.k, ordering)
    return Hypertournament(g.v, g.k, table)


# -- extension existence reports ---------------------------------------------------


@dataclass(frozen=True)
class HypertournamentReport:
    k: int
    exists: bool
    factorial: int
    factorial_is_power_of_two: bool
    palette_outcome: SearchOutcome | None
    note: str


def nonexistence_report(k, budget=None) -> HypertournamentReport:
    """Existence verdict for one-point transitive extensions of k-hypertournaments.

    k = 2 delegates to the even-orientation construction; k = 3 attaches the
    exhaustive 6-color palette refutation; larger k combine the arithmetic
    fact that k! is not a power of two with the k = 3 search evidence.
    """
    if k < 2:
        raise InputError(f"need k >= 2, got {k}")
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    power = fact & (fact - 1) == 0
    if k == 2:
        return HypertournamentReport(
            k=2,
            exists=True,
            factorial=2,
            factorial_is_power_of_two=True,
            palette_outcome=None,
            note="tournaments are 2-orientations; the even 3-orientation extends them",
        )
    outcome = search_palette(6, node_budget=budget)
    note = (
        "3! = 6 colors admit no palette (exhausted search)"
        if k == 3
        else f"{k}! = {fact} is not a power of two; 6-color search evidence attached"
    )
    return HypertournamentReport(
        k=k,
        exists=False,
        factorial=fact,
        factorial_is_power_of_two=power,
        palette_outcome=outcome,
        note=note,
    )


@dataclass(frozen=True)
class RegularityReport:
    per_subset: tuple  # (subset, order, regular)
    all_regular: bool


def check_regular_condition(t: Hypertournament, t_ext, x0=None, bound=10) -> RegularityReport:
    """Necessary condition on extension candidates: every (k+1)-subset must
    carry a regular induced automorphism group of order k+1.

    Any failing subset refutes the candidate.
    """
    s = flatten(t_ext)
    if s.v != t.v + 1:
        raise InputError(f"candidate must add one vertex: {t.v} -> {s.v}")
    if x0 is None:
        x0 = t.v
    if x0 != t.v:
        raise InputError(f"extension point must be {t.v}, got {x0}")
    if s.v > bound:
        raise InputError(f"candidate on {s.v} points exceeds bound {bound}")
    k = t.k
    rows = []
    ok = True
    for subset in combinations(range(s.v), k + 1):
        local = automorphism_group(induced_substructure(s, subset), bound=bound)
        regular = local.order == k + 1 and group_is_transitive(local)
        rows.append((subset, local.order, regular))
        ok = ok and regular
    return RegularityReport(tuple(rows), ok)
