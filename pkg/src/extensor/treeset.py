"""Leaf-labeled trees as C-sets and D-sets, with their three expansions.

Rooted trees induce the ternary relation C(a; bc) = "the path from a to the
root avoids the path from b to c"; unrooted trees induce the quaternary
D(ab; cd) likewise.  Trees are the primary representation (every finite C/D-set
arises from one); the relations are derived views with standalone axiom
checkers for independently supplied relation sets.

Paths are kept as node bitmasks, so the axiom scans and the identity between
D on an extension and C on its base reduce to numpy boolean cubes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .errors import InputError, InternalCheckError
from .hyperext import ColoredHypergraph, is_even_hypergraph
from .structures import (
    RelationalStructure,
    SubsetMap,
    apply_permutation,
    flatten,
    induced_substructure,
)
from .tourney import CircularOrder

# ---------------------------------------------------------------------------
# tree types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootedLeafTree:
    """Leaves 0..v-1, internal nodes v..v+m-1 (root is v), children per internal.

    Child order is significant when `plane` is set.  Optional per-internal-node
    colors and ranks feed the colored and leveled expansions.
    """

    v: int
    children: tuple  # children[i] is the child tuple of internal node v + i
    colors: tuple | None = None
    ranks: tuple | None = None
    plane: bool = False

    def __post_init__(self):
        v, m = self.v, len(self.children)
        if m == 0:
            raise InputError("a rooted leaf tree needs at least one internal node")
        appears = {}
        for i, kids in enumerate(self.children):
            if len(kids) < 2:
                raise InputError(f"internal node {v + i} has fewer than 2 children")
            for kid in kids:
                if not 0 <= kid < v + m or kid == v:
                    raise InputError(f"bad child id {kid}")
                if kid in appears:
                    raise InputError(f"node {kid} has two parents")
                appears[kid] = v + i
        if set(appears) != set(range(v + m)) - {v}:
            raise InputError("children lists must cover every non-root node once")
        # reachability from the root (guards against disjoint cycles)
        seen = set()
        stack = [v]
        while stack:
            node = stack.pop()
            seen.add(node)
            if node >= v:
                stack.extend(self.children[node - v])
        if len(seen) != v + m:
            raise InputError("tree is not connected")
        for name, ann in (("colors", self.colors), ("ranks", self.ranks)):
            if ann is not None and len(ann) != m:
                raise InputError(f"{name} must annotate all {m} internal nodes")

    @property
    def root(self):
        return self.v

    def internal_ids(self):
        return range(self.v, self.v + len(self.children))

    def kids(self, node):
        return self.children[node - self.v]


@dataclass(frozen=True)
class UnrootedLeafTree:
    """Leaves 0..v-1, internal nodes v..v+m-1 of degree >= 3, adjacency lists.

    Neighbor order is cyclic when `plane` is set.
    """

    v: int
    adj: tuple  # adj[i] is the neighbor tuple of internal node v + i
    colors: tuple | None = None
    plane: bool = False

    def __post_init__(self):
        v, m = self.v, len(self.adj)
        if m == 0:
            raise InputError("an unrooted leaf tree needs at least one internal node")
        leaf_seen = {}
        edges = set()
        for i, nbrs in enumerate(self.adj):
            node = v + i
            if len(nbrs) < 3:
                raise InputError(f"internal node {node} has degree < 3")
            for nb in nbrs:
                if not 0 <= nb < v + m or nb == node:
                    raise InputError(f"bad neighbor id {nb}")
                if nb < v:
                    if nb in leaf_seen:
                        raise InputError(f"leaf {nb} attached twice")
                    leaf_seen[nb] = node
                else:
                    edges.add((min(node, nb), max(node, nb)))
                    if node not in self.adj[nb - v]:
                        raise InputError(f"edge {node}-{nb} is not symmetric")
        if set(leaf_seen) != set(range(v)):
            raise InputError("leaves must be exactly 0..v-1")
        if v + len(edges) != v + m - 1:
            raise InputError("not a tree (wrong edge count)")
        seen = set()
        stack = [v]
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            if node >= v:
                stack.extend(self.adj[node - v])
        if len(seen) != v + m:
            raise InputError("tree is not connected")
        if self.colors is not None and len(self.colors) != m:
            raise InputError(f"colors must annotate all {m} internal nodes")

    def internal_ids(self):
        return range(self.v, self.v + len(self.adj))

    def neighbors(self, node):
        return self.adj[node - self.v]


# ---------------------------------------------------------------------------
# structural helpers
# ---------------------------------------------------------------------------


def parent_map(t: RootedLeafTree):
    parent = {t.root: None}
    for u in t.internal_ids():
        for kid in t.kids(u):
            parent[kid] = u
    return parent


def depth_map(t: RootedLeafTree):
    depth = {t.root: 0}
    stack = [t.root]
    while stack:
        node = stack.pop()
        if node >= t.v:
            for kid in t.kids(node):
                depth[kid] = depth[node] + 1
                stack.append(kid)
    return depth


def leaves_below(t: RootedLeafTree):
    out = {}

    def walk(node):
        if node < t.v:
            return frozenset((node,))
        acc = frozenset()
        for kid in t.kids(node):
            acc |= walk(kid)
        out[node] = acc
        return acc

    walk(t.root)
    return out


def leaf_order(t: RootedLeafTree):
    """Leaves in left-to-right order of the (plane) embedding."""
    order = []

    def walk(node):
        if node < t.v:
            order.append(node)
        else:
            for kid in t.kids(node):
                walk(kid)

    walk(t.root)
    return tuple(order)


def lca(t: RootedLeafTree, a, b):
    parent = parent_map(t)
    anc = set()
    node = a
    while node is not None:
        anc.add(node)
        node = parent[node]
    node = b
    while node not in anc:
        node = parent[node]
    return node


def _ancestor_masks(t: RootedLeafTree):
    """Bitmask over node ids of each leaf's path to the root (inclusive)."""
    parent = parent_map(t)
    masks = []
    for leaf in range(t.v):
        m = 0
        node = leaf
        while node is not None:
            m |= 1 << node
            node = parent[node]
        masks.append(m)
    return masks


def _leaf_path_masks_unrooted(t: UnrootedLeafTree):
    """masks[a][b] = node bitmask of the path between leaves a and b."""
    adj = {}
    for u in t.internal_ids():
        adj[u] = list(t.neighbors(u))
        for nb in t.neighbors(u):
            if nb < t.v:
                adj.setdefault(nb, []).append(u)
    paths = [[0] * t.v for _ in range(t.v)]
    for a in range(t.v):
        prev = {a: None}
        stack = [a]
        while stack:
            node = stack.pop()
            for nb in adj[node]:
                if nb not in prev:
                    prev[nb] = node
                    stack.append(nb)
        for b in range(t.v):
            m = 0
            node = b
            while node is not None:
                m |= 1 << node
                node = prev[node]
            paths[a][b] = m
    return paths


# ---------------------------------------------------------------------------
# relations and their axioms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CRelation:
    v: int
    triples: frozenset

    def holds(self, a, b, c):
        return (a, b, c) in self.triples


@dataclass(frozen=True)
class DRelation:
    v: int
    quadruples: frozenset

    def holds(self, a, b, c, d):
        return (a, b, c, d) in self.quadruples


def _c_cube(r: CRelation):
    cube = np.zeros((r.v,) * 3, dtype=bool)
    if r.triples:
        idx = np.array(sorted(r.triples))
        cube[idx[:, 0], idx[:, 1], idx[:, 2]] = True
    return cube


def _d_cube(r: DRelation):
    cube = np.zeros((r.v,) * 4, dtype=bool)
    if r.quadruples:
        idx = np.array(sorted(r.quadruples))
        cube[idx[:, 0], idx[:, 1], idx[:, 2], idx[:, 3]] = True
    return cube


def c_relation(t: RootedLeafTree) -> CRelation:
    """C(a; bc) iff the path from a to the root avoids the path from b to c."""
    v = t.v
    anc = _ancestor_masks(t)
    pair_path = [[0] * v for _ in range(v)]
    for b in range(v):
        for c in range(v):
            meet = lca(t, b, c)
            pair_path[b][c] = (anc[b] ^ anc[c]) | (1 << meet)
    anc_a = np.array(anc, dtype=np.int64)
    pp = np.array(pair_path, dtype=np.int64)
    cube = (anc_a[:, None, None] & pp[None, :, :]) == 0
    triples = frozenset(map(tuple, np.argwhere(cube).tolist()))
    return CRelation(v, triples)


def d_relation(t: UnrootedLeafTree) -> DRelation:
    """D(ab; cd) iff the path from a to b avoids the path from c to d."""
    v = t.v
    paths = np.array(_leaf_path_masks_unrooted(t), dtype=np.int64)
    cube = (paths[:, :, None, None] & paths[None, None, :, :]) == 0
    quads = frozenset(map(tuple, np.argwhere(cube).tolist()))
    return DRelation(v, quads)


@dataclass(frozen=True)
class AxiomCheck:
    ok: bool
    axiom: str | None = None
    witness: tuple | None = None
    skipped: tuple = ()

    def __bool__(self):
        return self.ok


_C_SKIPPED = (
    ("C5", "not evaluated (density/properness are infinite-scale)"),
    ("C5*", "not evaluated (density/properness are infinite-scale)"),
    ("C6", "not evaluated (density/properness are infinite-scale)"),
)
_D_SKIPPED = (
    ("D5", "not evaluated (density/properness are infinite-scale)"),
    ("D6", "not evaluated (density/properness are infinite-scale)"),
)


def _first(bad):
    hits = np.argwhere(bad)
    return tuple(hits[0].tolist()) if len(hits) else None


def check_c_axioms(r: CRelation) -> AxiomCheck:
    """Exhaustive evaluation of C1-C4 over the full vertex cube."""
    c = _c_cube(r)
    v = r.v
    w = _first(c & ~c.transpose(0, 2, 1))
    if w:
        return AxiomCheck(False, "C1", w, _C_SKIPPED)
    w = _first(c & c.transpose(1, 0, 2))
    if w:
        return AxiomCheck(False, "C2", w, _C_SKIPPED)
    x = np.transpose(c, (0, 2, 1))[:, None, :, :]  # C(a; dc) at [a,b,c,d]
    y = np.transpose(c, (1, 2, 0))[None, :, :, :]  # C(d; bc) at [a,b,c,d]
    w = _first(c[:, :, :, None] & ~x & ~y)
    if w:
        return AxiomCheck(False, "C3", w, _C_SKIPPED)
    ar = np.arange(v)
    diag = c[:, ar, ar]  # C(a; bb) at [a,b]
    w = _first(~diag & (ar[:, None] != ar[None, :]))
    if w:
        return AxiomCheck(False, "C4", w, _C_SKIPPED)
    return AxiomCheck(True, None, None, _C_SKIPPED)


def check_d_axioms(r: DRelation) -> AxiomCheck:
    """Exhaustive evaluation of D1-D4 over the full vertex cube."""
    d = _d_cube(r)
    v = r.v
    w = _first(d & ~(d.transpose(1, 0, 2, 3) & d.transpose(2, 3, 0, 1)))
    if w:
        return AxiomCheck(False, "D1", w, _D_SKIPPED)
    w = _first(d & d.transpose(0, 2, 1, 3))
    if w:
        return AxiomCheck(False, "D2", w, _D_SKIPPED)
    x = np.moveaxis(d, 0, -1)[None, :, :, :, :]  # D(vx; yz) at [w,x,y,z,v]
    y = d[:, :, :, None, :]  # D(wx; yv) at [w,x,y,z,v]
    w = _first(d[:, :, :, :, None] & ~x & ~y)
    if w:
        return AxiomCheck(False, "D3", w, _D_SKIPPED)
    ar = np.arange(v)
    diag = d[:, :, ar, ar]  # D(wx; yy) at [w,x,y]
    need = (ar[:, None, None] != ar[None, None, :]) & (
        ar[None, :, None] != ar[None, None, :]
    )
    w = _first(~diag & need)
    if w:
        return AxiomCheck(False, "D4", w, _D_SKIPPED)
    return AxiomCheck(True, None, None, _D_SKIPPED)


# ---------------------------------------------------------------------------
# splittings and branching points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Splitting:
    """Leaf partition induced by removing an internal node.

    The initial sector is the root-side block (C-side only; empty for the
    root itself, None for D-side splittings).
    """

    node: int
    sectors: tuple  # non-initial sectors, sorted by least leaf
    initial_sector: frozenset | None

    @property
    def degree(self):
        return len(self.sectors) + (1 if self.initial_sector is not None else 0)


def splittings(t):
    if isinstance(t, RootedLeafTree):
        below = leaves_below(t)
        every = frozenset(range(t.v))
        out = []
        for u in t.internal_ids():
            sectors = tuple(
                sorted(
                    (
                        below[kid] if kid >= t.v else frozenset((kid,))
                        for kid in t.kids(u)
                    ),
                    key=min,
                )
            )
            out.append(Splitting(u, sectors, every - below[u]))
        return out
    if isinstance(t, UnrootedLeafTree):
        out = []
        for u in t.internal_ids():
            sectors = []
            for nb in t.neighbors(u):
                if nb < t.v:
                    sectors.append(frozenset((nb,)))
                else:
                    component = set()
                    stack = [nb]
                    seen = {u, nb}
                    while stack:
                        node = stack.pop()
                        if node < t.v:
                            component.add(node)
                            continue
                        for nxt in t.neighbors(node):
                            if nxt not in seen:
                                seen.add(nxt)
                                stack.append(nxt)
                    sectors.append(frozenset(component))
            out.append(Splitting(u, tuple(sorted(sectors, key=min)), None))
        return out
    raise InputError(f"no splittings for {type(t).__name__}")


def branching_point(t, points) -> Splitting:
    """The unique splitting separating a leaf pair (rooted) or triple (unrooted).

    Uniqueness is verified by scanning all splittings, not assumed.
    """
    points = tuple(points)
    if len(set(points)) != len(points):
        raise InputError(f"points must be distinct, got {points}")
    hits = []
    if isinstance(t, RootedLeafTree):
        if len(points) != 2:
            raise InputError("rooted branching points take a leaf pair")
        a, b = points
        for s in splittings(t):
            ia = next((i for i, sec in enumerate(s.sectors) if a in sec), None)
            ib = next((i for i, sec in enumerate(s.sectors) if b in sec), None)
            if ia is not None and ib is not None and ia != ib:
                hits.append(s)
    elif isinstance(t, UnrootedLeafTree):
        if len(points) != 3:
            raise InputError("unrooted branching points take a leaf triple")
        for s in splittings(t):
            idx = [
                next((i for i, sec in enumerate(s.sectors) if p in sec), None)
                for p in points
            ]
            if None not in idx and len(set(idx)) == 3:
                hits.append(s)
    else:
        raise InputError(f"no branching points for {type(t).__name__}")
    if len(hits) != 1:
        raise InternalCheckError(
            f"expected a unique branching point for {points}, found {len(hits)}"
        )
    return hits[0]


# ---------------------------------------------------------------------------
# the C -> D extension
# ---------------------------------------------------------------------------


def extend_c_to_d(t: RootedLeafTree) -> UnrootedLeafTree:
    """Attach a new leaf at the root and forget the rooting.

    The defining rule D(x0 x; yz) <-> C(x; yz) and the disjunction identity
    relating D on the result to C on the base are verified exhaustively.
    """
    if t.v < 2:
        raise InputError("need at least 2 leaves")
    x0 = t.v

    def remap(node):
        return node if node < t.v else node + 1

    parent = parent_map(t)
    adj = []
    for u in t.internal_ids():
        kids = tuple(remap(k) for k in t.kids(u))
        if u == t.root:
            adj.append(kids + (x0,))
        else:
            adj.append((remap(parent[u]),) + kids)
    ext = UnrootedLeafTree(t.v + 1, tuple(adj), colors=t.colors, plane=t.plane)

    c_cube = _c_cube(c_relation(t))
    d_cube = _d_cube(d_relation(ext))
    if not np.array_equal(d_cube[x0, :x0, :x0, :x0], c_cube):
        raise InternalCheckError("D(x0 x; yz) does not match C(x; yz)")
    base = d_cube[:x0, :x0, :x0, :x0]
    t1 = c_cube[:, None, :, :]  # C(a; cd)
    t2 = c_cube[None, :, :, :]  # C(b; cd)
    t3 = np.transpose(c_cube, (1, 2, 0))[:, :, :, None]  # C(c; ab)
    t4 = np.transpose(c_cube, (1, 2, 0))[:, :, None, :]  # C(d; ab)
    if not np.array_equal(base, (t1 & t2) | (t3 & t4)):
        raise InternalCheckError("the D <-> C disjunction identity fails")
    return ext


# ---------------------------------------------------------------------------
# ordered expansion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderedExtension:
    tree: UnrootedLeafTree
    circular: CircularOrder


def _gamma_cube(circ: CircularOrder):
    cube = np.zeros((circ.v,) * 3, dtype=bool)
    for x, y, z in circ.triples:
        cube[x, y, z] = True
    return cube


def ordered_compatibility_violation(d: DRelation, circ: CircularOrder):
    """First quadruple where D(xy; zw) meets a forbidden circular arrangement."""
    dc = _d_cube(d)
    g = _gamma_cube(circ)[: d.v, : d.v, : d.v]
    a1 = np.transpose(g, (0, 2, 1))[:, :, :, None] & g[:, :, None, :]
    b1 = np.moveaxis(g, 0, -1)[None, :, :, :]  # gamma(w, y, z)
    b2 = np.transpose(g, (2, 1, 0))[:, None, :, :]  # gamma(w, z, x)
    return _first(dc & (a1 | (b1 & b2)))


def order_compatibility_violation(r: CRelation, order):
    """First triple with C(x; yz) but x strictly between y and z in the order."""
    pos = np.zeros(r.v, dtype=np.int64)
    for i, leaf in enumerate(order):
        pos[leaf] = i
    px = pos[:, None, None]
    py = pos[None, :, None]
    pz = pos[None, None, :]
    between = ((py < px) & (px < pz)) | ((pz < px) & (px < py))
    return _first(_c_cube(r) & between)


def ordered_extension(t: RootedLeafTree, order=None) -> OrderedExtension:
    """Extend a plane tree together with its left-to-right leaf order.

    The input order must satisfy the ordered-C compatibility axiom (automatic
    for the tree's own embedding, checked anyway, and enforced for supplied
    orders).  The new point closes the order into the counter-clockwise
    circular order of the extended plane tree.
    """
    if not t.plane:
        raise InputError("ordered extension needs a plane tree")
    if order is None:
        order = leaf_order(t)
    order = tuple(order)
    if sorted(order) != list(range(t.v)):
        raise InputError(f"order must arrange 0..{t.v - 1}, got {order!r}")
    rel = c_relation(t)
    bad = order_compatibility_violation(rel, order)
    if bad:
        raise InputError(
            f"ordered-C axiom fails at {bad}: the first point lies between the others"
        )
    ext = extend_c_to_d(t)
    circ = CircularOrder.from_cycle(order + (t.v,), ext=t.v)
    viol = ordered_compatibility_violation(d_relation(ext), circ)
    if viol:
        raise InternalCheckError(f"circular compatibility fails at {viol}")
    return OrderedExtension(ext, circ)


# ---------------------------------------------------------------------------
# internally colored expansion
# ---------------------------------------------------------------------------


def _color_count(colors):
    return max(colors) + 1


def pair_coloring(t: RootedLeafTree) -> ColoredHypergraph:
    """Color each leaf pair by the color of its branching node."""
    if t.colors is None:
        raise InputError("tree has no internal colors")
    table = SubsetMap.from_function(
        t.v, 2, lambda s: t.colors[lca(t, s[0], s[1]) - t.v]
    )
    return ColoredHypergraph(t.v, 2, _color_count(t.colors), table)


def triple_coloring(t: UnrootedLeafTree) -> ColoredHypergraph:
    """Color each leaf triple by the color of its median node."""
    if t.colors is None:
        raise InputError("tree has no internal colors")
    paths = _leaf_path_masks_unrooted(t)

    def color(s):
        a, b, c = s
        common = paths[a][b] & paths[a][c] & paths[b][c]
        node = common.bit_length() - 1
        if common != 1 << node:
            raise InternalCheckError(f"median of {s} is not a single node")
        return t.colors[node - t.v]

    table = SubsetMap.from_function(t.v, 3, color)
    return ColoredHypergraph(t.v, 3, _color_count(t.colors), table)


def colored_extension(t: RootedLeafTree) -> UnrootedLeafTree:
    """Extend an internally colored tree; colors ride along on the nodes.

    Verifies the splitting bijection (add x0 to the initial sector) preserves
    colors, and that every color class of the induced triple coloring is an
    even 3-hypergraph.
    """
    if t.colors is None:
        raise InputError("colored extension needs internal colors")
    ext = extend_c_to_d(t)
    x0 = t.v

    rooted = {s.node: s for s in splittings(t)}
    unrooted = {s.node: s for s in splittings(ext)}
    for u, s in rooted.items():
        image = unrooted[u + 1]
        expected = tuple(
            sorted(s.sectors + (s.initial_sector | {x0},), key=min)
        )
        if image.sectors != expected:
            raise InternalCheckError(f"splitting at node {u} does not correspond")
        if t.colors[u - t.v] != ext.colors[u + 1 - (t.v + 1)]:
            raise InternalCheckError(f"splitting color changes at node {u}")

    triples = triple_coloring(ext)
    for c in range(triples.n):
        mono = ColoredHypergraph(
            triples.v,
            3,
            2,
            SubsetMap.from_function(
                triples.v, 3, lambda s: 1 if triples.colors.value_for(s) == c else 0
            ),
        )
        ok, witness = is_even_hypergraph(mono)
        if not ok:
            raise InternalCheckError(f"color {c} class is not even at {witness}")
    return ext


def n_free_check(g: ColoredHypergraph, k=2):
    """(flag, witness): no color class restricted to 4 vertices may be a path
    with exactly the three consecutive edges."""
    if k != 2 or g.k != 2:
        raise InputError("N-freeness is a pair-coloring notion (k=2)")
    for quad in combinations(range(g.v), 4):
        for color in range(g.n):
            edges = [
                p for p in combinations(quad, 2) if g.colors.value_for(p) == color
            ]
            if len(edges) != 3:
                continue
            deg = {x: 0 for x in quad}
            for a, b in edges:
                deg[a] += 1
                deg[b] += 1
            if sorted(deg.values()) == [1, 1, 2, 2]:
                return False, (quad, color)
    return True, None


# ---------------------------------------------------------------------------
# leveled expansion
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Leveling:
    """Total preorder on (distinct) leaf pairs by branching-node rank."""

    v: int
    pair_ranks: dict

    def rank_of(self, pair):
        return self.pair_ranks[tuple(sorted(pair))]

    def holds(self, p, q):
        """L(p; q): the branching point of p is at most as deep as q's."""
        return self.rank_of(p) <= self.rank_of(q)


def leveled_pairs_preorder(t: RootedLeafTree) -> Leveling:
    """Derive the leveling of a ranked tree.

    Ranks must strictly increase from the root toward the leaves along every
    ancestor chain (ties across incomparable nodes are fine); the defining
    equivalence with C is then verified exhaustively.
    """
    if t.ranks is None:
        raise InputError("leveling needs internal ranks")
    for u in t.internal_ids():
        for kid in t.kids(u):
            if kid >= t.v and t.ranks[kid - t.v] <= t.ranks[u - t.v]:
                raise InputError(
                    f"rank must increase from node {u} to descendant {kid}"
                )
    ranks = {}
    for a, b in combinations(range(t.v), 2):
        ranks[(a, b)] = t.ranks[lca(t, a, b) - t.v]
    lev = Leveling(t.v, ranks)

    rel = c_relation(t)
    for a, b, c in permutations(range(t.v), 3):
        lhs = rel.holds(a, b, c)
        rhs = lev.holds((a, b), (b, c)) and not lev.holds((b, c), (a, b))
        if lhs != rhs:
            raise InternalCheckError(f"leveling mismatch with C at {(a, b, c)}")
    return lev


def c_monotonic_check(seq, rel: CRelation) -> bool:
    """C(a_i; a_j a_k) for all i < j < k."""
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        raise InputError(f"sequence entries must be distinct: {seq}")
    return all(
        rel.holds(seq[i], seq[j], seq[k])
        for i, j, k in combinations(range(len(seq)), 3)
    )


def d_monotonic_check(seq, rel: DRelation) -> bool:
    """D(a_i a_j; a_k a_l) for all i < j < k < l."""
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        raise InputError(f"sequence entries must be distinct: {seq}")
    return all(
        rel.holds(seq[i], seq[j], seq[k], seq[l])
        for i, j, k, l in combinations(range(len(seq)), 4)
    )


def c_monotonic_sequences(rel: CRelation, length):
    """All C-monotonic tuples of distinct leaves of the given length."""
    out = []

    def grow(prefix):
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        for x in range(rel.v):
            if x in prefix:
                continue
            t = len(prefix)
            if all(
                rel.holds(prefix[i], prefix[j], x)
                for i, j in combinations(range(t), 2)
            ):
                prefix.append(x)
                grow(prefix)
                prefix.pop()

    grow([])
    return out


def monotonic_sequences_isomorphic(rel: CRelation, lev: Leveling, max_length=5):
    """Whether all equal-length C-monotonic sequences induce isomorphic
    (C, L)-substructures under the index-aligned map.

    Returns (flag, witness); the witness names the two offending sequences.
    """
    for length in range(2, max_length + 1):
        seqs = c_monotonic_sequences(rel, length)
        if len(seqs) < 2:
            continue
        first = seqs[0]
        for other in seqs[1:]:
            for idx in permutations(range(length), 3):
                if rel.holds(*(first[i] for i in idx)) != rel.holds(
                    *(other[i] for i in idx)
                ):
                    return False, (first, other, ("C",) + idx)
            pairs = list(combinations(range(length), 2))
            for p in pairs:
                for q in pairs:
                    lf = lev.holds(
                        (first[p[0]], first[p[1]]), (first[q[0]], first[q[1]])
                    )
                    lo = lev.holds(
                        (other[p[0]], other[p[1]]), (other[q[0]], other[q[1]])
                    )
                    if lf != lo:
                        return False, (first, other, ("L", p, q))
    return True, None


# ---------------------------------------------------------------------------
# the leveled obstruction fixture
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LeveledObstructionReport:
    monotonic_sequences_hold: bool
    map_preserves_c: bool
    map_breaks_leveling: bool
    equal_length_isomorphic: bool
    sequences: tuple
    swap_map: tuple
    leveling_values: tuple


def obstruction_fixture() -> RootedLeafTree:
    """The 7-point configuration: two rank-2 chains hanging off a common root.

    Leaves are a=0, b=1, b'=2, d=3, d'=4, e=5; the extension point plays c.
    """
    #   root(6): u1(7), w1(9);  u1: u2(8), b';  u2: a, b;  w1: d, w2(10);  w2: d', e
    return RootedLeafTree(
        v=6,
        children=((7, 9), (8, 2), (0, 1), (3, 10), (4, 5)),
        ranks=(0, 1, 2, 1, 2),
    )


def leveled_obstruction_demo() -> LeveledObstructionReport:
    """Run the three assertions of the leveled nonexistence argument.

    (i) both 5-point sequences through the extension point are D-monotonic;
    (ii) the swap b -> b', d -> d' preserves C but not the leveling;
    (iii) equal-length C-monotonic sequences are (C, L)-isomorphic.
    Any failure is a build-breaking defect, raised as an internal error.
    """
    t = obstruction_fixture()
    a, b, bp, d, dp, e = range(6)
    x0 = 6

    ext = extend_c_to_d(t)
    drel = d_relation(ext)
    seq1 = (a, b, x0, d, e)
    seq2 = (a, bp, x0, dp, e)
    mono = d_monotonic_check(seq1, drel) and d_monotonic_check(seq2, drel)
    if not mono:
        raise InternalCheckError("fixture sequences are not D-monotonic")

    rel = c_relation(t)
    lev = leveled_pairs_preorder(t)
    swap = {a: a, b: bp, d: dp, e: e}
    domain = (a, b, d, e)
    c_ok = all(
        rel.holds(x, y, z) == rel.holds(swap[x], swap[y], swap[z])
        for x, y, z in permutations(domain, 3)
    )
    if not c_ok:
        raise InternalCheckError("the swap map does not preserve C")

    holds_image = lev.holds((a, bp), (dp, e))
    holds_source = lev.holds((a, b), (d, e))
    l_broken = holds_image and not holds_source
    if not l_broken:
        raise InternalCheckError("the swap map unexpectedly preserves the leveling")

    iso_ok, witness = monotonic_sequences_isomorphic(rel, lev)
    if not iso_ok:
        raise InternalCheckError(f"monotonic sequences differ: {witness}")

    return LeveledObstructionReport(
        monotonic_sequences_hold=mono,
        map_preserves_c=c_ok,
        map_breaks_leveling=l_broken,
        equal_length_isomorphic=iso_ok,
        sequences=(seq1, seq2),
        swap_map=tuple(sorted(swap.items())),
        leveling_values=(
            ("L(ab'; d'e)", holds_image),
            ("L(ab; de)", holds_source),
        ),
    )


# ---------------------------------------------------------------------------
# structure views
# ---------------------------------------------------------------------------


@flatten.register
def _(t: RootedLeafTree) -> RelationalStructure:
    rel = c_relation(t)
    triples = frozenset(x for x in rel.triples if len(set(x)) == 3)
    rels = [("C", 3, triples)]
    if t.colors is not None:
        pc = pair_coloring(t)
        for color in range(pc.n):
            pairs = frozenset(
                p
                for s, c in pc.colors.items()
                if c == color
                for p in (s, (s[1], s[0]))
            )
            rels.append((f"P{color}", 2, pairs))
    return RelationalStructure(t.v, tuple(rels))


@flatten.register
def _(t: UnrootedLeafTree) -> RelationalStructure:
    rel = d_relation(t)
    quads = frozenset(x for x in rel.quadruples if len(set(x)) == 4)
    rels = [("D", 4, quads)]
    if t.colors is not None:
        tc = triple_coloring(t)
        for color in range(tc.n):
            triples = frozenset(
                p
                for s, c in tc.colors.items()
                if c == color
                for p in permutations(s)
            )
            rels.append((f"P{color}", 3, triples))
    return RelationalStructure(t.v, tuple(rels))


@apply_permutation.register
def _(t: RootedLeafTree, perm) -> RootedLeafTree:
    if len(perm) != t.v:
        raise InputError("permutation degree must match the leaf count")
    children = tuple(
        tuple(perm[kid] if kid < t.v else kid for kid in kids)
        for kids in t.children
    )
    return RootedLeafTree(t.v, children, colors=t.colors, ranks=t.ranks, plane=t.plane)


@induced_substructure.register
def _(t: RootedLeafTree, vertices) -> RootedLeafTree:
    keep = sorted(set(vertices))
    if len(keep) < 2:
        raise InputError("an induced leaf tree needs at least 2 leaves")
    relabel = {leaf: i for i, leaf in enumerate(keep)}

    spec = []  # (children-specs, color, rank) in preorder

    def prune(node):
        """Returns a node spec (int leaf, or index into spec) or None."""
        if node < t.v:
            return relabel.get(node)
        kept = [k for k in (prune(kid) for kid in t.kids(node)) if k is not None]
        if not kept:
            return None
        if len(kept) == 1:
            return kept[0]
        idx = len(spec)
        spec.append(
            (
                tuple(kept),
                t.colors[node - t.v] if t.colors is not None else None,
                t.ranks[node - t.v] if t.ranks is not None else None,
            )
        )
        return ("internal", idx)

    root_spec = prune(t.root)
    if not isinstance(root_spec, tuple):
        raise InputError("induced leaf set does not span an internal node")

    # number internal nodes in preorder of the pruned tree
    order = []

    def walk(ref):
        if isinstance(ref, tuple):
            order.append(ref[1])
            for kid in spec[ref[1]][0]:
                walk(kid)

    walk(root_spec)
    v = len(keep)
    new_id = {old: v + i for i, old in enumerate(order)}
    children = tuple(
        tuple(kid if isinstance(kid, int) else new_id[kid[1]] for kid in spec[old][0])
        for old in order
    )
    colors = tuple(spec[old][1] for old in order) if t.colors is not None else None
    ranks = tuple(spec[old][2] for old in order) if t.ranks is not None else None
    return RootedLeafTree(v, children, colors=colors, ranks=ranks, plane=t.plane)


@induced_substructure.register
def _(t: UnrootedLeafTree, vertices) -> UnrootedLeafTree:
    keep = sorted(set(vertices))
    if len(keep) < 3:
        raise InputError("an induced unrooted tree needs at least 3 leaves")
    relabel = {leaf: i for i, leaf in enumerate(keep)}
    paths = _leaf_path_masks_unrooted(t)
    used = 0
    for a in keep:
        for b in keep:
            used |= paths[a][b]
    adj = {}
    for u in t.internal_ids():
        if used >> u & 1:
            adj[u] = [
                nb
                for nb in t.neighbors(u)
                if (used >> nb & 1) and (nb >= t.v or nb in relabel)
            ]
    # contract chains through degree-2 internal nodes
    changed = True
    while changed:
        changed = False
        for u in list(adj):
            if len(adj[u]) == 2:
                a, b = adj[u]
                for x, y in ((a, b), (b, a)):
                    if x >= t.v:
                        adj[x] = [y if nb == u else nb for nb in adj[x]]
                del adj[u]
                changed = True
                break
    order = sorted(adj)
    v = len(keep)
    new_id = {old: v + i for i, old in enumerate(order)}
    out = tuple(
        tuple(new_id[nb] if nb >= t.v else relabel[nb] for nb in adj[old])
        for old in order
    )
    colors = (
        tuple(t.colors[old - t.v] for old in order) if t.colors is not None else None
    )
    return UnrootedLeafTree(v, out, colors=colors, plane=t.plane)


@apply_permutation.register
def _(t: UnrootedLeafTree, perm) -> UnrootedLeafTree:
    if len(perm) != t.v:
        raise InputError("permutation degree must match the leaf count")
    adj = tuple(
        tuple(perm[nb] if nb < t.v else nb for nb in nbrs) for nbrs in t.adj
    )
    return UnrootedLeafTree(t.v, adj, colors=t.colors, plane=t.plane)
