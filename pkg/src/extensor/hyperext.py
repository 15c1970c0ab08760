"""Edge-colored hypergraphs: evenness, the parity one-point extension, palettes.

A plain k-hypergraph is the n=2 case with color 1 meaning "hyperedge".  For
n = 2^m the coloring splits into m bit channels, each a plain hypergraph; the
extension runs channel-wise: subsets through the new point inherit the old
color, interior subsets take the parity of the hyperedge count inside them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InputError
from .palette import Palette, enumerate_multisets
from .structures import (
    RelationalStructure,
    SubsetMap,
    apply_permutation,
    flatten,
    induced_substructure,
)


@dataclass(frozen=True)
class ColoredHypergraph:
    """Total coloring of all k-subsets of {0..v-1} with colors 0..n-1."""

    v: int
    k: int
    n: int
    colors: SubsetMap
    ext: int | None = field(default=None, compare=False)
    labeling: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.k < 2:
            raise InputError(f"hypergraph arity must be >= 2, got k={self.k}")
        if self.n < 1:
            raise InputError(f"need at least one color, got n={self.n}")
        if self.colors.v != self.v or self.colors.k != self.k:
            raise InputError("color table does not match v and k")
        for s, c in self.colors.items():
            if not 0 <= c < self.n:
                raise InputError(f"color {c} of {s} outside 0..{self.n - 1}")

    def color_of(self, subset):
        return self.colors.value_for(subset)


def plain_hypergraph(v, k, edges) -> ColoredHypergraph:
    """n=2 hypergraph from an iterable of hyperedge subsets."""
    edge_set = {tuple(sorted(e)) for e in edges}
    for e in edge_set:
        if len(e) != k:
            raise InputError(f"hyperedge {e} is not a {k}-subset")
    table = SubsetMap.from_function(v, k, lambda s: 1 if s in edge_set else 0)
    return ColoredHypergraph(v, k, 2, table)


def hyperedges(h: ColoredHypergraph):
    if h.n != 2:
        raise InputError("hyperedges are only defined for plain (n=2) hypergraphs")
    return tuple(s for s, c in h.colors.items() if c == 1)


@flatten.register
def _(h: ColoredHypergraph) -> RelationalStructure:
    from itertools import permutations as perms

    def orbit(subset):
        return frozenset(perms(subset))

    if h.n == 2:
        tuples = frozenset(t for s, c in h.colors.items() if c == 1 for t in orbit(s))
        return RelationalStructure(h.v, (("R", h.k, tuples),))
    rels = []
    for color in range(h.n):
        tuples = frozenset(
            t for s, c in h.colors.items() if c == color for t in orbit(s)
        )
        rels.append((f"R{color}", h.k, tuples))
    return RelationalStructure(h.v, tuple(rels))


@apply_permutation.register
def _(h: ColoredHypergraph, perm) -> ColoredHypergraph:
    inv = [0] * h.v
    for i, x in enumerate(perm):
        inv[x] = i
    # color of sigma(S) in the image equals color of S: build by pulling back
    table = SubsetMap.from_function(
        h.v, h.k, lambda s: h.colors.value_for(tuple(sorted(inv[x] for x in s)))
    )
    return ColoredHypergraph(h.v, h.k, h.n, table)


@induced_substructure.register
def _(h: ColoredHypergraph, vertices) -> ColoredHypergraph:
    sub = sorted(set(vertices))
    if len(sub) < h.k:
        raise InputError(f"need at least k={h.k} vertices, got {len(sub)}")
    table = SubsetMap.from_function(
        len(sub), h.k, lambda s: h.colors.value_for(tuple(sub[i] for i in s))
    )
    return ColoredHypergraph(len(sub), h.k, h.n, table)


# -- evenness -----------------------------------------------------------------


def is_even_hypergraph(h: ColoredHypergraph):
    """(flag, witness): every (k+1)-subset must contain an even number of hyperedges.

    The witness is the lexicographically least violating (k+1)-subset.
    """
    if h.n != 2:
        raise InputError("evenness is defined for plain hypergraphs; bit_decompose first")
    if h.v < h.k + 1:
        raise InputError(f"need v >= k+1 to scan (k+1)-subsets, got v={h.v}")
    for big in combinations(range(h.v), h.k + 1):
        count = sum(h.colors.value_for(s) for s in combinations(big, h.k))
        if count % 2:
            return False, big
    return True, None


def extend_plain(h: ColoredHypergraph) -> ColoredHypergraph:
    """The parity one-point extension of a plain k-hypergraph.

    Subsets through the new point x0 = v are hyperedges iff their k-part was;
    interior (k+1)-subsets are hyperedges iff they contain an odd number of
    k-hyperedges.  The output is the unique even (k+1)-hypergraph in canonical
    form over the input.
    """
    if h.n != 2:
        raise InputError("extend_plain needs a plain hypergraph; use extend_colored")
    if h.v < h.k + 1:
        raise InputError(f"need v >= k+1, got v={h.v}")
    x0 = h.v

    def color(subset):
        if subset[-1] == x0:
            return h.colors.value_for(subset[:-1])
        count = sum(h.colors.value_for(s) for s in combinations(subset, h.k))
        return count % 2

    table = SubsetMap.from_function(h.v + 1, h.k + 1, color)
    return ColoredHypergraph(h.v + 1, h.k + 1, 2, table, ext=x0)


# -- bit channels ---------------------------------------------------------------


@dataclass(frozen=True)
class BitLabeling:
    """Bijection between colors 0..n-1 and bit-vectors of length log2(n)."""

    n: int
    vectors: tuple

    def __post_init__(self):
        if self.n < 1 or self.n & (self.n - 1):
            raise InputError(f"bit labeling needs a power-of-two color count, got {self.n}")
        if len(self.vectors) != self.n or set(self.vectors) != set(range(self.n)):
            raise InputError("vectors must be a bijection onto 0..n-1")

    @property
    def width(self):
        return self.n.bit_length() - 1

    def bits_of(self, color):
        return self.vectors[color]

    def color_of(self, bits):
        return self.vectors.index(bits)


def default_labeling(n) -> BitLabeling:
    """Binary expansion of the color index."""
    return BitLabeling(n, tuple(range(n)))


def bit_decompose(h: ColoredHypergraph, labeling: BitLabeling | None = None):
    """Split an n=2^m coloring into m plain hypergraph channels."""
    labeling = _check_labeling(h.n, labeling)
    channels = []
    for bit in range(labeling.width):
        table = SubsetMap.from_function(
            h.v, h.k, lambda s, b=bit: (labeling.bits_of(h.colors.value_for(s)) >> b) & 1
        )
        channels.append(ColoredHypergraph(h.v, h.k, 2, table))
    return channels


def bit_merge(channels, labeling: BitLabeling | None = None) -> ColoredHypergraph:
    """Inverse of bit_decompose."""
    if not channels:
        raise InputError("need at least one channel")
    n = 2 ** len(channels)
    labeling = _check_labeling(n, labeling)
    v, k = channels[0].v, channels[0].k
    for ch in channels:
        if ch.n != 2 or ch.v != v or ch.k != k:
            raise InputError("channels must be plain hypergraphs on a common vertex set")

    def color(subset):
        bits = sum(ch.colors.value_for(subset) << i for i, ch in enumerate(channels))
        return labeling.color_of(bits)

    table = SubsetMap.from_function(v, k, color)
    return ColoredHypergraph(v, k, n, table)


def _check_labeling(n, labeling):
    if n < 1 or n & (n - 1):
        raise InputError(
            f"color count {n} is not a power of two; no extension exists "
            "(see the palette nonexistence search)"
        )
    if labeling is None:
        labeling = default_labeling(n)
    if labeling.n != n:
        raise InputError(f"labeling is for {labeling.n} colors, structure has {n}")
    return labeling


def extend_colored(
    h: ColoredHypergraph, labeling: BitLabeling | None = None
) -> ColoredHypergraph:
    """Channel-wise parity extension of an n=2^m coloring.

    The interior colors depend on the chosen labeling for n >= 4, so the
    labeling used is recorded on the output.
    """
    labeling = _check_labeling(h.n, labeling)
    channels = [extend_plain(ch) for ch in bit_decompose(h, labeling)]
    merged = bit_merge(channels, labeling)
    return ColoredHypergraph(
        merged.v, merged.k, merged.n, merged.colors, ext=h.v, labeling=labeling.vectors
    )


def canonical_form_violation(h: ColoredHypergraph, h_ext: ColoredHypergraph, x0):
    """First k-subset where color(S + x0) in the extension differs from color(S)."""
    if h_ext.v != h.v + 1 or h_ext.k != h.k + 1 or h_ext.n != h.n:
        raise InputError("extension must add one vertex and one arity at equal n")
    if x0 != h.v:
        raise InputError(f"extension point must be {h.v}, got {x0}")
    for s in combinations(range(h.v), h.k):
        if h_ext.colors.value_for(s + (x0,)) != h.colors.value_for(s):
            return s
    return None


# -- palette extraction ---------------------------------------------------------


@dataclass(frozen=True)
class PaletteExtraction:
    palette: Palette | None
    mapping: tuple  # sorted (multiset, completion-color) pairs, 1-based colors
    realized: tuple
    missing: tuple
    complete: bool
    inconsistency: tuple | None  # (subset_a, subset_b, multiset)


def derive_palette(
    h: ColoredHypergraph, h_ext: ColoredHypergraph, x0=None, slice_color=None
) -> PaletteExtraction:
    """Read a palette off a candidate extension.

    Every (k+1)-subset S of the base realizes the multiset of its k-subset
    colors; a consistent extension colors S as a function of that multiset
    alone.  The induced members form a palette over the realized part of the
    domain.  For k > 2 the 4-multiset slice at `slice_color` is taken.
    """
    if x0 is None:
        x0 = h.v
    bad = canonical_form_violation(h, h_ext, x0)
    if bad is not None:
        raise InputError(f"not in canonical form: color changes at subset {bad}")
    if h.k > 2:
        if slice_color is None:
            raise InputError("k > 2 extraction needs a slice color")
        if not 0 <= slice_color < h.n:
            raise InputError(f"slice color {slice_color} outside 0..{h.n - 1}")

    mapping = {}
    witness_of = {}
    for big in combinations(range(h.v), h.k + 1):
        t = tuple(sorted(h.colors.value_for(s) + 1 for s in combinations(big, h.k)))
        c = h_ext.colors.value_for(big) + 1
        if t in mapping:
            if mapping[t] != c:
                return PaletteExtraction(
                    palette=None,
                    mapping=(),
                    realized=(),
                    missing=(),
                    complete=False,
                    inconsistency=(witness_of[t], big, t),
                )
        else:
            mapping[t] = c
            witness_of[t] = big

    if h.k == 2:
        slice_mapping = mapping
    else:
        pad = (slice_color + 1,) * (h.k - 2)
        slice_mapping = {}
        for t, c in mapping.items():
            core = _strip_pad(t, pad)
            if core is not None:
                slice_mapping[core] = c

    domain = enumerate_multisets(h.n, 3)
    realized = tuple(t for t in domain if t in slice_mapping)
    missing = tuple(t for t in domain if t not in slice_mapping)
    members = frozenset(
        tuple(sorted(t + (slice_mapping[t],))) for t in realized
    )
    return PaletteExtraction(
        palette=Palette(h.n, members),
        mapping=tuple(sorted(mapping.items())),
        realized=realized,
        missing=missing,
        complete=not missing,
        inconsistency=None,
    )


def _strip_pad(multiset, pad):
    """Remove the padding colors from a (k+1)-multiset, or None if absent."""
    rest = list(multiset)
    for x in pad:
        if x in rest:
            rest.remove(x)
        else:
            return None
    return tuple(rest)
