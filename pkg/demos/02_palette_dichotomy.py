"""Palettes exist exactly at power-of-two color counts.

A palette over n colors is a family of 4-multisets in which every 3-multiset
has a unique completion, every doubled pair {i,i,j,j} appears, and completions
exchange along shared pairs.  Searching the completion function exhaustively
settles each n in milliseconds.
"""

from extensor.palette import (
    canonical_palette,
    derive_involution,
    is_palette,
    reduce_palette,
    search_palette,
)

for n in range(1, 9):
    outcome = search_palette(n)
    print(f"n={n}: {outcome.status:13s} after {outcome.nodes} nodes")

print()
p4 = canonical_palette(4)
print("canonical 4-color palette:", sorted(p4.members))
print("axioms:", "Ok" if is_palette(p4).ok else "violated")

print()
print("the pairing through colors 1,2 is a fixed-point-free involution:")
print("g =", derive_involution(p4, 1, 2))
print("blending paired colors halves the count:", sorted(reduce_palette(p4).members))
