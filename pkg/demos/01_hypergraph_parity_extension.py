"""Extending a graph to an even 3-hypergraph by one new point.

The new point sees the old edges directly: a triple through it is a hyperedge
exactly when the corresponding pair was an edge.  Triples avoiding it take the
parity of the edge count inside them, and the result is the unique even
3-hypergraph over that boundary.
"""

from extensor.hyperext import (
    extend_plain,
    hyperedges,
    is_even_hypergraph,
    plain_hypergraph,
)
from extensor.perm import verify_one_point_extension

# the path 0 - 1 - 2
path = plain_hypergraph(3, 2, [(0, 1), (1, 2)])
ext = extend_plain(path)

print("path graph 0-1-2, extended at the new point 3")
print("hyperedges:", sorted(hyperedges(ext)))
print("even:", is_even_hypergraph(ext)[0])

report = verify_one_point_extension(path, ext)
print("stabilizer of 3 restricted to the path equals Aut(path):",
      report.is_one_point_extension)
print("full automorphism group transitive:", report.is_transitive)
print()

# the triangle: every vertex alike, and the extension stays homogeneous
triangle = plain_hypergraph(3, 2, [(0, 1), (0, 2), (1, 2)])
ext = extend_plain(triangle)
print("triangle, extended: hyperedges", sorted(hyperedges(ext)))
report = verify_one_point_extension(triangle, ext)
print("one-point extension:", report.is_one_point_extension,
      "| transitive:", report.is_transitive)
print()
print("the degree split of the path survives into its extension, so only")
print("degenerate fragments like the triangle extend transitively at finite size")
