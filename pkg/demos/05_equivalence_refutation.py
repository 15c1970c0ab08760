"""No equivalence relation with two or more equal classes of size >= 2 extends.

The boundary of a candidate extension is pinned by the relation itself, so the
whole candidate space is the power set of the interior triples.  Consistency
of the derived pair relations cuts it down to (almost) one survivor, and the
survivor splits the vertex types: some vertices see singleton blocks that the
new point never does.
"""

from extensor.eqrel import (
    EquivalenceRelation,
    forced_extension,
    refute_extension,
    singleton_type_report,
)
from extensor.hyperext import hyperedges

for shape, v, blocks in (
    ("2+2", 4, [{0, 1}, {2, 3}]),
    ("2+2+2", 6, [{0, 1}, {2, 3}, {4, 5}]),
    ("3+3", 6, [{0, 1, 2}, {3, 4, 5}]),
):
    e = EquivalenceRelation.from_classes(v, blocks)
    cert = refute_extension(e)
    counts = ", ".join(f"{k}: {n}" for k, n in sorted(cert.failure_counts.items()))
    print(f"{shape}: {cert.candidates_examined} candidates, {cert.passed} pass ({counts})")

print()
e = EquivalenceRelation.from_classes(4, [{0, 1}, {2, 3}])
forced = forced_extension(e)
print("2+2 forced candidate hyperedges:", sorted(hyperedges(forced)))
rep = singleton_type_report(e, forced, 0)
print(f"pair relation at vertex 0 has {rep.vertex_singletons} singleton blocks;"
      f" at the new point, {rep.x0_singletons}")
print("type split refutes transitivity:", rep.type_split)
