"""Orientations: the parity extension and the odd-arity obstruction.

A k-orientation picks one alternating-class of orderings per k-set.  The
extension assigns each interior (k+1)-set the unique bit that keeps its
closure with the new point even.  For odd k a certified automorphism of odd
parity rules any extension out; and exhaustive search shows the even
construction closes up only when k is 2 mod 4.
"""

from itertools import combinations, product

from extensor.generate import SplitMix64, random_orientation
from extensor.orient import (
    Orientation,
    extend_orientation,
    is_even_orientation,
    odd_obstruction,
)
from extensor.perm import fmt_cycles, verify_one_point_extension
from extensor.structures import SubsetMap

# the 3-cycle tournament 0 -> 1 -> 2 -> 0
cycle = Orientation(3, 2, SubsetMap(3, 2, (0, 1, 0)))
ext = extend_orientation(cycle)
report = verify_one_point_extension(cycle, ext)
print("3-cycle tournament: extension even:", is_even_orientation(ext)[0],
      "| one-point:", report.is_one_point_extension,
      "| transitive:", report.is_transitive)

print()
for k in (3, 5):
    cert = odd_obstruction(k)
    print(f"odd k={k}: sigma = {fmt_cycles(cert.sigma)},",
          f"automorphism: {cert.sigma_is_automorphism},",
          f"extended parity: {cert.extended_parity}")

print()
print("even arities, sampled:")
rng = SplitMix64(404)
for k, v in ((2, 6), (4, 6), (6, 8)):
    t = random_orientation(rng, v, k)
    ok = is_even_orientation(extend_orientation(t))[0]
    print(f"  k={k}: forced extension even: {ok}")

print()
print("k=4 fails for a reason: no interior assignment works at all")
t = random_orientation(rng, 6, 4)
interior = list(combinations(range(6), 5))
even_count = 0
for bits in product((0, 1), repeat=len(interior)):
    assign = dict(zip(interior, bits))

    def bit(s, assign=assign, t=t):
        return t.bits.value_for(s[:-1]) if s[-1] == 6 else assign[s]

    cand = Orientation(7, 5, SubsetMap.from_function(7, 5, bit))
    even_count += is_even_orientation(cand)[0]
print(f"even candidates among all {2 ** len(interior)} boundary-respecting"
      f" 5-orientations: {even_count}")
