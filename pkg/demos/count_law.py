"""
Tight and wide cells
====================

A fork into a cell whose top has exactly two lower covers creates one
new join-irreducible congruence; into any other cell it creates none.
We watch that happen over a small isomorph-free enumeration.
"""

from collections import Counter

from spsforge import SearchBounds, enumerate_lattices, grid

bounds = SearchBounds(max_forks=3, max_elements=64, prune_on_ji_count=False)
enum = enumerate_lattices([grid(1, 1), grid(1, 2)], bounds)

by_stratum = Counter()
for node in enum:
    by_stratum[node.base, node.forks] += 1

for (base, forks), n in sorted(by_stratum.items()):
    print(f"{base}  forks={forks}  lattices={n}")

s = enum.stats
print("insertions:", s.insertions, "duplicates:", s.duplicates)
print("count-law violations:", len(s.violations))
