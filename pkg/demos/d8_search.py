"""
Looking for the eight-element distributive lattice
==================================================

D8 is the down-set lattice of a five-element order P.  P satisfies both
necessary conditions on Ji(Con) of slim planar semimodular lattices, yet
a bounded search over fork extensions of grids finds nothing.
An exhausted search only speaks for the bounds it was given.
"""

import json

from spsforge import (P_D8, SearchBounds, TargetOrder, check_cc1, check_cc2,
                      down_set_lattice, search_representation)

D8 = down_set_lattice(P_D8)
print(D8, "elements:", D8.elements)
print("CC1:", check_cc1(P_D8), "CC2:", check_cc2(P_D8))

bounds = SearchBounds(max_forks=5, max_forks_large=3, max_elements=40, grid_edge_caps=(3, 3))
report = search_representation(P_D8, bounds)
doc = report.to_document()
print(json.dumps({k: doc[k] for k in ("verdict", "explored", "pruned", "truncated",
                                      "insertions", "wall_time_s")}, indent=2))

# the same machinery does find small targets
vee = TargetOrder([("c", "a"), ("c", "b")], name="vee")
hit = search_representation(vee, SearchBounds(max_forks=1, grid_edge_caps=(1, 1)))
print("vee:", hit.to_document(timing=False)["verdict"], hit.witness.script)
