"""
Colouring edges by join-irreducible congruences
===============================================

Every covering edge a < b generates con(a, b).  Distinct ones get
Greek letters in order of first appearance, bottom to top.
"""

from spsforge import grid, insert_fork, ji_congruence_order, square_palette
from spsforge.io import export_dot

D = grid(1, 1)
D, _ = insert_fork(D, D.cells[0])

ji, colours = ji_congruence_order(D)
for edge, name in colours.items():
    print(f"{edge[0]:>5} -> {edge[1]:<5} {name}")

# classes of each join-irreducible congruence
for name, theta in zip(ji.names, ji.members):
    print(name, theta)

# palettes: the bottom cell sees both top colours, the upper cells are wide
for S in D.cells:
    print(S, sorted(square_palette(D, S, colours)))

# grids are distributive: one colour per edge direction and step
G = grid(2, 3)
gji, _ = ji_congruence_order(G)
print(G, gji, "|Con| =", gji.congruence_count)

# DOT text, ready for `dot -Tsvg`
print(export_dot(D, colours, name="L1"))
