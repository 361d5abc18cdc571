"""
Growing N7 from the four-element square
=======================================

The smallest slim planar semimodular lattice with a fork in it.
"""

from spsforge import classify_cell, grid, insert_fork, ji_congruence_order

# the square 2 x 2, drawn with a on the left and b on the right
square = grid(1, 1)
print(square, square.cells)

# one fork: three new elements, no legs since there is nothing below
L1, trace = insert_fork(square, ("0", "a", "b", "1"))
print("new elements:", trace.new_elements, "leg steps:", trace.leg_steps)
print(L1)

# each internal face is again a 4-cell
for S in L1.cells:
    print(" ", S, classify_cell(L1, S).value)

# the top of the square now has three lower covers
print("below 1:", L1.lower_order["1"])

ji, _ = ji_congruence_order(L1)
print(ji, "|Con| =", ji.congruence_count)
