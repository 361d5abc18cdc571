"""Fork insertion into a 4-cell of a slim planar semimodular diagram.

Inserting a fork at S = {o, c_l, c_r, t} first replaces S by a copy of N7:
new elements a_l on o–c_l, a_r on o–c_r, and m with a_l, a_r ≺ m ≺ t.
Then two legs grow downward.  While the tip of a leg is a chain u ≺ v ≺ w
with v new and u, w old, and the original diagram has a 4-cell T with top
w and lower covers u and x, a new element y goes in with
x∧u ≺ y ≺ x and y ≺ v.  The left leg walks into cells whose right upper
edge is u–w, the right leg into cells whose left upper edge is u–w.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .congruence import Congruence, principal_congruence
from .errors import CellNotFound, InternalInvariantViolation, LatticeError
from .planar import FourCell, PlanarDiagram, build_diagram


class SquareKind(enum.Enum):
    TIGHT = "tight"
    WIDE = "wide"


@dataclass(frozen=True)
class ForkTrace:
    cell: FourCell
    new_top: str
    new_left: str
    new_right: str
    left_leg: tuple = ()    # ((y, consumed original cell), ...) top to bottom
    right_leg: tuple = ()

    @property
    def new_elements(self):
        return ((self.new_top, self.new_left, self.new_right)
                + tuple(y for y, _ in self.left_leg)
                + tuple(y for y, _ in self.right_leg))

    @property
    def leg_steps(self):
        return len(self.left_leg) + len(self.right_leg)


def _require_cell(D: PlanarDiagram, S) -> FourCell:
    S = FourCell(*(str(x) for x in S))
    if S not in D.cells:
        raise CellNotFound(f"{list(S)} is not a 4-cell of this diagram")
    return S


def classify_cell(D: PlanarDiagram, S) -> SquareKind:
    """Tight iff the top of S has exactly two lower covers."""
    S = _require_cell(D, S)
    return SquareKind.TIGHT if len(D.lower_order[S.t]) == 2 else SquareKind.WIDE


def _fresh(D, k):
    taken = set(D.elements)
    while f"m@{k}" in taken:
        k += 1
    return k


def insert_fork(D: PlanarDiagram, S):
    """Return ``(L[S], trace)``.  ``D`` itself is left untouched."""
    S = _require_cell(D, S)
    o, cl, cr, t = S
    forks = list(D.metadata.get("forks", []))
    k = _fresh(D, len(forks) + 1)
    m, al, ar = f"m@{k}", f"aL@{k}", f"aR@{k}"

    covers = set(D.covers)
    up = {x: list(v) for x, v in D.upper_order.items()}
    down = {x: list(v) for x, v in D.lower_order.items()}

    def subdivide(lo, hi, mid):
        covers.discard((lo, hi))
        covers.update({(lo, mid), (mid, hi)})
        up[lo][up[lo].index(hi)] = mid
        down[hi][down[hi].index(lo)] = mid

    subdivide(o, cl, al)
    subdivide(o, cr, ar)
    covers.update({(al, m), (ar, m), (m, t)})
    up[al], down[al] = [cl, m], [o]
    up[ar], down[ar] = [m, cr], [o]
    up[m], down[m] = [t], [al, ar]
    lt = down[t]
    j = lt.index(cl)
    if lt[j + 1] != cr:
        raise InternalInvariantViolation(f"{cl} and {cr} are not adjacent below {t}")
    lt.insert(j + 1, m)

    # Legs consult only the cells of the diagram as it was before this fork.
    by_right_edge = {(c.c_r, c.t): c for c in D.cells}
    by_left_edge = {(c.c_l, c.t): c for c in D.cells}
    consumed = {S}
    legs = {"L": [], "R": []}
    for side, start in (("L", (o, al, cl)), ("R", (o, ar, cr))):
        u, v, w = start
        lookup = by_right_edge if side == "L" else by_left_edge
        step = 0
        while True:
            T = lookup.get((u, w))
            if T is None or T in consumed:
                break
            consumed.add(T)
            step += 1
            y = f"leg{side}{step}@{k}"
            x = T.c_l if side == "L" else T.c_r
            b = T.o
            subdivide(b, x, y)
            covers.add((y, v))
            up[y] = [x, v] if side == "L" else [v, x]
            down[y] = [b]
            lv = down[v]
            at = lv.index(u)
            lv.insert(at if side == "L" else at + 1, y)
            legs[side].append((y, T))
            u, v, w = b, y, x

    metadata = dict(D.metadata)
    metadata["forks"] = forks + [list(S)]
    order = list(D.elements) + [al, ar, m] + [y for y, _ in legs["L"]] + [y for y, _ in legs["R"]]
    try:
        out = build_diagram(sorted(covers), up, down, elements=order, metadata=metadata)
    except LatticeError as exc:
        raise InternalInvariantViolation(f"fork at {list(S)} broke the diagram: {exc}") from exc
    if not out.all_faces_are_cells():
        raise InternalInvariantViolation(f"fork at {list(S)} left a face that is not a 4-cell")
    trace = ForkTrace(S, m, al, ar, tuple(legs["L"]), tuple(legs["R"]))
    return out, trace


def fork_congruence(D: PlanarDiagram, trace: ForkTrace) -> Congruence:
    """con(m, t) in the extended lattice."""
    return principal_congruence(D.lattice, trace.new_top, trace.cell.t)


def apply_script(D: PlanarDiagram, script):
    """Insert forks at each cell of ``script`` in turn; return the final diagram."""
    for cell in script:
        D, _ = insert_fork(D, cell)
    return D
