"""Planar Hasse diagrams.

A diagram is a lattice together with, for every element, its upper covers
and its lower covers listed left to right.  Read clockwise around an
element this is: upper covers left to right, then lower covers right to
left, which is a rotation system; faces come from walking it.
"""
from __future__ import annotations

import enum
from functools import cached_property
from typing import NamedTuple

from .errors import CellNotFound, InconsistentRotation, NotPlanar, UnknownElement
from .order import FiniteLattice, build_lattice, is_semimodular


class FourCell(NamedTuple):
    o: str
    c_l: str
    c_r: str
    t: str


class Face(NamedTuple):
    bottom: str
    top: str
    left: tuple   # chain bottom -> top along the left side
    right: tuple  # chain bottom -> top along the right side

    @property
    def elements(self):
        return tuple(dict.fromkeys(self.left + self.right))


class Shape(enum.Enum):
    NOT_RECTANGULAR = "not-rectangular"
    RECTANGULAR = "rectangular"
    PATCH = "patch"


class ShapeClass(NamedTuple):
    shape: Shape
    left_corner: str | None = None
    right_corner: str | None = None

    @property
    def is_rectangular(self):
        return self.shape is not Shape.NOT_RECTANGULAR

    @property
    def is_patch(self):
        return self.shape is Shape.PATCH


class PlanarDiagram:
    """A lattice with a planar left-to-right embedding of its Hasse diagram.

    Construct through :func:`build_diagram`, :func:`grid` or
    ``spsforge.fork.insert_fork``.  ``metadata`` is free-form; the
    constructions record ``base`` and the list of ``forks`` applied so far.
    """

    def __init__(self, lattice: FiniteLattice, upper_order, lower_order, metadata=None):
        self.lattice = lattice
        self.metadata = dict(metadata or {})
        L = lattice
        n = len(L)
        self.upper_order = {}
        self.lower_order = {}
        for x in L.elements:
            i = L.idx(x)
            up = tuple(str(y) for y in upper_order.get(x, ()))
            down = tuple(str(y) for y in lower_order.get(x, ()))
            if sorted(up) != sorted(L.elements[j] for j in L.upper[i]):
                raise InconsistentRotation(
                    f"upper order of {x} is {list(up)}, covers say "
                    f"{sorted(L.elements[j] for j in L.upper[i])}")
            if sorted(down) != sorted(L.elements[j] for j in L.lower[i]):
                raise InconsistentRotation(
                    f"lower order of {x} is {list(down)}, covers say "
                    f"{sorted(L.elements[j] for j in L.lower[i])}")
            self.upper_order[x] = up
            self.lower_order[x] = down
        extra = set(upper_order) | set(lower_order)
        extra -= set(L.elements)
        if extra:
            raise UnknownElement(sorted(extra)[0])
        self.faces, self.outer = self._walk_faces()
        faces_total = len(self.faces) + 1
        edges = len(L.covers)
        if n - edges + faces_total != 2:
            raise NotPlanar(
                f"rotation system has V-E+F = {n}-{edges}+{faces_total} != 2")

    def __repr__(self):
        return (f"PlanarDiagram({len(self)} elements, {len(self.faces)} faces, "
                f"forks={len(self.metadata.get('forks', []))})")

    def __len__(self):
        return len(self.lattice)

    @property
    def elements(self):
        return self.lattice.elements

    @property
    def covers(self):
        return self.lattice.covers

    def _walk_faces(self):
        L = self.lattice
        rot = {x: self.upper_order[x] + tuple(reversed(self.lower_order[x]))
               for x in L.elements}
        pos = {x: {y: k for k, y in enumerate(r)} for x, r in rot.items()}

        def succ(u, v):
            r = rot[v]
            return v, r[(pos[v][u] + 1) % len(r)]

        bottom = L.elements[L.bottom]
        left_chain = self._boundary(0)
        right_chain = self._boundary(-1)

        darts = [(a, b) for a, b in L.covers] + [(b, a) for a, b in L.covers]
        visited = set()
        outer_start = (bottom, self.upper_order[bottom][0]) if len(L) > 1 else None
        faces = []
        outer = None
        for start in darts:
            if start in visited:
                continue
            cycle = []
            d = start
            while d not in visited:
                visited.add(d)
                cycle.append(d[0])
                d = succ(*d)
            if d != start:
                raise NotPlanar(f"face walk from {start} did not close")
            if outer_start is not None and outer_start in _darts_of(cycle):
                outer = tuple(cycle)
                continue
            faces.append(self._parse_face(cycle))
        if len(L) == 1:
            outer = (bottom,)
        elif outer is not None:
            expected = list(left_chain) + list(reversed(right_chain))[1:-1]
            if not _same_cycle(list(outer), expected):
                raise NotPlanar(
                    "outer face is not bounded by the left and right boundary chains")
        faces.sort(key=lambda f: (self._rank(f.top), self._rank(f.bottom)))
        return faces, outer

    def _parse_face(self, cycle):
        L = self.lattice
        h = L.height
        k = len(cycle)
        idx = [L.idx(x) for x in cycle]
        tops, bottoms = [], []
        for p in range(k):
            prev_, cur, nxt = idx[p - 1], idx[p], idx[(p + 1) % k]
            if h[prev_] < h[cur] > h[nxt]:
                tops.append(p)
            elif h[prev_] > h[cur] < h[nxt]:
                bottoms.append(p)
        if len(tops) != 1 or len(bottoms) != 1:
            raise NotPlanar(
                f"face {cycle} has {len(tops)} tops and {len(bottoms)} bottoms")
        b, t = bottoms[0], tops[0]
        walk = cycle[b:] + cycle[:b]
        t_at = (t - b) % k
        # internal faces are walked counterclockwise: up the right side first
        right = tuple(walk[:t_at + 1])
        left = tuple([walk[0]] + list(reversed(walk[t_at:])))
        return Face(bottom=walk[0], top=walk[t_at], left=left, right=right)

    def _boundary(self, side):
        L = self.lattice
        x = L.elements[L.bottom]
        chain = [x]
        while self.upper_order[x]:
            x = self.upper_order[x][side]
            chain.append(x)
        return tuple(chain)

    @cached_property
    def position(self):
        """Left-first depth-first preorder rank of each element."""
        rank = {}
        stack = [self.elements[self.lattice.bottom]]
        while stack:
            x = stack.pop()
            if x in rank:
                continue
            rank[x] = len(rank)
            stack.extend(reversed(self.upper_order[x]))
        return rank

    def _rank(self, x):
        return (self.lattice.height[self.lattice.idx(x)], self.position[x])

    @cached_property
    def cells(self):
        out = []
        for f in self.faces:
            if len(f.left) == 3 and len(f.right) == 3:
                out.append(FourCell(f.bottom, f.left[1], f.right[1], f.top))
        out.sort(key=lambda c: (self._rank(c.t), self.position[c.c_l]))
        return tuple(out)

    @cached_property
    def cover_order(self):
        """Covers sorted bottom to top, left to right."""
        out = []
        for x in sorted(self.elements, key=self._rank):
            for y in self.upper_order[x]:
                out.append((x, y))
        return tuple(out)

    def left_boundary(self):
        return self._boundary(0)

    def right_boundary(self):
        return self._boundary(-1)

    def cell(self, o, c_l, c_r, t):
        key = FourCell(str(o), str(c_l), str(c_r), str(t))
        if key not in self._cell_set:
            raise CellNotFound(f"{list(key)} is not a 4-cell of this diagram")
        return key

    @cached_property
    def _cell_set(self):
        return frozenset(self.cells)

    def all_faces_are_cells(self):
        return len(self.cells) == len(self.faces)

    def mirror(self):
        """The left-right mirror image of this diagram."""
        return PlanarDiagram(
            self.lattice,
            {x: tuple(reversed(v)) for x, v in self.upper_order.items()},
            {x: tuple(reversed(v)) for x, v in self.lower_order.items()},
            self.metadata,
        )


def _darts_of(cycle):
    return {(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}


def _same_cycle(a, b):
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(a[k:] + a[:k] == b for k in range(len(a)) if a[k] == b[0])


def build_diagram(covers, upper_order, lower_order, elements=None, metadata=None):
    """Validate a lattice together with its left-to-right rotation orders.

    Raises NotALattice (and the other order errors), InconsistentRotation or
    NotPlanar.
    """
    L = build_lattice(covers, elements)
    return PlanarDiagram(L, upper_order, lower_order, metadata)


def four_cells(D: PlanarDiagram):
    """Internal faces with exactly four elements, bottom to top, left to right."""
    return list(D.cells)


def _grid_name(i, j, p, q):
    if (i, j) == (0, 0):
        return "0"
    if (i, j) == (p, q):
        return "1"
    if (p, q) == (1, 1):
        return "a" if i else "b"
    return f"{i}.{j}"


def grid(p: int, q: int) -> PlanarDiagram:
    """Product of a (p+1)-chain going up-left and a (q+1)-chain going up-right.

    Bottom and top are named ``0`` and ``1``; ``grid(1, 1)`` uses ``a`` (left)
    and ``b`` (right) for the atoms, other grids name elements ``i.j``.
    """
    if p < 1 or q < 1:
        raise ValueError("grid needs p, q >= 1")
    name = {(i, j): _grid_name(i, j, p, q) for i in range(p + 1) for j in range(q + 1)}
    covers, up, down = [], {}, {}
    for i in range(p + 1):
        for j in range(q + 1):
            x = name[i, j]
            up[x] = [name[k] for k in ((i + 1, j), (i, j + 1)) if k in name]
            down[x] = [name[k] for k in ((i, j - 1), (i - 1, j)) if k in name]
            covers.extend((x, y) for y in up[x])
    elements = [name[i, j] for s in range(p + q + 1)
                for i in range(p, -1, -1) for j in range(q + 1) if i + j == s]
    return build_diagram(covers, up, down, elements=elements,
                         metadata={"base": f"grid:{p}x{q}", "forks": []})


def corners(D: PlanarDiagram):
    """(left corners, right corners): doubly irreducible boundary elements other than 0, 1."""
    L = D.lattice

    def doubly(x):
        i = L.idx(x)
        return len(L.upper[i]) == 1 and len(L.lower[i]) == 1

    left = [x for x in D.left_boundary()[1:-1] if doubly(x)]
    right = [x for x in D.right_boundary()[1:-1] if doubly(x)]
    return left, right


def classify_shape(D: PlanarDiagram) -> ShapeClass:
    L = D.lattice
    left, right = corners(D)
    if len(left) != 1 or len(right) != 1 or not is_semimodular(L):
        return ShapeClass(Shape.NOT_RECTANGULAR)
    cl, cr = left[0], right[0]
    bottom, top = L.elements[L.bottom], L.elements[L.top]
    if L.meet(cl, cr) != bottom or L.join(cl, cr) != top:
        return ShapeClass(Shape.NOT_RECTANGULAR)
    if L.order.upper_covers(cl) == [top] and L.order.upper_covers(cr) == [top]:
        return ShapeClass(Shape.PATCH, cl, cr)
    return ShapeClass(Shape.RECTANGULAR, cl, cr)
