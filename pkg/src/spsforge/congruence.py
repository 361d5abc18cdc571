"""Congruences of finite lattices.

Principal congruences come from a union-find closure.  Every time two
elements x, y land in one class, the pairs (x∧z, y∧z) and (x∨z, y∨z) are
queued.  It is enough to let z range over meet-irreducibles for ∧ and over
join-irreducibles for ∨, since every translation x ↦ x∧z is a composite of
translations by meet-irreducibles (dually for ∨).
"""
from __future__ import annotations

from typing import NamedTuple

from .errors import CellNotFound
from .order import FiniteLattice, FiniteOrder, count_down_sets
from .planar import FourCell, PlanarDiagram

GREEK = "αβγδεζηθικλμνξπρστυφχψω"


def color_name(k):
    return GREEK[k] if k < len(GREEK) else f"c{k}"


class Congruence:
    """A congruence of ``lattice``, stored as one representative per element.

    ``labels[i]`` is the least element index in the class of element ``i``.
    """

    __slots__ = ("lattice", "labels")

    def __init__(self, lattice: FiniteLattice, labels):
        self.lattice = lattice
        self.labels = tuple(labels)

    def __repr__(self):
        body = " | ".join(",".join(c) for c in self.classes)
        return f"Congruence({body})"

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __le__(self, other):
        """Refinement: every class of self lies inside a class of other."""
        lab = other.labels
        return all(lab[i] == lab[r] for i, r in enumerate(self.labels))

    def __lt__(self, other):
        return self != other and self <= other

    @property
    def classes(self):
        groups = {}
        for i, r in enumerate(self.labels):
            groups.setdefault(r, []).append(self.lattice.elements[i])
        return tuple(tuple(g) for _, g in sorted(groups.items()))

    def collapses(self, a, b):
        L = self.lattice
        return self.labels[L.idx(a)] == self.labels[L.idx(b)]

    def is_identity(self):
        return all(r == i for i, r in enumerate(self.labels))

    def is_compatible(self):
        """Exhaustive check that the partition respects ∧ and ∨."""
        lab = self.labels
        M, J = self.lattice.meet_rows, self.lattice.join_rows
        n = len(lab)
        for x in range(n):
            y = lab[x]
            if y == x:
                continue
            for z in range(n):
                if lab[M[x][z]] != lab[M[y][z]] or lab[J[x][z]] != lab[J[y][z]]:
                    return False
        return True


def _closure(L: FiniteLattice, pairs):
    n = len(L)
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    M, J = L.meet_rows, L.join_rows
    mi, ji = L.meet_irreducible_index, L.join_irreducible_index
    work = list(pairs)
    while work:
        x, y = work.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        Mx, My, Jx, Jy = M[x], M[y], J[x], J[y]
        work.extend((Mx[z], My[z]) for z in mi)
        work.extend((Jx[z], Jy[z]) for z in ji)
    # the union above always keeps the smaller root, so roots are class minima
    return [find(i) for i in range(n)]


def principal_congruence(L: FiniteLattice, a, b) -> Congruence:
    """con(a, b): the least congruence of L collapsing a and b."""
    return Congruence(L, _closure(L, [(L.idx(a), L.idx(b))]))


def congruence_generated(L: FiniteLattice, pairs) -> Congruence:
    return Congruence(L, _closure(L, [(L.idx(a), L.idx(b)) for a, b in pairs]))


class EdgeColoring(dict):
    """Maps each cover pair (lower, upper) to the name of con(lower, upper)."""


class JiOrder:
    """The join-irreducible congruences of a lattice, ordered by refinement.

    ``names[k]`` is the colour of ``members[k]``; ``order`` is the
    FiniteOrder on those colour names.  ``generators[name]`` is the first
    cover (in the deterministic cover order) generating the member.
    """

    def __init__(self, lattice, members, names, generators):
        self.lattice = lattice
        self.members = tuple(members)
        self.names = tuple(names)
        self.generators = dict(generators)
        k = len(self.members)
        below = [[i != j and self.members[i] <= self.members[j] for j in range(k)]
                 for i in range(k)]
        covers = [(self.names[i], self.names[j])
                  for i in range(k) for j in range(k)
                  if below[i][j] and not any(below[i][m] and below[m][j] for m in range(k))]
        self.order = FiniteOrder(covers, self.names)

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        rel = ", ".join(f"{a}<{b}" for a, b in self.order.covers) or "antichain"
        return f"JiOrder({', '.join(self.names)}; {rel})"

    def __getitem__(self, name):
        return self.members[self.names.index(name)]

    @property
    def congruence_count(self):
        """|Con L|, the number of down-sets of this order."""
        return count_down_sets(self.order)


def _cover_sequence(X):
    if isinstance(X, PlanarDiagram):
        return X.lattice, list(X.cover_order)
    L = X
    h = L.height
    order = sorted(L.cover_index, key=lambda p: (h[p[0]], p[0], p[1]))
    return L, [(L.elements[a], L.elements[b]) for a, b in order]


def ji_congruence_order(X):
    """Compute Ji(Con L) and the edge colouring for a lattice or diagram.

    Colours are Greek letters handed out in order of first appearance along
    the cover order (bottom to top, left to right for diagrams).
    """
    L, covers = _cover_sequence(X)
    seen = {}
    members, names, generators = [], [], {}
    coloring = EdgeColoring()
    for a, b in covers:
        theta = _closure(L, [(L.idx(a), L.idx(b))])
        key = tuple(theta)
        name = seen.get(key)
        if name is None:
            name = color_name(len(members))
            seen[key] = name
            members.append(Congruence(L, key))
            names.append(name)
            generators[name] = (a, b)
        coloring[(a, b)] = name
    return JiOrder(L, members, names, generators), coloring


def square_palette(D: PlanarDiagram, S: FourCell, coloring: EdgeColoring):
    """The set of colours on the four edges of a 4-cell."""
    S = FourCell(*S)
    if S not in D.cells:
        raise CellNotFound(f"{list(S)} is not a 4-cell of this diagram")
    edges = [(S.o, S.c_l), (S.o, S.c_r), (S.c_l, S.t), (S.c_r, S.t)]
    return frozenset(coloring[e] for e in edges)


class CheckResult(NamedTuple):
    ok: bool
    offender: str | None = None

    def __bool__(self):
        return self.ok


def check_cc1(P: FiniteOrder) -> CheckResult:
    """Every element is covered by at most two elements."""
    for i, x in enumerate(P.elements):
        if len(P.upper[i]) > 2:
            return CheckResult(False, x)
    return CheckResult(True)


def check_cc2(P: FiniteOrder) -> CheckResult:
    """Every nonmaximal element lies below at least two maximal elements."""
    maximal = [j for j in range(len(P)) if not P.upper[j]]
    for i, x in enumerate(P.elements):
        if P.upper[i] and sum(bool(P.leq[i, m]) for m in maximal) < 2:
            return CheckResult(False, x)
    return CheckResult(True)
