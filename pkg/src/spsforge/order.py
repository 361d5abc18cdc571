"""Finite orders and lattices.

Elements are opaque string ids. Internally every structure works on dense
integer indices ``0..n-1`` in the order the elements were supplied, with
boolean / integer numpy tables for the order relation and the lattice
operations.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import (CycleDetected, NoBounds, NotALattice,
                     NotTransitivelyReduced, TooLarge, UnknownElement)

MAX_LATTICE_SIZE = 64


def _normalize(covers, elements):
    if isinstance(covers, (set, frozenset)):
        covers = sorted(covers, key=lambda p: (str(p[0]), str(p[1])))
    pairs = []
    seen = set()
    for pair in covers:
        lo, hi = pair
        lo, hi = str(lo), str(hi)
        if (lo, hi) not in seen:
            seen.add((lo, hi))
            pairs.append((lo, hi))
    if elements is None:
        order = {}
        for lo, hi in pairs:
            order.setdefault(lo, None)
            order.setdefault(hi, None)
        elements = tuple(order)
    else:
        elements = tuple(str(x) for x in elements)
        if len(set(elements)) != len(elements):
            raise ValueError("element ids must be distinct")
        known = set(elements)
        for pair in pairs:
            for x in pair:
                if x not in known:
                    raise UnknownElement(x)
    return elements, tuple(pairs)


class FiniteOrder:
    """A finite partial order given by its cover relation.

    >>> P = FiniteOrder([("0", "a"), ("0", "b")])
    >>> P.leq_ids("0", "b"), P.leq_ids("a", "b")
    (True, False)
    """

    def __init__(self, covers=(), elements=None):
        self.elements, self.covers = _normalize(covers, elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        self.upper = [[] for _ in range(n)]
        self.lower = [[] for _ in range(n)]
        for lo, hi in self.covers:
            if lo == hi:
                raise CycleDetected(f"self-loop at {lo}")
            i, j = self.index[lo], self.index[hi]
            self.upper[i].append(j)
            self.lower[j].append(i)
        self.cover_index = tuple((self.index[a], self.index[b]) for a, b in self.covers)
        self._topo = self._toposort()
        self.leq = self._closure()
        self._check_reduced()

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"{type(self).__name__}({len(self)} elements, {len(self.covers)} covers)"

    def _toposort(self):
        n = len(self.elements)
        indeg = [len(self.lower[i]) for i in range(n)]
        ready = [i for i in range(n) if indeg[i] == 0]
        out = []
        while ready:
            i = ready.pop()
            out.append(i)
            for j in self.upper[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        if len(out) != n:
            stuck = [self.elements[i] for i in range(n) if indeg[i] > 0]
            raise CycleDetected(f"cover relation has a cycle through {stuck[:5]}")
        return out

    def _closure(self):
        n = len(self.elements)
        leq = np.zeros((n, n), dtype=bool)
        for i in reversed(self._topo):
            leq[i, i] = True
            for j in self.upper[i]:
                leq[i] |= leq[j]
        return leq

    def _check_reduced(self):
        for i, j in self.cover_index:
            between = np.flatnonzero(self.leq[i] & self.leq[:, j])
            if len(between) > 2:
                via = next(self.elements[k] for k in between if k not in (i, j))
                raise NotTransitivelyReduced((self.elements[i], self.elements[j]), via)

    def idx(self, x):
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(x) from None

    def leq_ids(self, a, b):
        return bool(self.leq[self.idx(a), self.idx(b)])

    @cached_property
    def height(self):
        """Length of the longest chain from a minimal element up to each element."""
        h = [0] * len(self.elements)
        for i in self._topo:
            for j in self.upper[i]:
                h[j] = max(h[j], h[i] + 1)
        return h

    def minimal(self):
        return [x for i, x in enumerate(self.elements) if not self.lower[i]]

    def maximal(self):
        return [x for i, x in enumerate(self.elements) if not self.upper[i]]

    def upper_covers(self, x):
        return [self.elements[j] for j in self.upper[self.idx(x)]]

    def lower_covers(self, x):
        return [self.elements[j] for j in self.lower[self.idx(x)]]


class TargetOrder(FiniteOrder):
    """A finite order with a name, used as the goal of a representability search."""

    def __init__(self, covers=(), elements=None, name="target"):
        super().__init__(covers, elements)
        self.name = name

    @classmethod
    def from_order(cls, order, name):
        return cls(order.covers, order.elements, name=name)


# The order of join-irreducibles of the eight-element distributive lattice:
# a bottom below two incomparable middles, both below two incomparable tops.
P_D8 = TargetOrder(
    [("ε", "γ"), ("ε", "δ"), ("γ", "α"), ("γ", "β"), ("δ", "α"), ("δ", "β")],
    elements=("α", "β", "γ", "δ", "ε"),
    name="d8",
)


class FiniteLattice:
    """A finite lattice with full meet and join tables.

    Use :func:`build_lattice` to construct one from a cover list.
    """

    def __init__(self, order: FiniteOrder, max_size=MAX_LATTICE_SIZE):
        n = len(order)
        if n == 0:
            raise NoBounds(message="empty order")
        if n > max_size:
            raise TooLarge(f"{n} elements exceeds the table cap of {max_size}")
        self.order = order
        bottoms = [i for i in range(n) if not order.lower[i]]
        tops = [i for i in range(n) if not order.upper[i]]
        e = order.elements
        if len(tops) > 1:
            raise NoBounds((e[tops[0]], e[tops[1]]), "join")
        if len(bottoms) > 1:
            raise NoBounds((e[bottoms[0]], e[bottoms[1]]), "meet")
        self.bottom, self.top = bottoms[0], tops[0]
        self.join_table = self._bound_table(order.leq.T, "join")
        self.meet_table = self._bound_table(order.leq, "meet")

    def _bound_table(self, leq, operation):
        # leq[c, a]: c <= a.  For the pair (a, b) the lower bounds are the c
        # with leq[c, a] & leq[c, b]; the glb is the lower bound above all
        # the others.
        n = leq.shape[0]
        li = leq.astype(np.int32)
        table = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            lb = leq[:, a][:, None] & leq                      # lb[c, b]
            count = lb.sum(axis=0)                             # |lower bounds of (a, b)|
            below = li.T @ lb.astype(np.int32)                 # below[c, b] = #lb that are <= c
            ok = lb & (below == count[None, :])
            found = ok.sum(axis=0)
            bad = np.flatnonzero(found != 1)
            if len(bad):
                b = int(bad[0])
                raise NotALattice((self.order.elements[a], self.order.elements[b]), operation)
            table[a] = ok.argmax(axis=0)
        return table

    # -- basic accessors -------------------------------------------------

    def __len__(self):
        return len(self.order)

    def __repr__(self):
        return f"FiniteLattice({len(self)} elements)"

    @property
    def elements(self):
        return self.order.elements

    @property
    def covers(self):
        return self.order.covers

    @property
    def cover_index(self):
        return self.order.cover_index

    @property
    def upper(self):
        return self.order.upper

    @property
    def lower(self):
        return self.order.lower

    @property
    def leq(self):
        return self.order.leq

    @property
    def height(self):
        return self.order.height

    def idx(self, x):
        return self.order.idx(x)

    def meet(self, a, b):
        return self.elements[self.meet_table[self.idx(a), self.idx(b)]]

    def join(self, a, b):
        return self.elements[self.join_table[self.idx(a), self.idx(b)]]

    @cached_property
    def cover_matrix(self):
        n = len(self)
        c = np.zeros((n, n), dtype=bool)
        for i, j in self.cover_index:
            c[i, j] = True
        return c

    @cached_property
    def meet_rows(self):
        return self.meet_table.tolist()

    @cached_property
    def join_rows(self):
        return self.join_table.tolist()

    @cached_property
    def join_irreducible_index(self):
        return tuple(i for i in range(len(self)) if len(self.lower[i]) == 1)

    @cached_property
    def meet_irreducible_index(self):
        return tuple(i for i in range(len(self)) if len(self.upper[i]) == 1)


def build_order(covers, elements=None):
    return FiniteOrder(covers, elements)


def build_lattice(covers, elements=None, max_size=MAX_LATTICE_SIZE):
    """Validate a cover list and return the lattice it describes.

    Raises CycleDetected, NotTransitivelyReduced, NoBounds or NotALattice.

    >>> L = build_lattice([("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    >>> L.meet("a", "b"), L.join("a", "b")
    ('0', '1')
    """
    return FiniteLattice(FiniteOrder(covers, elements), max_size=max_size)


def is_distributive(L: FiniteLattice) -> bool:
    M, J = L.meet_table, L.join_table
    n = len(L)
    a = np.arange(n)[:, None, None]
    lhs = M[a, J[None, :, :]]
    rhs = J[M[:, :, None], M[:, None, :]]
    return bool((lhs == rhs).all())


def is_semimodular(L: FiniteLattice) -> bool:
    """Upper semimodularity: a∧b ≺ a implies b ≺ a∨b."""
    M, J, C = L.meet_table, L.join_table, L.cover_matrix
    n = len(L)
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    premise = C[M, a]
    conclusion = C[b, J]
    return bool((~premise | conclusion).all())


def find_m3(L: FiniteLattice):
    """Return the atoms (a, b, c) of some M3 sublattice, or None."""
    M, J, leq = L.meet_table, L.join_table, L.leq
    incomparable = np.triu(~leq & ~leq.T, k=1)
    ai, bi = np.nonzero(incomparable)
    if not len(ai):
        return None
    m = M[ai, bi][:, None]
    j = J[ai, bi][:, None]
    cand = (M[ai] == m) & (M[bi] == m) & (J[ai] == j) & (J[bi] == j)
    hit = np.flatnonzero(cand.any(axis=1))
    if not len(hit):
        return None
    k = hit[0]
    c = int(np.flatnonzero(cand[k])[0])
    e = L.elements
    return e[ai[k]], e[bi[k]], e[c]


def is_slim(L: FiniteLattice) -> bool:
    """True iff L has no sublattice isomorphic to M3."""
    return find_m3(L) is None


def join_irreducibles(L: FiniteLattice):
    """Elements with exactly one lower cover, in element order."""
    return tuple(L.elements[i] for i in L.join_irreducible_index)


def induced_order(P, subset) -> FiniteOrder:
    """The suborder of ``P`` (an order or lattice) on ``subset``."""
    order = P.order if isinstance(P, FiniteLattice) else P
    keep = [order.idx(x) for x in subset]
    leq = order.leq[np.ix_(keep, keep)]
    strict = leq & ~np.eye(len(keep), dtype=bool)
    s = strict.astype(np.int32)
    cover = strict & ~((s @ s) > 0)
    names = [order.elements[i] for i in keep]
    covers = [(names[i], names[j]) for i, j in zip(*np.nonzero(cover))]
    return FiniteOrder(covers, names)


def _down_set_graph(P: FiniteOrder):
    below = [0] * len(P)
    for i, js in enumerate(P.lower):
        for j in js:
            below[i] |= 1 << j
    seen = {0: 0}
    frontier = [0]
    covers = []
    while frontier:
        nxt = []
        for d in frontier:
            for x in range(len(P)):
                bit = 1 << x
                if not d & bit and below[x] & ~d == 0:
                    e = d | bit
                    if e not in seen:
                        seen[e] = len(seen)
                        nxt.append(e)
                    covers.append((d, e))
        frontier = nxt
    return list(seen), covers


def count_down_sets(P: FiniteOrder) -> int:
    return len(_down_set_graph(P)[0])


def down_set_lattice(P: FiniteOrder, max_size=MAX_LATTICE_SIZE) -> FiniteLattice:
    """Birkhoff's lattice of down-sets of ``P``, ordered by inclusion.

    Element ids spell the down-set, e.g. ``{ε,γ}``; the empty set is ``{}``.
    """
    masks, covers = _down_set_graph(P)

    def name(mask):
        return "{" + ",".join(x for i, x in enumerate(P.elements) if mask >> i & 1) + "}"

    return build_lattice([(name(a), name(b)) for a, b in covers],
                         elements=[name(m) for m in masks], max_size=max_size)
