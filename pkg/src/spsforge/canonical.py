"""Canonical forms and isomorphism for finite orders and lattices.

Both work on the cover digraph.  Vertices start coloured by
(height, up-degree, down-degree); colours are refined by the multisets of
upper and lower neighbour colours until stable, and remaining ties are
broken by individualising each vertex of the first non-singleton cell in
turn.  The canonical form is the least cover list over all leaves of that
search tree, which makes keys equal exactly for isomorphic inputs.
"""
from __future__ import annotations

from array import array

from .order import FiniteLattice, FiniteOrder


def _as_order(x) -> FiniteOrder:
    """Accept an order, a lattice, or anything carrying ``.lattice`` (a diagram)."""
    x = getattr(x, "lattice", x)
    return x.order if isinstance(x, FiniteLattice) else x


def _relabel(signatures):
    ranks = {s: r for r, s in enumerate(sorted(set(signatures)))}
    return [ranks[s] for s in signatures]


def _refine(colors, upper, lower):
    k = len(set(colors))
    while True:
        sig = [(colors[v],
                tuple(sorted(colors[u] for u in upper[v])),
                tuple(sorted(colors[u] for u in lower[v])))
               for v in range(len(colors))]
        colors = _relabel(sig)
        k2 = len(set(colors))
        if k2 == k:
            return colors
        k = k2


def _initial_colors(order: FiniteOrder):
    h = order.height
    return _relabel([(h[v], len(order.upper[v]), len(order.lower[v]))
                     for v in range(len(order))])


def _search(colors, upper, lower, covers, best):
    n = len(colors)
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    if len(cells) == n:
        code = tuple(sorted((colors[a], colors[b]) for a, b in covers))
        if best[0] is None or code < best[0]:
            best[0] = code
            best[1] = list(colors)
        return
    target = min(c for c, vs in cells.items() if len(vs) > 1)
    for v in cells[target]:
        split = [2 * c + 1 for c in colors]
        split[v] = 2 * target
        _search(_refine(_relabel(split), upper, lower), upper, lower, covers, best)


def canonical_labeling(x):
    """Return (code, labels): the canonical cover list and each vertex's label."""
    order = _as_order(x)
    colors = _refine(_initial_colors(order), order.upper, order.lower)
    best = [None, None]
    _search(colors, order.upper, order.lower, order.cover_index, best)
    return best[0], best[1]


def canonical_key(x) -> bytes:
    """Isomorphism-invariant byte string for an order or lattice.

    >>> from spsforge.order import build_lattice
    >>> a = build_lattice([("0", "x"), ("x", "1")])
    >>> b = build_lattice([("bot", "mid"), ("mid", "top")])
    >>> canonical_key(a) == canonical_key(b)
    True
    """
    order = _as_order(x)
    code, _ = canonical_labeling(order)
    data = array("H", [len(order), len(code)])
    for a, b in code:
        data.append(a)
        data.append(b)
    return data.tobytes()


def order_isomorphic(P, Q):
    """Return an isomorphism P -> Q as a dict of ids, or None.

    The witness is deterministic: elements of P are mapped in their own
    order, each to the first admissible element of Q.
    """
    P, Q = _as_order(P), _as_order(Q)
    n = len(P)
    if n != len(Q) or len(P.covers) != len(Q.covers):
        return None
    # Refine on the disjoint union so colours are comparable across P and Q.
    upper = [list(u) for u in P.upper] + [[j + n for j in u] for u in Q.upper]
    lower = [list(u) for u in P.lower] + [[j + n for j in u] for u in Q.lower]
    hp, hq = P.height, Q.height
    init = [(hp[v], len(P.upper[v]), len(P.lower[v])) for v in range(n)]
    init += [(hq[v], len(Q.upper[v]), len(Q.lower[v])) for v in range(n)]
    colors = _refine(_relabel(init), upper, lower)
    if sorted(colors[:n]) != sorted(colors[n:]):
        return None

    pcov = set(P.cover_index)
    qcov = set(Q.cover_index)
    image = [-1] * n
    used = [False] * n

    def consistent(v, w):
        for u in range(v):
            iu = image[u]
            if ((u, v) in pcov) != ((iu, w) in qcov):
                return False
            if ((v, u) in pcov) != ((w, iu) in qcov):
                return False
        return True

    def extend(v):
        if v == n:
            return True
        for w in range(n):
            if not used[w] and colors[n + w] == colors[v] and consistent(v, w):
                image[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
        image[v] = -1
        return False

    if not extend(0):
        return None
    return {P.elements[v]: Q.elements[image[v]] for v in range(n)}
