"""Brute-force reference implementations used only by the tests.

Nothing here imports the congruence engine or the canonical-form code, so
agreement with those modules is a genuine cross-check.
"""
from itertools import permutations

import numpy as np

from spsforge.order import FiniteOrder, build_lattice


def set_partitions(n):
    """All set partitions of range(n) as restricted growth strings."""
    if n == 0:
        yield ()
        return
    word = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(word)
            return
        for b in range(top + 2):
            word[i] = b
            yield from rec(i + 1, max(top, b))

    yield from rec(1, 0)


def canonical_labels(word):
    """Map a block labelling to 'least element index of the block'."""
    first = {}
    return tuple(first.setdefault(b, i) for i, b in enumerate(word))


def is_congruence(L, labels):
    M, J = L.meet_table, L.join_table
    n = len(labels)
    for x in range(n):
        for y in range(x + 1, n):
            if labels[x] != labels[y]:
                continue
            for z in range(n):
                if labels[M[x, z]] != labels[M[y, z]] or labels[J[x, z]] != labels[J[y, z]]:
                    return False
    return True


_PARTITIONS = {}


def _partition_array(n):
    if n not in _PARTITIONS:
        _PARTITIONS[n] = np.array([canonical_labels(w) for w in set_partitions(n)],
                                  dtype=np.int64).reshape(-1, n)
    return _PARTITIONS[n]


def all_congruences(L):
    """Every partition of L compatible with meet and join, tested in bulk.

    A partition is a congruence iff x ~ y forces row x and row y of both
    operation tables to agree label-for-label.
    """
    P = _partition_array(len(L))
    ok = np.ones(len(P), dtype=bool)
    same = P[:, :, None] == P[:, None, :]
    for T in (np.asarray(L.meet_table), np.asarray(L.join_table)):
        rows = P[:, T]  # rows[k, x, z] = label of x op z under partition k
        differ = (rows[:, :, None, :] != rows[:, None, :, :]).any(axis=3)
        ok &= ~(same & differ).any(axis=(1, 2))
    return [tuple(int(v) for v in row) for row in P[ok]]


def least_congruence(L, a, b, congruences=None):
    """Intersection of every congruence identifying indices a and b."""
    cons = congruences if congruences is not None else all_congruences(L)
    n = len(L)
    hits = [c for c in cons if c[a] == c[b]]
    # i ~ j iff every hit collapses them
    same = [[all(c[i] == c[j] for c in hits) for j in range(n)] for i in range(n)]
    return tuple(min(j for j in range(n) if same[i][j]) for i in range(n))


def refines(a, b):
    return all(b[i] == b[r] for i, r in enumerate(a))


def _order(X):
    X = getattr(X, "lattice", X)
    return X.order if hasattr(X, "order") else X


def brute_isomorphic(X, Y):
    """Isomorphism test by backtracking over plain cover adjacency."""
    P, Q = _order(X), _order(Y)
    n = len(P)
    if n != len(Q) or len(P.covers) != len(Q.covers):
        return False
    pc, qc = set(P.cover_index), set(Q.cover_index)
    pdeg = [(len(P.upper[i]), len(P.lower[i])) for i in range(n)]
    qdeg = [(len(Q.upper[i]), len(Q.lower[i])) for i in range(n)]
    if sorted(pdeg) != sorted(qdeg):
        return False
    img = [None] * n
    used = set()

    def go(v):
        if v == n:
            return True
        for w in range(n):
            if w in used or pdeg[v] != qdeg[w]:
                continue
            if all(((u, v) in pc) == ((img[u], w) in qc) and
                   ((v, u) in pc) == ((w, img[u]) in qc) for u in range(v)):
                img[v] = w
                used.add(w)
                if go(v + 1):
                    return True
                used.discard(w)
        return False

    return go(0)


def permutation_isomorphic(X, Y):
    """Isomorphism test trying every bijection (use for n <= 8)."""
    P, Q = _order(X), _order(Y)
    n = len(P)
    if n != len(Q):
        return False
    qc = set(Q.cover_index)
    for perm in permutations(range(n)):
        if {(perm[a], perm[b]) for a, b in P.cover_index} == qc:
            return True
    return False


def relabel(X, mapping):
    """Rebuild a lattice or order with ids renamed and elements reordered."""
    P = X.order if hasattr(X, "order") else X
    covers = [(mapping[a], mapping[b]) for a, b in P.covers]
    elements = sorted((mapping[x] for x in P.elements))
    if hasattr(X, "order"):
        return build_lattice(covers, elements)
    return FiniteOrder(covers, elements)


def labeled_posets(k):
    """Every strict partial order on range(k), as a list of (i, j) relations."""
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    for mask in range(1 << len(pairs)):
        rel = {pairs[t] for t in range(len(pairs)) if mask >> t & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, l) not in rel for i, j in rel for jj, l in rel if j == jj and i != l):
            continue
        yield rel


def _covers_of(rel, k):
    return [(i, j) for i, j in rel
            if not any((i, m) in rel and (m, j) in rel for m in range(k))]


def small_lattices(max_n=6):
    """All lattices with at most max_n elements, one per isomorphism class."""
    out = []
    for n in range(1, max_n + 1):
        found = []
        if n == 1:
            found.append(build_lattice([], ["0"]))
        elif n == 2:
            found.append(build_lattice([("0", "1")]))
        else:
            k = n - 2
            for rel in labeled_posets(k):
                inner = [f"x{i}" for i in range(k)]
                covers = [(f"x{i}", f"x{j}") for i, j in _covers_of(rel, k)]
                covers += [("0", f"x{i}") for i in range(k) if not any((j, i) in rel for j in range(k))]
                covers += [(f"x{i}", "1") for i in range(k) if not any((i, j) in rel for j in range(k))]
                try:
                    L = build_lattice(covers, ["0"] + inner + ["1"])
                except ValueError:
                    continue
                if not any(brute_isomorphic(L, M) for M in found):
                    found.append(L)
        out.extend(found)
    return out


def all_orders(max_n):
    """All finite orders with at most max_n elements, up to isomorphism.

    Every order arises from a smaller one by adding a maximal element whose
    strict down-set is any down-set of the smaller order.
    """
    levels = [[FiniteOrder([], [])]]
    for n in range(1, max_n + 1):
        found = {}
        for P in levels[-1]:
            names = list(P.elements)
            new = f"p{n - 1}"
            for down in _down_sets(P):
                maxima = [x for x in down
                          if not any(P.leq_ids(x, y) and x != y for y in down)]
                covers = list(P.covers) + [(x, new) for x in maxima]
                Q = FiniteOrder(covers, names + [new])
                sig = (len(Q.covers),
                       tuple(sorted((len(Q.upper[i]), len(Q.lower[i])) for i in range(n))))
                bucket = found.setdefault(sig, [])
                if not any(brute_isomorphic(Q, R) for R in bucket):
                    bucket.append(Q)
        levels.append([Q for b in found.values() for Q in b])
    return levels


def _down_sets(P):
    n = len(P)
    out = []
    for mask in range(1 << n):
        ok = True
        for i in range(n):
            if mask >> i & 1:
                if any(not mask >> j & 1 for j in P.lower[i]):
                    ok = False
                    break
        if ok:
            out.append([P.elements[i] for i in range(n) if mask >> i & 1])
    return out


def lattices_of_size(n, orders=None):
    """Lattices with exactly n >= 3 elements: bound every (n-2)-point order."""
    orders = orders if orders is not None else all_orders(n - 2)[n - 2]
    out = []
    for P in orders:
        covers = list(P.covers)
        covers += [("0", x) for x in P.minimal()] + [(x, "1") for x in P.maximal()]
        try:
            out.append(build_lattice(covers, ["0", *P.elements, "1"]))
        except ValueError:
            continue
    return out
