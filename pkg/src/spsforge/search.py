"""Isomorph-free enumeration of SPS lattices and bounded representability search.

Lattices are generated breadth first: stratum k holds the lattices reached
from a base grid by k fork insertions, deduplicated against everything seen
so far by canonical key.  Each stratum is emitted sorted by
(size, canonical key), so the stream does not depend on the number of
worker processes.
"""
from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .canonical import canonical_key, order_isomorphic
from .congruence import check_cc1, check_cc2, ji_congruence_order
from .errors import InternalInvariantViolation, InvalidTarget, NotSPS
from .fork import SquareKind, classify_cell, insert_fork
from .io import from_document, to_document
from .order import FiniteOrder, TargetOrder, is_semimodular, is_slim
from .planar import FourCell, PlanarDiagram, grid

log = logging.getLogger(__name__)

REPORT_SCHEMA = "spsforge/search-report@1"
CHECKPOINT_SCHEMA = "spsforge/checkpoint@1"


def default_threads():
    try:
        return max(1, int(os.environ.get("SPSFORGE_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SearchBounds:
    max_forks: int = 5
    max_elements: int = 40
    grid_edge_caps: tuple = (3, 3)
    prune_on_ji_count: bool = True
    # fork cap for bases other than the 4-element square; None means max_forks
    max_forks_large: int | None = None

    def __post_init__(self):
        p, q = self.grid_edge_caps
        if self.max_forks < 0 or self.max_elements < 1 or p < 1 or q < 1:
            raise ValueError(f"invalid bounds {self}")
        if self.max_forks_large is not None and self.max_forks_large < 0:
            raise ValueError(f"invalid bounds {self}")

    def fork_cap(self, base: PlanarDiagram):
        if len(base) == 4 or self.max_forks_large is None:
            return self.max_forks
        return self.max_forks_large

    def to_document(self):
        doc = asdict(self)
        doc["grid_edge_caps"] = list(self.grid_edge_caps)
        return doc


@dataclass
class Node:
    """One emitted lattice with its provenance."""
    diagram: PlanarDiagram
    base: str
    script: tuple          # FourCells, in insertion order
    key: bytes
    ji_count: int
    cap: int               # fork cap inherited from the base

    @property
    def forks(self):
        return len(self.script)

    @property
    def size(self):
        return len(self.diagram)

    def sort_key(self):
        return (self.size, self.key)

    def to_document(self):
        return {"base": self.base,
                "script": [list(c) for c in self.script],
                "ji_count": self.ji_count,
                "cap": self.cap,
                "diagram": to_document(self.diagram)}

    @classmethod
    def from_document(cls, doc):
        D = from_document(doc["diagram"])
        return cls(D, doc["base"], tuple(FourCell(*c) for c in doc["script"]),
                   canonical_key(D.lattice), doc["ji_count"], doc["cap"])


@dataclass
class LawViolation:
    base: str
    script: tuple
    cell: FourCell
    kind: str
    before: int
    after: int


@dataclass
class EnumerationStats:
    emitted: int = 0
    insertions: int = 0
    duplicates: int = 0
    pruned: int = 0
    truncated: int = 0
    violations: list = field(default_factory=list)


def _base_name(D):
    return D.metadata.get("base", "custom")


def _check_sps(D):
    if not is_semimodular(D.lattice) or not is_slim(D.lattice):
        raise InternalInvariantViolation(
            f"fork script {D.metadata.get('forks')} produced a lattice that is not SPS")


def _expand(parent_doc, max_elements):
    """Worker: all children of one parent, each as (cell, kind, size, doc, key, ji_count)."""
    parent = from_document(parent_doc)
    out = []
    for cell in parent.cells:
        kind = classify_cell(parent, cell)
        child, _ = insert_fork(parent, cell)
        if len(child) > max_elements:
            out.append((cell, kind, len(child), None, None, None))
            continue
        _check_sps(child)
        ji, _ = ji_congruence_order(child)
        out.append((cell, kind, len(child), to_document(child),
                    canonical_key(child.lattice), len(ji)))
    return out


class Enumeration:
    """Iterator over SPS lattices obtained from ``bases`` by fork insertion.

    ``target_size`` enables pruning (when ``bounds.prune_on_ji_count``):
    a lattice with more join-irreducible congruences than the target is
    dropped together with its descendants.  ``stats`` is filled in while
    iterating; every insertion is checked against the count law
    (+1 join-irreducible congruence for a tight cell, +0 for a wide one).
    """

    def __init__(self, bases, bounds: SearchBounds, target_size=None, threads=None,
                 checkpoint=None, checkpoint_every=500, resume=False):
        self.bases = list(bases)
        self.bounds = bounds
        self.target_size = target_size
        self.threads = threads or default_threads()
        self.checkpoint = Path(checkpoint) if checkpoint else None
        self.checkpoint_every = checkpoint_every
        self.resume = resume
        self.stats = EnumerationStats()
        self.completed = False
        self._seen = {}    # canonical key -> ji count

    def _prune(self, ji_count):
        return (self.bounds.prune_on_ji_count and self.target_size is not None
                and ji_count > self.target_size)

    def _roots(self):
        roots = {}
        for D in self.bases:
            key = canonical_key(D.lattice)
            if key in self._seen:
                continue
            if len(D) > self.bounds.max_elements:
                self.stats.truncated += 1
                continue
            _check_sps(D)
            count = len(ji_congruence_order(D)[0])
            self._seen[key] = count
            if self._prune(count):
                self.stats.pruned += 1
                continue
            roots[key] = Node(D, _base_name(D), (), key, count, self.bounds.fork_cap(D))
        return sorted(roots.values(), key=Node.sort_key)

    def _record(self, parent, cell, kind, after):
        expected = parent.ji_count + (1 if kind is SquareKind.TIGHT else 0)
        if after != expected:
            v = LawViolation(parent.base, parent.script, cell, kind.value,
                             parent.ji_count, after)
            self.stats.violations.append(v)
            log.warning("count law violated: %s", v)

    def _expand_serial(self, parent, children):
        for cell in parent.diagram.cells:
            self.stats.insertions += 1
            kind = classify_cell(parent.diagram, cell)
            child, _ = insert_fork(parent.diagram, cell)
            if len(child) > self.bounds.max_elements:
                self.stats.truncated += 1
                continue
            key = canonical_key(child.lattice)
            if key in self._seen:
                self.stats.duplicates += 1
                self._record(parent, cell, kind, self._seen[key])
                continue
            _check_sps(child)
            count = len(ji_congruence_order(child)[0])
            self._seen[key] = count
            self._record(parent, cell, kind, count)
            if self._prune(count):
                self.stats.pruned += 1
                continue
            children[key] = Node(child, parent.base, parent.script + (cell,), key,
                                 count, parent.cap)

    def _merge(self, parent, results, children):
        for cell, kind, size, doc, key, count in results:
            self.stats.insertions += 1
            if doc is None:
                self.stats.truncated += 1
                continue
            if key in self._seen:
                self.stats.duplicates += 1
                self._record(parent, cell, kind, self._seen[key])
                continue
            self._seen[key] = count
            self._record(parent, cell, kind, count)
            if self._prune(count):
                self.stats.pruned += 1
                continue
            children[key] = Node(from_document(doc), parent.base,
                                 parent.script + (cell,), key, count, parent.cap)

    def _save(self, level, frontier, done, children):
        if self.checkpoint is None:
            return
        state = {
            "schema": CHECKPOINT_SCHEMA,
            "level": level,
            "done": done,
            "frontier": [n.to_document() for n in frontier],
            "children": [n.to_document() for n in children.values()],
            "seen": {k.hex(): v for k, v in sorted(self._seen.items())},
            "stats": {k: v for k, v in asdict(self.stats).items() if k != "violations"},
            "violations": len(self.stats.violations),
        }
        tmp = self.checkpoint.with_suffix(".tmp")
        tmp.write_text(json.dumps(state), encoding="utf-8")
        tmp.replace(self.checkpoint)

    def _load(self):
        state = json.loads(self.checkpoint.read_text(encoding="utf-8"))
        if state.get("schema") != CHECKPOINT_SCHEMA:
            raise ValueError(f"{self.checkpoint} is not a checkpoint")
        self._seen = {bytes.fromhex(k): v for k, v in state["seen"].items()}
        for k, v in state["stats"].items():
            setattr(self.stats, k, v)
        frontier = [Node.from_document(d) for d in state["frontier"]]
        children = {}
        for d in state["children"]:
            node = Node.from_document(d)
            children[node.key] = node
        return state["level"], frontier, state["done"], children

    def __iter__(self):
        if self.resume and self.checkpoint is not None and self.checkpoint.exists():
            level, frontier, done, children = self._load()
        else:
            frontier = self._roots()
            for node in frontier:
                self.stats.emitted += 1
                yield node
            level, done, children = 0, 0, {}
        pool = ProcessPoolExecutor(self.threads) if self.threads > 1 else None
        try:
            while frontier:
                expandable = [n for n in frontier if n.forks < n.cap]
                chunk = max(1, self.checkpoint_every)
                while done < len(expandable):
                    batch = expandable[done:done + chunk]
                    if pool is None:
                        for parent in batch:
                            self._expand_serial(parent, children)
                    else:
                        docs = [to_document(p.diagram) for p in batch]
                        limits = [self.bounds.max_elements] * len(batch)
                        for parent, results in zip(batch, pool.map(_expand, docs, limits)):
                            self._merge(parent, results, children)
                    done += len(batch)
                    self._save(level, frontier, done, children)
                frontier = sorted(children.values(), key=Node.sort_key)
                children, done, level = {}, 0, level + 1
                log.info("stratum %d: %d new lattices", level, len(frontier))
                for node in frontier:
                    self.stats.emitted += 1
                    yield node
                # saved only after the stratum is handed out, so a consumer that
                # dies mid-stratum gets it again on resume instead of losing it
                self._save(level, frontier, 0, children)
            self.completed = True
        finally:
            if pool is not None:
                pool.shutdown()


def enumerate_lattices(bases, bounds: SearchBounds, **kwargs) -> Enumeration:
    """Breadth-first, isomorph-free stream of SPS lattices grown from ``bases``."""
    return Enumeration(bases, bounds, **kwargs)


def grid_bases(bounds: SearchBounds):
    p_max, q_max = bounds.grid_edge_caps
    # mirror images collapse under canonical keys when the roots are deduplicated
    return [grid(p, q) for p in range(1, p_max + 1) for q in range(1, q_max + 1)]


@dataclass
class SearchReport:
    target: TargetOrder
    bounds: SearchBounds
    explored: int
    pruned: int
    truncated: int
    insertions: int
    law_violations: int
    witness: Node | None
    exhausted: bool
    wall_time: float

    def to_document(self, timing=True):
        witness = None
        if self.witness is not None:
            w = self.witness
            witness = {"base": w.base, "script": [list(c) for c in w.script],
                       "size": w.size, "diagram": to_document(w.diagram)}
        doc = {
            "schema": REPORT_SCHEMA,
            "target": {"name": self.target.name,
                       "elements": list(self.target.elements),
                       "covers": [list(c) for c in self.target.covers]},
            "bounds": self.bounds.to_document(),
            "explored": self.explored,
            "pruned": self.pruned,
            "truncated": self.truncated,
            "insertions": self.insertions,
            "law_violations": self.law_violations,
            "exhausted": self.exhausted,
            "verdict": ("witness found" if witness is not None else
                        "exhausted within bounds" if self.exhausted else "incomplete"),
            "witness": witness,
        }
        if timing:
            doc["wall_time_s"] = round(self.wall_time, 3)
        return doc


def search_representation(target, bounds: SearchBounds, bases=None, threads=None,
                          checkpoint=None, checkpoint_every=500, resume=False) -> SearchReport:
    """Look for an SPS lattice whose Ji(Con) order is isomorphic to ``target``.

    Only lattices within ``bounds`` are considered, so an exhausted report
    means "no witness within these bounds", nothing more.
    """
    if not isinstance(target, FiniteOrder):
        raise InvalidTarget(f"target must be a FiniteOrder, got {type(target).__name__}")
    if not isinstance(target, TargetOrder):
        target = TargetOrder.from_order(target, "target")
    start = time.perf_counter()
    enum = Enumeration(bases if bases is not None else grid_bases(bounds), bounds,
                       target_size=len(target), threads=threads, checkpoint=checkpoint,
                       checkpoint_every=checkpoint_every, resume=resume)
    witness = None
    explored = 0
    for node in enum:
        explored += 1
        if node.ji_count != len(target):
            continue
        ji, _ = ji_congruence_order(node.diagram)
        if order_isomorphic(ji.order, target) is not None:
            witness = node
            break
    s = enum.stats
    return SearchReport(target, bounds, explored, s.pruned, s.truncated, s.insertions,
                        len(s.violations), witness,
                        witness is None and enum.completed, time.perf_counter() - start)


@dataclass
class ConditionsReport:
    cc1: bool
    cc1_offender: str | None
    cc2: bool
    cc2_offender: str | None
    ji_order: FiniteOrder
    law_steps: list | None  # [(cell, kind, before, after, ok)] when a fork script is known

    @property
    def law_ok(self):
        return self.law_steps is None or all(step[-1] for step in self.law_steps)

    @property
    def ok(self):
        return self.cc1 and self.cc2 and self.law_ok


def _replay_base(D):
    base = D.metadata.get("base", "")
    if base.startswith("grid:"):
        p, q = base[5:].split("x")
        return grid(int(p), int(q))
    return None


def verify_necessary_conditions(D: PlanarDiagram) -> ConditionsReport:
    """CC1 and CC2 on Ji(Con D), plus the count law along D's recorded fork script."""
    if not is_semimodular(D.lattice) or not is_slim(D.lattice):
        raise NotSPS("diagram is not slim and semimodular")
    ji, _ = ji_congruence_order(D)
    c1, c2 = check_cc1(ji.order), check_cc2(ji.order)
    steps = None
    base = _replay_base(D)
    script = D.metadata.get("forks")
    if base is not None and script is not None:
        steps = []
        cur = base
        before = len(ji_congruence_order(cur)[0])
        for cell in script:
            cell = FourCell(*cell)
            kind = classify_cell(cur, cell)
            cur, _ = insert_fork(cur, cell)
            after = len(ji_congruence_order(cur)[0])
            expected = before + (1 if kind is SquareKind.TIGHT else 0)
            steps.append((cell, kind.value, before, after, after == expected))
            before = after
        if canonical_key(cur.lattice) != canonical_key(D.lattice):
            raise InternalInvariantViolation("replaying the fork script gave a different lattice")
    return ConditionsReport(c1.ok, c1.offender, c2.ok, c2.offender, ji.order, steps)
