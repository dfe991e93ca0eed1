"""Automorphism groups and canonical forms by individualization-refinement.

One search tree serves both purposes.  Leaves are discrete ordered
partitions; two leaves inducing the same relabelled graph differ by an
automorphism, and the canonical leaf is the one with the largest
(trace, adjacency rows) key.  Found automorphisms prune the tree through
orbits of the generators that fix the current individualized vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .graph import Graph, Partition
from .perm import Perm, PermGroup, _raw, bsgs_build, inverse, orbit_partition


def _refine(adj, cells, cell_of, splitters, trace):
    """Refine ``cells`` in place to an equitable ordered partition.

    New sub-cells are appended in increasing neighbour-count order; the
    operations depend only on cell indices and counts, so the result and
    ``trace`` are invariant under relabelling.
    """
    n = len(cell_of)
    queue = deque(splitters)
    queued = set(splitters)
    while queue and len(cells) < n:
        w = queue.popleft()
        queued.discard(w)
        count = {}
        for x in cells[w]:
            for y in adj[x]:
                count[y] = count.get(y, 0) + 1
        touched = sorted({cell_of[y] for y in count})
        for ci in touched:
            cell = cells[ci]
            if len(cell) == 1:
                continue
            groups = {}
            for v in cell:
                groups.setdefault(count.get(v, 0), []).append(v)
            if len(groups) == 1:
                continue
            keys = sorted(groups)
            trace.append((w, ci, tuple((k, len(groups[k])) for k in keys)))
            cells[ci] = groups[keys[0]]
            for k in keys[1:]:
                idx = len(cells)
                cells.append(groups[k])
                for v in groups[k]:
                    cell_of[v] = idx
                queue.append(idx)
                queued.add(idx)
            if ci not in queued:
                queue.append(ci)
                queued.add(ci)
    trace.append((len(cells),))


def _initial_cells(g: Graph, colors=None, boost=True):
    masks = g.masks
    keys = []
    for v in range(g.vertex_count):
        key = () if colors is None else (colors[v],)
        if boost:
            key += (tuple(sorted((masks[v] & masks[w]).bit_count() for w in g.adj[v])),)
        keys.append(key)
    order = sorted(set(keys))
    index = {k: i for i, k in enumerate(order)}
    cells = [[] for _ in order]
    cell_of = [0] * g.vertex_count
    for v, k in enumerate(keys):
        cells[index[k]].append(v)
        cell_of[v] = index[k]
    return cells, cell_of, tuple(order)


def refine(g: Graph, p: Partition | None = None) -> Partition:
    """Coarsest equitable refinement of ``p`` (unit partition by default)."""
    if p is None:
        p = Partition.unit(g.vertex_count)
    cells = [list(c) for c in p.classes]
    cell_of = list(p.class_of)
    _refine(g.adj, cells, cell_of, list(range(len(cells))), [])
    return Partition(cells, g.vertex_count)


def is_equitable(g: Graph, p: Partition) -> bool:
    cof = p.class_of
    for cls in p.classes:
        sig = None
        for v in cls:
            counts = [0] * len(p)
            for w in g.adj[v]:
                counts[cof[w]] += 1
            if sig is None:
                sig = counts
            elif counts != sig:
                return False
    return True


@dataclass(frozen=True)
class Certificate:
    """Canonical form: vertex count header plus the bit-packed adjacency matrix
    of the canonically relabelled graph; ``labeling[v]`` is the canonical
    position of vertex ``v``."""

    data: bytes
    labeling: Perm

    def hex(self) -> str:
        return self.data.hex()

    def __lt__(self, other: Certificate) -> bool:
        return self.data < other.data


def _pack(n: int, rows: Sequence[int]) -> bytes:
    bits = "".join(format(r, f"0{n}b")[::-1] for r in rows) if n else ""
    nbytes = (len(bits) + 7) // 8
    bits = bits.ljust(nbytes * 8, "0")
    body = int(bits, 2).to_bytes(nbytes, "big") if bits else b""
    return n.to_bytes(2, "big") + body


class _Search:
    def __init__(self, g: Graph, colors=None, boost=True):
        self.g = g
        self.adj = g.adj
        self.n = g.vertex_count
        self.colors = colors
        self.boost = boost
        self.gens: list[Perm] = []
        self.first = None  # (traces, rows, lab, seq)
        self.best = None
        self._orbit_cache = {}

    def run(self):
        cells, cell_of, color_key = _initial_cells(self.g, self.colors, self.boost)
        trace = [color_key]
        _refine(self.adj, cells, cell_of, list(range(len(cells))), trace)
        self._visit(cells, cell_of, [tuple(trace)], [])

    def _orbit_ids(self, prefix):
        key = (len(self.gens), tuple(prefix))
        ids = self._orbit_cache.get(key)
        if ids is None:
            fixing = [g for g in self.gens if all(g[x] == x for x in prefix)]
            ids = [0] * self.n
            for i, orb in enumerate(orbit_partition(fixing, self.n)):
                for v in orb:
                    ids[v] = i
            self._orbit_cache[key] = ids
        return ids

    def _leaf(self, cells, traces, seq):
        lab = [c[0] for c in cells]
        pos = [0] * self.n
        for i, v in enumerate(lab):
            pos[v] = i
        rows = []
        for v in lab:
            r = 0
            for w in self.adj[v]:
                r |= 1 << pos[w]
            rows.append(r)
        rows = tuple(rows)
        if self.first is None:
            self.first = self.best = (traces, rows, lab, seq)
            return None
        for ref in (self.first, self.best):
            if rows == ref[1]:
                gamma = [0] * self.n
                for a, b in zip(ref[2], lab):
                    gamma[a] = b
                gamma = _raw(gamma)
                if not self.g.is_automorphism(gamma):
                    raise AssertionError("search produced a non-automorphism")
                self.gens.append(gamma)
                c = 0
                for a, b in zip(ref[3], seq):
                    if a != b:
                        break
                    c += 1
                return c
        best = self.best
        if (traces, rows) > (best[0], best[1]):
            self.best = (traces, rows, lab, seq)
        return None

    def _visit(self, cells, cell_of, traces, seq):
        if len(cells) == self.n:
            return self._leaf(cells, traces, seq)
        level = len(seq)
        target = None
        for c in cells:
            if len(c) > 1 and (target is None or len(c) < len(target)):
                target = c
        ti = cells.index(target)
        explored = []
        for w in sorted(target):
            if self.first is not None and explored:
                ids = self._orbit_ids(seq)
                if ids[w] in {ids[x] for x in explored}:
                    continue
            explored.append(w)
            child = [list(c) for c in cells]
            child_of = list(cell_of)
            child[ti].remove(w)
            child.append([w])
            child_of[w] = len(child) - 1
            trace = [(ti,)]
            _refine(self.adj, child, child_of, [len(child) - 1], trace)
            new_traces = traces + [tuple(trace)]
            if self.first is not None:
                depth = len(new_traces)
                if new_traces != self.first[0][:depth] and new_traces < self.best[0][:depth]:
                    continue
            r = self._visit(child, child_of, new_traces, seq + [w])
            if r is not None and r < level:
                return r
        return None


@dataclass
class SearchResult:
    generators: list
    certificate: Certificate
    degree: int

    @property
    def group(self) -> PermGroup:
        return bsgs_build(self.generators, degree=self.degree)


def search(g: Graph, colors=None) -> SearchResult:
    """Run the shared search; returns automorphism generators and the certificate."""
    n = g.vertex_count
    if n == 0:
        return SearchResult([], Certificate(_pack(0, ()), Perm()), 0)
    s = _Search(g, colors)
    s.run()
    traces, rows, lab, _ = s.best
    labeling = [0] * n
    for i, v in enumerate(lab):
        labeling[v] = i
    cert = Certificate(_pack(n, rows), Perm(labeling))
    gens = list(dict.fromkeys(s.gens))
    for gen in gens:
        if not g.is_automorphism(gen):
            raise AssertionError("generator does not preserve edges")
    return SearchResult(gens, cert, n)


@lru_cache(maxsize=256)
def _cached_search(g: Graph) -> SearchResult:
    return search(g)


def automorphism_group(g: Graph) -> PermGroup:
    res = _cached_search(g)
    return bsgs_build(res.generators, degree=g.vertex_count)


def canonical_form(g: Graph) -> Certificate:
    return _cached_search(g).certificate


def are_isomorphic(g1: Graph, g2: Graph) -> Perm | None:
    """An isomorphism ``g1 -> g2`` as a vertex map, or ``None``."""
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return None
    c1, c2 = canonical_form(g1), canonical_form(g2)
    if c1.data != c2.data:
        return None
    witness = Perm(c1.labeling * inverse(c2.labeling))
    for u, v in g1.edges():
        if not g2.has_edge(witness[u], witness[v]):
            raise AssertionError("canonical forms agree but witness is not an isomorphism")
    return witness
