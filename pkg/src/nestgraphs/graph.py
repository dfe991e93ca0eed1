"""Finite simple undirected graphs with a fixed vertex indexing."""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from typing import Iterable, Sequence


class Graph:
    """Simple undirected graph on vertices ``0 .. vertex_count - 1``.

    Neighbourhoods are kept both as sorted tuples (``adj``) and as integer
    bit masks (``masks``); the latter make common-neighbour counts cheap.
    """

    __slots__ = ("vertex_count", "adj", "masks", "_edges")

    def __init__(self, vertex_count: int, adj: Sequence[Sequence[int]], *, _trusted: bool = False):
        if vertex_count < 0:
            raise ValueError("vertex count must be non-negative")
        self.vertex_count = vertex_count
        if _trusted:
            self.adj = tuple(tuple(a) for a in adj)
        else:
            self.adj = tuple(tuple(sorted(set(a))) for a in adj)
            if len(self.adj) != vertex_count:
                raise ValueError("adjacency length does not match vertex count")
            for v, nbrs in enumerate(self.adj):
                for w in nbrs:
                    if w == v:
                        raise ValueError(f"loop at vertex {v}")
                    if not 0 <= w < vertex_count or v not in self.adj[w]:
                        raise ValueError(f"adjacency not symmetric at {v}-{w}")
        self.masks = tuple(sum(1 << w for w in a) for a in self.adj)
        self._edges = None

    def __repr__(self) -> str:
        return f"Graph(vertices={self.vertex_count}, edges={self.edge_count})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.adj)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            self._edges = [(u, v) for u in range(self.vertex_count) for v in self.adj[u] if u < v]
        return self._edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Image graph with vertex ``v`` renamed ``perm[v]``."""
        adj = [None] * self.vertex_count
        for v, nbrs in enumerate(self.adj):
            adj[perm[v]] = sorted(perm[w] for w in nbrs)
        return Graph(self.vertex_count, adj, _trusted=True)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        if len(perm) != self.vertex_count:
            return False
        masks = self.masks
        for u, v in self.edges():
            if not masks[perm[u]] >> perm[v] & 1:
                return False
        return True

    def induced_subgraph(self, vertices: Sequence[int]) -> Graph:
        index = {v: i for i, v in enumerate(vertices)}
        adj = [sorted(index[w] for w in self.adj[v] if w in index) for v in vertices]
        return Graph(len(vertices), adj, _trusted=True)

    def to_json(self) -> str:
        return json.dumps({"vertices": self.vertex_count, "edges": [list(e) for e in self.edges()]},
                          separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> Graph:
        data = json.loads(text)
        return build(data["vertices"], [tuple(e) for e in data["edges"]])


def build(vertex_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    adj = [set() for _ in range(vertex_count)]
    for e in edges:
        u, v = e
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise ValueError(f"edge {u}-{v} out of range")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if v in adj[u]:
            raise ValueError(f"duplicate edge {u}-{v}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(vertex_count, [sorted(a) for a in adj], _trusted=True)


class Partition:
    """A partition of ``range(n)``; classes are sorted and ordered by least element."""

    __slots__ = ("classes", "class_of")

    def __init__(self, classes: Iterable[Iterable[int]], n: int | None = None):
        cls_list = sorted((tuple(sorted(c)) for c in classes), key=lambda c: c[0] if c else -1)
        if any(not c for c in cls_list):
            raise ValueError("empty class")
        total = sum(len(c) for c in cls_list)
        if n is None:
            n = total
        class_of = [-1] * n
        for i, c in enumerate(cls_list):
            for v in c:
                if not 0 <= v < n or class_of[v] != -1:
                    raise ValueError(f"vertex {v} out of range or repeated")
                class_of[v] = i
        if total != n:
            raise ValueError("classes do not cover all vertices")
        self.classes = tuple(cls_list)
        self.class_of = tuple(class_of)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.classes == other.classes

    def __hash__(self) -> int:
        return hash(self.classes)

    def __repr__(self) -> str:
        return f"Partition({[list(c) for c in self.classes]})"

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> Partition:
        groups: dict = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab, []).append(v)
        return cls(groups.values(), len(labels))

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(([v] for v in range(n)), n)

    @classmethod
    def unit(cls, n: int) -> Partition:
        return cls([range(n)], n)

    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.vertex_count:
        raise ValueError(f"vertex {v} out of range")


def common_neighbors(g: Graph, u: int, v: int) -> set[int]:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise ValueError("vertices must be distinct")
    m = g.masks[u] & g.masks[v]
    return {w for w in g.adj[u] if m >> w & 1}


def common_neighbor_count(g: Graph, u: int, v: int) -> int:
    return (g.masks[u] & g.masks[v]).bit_count()


def relation_partition(g: Graph, s: int) -> Partition:
    """Classes of ``u ~ v  <=>  u == v or |N(u) & N(v)| == s``.

    Raises ``ValueError`` if ``~`` is not transitive.
    """
    n = g.vertex_count
    masks = g.masks
    related = [{v} for v in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if (masks[u] & masks[v]).bit_count() == s:
                related[u].add(v)
                related[v].add(u)
    for u in range(n):
        for v in related[u]:
            if related[v] != related[u]:
                raise ValueError(f"relation with s={s} is not an equivalence (at {u}, {v})")
    part = Partition({frozenset(r) for r in related}, n)
    for cls in part.classes:
        for u, v in itertools.combinations(cls, 2):
            assert (masks[u] & masks[v]).bit_count() == s
    return part


def quotient(g: Graph, p: Partition) -> Graph:
    """Classes as vertices, adjacent when some edge crosses between them."""
    cof = p.class_of
    adj = [set() for _ in range(len(p))]
    for u, v in g.edges():
        a, b = cof[u], cof[v]
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return Graph(len(p), [sorted(a) for a in adj], _trusted=True)


def cover_index(g: Graph, p: Partition) -> int | None:
    """The constant ``r`` making ``g`` an r-cover of ``g / p``, or ``None``."""
    cof = p.class_of
    class_mask = [0] * len(p)
    for v in range(g.vertex_count):
        class_mask[cof[v]] |= 1 << v
    r = None
    for u, v in g.edges():
        if cof[u] == cof[v]:
            return None
        for x, y in ((u, v), (v, u)):
            cnt = (g.masks[x] & class_mask[cof[y]]).bit_count()
            if r is None:
                r = cnt
            elif cnt != r:
                return None
    return r


def is_connected(g: Graph) -> bool:
    n = g.vertex_count
    if n <= 1:
        return True
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                queue.append(y)
    return count == n


def _shortest_cycle_from(adj, root: int, bound: float) -> float:
    n = len(adj)
    dist = [-1] * n
    parent = [-1] * n
    dist[root] = 0
    queue = deque([root])
    best = bound
    while queue:
        x = queue.popleft()
        if 2 * dist[x] + 1 >= best:
            break
        for y in adj[x]:
            if dist[y] == -1:
                dist[y] = dist[x] + 1
                parent[y] = x
                queue.append(y)
            elif y != parent[x]:
                best = min(best, dist[x] + dist[y] + 1)
    return best


def girth(g: Graph, roots: Iterable[int] | None = None) -> float:
    """Length of a shortest cycle (``math.inf`` for forests).

    ``roots`` may restrict the BFS roots to one representative per orbit of a
    known automorphism group; the default uses every vertex.
    """
    best = math.inf
    for r in (range(g.vertex_count) if roots is None else roots):
        best = _shortest_cycle_from(g.adj, r, best)
    return best


def girth_from_adjacency(adj: Sequence[Sequence[int]], roots: Iterable[int]) -> float:
    """``girth`` on raw adjacency lists, skipping Graph construction."""
    best = math.inf
    for r in roots:
        best = _shortest_cycle_from(adj, r, best)
    return best


# -- named reference graphs -------------------------------------------------

def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return build(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return build(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return build(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def empty(n: int) -> Graph:
    return build(n, [])


def complement(g: Graph) -> Graph:
    n = g.vertex_count
    return build(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if not g.has_edge(u, v)])


def petersen() -> Graph:
    pairs = list(itertools.combinations(range(5), 2))
    return build(10, [(i, j) for (i, p), (j, q) in itertools.combinations(enumerate(pairs), 2)
                      if not set(p) & set(q)])


def petersen_complement() -> Graph:
    return complement(petersen())


def hamming_2_4() -> Graph:
    """Cartesian square of K4: (x, y) ~ (x', y') when they differ in one coordinate."""
    cells = [(x, y) for x in range(4) for y in range(4)]
    return build(16, [(i, j) for (i, p), (j, q) in itertools.combinations(enumerate(cells), 2)
                      if (p[0] == q[0]) != (p[1] == q[1])])


def shrikhande() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}."""
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    cells = [(x, y) for x in range(4) for y in range(4)]
    return build(16, [(i, j) for (i, p), (j, q) in itertools.combinations(enumerate(cells), 2)
                      if ((q[0] - p[0]) % 4, (q[1] - p[1]) % 4) in conn])
