"""Transitivity predicates, cores, and block systems."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import nest
from .aut import automorphism_group
from .graph import Graph, Partition
from .perm import Perm, PermGroup, cyclic_core, cyclic_subgroup, induced_action


class NotAutomorphismError(ValueError):
    pass


class IntransitiveError(ValueError):
    pass


def _check_group(g: Graph, grp: PermGroup) -> None:
    if grp.degree != g.vertex_count:
        raise ValueError("group degree does not match the graph")
    for gen in grp.generators:
        if not g.is_automorphism(gen):
            raise NotAutomorphismError(f"generator {gen!r} does not preserve edges")


def _closure_size(seed, gens, act) -> int:
    seen = {seed}
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        for gen in gens:
            y = act(x, gen)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


def is_vertex_transitive(g: Graph, grp: PermGroup) -> bool:
    _check_group(g, grp)
    return grp.is_transitive()


def edge_orbit_size(g: Graph, grp: PermGroup) -> int:
    edges = g.edges()
    if not edges:
        return 0

    def act(e, gen):
        a, b = gen[e[0]], gen[e[1]]
        return (a, b) if a < b else (b, a)

    return _closure_size(edges[0], grp.generators, act)


def is_edge_transitive(g: Graph, grp: PermGroup) -> bool:
    _check_group(g, grp)
    return edge_orbit_size(g, grp) == g.edge_count


def is_arc_transitive(g: Graph, grp: PermGroup) -> bool:
    _check_group(g, grp)
    edges = g.edges()
    if not edges:
        return False
    size = _closure_size(edges[0], grp.generators, lambda e, gen: (gen[e[0]], gen[e[1]]))
    return size == 2 * g.edge_count


def core_order(p, grp: PermGroup | None = None) -> int:
    p = nest.as_params(p)
    if grp is None:
        grp = automorphism_group(nest.build(p))
    d, _ = cyclic_core(grp, nest.rho(p))
    return d


def is_core_free(g: Graph | None, p) -> tuple[bool, int]:
    """(core-free?, order of the core of <rho> in Aut)."""
    p = nest.as_params(p)
    if g is None:
        g = nest.build(p)
    d = core_order(p, automorphism_group(g))
    return d == 1, d


def minimal_block_partition(grp: PermGroup, alpha: int, beta: int) -> list[int]:
    """Union-find labels of the finest block system joining ``alpha`` and ``beta``."""
    n = grp.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque()

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        queue.append((rx, ry))

    union(alpha, beta)
    while queue:
        x, y = queue.popleft()
        for gen in grp.generators:
            union(gen[x], gen[y])
    return [find(x) for x in range(n)]


def _require_transitive(grp: PermGroup) -> None:
    if not grp.is_transitive():
        raise IntransitiveError("group is not transitive")


def minimal_block_through(grp: PermGroup, alpha: int, beta: int) -> list[int]:
    """Smallest block containing both points."""
    _require_transitive(grp)
    if alpha == beta:
        raise ValueError("points must be distinct")
    labels = minimal_block_partition(grp, alpha, beta)
    return [x for x in range(grp.degree) if labels[x] == labels[alpha]]


@dataclass(frozen=True)
class BlockSystemInfo:
    partition: Partition
    block_size: int
    cyclic: bool | None
    normal: bool
    kernel_order: int
    kernel: PermGroup | None = None

    def to_dict(self) -> dict:
        return {
            "blocks": [list(b) for b in self.partition.classes],
            "block_size": self.block_size,
            "cyclic": self.cyclic,
            "normal": self.normal,
            "kernel_order": self.kernel_order,
        }


def is_cyclic_system(partition: Partition, n: int) -> bool:
    """Every block lies inside {u_i} or inside {v_i} (Nest indexing, 2n points)."""
    return all(all(x < n for x in b) or all(x >= n for x in b) for b in partition.classes)


def describe_block_system(grp: PermGroup, partition: Partition, nest_n: int | None = None) -> BlockSystemInfo:
    image, kernel = induced_action(grp, partition.classes)
    kernel_orbits = Partition(kernel.orbits(), grp.degree)
    normal = kernel_orbits == partition
    sizes = set(partition.class_sizes())
    if len(sizes) != 1:
        raise AssertionError("block system with unequal block sizes")
    cyclic = None if nest_n is None else is_cyclic_system(partition, nest_n)
    return BlockSystemInfo(partition, sizes.pop(), cyclic, normal, kernel.order(), kernel)


def minimal_block_systems(grp: PermGroup, base_point: int = 0,
                          nest_n: int | None = None) -> list[BlockSystemInfo]:
    """All minimal block systems, ordered by block size then blocks.

    ``nest_n`` enables the cyclic flag for Nest-indexed point sets.
    """
    _require_transitive(grp)
    n = grp.degree
    candidates = {}
    for beta in range(n):
        if beta == base_point:
            continue
        labels = minimal_block_partition(grp, base_point, beta)
        block = frozenset(x for x in range(n) if labels[x] == labels[base_point])
        if len(block) < n and block not in candidates:
            candidates[block] = labels
    minimal = [b for b in candidates if not any(o < b for o in candidates)]
    out = []
    for block in minimal:
        part = Partition.from_labels(candidates[block])
        out.append(describe_block_system(grp, part, nest_n))
    out.sort(key=lambda info: (info.block_size, info.partition.classes))
    return out


def is_primitive(grp: PermGroup) -> bool:
    _require_transitive(grp)
    n = grp.degree
    for beta in range(1, n):
        labels = minimal_block_partition(grp, 0, beta)
        if any(labels[x] != labels[0] for x in range(n)):
            return False
    return True


def lucchini_check(grp: PermGroup, rho: Perm) -> bool:
    """|<rho>|^2 < |G| whenever <rho> is a core-free proper subgroup."""
    d, _ = cyclic_core(grp, rho)
    m = rho.order()
    if d != 1 or m == grp.order():
        return True
    return m * m < grp.order()


def orbit_system(p, d: int) -> Partition:
    """Orbits of the order-d subgroup of <rho> on Nest(p)."""
    p = nest.as_params(p)
    sub = cyclic_subgroup(nest.rho(p), d)
    return Partition(sub.orbits(), 2 * p.n)
