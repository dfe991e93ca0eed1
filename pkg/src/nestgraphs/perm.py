"""Permutations and permutation groups.

Permutations act on the right: ``p * q`` first applies ``p`` then ``q``, so
``(p * q)[i] == q[p[i]]``.  Groups carry a base and strong generating set
built by a deterministic Schreier-Sims procedure.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Sequence


class Perm(tuple):
    """A bijection of ``{0, ..., N-1}`` stored as its image sequence."""

    def __new__(cls, images: Iterable[int] = ()):
        images = tuple(images)
        n = len(images)
        seen = [False] * n
        for x in images:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise ValueError(f"not a permutation of range({n}): {images!r}")
            seen[x] = True
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return tuple.__new__(cls, range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
        images = list(range(degree))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def __invert__(self) -> Perm:
        return inverse(self)

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return inverse(self) ** (-k)
        result = Perm.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def __repr__(self) -> str:
        return f"Perm({self.cycle_string()})"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i] or self[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def first_moved(self) -> int | None:
        for i, x in enumerate(self):
            if i != x:
                return i
        return None


def _raw(images) -> Perm:
    # trusted construction, skips validation
    return tuple.__new__(Perm, images)


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Apply ``p`` then ``q``."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} != {len(q)}")
    return _raw(map(q.__getitem__, p))


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return _raw(inv)


def _as_perm(p, degree: int | None = None) -> Perm:
    if not isinstance(p, Perm):
        p = Perm(p)
    if degree is not None and len(p) != degree:
        raise ValueError(f"degree mismatch: expected {degree}, got {len(p)}")
    return p


def orbit_of(gens: Sequence[Sequence[int]], point: int) -> list[int]:
    """Orbit of ``point`` in breadth-first discovery order."""
    seen = {point}
    out = [point]
    queue = deque(out)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def orbit_partition(gens: Sequence[Sequence[int]], degree: int) -> list[list[int]]:
    """All orbits, each sorted, ordered by smallest element."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i in range(degree):
            a, b = find(i), find(g[i])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    classes: dict[int, list[int]] = {}
    for i in range(degree):
        classes.setdefault(find(i), []).append(i)
    return list(classes.values())


def _transversal(gens: Sequence[Perm], point: int, degree: int):
    """Map orbit point -> (u, u^-1) with point^u == orbit point."""
    ident = Perm.identity(degree)
    trans = {point: (ident, ident)}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        u = trans[x][0]
        for g in gens:
            y = g[x]
            if y not in trans:
                v = compose(u, g)
                trans[y] = (v, inverse(v))
                queue.append(y)
    return trans


class PermGroup:
    """A permutation group with a base and strong generating set.

    Build with :func:`bsgs_build`; instances are treated as immutable.
    ``levels[i]`` holds the strong generators fixing ``base[:i]`` pointwise
    and ``transversals[i]`` the coset representatives for ``base[i]``.
    """

    def __init__(self, degree, generators, base, levels, transversals):
        self.degree = degree
        self.generators = tuple(generators)
        self.base = tuple(base)
        self.levels = tuple(tuple(s) for s in levels)
        self.transversals = tuple(transversals)
        self._order = math.prod(len(t) for t in self.transversals)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self._order}, ngens={len(self.generators)})"

    def order(self) -> int:
        return self._order

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def is_trivial(self) -> bool:
        return self._order == 1

    def sift(self, p: Sequence[int], start: int = 0) -> tuple[Perm, int]:
        h = p
        for i in range(start, len(self.base)):
            b = h[self.base[i]]
            entry = self.transversals[i].get(b)
            if entry is None:
                return h, i
            h = compose(h, entry[1])
        return h, len(self.base)

    def contains(self, p: Sequence[int]) -> bool:
        p = _as_perm(p, self.degree)
        h, _ = self.sift(p)
        return h.is_identity()

    __contains__ = contains

    def orbit(self, point: int) -> list[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range for degree {self.degree}")
        return sorted(orbit_of(self.generators, point))

    def orbits(self) -> list[list[int]]:
        return orbit_partition(self.generators, self.degree)

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(orbit_of(self.generators, 0)) == self.degree

    def strong_generators(self) -> list[Perm]:
        return list(self.levels[0]) if self.levels else []

    def elements(self):
        """Iterate over every group element (feasible for small groups only)."""
        # every element is uniquely u_{k-1} * ... * u_1 * u_0
        def walk(level, acc):
            if level == len(self.base):
                yield acc
                return
            for u, _ in self.transversals[level].values():
                yield from walk(level + 1, compose(u, acc))

        yield from walk(0, self.identity())

    def random_element(self, rng) -> Perm:
        acc = self.identity()
        for t in self.transversals:
            u, _ = rng.choice(list(t.values()))
            acc = compose(u, acc)
        return acc

    def point_stabilizer(self, point: int) -> PermGroup:
        return self.pointwise_stabilizer([point])

    def pointwise_stabilizer(self, points: Iterable[int]) -> PermGroup:
        """Subgroup fixing every listed point, via a base with those points first."""
        points = list(dict.fromkeys(points))
        for x in points:
            if not 0 <= x < self.degree:
                raise ValueError(f"point {x} out of range for degree {self.degree}")
        if tuple(points) == self.base[: len(points)]:
            grp = self
        else:
            grp = bsgs_build(self.generators, degree=self.degree, base_prefix=points,
                             known_order=self._order)
        k = len(points)
        gens = grp.levels[k] if k < len(grp.levels) else ()
        return PermGroup(self.degree, gens, grp.base[k:], grp.levels[k:], grp.transversals[k:])

    def subgroup(self, gens: Iterable[Sequence[int]]) -> PermGroup:
        gens = [_as_perm(g, self.degree) for g in gens]
        for g in gens:
            if not self.contains(g):
                raise ValueError("generator is not an element of the group")
        return bsgs_build(gens, degree=self.degree)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(other.contains(g) for g in self.generators)


def bsgs_build(gens: Iterable[Sequence[int]], degree: int | None = None,
               base_prefix: Sequence[int] = (), known_order: int | None = None) -> PermGroup:
    """Deterministic Schreier-Sims.

    Base points beyond ``base_prefix`` are the first moved points of the
    generators that need them.  ``known_order`` allows an early exit once the
    chain reaches that order; it is never used to skip verification otherwise.
    """
    gens = [_as_perm(g) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generator list")
        degree = len(gens[0])
    for g in gens:
        if len(g) != degree:
            raise ValueError(f"degree mismatch: expected {degree}, got {len(g)}")
    gens = list(dict.fromkeys(g for g in gens if not g.is_identity()))

    base = list(base_prefix)
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(g.first_moved())
    levels = [[g for g in gens if all(g[b] == b for b in base[:i])] for i in range(len(base))]
    trans = [_transversal(levels[i], base[i], degree) for i in range(len(base))]

    def sift(h, start):
        for j in range(start, len(base)):
            entry = trans[j].get(h[base[j]])
            if entry is None:
                return h, j
            h = compose(h, entry[1])
        return h, len(base)

    i = len(base) - 1
    while i >= 0:
        if known_order is not None and math.prod(len(t) for t in trans) == known_order:
            break
        extended = False
        for beta, (u, _) in list(trans[i].items()):
            for s in levels[i]:
                gamma = s[beta]
                sch = compose(compose(u, s), trans[i][gamma][1])
                if sch.is_identity():
                    continue
                h, j = sift(sch, i + 1)
                if j == len(base) and h.is_identity():
                    continue
                if j == len(base):
                    base.append(h.first_moved())
                    levels.append([])
                    trans.append(None)
                for level in range(i + 1, j + 1):
                    levels[level].append(h)
                    trans[level] = _transversal(levels[level], base[level], degree)
                i = j
                extended = True
                break
            if extended:
                break
        if not extended:
            i -= 1

    # drop redundant trailing base points (orbit size 1) past the prefix
    keep = len(base)
    while keep > len(base_prefix) and len(trans[keep - 1]) == 1:
        keep -= 1
    base, levels, trans = base[:keep], levels[:keep], trans[:keep]
    return PermGroup(degree, gens, base, levels, trans)


def trivial_group(degree: int) -> PermGroup:
    return bsgs_build([], degree=degree)


def symmetric_group(degree: int) -> PermGroup:
    if degree < 2:
        return trivial_group(degree)
    gens = [Perm.from_cycles(degree, [(0, 1)])]
    if degree > 2:
        gens.append(Perm.from_cycles(degree, [tuple(range(degree))]))
    return bsgs_build(gens, degree=degree)


def order(g: PermGroup) -> int:
    return g.order()


def contains(g: PermGroup, p: Sequence[int]) -> bool:
    return g.contains(p)


def orbit(g: PermGroup, point: int) -> list[int]:
    return g.orbit(point)


def orbits(g: PermGroup) -> list[list[int]]:
    return g.orbits()


def point_stabilizer(g: PermGroup, point: int) -> PermGroup:
    return g.point_stabilizer(point)


def pointwise_stabilizer(g: PermGroup, points: Iterable[int]) -> PermGroup:
    return g.pointwise_stabilizer(points)


def induced_action(g: PermGroup, blocks: Sequence[Sequence[int]]) -> tuple[PermGroup, PermGroup]:
    """Action of ``g`` on an invariant partition: (image on block indices, kernel)."""
    n = g.degree
    block_of = [-1] * n
    for idx, block in enumerate(blocks):
        for x in block:
            if block_of[x] != -1:
                raise ValueError("blocks overlap")
            block_of[x] = idx
    if -1 in block_of:
        raise ValueError("blocks do not cover the point set")
    nb = len(blocks)
    image_gens = []
    combined = []
    for gen in g.generators:
        img = [None] * nb
        for idx, block in enumerate(blocks):
            targets = {block_of[gen[x]] for x in block}
            if len(targets) != 1:
                raise ValueError("partition is not invariant under the group")
            img[idx] = targets.pop()
        image_gens.append(Perm(img))
        combined.append(_raw(list(gen) + [n + b for b in img]))
    image = bsgs_build(image_gens, degree=nb)
    # kernel = stabilizer of every block point in the combined action
    big = bsgs_build(combined, degree=n + nb, base_prefix=range(n, n + nb),
                     known_order=g.order())
    kernel_gens = [_raw(h[:n]) for h in (big.levels[nb] if nb < len(big.levels) else ())]
    kernel = bsgs_build(kernel_gens, degree=n)
    if image.order() * kernel.order() != g.order():
        raise AssertionError("orbit-stabilizer failure in induced action")
    return image, kernel


def is_normal(g: PermGroup, h: PermGroup) -> bool:
    if g.degree != h.degree:
        raise ValueError("degree mismatch")
    if not h.is_subgroup_of(g):
        raise ValueError("not a subgroup")
    for y in h.generators:
        for x in g.generators:
            if not h.contains(compose(compose(inverse(x), y), x)):
                return False
    return True


def cyclic_subgroup(rho: Perm, d: int) -> PermGroup:
    m = rho.order()
    if d <= 0 or m % d:
        raise ValueError(f"{d} does not divide the order {m}")
    return bsgs_build([rho ** (m // d)], degree=len(rho))


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def cyclic_core(g: PermGroup, rho: Perm) -> tuple[int, PermGroup]:
    """Largest ``d`` such that the order-``d`` subgroup of ``<rho>`` is normal in ``g``."""
    if not g.contains(rho):
        raise ValueError("rho is not an element of the group")
    m = rho.order()
    normal = {}
    for d in divisors(m):
        normal[d] = is_normal(g, cyclic_subgroup(rho, d))
    for d, ok in normal.items():
        if ok:
            for e in divisors(d):
                if not normal[e]:
                    raise AssertionError(f"core monotonicity violated: C_{d} normal, C_{e} not")
    best = max(d for d, ok in normal.items() if ok)
    return best, cyclic_subgroup(rho, best)
