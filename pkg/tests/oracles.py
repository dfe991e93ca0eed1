"""Brute-force oracles, deliberately independent of the package's search and BSGS code."""

from collections import deque
import itertools


def adjacency_sets(graph):
    return [set(a) for a in graph.adj]


def naive_automorphisms(graph, limit=None):
    """All adjacency-preserving bijections by plain backtracking.

    Vertices are assigned in BFS order; pruning uses only degrees and
    adjacency to already assigned vertices.
    """
    adj = adjacency_sets(graph)
    n = len(adj)
    order = []
    seen = set()
    for s in range(n):
        if s in seen:
            continue
        seen.add(s)
        q = deque([s])
        while q:
            x = q.popleft()
            order.append(x)
            for y in sorted(adj[x]):
                if y not in seen:
                    seen.add(y)
                    q.append(y)
    deg = [len(a) for a in adj]
    image = [None] * n
    used = [False] * n
    found = []

    def extend(pos):
        if limit is not None and len(found) >= limit:
            return
        if pos == n:
            found.append(tuple(image))
            return
        v = order[pos]
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            ok = True
            for u in order[:pos]:
                if (u in adj[v]) != (image[u] in adj[w]):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(pos + 1)
                used[w] = False
                image[v] = None

    extend(0)
    return found


def count_automorphisms_by_filtering(graph):
    """Exhaustive filter over all n! permutations (tiny graphs only)."""
    adj = adjacency_sets(graph)
    n = len(adj)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return sum(1 for p in itertools.permutations(range(n))
               if all(p[v] in adj[p[u]] for u, v in edges))


def group_closure(gens, degree):
    """Every element of <gens>, by breadth-first multiplication."""
    ident = tuple(range(degree))
    elems = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[i] for i in x)  # x then g
            if y not in elems:
                elems.add(y)
                queue.append(y)
    return elems


def naive_isomorphic(g1, g2):
    """Backtracking isomorphism test returning one witness or None."""
    a1, a2 = adjacency_sets(g1), adjacency_sets(g2)
    n = len(a1)
    if n != len(a2):
        return None
    image = [None] * n
    used = [False] * n

    def extend(v):
        if v == n:
            return True
        for w in range(n):
            if used[w] or len(a1[v]) != len(a2[w]):
                continue
            if all((u in a1[v]) == (image[u] in a2[w]) for u in range(v)):
                image[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
        return False

    return tuple(image) if extend(0) else None


def brute_girth(graph):
    """Shortest cycle by enumerating simple cycles through DFS (small graphs)."""
    adj = adjacency_sets(graph)
    n = len(adj)
    best = float("inf")

    def dfs(start, v, depth, visited):
        nonlocal best
        if depth + 1 >= best:
            return
        for w in adj[v]:
            if w == start and depth >= 2:
                best = min(best, depth + 1)
            elif w > start and w not in visited:
                visited.add(w)
                dfs(start, w, depth + 1, visited)
                visited.discard(w)

    for s in range(n):
        dfs(s, s, 0, {s})
    return best
