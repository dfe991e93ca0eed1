"""The Nest graph family Nest(n; a, b, c; k).

Vertex indexing is fixed: ``u_i -> i`` and ``v_i -> n + i``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .perm import Perm


class NestParamError(ValueError):
    pass


class NonZeroError(NestParamError):
    pass


class NotDistinctError(NestParamError):
    pass


class HalfHubError(NestParamError):
    pass


class ModulusError(NestParamError):
    pass


@dataclass(frozen=True, order=True)
class NestParams:
    n: int
    a: int
    b: int
    c: int
    k: int

    def __str__(self) -> str:
        return f"{self.n},{self.a},{self.b},{self.c},{self.k}"

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.n, self.a, self.b, self.c, self.k)

    @property
    def m(self) -> int:
        if self.n % 2:
            raise ValueError("n is odd")
        return self.n // 2


def validate(n: int, a: int, b: int, c: int, k: int) -> NestParams:
    if n < 4:
        raise ModulusError(f"n must be at least 4, got {n}")
    a, b, c, k = a % n, b % n, c % n, k % n
    if 0 in (a, b, c, k):
        raise NonZeroError(f"offsets must be non-zero mod {n}: {(a, b, c, k)}")
    if len({a, b, c}) != 3:
        raise NotDistinctError(f"spoke offsets not pairwise distinct: {(a, b, c)}")
    if n % 2 == 0 and k == n // 2:
        raise HalfHubError(f"k must differ from n/2 = {n // 2}")
    return NestParams(n, a, b, c, k)


def parse_params(text: str) -> NestParams:
    parts = [int(x) for x in text.replace(";", ",").split(",") if x.strip()]
    if len(parts) != 5:
        raise NestParamError(f"expected n,a,b,c,k, got {text!r}")
    return validate(*parts)


def as_params(p) -> NestParams:
    if isinstance(p, NestParams):
        return p
    if isinstance(p, str):
        return parse_params(p)
    return validate(*p)


def spoke_set(p: NestParams) -> tuple[int, int, int, int]:
    return (0, p.a, p.b, p.c)


def adjacency_masks(p: NestParams) -> list[int]:
    """Neighbourhood bit masks of Nest(p), without building a Graph."""
    n, k = p.n, p.k
    spokes = spoke_set(p)
    masks = [0] * (2 * n)
    for i in range(n):
        mu = (1 << (i + 1) % n) | (1 << (i - 1) % n)
        for s in spokes:
            mu |= 1 << (n + (i + s) % n)
        masks[i] = mu
        mv = (1 << (n + (i + k) % n)) | (1 << (n + (i - k) % n))
        for s in spokes:
            mv |= 1 << (i - s) % n
        masks[n + i] = mv
    return masks


def adjacency_lists(p) -> list[list[int]]:
    p = as_params(p)
    n, k = p.n, p.k
    spokes = spoke_set(p)
    adj = [sorted({(i + 1) % n, (i - 1) % n} | {n + (i + s) % n for s in spokes})
           for i in range(n)]
    adj += [sorted({n + (i + k) % n, n + (i - k) % n} | {(i - s) % n for s in spokes})
            for i in range(n)]
    return adj


def build(p) -> Graph:
    p = as_params(p)
    return Graph(2 * p.n, adjacency_lists(p), _trusted=True)


def edges(p) -> list[tuple[int, int]]:
    """Edges by construction type: rim, hub, then spokes."""
    p = as_params(p)
    n = p.n
    out = [(i, (i + 1) % n) for i in range(n)]
    out += [(n + i, n + (i + p.k) % n) for i in range(n)]
    out += [(i, n + (i + s) % n) for i in range(n) for s in spoke_set(p)]
    return out


def rho(p) -> Perm:
    n = as_params(p).n
    return Perm([(i + 1) % n for i in range(n)] + [n + (i + 1) % n for i in range(n)])


def _check_family(m: int) -> None:
    if m < 3 or m % 2 == 0:
        raise NestParamError(f"phi/eta are defined for odd m >= 3, got m={m}")


def phi(m: int) -> Perm:
    """Involution of Nest(2m; 2, m, 2+m; 1) fixing u_0."""
    _check_family(m)
    n = 2 * m
    img = [0] * (2 * n)
    for i in range(n):
        img[i] = (-i) % n if i % 2 == 0 else n + (1 - i) % n
        img[n + i] = (1 - i) % n if i % 2 == 0 else n + (2 - i) % n
    return Perm(img)


def eta(m: int, check_family: bool = True) -> Perm:
    """Fixes every u_i and maps v_i to v_{i+m}.

    With ``check_family=False`` it is returned for any even n = 2m; it is an
    automorphism of every Nest(2m; a, m, a+m; k).
    """
    if check_family:
        _check_family(m)
    elif m < 2:
        raise NestParamError("m must be at least 2")
    n = 2 * m
    return Perm(list(range(n)) + [n + (i + m) % n for i in range(n)])


def family_params(m: int, k: int = 1) -> NestParams:
    return validate(2 * m, 2, m, 2 + m, k)


def _maps(p: NestParams):
    n, a, b, c, k = p.as_tuple()
    yield (n, b, a, c, k)
    yield (n, a, c, b, k)
    yield (n, a, b, c, -k)
    yield (n, -a, -b, -c, k)
    yield (n, -a, b - a, c - a, k)


def symmetric_variants(p) -> set[NestParams]:
    """Closure of ``p`` under the parameter maps that give isomorphic graphs."""
    p = as_params(p)
    seen = {p}
    stack = [p]
    while stack:
        q = stack.pop()
        for raw in _maps(q):
            r = validate(*raw)
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def normalize(p) -> NestParams:
    """Lexicographically least member of the closure with a < b < c and k <= (n-1)/2."""
    p = as_params(p)
    n = p.n
    k = min(p.k, n - p.k)
    best = None
    s = spoke_set(p)
    for t in s:
        for sign in (1, -1):
            shifted = sorted((sign * (x - t)) % n for x in s)
            cand = (shifted[1], shifted[2], shifted[3])
            if best is None or cand < best:
                best = cand
    return NestParams(n, *best, k)


def quotient_params(p, d: int) -> NestParams | None:
    """Parameters reduced modulo n/d, or ``None`` if they are not valid."""
    p = as_params(p)
    if d <= 0 or p.n % d:
        raise ValueError(f"{d} does not divide {p.n}")
    if d >= p.n:
        raise ValueError("d must be smaller than n")
    q = p.n // d
    try:
        return validate(q, p.a % q, p.b % q, p.c % q, p.k % q)
    except NestParamError:
        return None
