"""Ground-truth combinatorial clique algorithms.

These are the reference answers every other formulation in the package
is checked against: Bron-Kerbosch maximal-clique enumeration with
pivoting, exact maximum clique, and a brute-force all-cliques
enumerator for small graphs.
"""

from __future__ import annotations

from .errors import ResourceLimit
from .graph import Graph, vertices_of

DEFAULT_CLIQUE_CAP = 10**6
EXHAUSTIVE_MAX_N = 20


def is_clique(g: Graph, members: int) -> bool:
    """True iff the vertices of ``members`` are pairwise adjacent.

    The empty set and singletons are cliques by this (vacuous) reading.
    """
    rest = members
    while rest:
        low = rest & -rest
        i = low.bit_length() - 1
        rest ^= low
        if rest & ~g.adj[i]:
            return False
    return True


def _clique_sort_key(mask: int):
    return vertices_of(mask)


def maximal_cliques(g: Graph, cap: int = DEFAULT_CLIQUE_CAP) -> list[int]:
    """All maximal cliques of g, sorted lexicographically by vertex tuple.

    Bron-Kerbosch with the Tomita pivot (vertex of P | X with most
    neighbors in P).  Raises ResourceLimit once more than ``cap``
    cliques are found; the count can approach the Moon-Moser bound
    3^(n/3).
    """
    if g.n == 0:
        return []
    out: list[int] = []
    adj = g.adj

    def extend(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            if len(out) > cap:
                raise ResourceLimit(
                    f"more than {cap} maximal cliques; the count can reach "
                    f"the Moon-Moser bound 3^(n/3) (n={g.n})"
                )
            return
        # pivot: u in P | X maximizing |N(u) & P|
        best_u, best_cnt = -1, -1
        scan = p | x
        while scan:
            low = scan & -scan
            u = low.bit_length() - 1
            scan ^= low
            cnt = (adj[u] & p).bit_count()
            if cnt > best_cnt:
                best_u, best_cnt = u, cnt
        cand = p & ~adj[best_u]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            extend(r | low, p & adj[v], x & adj[v])
            p ^= low
            x |= low

    extend(0, (1 << g.n) - 1, 0)
    out.sort(key=_clique_sort_key)
    return out


def max_clique_exact(g: Graph, cap: int = DEFAULT_CLIQUE_CAP) -> tuple[int, int]:
    """Exact maximum clique size and a witness mask.

    Exhausts the maximal-clique enumeration, so the absence of any
    larger clique is established, not assumed.  Ties resolve to the
    lexicographically smallest witness.
    """
    if g.n == 0:
        return 0, 0
    best = 0
    size = 0
    for c in maximal_cliques(g, cap=cap):
        k = c.bit_count()
        if k > size:
            best, size = c, k
    return size, best


def exhaustive_cliques(g: Graph, max_n: int = EXHAUSTIVE_MAX_N) -> list[int]:
    """Every nonempty clique of g (brute force), in lexicographic order."""
    if g.n > max_n:
        raise ResourceLimit(f"exhaustive clique enumeration capped at n <= {max_n}")
    out: list[int] = []

    def grow(r: int, cand: int) -> None:
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            out.append(r | low)
            grow(r | low, cand & g.adj[v])

    grow(0, (1 << g.n) - 1)
    out.sort(key=_clique_sort_key)
    return out
