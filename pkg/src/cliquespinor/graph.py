"""Undirected simple graphs as adjacency bitsets, DIMACS I/O, complement,
and reconstruction of a graph from its maximal cliques.

Vertex sets are plain ``int`` bitmasks throughout the package: bit ``i``
stands for the 0-based vertex ``i``.  External formats (DIMACS, JSON,
CLI output) use 1-based labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ContractViolation, ParseError


def mask_of(vertices: Iterable[int]) -> int:
    """Bitmask for an iterable of 0-based vertex indices."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    """Sorted 0-based vertex indices of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def labels_of(mask: int) -> list[int]:
    """1-based vertex labels of a bitmask, for external output."""
    return [v + 1 for v in vertices_of(mask)]


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph.

    adj[i] is the neighbor bitmask of vertex i; symmetry and a zero
    diagonal are enforced at construction.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ContractViolation("vertex count must be nonnegative")
        if len(self.adj) != self.n:
            raise ContractViolation("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise ContractViolation(f"adjacency row {i} references vertices >= n")
            if row >> i & 1:
                raise ContractViolation(f"self-loop on vertex {i}")
        for i in range(self.n):
            for j in vertices_of(self.adj[i]):
                if not self.adj[j] >> i & 1:
                    raise ContractViolation(f"adjacency not symmetric at ({i}, {j})")

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """0-based edges (i, j) with i < j, ascending."""
        for i in range(self.n):
            rest = self.adj[i] >> (i + 1) << (i + 1)
            for j in vertices_of(rest):
                yield (i, j)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def adjacency_matrix(self):
        """Dense float adjacency matrix (numpy)."""
        import numpy as np

        a = np.zeros((self.n, self.n))
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1.0
        return a

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [[i + 1, j + 1] for i, j in self.edges()]}


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph from 0-based edge pairs; duplicates collapse, self-loops rejected."""
    adj = [0] * n
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise ContractViolation(f"edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise ContractViolation(f"self-loop on vertex {i}")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def graph_from_json_dict(doc: dict) -> Graph:
    n = int(doc["n"])
    return graph_from_edges(n, [(int(u) - 1, int(v) - 1) for u, v in doc["edges"]])


def parse_dimacs(text: str | bytes) -> Graph:
    """Parse DIMACS ``edge`` format: ``c`` comments, one ``p edge n m``
    line, then ``e u v`` lines with 1-based endpoints.

    Duplicate edges collapse silently (benchmark corpora contain them);
    the declared edge count m is not enforced for the same reason.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate problem line")
            if len(fields) != 4 or fields[1] != "edge":
                raise ParseError(f"line {lineno}: expected 'p edge <n> <m>'")
            try:
                n = int(fields[2])
                m = int(fields[3])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer problem parameters") from None
            if n < 0 or m < 0:
                raise ParseError(f"line {lineno}: negative problem parameters")
        elif fields[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before problem line")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer endpoint") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: vertex index out of range 1..{n}")
            if u == v:
                raise ParseError(f"line {lineno}: self-loop e {u} {v}")
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"line {lineno}: unrecognized line type {fields[0]!r}")
    if n is None:
        raise ParseError("missing problem line 'p edge <n> <m>'")
    return graph_from_edges(n, edges)


def complement(g: Graph) -> Graph:
    """Complement graph: edge (i, j), i != j, present iff absent in g."""
    full = (1 << g.n) - 1
    adj = tuple((full & ~g.adj[i]) & ~(1 << i) for i in range(g.n))
    return Graph(g.n, adj)


def reconstruct_from_maximal_cliques(n: int, cliques: Sequence[int]) -> Graph:
    """Rebuild a graph as the union of all within-clique edges.

    Inverse of maximal-clique enumeration: feeding back the complete
    maximal-clique family of any graph returns that graph.  Every vertex
    must be covered by some clique (true for any genuine maximal-clique
    family, where isolated vertices appear as singletons).
    """
    if n > 0 and not cliques:
        raise ContractViolation("empty clique list cannot cover any vertex")
    full = (1 << n) - 1
    covered = 0
    adj = [0] * n
    for c in cliques:
        if c & ~full:
            raise ContractViolation(f"clique {labels_of(c)} references vertices > {n}")
        covered |= c
        for i in vertices_of(c):
            adj[i] |= c & ~(1 << i)
    if covered != full:
        missing = labels_of(full & ~covered)
        raise ContractViolation(f"vertices {missing} not covered by any clique")
    return Graph(n, tuple(adj))
