"""Exact graph and uniform-hypergraph cores.

Graphs are immutable, stored as bitmask adjacency rows (bit ``u`` of
``masks[v]`` is set iff ``{u, v}`` is an edge).  All counts are exact Python
integers and all densities exact :class:`fractions.Fraction` values; floats
never enter a count.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import InputError

__all__ = [
    "Graph",
    "UniformHypergraph",
    "edge_density",
    "complement",
    "induced_subgraph",
    "count_induced_copies",
    "count_induced_p4",
    "automorphism_count",
    "max_degree",
    "min_degree",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "empty_graph",
    "read_graph",
    "write_graph",
    "read_hypergraph",
    "write_hypergraph",
]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.masks) != self.n:
            raise InputError(f"need exactly n={self.n} adjacency rows")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.masks):
            if row & ~full:
                raise InputError(f"row {v} references vertices outside [0,{self.n})")
            if row >> v & 1:
                raise InputError(f"loop at vertex {v}")
            for u in _bits(row):
                if not self.masks[u] >> v & 1:
                    raise InputError(f"asymmetric pair ({u},{v})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise InputError(f"bad edge ({u},{v}) for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_adj(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        n = len(adj)
        return cls(n, tuple(sum(1 << u for u in set(row)) for row in adj))

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(_bits(row)) for row in self.masks)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.masks) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.masks[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()


@dataclass(frozen=True)
class UniformHypergraph:
    """r-uniform hypergraph; every edge a sorted r-tuple of distinct vertices."""

    r: int
    n: int
    edges: frozenset[frozenset[int]]

    def __post_init__(self) -> None:
        if self.r < 2:
            raise InputError("uniformity r must be >= 2")
        for e in self.edges:
            if len(e) != self.r:
                raise InputError(f"edge {sorted(e)} is not {self.r}-uniform")
            if not all(0 <= v < self.n for v in e):
                raise InputError(f"edge {sorted(e)} outside [0,{self.n})")

    @classmethod
    def from_edges(cls, r: int, n: int, edges: Iterable[Iterable[int]]) -> "UniformHypergraph":
        return cls(r, n, frozenset(frozenset(e) for e in edges))

    @property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple(sorted(sum(1 << v for v in e) for e in self.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)


# ---------------------------------------------------------------------------
# densities and induced substructure


def edge_density(g: Graph) -> Fraction:
    """Exact |E| / C(n,2); requires n >= 2."""
    if g.n < 2:
        raise InputError(f"edge density undefined for n={g.n}")
    return Fraction(g.edge_count, math.comb(g.n, 2))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(~row & full & ~(1 << v) for v, row in enumerate(g.masks)))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Induced subgraph relabeled 0..|S|-1 in ascending original order."""
    order = sorted(set(vertices))
    if order and not (0 <= order[0] and order[-1] < g.n):
        raise InputError(f"vertex set not within [0,{g.n})")
    pos = {v: i for i, v in enumerate(order)}
    rows = [0] * len(order)
    for v in order:
        for u in _bits(g.masks[v]):
            if u in pos:
                rows[pos[v]] |= 1 << pos[u]
    return Graph(len(order), tuple(rows))


def max_degree(g: Graph) -> int:
    if g.n == 0:
        raise InputError("degree undefined on the empty vertex set")
    return max(row.bit_count() for row in g.masks)


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise InputError("degree undefined on the empty vertex set")
    return min(row.bit_count() for row in g.masks)


# ---------------------------------------------------------------------------
# induced-copy counting


def automorphism_count(h: Graph) -> int:
    """|Aut(h)| by direct permutation scan (meant for |h| <= 8)."""
    count = 0
    for perm in itertools.permutations(range(h.n)):
        if all(
            h.has_edge(u, v) == h.has_edge(perm[u], perm[v])
            for u in range(h.n)
            for v in range(u + 1, h.n)
        ):
            count += 1
    return count


def _isomorphic_to(sub: Graph, h: Graph, h_degrees: Sequence[int]) -> bool:
    """Backtracking isomorphism test against a fixed pattern h (small h only)."""
    degs = sorted(sub.degree(v) for v in range(sub.n))
    if degs != sorted(h_degrees):
        return False
    used = [False] * sub.n

    def extend(i: int, image: list[int]) -> bool:
        if i == h.n:
            return True
        for cand in range(sub.n):
            if used[cand] or sub.degree(cand) != h_degrees[i]:
                continue
            if all(h.has_edge(i, j) == sub.has_edge(cand, image[j]) for j in range(i)):
                used[cand] = True
                image.append(cand)
                if extend(i + 1, image):
                    return True
                image.pop()
                used[cand] = False
        return False

    return extend(0, [])


def count_induced_copies(g: Graph, h: Graph) -> tuple[int, int]:
    """(subset count, labeled embedding count) of induced copies of h in g.

    The embedding count is subsets * |Aut(h)|, i.e. the number of injective
    maps preserving both adjacency and non-adjacency.
    """
    if h.n == 0:
        return 1, 1
    if h.n > g.n:
        return 0, 0
    h_edges = h.edge_count
    h_degrees = [h.degree(v) for v in range(h.n)]
    subsets = 0
    for combo in itertools.combinations(range(g.n), h.n):
        inner = 0
        for i, u in enumerate(combo):
            for v in combo[i + 1 :]:
                if g.masks[u] >> v & 1:
                    inner += 1
        if inner != h_edges:
            continue
        if _isomorphic_to(induced_subgraph(g, combo), h, h_degrees):
            subsets += 1
    return subsets, subsets * automorphism_count(h)


def count_induced_p4(g: Graph) -> tuple[int, int, list[tuple[int, int, int, int]]]:
    """Fast exact induced-path-on-4-vertices count.

    Enumerates every labeled embedding a-b-c-d through its middle edge (b,c),
    so it doubles as an exhaustive scan: the third return value lists one
    labeled embedding per induced copy (the lexicographically first
    orientation).  Returns (subsets, embeddings, copies).
    """
    embeddings = 0
    copies: list[tuple[int, int, int, int]] = []
    for b in range(g.n):
        for c in _bits(g.masks[b]):
            a_side = g.masks[b] & ~g.masks[c] & ~(1 << c)
            d_side = g.masks[c] & ~g.masks[b] & ~(1 << b)
            if not a_side or not d_side:
                continue
            for a in _bits(a_side):
                free = d_side & ~g.masks[a] & ~(1 << a)
                embeddings += free.bit_count()
                if b < c:
                    copies.extend((a, b, c, d) for d in _bits(free))
    if embeddings % 2:
        raise AssertionError("labeled path-embedding count must be even")
    return embeddings // 2, embeddings, copies


# ---------------------------------------------------------------------------
# small named graphs


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


# ---------------------------------------------------------------------------
# text formats: "n m" header then m lines "u v" (u < v, 0-based);
# hypergraphs: "r n m" then m lines of r ascending indices.


def write_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty graph file")
    try:
        n, m = map(int, lines[0].split())
        edges = [tuple(map(int, ln.split())) for ln in lines[1 : m + 1]]
    except ValueError as exc:
        raise InputError(f"malformed graph file: {exc}") from exc
    if len(edges) != m:
        raise InputError(f"expected {m} edge lines, found {len(edges)}")
    for u, v in edges:
        if u >= v:
            raise InputError(f"edge line must have u < v, got {u} {v}")
    return Graph.from_edges(n, edges)


def write_hypergraph(h: UniformHypergraph) -> str:
    lines = [f"{h.r} {h.n} {h.edge_count}"]
    lines += [" ".join(map(str, sorted(e))) for e in sorted(map(sorted, h.edges))]
    return "\n".join(lines) + "\n"


def read_hypergraph(text: str) -> UniformHypergraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty hypergraph file")
    try:
        r, n, m = map(int, lines[0].split())
        edges = [tuple(map(int, ln.split())) for ln in lines[1 : m + 1]]
    except ValueError as exc:
        raise InputError(f"malformed hypergraph file: {exc}") from exc
    if len(edges) != m:
        raise InputError(f"expected {m} edge lines, found {len(edges)}")
    for e in edges:
        if list(e) != sorted(set(e)):
            raise InputError(f"edge {e} not strictly ascending")
    return UniformHypergraph.from_edges(r, n, edges)
