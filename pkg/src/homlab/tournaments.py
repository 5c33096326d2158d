"""Tournaments: cyclic-triangle counting, exact distance to transitivity,
eps-transitivity, the auxiliary cyclic-triple 3-uniform hypergraph, and
transitive-subtournament counting.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapabilityError, ConsistencyError, InputError
from .graphs import UniformHypergraph

__all__ = [
    "Tournament",
    "TransitivityWitness",
    "cyclic_triangle_count",
    "dist_to_transitive_exact",
    "dist_to_transitive_bruteforce",
    "is_eps_transitive",
    "triangle_hypergraph",
    "count_transitive_subtournaments",
    "triangle_distance_scan",
    "transitive_tournament",
    "read_tournament",
    "write_tournament",
]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Tournament:
    """Complete orientation of K_n; bit u of out[v] set iff v beats u."""

    n: int
    out: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.out) != self.n:
            raise InputError(f"need n={self.n} out-neighbor rows")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.out):
            if row & ~full or row >> v & 1:
                raise InputError(f"row {v} out of range or reflexive")
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if (self.out[u] >> v & 1) == (self.out[v] >> u & 1):
                    raise InputError(f"pair ({u},{v}) must be oriented exactly one way")

    def beats(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def outdegree(self, v: int) -> int:
        return self.out[v].bit_count()

    def reversed(self) -> "Tournament":
        full = (1 << self.n) - 1
        return Tournament(self.n, tuple(~row & full & ~(1 << v) for v, row in enumerate(self.out)))


def transitive_tournament(n: int) -> Tournament:
    # vertex v beats every u > v
    full = (1 << n) - 1
    return Tournament(n, tuple(full & ~((1 << (v + 1)) - 1) for v in range(n)))


@dataclass(frozen=True)
class TransitivityWitness:
    ordering: tuple[int, ...]
    reversals: int

    def validate(self, t: Tournament) -> None:
        if sorted(self.ordering) != list(range(t.n)):
            raise InputError("witness ordering is not a permutation")
        back = sum(
            1
            for i, u in enumerate(self.ordering)
            for v in self.ordering[i + 1 :]
            if t.beats(v, u)
        )
        if back != self.reversals:
            raise ConsistencyError(f"witness claims {self.reversals} reversals, found {back}")


def cyclic_triangle_count(t: Tournament) -> int:
    """Exact number of 3-subsets forming a directed cycle.

    Computed two independent ways (triple enumeration and the out-degree
    identity C(n,3) - sum_v C(outdeg(v),2)) and cross-asserted.
    """
    by_identity = math.comb(t.n, 3) - sum(math.comb(t.outdegree(v), 2) for v in range(t.n))
    by_enum = 0
    for a, b, c in itertools.combinations(range(t.n), 3):
        x = t.beats(a, b)
        y = t.beats(b, c)
        z = t.beats(c, a)
        if x == y == z:
            by_enum += 1
    if by_enum != by_identity:
        raise ConsistencyError(
            f"triangle enumeration {by_enum} != out-degree identity {by_identity}"
        )
    return by_enum


def dist_to_transitive_exact(t: Tournament, max_n: int = 20) -> TransitivityWitness:
    """Minimum edge reversals to reach a transitive tournament, via the
    subset dynamic program (2^n states).

    Convention: the optimal ordering lists dominators first; appending v last
    to the subset S costs |{u in S\\{v} : v beats u}| reversals.  Pinned by
    the permutation brute-force oracle.
    """
    n = t.n
    if n > max_n:
        raise CapabilityError(f"subset DP capped at n={max_n}, got {n}")
    if n == 0:
        return TransitivityWitness((), 0)
    size = 1 << n
    dist = [0] * size
    choice = [0] * size
    for s in range(1, size):
        best = None
        best_v = -1
        for v in _bits(s):
            rest = s & ~(1 << v)
            cost = dist[rest] + (t.out[v] & rest).bit_count()
            if best is None or cost < best or (cost == best and v < best_v):
                best = cost
                best_v = v
        dist[s] = best
        choice[s] = best_v
    ordering = []
    s = size - 1
    while s:
        v = choice[s]
        ordering.append(v)
        s &= ~(1 << v)
    ordering.reverse()
    witness = TransitivityWitness(tuple(ordering), dist[size - 1])
    witness.validate(t)
    return witness


def dist_to_transitive_bruteforce(t: Tournament) -> int:
    """Exhaustive search over orderings (with running-cost pruning); the
    independent oracle for the subset DP."""
    n = t.n
    best = math.comb(n, 2) + 1

    def rec(placed_mask: int, cost: int) -> None:
        nonlocal best
        if cost >= best:
            return
        if placed_mask == (1 << n) - 1:
            best = cost
            return
        for v in range(n):
            if placed_mask >> v & 1:
                continue
            # v placed next: reversals against later vertices it loses to are
            # counted when those are placed; placing v now costs the edges
            # v -> already-placed (v beats someone earlier in the ordering)
            rec(placed_mask | (1 << v), cost + (t.out[v] & placed_mask).bit_count())

    rec(0, 0)
    return best


def is_eps_transitive(t: Tournament, epsilon: Fraction, max_n: int = 20) -> bool:
    """dist <= eps * C(n,2), compared in exact rational arithmetic."""
    if t.n < 2:
        return True
    witness = dist_to_transitive_exact(t, max_n=max_n)
    return Fraction(witness.reversals) <= Fraction(epsilon) * math.comb(t.n, 2)


def triangle_hypergraph(t: Tournament) -> UniformHypergraph:
    """3-uniform hypergraph whose edges are exactly the cyclic triples."""
    edges = []
    for a, b, c in itertools.combinations(range(t.n), 3):
        if t.beats(a, b) == t.beats(b, c) == t.beats(c, a):
            edges.append((a, b, c))
    h = UniformHypergraph.from_edges(3, t.n, edges)
    if h.edge_count != cyclic_triangle_count(t):
        raise ConsistencyError("triangle hypergraph edge count mismatch")
    return h


def count_transitive_subtournaments(t: Tournament, k: int) -> int:
    """Exact number of k-subsets inducing a transitive subtournament; equals
    the independent k-set count of the cyclic-triple hypergraph."""
    if k < 0:
        raise InputError("k must be nonnegative")
    if k <= 2:
        return math.comb(t.n, k)
    total = 0
    for combo in itertools.combinations(range(t.n), k):
        smask = 0
        for v in combo:
            smask |= 1 << v
        # transitive iff the restricted out-degrees are pairwise distinct
        degs = [(t.out[v] & smask).bit_count() for v in combo]
        if len(set(degs)) == k:
            total += 1
    return total


@dataclass(frozen=True)
class ScanPoint:
    m: int
    instance: int
    triangles: int
    dist: int
    triangle_rate: Fraction  # triangles / m^3
    dist_rate: Fraction  # dist / C(m,2)


@dataclass(frozen=True)
class ScanReport:
    points: tuple[ScanPoint, ...]
    worst_ratio: Fraction | None  # max (dist/C(m,2))^2 * m^3 / triangles observed


def triangle_distance_scan(m: int, sample_size: int, seed: int) -> ScanReport:
    """Sampled frontier of (triangle density, transitivity distance) pairs.

    Report-only: records, over seeded random tournaments on m vertices, the
    largest observed (dist/C(m,2))^2 * m^3 / triangles.  No constant is
    asserted.
    """
    from .generators import random_tournament

    if m > 12:
        raise CapabilityError("exact distances in the scan are capped at m=12")
    points = []
    worst: Fraction | None = None
    for i in range(sample_size):
        t = random_tournament(m, seed=seed, stream=i)
        tri = cyclic_triangle_count(t)
        dist = dist_to_transitive_exact(t).reversals
        point = ScanPoint(
            m=m,
            instance=i,
            triangles=tri,
            dist=dist,
            triangle_rate=Fraction(tri, m**3),
            dist_rate=Fraction(dist, math.comb(m, 2)) if m >= 2 else Fraction(0),
        )
        points.append(point)
        if tri > 0:
            ratio = point.dist_rate**2 * m**3 / tri
            if worst is None or ratio > worst:
                worst = ratio
    return ScanReport(points=tuple(points), worst_ratio=worst)


# ---------------------------------------------------------------------------
# text format: first line "n", then n rows of a 0/1 matrix
# (row v, column u == 1 iff v beats u)


def write_tournament(t: Tournament) -> str:
    lines = [str(t.n)]
    for v in range(t.n):
        lines.append("".join("1" if t.out[v] >> u & 1 else "0" for u in range(t.n)))
    return "\n".join(lines) + "\n"


def read_tournament(text: str) -> Tournament:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty tournament file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise InputError(f"bad header: {exc}") from exc
    rows = lines[1 : n + 1]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError("expected an n x n 0/1 matrix")
    out = tuple(sum(1 << u for u, ch in enumerate(row) if ch == "1") for row in rows)
    return Tournament(n, out)
