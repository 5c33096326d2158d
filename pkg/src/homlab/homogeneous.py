"""Homogeneous and eps-homogeneous set computation.

Exact largest clique-or-independent-set (branch and bound with greedy
coloring bounds on both the graph and its complement), homogeneous k-set
counting, the (t,k) subset property checker, edit distance to a hereditary
family, eps-homogeneous search, and greedy clique extraction from dense
graphs.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .containers import count_independent_sets_exact
from .errors import CapabilityError, InputError, ParameterError, VerificationError
from .graphs import Graph, complement, edge_density, induced_subgraph

__all__ = [
    "HomogeneousWitness",
    "EpsHomogeneousWitness",
    "FamilyOracle",
    "p4_free_family",
    "all_graphs_family",
    "hom_exact",
    "max_clique",
    "count_homogeneous_k",
    "check_tk_property",
    "copy_count_threshold",
    "verify_count_lower_bound",
    "CountLowerBoundReport",
    "distance_to_family",
    "find_eps_homogeneous",
    "turan_clique",
    "has_induced_p4",
]


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class HomogeneousWitness:
    vertices: frozenset[int]
    kind: str  # "clique" | "independent"

    def validate(self, g: Graph) -> None:
        vs = sorted(self.vertices)
        for i, u in enumerate(vs):
            for v in vs[i + 1 :]:
                edge = g.has_edge(u, v)
                if self.kind == "clique" and not edge:
                    raise VerificationError(f"claimed clique misses edge ({u},{v})")
                if self.kind == "independent" and edge:
                    raise VerificationError(f"claimed independent set has edge ({u},{v})")

    def to_json(self) -> str:
        return json.dumps(
            {"size": len(self.vertices), "kind": self.kind, "vertices": sorted(self.vertices)}
        )


@dataclass(frozen=True)
class EpsHomogeneousWitness:
    vertices: frozenset[int]
    side: str  # "sparse" | "dense"
    mode: str  # "density" | "degree"
    epsilon: Fraction

    def validate(self, g: Graph) -> None:
        s = len(self.vertices)
        sub = induced_subgraph(g, self.vertices)
        eps = Fraction(self.epsilon)
        if self.mode == "density":
            dens = edge_density(sub) if s >= 2 else Fraction(0)
            ok = dens <= eps if self.side == "sparse" else dens >= 1 - eps
        else:
            degs = [sub.degree(v) for v in range(sub.n)] or [0]
            if self.side == "sparse":
                ok = max(degs) <= eps * (s - 1)
            else:
                ok = min(degs) >= (1 - eps) * (s - 1)
        if not ok:
            raise VerificationError(
                f"witness fails its own invariant (mode={self.mode}, side={self.side})"
            )

    def to_json(self) -> str:
        return json.dumps(
            {
                "size": len(self.vertices),
                "side": self.side,
                "mode": self.mode,
                "vertices": sorted(self.vertices),
                "epsilon": str(self.epsilon),
                "validated": True,
            }
        )


@dataclass(frozen=True)
class FamilyOracle:
    """Membership predicate for a graph family, with a declared hereditary flag."""

    membership: Callable[[Graph], bool]
    hereditary: bool
    description: str

    def spot_check_hereditary(self, samples: Iterable[tuple[Graph, Iterable[int]]]) -> None:
        if not self.hereditary:
            return
        for g, subset in samples:
            if self.membership(g) and not self.membership(induced_subgraph(g, subset)):
                raise VerificationError(
                    f"family {self.description!r} declared hereditary but fails on a subset"
                )


def has_induced_p4(g: Graph) -> bool:
    """Direct 4-subset scan; adequate for the small graphs it is used on."""
    from .graphs import count_induced_p4

    return count_induced_p4(g)[0] > 0


def p4_free_family() -> FamilyOracle:
    return FamilyOracle(lambda g: not has_induced_p4(g), hereditary=True, description="P4-free")


def all_graphs_family() -> FamilyOracle:
    return FamilyOracle(lambda g: True, hereditary=True, description="all graphs")


# ---------------------------------------------------------------------------
# exact maximum clique / homogeneous set


def max_clique(g: Graph) -> frozenset[int]:
    """Branch-and-bound maximum clique with greedy-coloring upper bounds.

    Branching order is deterministic (ascending index within color classes),
    so the returned witness is reproducible.
    """
    n, masks = g.n, g.masks
    if n == 0:
        return frozenset()
    best_mask = 1  # single vertex is always a clique
    best_size = 1

    def color_sort(p: int) -> list[tuple[int, int]]:
        # greedy coloring of candidate mask p; returns (vertex, color) with
        # colors nondecreasing, vertices ascending inside each class
        order: list[tuple[int, int]] = []
        color = 0
        rest = p
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append((v, color))
                rest &= ~(1 << v)
                avail &= ~masks[v] & ~(1 << v)
        return order

    def expand(rmask: int, rsize: int, p: int) -> None:
        nonlocal best_mask, best_size
        order = color_sort(p)
        for v, color in reversed(order):
            if rsize + color <= best_size:
                return
            new_r = rmask | (1 << v)
            new_p = p & masks[v]
            if rsize + 1 > best_size:
                best_size = rsize + 1
                best_mask = new_r
            if new_p:
                expand(new_r, rsize + 1, new_p)
            p &= ~(1 << v)

    expand(0, 0, (1 << n) - 1)
    return frozenset(_bits(best_mask))


def hom_exact(g: Graph, max_n: int = 200) -> tuple[int, HomogeneousWitness]:
    """Exact size of the largest clique-or-independent-set, with witness."""
    if g.n > max_n:
        raise CapabilityError(f"hom_exact capped at n={max_n}, got {g.n}")
    if g.n == 0:
        return 0, HomogeneousWitness(frozenset(), "clique")
    cl = max_clique(g)
    ind = max_clique(complement(g))
    if len(cl) >= len(ind):
        witness = HomogeneousWitness(cl, "clique")
    else:
        witness = HomogeneousWitness(ind, "independent")
    witness.validate(g)
    return len(witness.vertices), witness


def count_homogeneous_k(g: Graph, k: int) -> int:
    """Number of k-subsets inducing a clique plus those inducing an empty graph.

    For k >= 2 the two classes are disjoint, matching the identity
    IS_k(G) + IS_k(complement(G)).
    """
    if k < 2:
        raise InputError("count_homogeneous_k needs k >= 2")
    masks = g.masks
    if k == 3:
        # triangle count on g and on its complement via neighborhood intersections
        total = 0
        full = (1 << g.n) - 1
        comp = [~masks[v] & full & ~(1 << v) for v in range(g.n)]
        for u in range(g.n):
            above = full & ~((1 << (u + 1)) - 1)
            for v in _bits(masks[u] & above):
                total += (masks[u] & masks[v] & above & ~((1 << (v + 1)) - 1)).bit_count()
            for v in _bits(comp[u] & above):
                total += (comp[u] & comp[v] & above & ~((1 << (v + 1)) - 1)).bit_count()
        return total
    total = 0
    for combo in itertools.combinations(range(g.n), k):
        smask = _mask(combo)
        inner = sum((masks[v] & smask).bit_count() for v in combo) // 2
        if inner == 0 or inner == k * (k - 1) // 2:
            total += 1
    return total


# ---------------------------------------------------------------------------
# (t,k) subset property and the counting pipeline


def check_tk_property(
    family: FamilyOracle, t: int, k: int, exhaustive_cap: int = 6, sample: int | None = None, seed: int = 0
) -> tuple[bool, Graph | None]:
    """True iff every t-vertex member of the family has hom >= k.

    Exhaustive over all 2^C(t,2) labeled graphs for t <= exhaustive_cap;
    larger t requires an explicit sample count (non-exhaustive).
    """
    pairs = list(itertools.combinations(range(t), 2))
    m = len(pairs)
    if t <= exhaustive_cap:
        codes: Iterable[int] = range(1 << m)
    elif sample is not None:
        import random

        rng = random.Random(seed)
        codes = (rng.getrandbits(m) for _ in range(sample))
    else:
        raise CapabilityError(
            f"t={t} exceeds exhaustive cap {exhaustive_cap}; pass sample= to spot-check"
        )
    for code in codes:
        g = Graph.from_edges(t, [p for i, p in enumerate(pairs) if code >> i & 1])
        if family.membership(g) and hom_exact(g)[0] < k:
            return False, g
    return True, None


def copy_count_threshold(n: int, h: int, t: int) -> int:
    """floor(n^h / (2^(h+1) * t^(h-1))): admissible labeled induced-copy count
    for the homogeneous-count lower bound to apply."""
    if n < 2 * t:
        raise ParameterError(f"need n >= 2t, got n={n}, t={t}")
    return n**h // (2 ** (h + 1) * t ** (h - 1))


@dataclass(frozen=True)
class CountLowerBoundReport:
    n: int
    h: int
    t: int
    k: int
    embeddings: int
    threshold: int
    premise_ok: bool
    homogeneous_count: int
    lower_bound: Fraction
    ok: bool


def verify_count_lower_bound(
    g: Graph, h: Graph, t: int, k: int, embeddings: int | None = None
) -> CountLowerBoundReport:
    """Exact check that a graph with few induced h-copies has many homogeneous
    k-sets: count >= (1/2) * (n/(2t))^k.

    The caller is responsible for having established that every h-free graph
    has the (t,k) subset property.  ``embeddings`` may be supplied when a
    specialized counter was already run; otherwise the generic counter is used.
    """
    threshold = copy_count_threshold(g.n, h.n, t)
    if embeddings is None:
        from .graphs import count_induced_copies

        embeddings = count_induced_copies(g, h)[1]
    premise_ok = embeddings <= threshold
    count = count_homogeneous_k(g, k)
    bound = Fraction(1, 2) * Fraction(g.n, 2 * t) ** k
    return CountLowerBoundReport(
        n=g.n,
        h=h.n,
        t=t,
        k=k,
        embeddings=embeddings,
        threshold=threshold,
        premise_ok=premise_ok,
        homogeneous_count=count,
        lower_bound=bound,
        ok=premise_ok and count >= bound,
    )


# ---------------------------------------------------------------------------
# edit distance to a family


def distance_to_family(g: Graph, family: FamilyOracle, budget: int) -> int | None:
    """Minimum number of edge flips to reach a family member, or None if it
    exceeds ``budget``.  Breadth-first over flip sets by size; exponential,
    so capped to n <= 8 or budget <= 3."""
    if g.n > 8 and budget > 3:
        raise CapabilityError("distance_to_family requires n <= 8 or budget <= 3")
    pairs = list(itertools.combinations(range(g.n), 2))
    for size in range(budget + 1):
        for flips in itertools.combinations(pairs, size):
            rows = list(g.masks)
            for u, v in flips:
                rows[u] ^= 1 << v
                rows[v] ^= 1 << u
            if family.membership(Graph(g.n, tuple(rows))):
                return size
    return None


# ---------------------------------------------------------------------------
# eps-homogeneous search


def _condition(g: Graph, smask: int, eps: Fraction, mode: str, side: str) -> bool:
    s = smask.bit_count()
    if s <= 1:
        return True
    if mode == "density":
        inner = sum((g.masks[v] & smask).bit_count() for v in _bits(smask)) // 2
        dens = Fraction(inner, math.comb(s, 2))
        return dens <= eps if side == "sparse" else dens >= 1 - eps
    degs = [(g.masks[v] & smask).bit_count() for v in _bits(smask)]
    if side == "sparse":
        return max(degs) <= eps * (s - 1)
    return min(degs) >= (1 - eps) * (s - 1)


def _peel_order(g: Graph) -> list[int]:
    """Vertex deletion order: always the max-degree vertex of what remains
    (ties by ascending index)."""
    w = set(range(g.n))
    order = []
    while w:
        wmask = _mask(w)
        v = min(w, key=lambda x: (-(g.masks[x] & wmask).bit_count(), x))
        order.append(v)
        w.discard(v)
    return order


def find_eps_homogeneous(
    g: Graph, epsilon: Fraction, mode: str = "density", strategy: str = "greedy-peel"
) -> EpsHomogeneousWitness:
    """Largest found vertex set that is eps-sparse or eps-dense.

    strategy="exact" enumerates all subsets (n <= 20); "greedy-peel" peels
    the max-degree vertex in the graph (sparse side) and in the complement
    (dense side) and keeps the largest suffix set satisfying the condition.
    """
    eps = Fraction(epsilon)
    if mode not in ("density", "degree"):
        raise InputError(f"unknown mode {mode!r}")
    best: tuple[int, int, str] | None = None  # (size, mask, side)

    def consider(smask: int, side: str) -> None:
        nonlocal best
        size = smask.bit_count()
        if (best is None or size > best[0]) and _condition(g, smask, eps, mode, side):
            best = (size, smask, side)

    if strategy == "exact":
        if g.n > 20:
            raise CapabilityError("exact eps-homogeneous search capped at n=20")
        for smask in range(1 << g.n):
            consider(smask, "sparse")
            consider(smask, "dense")
    elif strategy == "greedy-peel":
        for side, host in (("sparse", g), ("dense", complement(g))):
            order = _peel_order(host)
            smask = _mask(range(g.n))
            for v in order + [None]:  # check every suffix including the full set
                consider(smask, side)
                if v is None:
                    break
                smask &= ~(1 << v)
    else:
        raise InputError(f"unknown strategy {strategy!r}")
    if best is None:
        best = (1, 1 if g.n else 0, "sparse")
    witness = EpsHomogeneousWitness(
        vertices=frozenset(_bits(best[1])), side=best[2], mode=mode, epsilon=eps
    )
    if g.n:
        witness.validate(g)
    return witness


def turan_clique(g: Graph) -> frozenset[int]:
    """Greedy clique from a dense graph: repeatedly take the vertex with the
    fewest complement-neighbors among the candidates and restrict to its
    neighborhood.  Guarantees size >= n/(avg complement degree + 1)."""
    cand = _mask(range(g.n))
    clique: set[int] = set()
    while cand:
        size = cand.bit_count()
        # fewest complement-neighbors == most graph-neighbors within cand
        v = min(_bits(cand), key=lambda x: (size - 1 - (g.masks[x] & cand).bit_count(), x))
        clique.add(v)
        cand &= g.masks[v]
    smask = _mask(clique)
    for v in clique:
        if (g.masks[v] & smask).bit_count() != len(clique) - 1:
            raise VerificationError("greedy clique output is not complete")
    return frozenset(clique)
