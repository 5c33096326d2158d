"""Container bounds and fingerprint algorithms for independent-set counting.

Implements the graph-case max-degree fingerprint (Kleitman-Winston style),
the r-uniform scythe procedure with co-degree-maximizing orderings, the
closed-form counting bounds, and the exact enumeration oracle used to verify
them at desk scale.

Conventions fixed here (both fingerprint variants, and reconstruction):

* ties in every degree / co-degree maximization break by ascending vertex
  index;
* the stopping conditions (segment budget reached, candidate set down to at
  most ``u`` vertices, fingerprinted set exhausted) are checked at round
  boundaries, where one round scans the current ordering up to the next
  fingerprinted vertex and extracts one segment.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import CapabilityError, ConsistencyError, InputError, ParameterError
from .graphs import Graph, UniformHypergraph

__all__ = [
    "ContainerParams",
    "FingerprintTrace",
    "minimal_ell",
    "count_independent_sets_exact",
    "kw_bound",
    "hypergraph_bound",
    "verify_degree_precondition",
    "kw_fingerprint",
    "scythe_fingerprint",
    "reconstruct_segments",
    "as_two_uniform",
    "is_independent",
]

Structure = Union[Graph, UniformHypergraph]


@dataclass(frozen=True)
class ContainerParams:
    """(epsilon, u, ell, k) tuple for the container bounds."""

    epsilon: Fraction
    u: int
    ell: int
    k: int

    def __post_init__(self) -> None:
        eps = Fraction(self.epsilon)
        if not 0 < eps <= 1:
            raise ParameterError(f"epsilon={eps} outside (0,1]")
        if self.u < 1:
            raise ParameterError("u must be a positive integer")
        if self.ell < 0 or self.k < 0:
            raise ParameterError("ell and k must be nonnegative")
        object.__setattr__(self, "epsilon", eps)

    def check_for(self, n: int, r: int = 2) -> None:
        """Exact-rational validation of the bound-side invariants."""
        if (1 - self.epsilon) ** self.ell * n > self.u:
            raise ParameterError(
                f"(1-eps)^ell * n = {(1 - self.epsilon) ** self.ell * n} exceeds u={self.u}"
            )
        if r == 2:
            if self.ell > self.k:
                raise ParameterError(f"graph case needs ell <= k, got {self.ell} > {self.k}")
        elif self.k < (r - 1) * self.ell:
            raise ParameterError(f"need k >= (r-1)*ell, got {self.k} < {(r - 1) * self.ell}")


def minimal_ell(n: int, epsilon: Fraction, u: int) -> int:
    """Smallest ell with (1-eps)^ell * n <= u, in exact arithmetic."""
    eps = Fraction(epsilon)
    if not 0 < eps <= 1:
        raise ParameterError(f"epsilon={eps} outside (0,1]")
    ell = 0
    value = Fraction(n)
    while value > u:
        if eps == 1:
            return ell + 1
        value *= 1 - eps
        ell += 1
    return ell


@dataclass(frozen=True)
class FingerprintTrace:
    """Segments, final container, and removed vertices of one fingerprint run.

    ``round_sizes`` records the candidate-set size at the start of each
    executed segment round plus the final size, so per-round shrinkage can be
    audited after the fact.
    """

    segments: tuple[tuple[int, ...], ...]
    container: frozenset[int]
    removed: frozenset[int]
    round_sizes: tuple[int, ...]

    @property
    def segment_union(self) -> frozenset[int]:
        return frozenset(v for seg in self.segments for v in seg)


# ---------------------------------------------------------------------------
# exact enumeration oracle


def is_independent(structure: Structure, vertices: Iterable[int]) -> bool:
    vs = set(vertices)
    if isinstance(structure, Graph):
        mask = sum(1 << v for v in vs)
        return all(structure.masks[v] & mask == 0 for v in vs)
    return all(not e <= vs for e in structure.edges)


def count_independent_sets_exact(structure: Structure, k: int) -> int:
    """Exact number of k-subsets spanning no edge."""
    if k < 0:
        raise InputError("k must be nonnegative")
    if k == 0:
        return 1
    if isinstance(structure, Graph):
        masks, n = structure.masks, structure.n

        def rec(allowed: int, depth: int) -> int:
            if depth == 1:
                return allowed.bit_count()
            total = 0
            m = allowed
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                # only vertices above v may extend, killing double counting
                total += rec(m & ~masks[v], depth - 1)
            return total

        return rec((1 << n) - 1, k)
    edge_masks = structure.edge_masks
    total = 0
    for combo in itertools.combinations(range(structure.n), k):
        smask = 0
        for v in combo:
            smask |= 1 << v
        if all(e & ~smask for e in edge_masks):
            total += 1
    return total


# ---------------------------------------------------------------------------
# closed-form bounds


def kw_bound(n: int, params: ContainerParams, improved: bool = False) -> int:
    """Graph-case count bound C(n,ell)*C(u,k-ell).

    With ``improved=True`` returns the exact integer ceiling of
    2^ell * (u/n)^((ell-1)/2) * C(n,ell) * C(u,k-ell).
    """
    params.check_for(n, r=2)
    base = math.comb(n, params.ell) * math.comb(params.u, params.k - params.ell)
    if not improved:
        return base
    ell, u = params.ell, params.u
    if ell == 0:
        return base
    # value = 2^ell * base * sqrt((u/n)^(ell-1)); exact ceiling via integer sqrt:
    # smallest integer c with c^2 * den >= num where value^2 = num/den
    sq = Fraction(2 ** (2 * ell) * base * base) * Fraction(u, n) ** (ell - 1)
    num, den = sq.numerator, sq.denominator
    c = math.isqrt((num + den - 1) // den)
    while c * c * den < num:
        c += 1
    while c >= 1 and (c - 1) * (c - 1) * den >= num:
        c -= 1
    return c


def hypergraph_bound(n: int, r: int, params: ContainerParams) -> int:
    """r-uniform count bound C(n,(r-1)ell)*C(u,k-(r-1)ell)."""
    params.check_for(n, r=r)
    drop = (r - 1) * params.ell
    return math.comb(n, drop) * math.comb(params.u, params.k - drop)


# ---------------------------------------------------------------------------
# degree precondition


def _max_degree_in(structure: Structure, smask: int, svertices: tuple[int, ...]) -> int:
    if isinstance(structure, Graph):
        return max((structure.masks[v] & smask).bit_count() for v in svertices)
    deg = dict.fromkeys(svertices, 0)
    svs = set(svertices)
    for e in structure.edges:
        if e <= svs:
            for v in e:
                deg[v] += 1
    return max(deg.values())


def verify_degree_precondition(
    structure: Structure,
    epsilon: Fraction,
    u: int,
    variant: str | None = None,
    max_n_exhaustive: int = 16,
    sample: int | None = None,
    seed: int = 0,
):
    """Check the minimum-max-degree hypothesis of the container bounds.

    Graph variant: every S with |S| >= u has max degree >= eps*|S| - 1 in the
    induced subgraph.  Uniform variant (exponent r-1 on the degree threshold):
    every S with |S| > u has max degree >= eps*(|S|-1)^(r-1).

    Returns (ok, witness) where witness is a violating vertex set or None.
    Exhaustive up to ``max_n_exhaustive`` vertices; beyond that a ``sample``
    count must be supplied and the result is explicitly non-exhaustive.
    """
    eps = Fraction(epsilon)
    if variant is None:
        variant = "graph" if isinstance(structure, Graph) else "uniform"
    if variant not in ("graph", "uniform"):
        raise InputError(f"unknown variant {variant!r}")
    n = structure.n
    r = 2 if isinstance(structure, Graph) else structure.r

    def holds(svertices: tuple[int, ...]) -> bool:
        s = len(svertices)
        smask = 0
        for v in svertices:
            smask |= 1 << v
        md = _max_degree_in(structure, smask, svertices)
        if variant == "graph":
            return md >= eps * s - 1
        return md >= eps * (s - 1) ** (r - 1)

    lower = u if variant == "graph" else u + 1
    if n <= max_n_exhaustive:
        for size in range(max(lower, 1), n + 1):
            for combo in itertools.combinations(range(n), size):
                if not holds(combo):
                    return False, frozenset(combo)
        return True, None
    if sample is None:
        raise CapabilityError(
            f"n={n} exceeds exhaustive cap {max_n_exhaustive}; pass sample= for a "
            "non-exhaustive check"
        )
    import random

    rng = random.Random(seed)
    sizes = list(range(max(lower, 1), n + 1))
    for _ in range(sample):
        size = rng.choice(sizes)
        combo = tuple(sorted(rng.sample(range(n), size)))
        if not holds(combo):
            return False, frozenset(combo)
    return True, None


# ---------------------------------------------------------------------------
# fingerprint algorithms


def _check_independent(structure: Structure, vertices: Iterable[int]) -> frozenset[int]:
    vs = frozenset(vertices)
    if not all(0 <= v < structure.n for v in vs):
        raise InputError("fingerprint set outside vertex range")
    if not is_independent(structure, vs):
        raise InputError("fingerprint set is not independent")
    return vs


def kw_fingerprint(g: Graph, independent: Iterable[int], params: ContainerParams) -> FingerprintTrace:
    """Graph fingerprint: repeatedly examine the max-degree vertex of the
    candidate set; fingerprinted vertices become singleton segments and
    restrict the candidates to their non-neighbors, others are deleted."""
    i_set = _check_independent(g, independent)
    w = set(range(g.n))
    i_rem = set(i_set)
    segments: list[tuple[int, ...]] = []
    round_sizes = []
    while len(segments) < params.ell and len(w) > params.u and i_rem:
        round_sizes.append(len(w))
        while True:
            wmask = _mask(w)
            v = min(w, key=lambda x: (-(g.masks[x] & wmask).bit_count(), x))
            w.discard(v)
            if v in i_rem:
                i_rem.discard(v)
                segments.append((v,))
                w -= set(_bits_of(g.masks[v]))
                break
    round_sizes.append(len(w))
    return FingerprintTrace(
        segments=tuple(segments),
        container=frozenset(w),
        removed=frozenset(range(g.n)) - frozenset(w) - frozenset(v for s in segments for v in s),
        round_sizes=tuple(round_sizes),
    )


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _bits_of(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _codegrees(edge_pairs, j: frozenset[int], w: set[int]) -> dict[int, int]:
    """deg_W(J + {v}) for every v in W: edges containing J whose remaining
    vertices all lie in W, bucketed over those remaining vertices."""
    deg = dict.fromkeys(w, 0)
    for e in edge_pairs:
        if j <= e:
            rest = e - j
            if all(v in w for v in rest):
                for v in rest:
                    deg[v] += 1
    return deg


def _scythe_core(
    h: UniformHypergraph,
    marked: frozenset[int],
    params: ContainerParams,
) -> FingerprintTrace:
    r = h.r
    w = set(range(h.n))
    rem = set(marked)
    segments: list[tuple[int, ...]] = []
    round_sizes = []
    while len(segments) < params.ell and len(w) > params.u and len(rem) >= r - 1:
        round_sizes.append(len(w))
        j: list[int] = []
        for _ in range(r - 1):
            jset = frozenset(j)
            while True:
                deg = _codegrees(h.edges, jset, w)
                v = min(w, key=lambda x: (-deg[x], x))
                w.discard(v)
                if v in rem:
                    rem.discard(v)
                    j.append(v)
                    break
        jset = frozenset(j)
        spoiled = {v for v in w if (jset | {v}) in h.edges}
        w -= spoiled
        segments.append(tuple(j))
    round_sizes.append(len(w))
    return FingerprintTrace(
        segments=tuple(segments),
        container=frozenset(w),
        removed=frozenset(range(h.n)) - frozenset(w) - frozenset(v for s in segments for v in s),
        round_sizes=tuple(round_sizes),
    )


def scythe_fingerprint(
    h: UniformHypergraph, independent: Iterable[int], params: ContainerParams
) -> FingerprintTrace:
    """r-uniform scythe: per round build the nested co-degree orderings,
    extract the next (r-1)-tuple segment of fingerprinted vertices, and delete
    the segment's spoiled neighborhood before recursing."""
    i_set = _check_independent(h, independent)
    return _scythe_core(h, i_set, params)


def reconstruct_segments(
    structure: Structure, unordered_union: Iterable[int], params: ContainerParams
) -> tuple[tuple[int, ...], ...]:
    """Recover the ordered segment sequence from the unordered segment union
    by replaying the orderings; raises ConsistencyError if the replay cannot
    consume the whole union."""
    union = frozenset(unordered_union)
    if isinstance(structure, Graph):
        h = as_two_uniform(structure)
    else:
        h = structure
    trace = _scythe_core(h, union, params)
    if trace.segment_union != union:
        raise ConsistencyError(
            f"replay consumed {sorted(trace.segment_union)} from union {sorted(union)}"
        )
    return trace.segments


def as_two_uniform(g: Graph) -> UniformHypergraph:
    return UniformHypergraph.from_edges(2, g.n, g.edges())
