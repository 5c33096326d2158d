import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlab.containers import (
    ContainerParams,
    as_two_uniform,
    count_independent_sets_exact,
    hypergraph_bound,
    is_independent,
    kw_bound,
    kw_fingerprint,
    minimal_ell,
    reconstruct_segments,
    scythe_fingerprint,
    verify_degree_precondition,
)
from homlab.errors import ConsistencyError, ParameterError
from homlab.generators import gnp, random_independent_set, random_uniform_hypergraph
from homlab.graphs import Graph, complete_graph, cycle_graph, empty_graph


def all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if code >> i & 1])


# ---------------------------------------------------------------------------
# parameters and bounds


def test_minimal_ell_examples():
    assert minimal_ell(10, Fraction(1, 2), 3) == 2
    assert minimal_ell(10, Fraction(1), 1) == 1
    assert minimal_ell(4, Fraction(1, 2), 4) == 0


def test_params_reject_shrinkage_violation():
    with pytest.raises(ParameterError):
        ContainerParams(Fraction(1, 2), u=1, ell=1, k=2).check_for(10)


def test_params_reject_ell_above_k():
    with pytest.raises(ParameterError):
        ContainerParams(Fraction(1, 2), u=3, ell=2, k=1).check_for(10)


def test_kw_bound_example():
    params = ContainerParams(Fraction(1, 2), u=3, ell=2, k=4)
    assert kw_bound(10, params) == math.comb(10, 2) * math.comb(3, 2)  # 135


def test_improved_bound_is_exact_ceiling():
    params = ContainerParams(Fraction(1, 2), u=3, ell=2, k=4)
    value = kw_bound(10, params, improved=True)
    # 2^2 * sqrt(3/10) * 135, ceiling
    sq = Fraction(16 * 135 * 135) * Fraction(3, 10)
    assert (value - 1) ** 2 < sq <= value**2


def test_hypergraph_bound_formula():
    params = ContainerParams(Fraction(1, 2), u=5, ell=1, k=4)
    assert hypergraph_bound(9, 3, params) == math.comb(9, 2) * math.comb(5, 2)


# ---------------------------------------------------------------------------
# exact counting oracle


def test_is_count_on_c5():
    assert count_independent_sets_exact(cycle_graph(5), 2) == 5
    assert count_independent_sets_exact(cycle_graph(5), 0) == 1
    assert count_independent_sets_exact(complete_graph(5), 2) == 0
    assert count_independent_sets_exact(empty_graph(5), 3) == 10


@given(st.integers(1, 6), st.integers(0, 6), st.integers(0, 2**15 - 1))
@settings(max_examples=150, deadline=None)
def test_is_count_matches_bruteforce(n, k, code):
    pairs = list(itertools.combinations(range(n), 2))
    g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if code >> i & 1])
    brute = sum(
        1 for combo in itertools.combinations(range(n), k) if is_independent(g, combo)
    )
    assert count_independent_sets_exact(g, k) == brute


# ---------------------------------------------------------------------------
# degree precondition


def test_precondition_on_complete_graph():
    ok, witness = verify_degree_precondition(complete_graph(6), Fraction(1), 2)
    assert ok and witness is None


def test_precondition_fails_on_empty_graph():
    ok, witness = verify_degree_precondition(empty_graph(6), Fraction(1), 2)
    assert not ok
    assert witness is not None and len(witness) >= 2


def test_precondition_uniform_variant_threshold():
    # single edge on 4 vertices: S of size 4 > u=3 has max degree 1 < (1/2)*3^2
    h = random_uniform_hypergraph(3, 4, Fraction(0), seed=0)
    h = type(h).from_edges(3, 4, [(0, 1, 2)])
    ok, witness = verify_degree_precondition(h, Fraction(1, 2), 3, variant="uniform")
    assert not ok and witness == frozenset(range(4))


# ---------------------------------------------------------------------------
# soundness at desk scale (the scalar pin for the vectorized sweep)


@pytest.mark.parametrize("n", [4, 5])
def test_bound_sound_exhaustively_small(n):
    eps_grid = [Fraction(1, 2), Fraction(1)]
    for g in all_graphs(n):
        for eps in eps_grid:
            for u in range(1, n + 1):
                ok, _ = verify_degree_precondition(g, eps, u)
                if not ok:
                    continue
                ell = minimal_ell(n, eps, u)
                for k in range(ell, n + 1):
                    params = ContainerParams(eps, u=u, ell=ell, k=k)
                    assert count_independent_sets_exact(g, k) <= kw_bound(n, params)
                    # the sharper bound has no proof; report loudly if it breaks
                    improved = kw_bound(n, params, improved=True)
                    assert count_independent_sets_exact(g, k) <= improved, (
                        f"improved bound violated: n={n} eps={eps} u={u} k={k} "
                        f"graph={g.masks}"
                    )


# ---------------------------------------------------------------------------
# fingerprints


def _trace_params(n, eps, u, k=None):
    ell = minimal_ell(n, eps, u)
    return ContainerParams(eps, u=u, ell=ell, k=k if k is not None else max(2 * ell, n))


def test_k6_fingerprint_trace():
    g = complete_graph(6)
    trace = kw_fingerprint(g, {3}, _trace_params(6, Fraction(1), 1))
    assert trace.segments == ((3,),)
    assert trace.container == frozenset()
    assert trace.removed == frozenset({0, 1, 2, 4, 5})


def test_fingerprint_rejects_dependent_set():
    from homlab.errors import InputError

    with pytest.raises(InputError):
        kw_fingerprint(cycle_graph(5), {0, 1}, _trace_params(5, Fraction(1, 2), 2))


@given(st.integers(5, 11), st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_graph_fingerprint_roundtrip(n, seed):
    g = gnp(n, Fraction(1, 2), seed)
    iset = random_independent_set(g, seed, stream=1)
    params = _trace_params(n, Fraction(1, 2), max(1, n // 2))
    trace = kw_fingerprint(g, iset, params)
    assert iset <= trace.segment_union | trace.container
    assert reconstruct_segments(g, trace.segment_union, params) == trace.segments


@given(st.integers(6, 10), st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_scythe_roundtrip_three_uniform(n, seed):
    h = random_uniform_hypergraph(3, n, Fraction(3, 10), seed)
    iset = random_independent_set(h, seed, stream=1)
    params = _trace_params(n, Fraction(1, 4), max(1, n // 2))
    trace = scythe_fingerprint(h, iset, params)
    assert iset <= trace.segment_union | trace.container
    assert reconstruct_segments(h, trace.segment_union, params) == trace.segments


@given(st.integers(5, 10), st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_scythe_r2_matches_graph_fingerprint(n, seed):
    g = gnp(n, Fraction(1, 2), seed)
    iset = random_independent_set(g, seed, stream=2)
    params = _trace_params(n, Fraction(1, 2), max(1, n // 2))
    kw_trace = kw_fingerprint(g, iset, params)
    scythe_trace = scythe_fingerprint(as_two_uniform(g), iset, params)
    assert scythe_trace.segments == kw_trace.segments
    assert scythe_trace.container == kw_trace.container


def test_reconstruction_rejects_impossible_union():
    # in K6 the first segment wipes out every other vertex, so a two-element
    # union can never be replayed in full
    with pytest.raises(ConsistencyError):
        reconstruct_segments(
            complete_graph(6), {3, 5}, ContainerParams(Fraction(1), u=1, ell=2, k=6)
        )


@given(st.integers(5, 11), st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_trace_round_sizes_shrink(n, seed):
    g = gnp(n, Fraction(1, 2), seed)
    iset = random_independent_set(g, seed, stream=3)
    trace = kw_fingerprint(g, iset, _trace_params(n, Fraction(1, 2), max(1, n // 2)))
    sizes = trace.round_sizes
    assert all(sizes[i + 1] < sizes[i] for i in range(len(sizes) - 1))
