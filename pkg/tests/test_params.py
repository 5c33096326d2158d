import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlab.errors import ParameterError
from homlab.params import (
    GrowthFunction,
    compute_params,
    log_enclosure,
    verify_inequality_chain,
)

F2 = GrowthFunction.constant(Fraction(2))


# ---------------------------------------------------------------------------
# enclosures


@given(st.fractions(min_value=Fraction(1, 10**6), max_value=Fraction(10**6)))
@settings(max_examples=150, deadline=None)
def test_log_enclosure_brackets_float_log(q):
    lo, hi = log_enclosure(q)
    assert lo <= hi
    assert float(lo) <= math.log(q) + 1e-9
    assert math.log(q) - 1e-9 <= float(hi)
    assert hi - lo < Fraction(1, 10**20)


def test_log_enclosure_rejects_nonpositive():
    with pytest.raises(ParameterError):
        log_enclosure(Fraction(0))


# ---------------------------------------------------------------------------
# growth functions


def test_growth_constant_validation():
    with pytest.raises(ParameterError):
        GrowthFunction.constant(Fraction(3, 2))


def test_growth_upper_cap_enforced():
    f = GrowthFunction.constant(Fraction(3))
    with pytest.raises(ParameterError):
        f(10)  # ln 10 < 3
    assert f(10**9) == 3


def test_growth_log_form_respects_range():
    f = GrowthFunction(kind="log-form", value=Fraction(1, 2))
    v = f(10**6)
    assert 2 <= v
    assert float(v) == pytest.approx(0.5 * math.log(10**6), rel=1e-6)


def test_growth_table_monotonicity_check():
    with pytest.raises(ParameterError):
        GrowthFunction(kind="table", table=((10, Fraction(3)), (100, Fraction(2))))


# ---------------------------------------------------------------------------
# parameter presets and the chain


@pytest.mark.parametrize("eps_den", [128, 256, 512])
def test_chain_passes_on_presets(eps_den):
    params = compute_params("graph", Fraction(1, eps_den), F2)
    report = verify_inequality_chain(params, h=4)
    assert report.all_passed, [c.name for c in report.checks if not c.passed]


def test_preset_values_pinned():
    params = compute_params("graph", Fraction(1, 128), F2)
    # k = 200 * ceil((1/eps) ln^4(1/eps)); ln(128)^4 * 128 = 70942.99...
    assert params.k == 200 * 70943
    assert 1 / params.delta == 16 * params.k
    assert params.t == params.k**2
    # ell = ceil((1/eps) ln(1/delta))
    assert params.ell == math.ceil(128 * math.log(16 * params.k))


def test_uniform_variant_uses_constant():
    params = compute_params("uniform", Fraction(1, 128), F2, constants=(Fraction(100), Fraction(50)))
    assert params.k == 100 * 70943
    assert 1 / params.delta == 50 * params.k


def test_tournament_variant_scales_by_eps_squared():
    graph = compute_params("graph", Fraction(1, 128), F2)
    tour = compute_params("tournament", Fraction(1, 128), F2)
    assert tour.k > graph.k  # ln^4 term now against 1/eps^2
    assert tour.ell > 128 * tour.k // tour.k  # ell uses the 1/eps^2 scale
    ratio = Fraction(tour.ell, math.ceil(128 * 128 * math.log(float(1 / tour.delta))))
    assert abs(ratio - 1) < Fraction(1, 100)


def test_improved_k_variant_is_smaller_here():
    base = compute_params("graph", Fraction(1, 512), F2)
    improved = compute_params("graph", Fraction(1, 512), F2, improved_k=True)
    assert improved.k < base.k


def test_epsilon_range_guard():
    with pytest.raises(ParameterError):
        compute_params("graph", Fraction(1, 50), F2)
    params = compute_params("graph", Fraction(1, 50), F2, allow_out_of_range=True)
    assert params.k > 0


def test_chain_detects_corruption():
    import dataclasses

    params = compute_params("graph", Fraction(1, 128), F2)
    corrupted = dataclasses.replace(params, delta=params.delta * 2)
    report = verify_inequality_chain(corrupted, h=4)
    assert not report.all_passed
    failed = [c.name for c in report.checks if not c.passed]
    assert failed == ["inverse delta exceeds 15t/k"]


def test_compute_params_is_rerun_identical():
    runs = [compute_params("graph", Fraction(1, 256), F2) for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]


def test_check_operands_are_recomputable():
    params = compute_params("graph", Fraction(1, 128), F2)
    report = verify_inequality_chain(params, h=4)
    for check in report.checks:
        assert check.lhs and check.rhs  # stored exact operands render non-empty
