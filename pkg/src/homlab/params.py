"""Parameter calculators and inequality-chain verifiers for the
count-tradeoff theorems.

All parameters are exact (integers and Fractions).  Transcendental
subexpressions (natural logs, fractional powers) are evaluated with interval
enclosures via mpmath's interval arithmetic; any ceiling taken over such an
expression doubles the working precision until the enclosure pins a single
integer, so results are deterministic and platform-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .errors import ParameterError

__all__ = [
    "GrowthFunction",
    "TheoremParams",
    "ChainCheck",
    "ChainReport",
    "compute_params",
    "verify_inequality_chain",
    "log_enclosure",
]

_MAX_PREC = 1 << 16


def _raw_mpf_to_fraction(raw) -> Fraction:
    # a raw mpf tuple (sign, man, exp, bc) is exactly +-man * 2^exp
    sign, man, exp, _bc = raw
    man, exp = int(man), int(exp)  # may arrive as gmpy2 types
    if man == 0:
        return Fraction(0)
    value = Fraction(man, 1) * (Fraction(2) ** exp)
    return -value if sign else value


def _interval_to_fractions(val) -> tuple[Fraction, Fraction]:
    raw_a, raw_b = val._mpi_
    return _raw_mpf_to_fraction(raw_a), _raw_mpf_to_fraction(raw_b)


def _iv_from_fraction(q: Fraction):
    return mpmath.iv.mpf(q.numerator) / mpmath.iv.mpf(q.denominator)


def log_enclosure(q: Fraction, prec: int = 128) -> tuple[Fraction, Fraction]:
    """Rigorous rational enclosure of ln(q) for q > 0."""
    if q <= 0:
        raise ParameterError(f"log of nonpositive value {q}")
    old = mpmath.iv.prec
    try:
        mpmath.iv.prec = prec
        val = mpmath.iv.log(_iv_from_fraction(q))
        return _interval_to_fractions(val)
    finally:
        mpmath.iv.prec = old


def _resolve_ceil(expr: Callable[[int], tuple[Fraction, Fraction]], prec: int = 128) -> int:
    """Ceiling of a real given an enclosure-producing evaluator; precision is
    doubled until the enclosure no longer straddles an integer boundary."""
    while prec <= _MAX_PREC:
        lo, hi = expr(prec)
        clo, chi = -((-lo.numerator) // lo.denominator), -((-hi.numerator) // hi.denominator)
        if clo == chi:
            return clo
        prec *= 2
    raise ParameterError("ceiling enclosure failed to resolve at maximum precision")


def _ceil_fraction(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


@dataclass(frozen=True)
class GrowthFunction:
    """Nondecreasing growth exponent f with 2 <= f(k) <= ln k on evaluation.

    kinds: "constant" (value, e.g. the reciprocal of a power-law exponent),
    "log-form" (scale * ln k, clamped below at 2, materialized as the rational
    lower enclosure bound so the ln-k cap is respected), or "table" (explicit
    k -> value pairs, consulted with the largest key <= k).
    """

    kind: str
    value: Fraction | None = None
    table: tuple[tuple[int, Fraction], ...] | None = None

    def __post_init__(self) -> None:
        if self.kind == "constant":
            if self.value is None or Fraction(self.value) < 2:
                raise ParameterError("constant growth value must be >= 2")
        elif self.kind == "log-form":
            if self.value is None or not 0 < Fraction(self.value) <= 1:
                raise ParameterError("log-form scale must lie in (0, 1]")
        elif self.kind == "table":
            if not self.table:
                raise ParameterError("table growth function needs entries")
            vals = [Fraction(v) for _, v in sorted(self.table)]
            if vals != sorted(vals):
                raise ParameterError("table growth function must be nondecreasing")
        else:
            raise ParameterError(f"unknown growth kind {self.kind!r}")

    @classmethod
    def constant(cls, value: Fraction) -> "GrowthFunction":
        return cls(kind="constant", value=Fraction(value))

    def __call__(self, k: int) -> Fraction:
        if self.kind == "constant":
            result = Fraction(self.value)
        elif self.kind == "log-form":
            lo, _hi = log_enclosure(Fraction(k))
            result = max(Fraction(2), Fraction(self.value) * lo)
        else:
            entries = sorted(self.table)
            result = Fraction(entries[0][1])
            for key, val in entries:
                if key <= k:
                    result = Fraction(val)
        # enforce 2 <= f(k) <= ln k against the rigorous lower log bound
        if result < 2:
            raise ParameterError(f"growth value f({k})={result} below 2")
        lo, _ = log_enclosure(Fraction(k))
        if result > lo:
            raise ParameterError(f"growth value f({k})={result} exceeds ln {k} enclosure {lo}")
        return result


@dataclass(frozen=True)
class TheoremParams:
    epsilon: Fraction
    k: int
    delta: Fraction
    t: int
    ell: int
    variant: str
    constants: tuple[Fraction, Fraction]
    f_of_k: Fraction


def _pow_ceil(base: int, exponent: Fraction) -> int:
    """Ceiling of base**exponent for base >= 1, exact when the exponent is an
    integer, enclosure-resolved otherwise."""
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        return base ** exponent.numerator
    def expr(prec: int) -> tuple[Fraction, Fraction]:
        old = mpmath.iv.prec
        try:
            mpmath.iv.prec = prec
            val = mpmath.iv.mpf(base) ** _iv_from_fraction(exponent)
            return _interval_to_fractions(val)
        finally:
            mpmath.iv.prec = old
    return _resolve_ceil(expr)


def compute_params(
    variant: str,
    epsilon: Fraction,
    f: GrowthFunction,
    constants: tuple[Fraction, Fraction] | None = None,
    allow_out_of_range: bool = False,
    improved_k: bool = False,
) -> TheoremParams:
    """Exact parameter tuple (epsilon, k, delta, t, ell) for a tradeoff variant.

    variants: "graph" (k = 200*ceil((1/eps) ln^4 (1/eps)), 1/delta = 16 k^(f(k)-1)),
    "uniform" (same shapes with a user constant C in place of 200), and
    "tournament" (k = C*ceil((1/eps^2) ln^4 (1/eps)), 1/delta = C' k^(f(k)-1),
    ell computed against eps^2).  ``improved_k=True`` switches to the sharper
    k = 200*ceil((1/eps) ln^2(1/eps) f((1/eps) ln^4(1/eps))^2) form (report-only
    alternative).
    """
    eps = Fraction(epsilon)
    if not 0 < eps < Fraction(1, 100):
        if not allow_out_of_range:
            raise ParameterError(
                f"epsilon={eps} outside (0, 1/100); pass allow_out_of_range to explore"
            )
    if variant not in ("graph", "uniform", "tournament"):
        raise ParameterError(f"unknown variant {variant!r}")
    if constants is None:
        constants = (Fraction(200), Fraction(200))
    c_big, c_prime = (Fraction(c) for c in constants)
    inv = 1 / eps
    inv_sq = inv * inv

    def log_pow_expr(scale: Fraction, power: int) -> Callable[[int], tuple[Fraction, Fraction]]:
        def expr(prec: int) -> tuple[Fraction, Fraction]:
            lo, hi = log_enclosure(inv, prec)
            lo = max(lo, Fraction(0))
            return scale * lo**power, scale * hi**power
        return expr

    if improved_k:
        inner = _resolve_ceil(log_pow_expr(inv, 4))
        f_inner = f(max(inner, 2))
        def expr(prec: int) -> tuple[Fraction, Fraction]:
            lo, hi = log_enclosure(inv, prec)
            lo = max(lo, Fraction(0))
            return inv * lo**2 * f_inner**2, inv * hi**2 * f_inner**2
        k = 200 * _resolve_ceil(expr)
    elif variant == "graph":
        k = 200 * _resolve_ceil(log_pow_expr(inv, 4))
    elif variant == "uniform":
        k = int(c_big) * _resolve_ceil(log_pow_expr(inv, 4))
    else:
        k = int(c_big) * _resolve_ceil(log_pow_expr(inv_sq, 4))

    f_k = f(k)
    delta_mult = 16 if variant == "graph" else c_prime
    inv_delta = Fraction(delta_mult) * _pow_ceil(k, f_k - 1)
    delta = 1 / inv_delta
    t = _pow_ceil(k, f_k)

    ell_scale = inv_sq if variant == "tournament" else inv

    def ell_expr(prec: int) -> tuple[Fraction, Fraction]:
        lo, hi = log_enclosure(inv_delta, prec)
        return ell_scale * lo, ell_scale * hi

    ell = _resolve_ceil(ell_expr)
    return TheoremParams(
        epsilon=eps,
        k=k,
        delta=delta,
        t=t,
        ell=ell,
        variant=variant,
        constants=(c_big, c_prime),
        f_of_k=f_k,
    )


@dataclass(frozen=True)
class ChainCheck:
    name: str
    lhs: str
    rhs: str
    passed: bool


@dataclass(frozen=True)
class ChainReport:
    checks: tuple[ChainCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_inequality_chain(params: TheoremParams, h: int) -> ChainReport:
    """Exact verification of the four parameter inequalities:

    (i)  (1-eps)^ell <= delta                (container applicability)
    (ii) k/ell >= ln(1/delta)                (segment budget adequacy)
    (iii) 1/delta > 15*t/k                   (count-gap direction)
    (iv) (delta/k)^(h-1) < 1/(2^(h+1) t^(h-1))  (copy threshold dominance)

    (i), (iii), (iv) are pure rational comparisons; (ii) compares k/ell
    against a rigorous upper enclosure of the log, doubling precision if the
    enclosure straddles the comparison value.
    """
    eps, k, delta, t, ell = params.epsilon, params.k, params.delta, params.t, params.ell
    checks = []

    lhs1 = (1 - eps) ** ell
    checks.append(
        ChainCheck("shrinkage reaches container size", f"(1-eps)^ell = {_fmt(lhs1)}",
                   f"delta = {_fmt(delta)}", lhs1 <= delta)
    )

    ratio = Fraction(k, ell)
    prec = 128
    while True:
        lo, hi = log_enclosure(1 / delta, prec)
        if ratio >= hi:
            passed2 = True
            break
        if ratio < lo:
            passed2 = False
            break
        prec *= 2
        if prec > _MAX_PREC:
            raise ParameterError("log enclosure for check (ii) failed to resolve")
    checks.append(
        ChainCheck("budget dominates log(1/delta)", f"k/ell = {_fmt(ratio)}",
                   f"ln(1/delta) in [{_fmt(lo)}, {_fmt(hi)}]", passed2)
    )

    lhs3 = 1 / delta
    rhs3 = Fraction(15 * t, k)
    checks.append(
        ChainCheck("inverse delta exceeds 15t/k", f"1/delta = {_fmt(lhs3)}",
                   f"15t/k = {_fmt(rhs3)}", lhs3 > rhs3)
    )

    lhs4 = (delta / k) ** (h - 1)
    rhs4 = Fraction(1, 2 ** (h + 1) * t ** (h - 1))
    checks.append(
        ChainCheck("copy budget below count threshold", f"(delta/k)^(h-1) = {_fmt(lhs4)}",
                   f"1/(2^(h+1) t^(h-1)) = {_fmt(rhs4)}", lhs4 < rhs4)
    )
    return ChainReport(tuple(checks))


def _fmt(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    if q.numerator.bit_length() + q.denominator.bit_length() > 128:
        return f"~{float(q):.12g}"
    return f"{q.numerator}/{q.denominator}"
