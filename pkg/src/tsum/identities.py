"""Two-sided numeric verification of the closed-form identities.

Each verifier evaluates both sides of one identity (or the four structural
terms of a residue-sum-zero statement) by independent routes: the series
side through the summation engine, the closed-form side through the special
function evaluators, and residue terms through jet arithmetic.  A
``VerificationReport`` records the gap against the requested tolerance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional, Sequence

from mpmath import mp, mpf

from .jets import jet_from_coeffs, jet_mul, jet_residue, jet_scale
from .numeric import round_to, to_mpf
from .series import SeriesResult, accel_linear_sum
from .special import (
    DEFAULT_CONVENTION,
    DomainError,
    KernelKind,
    ZetaConvention,
    alt_hurwitz_any,
    alt_shifted_power_sum,
    alt_zeta,
    digamma_any,
    hurwitz_any,
    kernel_jet,
    kernel_value,
    psi_jet,
    riemann_zeta,
    shifted_power_sum,
    ttilde,
    ttilde_bar,
)

Frac = Fraction


class HypothesisError(DomainError):
    """Identity hypotheses violated by the requested parameters."""


@dataclass(frozen=True)
class VerificationReport:
    case_id: str
    family: str
    params: dict
    lhs: mpf
    rhs: mpf
    absolute_gap: mpf
    passed: bool
    tolerance: mpf
    precision_bits: int
    terms_used: int
    elapsed_ms: float


def _report(case_id: str, family: str, params: dict, lhs: mpf, rhs: mpf,
            tol: mpf, prec: int, terms: int, t0: float) -> VerificationReport:
    with mp.workprec(prec + 16):
        gap = abs(lhs - rhs)
        passed = bool(gap <= tol)
    return VerificationReport(case_id, family, params, lhs, rhs, gap,
                              passed, tol, prec, terms,
                              (time.perf_counter() - t0) * 1000.0)


def _fmt(x) -> str:
    return str(Fraction(x))


def _check_ab(a: Frac, b: Optional[Frac]) -> None:
    vals = [a] if b is None else [a, b]
    if b is not None and a == b:
        raise HypothesisError("requires a != b")
    for v in vals:
        if v.denominator == 1 and v <= 0:
            raise HypothesisError("shift parameters must avoid non-positive integers")
        if v.denominator == 2:
            raise HypothesisError("shift parameters must avoid half-odd integers")
        if abs(v) >= 1:
            raise HypothesisError("this artifact restricts shift parameters to |a| < 1")


def _zx(s: int, x: Frac, conv: ZetaConvention, prec: int) -> mpf:
    """Hurwitz zeta with the s = 1 convention routed through ``conv``."""
    if s == 1:
        return conv.hurwitz1(x, prec)
    return hurwitz_any(s, x, prec)


def _pair_pf(a: Frac, b: Frac, negate: bool) -> list[tuple[Frac, int, Frac]]:
    """Partial fractions of 1/((n + a - 1/2)(n + b - 1/2)), optionally with
    both shifts negated."""
    ta = (-a if negate else a) - Frac(1, 2)
    tb = (-b if negate else b) - Frac(1, 2)
    c = 1 / (tb - ta)
    return [(ta, 1, c), (tb, 1, -c)]


# ---------------------------------------------------------------------------
# Pairwise-parameter identities (tan and cos kernels) and their
# single-parameter specializations
# ---------------------------------------------------------------------------

def verify_thm3_1(p: int, a: Frac, b: Frac, prec: int, tolerance,
                  convention: ZetaConvention = DEFAULT_CONVENTION) -> VerificationReport:
    t0 = time.perf_counter()
    if p < 1:
        raise HypothesisError("requires p >= 1")
    a, b = Fraction(a), Fraction(b)
    _check_ab(a, b)
    wp = prec + 24
    with mp.workprec(wp):
        tol = _tol_mpf(tolerance, wp)
        s1 = accel_linear_sum(p, 0, 1, _pair_pf(a, b, False), wp)
        s2 = accel_linear_sum(p, 1, 1, _pair_pf(a, b, True), wp)
        sgn = 1 if p % 2 == 0 else -1
        lhs = s1.value - sgn * s2.value
        inv_ba = 1 / to_mpf(b - a, wp)
        ksum = mpf(0)
        for k in range(1, p // 2 + 1):
            ksum += ttilde(2 * k, wp) * (_zx(p - 2 * k + 1, a, convention, wp)
                                         - _zx(p - 2 * k + 1, b, convention, wp))
        rhs = 2 * sgn * inv_ba * ksum
        tp = ttilde(p, wp)
        rhs += sgn * inv_ba * (
            kernel_value(KernelKind.PI_TAN, b, wp) * (_zx(p, b, convention, wp) - tp)
            - kernel_value(KernelKind.PI_TAN, a, wp) * (_zx(p, a, convention, wp) - tp))
        lhs, rhs = round_to(lhs, prec), round_to(rhs, prec)
    params = {"p": p, "a": _fmt(a), "b": _fmt(b)}
    case_id = f"thm3_1[p={p},a={_fmt(a)},b={_fmt(b)}]"
    return _report(case_id, "thm3_1", params, lhs, rhs, tol, prec,
                   s1.terms_used + s2.terms_used, t0)


def verify_thm3_4(p: int, a: Frac, b: Frac, prec: int, tolerance,
                  convention: ZetaConvention = DEFAULT_CONVENTION) -> VerificationReport:
    t0 = time.perf_counter()
    if p < 1:
        raise HypothesisError("requires p >= 1")
    a, b = Fraction(a), Fraction(b)
    _check_ab(a, b)
    wp = prec + 24
    with mp.workprec(wp):
        tol = _tol_mpf(tolerance, wp)
        s1 = accel_linear_sum(p, 0, -1, _pair_pf(a, b, False), wp)
        s2 = accel_linear_sum(p, 1, -1, _pair_pf(a, b, True), wp)
        sgn = 1 if p % 2 == 0 else -1
        lhs = s1.value + sgn * s2.value
        inv_ba = 1 / to_mpf(b - a, wp)
        ksum = mpf(0)
        for k in range(0, (p - 1) // 2 + 1):
            ksum += ttilde_bar(2 * k + 1, wp) * (alt_hurwitz_any(p - 2 * k, b, wp)
                                                 - alt_hurwitz_any(p - 2 * k, a, wp))
        rhs = 2 * sgn * inv_ba * ksum
        tp = ttilde(p, wp)
        rhs += sgn * inv_ba * (
            kernel_value(KernelKind.PI_OVER_COS, b, wp) * (_zx(p, b, convention, wp) - tp)
            - kernel_value(KernelKind.PI_OVER_COS, a, wp) * (_zx(p, a, convention, wp) - tp))
        lhs, rhs = round_to(lhs, prec), round_to(rhs, prec)
    params = {"p": p, "a": _fmt(a), "b": _fmt(b)}
    case_id = f"thm3_4[p={p},a={_fmt(a)},b={_fmt(b)}]"
    return _report(case_id, "thm3_4", params, lhs, rhs, tol, prec,
                   s1.terms_used + s2.terms_used, t0)


def _tol_mpf(tolerance, wp: int) -> mpf:
    with mp.workprec(wp):
        return +mpf(str(tolerance))


def _check_single_a(a: Frac, *, half_box: bool, exclude_half: bool) -> None:
    if a.denominator == 1:
        raise HypothesisError("requires a not an integer")
    if a.denominator == 2:
        raise HypothesisError("requires a + 1/2 not an integer")
    if half_box and not (0 < abs(a) < Frac(1, 2)):
        raise HypothesisError("requires 0 < |a| < 1/2")
    if exclude_half and a == Frac(1, 2):
        raise HypothesisError("requires a != 1/2")
    if abs(a) >= 1:
        raise HypothesisError("this artifact restricts shift parameters to |a| < 1")


def _pure_series(q: Sequence[int], a_params: Sequence[Frac], sigma: int, wp: int) -> SeriesResult:
    from .series import SumSpec, euler_t_sum
    spec = SumSpec(p=(), q=tuple(q), a=tuple(a_params), sigma=sigma)
    return euler_t_sum(spec, wp)


def verify_cor3_2(m: int, a: Frac, prec: int, tolerance,
                  convention: ZetaConvention = DEFAULT_CONVENTION) -> VerificationReport:
    """The b = -a specialization of the tangent-kernel identity, odd-order factor."""
    t0 = time.perf_counter()
    if m < 0:
        raise HypothesisError("requires m >= 0")
    a = Fraction(a)
    _check_single_a(a, half_box=True, exclude_half=False)
    wp = prec + 24
    p = 2 * m + 1
    with mp.workprec(wp):
        tol = _tol_mpf(tolerance, wp)
        s1 = accel_linear_sum(p, 0, 1, _pair_pf(a, -a, False), wp)
        lhs = s1.value
        s0 = _pure_series((p, 1, 1), (Frac(0), a, -a), 1, wp)
        inv2a = 1 / (2 * to_mpf(a, wp))
        rhs = s0.value / 2
        for k in range(1, m + 1):
            rhs += inv2a * ttilde(2 * k, wp) * (hurwitz_any(2 * m - 2 * k + 2, a, wp)
                                                - hurwitz_any(2 * m - 2 * k + 2, -a, wp))
        rhs += kernel_value(KernelKind.PI_TAN, a, wp) / (4 * to_mpf(a, wp)) * (
            2 * ttilde(p, wp) - _zx(p, a, convention, wp) - _zx(p, -a, convention, wp))
        lhs, rhs = round_to(lhs, prec), round_to(rhs, prec)
    params = {"m": m, "a": _fmt(a)}
    return _report(f"cor3_2[m={m},a={_fmt(a)}]", "cor3_2", params, lhs, rhs, tol,
                   prec, s1.terms_used + s0.terms_used, t0)


def verify_cor3_3(m: int, a: Frac, prec: int, tolerance,
                  convention: ZetaConvention = DEFAULT_CONVENTION) -> VerificationReport:
    """The b = 1 - a specialization of the tangent-kernel identity."""
    t0 = time.perf_counter()
    if m < 0:
        raise HypothesisError("requires m >= 0")
    a = Fraction(a)
    _check_single_a(a, half_box=False, exclude_half=True)
    wp = prec + 24
    p = 2 * m + 1
    with mp.workprec(wp):
        tol = _tol_mpf(tolerance, wp)
        s1 = accel_linear_sum(p, 0, 1, _pair_pf(a, 1 - a, False), wp)
        lhs = s1.value
        inv = 1 / to_mpf(2 * a - 1, wp)
        rhs = mpf(0)
        for k in range(1, m + 1):
            rhs += inv * ttilde(2 * k, wp) * (hurwitz_any(2 * m - 2 * k + 2, a, wp)
                                              - hurwitz_any(2 * m - 2 * k + 2, 1 - a, wp))
        rhs += kernel_value(KernelKind.PI_TAN, a, wp) * inv / 2 * (
            2 * ttilde(p, wp) - _zx(p, a, convention, wp) - _zx(p, 1 - a, convention, wp))
        lhs, rhs = round_to(lhs, prec), round_to(rhs, prec)
    params = {"m": m, "a": _fmt(a)}
    return _report(f"cor3_3[m={m},a={_fmt(a)}]", "cor3_3", params, lhs, rhs, tol,
                   prec, s1.terms_used, t0)


def verify_cor3_5(m: int, a: Frac, prec: int, tolerance,
                  convention: ZetaConvention = DEFAULT_CONVENTION) -> VerificationReport:
    """The b = -a specialization of the secant-kernel identity, even-order factor."""
    t0 = time.perf_counter()
    if m < 1:
        raise HypothesisError("requires m >= 1")
    a = Fraction(a)
    _check_single_a(a, half_box=True, exclude_half=False)
    wp = prec + 24
    p = 2 * m
    with mp.workprec(wp):
        tol = _tol_mpf(tolerance, wp)
        s1 = accel_linear_sum(p, 0, -1, _pair_pf(a, -a, False), wp)
        lhs = s1.value
        s0 = _pure_series((p, 1, 1), (Frac(0), a, -a), -1, wp)
        inv2a = 1 / (2 * to_mpf(a, wp))
        rhs = s0.value / 2
        for k in range(0, m):
            rhs += inv2a * ttilde_bar(2 * k + 1, wp) * (alt_hurwitz_any(2 * m - 2 * k, a, wp)
                                                        - alt_hurwitz_any(2 * m - 2 * k, -a, wp))
        rhs += kernel_value(KernelKind.PI_OVER_COS, a, wp) / (4 * to_mpf(a, wp)) * (
            hurwitz_any(p, a, wp) - hurwitz_any(p, -a, wp))
        lhs, rhs = round_to(lhs, prec), round_to(rhs, prec)
    params = {"m": m, "a": _fmt(a)}
    return _report(f"cor3_5[m={m},a={_fmt(a)}]", "cor3_5", params, lhs, rhs, tol,
                   prec, s1.terms_used + s0.terms_used, t0)


def verify_cor3_6(m: int, a: Frac, prec: int, tolerance,
                  convention: ZetaConvention = DEFAULT_CONVENTION) -> VerificationReport:
    """The b = 1 - a specialization of the secant-kernel identity."""
    t0 = time.perf_counter()
    if m < 0:
        raise HypothesisError("requires m >= 0")
    a = Fraction(a)
    _check_single_a(a, half_box=False, exclude_half=True)
    wp = prec + 24
    p = 2 * m + 1
    with mp.workprec(wp):
        tol = _tol_mpf(tolerance, wp)
        s1 = accel_linear_sum(p, 0, -1, _pair_pf(a, 1 - a, False), wp)
        lhs = s1.value
        inv = 1 / to_mpf(2 * a - 1, wp)
        rhs = mpf(0)
        for k in range(0, m + 1):
            rhs += inv * ttilde_bar(2 * k + 1, wp) * (
                alt_hurwitz_any(2 * m - 2 * k + 1, 1 - a, wp)
                - alt_hurwitz_any(2 * m - 2 * k + 1, a, wp))
        rhs += kernel_value(KernelKind.PI_OVER_COS, a, wp) * inv / 2 * (
            2 * ttilde(p, wp) - _zx(p, a, convention, wp) - _zx(p, 1 - a, convention, wp))
        lhs, rhs = round_to(lhs, prec), round_to(rhs, prec)
    params = {"m": m, "a": _fmt(a)}
    return _report(f"cor3_6[m={m},a={_fmt(a)}]", "cor3_6", params, lhs, rhs, tol,
                   prec, s1.terms_used, t0)


# ---------------------------------------------------------------------------
# General rational-function residue identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartialFractionRational:
    """r(z) = sum c / (z - beta)^m with rational data, O(z^-2) at infinity.

    Poles must avoid 0, the positive integers and all half-odd integers;
    only these exact rational inequalities are enforced.  Poles that merely
    come close to the excluded set are accepted, but the residue evaluation
    is increasingly ill-conditioned there and the working-precision guard
    absorbs only a bounded amount of that loss.
    """

    terms: tuple[tuple[Fraction, int, Fraction], ...]

    def __post_init__(self):
        terms = tuple((Fraction(b), int(m), Fraction(c)) for b, m, c in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise HypothesisError("rational function must have at least one pole term")
        for beta, m, c in terms:
            if m < 1:
                raise HypothesisError("pole orders must be >= 1")
            if c == 0:
                raise HypothesisError("zero coefficients are not allowed")
            if beta == 0:
                raise HypothesisError("0 must not be a pole")
            if beta.denominator == 1 and beta >= 1:
                raise HypothesisError("positive integers must not be poles")
            if beta.denominator == 2:
                raise HypothesisError("half-odd integers must not be poles")
        if sum(c for _, m, c in terms if m == 1) != 0:
            raise HypothesisError("order-1 coefficients must sum to zero (O(z^-2) at infinity)")

    def poles(self) -> list[Fraction]:
        return sorted({beta for beta, _, _ in self.terms})

    def max_order(self) -> int:
        return max(m for _, m, _ in self.terms)

    def text(self) -> str:
        return ";".join(f"({_fmt(b)},{m},{_fmt(c)})" for b, m, c in self.terms)

    @classmethod
    def parse(cls, s: str) -> "PartialFractionRational":
        terms = []
        for chunk in s.split(";"):
            chunk = chunk.strip().strip("()")
            b, m, c = chunk.split(",")
            terms.append((Fraction(b), int(m), Fraction(c)))
        return cls(tuple(terms))


def _half_shift_pf(r: PartialFractionRational, reflect: bool) -> list[tuple[Frac, int, Frac]]:
    """Partial fractions of r(n - 1/2) (or r(1/2 - n) when reflect)."""
    out = []
    for beta, m, c in r.terms:
        if reflect:
            out.append((beta - Frac(1, 2), m, c * (-1) ** m))
        else:
            out.append((-beta - Frac(1, 2), m, c))
    return out


def _derivative_sum(r: PartialFractionRational, d: int, wp: int, alternating: bool) -> mpf:
    """sum_{n>=0} (+-1)^n r^(d)(n) evaluated per partial-fraction term."""
    total = mpf(0)
    sgn = -1 if d % 2 == 1 else 1
    psi_part = mpf(0)
    for beta, m, c in r.terms:
        q = m + d
        rising = factorial(m + d - 1) // factorial(m - 1)
        if alternating:
            sigma = alt_shifted_power_sum(q, beta, wp)
        elif q == 1:
            # grouped below through digamma (coefficients sum to zero)
            psi_part -= to_mpf(c, wp) * digamma_any(-beta, wp)
            continue
        else:
            sigma = shifted_power_sum(q, beta, wp)
        total += to_mpf(c, wp) * sgn * rising * sigma
    return total + psi_part


def _residue_total(kind: KernelKind, p: int, r: PartialFractionRational, wp: int) -> mpf:
    """sum over poles of r of Res(kernel * Psi-jet/(p-1)! * r, beta)."""
    total = mpf(0)
    by_pole: dict[Fraction, list[tuple[int, Fraction]]] = {}
    for beta, m, c in r.terms:
        by_pole.setdefault(beta, []).append((m, c))
    for beta, parts in by_pole.items():
        M = max(m for m, _ in parts)
        K = M + 2
        kj = kernel_jet(kind, beta, K, wp)
        pj = jet_scale(psi_jet(p, beta, K, wp), Fraction(1, factorial(p - 1)))
        coeffs = [Fraction(0)] * (K + 1)
        for m, c in parts:
            coeffs[M - m] += c
        for beta2, m2, c2 in r.terms:
            if beta2 == beta:
                continue
            delta = beta - beta2
            for jj in range(K - M + 1):
                coeffs[M + jj] += c2 * (-1) ** jj * comb(m2 + jj - 1, jj) / delta ** (m2 + jj)
        rj = jet_from_coeffs(beta, coeffs, wp, pole_order=M)
        total += jet_residue(jet_mul(jet_mul(kj, pj), rj))
    return total


def verify_thm3_6(p: int, r: PartialFractionRational, prec: int, tolerance) -> VerificationReport:
    """Residue-sum-zero check with the tangent kernel."""
    t0 = time.perf_counter()
    if p < 1:
        raise HypothesisError("requires p >= 1")
    wp = prec + 24
    with mp.workprec(wp):
        tol = _tol_mpf(tolerance, wp)
        pf1 = _half_shift_pf(r, False)
        pf2 = _half_shift_pf(r, True)
        sgn = 1 if p % 2 == 0 else -1
        tp = ttilde(p, wp)
        sum1 = accel_linear_sum(p, 0, 1, pf1, wp)
        rat1 = accel_linear_sum(None, 0, 1, pf1, wp)
        term1 = -(sgn * tp * rat1.value + sum1.value)
        sum2 = accel_linear_sum(p, 1, 1, pf2, wp)
        rat2 = accel_linear_sum(None, 0, 1, pf2, wp)
        term2 = -sgn * (tp * rat2.value - sum2.value)
        term3 = mpf(0)
        for k in range(1, p // 2 + 1):
            d = p - 2 * k
            term3 += 2 * ttilde(2 * k, wp) / factorial(d) * _derivative_sum(r, d, wp, False)
        term4 = _residue_total(KernelKind.PI_TAN, p, r, wp)
        total = round_to(term1 + term2 + term3 + term4, prec)
    params = {"p": p, "r": r.text()}
    return _report(f"thm3_6[p={p},r={r.text()}]", "thm3_6", params, total, mpf(0),
                   tol, prec, sum1.terms_used + sum2.terms_used, t0)


def verify_thm3_7(p: int, r: PartialFractionRational, prec: int, tolerance) -> VerificationReport:
    """Residue-sum-zero check with the secant kernel."""
    t0 = time.perf_counter()
    if p < 1:
        raise HypothesisError("requires p >= 1")
    wp = prec + 24
    with mp.workprec(wp):
        tol = _tol_mpf(tolerance, wp)
        pf1 = _half_shift_pf(r, False)
        pf2 = _half_shift_pf(r, True)
        sgn = 1 if p % 2 == 0 else -1
        tp = ttilde(p, wp)
        sum1 = accel_linear_sum(p, 0, -1, pf1, wp)
        rat1 = accel_linear_sum(None, 0, -1, pf1, wp)
        term1 = sgn * tp * rat1.value + sum1.value
        sum2 = accel_linear_sum(p, 1, -1, pf2, wp)
        rat2 = accel_linear_sum(None, 0, -1, pf2, wp)
        term2 = -sgn * (tp * rat2.value - sum2.value)
        term3 = mpf(0)
        for k in range(0, (p - 1) // 2 + 1):
            d = p - 1 - 2 * k
            term3 -= 2 * ttilde_bar(2 * k + 1, wp) / factorial(d) * _derivative_sum(r, d, wp, True)
        term4 = _residue_total(KernelKind.PI_OVER_COS, p, r, wp)
        total = round_to(term1 + term2 + term3 + term4, prec)
    params = {"p": p, "r": r.text()}
    return _report(f"thm3_7[p={p},r={r.text()}]", "thm3_7", params, total, mpf(0),
                   tol, prec, sum1.terms_used + sum2.terms_used, t0)


RESIDUE_CASE_CATALOG: list[tuple[int, str]] = [
    (1, "(-1/4,1,12);(-1/3,1,-12)"),
    (2, "(-1/4,2,1)"),
    (3, "(1/5,1,2);(1/4,1,-3);(-2/7,1,1)"),
    (1, "(-2/7,3,1)"),
    (2, "(1/5,2,1);(-1/4,3,1)"),
    (3, "(-3,1,1);(1/5,1,-1)"),
]


# ---------------------------------------------------------------------------
# Expansion-coefficient suites (the two lemma families)
# ---------------------------------------------------------------------------

def _lemma_psi_checks(order: int, prec: int) -> tuple[mpf, mpf, mpf, int]:
    """Compare psi jets against the closed expansion coefficients.

    Returns (max gap, lhs-at-max, rhs-at-max, comparison count).
    """
    from .series import harmonic, odd_harmonic
    worst = mpf(0)
    wl = wr = mpf(0)
    count = 0
    wp = prec + 16

    def _note(lv: mpf, rv: mpf):
        nonlocal worst, wl, wr, count
        count += 1
        g = abs(lv - rv)
        if g > worst:
            worst, wl, wr = g, lv, rv

    with mp.workprec(wp):
        for p in (1, 2, 3):
            fac = factorial(p - 1)
            sgn = 1 if p % 2 == 0 else -1
            for n in range(4):
                # expansion at the integer pole n
                jet = psi_jet(p, Fraction(n), order, wp)
                _note(jet.coeffs[0] / fac, mpf(1))
                for i in range(1, min(p, order + 1)):
                    _note(jet.coeffs[i], mpf(0))
                for j in range(p, order + 1):
                    i = j
                    zi = -2 * _log2(wp) if i == 1 else riemann_zeta(i, wp)
                    closed = sgn * comb(i - 1, p - 1) * (
                        (-1) ** i * to_mpf(harmonic(n, i), wp) + zi)
                    _note(jet.coeffs[j] / fac, closed)
                # expansion at n - 1/2 (analytic)
                jet = psi_jet(p, Fraction(2 * n - 1, 2), order, wp)
                for j in range(order + 1):
                    i = p + j
                    closed = sgn * comb(i - 1, p - 1) * (
                        (-1) ** i * to_mpf(odd_harmonic(n, i), wp) + ttilde(i, wp))
                    _note(jet.coeffs[j], closed * fac)
                # expansion at 1/2 - n (analytic), n >= 1
                if n >= 1:
                    jet = psi_jet(p, Fraction(1 - 2 * n, 2), order, wp)
                    for j in range(order + 1):
                        i = p + j
                        closed = sgn * comb(i - 1, p - 1) * (
                            ttilde(i, wp) - to_mpf(odd_harmonic(n - 1, i), wp))
                        _note(jet.coeffs[j], closed * fac)
    return worst, wl, wr, count


def _log2(wp: int) -> mpf:
    from .numeric import real_const
    return real_const("log2", wp)


def _lemma_trig_checks(order: int, prec: int) -> tuple[mpf, mpf, mpf, int]:
    """Compare trig kernel jets against the closed expansion coefficients."""
    worst = mpf(0)
    wl = wr = mpf(0)
    count = 0
    wp = prec + 16

    def _note(lv: mpf, rv: mpf):
        nonlocal worst, wl, wr, count
        count += 1
        g = abs(lv - rv)
        if g > worst:
            worst, wl, wr = g, lv, rv

    with mp.workprec(wp):
        for n in range(4):
            # tangent kernel at the integer n: odd coefficients 2*ttilde(j+1)
            jet = kernel_jet(KernelKind.PI_TAN, Fraction(n), order, wp)
            for j in range(order + 1):
                closed = 2 * ttilde(j + 1, wp) if j % 2 == 1 else mpf(0)
                _note(jet.coeffs[j], closed)
                # derivative form: j! c_j vs (1 - (-1)^j) j! ttilde(j+1)
                _note(factorial(j) * jet.coeffs[j],
                      (1 - (-1) ** j) * factorial(j) * ttilde(j + 1, wp))
            # secant kernel at n: even coefficients (-1)^(n-1) 2 ttilde_bar(j+1)
            jet = kernel_jet(KernelKind.PI_OVER_COS, Fraction(n), order, wp)
            for j in range(order + 1):
                closed = (-1) ** (n - 1) * 2 * ttilde_bar(j + 1, wp) if j % 2 == 0 else mpf(0)
                _note(jet.coeffs[j], closed)
                _note(factorial(j) * jet.coeffs[j],
                      (-1) ** (n - 1) * (1 + (-1) ** j) * factorial(j) * ttilde_bar(j + 1, wp))
            # tangent kernel at the pole n - 1/2
            jet = kernel_jet(KernelKind.PI_TAN, Fraction(2 * n - 1, 2), order, wp)
            _note(jet.coeffs[0], mpf(-1))
            for j in range(1, order + 1):
                closed = 2 * riemann_zeta(j, wp) if (j % 2 == 0 and j >= 2) else mpf(0)
                _note(jet.coeffs[j], closed)
            # secant kernel at the pole n - 1/2
            jet = kernel_jet(KernelKind.PI_OVER_COS, Fraction(2 * n - 1, 2), order, wp)
            s = (-1) ** n
            _note(jet.coeffs[0], mpf(s))
            for j in range(1, order + 1):
                closed = s * 2 * alt_zeta(j, wp) if (j % 2 == 0 and j >= 2) else mpf(0)
                _note(jet.coeffs[j], closed)
    return worst, wl, wr, count


def verify_kernel_expansions(order: int, prec: int, tolerance,
                             parts: tuple[str, ...] = ("lemma2_3", "lemma2_4")) -> VerificationReport:
    """Check jet coefficients against the closed expansion formulas."""
    t0 = time.perf_counter()
    if order > 8:
        raise HypothesisError("expansion checks support order <= 8")
    with mp.workprec(prec + 16):
        tol = _tol_mpf(tolerance, prec + 16)
    worst = mpf(0)
    wl = wr = mpf(0)
    count = 0
    for part in parts:
        if part == "lemma2_3":
            g, lv, rv, n = _lemma_psi_checks(order, prec)
        elif part == "lemma2_4":
            g, lv, rv, n = _lemma_trig_checks(order, prec)
        else:
            raise HypothesisError(f"unknown expansion part {part!r}")
        count += n
        if g > worst:
            worst, wl, wr = g, lv, rv
    family = parts[0] if len(parts) == 1 else "lemma2_3+lemma2_4"
    params = {"order": order}
    case_id = f"{family}[order={order}]"
    return _report(case_id, family, params, wl, wr, tol, prec, count, t0)
