"""Exact decomposition and certified numeric evaluation of the series

    I(P,Q,T; s) = sum_{k>=0} A(k) B(k) C(k) / (k+1)^(s-3),

where A(k) = sum_r p_r/(r+k+1) = integral_0^1 x^k P(x) dx and B, C likewise
for Q, T.  Expanding the product over coefficient triples reduces everything
to the elementary sums

    sigma(r1,r2,r3; s) = sum_{m>=1} 1/((m+r1)(m+r2)(m+r3) m^(s-3)),

each of which is an exact rational combination of zeta values: that
partial-fraction decomposition is the symbolic oracle every closed-form
coefficient row is validated against.

Two independent certified numeric evaluators are provided:
  * eval_truncated  — direct partial sums of the defining series, any P,Q,T;
  * eval_special_series — a fast factorial-form series valid for the
    shifted-Legendre x binomial choice of P and Q.
Both return Interval enclosures that are provably nested as the number of
summed terms K grows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, lcm
from typing import Callable, Mapping

from .numerics import Interval, Rat, harmonic
from .polynomials import PolySpec

# ------------------------------------------------- zeta-combination values


@dataclass(frozen=True)
class ZetaCombination:
    """constant + sum_p coeff_p * zeta(p), all coefficients exact rationals.

    `terms` is sorted by zeta order and never stores zero coefficients, so
    equality of combinations is plain structural equality.
    """

    constant: Rat
    terms: tuple[tuple[int, Rat], ...]

    @staticmethod
    def of(constant: Rat, zeta_coeffs: Mapping[int, Rat]) -> "ZetaCombination":
        terms = tuple(sorted((p, v) for p, v in zeta_coeffs.items() if v))
        return ZetaCombination(Fraction(constant), terms)

    def zeta(self, p: int) -> Rat:
        for q, v in self.terms:
            if q == p:
                return v
        return Fraction(0)

    def orders(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.terms)

    def as_dict(self) -> dict[int, Rat]:
        return dict(self.terms)

    def enclosure(self, zeta_of: Callable[[int], Interval]) -> Interval:
        """Certified enclosure of the real value, given an enclosure factory
        zeta_of(p) -> Interval."""
        out = Interval.point(self.constant)
        for p, v in self.terms:
            out = out + zeta_of(p).scale(v)
        return out


# ---------------------------------------------- partial-fraction summation


def _taylor_inv(c: int, e: int, order: int) -> list[Rat]:
    """Taylor coefficients of (c+t)^(-e) around t=0 up to t^order (c != 0)."""
    base = Fraction(c)
    return [
        Fraction((-1) ** i * comb(e + i - 1, i)) / base ** (e + i)
        for i in range(order + 1)
    ]


def _mul_trunc(p: list[Rat], q: list[Rat], order: int) -> list[Rat]:
    out = [Fraction(0)] * (order + 1)
    for i, a in enumerate(p):
        if i > order:
            break
        if not a:
            continue
        for j, b in enumerate(q):
            if i + j > order:
                break
            out[i + j] += a * b
    return out


@lru_cache(maxsize=None)
def _pfs_sorted(r1: int, r2: int, r3: int, s: int) -> ZetaCombination:
    """partial_fraction_sum on a sorted shift triple (the cache key)."""
    shifts = (r1, r2, r3)
    zero_count = shifts.count(0)
    m0_mult = (s - 3) + zero_count  # pole multiplicity at m = 0
    pos: dict[int, int] = {}
    for r in shifts:
        if r > 0:
            pos[r] = pos.get(r, 0) + 1

    constant = Fraction(0)
    zeta: dict[int, Rat] = {}

    def add_zeta(p: int, v: Rat) -> None:
        if v:
            zeta[p] = zeta.get(p, Fraction(0)) + v

    # Expand around m = 0: the integrand times m^m0_mult is
    # prod_rho (m+rho)^(-e_rho); its Taylor coefficients give the weights
    # alpha_j on sum_m 1/m^j.  alpha_1 must cancel against the shifted poles.
    alpha1 = Fraction(0)
    if m0_mult > 0:
        g = [Fraction(1)] + [Fraction(0)] * (m0_mult - 1)
        for rho, e in pos.items():
            g = _mul_trunc(g, _taylor_inv(rho, e, m0_mult - 1), m0_mult - 1)
        for j in range(1, m0_mult + 1):
            aj = g[m0_mult - j]
            if j == 1:
                alpha1 = aj
            else:
                add_zeta(j, aj)

    # Expand around m = -rho0 for each positive shift: weights beta_j on
    # sum_m 1/(m+rho0)^j.  The tail sums re-anchor at m=1 via
    # sum_{m>=1} 1/(m+rho)^j = zeta(j) - H_rho^(j)  (j >= 2)
    # and the j = 1 pieces combine with alpha_1 into finite -H_rho terms.
    beta1_total = Fraction(0)
    for rho0, e in pos.items():
        g = [Fraction(1)] + [Fraction(0)] * (e - 1)
        if m0_mult > 0:
            g = _mul_trunc(g, _taylor_inv(-rho0, m0_mult, e - 1), e - 1)
        for rho, e2 in pos.items():
            if rho == rho0:
                continue
            g = _mul_trunc(g, _taylor_inv(rho - rho0, e2, e - 1), e - 1)
        for j in range(1, e + 1):
            bj = g[e - j]
            if not bj:
                continue
            if j == 1:
                beta1_total += bj
                constant -= bj * harmonic(rho0)
            else:
                add_zeta(j, bj)
                constant -= bj * harmonic(rho0, j)

    if alpha1 + beta1_total != 0:
        raise ArithmeticError(
            "internal: 1/m residues failed to cancel (series would diverge)"
        )
    return ZetaCombination.of(constant, zeta)


def partial_fraction_sum(r1: int, r2: int, r3: int, s: int) -> ZetaCombination:
    """Exact value of sum_{m>=1} 1/((m+r1)(m+r2)(m+r3) m^(s-3)).

    Shifts must be integers >= 0 and s >= 3.  Symmetric in (r1, r2, r3);
    results are memoized on the sorted triple.
    """
    for r in (r1, r2, r3):
        if r < 0:
            raise ValueError("shifts must be >= 0")
    if s < 3:
        raise ValueError("s must be >= 3")
    a, b, c = sorted((r1, r2, r3))
    return _pfs_sorted(a, b, c, s)


def decompose_integral(P: PolySpec, Q: PolySpec, T: PolySpec, s: int) -> ZetaCombination:
    """Exact zeta-combination value of I(P,Q,T; s).

    Weighted sum of partial_fraction_sum over all coefficient triples with
    nonzero weight; a deterministic sequential reduction.
    """
    if s < 3:
        raise ValueError("s must be >= 3")
    constant = Fraction(0)
    zeta: dict[int, Rat] = {}
    for r1, av in enumerate(P.coeffs):
        if not av:
            continue
        for r2, bv in enumerate(Q.coeffs):
            if not bv:
                continue
            for r3, cv in enumerate(T.coeffs):
                if not cv:
                    continue
                w = av * bv * cv
                part = partial_fraction_sum(r1, r2, r3, s)
                constant += w * part.constant
                for p, v in part.terms:
                    zeta[p] = zeta.get(p, Fraction(0)) + w * v
    return ZetaCombination.of(constant, zeta)


# ------------------------------------------------------------- beta values


def beta_rat(a: int, b: int) -> Rat:
    """Euler beta at positive integers: B(a,b) = (a-1)!(b-1)!/(a+b-1)!."""
    if a < 1 or b < 1:
        raise ValueError("beta_rat needs integer arguments >= 1")
    return Fraction(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))


# ------------------------------------------- direct truncated evaluation

#: Partial sums switch from exact Fraction accumulation to certified
#: fixed-point accumulation above this many terms.
EXACT_TERM_LIMIT = 1024


def _divexact_linear(poly: list[int], root: int) -> list[int]:
    """Exact division of an integer polynomial by (y + root).

    poly is ascending; remainder must vanish (callers divide out a known
    factor).
    """
    deg = len(poly) - 1
    out = [0] * deg
    carry = 0
    for i in range(deg, 0, -1):
        carry = poly[i] + carry
        out[i - 1] = carry
        carry = -root * carry
    assert poly[0] + carry == 0, "inexact linear division"
    return out


def _integral_scaffold(p: PolySpec) -> tuple[list[int], list[int], int]:
    """Integer form of the moment function A(k) = sum_r p_r/(r+k+1).

    Returns (N, R, q) with A(k) = N(k) / (q * R(k)), where
    R(y) = prod_{r=0..deg} (y + r + 1) and N, R have integer coefficients
    (ascending).
    """
    q = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * q) for c in p.coeffs]
    R = [1]
    for r in range(len(p.coeffs)):
        root = r + 1
        R = [0] + R  # multiply by y
        for i in range(len(R) - 1):
            R[i] += root * R[i + 1]
    N = [0] * max(len(R) - 1, 1)
    for r, c in enumerate(ints):
        if not c:
            continue
        part = _divexact_linear(R, r + 1)
        for i, v in enumerate(part):
            N[i] += c * v
    return N, R, q


def _horner_int(poly: list[int], x: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _fixed_width(K: int, s: int, M: Rat) -> int:
    """Fixed-point fraction width making directed-rounding loss K*2^-W
    provably smaller than the guaranteed one-step interval shrink
    (3/4) * M * (K+1)^-(s+1), so enclosures stay nested across all K."""
    slack = max(0, M.denominator.bit_length() - M.numerator.bit_length() + 1)
    return (s + 2) * K.bit_length() + slack + 8


def eval_truncated(P: PolySpec, Q: PolySpec, T: PolySpec, s: int, K: int) -> Interval:
    """Certified enclosure of I(P,Q,T; s) from K leading terms.

    The partial sum over k = 0..K-1 is widened by the certified tail bound
        sum_{k>=K} |A B C|(k)/(k+1)^(s-3) <= S_P S_Q S_T / ((s-1) K^(s-1)),
    S_X the coefficient 1-norms.  Exact rational arithmetic up to
    EXACT_TERM_LIMIT terms, certified directed-rounding fixed point beyond;
    enclosures are nested as K grows in either mode and across the switch.
    """
    if s < 3:
        raise ValueError("s must be >= 3")
    if K < 1:
        raise ValueError("K must be >= 1")
    M = P.sum_abs * Q.sum_abs * T.sum_abs
    if M == 0:
        return Interval.point(Fraction(0))
    tail = M / Fraction((s - 1) * K ** (s - 1))

    NP, RP, qP = _integral_scaffold(P)
    NQ, RQ, qQ = _integral_scaffold(Q)
    NT, RT, qT = _integral_scaffold(T)
    qs = qP * qQ * qT

    if K <= EXACT_TERM_LIMIT:
        acc = Fraction(0)
        for k in range(K):
            num = _horner_int(NP, k) * _horner_int(NQ, k) * _horner_int(NT, k)
            if not num:
                continue
            den = qs * _horner_int(RP, k) * _horner_int(RQ, k) * _horner_int(RT, k)
            den *= (k + 1) ** (s - 3)
            acc += Fraction(num, den)
        return Interval(acc - tail, acc + tail)

    W = _fixed_width(K, s, M)
    acc_lo = 0
    acc_hi = 0
    for k in range(K):
        num = _horner_int(NP, k) * _horner_int(NQ, k) * _horner_int(NT, k)
        if not num:
            continue
        den = qs * _horner_int(RP, k) * _horner_int(RQ, k) * _horner_int(RT, k)
        den *= (k + 1) ** (s - 3)
        scaled = num << W
        acc_lo += scaled // den
        acc_hi += -((-scaled) // den)
    lo = Fraction(acc_lo, 1 << W) - tail
    hi = Fraction(acc_hi, 1 << W) + tail
    return Interval(lo, hi)


# --------------------------------------- factorial-form series evaluation


def eval_special_series(n: int, T: PolySpec, s: int, K: int) -> Interval:
    """Certified enclosure of I(L_n, (1-x)^n, T; s) from K terms of its
    factorial form

        (-1)^n sum_{k>=n} C(k,n) B(k+1,n+1)^2 T~(k) / (k+1)^(s-3),
        T~(k) = sum_i c_i/(k+1+i).

    Tail past k0 = n+K is bounded by monotone majorization and the exact
    telescoping sum_{k>=k0} B(k+1,n+1) = B(n,k0+1):

        (n+1) c* B(n,k0+1) / ((k0+n+1)(k0+1)^(s-2)),

    which also telescopes step-by-step, so enclosures are nested in K.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if s < 3:
        raise ValueError("s must be >= 3")
    if K < 1:
        raise ValueError("K must be >= 1")
    cstar = T.cstar
    if cstar == 0:
        return Interval.point(Fraction(0))
    total = Fraction(0)
    for k in range(n, n + K):
        tk = sum(
            (cv / Fraction(k + 1 + i) for i, cv in enumerate(T.coeffs)), Fraction(0)
        )
        if not tk:
            continue
        total += comb(k, n) * beta_rat(k + 1, n + 1) ** 2 * tk / Fraction(
            (k + 1) ** (s - 3)
        )
    k0 = n + K
    tail = (
        (n + 1)
        * cstar
        * beta_rat(n, k0 + 1)
        / (Fraction(k0 + n + 1) * Fraction((k0 + 1) ** (s - 2)))
    )
    value = Fraction((-1) ** n) * total
    return Interval(value - tail, value + tail)


# --------------------------------------------- shift-reduction identities


def shift_reduction_residual(r: int, k: int, s: int, power: int) -> Rat:
    """LHS - RHS of the exact rewrite of 1/((r+k+1)^power (k+1)^s) into
    pieces with separated denominators (power in {1,2,3}); zero iff the
    identity holds.

    These rewrites justify re-anchoring shifted series at m = 1, which is
    the step the whole symbolic decomposition rests on.
    """
    if r < 1 or k < 0 or s < 1 or power not in (1, 2, 3):
        raise ValueError("need r >= 1, k >= 0, s >= 1, power in {1,2,3}")
    R, Kp = Fraction(r), Fraction(k + 1)
    big = R + Kp  # r + k + 1
    sign = Fraction((-1) ** s)
    if power == 1:
        lhs = 1 / (big * Kp**s)
        rhs = sum(
            Fraction((-1) ** (j - 1)) / (R**j * Kp ** (s + 1 - j))
            for j in range(1, s + 1)
        )
        rhs += sign / (R**s * big)
    elif power == 2:
        lhs = 1 / (big**2 * Kp**s)
        rhs = sum(
            Fraction((-1) ** (j - 1) * j) / (R ** (j + 1) * Kp ** (s + 1 - j))
            for j in range(1, s + 1)
        )
        rhs += sign * s / (R ** (s + 1) * big)
        rhs += sign / (R**s * big**2)
    else:
        lhs = 1 / (big**3 * Kp**s)
        rhs = sum(
            Fraction((-1) ** (j - 1) * j * (j + 1), 2) / (R ** (j + 2) * Kp ** (s + 1 - j))
            for j in range(1, s + 1)
        )
        rhs += sign * Fraction(s * (s + 1), 2) / (R ** (s + 2) * big)
        rhs += sign * s / (R ** (s + 1) * big**2)
        rhs += sign / (R**s * big**3)
    return lhs - rhs
