"""Closed-form coefficient rows: for equal-degree polynomials P, Q, T the
series I(P,Q,T; s) equals an explicit rational combination

    I = coeff_s zeta(s) + ... + coeff_3 zeta(3) + coeff_2 zeta(2) + constant,

and this module transcribes those coefficients directly from the polynomial
coefficients via the cyclic symbol

    S_{mu,nu,lam} = a_mu b_nu c_lam + b_mu c_nu a_lam + c_mu a_nu b_lam.

Every formula here was adjudicated term-by-term against the exact
partial-fraction oracle (`series.decompose_integral`); where the available
closed forms admit two genuinely different readings of the triple-sum block
(orders >= 5), both are implemented and selectable via TranscriptionVariant.
Only PLAIN_POWERS agrees with the oracle — HARMONIC_WEIGHTS is kept callable
so the disagreement itself can be demonstrated (see validate_rows and the
CLI `verify` command).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .numerics import Rat, harmonic
from .polynomials import PolySpec, coefficient_triple
from .series import ZetaCombination, decompose_integral


class TranscriptionVariant(Enum):
    """The two readings of the triple-sum block in rows of order >= 5."""

    PLAIN_POWERS = "no-h"        # inverse powers, innermost index from 1
    HARMONIC_WEIGHTS = "with-h"  # harmonic-number weights, index from 0


@dataclass(frozen=True)
class CoefficientRow:
    """One row of the triangular system: the exact zeta-combination of
    I(P,Q,T; order) as produced by the closed forms (not the oracle)."""

    order: int
    combination: ZetaCombination

    @property
    def constant(self) -> Rat:
        return self.combination.constant

    def zeta(self, p: int) -> Rat:
        return self.combination.zeta(p)


def s_sym(P: PolySpec, Q: PolySpec, T: PolySpec, mu: int, nu: int, lam: int) -> Rat:
    """Cyclic coefficient symbol S_{mu,nu,lam} of three equal-degree polys."""
    a, b, c = coefficient_triple(P, Q, T)
    for idx in (mu, nu, lam):
        if not 0 <= idx < len(a):
            raise ValueError(f"index {idx} out of range 0..{len(a) - 1}")
    return a[mu] * b[nu] * c[lam] + b[mu] * c[nu] * a[lam] + c[mu] * a[nu] * b[lam]


def _s(a: Sequence[Rat], b: Sequence[Rat], c: Sequence[Rat], mu: int, nu: int, lam: int) -> Rat:
    return a[mu] * b[nu] * c[lam] + b[mu] * c[nu] * a[lam] + c[mu] * a[nu] * b[lam]


def _abc(a: Sequence[Rat], b: Sequence[Rat], c: Sequence[Rat], r: int) -> Rat:
    return a[r] * b[r] * c[r]


# ------------------------------------------------------------- order three


def row_zeta3(P: PolySpec, Q: PolySpec, T: PolySpec) -> CoefficientRow:
    """Closed form of I(P,Q,T; 3) = z3*zeta(3) + z2*zeta(2) + constant.

        z3 = sum_{r=0..n} a_r b_r c_r
        z2 = -sum_{r>=1} sum_{l<r} (S_rrl - S_llr)/(r-l)

    The constant aggregates H^(3) singles, an H^(2)/H double block (in
    unsymmetrized form — the symmetrized variant provably disagrees with
    the oracle), and a fully symmetric triple block.
    """
    a, b, c = coefficient_triple(P, Q, T)
    n = len(a) - 1
    z3 = sum((_abc(a, b, c, r) for r in range(n + 1)), Fraction(0))
    acc2 = Fraction(0)
    for r in range(1, n + 1):
        for l in range(r):
            acc2 += (_s(a, b, c, r, r, l) - _s(a, b, c, l, l, r)) / Fraction(r - l)
    const_acc = sum(
        (_abc(a, b, c, r) * harmonic(r, 3) for r in range(1, n + 1)), Fraction(0)
    )
    for r in range(1, n + 1):
        for l in range(r):
            s_rrl = _s(a, b, c, r, r, l)
            s_llr = _s(a, b, c, l, l, r)
            blk = (s_rrl * harmonic(r, 2) - s_llr * harmonic(l, 2)) / Fraction(r - l)
            blk += (s_rrl - s_llr) * (harmonic(r) - harmonic(l)) / Fraction((r - l) ** 2)
            const_acc -= blk
    for r in range(2, n + 1):
        for l in range(1, r):
            for i in range(l):
                sv = _s(a, b, c, i, r, l) + _s(a, b, c, i, l, r)
                t = (
                    harmonic(i) / Fraction((i - r) * (i - l))
                    + harmonic(r) / Fraction((r - i) * (r - l))
                    + harmonic(l) / Fraction((l - i) * (l - r))
                )
                const_acc += sv * t
    combo = ZetaCombination.of(-const_acc, {3: z3, 2: -acc2})
    return CoefficientRow(3, combo)


# -------------------------------------------------------------- order four


def row_zeta4(P: PolySpec, Q: PolySpec, T: PolySpec) -> CoefficientRow:
    """Closed form of I(P,Q,T; 4).

        z4 = a_0 b_0 c_0
        z3 = sum_{r>=1} (S_00r - a_r b_r c_r)/r

    The zeta(2) weight and the constant follow the same block structure as
    order three with one extra inverse power of the summation index; the
    l >= 1 double block of the constant enters with a global plus sign
    (adjudicated — the opposite sign fails against the oracle).
    """
    a, b, c = coefficient_triple(P, Q, T)
    n = len(a) - 1
    z4 = _abc(a, b, c, 0)
    z3 = sum(
        ((_s(a, b, c, 0, 0, r) - _abc(a, b, c, r)) / Fraction(r) for r in range(1, n + 1)),
        Fraction(0),
    )
    acc2 = sum(
        (
            (_abc(a, b, c, r) + _s(a, b, c, 0, 0, r) - 2 * _s(a, b, c, 0, r, r))
            / Fraction(r * r)
            for r in range(1, n + 1)
        ),
        Fraction(0),
    )
    for r in range(2, n + 1):
        for l in range(1, r):
            acc2 += (
                (_s(a, b, c, 0, r, l) + _s(a, b, c, 0, l, r))
                / Fraction(r - l)
                * (Fraction(1, r) - Fraction(1, l))
            )
            acc2 -= (
                _s(a, b, c, r, r, l) / Fraction(r) - _s(a, b, c, l, l, r) / Fraction(l)
            ) / Fraction(r - l)
    const_acc = sum(
        (
            (2 * _s(a, b, c, 0, r, r) - _abc(a, b, c, r) - _s(a, b, c, 0, 0, r))
            * harmonic(r)
            / Fraction(r**3)
            + (_s(a, b, c, 0, r, r) - _abc(a, b, c, r)) * harmonic(r, 2) / Fraction(r * r)
            - _abc(a, b, c, r) * harmonic(r, 3) / Fraction(r)
            for r in range(1, n + 1)
        ),
        Fraction(0),
    )
    for r in range(2, n + 1):
        for l in range(1, r):
            s_rrl = _s(a, b, c, r, r, l)
            s_llr = _s(a, b, c, l, l, r)
            blk = (s_rrl - s_llr) / Fraction((r - l) ** 2) * (
                harmonic(r) / Fraction(r) - harmonic(l) / Fraction(l)
            )
            blk += (
                s_rrl * harmonic(r) / Fraction(r * r)
                - s_llr * harmonic(l) / Fraction(l * l)
            ) / Fraction(r - l)
            blk += (
                s_rrl * harmonic(r, 2) / Fraction(r)
                - s_llr * harmonic(l, 2) / Fraction(l)
            ) / Fraction(r - l)
            const_acc += blk
    for r in range(2, n + 1):
        for l in range(1, r):
            for i in range(l):
                sv = _s(a, b, c, i, r, l) + _s(a, b, c, i, l, r)
                t = harmonic(r) / Fraction(r * (r - i) * (r - l))
                t += harmonic(l) / Fraction(l * (l - i) * (l - r))
                if i > 0:
                    t += harmonic(i) / Fraction(i * (i - r) * (i - l))
                const_acc -= sv * t
    combo = ZetaCombination.of(-const_acc, {4: z4, 3: z3, 2: -acc2})
    return CoefficientRow(4, combo)


# ------------------------------------------------------ orders five and up


def _general_coeff(
    a: Sequence[Rat],
    b: Sequence[Rat],
    c: Sequence[Rat],
    s: int,
    j: int,
    variant: TranscriptionVariant,
) -> Rat:
    """Signed weight of zeta(s-j) in the order-s row, for j = 2..s-2.

    Generic structure: (-1)^(j-1) * (singles + Z + M + triple), where the
    triple block exists for j >= 3 only and is the variant-dependent part.
    Orders s-j = 3 and s-j = 2 additionally receive mandatory extra blocks
    (the generic formula alone provably disagrees with the oracle there).
    """
    n = len(a) - 1
    q = s - j
    singles = sum(
        (
            (
                _s(a, b, c, 0, 0, r)
                - (j - 1) * _s(a, b, c, 0, r, r)
                + Fraction((j - 1) * (j - 2), 2) * _abc(a, b, c, r)
            )
            / Fraction(r**j)
            for r in range(1, n + 1)
        ),
        Fraction(0),
    )
    z_blk = Fraction(0)
    m_blk = Fraction(0)
    for r in range(2, n + 1):
        for l in range(1, r):
            s_0lr = _s(a, b, c, 0, l, r)
            s_0rl = _s(a, b, c, 0, r, l)
            s_llr = _s(a, b, c, l, l, r)
            s_rrl = _s(a, b, c, r, r, l)
            z_blk += (
                (s_0lr + s_0rl)
                / Fraction(r - l)
                * (Fraction(1, r ** (j - 1)) - Fraction(1, l ** (j - 1)))
            )
            m_blk += (
                (s_llr - s_rrl)
                / Fraction((r - l) ** 2)
                * (Fraction(1, r ** (j - 2)) - Fraction(1, l ** (j - 2)))
            )
            m_blk += (
                Fraction(j - 2)
                / Fraction(r - l)
                * (s_llr / Fraction(l ** (j - 1)) - s_rrl / Fraction(r ** (j - 1)))
            )
    triple = Fraction(0)
    if j >= 3:
        with_h = variant is TranscriptionVariant.HARMONIC_WEIGHTS
        for r in range(3, n + 1):
            for l in range(2, r):
                for i in range(0 if with_h else 1, l):
                    sv = _s(a, b, c, i, r, l) + _s(a, b, c, i, l, r)
                    if with_h:
                        t = harmonic(r) / Fraction(r ** (j - 2) * (r - i) * (r - l))
                        t += harmonic(l) / Fraction(l ** (j - 2) * (l - i) * (l - r))
                        if i > 0:
                            t += harmonic(i) / Fraction(i ** (j - 2) * (i - r) * (i - l))
                    else:
                        t = Fraction(1, i ** (j - 2) * (i - r) * (i - l))
                        t += Fraction(1, r ** (j - 2) * (r - i) * (r - l))
                        t += Fraction(1, l ** (j - 2) * (l - i) * (l - r))
                    triple += sv * t
    val = Fraction((-1) ** (j - 1)) * (singles + z_blk + m_blk + triple)
    if q == 3:
        val += Fraction((-1) ** (s - 3)) * sum(
            (_abc(a, b, c, r) / Fraction(r ** (s - 3)) for r in range(1, n + 1)),
            Fraction(0),
        )
    if q == 2:
        extra = -sum(
            (_s(a, b, c, 0, r, r) / Fraction(r ** (s - 2)) for r in range(1, n + 1)),
            Fraction(0),
        )
        extra += (s - 3) * sum(
            (_abc(a, b, c, r) / Fraction(r ** (s - 2)) for r in range(1, n + 1)),
            Fraction(0),
        )
        for r in range(2, n + 1):
            for l in range(1, r):
                extra += (
                    _s(a, b, c, l, l, r) / Fraction(l ** (s - 3))
                    - _s(a, b, c, r, r, l) / Fraction(r ** (s - 3))
                ) / Fraction(r - l)
        val += Fraction((-1) ** (s - 3)) * extra
    return val


def _general_constant(a: Sequence[Rat], b: Sequence[Rat], c: Sequence[Rat], s: int) -> Rat:
    """Stored constant of the order-s row: (-1)^s times a bracket of
    harmonic-weighted singles, doubles, and a symmetric triple block.

    The l = 0 slice of the double sum absorbs what would otherwise be
    separate single sums, under the convention H_x / x^e := 0 at x = 0.
    """
    n = len(a) - 1
    br = Fraction(0)
    for r in range(1, n + 1):
        br += _abc(a, b, c, r) * (
            Fraction((s - 2) * (s - 3), 2) * harmonic(r) / Fraction(r ** (s - 1))
            + (s - 3) * harmonic(r, 2) / Fraction(r ** (s - 2))
            + harmonic(r, 3) / Fraction(r ** (s - 3))
        )
    for r in range(1, n + 1):
        for l in range(r):
            s_llr = _s(a, b, c, l, l, r)
            s_rrl = _s(a, b, c, r, r, l)
            t = Fraction(0)
            if l > 0:
                t += (s_llr * harmonic(l, 2) / Fraction(l ** (s - 3))) / Fraction(r - l)
                t += (s - 3) * (s_llr * harmonic(l) / Fraction(l ** (s - 2))) / Fraction(r - l)
            t -= (s_rrl * harmonic(r, 2) / Fraction(r ** (s - 3))) / Fraction(r - l)
            t -= (s - 3) * (s_rrl * harmonic(r) / Fraction(r ** (s - 2))) / Fraction(r - l)
            h_l = harmonic(l) / Fraction(l ** (s - 3)) if l > 0 else Fraction(0)
            t += (
                (s_llr - s_rrl)
                * (harmonic(r) / Fraction(r ** (s - 3)) - h_l)
                / Fraction((r - l) ** 2)
            )
            br += t
    for r in range(2, n + 1):
        for l in range(1, r):
            for i in range(l):
                sv = _s(a, b, c, i, r, l) + _s(a, b, c, i, l, r)
                t = harmonic(r) / Fraction(r ** (s - 3) * (r - i) * (r - l))
                t += harmonic(l) / Fraction(l ** (s - 3) * (l - i) * (l - r))
                if i > 0:
                    t += harmonic(i) / Fraction(i ** (s - 3) * (i - r) * (i - l))
                br += sv * t
    return Fraction((-1) ** s) * br


def row_general(
    P: PolySpec,
    Q: PolySpec,
    T: PolySpec,
    order: int,
    variant: TranscriptionVariant = TranscriptionVariant.PLAIN_POWERS,
) -> CoefficientRow:
    """Closed form of I(P,Q,T; order) for order >= 5.

        coeff(zeta(order))   = a_0 b_0 c_0
        coeff(zeta(order-1)) = sum_{r>=1} S_00r / r
        coeff(zeta(order-j)) = _general_coeff(j)     for j = 2..order-2
        constant             = _general_constant

    The PLAIN_POWERS variant reproduces the oracle exactly; the
    HARMONIC_WEIGHTS variant diverges from it for any degree >= 2.
    """
    if order < 5:
        raise ValueError("row_general handles orders >= 5 only")
    a, b, c = coefficient_triple(P, Q, T)
    n = len(a) - 1
    zeta: dict[int, Rat] = {}
    lead = _abc(a, b, c, 0)
    if lead:
        zeta[order] = lead
    sub = sum(
        (_s(a, b, c, 0, 0, r) / Fraction(r) for r in range(1, n + 1)), Fraction(0)
    )
    if sub:
        zeta[order - 1] = sub
    for j in range(2, order - 1):
        v = _general_coeff(a, b, c, order, j, variant)
        if v:
            zeta[order - j] = v
    combo = ZetaCombination.of(_general_constant(a, b, c, order), zeta)
    return CoefficientRow(order, combo)


def coefficient_row(
    P: PolySpec,
    Q: PolySpec,
    T: PolySpec,
    order: int,
    variant: TranscriptionVariant = TranscriptionVariant.PLAIN_POWERS,
) -> CoefficientRow:
    """Dispatch to the order-specific closed form."""
    if order == 3:
        return row_zeta3(P, Q, T)
    if order == 4:
        return row_zeta4(P, Q, T)
    return row_general(P, Q, T, order, variant)


# --------------------------------------------------------------- validation


@dataclass(frozen=True)
class RowMismatch:
    order: int
    component: str  # "constant" or "zeta"
    zeta_order: Optional[int]
    row_value: Rat
    oracle_value: Rat


@dataclass(frozen=True)
class RowCheck:
    order: int
    equal: bool
    mismatches: tuple[RowMismatch, ...]


@dataclass(frozen=True)
class RowValidationReport:
    s_max: int
    variant: TranscriptionVariant
    checks: tuple[RowCheck, ...]

    @property
    def all_equal(self) -> bool:
        return all(c.equal for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "s_max": self.s_max,
            "variant": self.variant.value,
            "all_equal": self.all_equal,
            "orders": [
                {
                    "order": c.order,
                    "equal": c.equal,
                    "mismatches": [
                        {
                            "component": m.component,
                            "zeta_order": m.zeta_order,
                            "row_value": str(m.row_value),
                            "oracle_value": str(m.oracle_value),
                        }
                        for m in c.mismatches
                    ],
                }
                for c in self.checks
            ],
        }


def validate_rows(
    P: PolySpec,
    Q: PolySpec,
    T: PolySpec,
    s_max: int,
    variant: TranscriptionVariant = TranscriptionVariant.PLAIN_POWERS,
) -> RowValidationReport:
    """Compare every closed-form row of order 3..s_max against the exact
    partial-fraction oracle, component by component."""
    if s_max < 3:
        raise ValueError("s_max must be >= 3")
    checks = []
    for order in range(3, s_max + 1):
        row = coefficient_row(P, Q, T, order, variant)
        want = decompose_integral(P, Q, T, order)
        mismatches: list[RowMismatch] = []
        if row.combination.constant != want.constant:
            mismatches.append(
                RowMismatch(order, "constant", None, row.combination.constant, want.constant)
            )
        keys = sorted(set(row.combination.orders()) | set(want.orders()))
        for p in keys:
            got, exp = row.combination.zeta(p), want.zeta(p)
            if got != exp:
                mismatches.append(RowMismatch(order, "zeta", p, got, exp))
        checks.append(RowCheck(order, not mismatches, tuple(mismatches)))
    return RowValidationReport(s_max, variant, tuple(checks))
