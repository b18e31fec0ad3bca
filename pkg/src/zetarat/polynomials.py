"""Integer-friendly polynomial specifications used by the integral rows.

Three families:
  * shifted Legendre  L_n(x), orthogonal on [0,1]:
        L_n(x) = sum_r (-1)^r (n+r)! / (r!^2 (n-r)!) x^r
    so integral_0^1 x^k L_n(x) dx = 0 for 0 <= k <= n-1.
  * binomial          (1-x)^n
  * explicit          arbitrary rational coefficient lists (the only family
                      allowed to carry a zero leading coefficient, so zero
                      padding to a common degree stays representable).

Coefficients are stored in ascending powers: coeffs[r] multiplies x^r.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .numerics import Rat, RatLike


class PolyFamily(Enum):
    SHIFTED_LEGENDRE = "shifted-legendre"
    BINOMIAL = "binomial"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class PolySpec:
    """A polynomial with exact rational coefficients and a family tag.

    The family tag records which analytic guarantees apply (e.g. the
    certified theta bound requires shifted-Legendre x binomial rows); a
    nonzero leading coefficient is enforced except for EXPLICIT.
    """

    family: PolyFamily
    coeffs: tuple[Rat, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.family is not PolyFamily.EXPLICIT and len(coeffs) > 1 and coeffs[-1] == 0:
            raise ValueError(
                f"{self.family.value} polynomial cannot have a zero leading coefficient"
            )

    @property
    def degree(self) -> int:
        """Formal degree: index of the last stored coefficient."""
        return len(self.coeffs) - 1

    @property
    def cstar(self) -> Rat:
        """max_r |coeff_r| — the coefficient height."""
        return max(abs(c) for c in self.coeffs)

    @property
    def sum_abs(self) -> Rat:
        return sum((abs(c) for c in self.coeffs), Fraction(0))


def shifted_legendre(n: int) -> PolySpec:
    """Shifted Legendre polynomial on [0,1], normalized with L_n(0) = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    coeffs = tuple(
        Fraction((-1) ** r * factorial(n + r), factorial(r) ** 2 * factorial(n - r))
        for r in range(n + 1)
    )
    return PolySpec(PolyFamily.SHIFTED_LEGENDRE, coeffs)


def binomial_poly(n: int) -> PolySpec:
    """(1-x)^n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    coeffs = tuple(Fraction((-1) ** r * comb(n, r)) for r in range(n + 1))
    return PolySpec(PolyFamily.BINOMIAL, coeffs)


def explicit_poly(coeffs: Iterable[RatLike]) -> PolySpec:
    return PolySpec(PolyFamily.EXPLICIT, tuple(Fraction(c) for c in coeffs))


def eval_poly(p: PolySpec, x: RatLike) -> Rat:
    """Exact Horner evaluation."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def pad_to_degree(p: PolySpec, n: int) -> PolySpec:
    """Zero-pad p to formal degree n (returns p unchanged if already there).

    Padding forces the EXPLICIT family since the padded form carries a zero
    leading coefficient.
    """
    if p.degree > n:
        raise ValueError(f"degree {p.degree} exceeds target degree {n}")
    if p.degree == n:
        return p
    coeffs = p.coeffs + (Fraction(0),) * (n - p.degree)
    return PolySpec(PolyFamily.EXPLICIT, coeffs)


def coefficient_triple(
    P: PolySpec, Q: PolySpec, T: PolySpec
) -> tuple[Sequence[Rat], Sequence[Rat], Sequence[Rat]]:
    """Coefficient views of three equal-degree polynomials.

    Raises ValueError when the formal degrees disagree — the closed-form
    rows are transcribed for a common degree n.
    """
    if not (P.degree == Q.degree == T.degree):
        raise ValueError(
            "polynomial degrees must match "
            f"(got {P.degree}, {Q.degree}, {T.degree})"
        )
    return P.coeffs, Q.coeffs, T.coeffs
