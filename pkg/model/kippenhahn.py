"""
Kippenhahn polynomial of a reciprocal tridiagonal matrix.

For a matrix with invariants xi, det(Re(e^{iθ}A) - λI) equals, up to the
factor (-λ)^{n mod 2}, the polynomial

    P_n(ζ, ρ) = ζ^m + p_{m-1}(ρ) ζ^{m-1} + ... + p_0(ρ),  ζ = λ², ρ = cos²θ,

obtained from the tridiagonal determinant recursion with η_i = ξ_i + ρ.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import reduce
from itertools import combinations, zip_longest
from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger

from utils.polynomial import RHO, ZETA, Poly, lift
from utils.reciprocal import XiVector


def _scaled_difference(a: Sequence, b: Sequence, e) -> List:
    return [x - e * y for x, y in zip_longest(a, b, fillvalue=0)]


def _determinant_coefficients(eta: Sequence) -> List:
    """Coefficients (low to high in ζ) of D_n from the three-term recursion."""
    prev2: List = [1]  # D_0
    prev1: List = [1]  # D_1
    for k in range(2, len(eta) + 2):
        shifted = [0] + prev1 if k % 2 == 0 else prev1
        prev2, prev1 = prev1, _scaled_difference(shifted, prev2, eta[k - 2])
    return prev1


def tridiag_coeffs(eta: Sequence) -> Tuple:
    """
    Lower coefficients of the tridiagonal determinant, by recursion.

    Args:
        eta (list): Products η_1..η_{n-1} of the off-diagonal pairs.

    Returns:
        tuple: d_{m-1}, ..., d_0 where D_n(a) = a^{n mod 2} (ζ^m + d_{m-1} ζ^{m-1} + ... + d_0).
    """
    coeffs = _determinant_coefficients(eta)
    return tuple(reversed(coeffs[:-1]))


def non_consecutive_sets(count: int, size: int):
    """Index sets {i_1 < ... < i_size} of range(count) with gaps larger than 1."""
    for subset in combinations(range(count), size):
        if all(b - a > 1 for a, b in zip(subset, subset[1:])):
            yield subset


def tridiag_coeffs_enumerated(eta: Sequence) -> Tuple:
    """Same as tridiag_coeffs, summing over non-consecutive index sets."""
    m = (len(eta) + 1) // 2
    coeffs = []
    for j in range(1, m + 1):
        total = 0
        for subset in non_consecutive_sets(len(eta), j):
            total = total + reduce(operator.mul, (eta[i] for i in subset), 1)
        coeffs.append(total if j % 2 == 0 else -total)
    return tuple(coeffs)


@dataclass(frozen=True)
class KippenhahnPoly:
    """P_n as a ζ-polynomial with ρ-polynomial coefficients."""

    n: int
    poly: Poly

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def odd_n(self) -> bool:
        """True when the dropped factor -λ contributes the origin to the curve."""
        return self.n % 2 == 1

    def coefficient(self, j: int) -> Poly:
        """p_j(ρ), the ζ^j coefficient."""
        return lift(self.poly.coefficient(j), RHO)

    def at_rho(self, rho) -> Poly:
        return Poly([self.coefficient(j)(rho) for j in range(self.m + 1)], ZETA)

    def evaluate(self, zeta, rho):
        return self.at_rho(rho)(zeta)

    def lambda_coefficients(self, rho: float) -> np.ndarray:
        """Coefficients, highest first, of λ^{n mod 2} P_n(λ², ρ) as floats."""
        zeta_coeffs = [float(c) for c in self.at_rho(rho).coeffs]
        out = np.zeros(self.n + 1)
        for j, c in enumerate(zeta_coeffs):
            out[self.n - (2 * j + self.n % 2)] = c
        return out


def kippenhahn_poly(xi) -> KippenhahnPoly:
    """
    Build P_n for a xi vector.

    Args:
        xi (XiVector | list): Invariants; plain sequences may hold any ring
                              elements (sympy symbols included).

    Returns:
        KippenhahnPoly: Monic in ζ, ζ-degree m = floor(n/2).
    """
    values = tuple(xi.xi) if isinstance(xi, XiVector) else tuple(xi)
    n = len(values) + 1
    eta = [Poly([v, 1], RHO) for v in values]
    coeffs = _determinant_coefficients(eta)
    return KippenhahnPoly(n, Poly([lift(c, RHO) for c in coeffs], ZETA))


def substitute_linear(P: KippenhahnPoly, C, X2) -> Poly:
    """
    Evaluate P_n at ζ = C + ρX².

    Args:
        P (KippenhahnPoly): Kippenhahn polynomial.
        C: Scalar, or a Poly in C for the symbolic residuals.
        X2: Squared half focal distance, X2 >= 0.

    Returns:
        Poly: ρ-polynomial sum_j f_j ρ^j; f_m = Q_n(X²).
    """
    if not isinstance(X2, Poly):
        try:
            negative = float(X2) < 0
        except TypeError:
            negative = False
        if negative:
            raise ValueError(f"X2 must be nonnegative, got {X2}")
    return lift(P.poly(Poly([C, X2], RHO)), RHO)


class _SplitElement:
    """e + o*s with s² = σ(ρ); e, o are ρ-polynomials."""

    __slots__ = ("even", "odd", "sigma")

    def __init__(self, even, odd, sigma) -> None:
        self.even, self.odd, self.sigma = even, odd, sigma

    def __mul__(self, other: "_SplitElement") -> "_SplitElement":
        return _SplitElement(
            self.even * other.even + self.odd * other.odd * self.sigma,
            self.even * other.odd + self.odd * other.even,
            self.sigma,
        )

    def __add__(self, other: "_SplitElement") -> "_SplitElement":
        return _SplitElement(self.even + other.even, self.odd + other.odd, self.sigma)


@dataclass(frozen=True)
class EvenOddPair:
    R_e: Poly
    R_o: Poly


def even_odd_split(P: KippenhahnPoly, p, X2, C) -> EvenOddPair:
    """
    Split P_n(ζ_+) + P_n(ζ_-) and the odd combination for a shifted ellipse pair.

    With s = sqrt(ρ(C + X²ρ)) the two branches are ζ_± = C + (p² + X²)ρ ± 2ps.
    R_e is twice the s-free part and R_o twice the s-coefficient of P_n(ζ_+).

    Args:
        P (KippenhahnPoly): Kippenhahn polynomial.
        p: Center of the right ellipse (R_o is odd in p).
        X2: Squared half focal distance.
        C: Scalar or Poly in C.

    Returns:
        EvenOddPair: R_e of ρ-degree <= m and R_o of ρ-degree <= m-1.
    """
    sigma = Poly([0, C, X2], RHO)
    alpha = Poly([C, p * p + X2], RHO)
    zero = Poly([], RHO)
    step = _SplitElement(alpha, lift(2 * p, RHO), sigma)
    acc = _SplitElement(P.coefficient(P.m), zero, sigma)
    for j in range(P.m - 1, -1, -1):
        acc = acc * step + _SplitElement(P.coefficient(j), zero, sigma)
    logger.debug("Even/odd split done for n = {}", P.n)
    return EvenOddPair(lift(2 * acc.even, RHO), lift(2 * acc.odd, RHO))
