"""
Dense univariate polynomials over an arbitrary coefficient ring.

A ``Poly`` is tagged with its variable name. Coefficients may themselves be
``Poly`` objects in an *inner* variable, which is how the bivariate
Kippenhahn polynomial (ζ over ρ) and the symbolic-in-C residuals (ρ over C)
are represented. Nesting order, outermost first: ζ, s, ρ, C.
"""
from __future__ import annotations

from itertools import zip_longest
from typing import Iterable, List, Sequence, Tuple

ZETA, SPLIT, RHO, CVAR = "ζ", "s", "ρ", "C"
VARIABLE_ORDER = {ZETA: 0, SPLIT: 1, RHO: 2, CVAR: 3}


def _is_zero_coefficient(c) -> bool:
    try:
        return bool(c == 0)
    except TypeError:
        return False


def _rank(var: str) -> int:
    return VARIABLE_ORDER.get(var, len(VARIABLE_ORDER))


class Poly:
    """Polynomial c0 + c1*x + ... in the variable ``var``; coefficients low to high."""

    __slots__ = ("_coeffs", "_var")

    def __init__(self, coeffs: Iterable = (), var: str = ZETA) -> None:
        coeffs = list(coeffs)
        while coeffs and _is_zero_coefficient(coeffs[-1]):
            coeffs.pop()
        self._coeffs: Tuple = tuple(coeffs)
        self._var = var

    @classmethod
    def variable(cls, var: str) -> "Poly":
        return cls([0, 1], var)

    @property
    def coeffs(self) -> Tuple:
        return self._coeffs

    @property
    def var(self) -> str:
        return self._var

    @property
    def degree(self) -> int:
        """Degree in the main variable; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def leading(self):
        return self._coeffs[-1] if self._coeffs else 0

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, k: int):
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return 0

    # -- ring plumbing -------------------------------------------------

    def _coerce(self, other):
        """Return other as a Poly in self.var, or None if other lives in an outer ring."""
        if isinstance(other, Poly):
            if other._var == self._var:
                return other
            if _rank(other._var) < _rank(self._var):
                return None
            if _rank(other._var) == _rank(self._var):
                raise TypeError(f"Cannot mix polynomials in {self._var!r} and {other._var!r}")
        return Poly([other], self._var)

    def __repr__(self) -> str:
        return f"Poly({list(self._coeffs)!r}, var={self._var!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self._coeffs):
            if _is_zero_coefficient(c):
                continue
            body = f"({c})" if isinstance(c, Poly) else str(c)
            if k == 0:
                terms.append(body)
            elif k == 1:
                terms.append(f"{body}*{self._var}")
            else:
                terms.append(f"{body}*{self._var}^{k}")
        return " + ".join(terms)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(self._coeffs) != len(o._coeffs):
            return False
        return all(bool(a == b) for a, b in zip(self._coeffs, o._coeffs))

    def __hash__(self) -> int:
        if len(self._coeffs) <= 1:
            return hash(self.coefficient(0))
        return hash((self._var, self._coeffs))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self._coeffs], self._var)

    def __pos__(self) -> "Poly":
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly(
            [a + b for a, b in zip_longest(self._coeffs, o._coeffs, fillvalue=0)],
            self._var,
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly(
            [a - b for a, b in zip_longest(self._coeffs, o._coeffs, fillvalue=0)],
            self._var,
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly) and other._var == self._var:
            if not self._coeffs or not other._coeffs:
                return Poly([], self._var)
            acc: List = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                for j, b in enumerate(other._coeffs):
                    acc[i + j] = acc[i + j] + a * b
            return Poly(acc, self._var)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly([c * other for c in self._coeffs], self._var)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly([c * other for c in self._coeffs], self._var)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1], self._var)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        """Horner evaluation; x may be a scalar, a sympy expression or another Poly."""
        if not self._coeffs:
            return 0
        acc = self._coeffs[-1]
        for c in reversed(self._coeffs[:-1]):
            acc = acc * x + c
        return acc

    evaluate = __call__


def lift(value, var: str) -> Poly:
    """Wrap a coefficient as a constant Poly in ``var`` unless it already is one."""
    if isinstance(value, Poly) and value.var == var:
        return value
    return Poly([value], var)


def poly_divrem(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    """Long division by a divisor monic in its main variable.

    Args:
        num: Dividend, in the same variable as ``den``.
        den: Divisor whose leading coefficient equals 1.

    Returns:
        (quotient, remainder) with num = quotient * den + remainder and
        deg(remainder) < deg(den).
    """
    if num.var != den.var:
        raise ValueError(f"Variable mismatch: {num.var!r} vs {den.var!r}")
    if den.is_zero() or not bool(den.leading == 1):
        raise ValueError("non-monic divisor")
    d = den.degree
    rem: List = list(num.coeffs)
    if len(rem) <= d:
        return Poly([], num.var), Poly(rem, num.var)
    quot: List = [0] * (len(rem) - d)
    for k in range(len(rem) - d - 1, -1, -1):
        coef = rem[k + d]
        quot[k] = coef
        for j in range(d + 1):
            rem[k + j] = rem[k + j] - coef * den.coeffs[j]
    return Poly(quot, num.var), Poly(rem[:d], num.var)


def product(factors: Sequence[Poly], var: str) -> Poly:
    result = Poly([1], var)
    for f in factors:
        result = result * f
    return result
