"""
Reciprocal tridiagonal matrices and the invariants they are classified by.

Every matrix here has zero main diagonal and off-diagonal pairs with
a_{j,j+1} * a_{j+1,j} = 1. Such a matrix has the same spectrum as the
0/1 path adjacency matrix, and its Kippenhahn curve depends only on
xi_j = (|a_{j,j+1}| - |a_{j+1,j}|)^2 / 4.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple

import numpy as np

from utils.algebra import (
    COS_3PI_8,
    COS_PI_8,
    SQRT2,
    Scalar,
    as_scalar,
    is_exact,
    mode_of,
)
from utils.polynomial import ZETA, Poly

RECIPROCITY_TOL = 1e-12


@dataclass(frozen=True)
class XiVector:
    """The n - 1 invariants xi_1..xi_{n-1} of an n x n reciprocal matrix."""

    n: int
    xi: Tuple
    checked: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        values = tuple(as_scalar(v) for v in self.xi)
        if len(values) != self.n - 1:
            raise ValueError(f"Expected {self.n - 1} xi values for n = {self.n}, got {len(values)}")
        if self.checked:
            for j, v in enumerate(values, start=1):
                if v < 0:
                    raise ValueError(f"xi_{j} must be nonnegative, got {v}")
        object.__setattr__(self, "xi", values)

    @classmethod
    def from_values(cls, values: Iterable, n: Optional[int] = None) -> "XiVector":
        values = tuple(values)
        return cls(len(values) + 1 if n is None else n, values)

    @classmethod
    def unchecked(cls, n: int, values: Iterable) -> "XiVector":
        """Build without the sign check; used for rounded catalog vectors only."""
        return cls(n, tuple(values), checked=False)

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def mode(self) -> str:
        return mode_of(self.xi)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self.xi)

    @property
    def admissible(self) -> bool:
        return all(v >= 0 for v in self.xi)

    @property
    def sup_norm(self) -> float:
        return max((abs(float(v)) for v in self.xi), default=0.0)

    def __len__(self) -> int:
        return len(self.xi)

    def __iter__(self):
        return iter(self.xi)

    def __getitem__(self, index):
        return self.xi[index]

    def transposed(self) -> "XiVector":
        """Apply xi_j <-> xi_{n-j}, the transpositional similarity."""
        return XiVector(self.n, tuple(reversed(self.xi)), checked=self.checked)

    def scaled(self, t) -> "XiVector":
        t = as_scalar(t)
        if t < 0:
            raise ValueError("scale factor must be nonnegative")
        return XiVector(self.n, tuple(v * t for v in self.xi), checked=self.checked)

    def to_real(self) -> "XiVector":
        return XiVector(self.n, tuple(float(v) for v in self.xi), checked=self.checked)


@dataclass(frozen=True)
class ModulusPair:
    """Moduli x = |a_{j,j+1}|, y = |a_{j+1,j}| of one off-diagonal pair."""

    x: float
    y: float

    @classmethod
    def from_xi(cls, xi_j) -> "ModulusPair":
        value = float(xi_j)
        if value < 0:
            raise ValueError(f"xi must be nonnegative, got {value}")
        x = math.sqrt(value) + math.sqrt(value + 1.0)
        return cls(x, 1.0 / x)

    @property
    def xi(self) -> float:
        return (self.x - self.y) ** 2 / 4.0


@dataclass(frozen=True, eq=False)
class ReciprocalMatrix:
    n: int
    upper: np.ndarray
    lower: np.ndarray
    source_xi: Optional[XiVector] = None

    def __post_init__(self) -> None:
        upper = np.asarray(self.upper, dtype=complex)
        lower = np.asarray(self.lower, dtype=complex)
        if upper.shape != (self.n - 1,) or lower.shape != (self.n - 1,):
            raise ValueError(f"Off-diagonals of an {self.n}x{self.n} matrix need {self.n - 1} entries")
        products = upper * lower
        scale = np.maximum(1.0, np.abs(upper) * np.abs(lower))
        bad = np.nonzero(np.abs(products - 1.0) > RECIPROCITY_TOL * scale)[0]
        if bad.size:
            j = int(bad[0]) + 1
            raise ValueError(f"Reciprocity violated at pair {j}: product {products[j - 1]}")
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.n, self.n), dtype=complex)
        idx = np.arange(self.n - 1)
        dense[idx, idx + 1] = self.upper
        dense[idx + 1, idx] = self.lower
        return dense

    def moduli(self) -> List[ModulusPair]:
        return [ModulusPair(float(abs(a)), float(abs(b))) for a, b in zip(self.upper, self.lower)]


@dataclass(frozen=True)
class SpectrumList:
    """Eigenvalues 2cos(k*pi/(n+1)), k = 1..n, in decreasing order."""

    n: int
    values: Tuple[float, ...]
    exact: Optional[Tuple[Scalar, ...]] = None

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def positive(self, exact: bool = True) -> Tuple:
        """X_1 > ... > X_m, the positive eigenvalues (exact when available)."""
        source = self.exact if exact and self.exact is not None else self.values
        return tuple(source[: self.m])

    def focus(self, k: int, exact: bool = True):
        if not 1 <= k <= self.m:
            raise ValueError(f"focus index k must lie in 1..{self.m}, got {k}")
        return self.positive(exact)[k - 1]

    def squares(self, exact: bool = True) -> Tuple:
        return tuple(x * x for x in self.positive(exact))

    def contains(self, value, tol: float = 1e-9) -> bool:
        if self.exact is not None and is_exact(value):
            return any(value == v for v in self.exact)
        return any(abs(float(value) - v) <= tol for v in self.values)


_EXACT_SPECTRA = {
    2: (Fraction(1), Fraction(-1)),
    3: (SQRT2, Fraction(0), -SQRT2),
    7: (COS_PI_8, SQRT2, COS_3PI_8, Fraction(0), -COS_3PI_8, -SQRT2, -COS_PI_8),
}


@lru_cache(maxsize=None)
def spectrum(n: int) -> SpectrumList:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    values = tuple(2.0 * math.cos(k * math.pi / (n + 1)) for k in range(1, n + 1))
    if n % 2 == 1:
        values = values[: n // 2] + (0.0,) + values[n // 2 + 1:]
    return SpectrumList(n, values, _EXACT_SPECTRA.get(n))


@lru_cache(maxsize=None)
def char_poly_qn(n: int) -> Poly:
    """Q_n(ζ) = sum_j (-1)^j binom(n-j, j) ζ^{m-j}, the characteristic polynomial in ζ = λ^2."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    m = n // 2
    coeffs = [Fraction(0)] * (m + 1)
    for j in range(m + 1):
        coeffs[m - j] = Fraction((-1) ** j * math.comb(n - j, j))
    return Poly(coeffs, ZETA)
