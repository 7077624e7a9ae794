"""
Scalar arithmetic for the criteria engine.

Four coefficient modes form a promotion lattice

    rational (Fraction) -> QSqrt2 -> QCosPi8 -> real (float)

QSqrt2 holds a + b*sqrt(2) with rational a, b. QCosPi8 holds u + v*c with
u, v in QSqrt2 and c = sqrt(2 + sqrt(2)) = 2cos(pi/8); it contains every
eigenvalue of a 7x7 reciprocal matrix, so the n = 7 procedures stay exact.
Mixed arithmetic always promotes, never demotes.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional, Union

import numpy as np

SQRT2_FLOAT = math.sqrt(2.0)
COS_PI_8_FLOAT = math.sqrt(2.0 + SQRT2_FLOAT)

# real-mode zero test: |x| <= ZERO_TOL * max(1, scale)
ZERO_TOL = 1e-9

RATIONAL, SQRT2_MODE, COS_PI_8_MODE, REAL = 0, 1, 2, 3
MODE_NAMES = {
    RATIONAL: "rational",
    SQRT2_MODE: "sqrt2",
    COS_PI_8_MODE: "cos_pi_8",
    REAL: "real",
}


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"Cannot build an exact rational from {type(value).__name__}")


@total_ordering
class QSqrt2:
    """Element a + b*sqrt(2) of the field Q(sqrt 2)."""

    __slots__ = ("_a", "_b")

    def __init__(self, a=0, b=0) -> None:
        self._a = _as_fraction(a)
        self._b = _as_fraction(b)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def _lift(cls, other) -> Optional["QSqrt2"]:
        if isinstance(other, QSqrt2):
            return other
        if isinstance(other, (int, Fraction, np.integer)) and not isinstance(other, bool):
            return cls(other, 0)
        return None

    def __repr__(self) -> str:
        return f"QSqrt2({self._a}, {self._b})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        if self._a == 0:
            return f"{self._b}*sqrt2"
        sign = "+" if self._b > 0 else "-"
        return f"{self._a}{sign}{abs(self._b)}*sqrt2"

    def __float__(self) -> float:
        return float(self._a) + float(self._b) * SQRT2_FLOAT

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash(("QSqrt2", self._a, self._b))

    def __eq__(self, other) -> bool:
        if isinstance(other, float):
            return self._b == 0 and self._a == other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def __lt__(self, other) -> bool:
        if isinstance(other, float):
            return float(self) < other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def sign(self) -> int:
        sa = (self._a > 0) - (self._a < 0)
        sb = (self._b > 0) - (self._b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger of a^2 and 2b^2 wins
        return sa if self._a * self._a > 2 * self._b * self._b else sb

    def __neg__(self) -> "QSqrt2":
        return QSqrt2(-self._a, -self._b)

    def __pos__(self) -> "QSqrt2":
        return self

    def __abs__(self) -> "QSqrt2":
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        if isinstance(other, float):
            return float(self) + other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QSqrt2(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, float):
            return float(self) - other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QSqrt2(self._a - o._a, self._b - o._b)

    def __rsub__(self, other):
        if isinstance(other, float):
            return other - float(self)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, float):
            return float(self) * other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QSqrt2(
            self._a * o._a + 2 * self._b * o._b,
            self._a * o._b + self._b * o._a,
        )

    __rmul__ = __mul__

    def conj(self) -> "QSqrt2":
        return QSqrt2(self._a, -self._b)

    def norm(self) -> Fraction:
        return self._a * self._a - 2 * self._b * self._b

    def inv(self) -> "QSqrt2":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
        n = self.norm()
        return QSqrt2(self._a / n, -self._b / n)

    def __truediv__(self, other):
        if isinstance(other, float):
            return float(self) / other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int) -> "QSqrt2":
        if k < 0:
            return self.inv() ** (-k)
        result, base = QSqrt2(1, 0), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


# c^2 = 2 + sqrt2
_C_SQUARED = QSqrt2(2, 1)


@total_ordering
class QCosPi8:
    """Element u + v*c of Q(sqrt2)(c), c = sqrt(2 + sqrt2) = 2cos(pi/8)."""

    __slots__ = ("_u", "_v")

    def __init__(self, u=0, v=0) -> None:
        self._u = u if isinstance(u, QSqrt2) else QSqrt2(u, 0)
        self._v = v if isinstance(v, QSqrt2) else QSqrt2(v, 0)

    @property
    def u(self) -> QSqrt2:
        return self._u

    @property
    def v(self) -> QSqrt2:
        return self._v

    @classmethod
    def _lift(cls, other) -> Optional["QCosPi8"]:
        if isinstance(other, QCosPi8):
            return other
        if isinstance(other, QSqrt2):
            return cls(other, 0)
        if isinstance(other, (int, Fraction, np.integer)) and not isinstance(other, bool):
            return cls(QSqrt2(other, 0), 0)
        return None

    def __repr__(self) -> str:
        return f"QCosPi8({self._u!r}, {self._v!r})"

    def __str__(self) -> str:
        if not self._v:
            return str(self._u)
        return f"({self._u})+({self._v})*c8"

    def __float__(self) -> float:
        return float(self._u) + float(self._v) * COS_PI_8_FLOAT

    def __bool__(self) -> bool:
        return bool(self._u) or bool(self._v)

    def __hash__(self) -> int:
        if not self._v:
            return hash(self._u)
        return hash(("QCosPi8", self._u, self._v))

    def __eq__(self, other) -> bool:
        if isinstance(other, float):
            return not self._v and self._u == other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._u == o._u and self._v == o._v

    def __lt__(self, other) -> bool:
        if isinstance(other, float):
            return float(self) < other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def sign(self) -> int:
        su, sv = self._u.sign(), self._v.sign()
        if sv == 0:
            return su
        if su == 0 or su == sv:
            return sv
        d = self._u * self._u - self._v * self._v * _C_SQUARED
        return su if d.sign() > 0 else sv

    def __neg__(self) -> "QCosPi8":
        return QCosPi8(-self._u, -self._v)

    def __pos__(self) -> "QCosPi8":
        return self

    def __abs__(self) -> "QCosPi8":
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        if isinstance(other, float):
            return float(self) + other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QCosPi8(self._u + o._u, self._v + o._v)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, float):
            return float(self) - other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QCosPi8(self._u - o._u, self._v - o._v)

    def __rsub__(self, other):
        if isinstance(other, float):
            return other - float(self)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, float):
            return float(self) * other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QCosPi8(
            self._u * o._u + self._v * o._v * _C_SQUARED,
            self._u * o._v + self._v * o._u,
        )

    __rmul__ = __mul__

    def conj(self) -> "QCosPi8":
        return QCosPi8(self._u, -self._v)

    def norm(self) -> QSqrt2:
        return self._u * self._u - self._v * self._v * _C_SQUARED

    def inv(self) -> "QCosPi8":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(sqrt2, c)")
        n = self.norm()
        return QCosPi8(self._u / n, -self._v / n)

    def __truediv__(self, other):
        if isinstance(other, float):
            return float(self) / other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int) -> "QCosPi8":
        if k < 0:
            return self.inv() ** (-k)
        result, base = QCosPi8(1, 0), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


Scalar = Union[Fraction, QSqrt2, QCosPi8, float]

SQRT2 = QSqrt2(0, 1)
COS_PI_8 = QCosPi8(0, 1)                       # sqrt(2 + sqrt2)
COS_3PI_8 = QCosPi8(0, QSqrt2(-1, 1))          # sqrt(2 - sqrt2) = c*(sqrt2 - 1)


def as_scalar(value) -> Scalar:
    """Normalize ints to Fraction and numpy floats to float; pass exact scalars through."""
    if isinstance(value, (Fraction, QSqrt2, QCosPi8)):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        return float(value)
    raise TypeError(f"Unsupported scalar type: {type(value).__name__}")


def scalar_rank(value) -> int:
    if isinstance(value, QCosPi8):
        return COS_PI_8_MODE
    if isinstance(value, QSqrt2):
        return SQRT2_MODE
    if isinstance(value, (Fraction, int, np.integer)) and not isinstance(value, bool):
        return RATIONAL
    if isinstance(value, (float, np.floating)):
        return REAL
    raise TypeError(f"Unsupported scalar type: {type(value).__name__}")


def mode_of(values: Iterable) -> str:
    return MODE_NAMES[max((scalar_rank(v) for v in values), default=RATIONAL)]


def is_exact(value) -> bool:
    return scalar_rank(value) != REAL


def to_real(value) -> float:
    return float(value)


def promote(value, rank: int) -> Scalar:
    """Lift value to the given lattice rank (never demotes)."""
    current = scalar_rank(value)
    if rank <= current:
        return as_scalar(value)
    if rank == REAL:
        return float(value)
    if rank == COS_PI_8_MODE:
        return QCosPi8._lift(as_scalar(value))
    return QSqrt2._lift(as_scalar(value))


def is_zero(value, scale: float = 1.0) -> bool:
    if is_exact(value):
        return value == 0
    return abs(value) <= ZERO_TOL * max(1.0, abs(scale))


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _qsqrt2_sqrt(x: QSqrt2) -> Optional[QSqrt2]:
    """Nonnegative square root inside Q(sqrt2), or None."""
    if x.sign() < 0:
        return None
    if x.b == 0:
        r = _rational_sqrt(x.a)
        if r is not None:
            return QSqrt2(r, 0)
        r = _rational_sqrt(x.a / 2)
        return QSqrt2(0, r) if r is not None else None
    # (p + q*sqrt2)^2 = a + b*sqrt2  <=>  p^2 + 2q^2 = a, 2pq = b
    r = _rational_sqrt(x.norm())
    if r is None:
        return None
    for p_sq in ((x.a + r) / 2, (x.a - r) / 2):
        p = _rational_sqrt(p_sq)
        if p:
            root = QSqrt2(p, x.b / (2 * p))
            return root if root.sign() >= 0 else -root
    return None


def exact_sqrt(value) -> Optional[Scalar]:
    """Exact nonnegative square root inside the lattice, or None if there is none."""
    if not is_exact(value):
        return None
    value = as_scalar(value)
    if isinstance(value, QCosPi8):
        if value.v:
            return None
        value = value.u
    if isinstance(value, Fraction):
        value = QSqrt2(value, 0)
    root = _qsqrt2_sqrt(value)
    if root is not None:
        return root.a if root.b == 0 else root
    # (v*c)^2 = v^2 (2 + sqrt2) = x  <=>  v^2 = x (2 - sqrt2) / 2
    v = _qsqrt2_sqrt(value * QSqrt2(1, Fraction(-1, 2)))
    if v is None:
        return None
    return QCosPi8(0, v)


def sqrt_scalar(value) -> Scalar:
    """Square root, exact whenever the lattice contains it, float otherwise."""
    root = exact_sqrt(value)
    if root is not None:
        return root
    return math.sqrt(float(value))


def format_scalar(value) -> str:
    if isinstance(value, float):
        return f"{value:.15g}"
    return str(value)
