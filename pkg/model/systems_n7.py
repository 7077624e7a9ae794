"""
Closed-form polynomial systems for 7x7 reciprocal matrices.

Each function evaluates one closed-form system on a xi 6-tuple
(0-based: xi[0] is ξ1). They use only ring operations, so exact scalars,
floats and sympy symbols all work; the ones carrying √2 or
c = sqrt(2 + √2) need exact or float input.

These are cross-checks. The generic procedures in origin_ellipse,
concentric, shifted_pair and factorization never call them to decide a
verdict; they only compare.
"""
from fractions import Fraction

from utils.algebra import COS_3PI_8, COS_PI_8, SQRT2

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def _unpack(xi):
    values = tuple(xi)
    if len(values) != 6:
        raise ValueError(f"n = 7 systems need 6 xi values, got {len(values)}")
    return values


def sum1(xi):
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    return x1 + x2 + x3 + x4 + x5 + x6


def pair_sum(xi):
    """Sum over the ten non-consecutive pairs ξiξj."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    return (x1 * x3 + x3 * x5 + x3 * x6 + x1 * x4 + x2 * x4
            + x1 * x5 + x2 * x5 + x1 * x6 + x2 * x6 + x4 * x6)


def triple_sum(xi):
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    return x1 * x3 * x5 + x1 * x3 * x6 + x1 * x4 * x6 + x2 * x4 * x6


# -- one origin-centered ellipse -------------------------------------------

def origin_rho0(xi, C):
    """ρ^0 coefficient of P7(C + ρX²)."""
    return C * C * C - C * C * sum1(xi) + C * pair_sum(xi) - triple_sum(xi)


def origin_rho1(xi, C, X2):
    """ρ^1 coefficient of P7(C + ρX²)."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    return (3 * C * C * (X2 - 2)
            - C * (2 * (X2 - 2) * x1 + (2 * X2 - 3) * (x2 + x3 + x4 + x5) + 2 * (X2 - 2) * x6)
            + X2 * x2 * x5
            + (X2 - 2) * (x1 * x3 + x1 * x6 + x4 * x6)
            + (X2 - 1) * (x1 * x4 + x2 * x4 + x1 * x5 + x3 * x5 + x2 * x6 + x3 * x6))


def origin_rho2(xi, C, X2):
    """ρ^2 coefficient of P7(C + ρX²); linear in C."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    X4 = X2 * X2
    return (C * (3 * X4 - 12 * X2 + 10)
            - (X4 - 3 * X2 + 2) * (x3 + x4)
            - (X4 - 3 * X2 + 1) * (x2 + x5)
            - (X4 - 4 * X2 + 3) * (x1 + x6))


def middle_focus_c(xi):
    """C for the foci ±√2, solved from origin_rho2."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    return HALF * (x1 + x2 + x5 + x6)


def middle_focus_factored(xi):
    """origin_rho0 and origin_rho1 at X² = 2 after substituting C, in factored form."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    d = x1 + x2 - x5 - x6
    cubic = -Fraction(1, 8) * d * (
        x1 * x1 + 2 * (x2 - x3 - x4) * x1 - x6 * x6
        + (x2 + 2 * x3 - 2 * x4 - x5) * (x2 + x5)
        + 2 * (x3 + x4 - x5) * x6
    )
    quadratic = HALF * (-x2 - x3 + x4 + x5) * d
    return cubic, quadratic


def middle_focus_branches(xi):
    """The two alternatives for an ellipse with foci ±√2: (branch value, (quadratic, linear))."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    first = x1 + x2 - x5 - x6
    quadratic = (x1 * x1 + 2 * x2 * x1 - 2 * x3 * x1 - 2 * x4 * x1 + x2 * x2 - x5 * x5 - x6 * x6
                 + 2 * x2 * x3 - 2 * x2 * x4 + 2 * x3 * x5 - 2 * x4 * x5 + 2 * x3 * x6
                 + 2 * x4 * x6 - 2 * x5 * x6)
    return first, (quadratic, x2 + x3 - x4 - x5)


def middle_focus_holds(xi, is_zero) -> bool:
    first, (quadratic, linear) = middle_focus_branches(xi)
    return is_zero(first) or (is_zero(quadratic) and is_zero(linear))


# -- three concentric ellipses ---------------------------------------------

def concentric_matrix():
    return [
        [1, 1, 1],
        [4 - SQRT2, 4, 4 + SQRT2],
        [4 - 2 * SQRT2, 2, 4 + 2 * SQRT2],
    ]


def concentric_c_values(xi):
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    c1 = QUARTER * (x1 + (SQRT2 + 1) * x2 + (SQRT2 + 2) * x3 + (SQRT2 + 2) * x4
                    + (SQRT2 + 1) * x5 + x6)
    c2 = HALF * (x1 + x2 + x5 + x6)
    c3 = QUARTER * (x1 + (1 - SQRT2) * x2 + (2 - SQRT2) * x3 + (2 - SQRT2) * x4
                    + (1 - SQRT2) * x5 + x6)
    return c1, c2, c3


def concentric_system(xi, C):
    """The six coefficient equations, left minus right, for C = (C1, C2, C3)."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    c1, c2, c3 = C
    return [
        c1 + c2 + c3 - sum1(xi),
        (4 - SQRT2) * c1 + 4 * c2 + (SQRT2 + 4) * c3
        - (4 * x1 + 3 * x2 + 3 * x3 + 3 * x4 + 3 * x5 + 4 * x6),
        2 * (2 - SQRT2) * c1 + 2 * c2 + 2 * (SQRT2 + 2) * c3
        - (3 * x1 + x2 + 2 * x3 + 2 * x4 + x5 + 3 * x6),
        c1 * c2 + c3 * c2 + c1 * c3 - pair_sum(xi),
        (2 - SQRT2) * c1 * c2 + (SQRT2 + 2) * c3 * c2 + 2 * c1 * c3
        - (2 * x1 * x3 + x5 * x3 + x6 * x3 + x1 * x4 + x2 * x4 + x1 * x5
           + 2 * x1 * x6 + x2 * x6 + 2 * x4 * x6),
        c1 * c2 * c3 - triple_sum(xi),
    ]


def concentric_reduced(xi):
    """Cubic and the two quadratics left after eliminating C1, C2, C3."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    cubic = (x1 ** 3 + 3 * x2 * x1 ** 2 + 4 * x3 * x1 ** 2 + 4 * x4 * x1 ** 2 + 3 * x5 * x1 ** 2
             + 3 * x6 * x1 ** 2 + x2 ** 2 * x1 + 2 * x3 ** 2 * x1 + 2 * x4 ** 2 * x1
             + x5 ** 2 * x1 + 3 * x6 ** 2 * x1 + 4 * x2 * x3 * x1 + 4 * x2 * x4 * x1
             + 4 * x3 * x4 * x1 + 2 * x2 * x5 * x1 - 28 * x3 * x5 * x1 + 4 * x4 * x5 * x1
             + 6 * x2 * x6 * x1 - 24 * x3 * x6 * x1 - 24 * x4 * x6 * x1 + 6 * x5 * x6 * x1
             - x2 ** 3 - x5 ** 3 + x6 ** 3 + 2 * x2 * x3 ** 2 + 2 * x2 * x4 ** 2
             - 3 * x2 * x5 ** 2 + 3 * x2 * x6 ** 2 + 4 * x3 * x6 ** 2 + 4 * x4 * x6 ** 2
             + 3 * x5 * x6 ** 2 + 4 * x2 * x3 * x4 - 3 * x2 ** 2 * x5 + 2 * x3 ** 2 * x5
             + 2 * x4 ** 2 * x5 + 4 * x3 * x4 * x5 + x2 ** 2 * x6 + 2 * x3 ** 2 * x6
             + 2 * x4 ** 2 * x6 + x5 ** 2 * x6 + 4 * x2 * x3 * x6 - 28 * x2 * x4 * x6
             + 4 * x3 * x4 * x6 + 2 * x2 * x5 * x6 + 4 * x3 * x5 * x6 + 4 * x4 * x5 * x6)
    quad_a = (5 * x1 ** 2 + 10 * x2 * x1 - 4 * x3 * x1 - 4 * x4 * x1 - 6 * x5 * x1 - 6 * x6 * x1
              + 3 * x2 ** 2 + 2 * x3 ** 2 + 2 * x4 ** 2 + 3 * x5 ** 2 + 5 * x6 ** 2
              + 8 * x2 * x3 - 8 * x2 * x4 + 4 * x3 * x4 - 10 * x2 * x5 - 8 * x3 * x5
              + 8 * x4 * x5 - 6 * x2 * x6 - 4 * x3 * x6 - 4 * x4 * x6 + 10 * x5 * x6)
    quad_b = (5 * x1 ** 2 + 6 * x2 * x1 - 8 * x3 * x1 - 2 * x5 * x1 - 6 * x6 * x1 - x2 ** 2
              + 2 * x3 ** 2 + 2 * x4 ** 2 - x5 ** 2 + 5 * x6 ** 2 + 4 * x2 * x3 - 4 * x2 * x4
              + 4 * x3 * x4 - 2 * x2 * x5 - 4 * x3 * x5 + 4 * x4 * x5 - 2 * x2 * x6
              - 8 * x4 * x6 + 6 * x5 * x6)
    return cubic, quad_a, quad_b


def concentric_first_branch(xi):
    """Reduced form of the reduced system under ξ1 + ξ2 = ξ5 + ξ6: (quadratic, linear)."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    quadratic = (x2 ** 2 - x3 ** 2 - x4 ** 2 - x5 ** 2 - 2 * x6 ** 2 - 6 * x3 * x2 + 2 * x4 * x2
                 + 2 * x5 * x2 - 2 * x3 * x4 + 6 * x3 * x5 - 2 * x4 * x5 + 4 * x3 * x6
                 + 4 * x4 * x6 - 4 * x5 * x6)
    return quadratic, x1 + x2 - x5 - x6


def concentric_holds(xi, is_zero) -> bool:
    """Either the first branch holds, or ξ2 + ξ3 = ξ4 + ξ5 with the cubic and first quadratic."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    quadratic, linear = concentric_first_branch(xi)
    if is_zero(quadratic) and is_zero(linear):
        return True
    cubic, quad_a, _ = concentric_reduced(xi)
    return is_zero(x2 + x3 - x4 - x5) and is_zero(cubic) and is_zero(quad_a)


# -- shifted pairs -----------------------------------------------------------

def shifted_pair_equations(xi, C, p2, X2):
    """The five shifted-pair equations in (C, p², X²).

    The third one uses the ξ-pair grouping that matches the ρ^1 coefficient
    of the even part: ξ1ξ4 belongs with the (p² + X² - 1) group and ξ2ξ5
    carries p² + X².
    """
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    P, Y = p2, X2
    q = P + Y
    s_mid = x2 + x3 + x4 + x5
    s_end = x1 + x6
    eq1 = (2 * C * (15 * P * P + 6 * P * (5 * Y - 6) + 3 * Y * Y - 12 * Y + 10)
           - 2 * x2 - 4 * x3 - 4 * x4 - 2 * x5 - 6 * x6
           - 2 * x1 * (P * P + P * (6 * Y - 4) + Y * Y - 4 * Y + 3)
           - 2 * s_mid * (P * P + P * (6 * Y - 3) + Y * Y - 3 * Y)
           - 2 * x6 * (P * P + P * (6 * Y - 4) + Y * Y - 4 * Y))
    eq2 = 2 * C * (5 * P + 3 * Y - 6) - 2 * (q - 2) * s_end + (3 - 2 * q) * s_mid
    eq3 = (3 * C * C * (5 * P + Y - 2)
           - C * (6 * P + 2 * Y - 3) * s_mid
           - 2 * C * (3 * P + Y - 2) * s_end
           + (q - 1) * (x1 * x4 + x1 * x5 + x2 * x4 + x2 * x6 + x3 * x5 + x3 * x6)
           + (q - 2) * (x1 * x3 + x1 * x6 + x4 * x6)
           + q * x2 * x5)
    eq4 = (3 * C * C - 2 * C * sum1(xi) + x1 * (x3 + x4 + x5 + x6) + x2 * (x4 + x5 + x6)
           + x3 * (x5 + x6) + x4 * x6)
    eq5 = (C * C * C - C * C * sum1(xi)
           + C * (x1 * (x3 + x4 + x5 + x6) + x2 * (x4 + x5 + x6) + x3 * (x5 + x6) + x4 * x6)
           - (x1 * x3 * (x5 + x6) + (x1 + x2) * x4 * x6))
    return [eq1, eq2, eq3, eq4, eq5]


def closed_form_linear_forms():
    """The three p > X forms keyed by (p + X, p - X), as (c16, c25, c34)."""
    c, d = COS_PI_8, COS_3PI_8
    return {
        ("c8", "sqrt2"): (
            2 * (SQRT2 + 3) + 3 * SQRT2 * c,
            4 * SQRT2 + (2 + 3 * SQRT2) * c + 6,
            2 * (SQRT2 + (1 + SQRT2) * c + 2),
        ),
        ("c8", "d8"): (SQRT2 + 2, SQRT2, 2 * (SQRT2 + 1)),
        ("sqrt2", "d8"): (
            6 - 2 * SQRT2 + 3 * SQRT2 * d,
            6 - 4 * SQRT2 - 2 * d + 3 * SQRT2 * d,
            2 * (2 - SQRT2 - d + SQRT2 * d),
        ),
    }


# -- factorization with a coexisting origin ellipse ------------------------

def tangent_quadratic(xi):
    """Common roots of the two diagonal blocks of Im A when ξ2ξ3 = 0."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    s = x1 + x2
    return s * s - (x3 + x4 + x5 + x6) * s + x3 * x5 + x3 * x6 + x4 * x6


def tangent_quadratic_mirrored(xi):
    """The same condition when ξ4ξ5 = 0."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    s = x5 + x6
    return s * s - (x1 + x2 + x3 + x4) * s + x1 * x3 + x1 * x4 + x2 * x4


def shifted_c_values(xi, case: str):
    """(C, C0) for case "xi2xi3" or "xi4xi5"."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    if case == "xi2xi3":
        C = x1 + x2
        return C, x3 + x4 + x5 + x6 - C
    if case == "xi4xi5":
        C = x5 + x6
        return C, x1 + x2 + x3 + x4 - C
    raise ValueError(f"Unknown factorization case: {case!r}")


def central_focus_system(xi):
    """Coefficient system for foci c and -d with X0 = √2, after substituting the ξ2ξ3 = 0 values of C, C0."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    s2 = SQRT2
    return [
        (-x1 ** 3 - 3 * x2 * x1 ** 2 + x3 * x1 ** 2 + x4 * x1 ** 2 + x5 * x1 ** 2 + x6 * x1 ** 2
         - 3 * x2 ** 2 * x1 + 2 * x2 * x3 * x1 + 2 * x2 * x4 * x1 + 2 * x2 * x5 * x1
         - x3 * x5 * x1 + 2 * x2 * x6 * x1 - x3 * x6 * x1 - x4 * x6 * x1 - x2 ** 3
         + x2 ** 2 * x3 + x2 ** 2 * x4 + x2 ** 2 * x5 + x2 ** 2 * x6 - x2 * x4 * x6),
        (-2 * s2 * x1 ** 2 + 2 * x1 ** 2 - 4 * s2 * x2 * x1 + 4 * x2 * x1 + 2 * s2 * x3 * x1
         - 2 * x3 * x1 + 2 * s2 * x4 * x1 - x4 * x1 + 2 * s2 * x5 * x1 - x5 * x1
         + 2 * s2 * x6 * x1 - 2 * x6 * x1 - 2 * s2 * x2 ** 2 + 2 * x2 ** 2 + 2 * s2 * x2 * x3
         + 2 * s2 * x2 * x4 - x2 * x4 + 2 * s2 * x2 * x5 - x3 * x5 + 2 * s2 * x2 * x6
         - x2 * x6 - x3 * x6 - 2 * x4 * x6),
        4 * s2 * x1 - 5 * x1 + 4 * s2 * x2 - 3 * x2 + x5 - x6,
        (x1 ** 2 + 2 * x2 * x1 - x3 * x1 - x4 * x1 - x5 * x1 - x6 * x1 + x2 ** 2 - 2 * x2 * x3
         - x2 * x4 - x2 * x5 + x3 * x5 - x2 * x6 + x3 * x6 + x4 * x6),
        -2 * s2 * x1 + 4 * x1 - 2 * s2 * x2 + 3 * x2 - x3 - x4 - x5,
        tangent_quadratic(xi),
    ]


def central_focus_reduced_xi2(xi):
    """Reduced central-focus system under ξ2 = 0."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    s2 = SQRT2
    return [
        (34 * x5 ** 3 + 9 * s2 * x6 * x5 ** 2 - 31 * x6 * x5 ** 2 + 65 * s2 * x6 ** 2 * x5
         - 86 * x6 ** 2 * x5 + 32 * s2 * x6 ** 3 - 46 * x6 ** 3),
        (104 * s2 * x5 ** 2 + 158 * x5 ** 2 - 5 * s2 * x6 * x5 - x6 * x5 - s2 * x6 ** 2
         - 10 * x6 ** 2 + 49 * x4 * x6),
        (48 * s2 * x5 ** 2 + 88 * x5 ** 2 + 49 * x4 * x5 - 40 * s2 * x6 * x5 - 8 * x6 * x5
         - 8 * s2 * x6 ** 2 + 18 * x6 ** 2),
        7 * x3 + 7 * x4 + 6 * s2 * x5 + 11 * x5 - 6 * s2 * x6 - 4 * x6,
        7 * x1 + 4 * s2 * x5 + 5 * x5 - 4 * s2 * x6 - 5 * x6,
    ]


def central_focus_reduced_xi3(xi):
    """Reduced central-focus system under ξ3 = 0."""
    x1, x2, x3, x4, x5, x6 = _unpack(xi)
    s2 = SQRT2
    return [
        x5 * (x5 + x6) * (x5 ** 2 - 3 * s2 * x6 * x5 - 4 * x6 * x5 - 2 * s2 * x6 ** 2 + 2 * x6 ** 2),
        (204 * s2 * x5 ** 3 + 123 * x5 ** 3 - 903 * s2 * x6 * x5 ** 2 - 1575 * x6 * x5 ** 2
         - 1107 * s2 * x6 ** 2 * x5 - 2356 * x6 ** 2 * x5 - 658 * x6 ** 3 + 658 * x4 * x6 ** 2),
        (6 * s2 * x5 ** 2 + 16 * x5 ** 2 + 23 * x4 * x5 + 4 * s2 * x6 * x5 + 26 * x6 * x5
         - 2 * s2 * x6 ** 2 + 10 * x6 ** 2 + 2 * s2 * x4 * x6 - 10 * x4 * x6),
        (23 * x4 ** 2 - 5 * s2 * x6 * x4 - 21 * x6 * x4 - 15 * s2 * x5 ** 2 - 17 * x5 ** 2
         + 5 * s2 * x6 ** 2 - 2 * x6 ** 2 - 10 * s2 * x5 * x6 - 19 * x5 * x6),
        3 * x2 + 4 * s2 * x4 - 5 * x4 + 2 * s2 * x5 - x5 + 2 * s2 * x6 - 4 * x6,
        3 * x1 - 4 * s2 * x4 + 3 * x4 - 2 * s2 * x5 - 2 * s2 * x6 + 3 * x6,
    ]


def inner_focus_elimination(x1, x3, x4):
    """ξ5, ξ6 through ξ1, ξ3, ξ4 on the inner-focus linear equations."""
    c, s2 = COS_PI_8, SQRT2
    x5 = (4 * (s2 + 3) - 6 * s2 * c) * x1 - (s2 + 1) * (x3 + x4)
    x6 = (-8 * s2 + 2 * (2 + 3 * s2) * c - 13) * x1 + (s2 + 1) * (x3 + x4)
    return x5, x6
