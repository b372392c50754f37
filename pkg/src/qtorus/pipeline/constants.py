"""Named polynomials of the figure-eight construction, stored as printed.

Every entry is the literal expression text (calculator syntax, see
:func:`qtorus.rings.text.parse_expr`), so the stored form can be compared
with its source by eye.  Two printed values are known to be misprinted; the
corrected forms live in :data:`ERRATA` and are never substituted silently.
"""

from __future__ import annotations

from functools import lru_cache

from ..rings.text import parse_expr
from ..torus import TorusElement

SOURCE = {
    # A-polynomial and the coefficients of its square
    "A_E": "L + L^-1 - M^4 - M^-4 + M^2 + M^-2 + 2",
    "at2": "1",
    "atm2": "1",
    "at1": "-2 M^4 - 2 M^-4 + 2 M^2 + 2 M^-2 + 4",
    "atm1": "-2 M^4 - 2 M^-4 + 2 M^2 + 2 M^-2 + 4",
    "at0": "M^8 + M^-8 - 2 M^6 - 2 M^-6 - 3 M^4 - 3 M^-4 + 2 M^2 + 2 M^-2 + 10",
    # inhomogeneous recurrence alpha' = a1 L + a-1 L^-1 + a0
    "a1": "t^-2 M^2 - t^2 M^-2",
    "am1": "t^2 M^2 - t^-2 M^-2",
    "a0": "(M^2 - M^-2) (-M^4 - M^-4 + M^2 + M^-2 + t^4 + t^-4)",
    # Groebner basis of <A2, B2>, conversion matrix, reduction quotients of C2
    "g1": (
        "-M^14 (-1 + M^8) (t^4 + M^8 t^4 - M^4 (1 + t^8))"
    ),
    "g2": (
        "-M^10 (-1 + M^8) t^2 (t^4 + M^8 t^4 - M^4 (1 + t^8))"
    ),
    "g3": (
        "(-1 + M^4) (M - t) (M + t) (-1 + M t) (1 + M t) (M^2 + t^2) (1 + M^2 t^2) * (M^4 + M^6 + M^8 + 2 M^10 + 3 M^12 + M^14 + 2 M^16 - t^4)"
    ),
    "g4": (
        "t^2 (-M + t) (M + t) (-1 + M t) (1 + M t) (M^2 + t^2) (1 + M^2 t^2) *(-M^4 - M^6 - M^8 + M^14 + M^16 + t^4)"
    ),
    "m11": (
        "(-1 + M^4) t^2 *(1 - 2 M^2 + M^4 - 2 M^6 + 2 M^8 - M^10 + M^12 - M^14 - M^4 t^4 + M^6 t^4 + M^10 t^4)"
    ),
    "m12": (
        "-M^4 (M^6 + M^10 + t^4 - M^2 t^4 - M^6 t^4)"
    ),
    "m21": (
        "-(-1 + M^4) (1 - M^2 - M^6 - M^8 - M^6 t^4 - M^10 t^4 + M^12 t^4 - M^8 t^8)"
    ),
    "m22": (
        "M^4 t^2 (-1 + M^8 - M^4 t^4)"
    ),
    "m31": (
        "(-1 + M^4) t^2 *(-4 + M^2 - 2 M^4 + 3 M^6 - 2 M^8 + M^10 - 2 M^12 + 3 M^4 t^4 + M^6 t^4 + 2 M^8 t^4)"
    ),
    "m32": (
        "1 + M^2 + M^4 + 2 M^6 + 3 M^8 + M^10 + 2 M^12 - 3 M^4 t^4 - M^6 t^4 - 2 M^8 t^4"
    ),
    "m41": (
        "-2 - M^2 - M^4 + 2 M^8 + M^10 - M^2 t^4 - M^4 t^4 + M^8 t^4 + 2 M^10 t^4 - M^14 t^4 - M^4 t^8 - M^6 t^8 + M^8 t^8 + M^10 t^8"
    ),
    "m42": (
        "-(1 + M^2) t^2 (1 - M^8 + M^4 t^4)"
    ),
    "q1": (
        "M^-4 t^-10(3 + M^2 + 2 M^4 + t^4 - M^2 t^4 - M^4 t^4 - 2 M^6 t^4 - 4 t^8 - 6 M^2 t^8 - 7 M^4 t^8 - 7 M^6 t^8 - 4 M^8 t^8 - 4 M^10 t^8 - 5 t^12 - 7 M^2 t^12 - 6 M^4 t^12- 7 M^6 t^12 - 2 M^8 t^12 - 4 t^16 - 6 M^2 t^16 - 3 M^4 t^16 - 5 M^6 t^16 - M^8 t^16 - 2 M^10 t^16 - t^20 - 2 M^2 t^20 - 2 M^4 t^20 - 3 M^6 t^20 - 2 M^8 t^20 + M^4 t^24 + M^6 t^24 + M^8 t^24 + 2 M^10 t^24)"
    ),
    "q2": (
        "-M^-4 t^-8(-1 - M^2 + 4 t^4 + 8 M^2 t^4 + 4 t^8 + 6 M^2 t^8 + 4 t^12 + 7 M^2 t^12 - t^20)"
    ),
    "q3": (
        "M^-4 t^-10(-1 + M^2 + M^6 + M^2 t^4 - M^8 t^4 - 2 t^8 - M^4 t^8 - M^6 t^8 - 2 M^8 t^8 - M^10 t^8- 2 M^12 t^8 - 2 t^12 - M^4 t^12 - M^6 t^12 - 3 M^8 t^12 - M^10 t^12 - 2 t^16 - 2 M^4 t^16- 2 M^8 t^16 - M^12 t^16 - M^8 t^20 - M^10 t^20 + M^12 t^24)"
    ),
    "q4": (
        "-2 M^-4 t^-4(1 - t + t^2) (1 + t + t^2) (1 - t^2 + t^4)"
    ),
    # particular solution of A2 p0 + B2 p1 = C2
    "pt0": (
        "M^-4 t^-10 (-M^4 t^2 - M^6 t^2 - M^8 t^2 + 2 M^12 t^2 + M^14 t^2 + t^6 - M^2 t^6 + 14 M^4 t^6 + 5 M^6 t^6 - 2 M^8 t^6 + 3 M^10 t^6 - 10 M^12 t^6 - 6 M^14 t^6 - M^16 t^6 - M^18 t^6 - 12 t^10 + 6 M^2 t^10 + 18 M^4 t^10 + 17 M^6 t^10 + 6 M^8 t^10- 12 M^10 t^10 - 14 M^12 t^10 - 19 M^14 t^10 + 4 M^16 t^10 + 8 M^18 t^10 - 13 t^14+ 6 M^2 t^14 + 35 M^4 t^14 + 23 M^6 t^14 + 2 M^8 t^14 - 10 M^10 t^14 - 26 M^12 t^14 - 25 M^14 t^14 + 4 M^16 t^14 + 6 M^18 t^14 - 12 t^18 + 6 M^2 t^18 + 20 M^4 t^18 + 17 M^6 t^18 + 3 M^8 t^18 - 12 M^10 t^18 - 15 M^12 t^18 - 18 M^14 t^18 + 4 M^16 t^18 + 7 M^18 t^18 - M^2 t^22 + 13 M^4 t^22 + 7 M^6 t^22 - 3 M^8 t^22 - 10 M^12 t^22 - 6 M^14 t^22 + 2 M^4 t^26 - M^6 t^26 - 2 M^8 t^26 - M^10 t^26 + 2 M^12 t^26 + 2 M^14 t^26 - 2 M^16 t^26 - 2 M^8 t^30+ 2 M^12 t^30)"
    ),
    "pt1": (
        "M^-4 t^-10 (-1 + M^2 t^4 + M^8 t^4 + M^10 t^4 + 2 M^12 t^4 + M^14 t^4 + M^6 t^8 - 14 M^8 t^8 - 7 M^10 t^8 - 12 M^12 t^8 - 8 M^14 t^8 + 13 M^4 t^12 + 6 M^6 t^12 - M^8 t^12 + 2 M^10 t^12 - 10 M^12 t^12 - 6 M^14 t^12 + 13 M^4 t^16 + 7 M^6 t^16 - 2 M^8 t^16 - 11 M^12 t^16 - 7 M^14 t^16 + 12 M^4 t^20 + 6 M^6 t^20 + 10 M^8 t^20 + 6 M^10 t^20 + M^6 t^24 + 2 M^12 t^24 - 2 M^8 t^28)"
    ),
    # the b0-symmetry constraint and the functional equation for f
    "step5_lhs_coeff": "M^8 t^14 - M^4 t^10",
    "step5_lhs_coeff_inv": "-(M^8 t^10 - M^4 t^14)",
    "step5_rhs": (
        "1 + M^12 - M^2 t^4 - M^4 t^4 - M^8 t^4 - M^10 t^4 - M^4 t^8 - M^8 t^8 + M^4 t^16 + M^8 t^16 + M^2 t^20 + M^4 t^20 + M^8 t^20 + M^10 t^20 - t^24 - M^12 t^24"
    ),
    "eqf_coeff": "M^14 t^8",
    "eqf_coeff_inv": "M^2 t^8",
    "eqf_rhs": (
        "-1 - 2 M^2 - M^4 - M^6 - M^10 - M^12 - 2 M^14 - M^16 + 8 t^4 + 12 M^2 t^4 + 6 M^4 t^4 + 12 M^6 t^4 - 2 M^8 t^4 + 12 M^10 t^4 + 6 M^12 t^4 + 12 M^14 t^4 + 8 M^16 t^4 + 6 t^8 + 10 M^2 t^8 + 6 M^4 t^8 + 13 M^6 t^8 + 13 M^10 t^8 + 6 M^12 t^8 + 10 M^14 t^8 + 6 M^16 t^8 + 7 t^12 + 11 M^2 t^12 + 6 M^4 t^12 + 12 M^6 t^12 + 12 M^10 t^12 + 6 M^12 t^12 + 11 M^14 t^12 + 7 M^16 t^12 + M^4 t^16 + M^12 t^16 - 2 M^2 t^20 - 2 M^14 t^20"
    ),
    # initial condition and the split of f
    "f_at_1": "M^-8 - M^-6 + 35 M^-4 + 18 M^-2 + 29 + 20 M^2",
    "h_factor": "t^8 M^-6",
    "k_rhs": (
        "2 t^4 + 2 t^6 + (1 + t^2 - 11 t^4 - 11 t^6 + 12 t^8 + 12 t^10) (M^2 +M^-2) + (1 + t^2 - 5 t^4 - 5 t^6 + 7 t^8 + 7 t^10 + t^12 + t^14) (M^4 + M^-4) + (2 + 2 t^2 - 10 t^4 - 10 t^6 + 9 t^8 + 9 t^10 - 2 t^12 - 2 t^14 - 2 t^16 - 2 t^18) (M^6 + M^-6) + (1 + t^2 - 7 t^4 - 7 t^6 + 7 t^8 + 7 t^10) (M^8 + M^-8)"
    ),
    "k": (
        "t^4 + t^6 + (1 + t^2 - 11 t^4 - 11 t^6 + 12 t^8 + 12 t^10) M^2 + (1 + t^2 - 5 t^4 - 5 t^6 + 7 t^8 + 7 t^10 + t^12 + t^14) M^4 + (2 + 2 t^2 - 10 t^4 - 10 t^6 + 9 t^8 + 9 t^10 - 2 t^12 - 2 t^14 - 2 t^16 - 2 t^18) M^6 + (1 + t^2 - 7 t^4 - 7 t^6 + 7 t^8 + 7 t^10) M^8"
    ),
    # b0 and the final coefficients of P
    "b0_num": "-(-1 + M) (1 + M) (1 + M^2) t^4 (-M^2 - M^4 - M^6 + t^4 + M^8 t^4 - M^4 t^8)",
    "b0_den": "M^2 (M - t) (M + t) (-1 + M t) (1 + M t) (M^2 + t^2) (1 + M^2 t^2)",
    "p1": (
        "M^-4 t^-10 (-1 - t^16 + M^4 t^8 (1 + t^4)^2 + M^2 (t^4 + t^12)"
        " + M^6 (t^8 + t^16) - M^8 (t^12 + t^20))"
    ),
    "pm1": (
        "M^-4 t^-10 (M^4 t^8 (1 + t^4)^2 - t^12 (1 + t^8) + M^6 (t^4 + t^12)"
        " - M^8 (1 + t^16) + M^2 (t^8 + t^16))"
    ),
    "p0": (
        "M^-8 t^-4 (t^8 + M^16 t^8 - M^4 t^8 (2 + t^4) - M^12 t^8 (2 + t^4) - M^2 (t^4 + t^8)"
        " + M^6 (t^4 + t^8) + M^10 (t^4 + t^8) - M^14 (t^4 + t^8) + 2 M^8 (1 + t^4 + 2 t^8 + t^12))"
    ),
}

# Bracket relations: L^k <1> == c1 <1> + cx <x> (mod Q[t, M]), and L <x>.
TABLE_SOURCE = {
    1: (
        "t^-2 M^-4 - t^-2 M^-2 - t^2",
        "t^6 M^2 - t^2 M^-2",
    ),
    2: (
        "t^-12 M^-8 - (t^-12 + t^-8) M^-6 - t^12 M^4 - (t^-4 + 1) M^-4 + (t^-4 + 1) M^-2 + t^8 + t^4 + 1",
        "t^16 M^6 - t^-8 M^-6 - t^12 M^4 + t^-4 M^-4 - (t^12 + t^8 + t^4) M^2 + (t^4 + t^-4 + 1) M^-2",
    ),
    -1: (
        "t^-2 M^4 - t^-2 M^2 - t^2",
        "t^6 M^-2 - t^2 M^2",
    ),
    -2: (
        "t^-12 M^8 - (t^-12 + t^-8) M^6 - t^12 M^-4 - (t^-4 + 1) M^4 + (t^-4 + 1) M^2 + t^8 + t^4 + 1",
        "t^16 M^-6 - t^-8 M^6 - t^12 M^-4 + t^-4 M^4 - (t^12 + t^8 + t^4) M^-2 + (t^4 + t^-4 + 1) M^2",
    ),
    "x": (
        "t^-2 M^-2 - t^2 M^2",
        "t^6 M^4 - t^2 M^2 - t^2",
    ),
}

# Printed values that fail their own defining identity, with the repaired form.
ERRATA = {
    "m11": {
        "printed": SOURCE["m11"],
        "corrected": "-(" + SOURCE["m11"] + ")",
        "reason": "row 1 of the conversion identity holds only with the opposite sign of m11",
    },
    "h_factor": {
        "printed": SOURCE["h_factor"],
        "corrected": "t^-8 M^-6",
        "reason": "with t^8 the printed k-equation and k do not follow from eq:f; with t^-8 they do",
    },
}


@lru_cache(maxsize=None)
def const(name):
    """The named constant as a MultiLaurent (printed form)."""
    return parse_expr(SOURCE[name])


@lru_cache(maxsize=None)
def corrected(name):
    """The erratum-corrected value if one exists, else the printed value."""
    if name in ERRATA:
        return parse_expr(ERRATA[name]["corrected"])
    return const(name)


def names():
    return list(SOURCE)


def alpha_E():
    """alpha'_E = a1 L + a-1 L^-1 + a0."""
    return TorusElement({1: const("a1"), -1: const("am1"), 0: const("a0")})


def A_E():
    return const("A_E")


def A_E_squared_coeffs():
    return {2: const("at2"), 1: const("at1"), 0: const("at0"), -1: const("atm1"), -2: const("atm2")}


def P_paper():
    """The final operator L^2 + L^-2 + p1 L + p-1 L^-1 + p0 as printed."""
    return TorusElement({2: 1, -2: 1, 1: const("p1"), -1: const("pm1"), 0: const("p0")})


def gb_paper():
    return [const(f"g{i}") for i in range(1, 5)]


def mat_paper(use_errata=False):
    get = corrected if use_errata else const
    return [[get(f"m{i}1"), get(f"m{i}2")] for i in range(1, 5)]


def q_paper():
    return [const(f"q{i}") for i in range(1, 5)]


def table_rows():
    """``{k: (c1, cx)}`` parsed from :data:`TABLE_SOURCE`."""
    return {k: (parse_expr(a), parse_expr(b)) for k, (a, b) in TABLE_SOURCE.items()}
