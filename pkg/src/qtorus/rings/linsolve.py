"""Exact linear solves over the fraction field of Z[t, t^-1].

Entries are univariate Laurent polynomials in t.  The elimination itself is
fraction-free Gauss-Jordan run on Kronecker images: every entry is packed
into one integer (its value at ``t = 2**bits``), so each ring operation is a
single GMP multiplication or exact division.  The packed answers are read
back as polynomials and then checked against the original equations with
exact polynomial arithmetic.  The digit width starts small; a failed check
(digits too narrow) doubles ``bits`` and retries.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import gmpy2
from gmpy2 import mpz

from . import upoly
from .laurent import MultiLaurent
from .rational import RationalFunction


class SingularSystem(ArithmeticError):
    """The matrix has rank below its column count.  ``rank`` and ``column`` locate the failure."""

    def __init__(self, rank, column):
        super().__init__(f"singular or underdetermined system: rank {rank}, no pivot in column {column}")
        self.rank = rank
        self.column = column


class InconsistentSystem(ArithmeticError):
    """An overdetermined system whose extra equations contradict the solution."""

    def __init__(self, row):
        super().__init__(f"inconsistent system: equation {row} is not satisfied")
        self.row = row


_MAX_RETRIES = 12


def linsolve_fraction_free(A, b):
    """Solve ``A x = b`` exactly; returns a list of :class:`RationalFunction` in t."""
    m = len(A)
    if m == 0 or len(b) != m:
        raise ValueError("matrix and right-hand side sizes differ")
    n = len(A[0])
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    if m < n:
        raise SingularSystem(m, m)
    rows = [[MultiLaurent.coerce(x) for x in row] + [MultiLaurent.coerce(y)] for row, y in zip(A, b)]
    for row in rows:
        for x in row:
            if set(x.variables) - {"t"}:
                raise ValueError(f"entry {x} is not a Laurent polynomial in t")
    dense, stride = _scaled_dense_rows(rows)
    bits = _initial_bits(dense)
    for _ in range(_MAX_RETRIES):
        packed = [[upoly.pack(e, bits) for e in row] for row in dense]
        pivots, det, sols = _gauss_jordan(packed, n)
        try:
            den = upoly.unpack(det, bits)
            nums = [upoly.unpack(v, bits) for v in sols]
        except OverflowError:
            bits *= 2
            continue
        if den and _first_violation(dense, n, pivots, nums, den) is None:
            extra = _first_violation(dense, n, range(m), nums, den)
            if extra is not None:
                raise InconsistentSystem(extra)
            return [RationalFunction(_expand(num, stride), _expand(den, stride)) for num in nums]
        bits *= 2
    raise ArithmeticError("fraction-free solve failed to stabilise")


def _scaled_dense_rows(rows):
    """Clear t-denominators and rational coefficients per row; compress t -> t^stride."""
    exps = [e for row in rows for x in row for e, _ in _t_items(x)]
    stride = reduce(math.gcd, exps, 0) or 1
    out = []
    for row in rows:
        nz = [x for x in row if x]
        if not nz:
            out.append([[] for _ in row])
            continue
        low = min(x.min_degree("t") for x in nz)
        den = reduce(lambda a, c: a * c // math.gcd(a, c),
                     (Fraction(c).denominator for x in nz for c in x.terms.values()), 1)
        dense_row = []
        for x in row:
            coeffs = {}
            for e, c in _t_items(x):
                coeffs[(e - low) // stride] = int(c * den)
            size = max(coeffs, default=-1) + 1
            dense_row.append(upoly.strip([coeffs.get(i, 0) for i in range(size)]))
        out.append(dense_row)
    return out, stride


def _t_items(x):
    return [(e[0] if e else 0, c) for e, c in x.terms.items()]


def _initial_bits(dense):
    """An optimistic digit width; the exact check afterwards catches overflow."""
    norm = max((upoly.maxnorm(e) for row in dense for e in row), default=1)
    return max(64, 2 * norm.bit_length() + 32)


def _gauss_jordan(packed, n):
    """Fraction-free Gauss-Jordan; returns (original pivot row indices, determinant, right-hand column)."""
    m = len(packed)
    rows = [list(r) for r in packed]
    perm = list(range(m))
    prev = mpz(1)
    for k in range(n):
        p = next((i for i in range(k, m) if rows[i][k] != 0), None)
        if p is None:
            raise SingularSystem(k, k)
        rows[k], rows[p] = rows[p], rows[k]
        perm[k], perm[p] = perm[p], perm[k]
        piv = rows[k][k]
        pr = rows[k]
        for i in range(m):
            if i == k:
                continue
            ri = rows[i]
            a = ri[k]
            for j in range(k + 1, n + 1):
                ri[j] = gmpy2.divexact(piv * ri[j] - a * pr[j], prev)
            ri[k] = mpz(0)
        prev = piv
    return perm[:n], prev, [rows[i][n] for i in range(n)]


def _first_violation(dense, n, which, nums, den):
    """Index of the first equation in ``which`` with ``A num != den * b``, else None."""
    for i in which:
        row = dense[i]
        lhs = []
        for j in range(n):
            lhs = upoly.add(lhs, upoly.mul(row[j], nums[j]))
        if lhs != upoly.mul(row[n], den):
            return i
    return None


def _expand(coeffs, stride):
    return MultiLaurent({(i * stride,): c for i, c in enumerate(coeffs) if c}, ("t",))
