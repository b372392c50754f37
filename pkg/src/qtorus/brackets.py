"""Rewriting L^k <1> as c1 <1> + cx <x> + s, and checking annihilation.

The relation table gives, for k in {-2, -1, 1, 2},

    L^k <1>  ==  c1_k(t, M) <1> + cx_k(t, M) <x>     modulo Q(t)[M, M^-1],

plus the auxiliary row for L <x>.  The discarded remainder s_k is an additive
term: evaluated at a color n, (L^k <1>)(n) - c1_k <1>(n) - cx_k <x>(n) is
s_k(t, t^(2n)) for a fixed Laurent polynomial s_k in M with coefficients in
Q(t).  :func:`fit_exact_row` recovers s_k exactly by interpolation at
``M = t^(2n)`` and confirms it at further colors.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field, replace

from .jones import PointwiseReport, bracket, eval_at_qn, verify_pointwise_identity
from .rings.laurent import ONE, X, MultiLaurent
from .rings.linsolve import InconsistentSystem, SingularSystem, linsolve_fraction_free
from .rings.rational import RationalFunction
from .torus import TorusElement

TABLE_RANGE = (-2, -1, 1, 2)
AUX = "x"

DEFAULT_DEGREE_BOUND = 10
DEFAULT_FIT = tuple(range(1, 22))
DEFAULT_CHECK = tuple(range(22, 31))


class TableRangeError(ValueError):
    pass


class RowFitError(ArithmeticError):
    """A table row does not hold with any remainder inside the degree bound."""

    def __init__(self, row, n, detail):
        super().__init__(f"row {row}: {detail} (n = {n})")
        self.row = row
        self.n = n


@dataclass(frozen=True)
class BracketVector:
    c1: object
    cx: object
    inhom: RationalFunction = field(default_factory=lambda: RationalFunction.coerce(0))
    remainder_resolved: bool = False

    def __str__(self):
        s = f"c1 = {self.c1}; cx = {self.cx}"
        if self.remainder_resolved:
            s += f"; s = {self.inhom}"
        return s


@dataclass(frozen=True)
class RelationTable:
    rows: dict
    aux: BracketVector

    @classmethod
    def from_text(cls, source):
        from .rings.text import parse_expr
        vec = {k: BracketVector(parse_expr(a), parse_expr(b)) for k, (a, b) in source.items()}
        aux = vec.pop(AUX)
        return cls(vec, aux)

    def row(self, k):
        if k == AUX:
            return self.aux
        if k not in self.rows:
            raise TableRangeError(f"table range exceeded: no row for L^{k}")
        return self.rows[k]

    def resolved(self):
        return all(r.remainder_resolved for r in self.rows.values()) and self.aux.remainder_resolved

    def with_row(self, k, vec):
        if k == AUX:
            return replace(self, aux=vec)
        rows = dict(self.rows)
        rows[k] = vec
        return replace(self, rows=rows)


def paper_table():
    from .pipeline.constants import TABLE_SOURCE
    return RelationTable.from_text(TABLE_SOURCE)


# -- symbolic reduction -------------------------------------------------------------

def _lift(c):
    return c if isinstance(c, RationalFunction) else MultiLaurent.coerce(c)


def _plain(x):
    """Drop to a Laurent polynomial when the denominator is trivial."""
    if isinstance(x, RationalFunction) and x.is_laurent():
        return x.num
    return x


def apply_operator(P, table=None):
    """Reduce ``P <1>`` with the relation table.

    ``c1 = p_0 + sum p_k c1_k`` and ``cx = sum p_k cx_k``; when every row used
    is resolved the result also carries ``s = sum p_k s_k``.
    """
    if table is None:
        table = paper_table()
    if not isinstance(P, TorusElement):
        P = TorusElement.scalar(P)
    bad = [k for k in P.support() if k and k not in table.rows]
    if bad:
        raise TableRangeError(f"table range exceeded: L^{bad[0]} is outside [-2, 2]")
    c1 = _lift(P.coeff(0))
    cx = MultiLaurent.zero()
    inhom = RationalFunction.coerce(0)
    resolved = True
    for k in P.support():
        if not k:
            continue
        p = _lift(P.coeff(k))
        row = table.rows[k]
        c1 = c1 + p * row.c1
        cx = cx + p * row.cx
        inhom = inhom + RationalFunction.coerce(p) * row.inhom
        resolved = resolved and row.remainder_resolved
    return BracketVector(_plain(c1), _plain(cx), inhom, resolved)


# -- remainder fitting ----------------------------------------------------------------

def row_residual(table, k, n):
    """``(L^k <1>)(n) - c1_k <1>(n) - cx_k <x>(n)``; k == "x" uses ``L <x>``."""
    vec = table.row(k)
    J, Jx = bracket(ONE), bracket(X)
    lhs = Jx(n + 1) if k == AUX else J(n + k)
    return lhs - eval_at_qn(vec.c1, n) * J(n) - eval_at_qn(vec.cx, n) * Jx(n)


def fit_exact_row(table, k, degree_bound=DEFAULT_DEGREE_BOUND, fit_points=DEFAULT_FIT,
                  check_points=DEFAULT_CHECK):
    """Return the row with its remainder ``s(t, M) = sum_{|j| <= D} s_j(t) M^j`` fixed exactly.

    The coefficients s_j come from the exact solve of
    ``sum_j s_j t^(2nj) = residual(n)`` over the fit points; the identity is
    then confirmed at every check point.
    """
    fit_points, check_points = list(fit_points), list(check_points)
    if set(fit_points) & set(check_points):
        raise ValueError("fit and check points must be disjoint")
    exps = range(-degree_bound, degree_bound + 1)
    if len(fit_points) < len(exps):
        raise ValueError(f"{len(exps)} unknowns need at least that many fit points, got {len(fit_points)}")
    A = [[MultiLaurent.monomial({"t": 2 * n * j}) for j in exps] for n in fit_points]
    b = [row_residual(table, k, n) for n in fit_points]
    try:
        sol = linsolve_fraction_free(A, b)
    except InconsistentSystem as e:
        raise RowFitError(k, fit_points[e.row], "no remainder of bounded degree fits") from None
    except SingularSystem as e:
        raise RowFitError(k, fit_points[0], str(e)) from None
    inhom = _assemble(sol, exps)
    for n in check_points:
        if RationalFunction.coerce(row_residual(table, k, n)) != eval_at_qn(inhom, n):
            raise RowFitError(k, n, "fitted remainder fails at a check point")
    return replace(table.row(k), inhom=inhom, remainder_resolved=True)


def _assemble(sol, exps):
    total = RationalFunction.coerce(0)
    for s, j in zip(sol, exps):
        if s:
            total = total + RationalFunction(s.num * MultiLaurent.monomial({"M": j}), s.den, reduced=True)
    return total


def resolve_table(table=None, **fit_args):
    table = table or paper_table()
    for k in (*TABLE_RANGE, AUX):
        table = table.with_row(k, fit_exact_row(table, k, **fit_args))
    return table


_RESOLVED = None
_RESOLVED_GUARD = threading.Lock()


def resolved_table():
    """The printed table with all remainders fitted at the default settings (computed once)."""
    global _RESOLVED
    with _RESOLVED_GUARD:
        if _RESOLVED is None:
            _RESOLVED = resolve_table()
    return _RESOLVED


# -- annihilation ---------------------------------------------------------------------

@dataclass
class AnnihilationReport:
    passed: bool
    cx_zero: bool
    c1_zero: bool
    pointwise: PointwiseReport
    vector: BracketVector

    @property
    def inhomogeneity(self):
        return self.vector.inhom

    @property
    def witness(self):
        if self.passed:
            return None
        if not self.cx_zero:
            return self.vector.cx
        if not self.c1_zero:
            return self.vector.c1
        return self.pointwise.witness


def check_annihilation(P, n_range=range(1, 21), table=None):
    """Whether ``P J_E`` is a fixed function of ``(t, t^(2n))``.

    Passes iff the <x>-part and the <1>-part of ``P <1>`` vanish identically
    and ``(P J_E)(n) == s_P(t, t^(2n))`` holds exactly for every n in
    ``n_range``, with s_P the combined fitted remainder.
    """
    if table is None:
        table = resolved_table()
    if not isinstance(P, TorusElement):
        P = TorusElement.scalar(P)
    vec = apply_operator(P, table)
    cx_zero = not vec.cx
    c1_zero = not vec.c1
    pointwise = verify_pointwise_identity(P.to_laurent_mode() if P else P, [(vec.inhom, None)], n_range)
    return AnnihilationReport(cx_zero and c1_zero and pointwise.passed, cx_zero, c1_zero, pointwise, vec)
