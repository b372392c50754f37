"""Groebner bases over Q[t, M] with cofactor tracking.

Polynomials cross this module's boundary as :class:`MultiLaurent`; inside,
they are plain dicts from exponent tuples (over the order's variable list) to
int/Fraction coefficients.  Every basis element carries the row of cofactors
expressing it in the input generators, so membership answers come with an
explicit certificate.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd as igcd

from .rings.gcd import poly_gcd
from .rings.laurent import MultiLaurent, exact_div, norm_coeff, normalize_to_poly


class MonomialOrder:
    """lex or grevlex with a variable precedence (first variable largest)."""

    def __init__(self, kind="lex", variables=("t", "M")):
        if kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.variables = tuple(variables)

    def sort_key(self, e):
        if self.kind == "lex":
            return e
        return (sum(e), tuple(-x for x in reversed(e)))

    def key(self, variables):
        """Sort key for exponent tuples over ``variables`` (e.g. a MultiLaurent's)."""
        idx = [variables.index(v) if v in variables else -1 for v in self.variables]
        extra = [v for v in variables if v not in self.variables]
        if extra:
            raise ValueError(f"variables {extra} are not covered by the order")
        return lambda e: self.sort_key(tuple(e[i] if i >= 0 else 0 for i in idx))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.variables) == (other.kind, other.variables)

    def __hash__(self):
        return hash((self.kind, self.variables))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {'>'.join(self.variables)})"


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


# -- dict polynomials -----------------------------------------------------------

def _to_dict(p, order):
    p = MultiLaurent.coerce(p)
    extra = set(p.variables) - set(order.variables)
    if extra:
        raise ValueError(f"variables {sorted(extra)} are not covered by {order}")
    terms = p.embed(order.variables)
    if any(x < 0 for e in terms for x in e):
        raise ValueError("Groebner routines need nonnegative exponents (use normalize_to_poly)")
    return dict(terms)


def _to_poly(d, order):
    return MultiLaurent({e: c for e, c in d.items() if c}, order.variables)


def _lead(d, order):
    return max(d, key=order.sort_key)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _axpy(acc, c, shift, d):
    """acc += c * x^shift * d, in place."""
    for e, v in d.items():
        k = tuple(x + y for x, y in zip(e, shift))
        w = acc.get(k, 0) + c * v
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)


def _scaled(d, c):
    return {e: v * c for e, v in d.items()}


def _content(d):
    """Positive rational content of a dict polynomial."""
    vals = [Fraction(v) for v in d.values()]
    num = reduce(igcd, (v.numerator for v in vals), 0)
    den = reduce(lambda a, b: a * b // igcd(a, b), (v.denominator for v in vals), 1)
    return Fraction(num, den)


def _normalize(d, row, order):
    """Primitive integer coefficients, positive leading coefficient; row scaled alike."""
    if not d:
        return d, row
    c = _content(d)
    if d[_lead(d, order)] < 0:
        c = -c
    inv = 1 / c
    return ({e: norm_coeff(v * inv) for e, v in d.items()},
            [{e: norm_coeff(v * inv) for e, v in r.items()} for r in row])


# -- reduction --------------------------------------------------------------------

def reduce_poly(f, basis, order=LEX):
    """Division with remainder: ``f = sum(q_i * basis_i) + r``.

    Returns ``(quotients, remainder)`` as MultiLaurent; no term of r is
    divisible by a leading term of the basis.
    """
    bs = [_to_dict(b, order) for b in basis]
    if any(not b for b in bs):
        raise ValueError("zero polynomial in basis")
    qs, r = _divide(_to_dict(f, order), bs, order)
    return [_to_poly(q, order) for q in qs], _to_poly(r, order)


def _divide(f, bs, order):
    leads = [(_lead(b, order), b) for b in bs]
    qs = [{} for _ in bs]
    p = dict(f)
    r = {}
    while p:
        lt = _lead(p, order)
        c = p[lt]
        for i, (lb, b) in enumerate(leads):
            if _divides(lb, lt):
                s = _sub_exp(lt, lb)
                coef = Fraction(c) / b[lb]
                qs[i][s] = norm_coeff(qs[i].get(s, 0) + coef)
                _axpy(p, -coef, s, b)
                break
        else:
            r[lt] = c
            del p[lt]
    return [{e: v for e, v in q.items() if v} for q in qs], r


# -- Buchberger ----------------------------------------------------------------

@dataclass
class ExtendedBasis:
    """``gens[i] == sum_j conversion[i][j] * input[j]`` exactly."""

    input: list
    gens: list
    conversion: list
    order: MonomialOrder

    def check_conversion(self):
        for g, row in zip(self.gens, self.conversion):
            total = MultiLaurent.zero()
            for c, f in zip(row, self.input):
                total = total + c * f
            if total != g:
                return False
        return True

    def check_criterion(self):
        """Every S-polynomial reduces to zero modulo gens."""
        gs = [_to_dict(g, self.order) for g in self.gens]
        for i in range(len(gs)):
            for j in range(i + 1, len(gs)):
                s = _spoly(gs[i], gs[j], self.order)
                if _divide(s, gs, self.order)[1]:
                    return False
        return True


def _spoly(a, b, order):
    la, lb = _lead(a, order), _lead(b, order)
    m = _lcm(la, lb)
    out = {}
    _axpy(out, Fraction(1) / a[la], _sub_exp(m, la), a)
    _axpy(out, -Fraction(1) / b[lb], _sub_exp(m, lb), b)
    return out


def _reduce_tracked(p, row, gens, rows, order, full=True):
    """Reduce p (with cofactor row) by gens fraction-free; returns (remainder, row)."""
    p = dict(p)
    row = [dict(r) for r in row]
    done = {}
    leads = [(_lead(g, order), g, gr) for g, gr in zip(gens, rows)]
    while p:
        lt = _lead(p, order)
        c = p[lt]
        for lg, g, gr in leads:
            if _divides(lg, lt):
                s = _sub_exp(lt, lg)
                cg = g[lg]
                # p <- cg*p - c*x^s*g keeps integer coefficients
                if cg != 1:
                    p = _scaled(p, cg)
                    row = [_scaled(r, cg) for r in row]
                    done = _scaled(done, cg)
                _axpy(p, -c, s, g)
                for r, q in zip(row, gr):
                    _axpy(r, -c, s, q)
                break
        else:
            if not full:
                break
            done[lt] = c
            del p[lt]
        if p or done:
            cont = _content({**p, **done})
            if cont != 1:
                inv = 1 / cont
                p = {e: norm_coeff(v * inv) for e, v in p.items()}
                done = {e: norm_coeff(v * inv) for e, v in done.items()}
                row = [{e: norm_coeff(v * inv) for e, v in r.items()} for r in row]
    done.update(p)
    return done, row


def buchberger_extended(polys, order=LEX):
    """Reduced Groebner basis of the ideal generated by ``polys`` plus the conversion matrix."""
    inputs = [MultiLaurent.coerce(p) for p in polys]
    if not inputs:
        raise ValueError("empty generating set")
    s = len(inputs)
    gens, rows = [], []
    for i, f in enumerate(inputs):
        d = _to_dict(f, order)
        if not d:
            continue
        row = [{} for _ in range(s)]
        row[i] = {(0,) * len(order.variables): 1}
        d, row = _reduce_tracked(d, row, gens, rows, order) if gens else (d, row)
        if d:
            d, row = _normalize(d, row, order)
            gens.append(d)
            rows.append(row)
    pairs = []
    done = set()
    counter = 0

    def push(i, j):
        nonlocal counter
        m = _lcm(_lead(gens[i], order), _lead(gens[j], order))
        heapq.heappush(pairs, (order.sort_key(m), counter, i, j))
        counter += 1

    for j in range(len(gens)):
        for i in range(j):
            push(i, j)
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        done.add((i, j))
        li, lj = _lead(gens[i], order), _lead(gens[j], order)
        m = _lcm(li, lj)
        # product criterion: coprime leading monomials
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue
        # chain criterion
        if any(k not in (i, j) and _divides(_lead(gens[k], order), m)
               and _pair_done(i, k, done) and _pair_done(j, k, done)
               for k in range(len(gens))):
            continue
        gi, gj = gens[i], gens[j]
        ci, cj = gi[li], gj[lj]
        si, sj = _sub_exp(m, li), _sub_exp(m, lj)
        sp = {}
        _axpy(sp, cj, si, gi)
        _axpy(sp, -ci, sj, gj)
        srow = []
        for ri, rj in zip(rows[i], rows[j]):
            acc = {}
            _axpy(acc, cj, si, ri)
            _axpy(acc, -ci, sj, rj)
            srow.append(acc)
        r, rrow = _reduce_tracked(sp, srow, gens, rows, order)
        if r:
            r, rrow = _normalize(r, rrow, order)
            gens.append(r)
            rows.append(rrow)
            k = len(gens) - 1
            for i2 in range(k):
                push(i2, k)
    gens, rows = _reduce_basis(gens, rows, order)
    ordered = sorted(zip(gens, rows), key=lambda gr: order.sort_key(_lead(gr[0], order)))
    return ExtendedBasis(
        input=inputs,
        gens=[_to_poly(g, order) for g, _ in ordered],
        conversion=[[_to_poly(c, order) for c in r] for _, r in ordered],
        order=order,
    )


def _pair_done(a, b, done):
    return (min(a, b), max(a, b)) in done


def _reduce_basis(gens, rows, order):
    # drop generators whose leading monomial is divisible by another's
    keep = []
    for i, g in enumerate(gens):
        li = _lead(g, order)
        redundant = False
        for j, h in enumerate(gens):
            if j == i:
                continue
            lj = _lead(h, order)
            if _divides(lj, li) and (lj != li or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    gens = [gens[i] for i in keep]
    rows = [rows[i] for i in keep]
    out_g, out_r = [], []
    for i in range(len(gens)):
        others = [gens[j] for j in range(len(gens)) if j != i]
        orow = [rows[j] for j in range(len(gens)) if j != i]
        r, rr = _reduce_tracked(gens[i], rows[i], others, orow, order)
        r, rr = _normalize(r, rr, order)
        out_g.append(r)
        out_r.append(rr)
    return out_g, out_r


# -- membership and the two-generator Diophantine solver -----------------------------

@dataclass
class Membership:
    member: bool
    cofactors: list
    remainder: MultiLaurent
    multiplier: MultiLaurent
    quotients: list


def ideal_membership(f, basis, max_multiplier_degree=40):
    """Decide membership of f in the ideal of ``basis.input``.

    A polynomial f is tested directly.  A Laurent f is a question about the
    ideal in the Laurent ring, where monomials are units: multiples ``m * f``
    by monomials m of increasing total degree (starting from the smallest one
    that clears negative exponents) are tried until one reduces to zero.  The
    returned cofactors satisfy ``f == sum(c_i * input_i)`` exactly (they are
    Laurent when a multiplier was needed).
    """
    order = basis.order
    f = MultiLaurent.coerce(f)
    fpoly, m0 = normalize_to_poly(f)
    limit = max_multiplier_degree if _is_laurent_query(f) else 0
    first = None
    for total in range(limit + 1):
        for shift in _compositions(total, len(order.variables)):
            mono = MultiLaurent({shift: 1}, order.variables)
            qs, r = reduce_poly(fpoly * mono, basis.gens, order)
            m = m0 * mono
            if first is None:
                first = (qs, r, m)
            if not r:
                inv = m ** -1
                cof = _compose(qs, basis.conversion, len(basis.input))
                if len(cof) == 2:
                    cof = _canonical_pair(cof, basis.input, order)
                cof = [c * inv for c in cof]
                return Membership(True, cof, r, m, qs)
    qs, r, m = first
    return Membership(False, [], r, m, qs)


def _is_laurent_query(f):
    return any(x < 0 for e in f.terms for x in e)


def _compositions(total, n):
    """Exponent vectors of length n summing to total, lex descending on the first entry."""
    if n == 1:
        yield (total,)
        return
    for a in range(total, -1, -1):
        for rest in _compositions(total - a, n - 1):
            yield (a,) + rest


def _compose(qs, conversion, s):
    out = [MultiLaurent.zero() for _ in range(s)]
    for q, row in zip(qs, conversion):
        if not q:
            continue
        for j in range(s):
            out[j] = out[j] + q * row[j]
    return out


def _canonical_pair(cof, inputs, order):
    """Reduce the first cofactor modulo B/g, moving the quotient to the second.

    Cofactors for two generators are unique only up to ``(-B/g, A/g)``; this
    picks the representative whose first entry is a normal form, so that for
    instance A itself gets ``(1, 0)``.
    """
    A, B = inputs
    x, y = cof
    if not A or not B or not x:
        return cof
    g = poly_gcd(A, B)
    bg, ag = exact_div(B, g), exact_div(A, g)
    if bg.is_constant():
        return cof
    (q,), r = reduce_poly(x, [bg], order)
    return [r, y + q * ag]


class NotInIdeal(ArithmeticError):
    def __init__(self, remainder):
        super().__init__(f"right-hand side is not in the ideal; remainder {remainder}")
        self.remainder = remainder


@dataclass
class DioSolution:
    particular: tuple
    modulus: tuple
    gcd: MultiLaurent
    basis: ExtendedBasis
    membership: Membership


def dio_solve_pair(A, B, C, order=LEX, basis=None):
    """Solve ``A x + B y = C``; the general solution is ``(x - f*B/g, y + f*A/g)``."""
    A, B, C = (MultiLaurent.coerce(x) for x in (A, B, C))
    if basis is None:
        basis = buchberger_extended([A, B], order)
    mem = ideal_membership(C, basis)
    if not mem.member:
        raise NotInIdeal(mem.remainder)
    g = poly_gcd(A, B)
    modulus = (exact_div(B, g), exact_div(A, g))
    x, y = mem.cofactors
    return DioSolution((x, y), modulus, g, basis, mem)


def in_solution_family(candidate, solution):
    """Whether ``candidate`` differs from the particular solution by ``f * (-B/g, A/g)``.

    Returns the multiplier f, or None.
    """
    x0, y0 = solution.particular
    bg, ag = solution.modulus
    dx = x0 - candidate[0]
    dy = candidate[1] - y0
    if not dx and not dy:
        return MultiLaurent.zero()
    f = exact_div(dy, ag)
    if f is None:
        return None
    return f if f * bg == dx else None
