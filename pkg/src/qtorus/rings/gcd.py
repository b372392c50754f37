"""Greatest common divisors of Laurent polynomials in t and M.

Monomials are units in the Laurent ring, so a gcd is only defined up to a
monomial and a nonzero rational.  Results are normalized to a polynomial with
no monomial factor, coprime integer coefficients and a positive leading
coefficient under lex with t > M.

The general path views a polynomial as a polynomial in M whose coefficients
are dense integer polynomials in t (``{M-degree: upoly list}``).  A
heuristic gcd (evaluate t at a large power of two, univariate gcd, read back
the t-digits) is tried first and only accepted after exact division checks;
the subresultant remainder sequence is the unconditional fallback.  Inputs
given as :class:`Factored` products skip most of this when their factors are
pairwise coprime.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

from . import upoly
from .laurent import ONE, MultiLaurent, strip_monomial

_HEURISTIC_TRIES = 4


# -- dense-in-t, sparse-in-M representation ------------------------------------

def to_biv(p):
    """Integer polynomial in t, M (nonnegative exponents) to ``{k: upoly}``."""
    if set(p.variables) - {"t", "M"}:
        raise ValueError(f"expected a polynomial in t and M, got variables {p.variables}")
    it = p.variables.index("t") if "t" in p.variables else None
    im = p.variables.index("M") if "M" in p.variables else None
    out = {}
    for e, c in p.terms.items():
        if not isinstance(c, int):
            raise ValueError("to_biv needs integer coefficients")
        a = e[it] if it is not None else 0
        k = e[im] if im is not None else 0
        if a < 0 or k < 0:
            raise ValueError("to_biv needs nonnegative exponents")
        row = out.setdefault(k, [])
        if len(row) <= a:
            row.extend([0] * (a + 1 - len(row)))
        row[a] = c
    return out


def from_biv(d):
    terms = {}
    for k, row in d.items():
        for a, c in enumerate(row):
            if c:
                terms[(a, k)] = c
    return MultiLaurent(terms, ("t", "M"))


def _mdeg(d):
    return max(d) if d else -1


def _biv_scale(d, c):
    return {k: upoly.mul(row, c) for k, row in d.items()}


def _biv_sub(a, b):
    out = dict(a)
    for k, row in b.items():
        r = upoly.sub(out.get(k, []), row)
        if r:
            out[k] = r
        else:
            out.pop(k, None)
    return out


def _biv_shift_mul(b, coeff, s):
    """``coeff(t) * M^s * b``."""
    return {k + s: upoly.mul(row, coeff) for k, row in b.items()}


def biv_divexact(a, b):
    """Exact quotient in Z[t][M], or None."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    a = dict(a)
    db = _mdeg(b)
    lb = b[db]
    q = {}
    while a:
        da = _mdeg(a)
        if da < db:
            return None
        c = upoly.divexact(a[da], lb)
        if c is None:
            return None
        q[da - db] = c
        a = _biv_sub(a, _biv_shift_mul(b, c, da - db))
        if a.get(da):
            return None
    return q


def _integer_content(p):
    """(positive rational content, primitive integer polynomial)."""
    c = p.content()
    return c, p * (1 / c)


def bivariate_divide(p, q):
    """``p / q`` for polynomials in t, M with rational coefficients, or None."""
    if not p:
        return p
    if q.is_constant():
        return p * (1 / Fraction(q.constant_value()))
    cp, pi = _integer_content(p)
    cq, qi = _integer_content(q)
    d = biv_divexact(to_biv(pi), to_biv(qi))
    if d is None:
        return None
    return from_biv(d) * (cp / cq)


# -- gcd ------------------------------------------------------------------------

def _t_content(d):
    return reduce(upoly.gcd, d.values(), [])


def _biv_div_content(d, c):
    return {k: upoly.divexact(row, c) for k, row in d.items()}


def _pack_t(d, bits):
    return [int(upoly.pack(d.get(k, []), bits)) for k in range(_mdeg(d) + 1)]


def _unpack_t(coeffs, bits):
    out = {}
    for k, v in enumerate(coeffs):
        if v:
            out[k] = upoly.unpack(v, bits)
    return out


def _biv_maxnorm(d):
    return max((upoly.maxnorm(r) for r in d.values()), default=0)


def _gcd_heuristic(a, b):
    """a, b primitive over Z[t] in M.  Returns a verified gcd or None."""
    bits = upoly._bits_for(4 * min(_biv_maxnorm(a), _biv_maxnorm(b)) + 4)
    for _ in range(_HEURISTIC_TRIES):
        h = upoly.gcd(_pack_t(a, bits), _pack_t(b, bits))
        try:
            cand = _unpack_t(h, bits)
        except OverflowError:
            cand = None
        if cand:
            cont = _t_content(cand)
            cand = _biv_div_content(cand, cont)
            if biv_divexact(a, cand) is not None and biv_divexact(b, cand) is not None:
                return cand
        bits *= 2
    return None


def _biv_prem(a, b):
    """Pseudo-remainder of a by b in Z[t][M]."""
    r = dict(a)
    db = _mdeg(b)
    lb = b[db]
    n = _mdeg(a) - db + 1
    while r and _mdeg(r) >= db:
        dr = _mdeg(r)
        s = r[dr]
        r = _biv_sub(_biv_scale(r, lb), _biv_shift_mul(b, s, dr - db))
        n -= 1
    if n > 0 and r:
        r = _biv_scale(r, upoly.power(lb, n))
    return r


def _gcd_subresultant(a, b):
    """Primitive gcd of two primitive elements of Z[t][M] (subresultant PRS)."""
    if _mdeg(a) < _mdeg(b):
        a, b = b, a
    g, h = [1], [1]
    while True:
        d = _mdeg(a) - _mdeg(b)
        r = _biv_prem(a, b)
        if not r:
            break
        if _mdeg(r) == 0:
            return {0: [1]}
        denom = upoly.mul(g, upoly.power(h, d))
        a, b = b, {k: upoly.divexact(row, denom) for k, row in r.items()}
        g = a[_mdeg(a)]
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = upoly.divexact(upoly.power(g, d), upoly.power(h, d - 1))
    return _biv_div_content(b, _t_content(b))


def normalize_gcd(p):
    """Monomial-free, primitive, positive leading coefficient (lex, t > M)."""
    if not p:
        return p
    p = strip_monomial(p)
    c = p.content()
    if p.leading_coefficient() < 0:
        c = -c
    return p * (1 / c)


def poly_gcd(p, q):
    """Normalized gcd of two Laurent polynomials in t, M."""
    if isinstance(p, Factored) and isinstance(q, Factored):
        return factored_gcd(p, q)
    if isinstance(p, Factored):
        p = p.expand()
    if isinstance(q, Factored):
        q = q.expand()
    if not p:
        return normalize_gcd(q)
    if not q:
        return normalize_gcd(p)
    a = normalize_gcd(p)
    b = normalize_gcd(q)
    if a.is_constant() or b.is_constant():
        return ONE
    if a == b:
        return a
    A, B = to_biv(a), to_biv(b)
    ca, cb = _t_content(A), _t_content(B)
    ct = upoly.gcd(ca, cb)
    A, B = _biv_div_content(A, ca), _biv_div_content(B, cb)
    if _mdeg(A) == 0 or _mdeg(B) == 0:
        g = {0: [1]}
    else:
        g = _gcd_heuristic(A, B)
        if g is None:
            g = _gcd_subresultant(A, B)
    g = {k: upoly.mul(row, ct) for k, row in g.items()}
    return normalize_gcd(from_biv(g))


def are_coprime(p, q):
    return poly_gcd(p, q).is_constant()


# -- factored form ----------------------------------------------------------------

class Factored:
    """A product ``unit * prod(f_i ** e_i)`` kept unexpanded.

    ``unit`` is a Laurent monomial (possibly with a rational coefficient);
    factors are stored normalized so equal factors merge.
    """

    __slots__ = ("unit", "factors")

    def __init__(self, factors=(), unit=ONE):
        unit = MultiLaurent.coerce(unit)
        merged = {}
        for f, e in factors:
            if e < 0:
                raise ValueError("negative multiplicity")
            f = MultiLaurent.coerce(f)
            if not f:
                raise ValueError("zero factor")
            nf = normalize_gcd(f)
            if nf.is_constant():
                unit = unit * f ** e
            else:
                unit = unit * _unit_ratio(f, nf) ** e
                merged[nf] = merged.get(nf, 0) + e
        self.unit = unit
        self.factors = tuple(sorted(((f, e) for f, e in merged.items() if e), key=lambda fe: str(fe[0])))

    @classmethod
    def of(cls, *polys):
        return cls([(p, 1) for p in polys])

    def __mul__(self, other):
        if not isinstance(other, Factored):
            other = Factored([(other, 1)])
        return Factored(list(self.factors) + list(other.factors), self.unit * other.unit)

    def __neg__(self):
        return Factored(self.factors, -self.unit)

    def expand(self):
        out = self.unit
        for f, e in self.factors:
            out = out * f ** e
        return out

    def __eq__(self, other):
        if isinstance(other, Factored):
            return self.unit == other.unit and self.factors == other.factors
        return NotImplemented

    def __hash__(self):
        return hash((self.unit, self.factors))

    def __repr__(self):
        inner = " * ".join(f"({f})^{e}" if e > 1 else f"({f})" for f, e in self.factors)
        return f"Factored({self.unit} * {inner})" if inner else f"Factored({self.unit})"


def _unit_ratio(f, nf):
    r = _monomial_quotient(f, nf)
    if r is None:
        raise ValueError("normalized factor does not differ by a unit")
    return r


def _monomial_quotient(f, g):
    """``f / g`` when it is a scalar times a monomial, else None."""
    ef, cf = f.leading_term()
    names = f.variables
    mono_f = dict(zip(names, ef))
    eg, cg = g.leading_term()
    mono_g = dict(zip(g.variables, eg))
    exps = {v: mono_f.get(v, 0) - mono_g.get(v, 0) for v in set(mono_f) | set(mono_g)}
    r = MultiLaurent.monomial(exps, Fraction(cf) / cg) if exps else MultiLaurent.const(Fraction(cf) / cg)
    return r if r * g == f else None


def factored_gcd(p, q):
    """gcd through matched factors when all distinct factors are pairwise coprime."""
    fp, fq = dict(p.factors), dict(q.factors)
    distinct = sorted(set(fp) | set(fq), key=str)
    for i, f in enumerate(distinct):
        for g in distinct[i + 1:]:
            if not are_coprime(f, g):
                return poly_gcd(p.expand(), q.expand())
    out = ONE
    for f in distinct:
        e = min(fp.get(f, 0), fq.get(f, 0))
        if e:
            out = out * f ** e
    return normalize_gcd(out)
