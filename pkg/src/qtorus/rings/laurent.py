"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A :class:`MultiLaurent` is an immutable map from integer exponent vectors to
nonzero coefficients (``int`` or ``fractions.Fraction``).  The variable list is
canonical: only variables that actually occur are kept, ordered ``t, M, L, x``
and then alphabetically, so two equal polynomials always have identical
``variables`` and ``terms``.  Operands over different variable sets are
embedded into the union before any arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from operator import add as _add

from . import upoly

VAR_RANK = {"t": 0, "M": 1, "L": 2, "x": 3}


def var_key(name):
    return (VAR_RANK.get(name, len(VAR_RANK)), name)


def canonical_vars(names):
    return tuple(sorted(set(names), key=var_key))


def norm_coeff(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    try:
        return int(c)  # gmpy2.mpz and friends
    except TypeError:
        raise TypeError(f"unsupported coefficient {c!r}") from None


class NotAUnit(ArithmeticError):
    pass


class MultiLaurent:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms=None, variables=()):
        variables = tuple(variables)
        terms = dict(terms or {})
        for e in terms:
            if len(e) != len(variables):
                raise ValueError(f"exponent {e} does not match variables {variables}")
        vs, ts = _canon(variables, terms)
        self.variables = vs
        self.terms = ts
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls._raw((), {})

    @classmethod
    def const(cls, c):
        c = norm_coeff(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def var(cls, name):
        return cls._raw((name,), {(1,): 1})

    @classmethod
    def monomial(cls, exps, coeff=1):
        """``monomial({'t': 2, 'M': -1}, 3)`` is ``3*t^2*M^-1``."""
        names = list(exps)
        return cls({tuple(exps[n] for n in names): coeff}, names)

    @classmethod
    def coerce(cls, other):
        if isinstance(other, MultiLaurent):
            return other
        if isinstance(other, (int, Fraction)) or hasattr(other, "__int__"):
            return cls.const(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to MultiLaurent")

    @classmethod
    def from_univariate(cls, coeffs, var="t", low=0):
        """Dense coefficient list (lowest first) times ``var**low``."""
        return cls({(low + i,): c for i, c in enumerate(coeffs) if c}, (var,))

    # -- basic properties ----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.variables

    def constant_value(self):
        if self.variables:
            raise ValueError(f"{self} is not a constant")
        return self.terms.get((), 0)

    def is_monomial(self):
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, MultiLaurent):
            try:
                other = MultiLaurent.coerce(other)
            except TypeError:
                return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __repr__(self):
        from .text import format_poly
        return f"MultiLaurent({format_poly(self)!r})"

    def __str__(self):
        from .text import format_poly
        return format_poly(self)

    def embed(self, variables):
        """Terms re-indexed over ``variables`` (a superset of self.variables)."""
        return _embed(self.terms, self.variables, tuple(variables))

    def exponent_range(self, name):
        """(min, max) exponent of ``name``; (0, 0) if absent or zero."""
        if name not in self.variables or not self.terms:
            return (0, 0)
        i = self.variables.index(name)
        es = [e[i] for e in self.terms]
        return (min(es), max(es))

    def degree(self, name):
        return self.exponent_range(name)[1]

    def min_degree(self, name):
        return self.exponent_range(name)[0]

    def coefficients(self):
        return list(self.terms.values())

    def is_integral(self):
        return all(isinstance(c, int) for c in self.terms.values())

    def denominator(self):
        """Least common denominator of the coefficients."""
        return reduce(lambda a, c: a * c // igcd(a, c), (Fraction(c).denominator for c in self.terms.values()), 1)

    # -- arithmetic ------------------------------------------------------------

    def _aligned(self, other):
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        vs = canonical_vars(self.variables + other.variables)
        return vs, _embed(self.terms, self.variables, vs), _embed(other.terms, other.variables, vs)

    def __add__(self, other):
        try:
            other = MultiLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        vs, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return _finish(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiLaurent._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = MultiLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return MultiLaurent.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = norm_coeff(other)
            if not other:
                return MultiLaurent.zero()
            return MultiLaurent._raw(self.variables, {e: norm_coeff(c * other) for e, c in self.terms.items()})
        try:
            other = MultiLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.terms or not other.terms:
            return MultiLaurent.zero()
        vs, a, b = self._aligned(other)
        if len(vs) == 1 and len(a) * len(b) > 2048:
            return _mul_univariate(vs, a, b)
        out = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(_add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        return _finish(vs, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise NotAUnit(f"not a unit: {self}")
            (e, c), = self.terms.items()
            return MultiLaurent._raw(self.variables, {tuple(n * x for x in e): norm_coeff(Fraction(1) / c ** -n)})
        out = MultiLaurent.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __truediv__(self, other):
        """Division by a nonzero constant or by a monomial (a unit)."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / other)
        other = MultiLaurent.coerce(other)
        return self * other ** -1

    # -- structure -----------------------------------------------------------

    def content(self):
        """Positive rational content; ``p / p.content()`` has coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = [Fraction(c).numerator for c in self.terms.values()]
        dens = [Fraction(c).denominator for c in self.terms.values()]
        g = reduce(igcd, nums, 0)
        lden = reduce(lambda x, y: x * y // igcd(x, y), dens, 1)
        return Fraction(g, lden)

    def leading_term(self, order=None):
        """(exponent, coeff) of the largest term; default order is lex on canonical variables."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key(self.variables) if order is not None else None
        e = max(self.terms, key=key) if key else max(self.terms)
        return e, self.terms[e]

    def leading_coefficient(self, order=None):
        return self.leading_term(order)[1]

    def monomial_part(self):
        """Exponents of the largest monomial dividing every term (componentwise minimum)."""
        if not self.terms:
            return {}
        mins = [min(col) for col in zip(*self.terms)]
        return dict(zip(self.variables, mins))

    def shift_exponents(self, exps):
        """Multiply by the monomial with exponents ``exps`` (dict name -> int)."""
        if not self.terms or not any(exps.values()):
            return self
        vs = canonical_vars(self.variables + tuple(n for n, k in exps.items() if k))
        terms = _embed(self.terms, self.variables, vs)
        delta = tuple(exps.get(v, 0) for v in vs)
        return _finish(vs, {tuple(map(_add, e, delta)): c for e, c in terms.items()})

    def map_exponents(self, fn, variables=None):
        """New polynomial with each term's exponent replaced by ``fn(exponent)``.

        ``fn`` receives and returns tuples over ``variables`` (default: own
        variables).  Colliding terms are summed.
        """
        vs = tuple(variables) if variables is not None else self.variables
        terms = _embed(self.terms, self.variables, vs) if vs != self.variables else self.terms
        out = {}
        for e, c in terms.items():
            k = tuple(fn(e))
            out[k] = out.get(k, 0) + c
        return MultiLaurent({k: c for k, c in out.items() if c}, vs)

    def subs_monomial(self, name, exps, scale=1):
        """Substitute ``name -> scale * prod(v**k for v, k in exps.items())``.

        Monomial substitutions cover every change of variables the torus and
        bracket code needs (q-shifts, M -> M^-1, M -> t^(2n), t -> -1).
        """
        if name not in self.variables:
            return self
        vs = canonical_vars(self.variables + tuple(exps))
        i = vs.index(name)
        delta = [exps.get(v, 0) for v in vs]
        terms = _embed(self.terms, self.variables, vs)
        out = {}
        for e, c in terms.items():
            k = e[i]
            new = list(e)
            new[i] = 0
            for j, d in enumerate(delta):
                if d:
                    new[j] += k * d
            if scale != 1:
                c = c * Fraction(scale) ** k
            new = tuple(new)
            out[new] = out.get(new, 0) + c
        return MultiLaurent({k: norm_coeff(c) for k, c in out.items() if c}, vs)

    def coefficient_map(self, name):
        """Split by powers of ``name``: {k: coefficient polynomial}."""
        if name not in self.variables:
            return {0: self} if self.terms else {}
        i = self.variables.index(name)
        rest = self.variables[:i] + self.variables[i + 1:]
        groups = {}
        for e, c in self.terms.items():
            groups.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: MultiLaurent(v, rest) for k, v in sorted(groups.items())}

    @classmethod
    def from_coefficient_map(cls, name, cmap):
        out = cls.zero()
        x = cls.var(name)
        for k, c in cmap.items():
            out = out + c * x ** k if k >= 0 else out + c * cls.monomial({name: k})
        return out

    def univariate(self, var="t"):
        """(dense int list, low exponent) for a polynomial in ``var`` only."""
        if not self.terms:
            return [], 0
        if self.variables not in ((), (var,)):
            raise ValueError(f"{self} is not univariate in {var}")
        if not self.variables:
            return [self.terms[()]], 0
        lo = min(e[0] for e in self.terms)
        hi = max(e[0] for e in self.terms)
        out = [0] * (hi - lo + 1)
        for (k,), c in self.terms.items():
            out[k - lo] = c
        return out, lo

    def __call__(self, **values):
        """Numeric evaluation, e.g. ``p(t=Fraction(3, 2), M=4)``."""
        total = 0
        for e, c in self.terms.items():
            v = Fraction(c)
            for name, k in zip(self.variables, e):
                v *= Fraction(values[name]) ** k
            total += v
        return norm_coeff(total) if isinstance(total, Fraction) else total


def _canon(variables, terms):
    terms = {e: norm_coeff(c) for e, c in terms.items() if c}
    if len(set(variables)) != len(variables):
        raise ValueError(f"repeated variable in {variables}")
    vs = canonical_vars(variables)
    if vs != variables:
        perm = [variables.index(v) for v in vs]
        terms = {tuple(e[p] for p in perm): c for e, c in terms.items()}
    return _finish_parts(vs, terms)


def _finish_parts(vs, terms):
    if not terms:
        return (), {}
    used = [any(e[i] for e in terms) for i in range(len(vs))]
    if all(used):
        return vs, terms
    keep = [i for i, u in enumerate(used) if u]
    return tuple(vs[i] for i in keep), {tuple(e[i] for i in keep): c for e, c in terms.items()}


def _finish(vs, terms):
    v, t = _finish_parts(vs, {e: norm_coeff(c) for e, c in terms.items()})
    return MultiLaurent._raw(v, t)


def _embed(terms, src, dst):
    if src == dst:
        return terms
    idx = [src.index(v) if v in src else -1 for v in dst]
    return {tuple(e[i] if i >= 0 else 0 for i in idx): c for e, c in terms.items()}


def _mul_univariate(vs, a, b):
    if not all(isinstance(c, int) for c in a.values()) or not all(isinstance(c, int) for c in b.values()):
        out = {}
        for (ea,), ca in a.items():
            for (eb,), cb in b.items():
                out[(ea + eb,)] = out.get((ea + eb,), 0) + ca * cb
        return _finish(vs, {e: c for e, c in out.items() if c})
    pa, la = MultiLaurent._raw(vs, a).univariate(vs[0])
    pb, lb = MultiLaurent._raw(vs, b).univariate(vs[0])
    return MultiLaurent.from_univariate(upoly.mul(pa, pb), vs[0], la + lb)


def as_laurent(p):
    return MultiLaurent.coerce(p)


T = MultiLaurent.var("t")
M = MultiLaurent.var("M")
L = MultiLaurent.var("L")
X = MultiLaurent.var("x")
ONE = MultiLaurent.const(1)
ZERO = MultiLaurent.zero()


# -- substitutions used throughout the torus code ------------------------------

def qshift(p, k):
    """``p(t, t^(2k) M)``."""
    if not k:
        return p
    return p.subs_monomial("M", {"t": 2 * k, "M": 1})


def invert_M(p):
    """``p(t, M^-1)``; an involution."""
    return p.subs_monomial("M", {"M": -1})


def eval_t(p, t0):
    if t0 not in (1, -1):
        raise ValueError("eval_t only supports t = 1 or t = -1")
    return p.subs_monomial("t", {}, t0)


def eval_M_at_qn(p, n):
    """``p(t, t^(2n))``, a Laurent polynomial in t alone."""
    return p.subs_monomial("M", {"t": 2 * n})


def normalize_to_poly(p):
    """Return ``(q, m)`` with ``q = m * p`` and ``m`` the smallest monomial making q a polynomial."""
    if not p:
        return p, ONE
    shift = {v: -k for v, k in p.monomial_part().items() if k < 0}
    m = MultiLaurent.monomial(shift) if shift else ONE
    return p.shift_exponents(shift), m


def strip_monomial(p):
    """``p`` divided by its largest monomial factor (all minimal exponents become 0)."""
    if not p:
        return p
    return p.shift_exponents({v: -k for v, k in p.monomial_part().items()})


def is_M_symmetric(p):
    return invert_M(p) == p


def symmetric_split(S):
    """Solve ``k(M) + k(M^-1) = S`` for M-symmetric S.

    The returned k keeps every term of positive M-degree and half of the
    M-degree-zero part.
    """
    if not is_M_symmetric(S):
        raise ValueError("symmetric_split needs an M-symmetric input")
    if "M" not in S.variables:
        return S * Fraction(1, 2)
    i = S.variables.index("M")
    terms = {}
    for e, c in S.terms.items():
        if e[i] > 0:
            terms[e] = c
        elif e[i] == 0:
            terms[e] = Fraction(c) / 2
    return MultiLaurent(terms, S.variables)


def exact_div(p, q, order=None):
    """``p / q`` if it is a Laurent polynomial, else None.

    Monomial factors are units and are divided out first; the remaining
    polynomial division runs on leading terms under ``order`` (lex on the
    canonical variables by default).
    """
    if not q:
        raise ZeroDivisionError("division by zero polynomial")
    if not p:
        return ZERO
    if q.is_monomial():
        return p * q ** -1
    pn, pm = normalize_to_poly(p)
    mq = MultiLaurent.monomial(q.monomial_part())
    quot = _poly_div(pn, strip_monomial(q), order)
    if quot is None:
        return None
    return quot * (pm * mq) ** -1


def _poly_div(p, q, order=None):
    from . import gcd as _gcd
    if set(p.variables) | set(q.variables) <= {"t", "M"}:
        return _gcd.bivariate_divide(p, q)
    vs = canonical_vars(p.variables + q.variables)
    a = dict(_embed(p.terms, p.variables, vs))
    b = _embed(q.terms, q.variables, vs)
    key = order.key(vs) if order is not None else None
    lb = max(b, key=key) if key else max(b)
    cb = b[lb]
    out = {}
    while a:
        la = max(a, key=key) if key else max(a)
        d = tuple(x - y for x, y in zip(la, lb))
        if min(d) < 0:
            return None
        c = Fraction(a[la]) / cb
        out[d] = norm_coeff(c)
        for e, v in b.items():
            k = tuple(x + y for x, y in zip(e, d))
            w = a.get(k, 0) - c * v
            if w:
                a[k] = w
            else:
                a.pop(k, None)
    return MultiLaurent(out, vs)
