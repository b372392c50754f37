"""The quantum torus: sums of a_i(t, M) L^i with L M = t^2 M L.

Elements are kept in normal order, every coefficient to the left of its power
of L.  Coefficients are :class:`MultiLaurent` in t and M (``"laurent"``
mode) or :class:`RationalFunction` in t and M (``"rational"`` mode, the
localized ring).  Mixing the two promotes to rational mode.
"""

from __future__ import annotations

from .rings.laurent import ONE, MultiLaurent, eval_M_at_qn, eval_t, invert_M, qshift
from .rings.rational import RationalFunction
from .rings.text import format_poly, parse_expr

LAURENT = "laurent"
RATIONAL = "rational"


def _check_coeff(c):
    if isinstance(c, MultiLaurent):
        if set(c.variables) - {"t", "M"}:
            raise ValueError(f"torus coefficient {c} must only involve t and M")
        return c
    if isinstance(c, RationalFunction):
        return c
    return MultiLaurent.coerce(c)


class TorusElement:
    __slots__ = ("coeffs", "mode")

    def __init__(self, coeffs=None, mode=None):
        coeffs = {int(k): _check_coeff(c) for k, c in (coeffs or {}).items()}
        coeffs = {k: c for k, c in coeffs.items() if c}
        if mode is None:
            mode = RATIONAL if any(isinstance(c, RationalFunction) for c in coeffs.values()) else LAURENT
        if mode == RATIONAL:
            coeffs = {k: RationalFunction.coerce(c) for k, c in coeffs.items()}
        elif mode == LAURENT:
            if any(isinstance(c, RationalFunction) for c in coeffs.values()):
                coeffs = {k: _demote(c) for k, c in coeffs.items()}
        else:
            raise ValueError(f"unknown mode {mode!r}")
        self.coeffs = dict(sorted(coeffs.items()))
        self.mode = mode

    # -- constructors --------------------------------------------------------

    @classmethod
    def scalar(cls, c):
        return cls({0: c})

    @classmethod
    def L(cls, k=1):
        return cls({k: ONE})

    @classmethod
    def M(cls, k=1):
        return cls({0: MultiLaurent.monomial({"M": k})})

    @classmethod
    def t(cls, k=1):
        return cls({0: MultiLaurent.monomial({"t": k})})

    @classmethod
    def from_laurent(cls, p):
        """Read a commutative polynomial in t, M, L as the normal-ordered element."""
        p = MultiLaurent.coerce(p)
        return cls({k: c for k, c in p.coefficient_map("L").items()})

    @classmethod
    def parse(cls, text):
        return cls.from_laurent(parse_expr(text))

    @classmethod
    def from_pairs(cls, pairs):
        return cls({int(k): parse_expr(v) for k, v in pairs})

    # -- inspection ------------------------------------------------------------

    def support(self):
        return sorted(self.coeffs)

    def coeff(self, k):
        return self.coeffs.get(k, RationalFunction.coerce(0) if self.mode == RATIONAL else MultiLaurent.zero())

    def is_laurent(self):
        return self.mode == LAURENT

    def to_laurent_mode(self):
        return TorusElement({k: _demote(c) for k, c in self.coeffs.items()}, LAURENT)

    def to_rational_mode(self):
        return TorusElement(self.coeffs, RATIONAL)

    def to_laurent(self):
        """Normal-ordered commutative image in t, M, L (laurent mode only)."""
        out = MultiLaurent.zero()
        for k, c in self.coeffs.items():
            out = out + _demote(c) * MultiLaurent.monomial({"L": k})
        return out

    def pairs(self):
        """``[(k, text)]`` in increasing k, the serialized form."""
        return [(k, str(c)) for k, c in self.coeffs.items()]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        if self.mode != other.mode:
            a, b = self.to_rational_mode(), other.to_rational_mode()
            return a.coeffs == b.coeffs
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.to_rational_mode().coeffs.items()))

    def __repr__(self):
        return f"TorusElement({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            ctext = str(c) if isinstance(c, RationalFunction) else format_poly(c)
            if k == 0:
                parts.append(f"({ctext})")
            else:
                parts.append(f"({ctext})*L^{k}" if k != 1 else f"({ctext})*L")
        return " + ".join(parts)

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        a, b = _unify(self, other)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return TorusElement(out, a.mode)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement({k: -c for k, c in self.coeffs.items()}, self.mode)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return torus_product(self, other)

    def __rmul__(self, other):
        return torus_product(_coerce(other), self)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("only nonnegative powers of torus elements")
        out = TorusElement.scalar(1)
        for _ in range(n):
            out = out * self
        return out


def _demote(c):
    if isinstance(c, RationalFunction):
        return c.as_laurent()
    return c


def _coerce(x):
    if isinstance(x, TorusElement):
        return x
    if isinstance(x, (MultiLaurent, RationalFunction)):
        return TorusElement({0: x})
    if isinstance(x, int):
        return TorusElement.scalar(x)
    try:
        return TorusElement.scalar(MultiLaurent.coerce(x))
    except TypeError:
        raise TypeError(f"cannot use {type(x).__name__} as a torus element") from None


def _unify(a, b):
    if a.mode == b.mode:
        return a, b
    return a.to_rational_mode(), b.to_rational_mode()


def _shift(c, k):
    if isinstance(c, RationalFunction):
        return c.qshift(k)
    return qshift(c, k)


def torus_product(u, v):
    """``a(M) L^k * b(M) L^l = a(M) b(t^(2k) M) L^(k+l)``, extended bilinearly."""
    u, v = _unify(u, v)
    out = {}
    for k, a in u.coeffs.items():
        for l, b in v.coeffs.items():
            term = a * _shift(b, k)
            out[k + l] = out[k + l] + term if k + l in out else term
    return TorusElement(out, u.mode)


def torus_sigma(u):
    """``M^a L^b -> M^-a L^-b``, t fixed."""
    out = {}
    for k, c in u.coeffs.items():
        out[-k] = c.invert_M() if isinstance(c, RationalFunction) else invert_M(c)
    return TorusElement(out, u.mode)


def torus_epsilon(u):
    """Set t = -1; the result is a commutative Laurent polynomial in M and L."""
    out = MultiLaurent.zero()
    for k, c in u.coeffs.items():
        out = out + eval_t(_demote(c), -1) * MultiLaurent.monomial({"L": k})
    return out


def act_on_function(u, f, n):
    """``(u f)(n) = sum_k a_k(t, t^(2n)) f(n + k)`` for laurent-mode u."""
    total = MultiLaurent.zero()
    for k, c in u.coeffs.items():
        total = total + eval_M_at_qn(_demote(c), n) * f(n + k)
    return total


def apply_to_function(u, f):
    """The sequence ``u f`` as a memoized :class:`~qtorus.jones.DiscreteFunction`."""
    from .jones import DiscreteFunction
    return DiscreteFunction(lambda n: act_on_function(u, f, n), name=f"({u})*f", odd=False)


L = TorusElement.L()
Linv = TorusElement.L(-1)
M = TorusElement.M()
