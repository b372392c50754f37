"""Colored Jones values of the figure-eight knot and general brackets <Q>.

For Q in t, M, x the bracket is the exact finite sum

    <Q>(n) = [n] * sum_{k=0}^{n-1} Q(t, t^(2n), t^(4k)) * prod_{l=1}^{k} (t^(4n) + t^(-4n) - t^(4l) - t^(-4l))

for n >= 1, extended to all integers as an odd function.  <1> is the
colored Jones function J_E.  Values are univariate Laurent polynomials in t.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from dataclasses import dataclass, field

from .rings import upoly
from .rings.laurent import ONE, MultiLaurent, eval_M_at_qn
from .rings.rational import RationalFunction


# Laurent polynomials in t are handled here as (dense coefficient list, lowest exponent).

def _to_dense(p):
    return p.univariate("t")


def _from_dense(coeffs, low):
    return MultiLaurent.from_univariate(coeffs, "t", low)


def _sparse_mul(dense, low, sparse):
    """Multiply a dense Laurent polynomial by a short {exponent: coeff} one."""
    if not dense or not sparse:
        return [], 0
    smin = min(sparse)
    smax = max(sparse)
    out = [0] * (len(dense) + smax - smin)
    for e, c in sparse.items():
        off = e - smin
        for i, d in enumerate(dense):
            if d:
                out[i + off] += c * d
    return _trim(out, low + smin)


def _trim(coeffs, low):
    i = 0
    while i < len(coeffs) and coeffs[i] == 0:
        i += 1
    coeffs = upoly.strip(coeffs[i:])
    return coeffs, (low + i if coeffs else 0)


def _dense_add(a, la, b, lb):
    if not a:
        return list(b), lb
    if not b:
        return list(a), la
    low = min(la, lb)
    high = max(la + len(a), lb + len(b))
    out = [0] * (high - low)
    for i, c in enumerate(a):
        out[la - low + i] += c
    for i, c in enumerate(b):
        out[lb - low + i] += c
    return _trim(out, low)


def quantum_integer(n):
    """``[n] = (t^(2n) - t^(-2n)) / (t^2 - t^(-2))``."""
    if n == 0:
        return MultiLaurent.zero()
    sign = 1 if n > 0 else -1
    m = abs(n)
    return MultiLaurent({(2 * (m - 1) - 4 * j,): sign for j in range(m)}, ("t",))


def _summand_values(Q, n, k):
    """``Q(t, t^(2n), t^(4k))`` as {exponent: coeff}."""
    names = Q.variables
    out = {}
    for e, c in Q.terms.items():
        d = dict(zip(names, e))
        x = d.get("t", 0) + 2 * n * d.get("M", 0) + 4 * k * d.get("x", 0)
        out[x] = out.get(x, 0) + c
    return {e: c for e, c in out.items() if c}


def habiro_bracket(Q, n):
    """``<Q>(n)`` for any integer n (odd extension for n <= 0)."""
    Q = MultiLaurent.coerce(Q)
    if set(Q.variables) - {"t", "M", "x"}:
        raise ValueError(f"bracket summand must involve only t, M, x; got {Q.variables}")
    if n == 0:
        return MultiLaurent.zero()
    if n < 0:
        return -habiro_bracket(Q, -n)
    den = Q.denominator()
    if den != 1:
        return habiro_bracket(Q * den, n) * Fraction(1, den)
    total, tlow = [], 0
    prod, plow = [1], 0
    for k in range(n):
        if k:
            factor = {4 * n: 1, -4 * n: 1}
            factor[4 * k] = factor.get(4 * k, 0) - 1
            factor[-4 * k] = factor.get(-4 * k, 0) - 1
            prod, plow = _sparse_mul(prod, plow, {e: c for e, c in factor.items() if c})
            if not prod:
                break
        qv = _summand_values(Q, n, k)
        term, tl = _sparse_mul(prod, plow, qv)
        total, tlow = _dense_add(total, tlow, term, tl)
    qn, qlow = _to_dense(quantum_integer(n))
    return _from_dense(upoly.mul(total, qn), tlow + qlow)


class DiscreteFunction:
    """Memoized exact sequence ``n -> Laurent polynomial in t``.

    With ``odd=True`` the rule f(0) = 0, f(-n) = -f(n) is applied here, so
    only n >= 1 reaches ``compute``.  The cache is safe for concurrent use:
    each n is computed by one thread while others wait for it.
    """

    def __init__(self, compute, name="f", odd=True):
        self._compute = compute
        self.name = name
        self.odd = odd
        self._values = {}
        self._locks = {}
        self._guard = threading.Lock()

    def __call__(self, n):
        n = int(n)
        if self.odd:
            if n == 0:
                return MultiLaurent.zero()
            if n < 0:
                return -self(-n)
        try:
            return self._values[n]
        except KeyError:
            pass
        with self._guard:
            lock = self._locks.setdefault(n, threading.Lock())
        with lock:
            if n not in self._values:
                self._values[n] = self._compute(n)
        return self._values[n]

    def fresh(self, n):
        """Recompute ignoring the cache (used to test memoization)."""
        if self.odd and n <= 0:
            return MultiLaurent.zero() if n == 0 else -self.fresh(-n)
        return self._compute(n)

    def cached(self):
        return sorted(self._values)

    def __repr__(self):
        return f"DiscreteFunction({self.name})"


_BRACKETS = {}
_BRACKETS_GUARD = threading.Lock()


def bracket(Q):
    """The shared memoized sequence ``<Q>``."""
    Q = MultiLaurent.coerce(Q)
    with _BRACKETS_GUARD:
        f = _BRACKETS.get(Q)
        if f is None:
            f = DiscreteFunction(lambda n, Q=Q: habiro_bracket(Q, n), name=f"<{Q}>", odd=True)
            _BRACKETS[Q] = f
    return f


def colored_jones_fig8(n=None):
    """J_E(n), or the sequence J_E itself when n is None."""
    f = bracket(ONE)
    return f if n is None else f(n)


def is_palindromic(p):
    """p(t) == p(1/t)."""
    return p == p.subs_monomial("t", {"t": -1})


def eval_at_qn(c, n):
    """Value of a coefficient at M = t^(2n): MultiLaurent, or RationalFunction in t."""
    if isinstance(c, RationalFunction):
        num = eval_M_at_qn(c.num, n)
        den = eval_M_at_qn(c.den, n)
        if not den:
            raise ZeroDivisionError(f"denominator {c.den} vanishes at n = {n}")
        return RationalFunction(num, den)
    return eval_M_at_qn(MultiLaurent.coerce(c), n)


@dataclass
class PointwiseReport:
    passed: bool
    checked: list = field(default_factory=list)
    witness: int | None = None
    detail: str = ""


def verify_pointwise_identity(u, rhs, n_range, f=None):
    """Check ``(u f)(n) == sum_i c_i(t, t^(2n)) * f_i(n)`` for every n in ``n_range``.

    ``f`` defaults to J_E.  In ``rhs`` an ``f_i`` of None stands for the
    constant sequence 1 (an inhomogeneous term).
    """
    from .torus import act_on_function, TorusElement
    if f is None:
        f = colored_jones_fig8()
    if not isinstance(u, TorusElement):
        u = TorusElement.scalar(u)
    checked = []
    for n in n_range:
        lhs = act_on_function(u, f, n) if u else MultiLaurent.zero()
        total = RationalFunction.coerce(0)
        for c, g in rhs:
            v = eval_at_qn(c, n)
            total = total + (v * (g(n) if g is not None else ONE))
        if RationalFunction.coerce(lhs) != total:
            return PointwiseReport(False, checked, n, f"identity fails at n = {n}")
        checked.append(n)
    return PointwiseReport(True, checked)
