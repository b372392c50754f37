"""Dense univariate integer polynomial kernels.

Polynomials are plain lists of Python ints, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  Large products and exact
quotients go through Kronecker substitution: a polynomial is packed into one
big integer by evaluating it at ``2**bits`` with signed digits, the heavy
lifting is done by GMP, and the digits are read back.
"""

from __future__ import annotations

from functools import reduce
from math import gcd as igcd

import gmpy2
from gmpy2 import mpz

_SCHOOLBOOK_LIMIT = 4096


def strip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def sub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return strip(out)


def neg(a):
    return [-c for c in a]


def scale(a, c):
    if c == 0:
        return []
    return [c * x for x in a]


def shift(a, k):
    """Multiply by ``t**k`` (k >= 0)."""
    if not a:
        return []
    return [0] * k + list(a)


def maxnorm(a):
    return max(max(a), -min(a)) if a else 0


def l1norm(a):
    return sum(abs(c) for c in a)


def content(a):
    return reduce(igcd, a, 0)


def primitive(a):
    """Divide by the integer content and make the leading coefficient positive."""
    if not a:
        return []
    c = content(a)
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def evaluate(a, x):
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


# -- Kronecker packing -------------------------------------------------------

def _bits_for(bound):
    """Digit width able to hold signed digits of absolute value <= bound."""
    b = int(bound).bit_length() + 2
    return (b + 7) // 8 * 8


def _offset(n, bits):
    half = (1 << (bits - 1)).to_bytes(bits // 8, "little")
    return int.from_bytes(half * n, "little")


def pack(a, bits):
    """Evaluate ``a`` at ``2**bits`` (fast byte packing when |c| < 2**(bits-1))."""
    if not a:
        return mpz(0)
    half = 1 << (bits - 1)
    if maxnorm(a) >= half:
        # digits overflow the width: plain Horner evaluation at 2**bits
        v = mpz(0)
        for c in reversed(a):
            v = (v << bits) + c
        return v
    nbytes = bits // 8
    buf = b"".join((c + half).to_bytes(nbytes, "little") for c in a)
    return mpz(int.from_bytes(buf, "little") - _offset(len(a), bits))


def unpack(v, bits):
    """Inverse of :func:`pack`.  Raises OverflowError if the digits do not fit."""
    if v == 0:
        return []
    n = int(abs(v)).bit_length() // bits + 2
    w = int(v) + _offset(n, bits)
    if w < 0 or w.bit_length() > n * bits:
        raise OverflowError("packed value does not fit the digit width")
    nbytes = bits // 8
    raw = w.to_bytes(n * nbytes, "little")
    half = 1 << (bits - 1)
    out = [int.from_bytes(raw[i:i + nbytes], "little") - half for i in range(0, len(raw), nbytes)]
    return strip(out)


# -- multiplication and division ---------------------------------------------

def _mul_schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip(out)


def mul(a, b):
    if not a or not b:
        return []
    if len(a) * len(b) <= _SCHOOLBOOK_LIMIT:
        return _mul_schoolbook(a, b)
    bits = _bits_for(maxnorm(a) * maxnorm(b) * min(len(a), len(b)))
    return unpack(pack(a, bits) * pack(b, bits), bits)


def power(a, n):
    out = [1]
    for _ in range(n):
        out = mul(out, a)
    return out


def _long_divexact(a, b):
    a = list(a)
    db = deg(b)
    lb = b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        qc, r = divmod(c, lb)
        if r:
            return None
        q[i - db] = qc
        for j, y in enumerate(b):
            a[i - db + j] -= qc * y
    if any(a[:db]):
        return None
    return strip(q)


def divexact(a, b):
    """Return ``a / b`` if ``b`` divides ``a`` in Z[t], else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    if len(a) < len(b):
        return None
    if len(b) == 1:
        c = b[0]
        if any(x % c for x in a):
            return None
        return [x // c for x in a]
    if len(b) <= 32 or len(a) * len(b) <= _SCHOOLBOOK_LIMIT:
        return _long_divexact(a, b)
    bits = _bits_for(maxnorm(a)) + 64
    for _ in range(4):
        A, B = pack(a, bits), pack(b, bits)
        Q, R = gmpy2.f_divmod(A, B)
        if R:
            return None
        try:
            q = unpack(Q, bits)
        except OverflowError:
            q = None
        if q is not None and len(q) == len(a) - len(b) + 1 and mul(b, q) == a:
            return q
        bits *= 2
    return _long_divexact(a, b)


def prem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` over Z."""
    r = list(a)
    db = deg(b)
    lb = b[-1]
    n = deg(a) - db + 1
    while r and deg(r) >= db:
        s = r[-1]
        j = deg(r) - db
        r = [lb * c for c in r]
        for i, y in enumerate(b):
            r[i + j] -= s * y
        strip(r)
        n -= 1
    if n > 0 and r:
        r = scale(r, lb ** n)
    return r


# -- gcd -----------------------------------------------------------------------

def _gcd_prs(a, b):
    """Primitive Euclidean remainder sequence; slow but unconditional."""
    a, b = primitive(a), primitive(b)
    if deg(a) < deg(b):
        a, b = b, a
    while b:
        r = prem(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def gcd(a, b):
    """Greatest common divisor in Z[t], primitive part times integer gcd.

    The result has positive leading coefficient.  The heuristic GCD (values at
    a large power of two, integer gcd, signed-digit interpolation) is tried
    first and accepted only after exact cofactor verification.
    """
    if not a or not b:
        nz = a or b
        return [x if nz[-1] > 0 else -x for x in nz]
    ca, cb = content(a), content(b)
    c = igcd(ca, cb)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    if deg(a) == 0 or deg(b) == 0:
        return [c]
    bits = _bits_for(2 * min(maxnorm(a), maxnorm(b)) + 2)
    for _ in range(5):
        A, B = pack(a, bits), pack(b, bits)
        h = gmpy2.gcd(A, B)
        try:
            cand = primitive(unpack(h, bits))
        except OverflowError:
            cand = None
        if cand and divexact(a, cand) is not None and divexact(b, cand) is not None:
            return scale(cand, c)
        bits *= 2
    return scale(_gcd_prs(a, b), c)
