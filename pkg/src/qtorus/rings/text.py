"""Text form of Laurent polynomials.

Two readers are provided.  :func:`parse_poly` accepts exactly the expanded
grammar used for every exchanged polynomial::

    poly   := term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := var ('^' int)?
    var    := 't' | 'M' | 'L' | 'x'
    coeff  := int ('/' uint)?
    int    := '-'? digits

:func:`parse_expr` is a looser calculator-style reader (parentheses, powers of
subexpressions, implicit multiplication, division by units) used for stored
constants and ``--poly-file`` input.  :func:`format_poly` always writes the
strict grammar, so its output parses back with either reader.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .laurent import MultiLaurent, norm_coeff

VARIABLES = ("t", "M", "L", "x")


class PolySyntaxError(ValueError):
    pass


# -- strict grammar ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([tMLx])|(.))")


def _tokens(src):
    pos = 0
    out = []
    src = src.strip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            break
        num, var, sym = m.groups()
        if num is not None:
            out.append(("num", int(num), m.start(1)))
        elif var is not None:
            out.append(("var", var, m.start(2)))
        elif sym is not None and not sym.isspace():
            out.append(("sym", sym, m.start(3)))
        pos = m.end()
    out.append(("end", None, len(src)))
    return out


class _Cursor:
    def __init__(self, src):
        self.src = src
        self.toks = _tokens(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def is_sym(self, s):
        kind, val, _ = self.peek()
        return kind == "sym" and val == s

    def expect_sym(self, s):
        if not self.is_sym(s):
            self.fail(f"expected {s!r}")
        self.take()

    def fail(self, msg):
        kind, val, pos = self.peek()
        found = "end of input" if kind == "end" else repr(val)
        raise PolySyntaxError(f"{msg} at column {pos + 1} (found {found}) in {self.src!r}")

    def signed_int(self):
        neg = False
        if self.is_sym("-"):
            self.take()
            neg = True
        kind, val, _ = self.peek()
        if kind != "num":
            self.fail("expected an integer")
        self.take()
        return -val if neg else val


def parse_poly(src):
    """Parse the strict expanded grammar into a :class:`MultiLaurent`."""
    if not isinstance(src, str):
        raise TypeError("parse_poly expects a string")
    cur = _Cursor(src)
    if cur.peek()[0] == "end":
        cur.fail("empty polynomial")
    total = {}
    sign = 1
    while True:
        exps, coeff = _strict_term(cur)
        total[exps] = total.get(exps, 0) + sign * coeff
        if cur.is_sym("+"):
            sign = 1
        elif cur.is_sym("-"):
            sign = -1
        elif cur.peek()[0] == "end":
            break
        else:
            cur.fail("expected '+', '-' or end of input")
        cur.take()
    return MultiLaurent({e: c for e, c in total.items() if c}, VARIABLES)


def _strict_term(cur):
    exps = [0, 0, 0, 0]
    coeff = 1
    kind = cur.peek()[0]
    if kind == "num" or cur.is_sym("-"):
        num = cur.signed_int()
        if cur.is_sym("/"):
            cur.take()
            kind, den, _ = cur.peek()
            if kind != "num":
                cur.fail("expected a denominator")
            if den == 0:
                cur.fail("zero denominator")
            cur.take()
            coeff = Fraction(num, den)
        else:
            coeff = num
        if not cur.is_sym("*"):
            return tuple(exps), norm_coeff(coeff)
        cur.take()
    _strict_factor(cur, exps)
    while cur.is_sym("*"):
        cur.take()
        _strict_factor(cur, exps)
    return tuple(exps), norm_coeff(coeff)


def _strict_factor(cur, exps):
    kind, val, _ = cur.peek()
    if kind != "var":
        cur.fail("expected a variable")
    cur.take()
    k = 1
    if cur.is_sym("^"):
        cur.take()
        k = cur.signed_int()
    exps[VARIABLES.index(val)] += k


# -- formatting ----------------------------------------------------------------

def _term_order(e):
    return (sum(e), e)


def format_poly(p):
    """Strict-grammar text: terms by descending total degree, then lex."""
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, key=_term_order, reverse=True):
        c = p.terms[e]
        factors = []
        for name, k in zip(p.variables, e):
            if k == 1:
                factors.append(name)
            elif k:
                factors.append(f"{name}^{k}")
        mono = "*".join(factors)
        mag = abs(c)
        if not parts:
            sign = "-" if c < 0 else ""
        else:
            sign = " - " if c < 0 else " + "
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono if (parts or c > 0) else "1*" + mono
        else:
            body = f"{mag}*{mono}"
        parts.append(sign + body)
    return "".join(parts)


def format_coeff(c):
    return str(norm_coeff(c))


# -- calculator-style reader --------------------------------------------------

_EXPR_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def parse_expr(src, names=None):
    """Evaluate an arithmetic expression over Laurent polynomials.

    ``names`` maps extra identifiers to :class:`MultiLaurent` values.
    Division is allowed only by units (nonzero constants and monomials).
    """
    toks = []
    for m in _EXPR_TOKEN.finditer(src):
        num, ident, sym = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif ident is not None:
            toks.append(("id", ident))
        elif sym is not None:
            toks.append(("sym", sym))
    toks.append(("end", None))
    names = dict(names or {})
    return _ExprParser(src, toks, names).run()


class _ExprParser:
    def __init__(self, src, toks, names):
        self.src = src
        self.toks = toks
        self.names = names
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at(self, sym):
        return self.peek() == ("sym", sym)

    def fail(self, msg):
        raise PolySyntaxError(f"{msg} near token {self.i} ({self.peek()[1]!r}) in {self.src!r}")

    def run(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        v = self.sum()
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")
        return v

    def sum(self):
        if self.at("-"):
            self.take()
            v = -self.product()
        else:
            if self.at("+"):
                self.take()
            v = self.product()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            rhs = self.product()
            v = v + rhs if op == "+" else v - rhs
        return v

    def starts_atom(self):
        kind, val = self.peek()
        return kind in ("num", "id") or (kind == "sym" and val == "(")

    def product(self):
        v = self.power()
        while True:
            if self.at("*"):
                self.take()
                v = v * self.power()
            elif self.at("/"):
                self.take()
                d = self.power()
                if not d:
                    self.fail("division by zero")
                if not d.is_monomial():
                    self.fail("division by a non-unit")
                v = v * d ** -1
            elif self.starts_atom():
                v = v * self.power()
            else:
                return v

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.take()
            neg = False
            if self.at("-"):
                self.take()
                neg = True
            elif self.at("+"):
                self.take()
            kind, val = self.take()
            if kind != "num":
                self.fail("expected an integer exponent")
            try:
                return base ** (-val if neg else val)
            except ArithmeticError as exc:
                raise PolySyntaxError(str(exc)) from None
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MultiLaurent.const(val)
        if kind == "id":
            if val in VARIABLES:
                return MultiLaurent.var(val)
            if val in self.names:
                return MultiLaurent.coerce(self.names[val])
            self.i -= 1
            self.fail(f"unknown name {val!r}")
        if kind == "sym" and val == "(":
            v = self.sum()
            if not self.at(")"):
                self.fail("expected ')'")
            self.take()
            return v
        if kind == "sym" and val == "-":
            return -self.power()
        self.i -= 1
        self.fail("expected a number, variable or '('")
