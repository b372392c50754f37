import sympy
from hypothesis import given, settings, strategies as st

import pytest
from qtorus.groebner import (GREVLEX, LEX, MonomialOrder, NotInIdeal, buchberger_extended, dio_solve_pair,
                             ideal_membership, in_solution_family, reduce_poly)
from qtorus.pipeline import constants as C
from qtorus.pipeline.paper_checks import diophantine_triple
from qtorus.rings.laurent import ONE, MultiLaurent, exact_div, normalize_to_poly
from qtorus.rings.text import parse_poly

from conftest import nonneg_tm

P = parse_poly
ts, ms = sympy.symbols("t M")


def test_orders():
    lex, grevlex = MonomialOrder("lex"), MonomialOrder("grevlex")
    assert lex.sort_key((1, 0)) > lex.sort_key((0, 5))
    assert grevlex.sort_key((0, 5)) > grevlex.sort_key((1, 0))
    assert grevlex.sort_key((2, 1)) > grevlex.sort_key((1, 2))
    with pytest.raises(ValueError):
        MonomialOrder("deglex")


def test_reduce_trivial():
    qs, r = reduce_poly(MultiLaurent.zero(), [P("t"), P("M")], LEX)
    assert r == 0 and all(q == 0 for q in qs)
    g = P("t^2 - M")
    qs, r = reduce_poly(g, [g], LEX)
    assert r == 0 and qs == [ONE]


@given(nonneg_tm, st.lists(nonneg_tm.filter(bool), min_size=1, max_size=3), st.sampled_from([LEX, GREVLEX]))
def test_reduce_contract(f, basis, order):
    qs, r = reduce_poly(f, basis, order)
    assert sum((q * b for q, b in zip(qs, basis)), r) == f
    leads = [max(b.terms, key=lambda e: order.key(b.variables)(e)) for b in basis]
    for e in r.terms:
        full = dict(zip(r.variables, e))
        for lb, b in zip(leads, basis):
            lead = dict(zip(b.variables, lb))
            assert not all(full.get(v, 0) >= k for v, k in lead.items())


def test_basis_trivial():
    eb = buchberger_extended([P("M"), P("t")], LEX)
    assert eb.gens == [P("M"), P("t")]
    assert eb.conversion == [[ONE, 0], [0, ONE]]
    eb = buchberger_extended([P("6*t^2 - 4*M")], LEX)
    assert eb.gens == [P("3*t^2 - 2*M")]
    assert eb.check_conversion()


@settings(max_examples=100)
@given(st.lists(nonneg_tm.filter(bool), min_size=1, max_size=3), st.sampled_from([LEX, GREVLEX]))
def test_basis_invariants_against_sympy(polys, order):
    eb = buchberger_extended(polys, order)
    assert eb.check_conversion()
    assert eb.check_criterion()
    # same reduced basis as sympy up to scaling
    expected = sympy.groebner([to_sympy(p) for p in polys], ts, ms, order=order.kind)
    got = [to_sympy(g) for g in eb.gens]
    assert len(got) == len(expected.exprs)
    for g, e in zip(sorted(got, key=sympy.default_sort_key), sorted(expected.exprs, key=sympy.default_sort_key)):
        assert sympy.cancel(g / e).is_number


def to_sympy(p):
    out = 0
    for e, c in p.terms.items():
        term = sympy.nsimplify(c)
        for v, k in zip(p.variables, e):
            term *= {"t": ts, "M": ms}[v] ** k
        out += term
    return sympy.expand(out)


def test_basis_is_deterministic():
    A2, B2, _ = diophantine_triple()
    a = buchberger_extended([A2, B2], LEX)
    b = buchberger_extended([A2, B2], LEX)
    assert a.gens == b.gens and a.conversion == b.conversion


def test_membership_trivial():
    A2, B2, _ = diophantine_triple()
    eb = buchberger_extended([A2, B2], LEX)
    m = ideal_membership(A2, eb)
    assert m.member and m.cofactors == [ONE, 0]
    m = ideal_membership(ONE, buchberger_extended([P("t"), P("M")], LEX))
    assert not m.member and m.remainder == ONE


def test_membership_pipeline_instance():
    A2, B2, C2 = diophantine_triple()
    for order in (LEX, GREVLEX):
        eb = buchberger_extended([A2, B2], order)
        m = ideal_membership(C2, eb)
        assert m.member
        assert m.cofactors[0] * A2 + m.cofactors[1] * B2 == C2
        assert m.multiplier == P("t^10*M^4")


def test_paper_basis_generates_the_same_ideal():
    A2, B2, _ = diophantine_triple()
    for order in (LEX, GREVLEX):
        eb = buchberger_extended([A2, B2], order)
        paper = [normalize_to_poly(g)[0] for g in C.gb_paper()]
        for g in paper:
            assert reduce_poly(g, eb.gens, order)[1] == 0
        paper_eb = buchberger_extended(paper, order)
        for g in eb.gens:
            assert reduce_poly(g, paper_eb.gens, order)[1] == 0


def test_dio_trivial():
    A, B = P("t^2 + M"), P("M^3 - t")
    sol = dio_solve_pair(A, B, A)
    assert sol.particular == (ONE, MultiLaurent.zero())
    sol = dio_solve_pair(P("t"), P("M"), P("t + M"))
    assert sol.modulus == (P("M"), P("t")) and sol.gcd == ONE
    x, y = sol.particular
    assert P("t") * x + P("M") * y == P("t + M")
    assert in_solution_family((ONE, ONE), sol) is not None


def test_dio_rejects_nonmember():
    with pytest.raises(NotInIdeal) as err:
        dio_solve_pair(P("t"), P("M"), ONE)
    assert err.value.remainder == ONE


@given(nonneg_tm)
def test_solution_family(f):
    A2, B2, C2 = diophantine_triple()
    sol = dio_solve_pair(A2, B2, C2)
    x, y = sol.particular
    bg, ag = sol.modulus
    other = (x - f * bg, y + f * ag)
    assert A2 * other[0] + B2 * other[1] == C2
    assert in_solution_family(other, sol) == f
    assert in_solution_family((x + 1, y), sol) is None


def test_gcd_of_pipeline_pair():
    A2, B2, _ = diophantine_triple()
    sol = dio_solve_pair(A2, B2, diophantine_triple()[2])
    # common factors a_1(t, t^2 M) and a_-1(t, t^-2 M), cleared of monomials
    expected = normalize_to_poly(C.const("a1").subs_monomial("M", {"t": 2, "M": 1})
                                 * C.const("am1").subs_monomial("M", {"t": -2, "M": 1}))[0]
    assert exact_div(sol.gcd, expected) is not None and exact_div(expected, sol.gcd) is not None


def test_printed_conversion_matrix_up_to_one_sign():
    A2, B2, _ = diophantine_triple()
    rows = lambda mat: [r[0] * A2 + r[1] * B2 == g for r, g in zip(mat, C.gb_paper())]
    assert rows(C.mat_paper()) == [False, True, True, True]
    assert all(rows(C.mat_paper(use_errata=True)))
