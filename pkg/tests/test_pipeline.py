import random

import pytest

from qtorus.pipeline import constants as C
from qtorus.pipeline.steps import (DERIVED, PAPER, PipelineError, PipelineState, b0_from_p1, compare_with_paper,
                                   expand_P_from_B, normalize_equation, operator_B, run_pipeline, step1,
                                   step2_build_dio, verify_conditions)
from qtorus.report import PASS
from qtorus.rings.laurent import ONE, MultiLaurent, eval_t, invert_M
from qtorus.rings.rational import RationalFunction
from qtorus.rings.text import parse_expr
from qtorus.torus import TorusElement


@pytest.fixture(scope="module")
def paper_state():
    return run_pipeline(PAPER)


@pytest.fixture(scope="module")
def derived_state():
    return run_pipeline(DERIVED)


def test_state_provenance_and_checks():
    st = PipelineState()
    st.insert("x", 3, PAPER, "x = 3", lambda v: v == 3)
    assert st["x"] == 3 and st.tag("x") == PAPER and "x" in st
    with pytest.raises(PipelineError, match="defining identity"):
        st.insert("y", 4, DERIVED, "y = 3", lambda v: v == 3)
    assert "y" not in st
    with pytest.raises(ValueError):
        st.insert("z", 1, "guess")
    snap = st.snapshot()
    with pytest.raises(TypeError):
        snap["x"] = None


def test_constants_round_trip():
    from qtorus.rings.text import format_poly
    for name in C.names():
        v = C.const(name)
        assert parse_expr(format_poly(v)) == v


def test_expand_identity_B():
    p = expand_P_from_B(TorusElement.scalar(ONE))
    alpha = C.alpha_E()
    assert p[2] == 0 and p[-2] == 0
    for k in (1, 0, -1):
        assert p[k] == alpha.coeff(k)


def test_expand_unit_ends():
    st = step1(PipelineState())
    p = expand_P_from_B(operator_B(st["b1"], 0, st["bm1"]))
    assert p[2] == 1 and p[-2] == 1


def test_expand_paper_b0():
    st = step1(PipelineState())
    b0 = RationalFunction(C.const("b0_num"), C.const("b0_den"))
    p = expand_P_from_B(operator_B(st["b1"], b0, st["bm1"]))
    assert p[1] == C.const("p1") and p[-1] == C.const("pm1") and p[0] == C.const("p0")


def test_step2_factors_and_controls():
    st = step2_build_dio(step1(PipelineState()))
    A1, B1, C1 = st["A1B1C1"]
    A2, B2, C2 = st["A2B2C2"]
    sh = lambda p, k: p.subs_monomial("M", {"t": 2 * k, "M": 1})
    a1, am1 = C.const("a1"), C.const("am1")
    assert A1 == -a1 * sh(a1, 1) * sh(am1, -1)
    assert A2 == MultiLaurent.monomial({"t": 8, "M": 10}) * A1
    at = C.A_E_squared_coeffs()
    assert eval_t(A1, 1) * at[0] + eval_t(B1, 1) * at[1] == eval_t(C1, 1)
    assert C1 and A1 * 0 + B1 * 0 != C1


def test_normalize_equation():
    (c, ci), r = normalize_equation((parse_expr("-2*t^-1*M"), parse_expr("4*M^-2")), parse_expr("6*t^-1"))
    assert (c, ci, r) == (parse_expr("M^3"), parse_expr("-2*t"), parse_expr("-3*M^2"))


def test_paper_run_reproduces_printed_values(paper_state):
    assert all(compare_with_paper(paper_state).values())
    assert paper_state["f1"] == C.const("f_at_1")
    assert paper_state["eq_f"][1] == C.const("eqf_rhs")
    assert paper_state["k_rhs"] == C.const("k_rhs")


def test_derived_run(derived_state):
    assert derived_state.tag("particular") == DERIVED
    assert derived_state["family_shift"] is not None
    assert derived_state["membership_multiplier"] == parse_expr("t^10*M^4")
    P = derived_state["P"]
    assert P.coeff(2) == 1 and P.coeff(-2) == 1
    assert all(r.status == PASS for r in verify_conditions(P))


def test_state_dump_is_tagged(derived_state):
    d = derived_state.to_dict()
    assert d["a1"]["tag"] == PAPER and d["P"]["tag"] == DERIVED
    assert all(set(v) == {"tag", "identity", "value"} for v in d.values())


def test_family_closure(paper_state):
    A2, B2, C2 = paper_state["A2B2C2"]
    pt0, pt1 = paper_state["particular"]
    bg, ag = paper_state["modulus"]
    rng = random.Random(7)
    for _ in range(5):
        f = MultiLaurent({(rng.randint(0, 4), rng.randint(0, 4)): rng.randint(-9, 9) or 1 for _ in range(4)},
                         ("t", "M"))
        assert A2 * (pt0 - f * bg) + B2 * (pt1 + f * ag) == C2


def test_perturbed_f_breaks_symmetry(paper_state):
    a = {k: C.const(k) for k in ("a1", "am1", "a0")}
    _, pt1 = paper_state["particular"]
    _, ag = paper_state["modulus"]
    f = paper_state["f"] + parse_expr("t^2*M")
    b0 = b0_from_p1(RationalFunction.coerce(pt1 + f * ag), a)
    assert b0.invert_M() != -b0
    coeffs = expand_P_from_B(operator_B(paper_state["b1"], b0, paper_state["bm1"]))
    P = TorusElement(coeffs)
    sigma = verify_conditions(P, range(1, 3))[0]
    assert sigma.status != PASS and sigma.witness


def test_paper_k_solves_its_equation(paper_state):
    k = C.const("k")
    assert k + invert_M(k) == paper_state["k_rhs"]


def test_alpha_fails_conditions():
    by_name = {r.name: r for r in verify_conditions(C.alpha_E(), range(1, 4))}
    assert by_name["eps(P) = (A'_E)^2"].status != PASS
    assert by_name["P J_E is inhomogeneous (cx = 0, c1 = 0, pointwise)"].status == PASS


def test_paper_P_passes_conditions():
    assert all(r.status == PASS for r in verify_conditions(C.P_paper()))
