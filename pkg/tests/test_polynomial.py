from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from binomiality import ParseError, PolyRing, PolySystem, dehomogenize, homogenize, parse_system
from binomiality.polynomial import default_order, same_up_to_scaling

R = PolyRing(("x", "y", "z", "w"))


def P(s, ring=R, params=()):
    return ring.parse(s, params)


@pytest.mark.parametrize("text,deg", [("x - y", 1), ("x - y + x^2 + y^2 + z^2", 2), ("0", None)])
def test_degree(text, deg):
    assert P(text).degree() == deg


def test_monomial_times_polynomial():
    f = P("x - y + z - w")
    assert f.mul_monomial((1, 0, 0, 0)) == P("x^2 - x*y + x*z - x*w")
    assert f.mul_monomial((0, 0, 0, 0)) == f
    assert P("0").mul_monomial((1, 0, 0, 0)).is_zero()


def test_homogenize_and_back():
    S = PolySystem.from_strings("abxy", ["a*b - x", "a*b - y", "x + y + 1"])
    H = homogenize(S, "z")
    assert [g.to_str() for g in H] == ["a*b - x*z", "a*b - y*z", "x + y + z"]
    assert H.is_homogeneous()
    assert dehomogenize(H, "z").generators == S.generators


def test_homogenize_trivial_cases():
    S = PolySystem.from_strings("xyz", ["x^2 - y*z"])
    assert [g.to_str() for g in homogenize(S, "h")] == ["x^2 - y*z"]
    T = PolySystem.from_strings("x", ["x + 1"])
    assert [g.to_str() for g in homogenize(T, "z")] == ["x + z"]
    U = PolySystem.from_strings("xz", ["2*x + z"])
    assert [g.to_str() for g in dehomogenize(U, "z")] == ["2*x + 1"]


def test_homogenize_rejects_existing_name():
    S = PolySystem.from_strings("xz", ["x + 1"])
    with pytest.raises(ValueError):
        homogenize(S, "z")


def test_term_counts_after_cancellation():
    p = P("x + y - x")
    assert p.is_monomial() and p.is_binomial() and len(p) == 1
    q = P("x + y + z - z")
    assert q.is_binomial() and not q.is_monomial()


def test_grevlex_is_default_and_env_override(monkeypatch):
    monkeypatch.delenv("BINOMIALITY_ORDER", raising=False)
    assert default_order() == "grevlex"
    monkeypatch.setenv("BINOMIALITY_ORDER", "lex")
    assert parse_system("vars: x y\nx + y^2\n").ring.order == "lex"
    monkeypatch.setenv("BINOMIALITY_ORDER", "nonsense")
    with pytest.raises(ValueError):
        default_order()


def test_grevlex_leading_terms():
    ring = PolyRing(("x", "y", "z"))
    assert ring.mono_str(ring.parse("x*z^2 + y^3").lm()) == "y^3"
    lex = ring.with_order("lex")
    assert lex.mono_str(lex.parse("x*z^2 + y^3").lm()) == "x*z^2"


def test_parametric_coefficients_print_and_parse():
    params = ("k1", "k2")
    p = P("k1/(k1 + k2)*x - 3/2*y", params=params)
    assert P(p.to_str(), params=params) == p
    assert same_up_to_scaling(p, p.scale(Fraction(-7)))


@pytest.mark.parametrize("text,col", [("x + * y", 5), ("x + q", 5), ("x / y", 3), ("(x + y", 7), ("x $ y", 3)])
def test_parse_errors_carry_columns(text, col):
    with pytest.raises(ParseError) as err:
        parse_system(f"vars: x y\n{text}\n")
    assert err.value.line == 2 and err.value.column == col


def test_system_file_errors():
    with pytest.raises(ParseError):
        parse_system("x + y\n")
    with pytest.raises(ParseError):
        parse_system("vars: x\nparams: x\nx\n")
    with pytest.raises(ParseError):
        parse_system("vars: x\norder: weird\nx\n")


def test_system_text_and_json_round_trip(fixture_path):
    from binomiality import load_system

    for name in ("modification.sys", "erk.sys", "absorbed.sys"):
        S = load_system(fixture_path(name))
        assert parse_system(S.to_text()).generators == S.generators
        assert PolySystem.from_json(S.to_json()).generators == S.generators


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(0, 3)] * 4)


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(exps, coeffs, max_size=6))
    return R.monomial((0, 0, 0, 0), 0) + sum((R.monomial(m, c) for m, c in terms.items()), R.zero())


@settings(max_examples=300, deadline=None)
@given(polys())
def test_print_parse_round_trip(p):
    q = P(p.to_str())
    assert q == p
    assert q.to_str() == p.to_str()


@settings(max_examples=200, deadline=None)
@given(st.lists(polys(), max_size=4))
def test_homogenize_dehomogenize_identity(gens):
    S = PolySystem(R, (), tuple(gens))
    H = homogenize(S, "h")
    assert H.is_homogeneous()
    assert dehomogenize(H, "h").generators == S.generators


@settings(max_examples=200, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a - a).is_zero()
