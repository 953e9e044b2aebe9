import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pg4curves.dsl import (
    Binary,
    Const,
    Num,
    Param,
    Unary,
    curve_from_json,
    eval_float,
    eval_jet,
    load_curve,
    parse_curve,
    parse_expr,
    to_text,
)
from pg4curves.errors import DomainErrorJet, ParseError, UnknownIdentifier
from pg4curves.jets import fd_derivatives

from golden import GOLDEN_CURVES, GOLDEN_EXPRESSIONS, MALFORMED


def test_fixture_counts():
    assert len(GOLDEN_EXPRESSIONS) == 30
    assert len(MALFORMED) >= 10


@pytest.mark.parametrize("text", GOLDEN_EXPRESSIONS)
def test_expression_round_trip(text):
    e = parse_expr(text)
    assert parse_expr(to_text(e)) == e


@pytest.mark.parametrize("text", GOLDEN_CURVES)
def test_curve_round_trip(text):
    c = parse_curve(text)
    again = parse_curve(str(c))
    assert again == c
    assert curve_from_json(json.loads(json.dumps(c.to_json()))) == c


@pytest.mark.parametrize("text, exc, line, column", MALFORMED)
def test_malformed_inputs_are_located(text, exc, line, column):
    with pytest.raises(exc) as info:
        parse_curve(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


def test_unknown_identifier_names_the_symbol():
    with pytest.raises(UnknownIdentifier) as info:
        parse_curve("x=s; y=foo(s); z=s; w=0 on [0,1]")
    assert info.value.name == "foo"


def test_precedence_golden_asts():
    s = Param("s")
    assert parse_expr("1+2*s^3") == Binary("add", Num(1.0), Binary("mul", Num(2.0), Binary("pow", s, Num(3.0))))
    assert parse_expr("-s^2") == Unary("neg", Binary("pow", s, Num(2.0)))
    assert parse_expr("1-s-1") == Binary("sub", Binary("sub", Num(1.0), s), Num(1.0))
    assert parse_expr("2*pi") == Binary("mul", Num(2.0), Const("pi"))


def test_curve_param_and_domain():
    c = parse_curve("x=2*t; y=t; z=0; w=0 on [-1, 1]")
    assert c.param == "t"
    assert c.domain == (-1.0, 1.0)


@pytest.mark.parametrize("text, s0, order, expected", [
    ("s^3", 1.0, 4, [1, 3, 6, 6, 0]),
    ("cosh(s)", 0.0, 5, [1, 0, 1, 0, 1, 0]),
])
def test_eval_jet_examples(text, s0, order, expected):
    assert eval_jet(parse_expr(text), s0, order).d == pytest.approx(expected, abs=1e-14)


def test_eval_jet_domain_error():
    with pytest.raises(DomainErrorJet):
        eval_jet(parse_expr("sin(s)/s"), 0.0)


def test_load_curve_json_and_text(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"label": "c", "param": "s", "x": "s", "y": "cosh(s)",
                             "z": "sinh(s)", "w": "0", "domain": [0, 1]}))
    assert str(load_curve(p)) == "x=s; y=cosh(s); z=sinh(s); w=0 on [0, 1]"
    q = tmp_path / "c.curve"
    q.write_text("x=s; y=cosh(s); z=sinh(s); w=0 on [0,1]\n")
    assert load_curve(q) == load_curve(p)


def test_bad_json_is_located(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"x": "s",\n  "y": }')
    with pytest.raises(ParseError) as info:
        load_curve(p)
    assert info.value.line == 2


# -- property tests ---------------------------------------------------------------

leaf = st.one_of(
    st.just(Param("s")),
    st.sampled_from([Const("pi"), Const("e")]),
    st.floats(0, 50, allow_nan=False).map(lambda v: Num(round(v, 3))),
)


def _extend(children):
    return st.one_of(
        st.builds(Unary, st.sampled_from(["neg", "sin", "cos", "sinh", "cosh", "exp"]), children),
        st.builds(Binary, st.sampled_from(["add", "sub", "mul", "div"]), children, children),
        st.builds(lambda b, k: Binary("pow", b, Num(float(k))), children, st.integers(0, 4)),
    )


exprs = st.recursive(leaf, _extend, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(exprs)
def test_print_parse_is_structural_identity(e):
    assert parse_expr(to_text(e)) == e


SMOOTH = [
    "s^3-2*s+1",
    "sin(2*s)*exp(s/2)",
    "cosh(s)/(2+sin(s))",
    "sqrt(2+s^2)*ln(3+s)",
    "(1+s^2)^-1",
    "s^2.5",
]


@pytest.mark.parametrize("text", SMOOTH)
def test_eval_jet_agrees_with_fd(text):
    e = parse_expr(text)
    rng = random.Random(7)
    for _ in range(25):
        s0 = rng.uniform(0.5, 1.5)
        got = eval_jet(e, s0, 4).d
        ref = fd_derivatives(lambda s: eval_float(e, s), s0, 2, 1e-2) + \
            fd_derivatives(lambda s: eval_float(e, s), s0, 4, 3e-2)[3:]
        for g, r in zip(got, ref):
            assert abs(g - r) <= 1e-5 * max(1.0, abs(r))


def test_eval_float_matches_math():
    e = parse_expr("sin(sqrt(3)*s)/(3*sqrt(3))")
    assert eval_float(e, 0.4) == pytest.approx(math.sin(math.sqrt(3) * 0.4) / (3 * math.sqrt(3)), rel=1e-15)
