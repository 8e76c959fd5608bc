import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasidet.formula import (
    Add,
    Const,
    Inv,
    Mul,
    Neg,
    ParseError,
    Var,
    evaluate,
    formula_height,
    free_vars,
    inv,
    parse,
    qdet_formula,
    to_text,
    var,
)
from quasidet.identity import (
    COUNTEREXAMPLE,
    DOMAIN_EXHAUSTED,
    VERIFIED,
    EquivalenceConfig,
    equivalent,
    replay_equivalence,
)
from quasidet.rings import DomainError, Rationals, SquareMatrices


def test_never_defined_inverse_raises():
    f = inv(var("x") - var("x"))
    with pytest.raises(DomainError) as err:
        evaluate(f, {"x": Fraction(5)}, Rationals())
    assert isinstance(err.value.payload, Inv)


def test_inverse_law():
    f = var("x") * inv(var("x"))
    assert evaluate(f, {"x": Fraction(7, 3)}, Rationals()) == 1
    M2 = SquareMatrices(2)
    point = M2.deserialize([["1", "2"], ["3", "4"]])
    assert evaluate(f, {"x": point}, M2) == M2.one


def test_double_inverse():
    f = inv(inv(var("x")))
    assert evaluate(f, {"x": Fraction(2, 3)}, Rationals()) == Fraction(2, 3)


def test_integer_constants_and_fractions():
    f = parse("2 * x + 1")
    assert evaluate(f, {"x": Fraction(1, 2)}, Rationals()) == 2
    g = Const(Fraction(3, 4)) * var("x")
    assert evaluate(g, {"x": Fraction(4)}, Rationals()) == 3


def test_var_name_nonempty():
    with pytest.raises(ValueError):
        Var("")


def test_free_vars_shared_dag():
    x = var("x")
    shared = Add(x, x)
    assert free_vars(Mul(shared, var("y"))) == {"x", "y"}


def test_height_examples():
    assert formula_height(var("x")) == 0
    assert formula_height(parse("inv(x + inv(y))")) == 2
    assert formula_height(parse("x + y * x")) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_qdet_formula_height(n):
    assert formula_height(qdet_formula(n)) == n - 1


def test_qdet_formula_evaluates_like_direct_arithmetic():
    f = qdet_formula(2)
    sigma = {
        "a_1_1": Fraction(1),
        "a_1_2": Fraction(2),
        "a_2_1": Fraction(3),
        "a_2_2": Fraction(4),
    }
    assert evaluate(f, sigma, Rationals()) == Fraction(-1, 2)


class TestParser:
    def test_whitespace_insensitive(self):
        a = parse("1+2*x")
        b = parse(" 1 +  2 \t* x ")
        sigma = {"x": Fraction(5)}
        Q = Rationals()
        assert evaluate(a, sigma, Q) == evaluate(b, sigma, Q)

    def test_inv_keyword(self):
        f = parse("inv(x) + invx")
        assert free_vars(f) == {"x", "invx"}

    def test_unary_minus_and_parens(self):
        f = parse("-(x - 3) * 2")
        assert evaluate(f, {"x": Fraction(1)}, Rationals()) == 4

    def test_errors(self):
        for text in ("", "1 +", "inv(x", "a $ b", ")("):
            with pytest.raises(ParseError):
                parse(text)

    def test_precedence(self):
        f = parse("1 + 2 * 3")
        assert evaluate(f, {}, Rationals()) == 7


@st.composite
def formulas(draw, depth=3):
    if depth == 0:
        kind = draw(st.integers(0, 1))
        if kind == 0:
            return Const(Fraction(draw(st.integers(-5, 5))))
        return Var(draw(st.sampled_from(["x", "y"])))
    kind = draw(st.integers(0, 5))
    if kind == 0:
        return Const(Fraction(draw(st.integers(-5, 5))))
    if kind == 1:
        return Var(draw(st.sampled_from(["x", "y"])))
    if kind == 2:
        return Add(draw(formulas(depth=depth - 1)), draw(formulas(depth=depth - 1)))
    if kind == 3:
        return Mul(draw(formulas(depth=depth - 1)), draw(formulas(depth=depth - 1)))
    if kind == 4:
        return Neg(draw(formulas(depth=depth - 1)))
    return Inv(draw(formulas(depth=depth - 1)))


@given(f=formulas())
@settings(max_examples=60, deadline=None)
def test_to_text_parse_roundtrip_evaluates_equally(f):
    Q = Rationals()
    sigma = {"x": Fraction(3, 2), "y": Fraction(-5, 7)}
    reparsed = parse(to_text(f))
    try:
        expected = evaluate(f, sigma, Q)
    except DomainError:
        with pytest.raises(DomainError):
            evaluate(reparsed, sigma, Q)
        return
    assert evaluate(reparsed, sigma, Q) == expected


class TestEquivalence:
    def test_inverse_law_verified(self):
        v = equivalent(
            parse("x * inv(x)"),
            parse("1"),
            EquivalenceConfig(dims=(1, 2), samples=5, seed=3),
        )
        assert v.status == VERIFIED

    def test_commutator_counterexample_at_dim_two(self):
        v = equivalent(
            parse("x * y"),
            parse("y * x"),
            EquivalenceConfig(dims=(2,), samples=20, seed=3),
        )
        assert v.status == COUNTEREXAMPLE
        assert v.counterexample["d"] == 2
        replayed = replay_equivalence(parse("x * y"), parse("y * x"), v.counterexample)
        assert replayed["lhs"] == v.counterexample["lhs"]
        assert replayed["rhs"] == v.counterexample["rhs"]

    def test_commutative_dimension_cannot_distinguish(self):
        v = equivalent(
            parse("x * y"),
            parse("y * x"),
            EquivalenceConfig(dims=(1,), samples=20, seed=3),
        )
        assert v.status == VERIFIED

    def test_brute_force_small_entries_find_noncommuting_pair(self):
        # exhaustive oracle behind the counterexample above: some pair of
        # 2x2 integer matrices with entries in {0,1} already fails to commute
        M2 = SquareMatrices(2)
        found = False
        cells = list(itertools.product((0, 1), repeat=4))
        for a in cells:
            for b in cells:
                A = M2.deserialize([[str(a[0]), str(a[1])], [str(a[2]), str(a[3])]])
                B = M2.deserialize([[str(b[0]), str(b[1])], [str(b[2]), str(b[3])]])
                if A * B != B * A:
                    found = True
                    break
            if found:
                break
        assert found

    def test_degenerate_domain_exhausts(self):
        v = equivalent(
            inv(var("x") - var("x")),
            parse("1"),
            EquivalenceConfig(dims=(1,), samples=2, resample_limit=5, seed=3),
        )
        assert v.status == DOMAIN_EXHAUSTED

    def test_same_seed_same_verdict(self):
        cfg = EquivalenceConfig(dims=(1, 2), samples=6, seed=99)
        a = equivalent(parse("x + y"), parse("y + x"), cfg)
        b = equivalent(parse("x + y"), parse("y + x"), cfg)
        assert a.to_json() == b.to_json()
