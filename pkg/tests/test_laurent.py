import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from grassmann_lg import laurent
from grassmann_lg.laurent import (LaurentPolynomial, VariableMismatchError, VariableTable,
                                  NegativeFactorExponentError)

X = ("x",)
XY = ("x", "y")


def poly(names, terms):
    return LaurentPolynomial(names, terms)


def naive_mul(f, g):
    out = {}
    for (e1, c1), (e2, c2) in itertools.product(f.items(), g.items()):
        e = tuple(a + b for a, b in zip(e1, e2))
        out[e] = out.get(e, 0) + c1 * c2
    return LaurentPolynomial(f.variables, out)


polys2 = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    st.integers(-5, 5),
    max_size=6,
).map(lambda d: LaurentPolynomial(XY, d))


def test_square_of_x_plus_inverse():
    f = poly(X, {(1,): 1, (-1,): 1})
    assert f * f == poly(X, {(2,): 1, (0,): 2, (-2,): 1})


def test_power_zero_is_one():
    f = poly(XY, {(1, 2): 3, (-1, 0): -7})
    assert laurent.power(f, 0) == LaurentPolynomial.constant(XY, 1)


def test_binomial_power():
    f = poly(X, {(0,): 1, (1,): 1})
    p = laurent.power(f, 8)
    assert [p.coefficient((i,)) for i in range(9)] == [1, 8, 28, 56, 70, 56, 28, 8, 1]
    assert laurent.term_count(laurent.power(f, 3)) == 4


def test_zero_coefficients_are_dropped():
    f = poly(X, {(1,): 1, (0,): 0})
    assert len(f) == 1
    assert len(f - f) == 0
    assert laurent.support(f - f) == set()


def test_mismatched_tables():
    with pytest.raises(VariableMismatchError):
        laurent.mul(poly(X, {(1,): 1}), poly(("y",), {(1,): 1}))
    with pytest.raises(VariableMismatchError):
        poly(X, {(1,): 1}) + poly(("y",), {(1,): 1})


def test_duplicate_variable_names():
    with pytest.raises(ValueError):
        VariableTable(("x", "x"))


@pytest.mark.parametrize("f, expected", [
    ({(1,): 1, (-1,): 1}, 0),
    ({(2,): 1, (0,): 2, (-2,): 1}, 2),
])
def test_constant_term(f, expected):
    assert laurent.constant_term(poly(X, f)) == expected


def test_constant_term_of_cube():
    f = poly(XY, {(1, 0): 1, (0, 1): 1, (-1, -1): 1})
    monomials = list(f.items())
    brute = 0
    for triple in itertools.product(monomials, repeat=3):
        if all(sum(e[i] for e, _ in triple) == 0 for i in range(2)):
            brute += 1
    assert brute == 6
    assert laurent.constant_term(laurent.power(f, 3)) == brute


def test_support():
    f = poly(X, {(1,): 1, (-1,): 1})
    assert laurent.support(f) == {(1,), (-1,)}


def test_evaluate():
    f = poly(X, {(1,): 1, (-1,): 1})
    assert laurent.evaluate(f, {"x": 2}) == Fraction(5, 2)
    assert laurent.evaluate(LaurentPolynomial.constant(XY), {"x": 3, "y": 7}) == 1
    g = poly(XY, {(2, 0): 1, (0, 1): -1})
    assert laurent.evaluate(g, {"x": Fraction(2, 3), "y": Fraction(1, 9)}) == Fraction(1, 3)
    with pytest.raises(ZeroDivisionError):
        laurent.evaluate(f, {"x": 0})


def test_substitute_monomial():
    f = poly(XY, {(1, 0): 1, (0, 1): 1})
    # x -> x*y, y -> y
    U = [[1, 0], [1, 1]]
    assert laurent.substitute_monomial(f, U, XY) == poly(XY, {(1, 1): 1, (0, 1): 1})
    assert laurent.substitute_monomial(f, [[1, 0], [0, 1]], XY) == f
    with pytest.raises(ValueError):
        laurent.substitute_monomial(f, [[1, 0]], XY)


def test_substitute_monomial_scale():
    f = poly(X, {(1,): 2})
    assert laurent.substitute_monomial(f, [[1]], X, scale=[3]) == poly(X, {(4,): 2})


def test_substitute_scaled_simple():
    f = poly(X, {(1,): 1})
    uv = ("u", "v")
    factor = poly(uv, {(1, 0): 1, (0, 1): 1})
    out = laurent.substitute_scaled(f, [((0, 0), (1,))], [factor], uv)
    assert out == factor


def test_substitute_scaled_negative_exponent():
    f = poly(X, {(-1,): 1})
    uv = ("u", "v")
    factor = poly(uv, {(1, 0): 1, (0, 1): 1})
    with pytest.raises(NegativeFactorExponentError):
        laurent.substitute_scaled(f, [((0, 0), (1,))], [factor], uv)


@given(polys2)
def test_substitute_scaled_without_factors_is_monomial(f):
    U = [[1, 2], [0, 1]]
    images = [((1, 0), (0,)), ((2, 1), (0,))]
    dummy = LaurentPolynomial.constant(XY, 5)
    assert laurent.substitute_scaled(f, images, [dummy], XY) == \
        laurent.substitute_monomial(f, U, XY)


@given(polys2, polys2, polys2)
@settings(max_examples=60)
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f


@given(polys2, polys2)
@settings(max_examples=60)
def test_mul_matches_naive(f, g):
    assert laurent.mul(f, g) == naive_mul(f, g)
    assert laurent.mul(f, g, kernel="bigint") == naive_mul(f, g)


@given(polys2, st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=40)
def test_power_addition(f, a, b):
    assert laurent.power(f, a + b) == laurent.power(f, a) * laurent.power(f, b)
    assert laurent.power(f, a) == laurent.binary_power(f, a)


@given(polys2, polys2)
def test_constant_term_of_product(f, g):
    naive = sum(c * g.coefficient(tuple(-x for x in e)) for e, c in f.items())
    assert laurent.constant_term(f * g) == naive
    assert laurent.constant_term_of_product(f, g) == naive


def test_large_coefficients_fall_back_to_bigint():
    big = 1 << 70
    f = poly(XY, {(1, 0): big, (0, 1): 1, (-1, -1): 3, (2, -1): -big})
    g = laurent.power(f, 4)
    assert g == naive_mul(naive_mul(f, f), naive_mul(f, f))
    assert max(abs(c) for _, c in g.items()) > 1 << 63


def test_wide_exponent_box_falls_back():
    names = tuple(f"x{i}" for i in range(12))
    e = [(tuple(200 * (i == j) - 100 for j in range(12)), 1) for i in range(12)]
    f = LaurentPolynomial(names, e)
    assert laurent.mul(f, f) == naive_mul(f, f)


def test_parallel_bigint_is_deterministic():
    f = poly(XY, {(i, j): (i * 7 + j * 3) % 11 - 5 for i in range(-8, 9) for j in range(-8, 9)})
    reference = laurent.mul(f, f).to_json()
    for workers in (1, 3):
        old = laurent.PARALLEL_THRESHOLD
        laurent.PARALLEL_THRESHOLD = 10
        try:
            assert laurent.mul(f, f, workers=workers, kernel="bigint").to_json() == reference
        finally:
            laurent.PARALLEL_THRESHOLD = old


def test_json_round_trip():
    f = poly(XY, {(1, -2): 12345678901234567890123, (0, 0): -1})
    data = f.to_dict()
    assert data["terms"] == [{"e": [0, 0], "c": "-1"},
                             {"e": [1, -2], "c": "12345678901234567890123"}]
    assert LaurentPolynomial.from_json(f.to_json()) == f


def test_immutable():
    f = poly(X, {(1,): 1})
    with pytest.raises(AttributeError):
        f.variables = None
    f.terms[(5,)] = 1
    assert len(f) == 1


def test_str():
    f = poly(XY, {(1, 0): 1, (0, -1): 2, (0, 0): -1})
    assert str(f) == "x - 1 + 2/y"
