from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capelli.poly import CommutativePolynomial
from capelli.weyl import (
    WeylElement,
    weyl_apply,
    weyl_commutator,
    weyl_product,
    weyl_symbol,
    x_monomial,
)

S11 = (1, 1)
x = WeylElement.x(S11, 1, 1)
d = WeylElement.d(S11, 1, 1)


def xpow(m):
    return x_monomial(S11, {(1, 1): m})


def test_defining_relation():
    assert weyl_product(d, x) == x * d + 1
    assert str(d * x) == "x[1,1]*d[1,1] + 1"
    assert weyl_commutator(d, x) == 1


def test_euler_square():
    e = x * d
    assert e * e == x * x * d * d + x * d
    assert weyl_commutator(e, x) == x


def test_disjoint_variables_commute():
    s = (2, 1)
    a, b = WeylElement.x(s, 1, 1), WeylElement.d(s, 2, 1)
    assert a * b == b * a
    assert len(a * b) == 1


def test_apply_examples():
    assert weyl_apply(d, xpow(3)) == xpow(2) * 3
    for m in range(6):
        assert weyl_apply(x * d, xpow(m)) == xpow(m) * m
        assert weyl_apply(x * x * d * d + x * d, xpow(m)) == xpow(m) * (m * m)


def test_apply_rejects_foreign_variables():
    with pytest.raises(ValueError):
        weyl_apply(d, CommutativePolynomial.variable(("y", 1, 1)))


def test_symbol_examples():
    xi_eta = CommutativePolynomial.monomial({("xi", 1, 1): 1, ("eta", 1, 1): 1})
    assert weyl_symbol(x * d + 1) == xi_eta
    assert weyl_symbol(x * x * d * d + x * d) == xi_eta * xi_eta


def test_shape_errors():
    with pytest.raises(IndexError):
        WeylElement.x((2, 1), 3, 1)
    with pytest.raises(ValueError):
        WeylElement.x((2, 1), 1, 1) + WeylElement.x((1, 1), 1, 1)


# random elements ---------------------------------------------------------


@st.composite
def weyl_elements(draw, shape=(2, 2), max_deg=3, max_terms=3):
    rows, cols = shape
    total = WeylElement.scalar(shape, 0)
    for _ in range(draw(st.integers(1, max_terms))):
        term = WeylElement.scalar(shape, Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 2))))
        for _ in range(draw(st.integers(0, max_deg))):
            i, a = draw(st.integers(1, rows)), draw(st.integers(1, cols))
            gen = WeylElement.x if draw(st.booleans()) else WeylElement.d
            term = term * gen(shape, i, a)
        total = total + term
    return total


@settings(max_examples=60, deadline=None)
@given(weyl_elements(), weyl_elements(), weyl_elements())
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(weyl_elements(), weyl_elements())
def test_filtration(a, b):
    if a and b:
        assert (a * b).degree() <= a.degree() + b.degree()
        comm = weyl_commutator(a, b)
        if comm:
            assert comm.degree() <= a.degree() + b.degree() - 2


@settings(max_examples=60, deadline=None)
@given(weyl_elements(), weyl_elements())
def test_symbol_multiplicative(a, b):
    if a and b:
        assert weyl_symbol(a * b) == weyl_symbol(a) * weyl_symbol(b)


@settings(max_examples=40, deadline=None)
@given(weyl_elements(shape=(1, 2)), weyl_elements(shape=(1, 2)))
def test_action_is_composition(a, b):
    bound = a.order() + b.order() + 1
    for e1, e2 in product(range(bound + 1), repeat=2):
        p = x_monomial((1, 2), {(1, 1): e1, (1, 2): e2})
        assert weyl_apply(a * b, p) == weyl_apply(a, weyl_apply(b, p))
