from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qrucible.cyclotomic import CycRat, OMEGA, OMEGA2, ONE, ZERO, omega_power, render
from qrucible.errors import DivisionByZero

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=8)
elements = st.builds(CycRat, rationals, rationals)


def test_add_basis():
    assert CycRat(1) + OMEGA == CycRat(1, 1)


def test_add_identity():
    x = CycRat(Fraction(3, 7), Fraction(-2, 5))
    assert x + ZERO == x


def test_omega_squared_reduction():
    # w^2 = -1 - w, so 1 + w + w^2 = 0 and (1+w) + (-w) = 1
    assert ONE + OMEGA + OMEGA2 == ZERO
    assert OMEGA2 == CycRat(-1, -1)
    assert CycRat(1, 1) + (-OMEGA) == ONE


def test_mul_examples():
    assert CycRat(1, 1) * CycRat(1, 1) == OMEGA  # (1+w)^2 = w
    assert OMEGA * OMEGA * OMEGA == ONE
    assert CycRat(1, 1) * (-OMEGA2) == OMEGA


def test_inv_examples():
    assert OMEGA.inv() == OMEGA2
    assert CycRat(2).inv() == CycRat(Fraction(1, 2))
    assert CycRat(1, 1).inv() == -OMEGA  # (1+w)(-w) = 1


def test_inv_zero_raises():
    with pytest.raises(DivisionByZero):
        ZERO.inv()


def test_omega_power_cycle():
    assert [omega_power(k) for k in range(6)] == [ONE, OMEGA, OMEGA2, ONE, OMEGA, OMEGA2]


def test_render():
    assert render(CycRat(Fraction(1, 2), Fraction(3, 4))) == "1/2 + 3/4*w"
    assert render(OMEGA2) == "-1 - w"
    assert render(CycRat(5)) == "5"
    assert render(OMEGA) == "w"
    assert render(-OMEGA) == "-w"
    assert render(ZERO) == "0"


@given(elements, elements, elements)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


@given(elements)
def test_inverse_axiom(x):
    if x:
        assert x * x.inv() == ONE
    assert x + (-x) == ZERO


@given(elements, elements)
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()


@given(elements)
def test_conjugate_is_omega_squared_substitution(x):
    # N(x) = x * conj(x) as rationals
    p = x * x.conj()
    assert p.om == 0 and p.re == x.norm()
