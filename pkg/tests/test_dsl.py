import random
from fractions import Fraction

import pytest

from qrucible.cyclotomic import CycRat, OMEGA2, ONE
from qrucible.dsl import (
    AWPoly,
    Add,
    CT,
    Div,
    GenfunCoeff,
    IntPower,
    Mul,
    NamedSum,
    Neg,
    Omega,
    Phi,
    Poch,
    QPower,
    Rational,
    RogersC,
    Sub,
    Theta,
    TripleF,
    ZPower,
    as_monomial,
    elaborate,
    parse,
    unparse,
)
from qrucible.errors import EvalError, MonomialExpected, ParseError, UnknownSymbol
from qrucible.series import SeriesContext, equal_to_order


def test_parse_poch():
    assert parse("qp(q;q;inf)") == Poch((QPower(Fraction(1)),), QPower(Fraction(1)), None)
    assert parse("qp(q; q; 3)").count == 3


def test_parse_monomial_product():
    assert parse("q^(3/2)*w2") == Mul(QPower(Fraction(3, 2)), Omega(2))


def test_parse_phi_head():
    e = parse("phi([q^(3/4)*w, -q^(3/4)*w]; [-q^(3/2)]; q; q^(1/2)*w2)")
    assert isinstance(e, Phi)
    assert len(e.uppers) == 2 and len(e.lowers) == 1
    assert e.uppers[1] == Mul(Neg(QPower(Fraction(3, 4))), Omega(1))


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse("qp(q; q; ")
    assert err.value.line == 1 and err.value.col >= 9
    with pytest.raises(UnknownSymbol):
        parse("frobnicate + 1")
    with pytest.raises(ParseError):
        parse("1 + ")
    with pytest.raises(ParseError):
        parse("1 1")


def test_print_examples():
    assert unparse(Poch((QPower(Fraction(1)),), QPower(Fraction(1)), None)) == "qp(q; q; inf)"
    assert unparse(parse("q^(-1)")) == "q^(-1)"
    assert unparse(parse("-q")) == "-q"
    assert unparse(parse("1/2")) == "1/2"


def test_print_is_idempotent_on_registry():
    from qrucible.harness import load_registry

    for case in load_registry():
        for text in (case.lhs_text, case.rhs_text):
            assert unparse(parse(text)) == text


def _gen(rng: random.Random, depth: int):
    leaf_kinds = ("num", "q", "w", "z")
    kinds = leaf_kinds if depth <= 0 else (
        "num", "q", "w", "add", "sub", "mul", "div", "neg", "pow",
        "qp", "phi", "F", "named", "theta", "ct", "rc", "awp", "cgf",
    )
    k = rng.choice(kinds)
    if k == "num":
        return Rational(rng.randint(0, 12))
    if k == "q":
        e = Fraction(rng.randint(-9, 9), rng.choice((1, 2, 4)))
        return QPower(e)
    if k == "w":
        return Omega(rng.choice((1, 2)))
    if k == "z":
        return ZPower(rng.choice((-3, -1, 1, 2)))
    sub = lambda: _gen(rng, depth - 1)
    if k == "add":
        return Add(sub(), sub())
    if k == "sub":
        return Sub(sub(), sub())
    if k == "mul":
        return Mul(sub(), sub())
    if k == "div":
        return Div(sub(), sub())
    if k == "neg":
        return Neg(sub())
    if k == "pow":
        base = sub()
        while isinstance(base, (QPower, ZPower, IntPower)):
            base = Rational(rng.randint(0, 9))
        return IntPower(base, rng.randint(-3, 5))
    if k == "qp":
        nargs = rng.randint(1, 3)
        count = None if rng.random() < 0.6 else rng.randint(0, 9)
        return Poch(tuple(sub() for _ in range(nargs)), sub(), count)
    if k == "phi":
        return Phi(
            tuple(sub() for _ in range(rng.randint(0, 3))),
            tuple(sub() for _ in range(rng.randint(0, 3))),
            sub(), sub(),
        )
    if k == "F":
        return TripleF(sub(), sub(), sub())
    if k == "named":
        return NamedSum(rng.choice(("capparelli", "tsum_a", "tsum_b", "tsum_c", "tsum_h")))
    if k == "theta":
        return Theta(sub())
    if k == "ct":
        return CT(sub())
    if k == "rc":
        return RogersC(rng.randint(0, 9), sub(), sub(), sub())
    if k == "awp":
        return AWPoly(rng.randint(0, 9), sub(), sub(), sub(), sub(), sub(), sub())
    if k == "cgf":
        return GenfunCoeff(rng.randint(1, 5), rng.randint(0, 6), sub(), sub())
    raise AssertionError(k)


def test_roundtrip_fuzz_1200_asts():
    rng = random.Random(987654)
    for i in range(1200):
        ast = _gen(rng, rng.randint(0, 6))
        text = unparse(ast)
        back = parse(text)
        assert back == ast, f"case {i}: {text}"
        assert unparse(back) == text


def test_as_monomial():
    m = as_monomial(parse("-q^(3/2)*w2"))
    assert m.coeff == -OMEGA2 and m.exp == Fraction(3, 2)
    assert as_monomial(parse("0")).is_zero()
    assert as_monomial(parse("w-w2")).coeff == CycRat(1, 2)
    with pytest.raises(MonomialExpected):
        as_monomial(parse("1+q"))


def test_elaborate_partition_gf():
    ctx = SeriesContext(1, 7)
    s = elaborate(parse("1/qp(q, q^4; q^5; inf)"), ctx)
    assert [s.coefficient(k).re for k in range(7)] == [1, 1, 1, 1, 2, 2, 3]


def test_elaborate_constant():
    ctx = SeriesContext(1, 5)
    s = elaborate(parse("2+3"), ctx)
    assert s.coefficient(0) == CycRat(5)


def test_elaborate_triple_sum_identity():
    ctx = SeriesContext(1, 40)
    lhs = elaborate(parse("F(q, 1, q^3)"), ctx)
    rhs = elaborate(parse("qp(q^3; q^12; inf)/qp(q, q^2; q^4; inf)"), ctx)
    assert equal_to_order(lhs, rhs, 40)


def test_elaborate_error_carries_path():
    ctx = SeriesContext(1, 10)
    with pytest.raises(EvalError) as err:
        elaborate(parse("1/(q-q)"), ctx)
    assert "Div" in str(err.value)
    with pytest.raises(EvalError) as err2:
        elaborate(parse("qp(q^(1/2); q; inf)"), ctx)  # off-grid exponent
    assert "Poch" in str(err2.value)


def test_elaborate_matches_direct_kernel_calls():
    # random Pochhammer/phi ASTs elaborate to exactly what the kernel
    # computes when called directly with the folded monomials
    from qrucible.qkernel import INF, phi_series, pochhammer_multi
    from qrucible.series import Monomial, mono

    rng = random.Random(5150)
    ctx = SeriesContext(1, 25)

    def rand_mono_ast(lo=-2, hi=4):
        e = rng.randint(lo, hi)
        node = QPower(Fraction(e)) if e else Rational(1)
        if rng.random() < 0.3:
            node = Mul(node, Omega(rng.choice((1, 2))))
        if rng.random() < 0.4:
            node = Neg(node)
        return node

    for _ in range(60):
        args = tuple(rand_mono_ast() for _ in range(rng.randint(1, 3)))
        base = QPower(Fraction(rng.randint(1, 3)))
        count = None if rng.random() < 0.5 else rng.randint(0, 6)
        ast = Poch(args, base, count)
        got = elaborate(ast, ctx)
        want = pochhammer_multi(
            [as_monomial(a) for a in args], as_monomial(base), count, ctx
        )
        assert equal_to_order(got, want, min(got.trunc, want.trunc))

    for _ in range(30):
        uppers = tuple(rand_mono_ast(0, 3) for _ in range(rng.randint(0, 2)))
        lowers = tuple(Neg(QPower(Fraction(rng.randint(1, 3)))) for _ in range(rng.randint(0, 2)))
        if len(uppers) > len(lowers) + 1:
            continue
        arg = QPower(Fraction(rng.randint(1, 3)))
        ast = Phi(uppers, lowers, QPower(Fraction(1)), arg)
        got = elaborate(ast, ctx)
        want = phi_series(
            [as_monomial(a) for a in uppers],
            [as_monomial(a) for a in lowers],
            as_monomial(QPower(Fraction(1))),
            as_monomial(arg),
            ctx,
        )
        assert equal_to_order(got, want, min(got.trunc, want.trunc))


def test_elaborate_ct_with_shift():
    # CT(z * P(z)) picks the z^(-1) coefficient of P
    ctx = SeriesContext(1, 12)
    picked = elaborate(parse("ct{z*qp(1/z; q; inf)}"), ctx)
    # coefficient of z^(-1) in (1/z;q)_inf is -(sum of q^j) ... leading -1
    assert picked.coefficient(0) == -ONE
