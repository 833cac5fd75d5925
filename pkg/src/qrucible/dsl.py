"""Expression language in which every registry identity is declared.

The grammar is infix with function heads so that suite files double as
readable documentation:

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    atom   := INT | 'q' | 'w' | 'w2' | 'z' | call | '(' expr ')'
    call   := 'qp' '(' expr (',' expr)* ';' expr ';' count ')'
            | 'phi' '(' '[' list ']' ';' '[' list ']' ';' expr ';' expr ')'
            | 'F' '(' expr ',' expr ',' expr ')'
            | 'theta' '(' expr ')'
            | 'ct' '{' expr '}'
            | 'rc' '(' INT ';' expr ';' expr ';' expr ')'
            | 'awp' '(' INT ';' expr, expr, expr, expr ';' expr ';' expr ')'
            | 'cgf' '(' INT ';' INT ';' expr ';' expr ')'
            | ('capparelli'|'tsum_a'|'tsum_b'|'tsum_c'|'tsum_h') '(' ')'
    count  := INT | 'inf'

`w` is the primitive cube root of unity, `w2` its square; exponents are
integers or parenthesized rationals such as q^(3/2) and q^(-1). Printing
is canonical: parse(unparse(e)) is structurally e, and unparse(parse(s))
is a fixpoint after one pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cyclotomic import CycRat, ONE, omega_power
from .errors import EvalError, MonomialExpected, ParseError, QrucibleError, UnknownSymbol
from .series import Monomial, QSeries, SeriesContext, monomial_to_series
from . import qkernel
from . import ctengine
from . import ortho


# -- AST -----------------------------------------------------------------


@dataclass(frozen=True)
class Rational:
    value: int  # nonnegative; signs and fractions are Neg/Div nodes


@dataclass(frozen=True)
class Omega:
    power: int  # 1 or 2


@dataclass(frozen=True)
class QPower:
    exp: Fraction


@dataclass(frozen=True)
class ZPower:
    deg: int


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class IntPower:
    base: object
    exp: int


@dataclass(frozen=True)
class Poch:
    args: tuple
    base: object
    count: Optional[int]  # None = inf


@dataclass(frozen=True)
class Phi:
    uppers: tuple
    lowers: tuple
    base: object
    arg: object


@dataclass(frozen=True)
class TripleF:
    u: object
    v: object
    w: object


@dataclass(frozen=True)
class NamedSum:
    name: str


@dataclass(frozen=True)
class Theta:
    z: object


@dataclass(frozen=True)
class CT:
    integrand: object


@dataclass(frozen=True)
class RogersC:
    n: int
    a: object
    base: object
    z: object


@dataclass(frozen=True)
class AWPoly:
    n: int
    a: object
    b: object
    c: object
    d: object
    base: object
    z: object


@dataclass(frozen=True)
class GenfunCoeff:
    variant: int
    n: int
    a: object
    z: object


NAMED_SUM_HEADS = ("capparelli", "tsum_a", "tsum_b", "tsum_c", "tsum_h")

_HEADS = {"qp", "phi", "F", "theta", "ct", "rc", "awp", "cgf", *NAMED_SUM_HEADS}
_KEYWORDS = {"q", "w", "w2", "z", "inf", *_HEADS}


# -- lexer ---------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # NUM IDENT STR PUNCT EOF
    value: object
    line: int
    col: int


_PUNCT = "^*/+-()[]{};,="


def tokenize(text: str) -> list:
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("NUM", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            out = []
            while j < n and text[j] != '"':
                if text[j] == "\\" and j + 1 < n:
                    out.append(text[j + 1])
                    j += 2
                else:
                    out.append(text[j])
                    j += 1
            if j >= n:
                raise ParseError("unterminated string", line, col)
            toks.append(Token("STR", "".join(out), line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch in _PUNCT:
            toks.append(Token("PUNCT", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(Token("EOF", None, line, col))
    return toks


# -- parser --------------------------------------------------------------


class Parser:
    def __init__(self, tokens: list, pos: int = 0):
        self.toks = tokens
        self.pos = pos

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def error(self, msg: str):
        t = self.peek()
        raise ParseError(msg, t.line, t.col)

    def expect(self, value: str) -> Token:
        t = self.peek()
        if t.kind == "PUNCT" and t.value == value:
            return self.next()
        self.error(f"expected {value!r}")

    def at(self, value: str) -> bool:
        t = self.peek()
        return t.kind == "PUNCT" and t.value == value

    def eat(self, value: str) -> bool:
        if self.at(value):
            self.next()
            return True
        return False

    # expression grammar

    def parse_expr(self):
        e = self.parse_term()
        while True:
            if self.eat("+"):
                e = Add(e, self.parse_term())
            elif self.eat("-"):
                e = Sub(e, self.parse_term())
            else:
                return e

    def parse_term(self):
        e = self.parse_unary()
        while True:
            if self.eat("*"):
                e = Mul(e, self.parse_unary())
            elif self.eat("/"):
                e = Div(e, self.parse_unary())
            else:
                return e

    def parse_unary(self):
        if self.eat("-"):
            return Neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if not self.at("^"):
            return base
        self.next()
        e = self.parse_exponent()
        if isinstance(base, QPower):
            return QPower(base.exp * e)
        if isinstance(base, ZPower):
            if e.denominator != 1:
                self.error("z exponent must be an integer")
            return ZPower(base.deg * int(e))
        if e.denominator != 1:
            self.error("fractional power of a non-monomial")
        return IntPower(base, int(e))

    def parse_exponent(self) -> Fraction:
        if self.eat("("):
            sign = -1 if self.eat("-") else 1
            t = self.peek()
            if t.kind != "NUM":
                self.error("expected a number in exponent")
            num = self.next().value
            den = 1
            if self.eat("/"):
                t = self.peek()
                if t.kind != "NUM":
                    self.error("expected a denominator in exponent")
                den = self.next().value
            self.expect(")")
            return Fraction(sign * num, den)
        t = self.peek()
        if t.kind == "NUM":
            return Fraction(self.next().value)
        self.error("expected an exponent")

    def parse_atom(self):
        t = self.peek()
        if t.kind == "NUM":
            return Rational(self.next().value)
        if t.kind == "PUNCT" and t.value == "(":
            self.next()
            e = self.parse_expr()
            self.expect(")")
            return e
        if t.kind != "IDENT":
            self.error("expected an expression")
        name = t.value
        if name == "q":
            self.next()
            return QPower(Fraction(1))
        if name == "w":
            self.next()
            return Omega(1)
        if name == "w2":
            self.next()
            return Omega(2)
        if name == "z":
            self.next()
            return ZPower(1)
        if name in _HEADS:
            return self.parse_call()
        raise UnknownSymbol(f"unknown symbol {name!r}", t.line, t.col)

    def parse_int(self) -> int:
        t = self.peek()
        if t.kind != "NUM":
            self.error("expected an integer")
        return self.next().value

    def parse_list(self) -> tuple:
        self.expect("[")
        items = []
        if not self.at("]"):
            items.append(self.parse_expr())
            while self.eat(","):
                items.append(self.parse_expr())
        self.expect("]")
        return tuple(items)

    def parse_call(self):
        head = self.next().value
        if head == "ct":
            self.expect("{")
            inner = self.parse_expr()
            self.expect("}")
            return CT(inner)
        self.expect("(")
        if head == "qp":
            args = [self.parse_expr()]
            while self.eat(","):
                args.append(self.parse_expr())
            self.expect(";")
            base = self.parse_expr()
            self.expect(";")
            t = self.peek()
            if t.kind == "IDENT" and t.value == "inf":
                self.next()
                count = None
            else:
                count = self.parse_int()
            self.expect(")")
            return Poch(tuple(args), base, count)
        if head == "phi":
            uppers = self.parse_list()
            self.expect(";")
            lowers = self.parse_list()
            self.expect(";")
            base = self.parse_expr()
            self.expect(";")
            arg = self.parse_expr()
            self.expect(")")
            return Phi(uppers, lowers, base, arg)
        if head == "F":
            u = self.parse_expr()
            self.expect(",")
            v = self.parse_expr()
            self.expect(",")
            w = self.parse_expr()
            self.expect(")")
            return TripleF(u, v, w)
        if head == "theta":
            zv = self.parse_expr()
            self.expect(")")
            return Theta(zv)
        if head == "rc":
            n = self.parse_int()
            self.expect(";")
            a = self.parse_expr()
            self.expect(";")
            base = self.parse_expr()
            self.expect(";")
            zv = self.parse_expr()
            self.expect(")")
            return RogersC(n, a, base, zv)
        if head == "awp":
            n = self.parse_int()
            self.expect(";")
            a = self.parse_expr()
            self.expect(",")
            b = self.parse_expr()
            self.expect(",")
            c = self.parse_expr()
            self.expect(",")
            d = self.parse_expr()
            self.expect(";")
            base = self.parse_expr()
            self.expect(";")
            zv = self.parse_expr()
            self.expect(")")
            return AWPoly(n, a, b, c, d, base, zv)
        if head == "cgf":
            v = self.parse_int()
            self.expect(";")
            n = self.parse_int()
            self.expect(";")
            a = self.parse_expr()
            self.expect(";")
            zv = self.parse_expr()
            self.expect(")")
            return GenfunCoeff(v, n, a, zv)
        if head in NAMED_SUM_HEADS:
            self.expect(")")
            return NamedSum(head)
        self.error(f"unknown head {head!r}")


def parse(text: str):
    """Parse a single expression; the whole text must be consumed."""
    p = Parser(tokenize(text))
    e = p.parse_expr()
    t = p.peek()
    if t.kind != "EOF":
        raise ParseError("trailing input after expression", t.line, t.col)
    return e


# -- printer -------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_ATOM = 1, 2, 3, 4


def _prec(e) -> int:
    if isinstance(e, (Add, Sub)):
        return _PREC_ADD
    if isinstance(e, (Mul, Div)):
        return _PREC_MUL
    if isinstance(e, Neg):
        return _PREC_UNARY
    return _PREC_ATOM


def _exp_str(e: Fraction) -> str:
    if e.denominator == 1 and e >= 0:
        return str(e.numerator)
    if e.denominator == 1:
        return f"({e.numerator})"
    return f"({e.numerator}/{e.denominator})"


def _wrap(e, min_prec: int) -> str:
    s = unparse(e)
    return f"({s})" if _prec(e) < min_prec else s


def unparse(e) -> str:
    """Canonical text; parse(unparse(e)) == e."""
    if isinstance(e, Rational):
        return str(e.value)
    if isinstance(e, Omega):
        return "w" if e.power == 1 else "w2"
    if isinstance(e, QPower):
        return "q" if e.exp == 1 else f"q^{_exp_str(e.exp)}"
    if isinstance(e, ZPower):
        return "z" if e.deg == 1 else f"z^{_exp_str(Fraction(e.deg))}"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, _PREC_UNARY)
    if isinstance(e, Add):
        return f"{_wrap(e.left, _PREC_ADD)}+{_wrap(e.right, _PREC_ADD + 1)}"
    if isinstance(e, Sub):
        return f"{_wrap(e.left, _PREC_ADD)}-{_wrap(e.right, _PREC_ADD + 1)}"
    if isinstance(e, Mul):
        return f"{_wrap(e.left, _PREC_MUL)}*{_wrap(e.right, _PREC_MUL + 1)}"
    if isinstance(e, Div):
        return f"{_wrap(e.left, _PREC_MUL)}/{_wrap(e.right, _PREC_MUL + 1)}"
    if isinstance(e, IntPower):
        return f"{_wrap(e.base, _PREC_ATOM)}^{_exp_str(Fraction(e.exp))}"
    if isinstance(e, Poch):
        args = ", ".join(unparse(a) for a in e.args)
        count = "inf" if e.count is None else str(e.count)
        return f"qp({args}; {unparse(e.base)}; {count})"
    if isinstance(e, Phi):
        ups = ", ".join(unparse(a) for a in e.uppers)
        los = ", ".join(unparse(a) for a in e.lowers)
        return f"phi([{ups}]; [{los}]; {unparse(e.base)}; {unparse(e.arg)})"
    if isinstance(e, TripleF):
        return f"F({unparse(e.u)}, {unparse(e.v)}, {unparse(e.w)})"
    if isinstance(e, NamedSum):
        return f"{e.name}()"
    if isinstance(e, Theta):
        return f"theta({unparse(e.z)})"
    if isinstance(e, CT):
        return f"ct{{{unparse(e.integrand)}}}"
    if isinstance(e, RogersC):
        return f"rc({e.n}; {unparse(e.a)}; {unparse(e.base)}; {unparse(e.z)})"
    if isinstance(e, AWPoly):
        parts = ", ".join(unparse(x) for x in (e.a, e.b, e.c, e.d))
        return f"awp({e.n}; {parts}; {unparse(e.base)}; {unparse(e.z)})"
    if isinstance(e, GenfunCoeff):
        return f"cgf({e.variant}; {e.n}; {unparse(e.a)}; {unparse(e.z)})"
    raise TypeError(f"not an expression node: {e!r}")


# -- elaboration ---------------------------------------------------------


def _const_fold(e) -> dict:
    """Fold a z-free constant expression to {exponent: coefficient}."""
    if isinstance(e, Rational):
        return {Fraction(0): CycRat(e.value)}
    if isinstance(e, Omega):
        return {Fraction(0): omega_power(e.power)}
    if isinstance(e, QPower):
        return {e.exp: ONE}
    if isinstance(e, Neg):
        return {k: -v for k, v in _const_fold(e.arg).items()}
    if isinstance(e, (Add, Sub)):
        out = dict(_const_fold(e.left))
        sgn = 1 if isinstance(e, Add) else -1
        for k, v in _const_fold(e.right).items():
            cur = out.get(k)
            out[k] = (cur + sgn * v) if cur is not None else sgn * v
        return {k: v for k, v in out.items() if v}
    if isinstance(e, Mul):
        lf, rf = _const_fold(e.left), _const_fold(e.right)
        out = {}
        for k1, v1 in lf.items():
            for k2, v2 in rf.items():
                k = k1 + k2
                p = v1 * v2
                out[k] = out[k] + p if k in out else p
        return {k: v for k, v in out.items() if v}
    if isinstance(e, Div):
        rf = _const_fold(e.right)
        if len(rf) != 1:
            raise MonomialExpected(f"non-monomial divisor: {unparse(e.right)}")
        (k2, v2), = rf.items()
        inv = v2.inv()
        return {k1 - k2: v1 * inv for k1, v1 in _const_fold(e.left).items()}
    if isinstance(e, IntPower):
        base = _const_fold(e.base)
        if len(base) == 1 and e.exp < 0:
            (k, v), = base.items()
            return {k * e.exp: v ** e.exp}
        if e.exp < 0:
            raise MonomialExpected("negative power of a non-monomial constant")
        out = {Fraction(0): ONE}
        for _ in range(e.exp):
            nxt = {}
            for k1, v1 in out.items():
                for k2, v2 in base.items():
                    k = k1 + k2
                    p = v1 * v2
                    nxt[k] = nxt[k] + p if k in nxt else p
            out = {k: v for k, v in nxt.items() if v}
        return out
    raise MonomialExpected(f"not a constant expression: {unparse(e)}")


def as_monomial(e) -> Monomial:
    """Fold a parameter expression to a single monomial c*q^e."""
    folded = _const_fold(e)
    if not folded:
        return Monomial(0)
    if len(folded) != 1:
        raise MonomialExpected(f"expected a monomial, got {unparse(e)}")
    (k, v), = folded.items()
    return Monomial(v, k)


def _as_z_monomial(e):
    """Fold a ct-integrand atom to (coeff, q-exponent, z-degree)."""
    if isinstance(e, ZPower):
        return (ONE, Fraction(0), e.deg)
    if isinstance(e, Mul):
        c1, q1, d1 = _as_z_monomial(e.left)
        c2, q2, d2 = _as_z_monomial(e.right)
        return (c1 * c2, q1 + q2, d1 + d2)
    if isinstance(e, Div):
        c1, q1, d1 = _as_z_monomial(e.left)
        c2, q2, d2 = _as_z_monomial(e.right)
        return (c1 / c2, q1 - q2, d1 - d2)
    if isinstance(e, Neg):
        c, qe, d = _as_z_monomial(e.arg)
        return (-c, qe, d)
    if isinstance(e, IntPower):
        c, qe, d = _as_z_monomial(e.base)
        return (c ** e.exp, qe * e.exp, d * e.exp)
    m = as_monomial(e)
    return (m.coeff, m.exp, 0)


def _collect_ct(e, inverted, families, scalars, shifts):
    """Split a multiplicative integrand into Pochhammer families in z,
    scalar factors, and bare z-monomial shifts."""
    if isinstance(e, Mul):
        _collect_ct(e.left, inverted, families, scalars, shifts)
        _collect_ct(e.right, inverted, families, scalars, shifts)
        return
    if isinstance(e, Div):
        _collect_ct(e.left, inverted, families, scalars, shifts)
        _collect_ct(e.right, not inverted, families, scalars, shifts)
        return
    if isinstance(e, Poch):
        base = as_monomial(e.base)
        for arg in e.args:
            c, qe, d = _as_z_monomial(arg)
            if d == 0:
                scalars.append((Poch((arg,), e.base, e.count), inverted))
            else:
                families.append(
                    ctengine.ZPochFamily(c, qe, d, base, inverted, e.count)
                )
        return
    c, qe, d = _as_z_monomial(e)
    if d == 0:
        scalars.append((e, inverted))
    else:
        shifts.append((Monomial(c, qe), d, inverted))


def elaborate(e, ctx: SeriesContext, _path: str = "") -> QSeries:
    """Recursive evaluation through the kernel; errors carry the AST path."""
    try:
        return _elaborate(e, ctx, _path or type(e).__name__)
    except EvalError:
        raise
    except QrucibleError as exc:
        raise EvalError(_path or type(e).__name__, exc) from exc


def _elaborate(e, ctx, path) -> QSeries:
    def sub(child, tag):
        return elaborate(child, ctx, f"{path}.{tag}")

    if isinstance(e, (Rational, Omega, QPower)):
        return monomial_to_series(as_monomial(e), ctx)
    if isinstance(e, Neg):
        return -sub(e.arg, "arg")
    if isinstance(e, Add):
        return sub(e.left, "left") + sub(e.right, "right")
    if isinstance(e, Sub):
        return sub(e.left, "left") - sub(e.right, "right")
    if isinstance(e, Mul):
        return sub(e.left, "left") * sub(e.right, "right")
    if isinstance(e, Div):
        num = sub(e.left, "left")
        den = sub(e.right, "right")
        return num * _wrap_err(den.inverse, path)
    if isinstance(e, IntPower):
        base = sub(e.base, "base")
        k = e.exp
        if k < 0:
            base = _wrap_err(base.inverse, path)
            k = -k
        out = ctx.one()
        for _ in range(k):
            out = out * base
        return out
    if isinstance(e, Poch):
        base = as_monomial(e.base)
        args = [as_monomial(a) for a in e.args]
        return qkernel.pochhammer_multi(args, base, e.count, ctx)
    if isinstance(e, Phi):
        return qkernel.phi_series(
            [as_monomial(a) for a in e.uppers],
            [as_monomial(a) for a in e.lowers],
            as_monomial(e.base),
            as_monomial(e.arg),
            ctx,
        )
    if isinstance(e, TripleF):
        return qkernel.f_triple(
            as_monomial(e.u), as_monomial(e.v), as_monomial(e.w), ctx
        )
    if isinstance(e, NamedSum):
        spec = qkernel.NAMED_SUMS[e.name](ctx)
        return qkernel.multisum(spec, ctx)
    if isinstance(e, Theta):
        return qkernel.theta_sum(as_monomial(e.z), ctx)
    if isinstance(e, CT):
        return _elaborate_ct(e, ctx, path)
    if isinstance(e, RogersC):
        p = ortho.RogersParam(as_monomial(e.a), as_monomial(e.base))
        return ctengine.zsubst(ortho.rogers_poly(e.n, p, ctx), as_monomial(e.z))
    if isinstance(e, AWPoly):
        p = ortho.AWParam(
            as_monomial(e.a), as_monomial(e.b), as_monomial(e.c),
            as_monomial(e.d), as_monomial(e.base),
        )
        return ctengine.zsubst(ortho.aw_poly(e.n, p, ctx), as_monomial(e.z))
    if isinstance(e, GenfunCoeff):
        coeffs = ortho.genfun_lhs(e.variant, as_monomial(e.a), e.n, ctx)
        return ctengine.zsubst(coeffs[e.n], as_monomial(e.z))
    raise MonomialExpected(f"cannot elaborate node {type(e).__name__}")


def _wrap_err(fn, path):
    try:
        return fn()
    except EvalError:
        raise
    except QrucibleError as exc:
        raise EvalError(path, exc) from exc


def _elaborate_ct(e: CT, ctx, path) -> QSeries:
    families: list = []
    scalars: list = []
    shifts: list = []
    _collect_ct(e.integrand, False, families, scalars, shifts)
    degree = 0
    shift_mono = Monomial(1, 0)
    for m, d, inverted in shifts:
        if inverted:
            degree += d
            shift_mono = shift_mono * m.inv()
        else:
            degree -= d
            shift_mono = shift_mono * m
    if families:
        ct = ctengine.ct_product(families, ctx, degree=degree)
    else:
        ct = ctx.one() if degree == 0 else ctx.zero()
    out = ct.mul_monomial(shift_mono.coeff, ctx.scale(shift_mono.exp))
    for node, inverted in scalars:
        s = elaborate(node, ctx, f"{path}.scalar")
        out = out * (_wrap_err(s.inverse, path) if inverted else s)
    return out
