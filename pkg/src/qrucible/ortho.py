"""Rogers (continuous q-ultraspherical) and Askey-Wilson polynomials as
symmetric z-Laurent objects, their generating functions, and the
transformation identities built on them.

x is never a first-class variable: every polynomial lives in z with
x = (z + 1/z)/2 implicit. The generating-function machinery treats t as
an outer formal variable truncated at a small order, with z-Laurent
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cyclotomic import CycRat, OMEGA, ONE
from .errors import ZeroDenominator
from .series import (
    Monomial,
    QSeries,
    SeriesContext,
    div_binomial,
    first_mismatch,
    mono,
    monomial_to_series,
    mul_binomial,
    qpow,
)
from .qkernel import phi_series, poch
from .ctengine import ZSeries, zmul, zs_one, zsubst

_Q = qpow(1)


@dataclass(frozen=True)
class RogersParam:
    a: Monomial
    base: Monomial


@dataclass(frozen=True)
class AWParam:
    a: Monomial
    b: Monomial
    c: Monomial
    d: Monomial
    base: Monomial


def _poch_ratio_chain(a: Monomial, base: Monomial, n: int, ctx) -> list:
    """[ (a;b)_k / (b;b)_k for k = 0..n ] as exact series."""
    eb = ctx.scale(base.exp)
    ea = ctx.scale(a.exp)
    out = [ctx.one()]
    for k in range(n):
        r = mul_binomial(out[-1], a.coeff * base.coeff ** k, ea + k * eb)
        r = div_binomial(r, base.coeff ** (k + 1), (k + 1) * eb)
        out.append(r)
    return out


def rogers_poly(n: int, p: RogersParam, ctx: SeriesContext) -> ZSeries:
    """C_n(x; a | b) = sum_k (a;b)_k (a;b)_(n-k) / ((b;b)_k (b;b)_(n-k)) z^(n-2k)."""
    r = _poch_ratio_chain(p.a, p.base, n, ctx)
    terms = {}
    for k in range(n + 1):
        d = n - 2 * k
        c = r[k] * r[n - k]
        terms[d] = terms[d] + c if d in terms else c
    return ZSeries(ctx, terms)


def _z_binomial(ctx, coeff: CycRat, qe: int, zdeg: int) -> ZSeries:
    return ZSeries(ctx, {0: ctx.one(), zdeg: ctx.monomial(-coeff, qe)})


def aw_poly(n: int, p: AWParam, ctx: SeriesContext) -> ZSeries:
    """Askey-Wilson p_n via its generating function:

        p_n = (q,ab,cd;q)_n sum_k (az,bz;q)_k (c/z,d/z;q)_(n-k)
              / ((q,ab;q)_k (q,cd;q)_(n-k)) z^(n-2k).
    """
    b = p.base
    eb = ctx.scale(b.exp)
    ab = p.a * p.b
    cd = p.c * p.d
    for m, label in ((ab, "ab"), (cd, "cd")):
        if m.is_zero():
            continue
        j = -m.exp / b.exp
        if j.denominator == 1 and 0 <= j < n and m.coeff * b.coeff ** int(j) == ONE:
            raise ZeroDenominator(f"({label}; base)_k vanishes for k <= {n}")

    one = zs_one(ctx)
    front = [one]
    back = [one]
    for k in range(n):
        step = _z_binomial(ctx, p.a.coeff * b.coeff ** k, ctx.scale(p.a.exp) + k * eb, 1)
        step = zmul(step, _z_binomial(ctx, p.b.coeff * b.coeff ** k, ctx.scale(p.b.exp) + k * eb, 1))
        front.append(zmul(front[-1], step))
        stepb = _z_binomial(ctx, p.c.coeff * b.coeff ** k, ctx.scale(p.c.exp) + k * eb, -1)
        stepb = zmul(stepb, _z_binomial(ctx, p.d.coeff * b.coeff ** k, ctx.scale(p.d.exp) + k * eb, -1))
        back.append(zmul(back[-1], stepb))

    inv_q_ab = [ctx.one()]
    inv_q_cd = [ctx.one()]
    for k in range(n):
        r = div_binomial(inv_q_ab[-1], b.coeff ** (k + 1), (k + 1) * eb)
        if not ab.is_zero():
            r = div_binomial(r, ab.coeff * b.coeff ** k, ctx.scale(ab.exp) + k * eb)
        inv_q_ab.append(r)
        s = div_binomial(inv_q_cd[-1], b.coeff ** (k + 1), (k + 1) * eb)
        if not cd.is_zero():
            s = div_binomial(s, cd.coeff * b.coeff ** k, ctx.scale(cd.exp) + k * eb)
        inv_q_cd.append(s)

    acc = ZSeries(ctx, {})
    for k in range(n + 1):
        part = zmul(front[k], back[n - k]).shift(n - 2 * k)
        part = part.scale(inv_q_ab[k] * inv_q_cd[n - k])
        acc = acc + part
    pref = poch(b, b, ctx, n)
    if not ab.is_zero():
        pref = pref * poch(ab, b, ctx, n)
    if not cd.is_zero():
        pref = pref * poch(cd, b, ctx, n)
    return acc.scale(pref)


def rogers_at_minus_half(n: int, p: RogersParam, ctx: SeriesContext) -> QSeries:
    """C_n at x = -1/2, i.e. z a primitive cube root of unity."""
    return zsubst(rogers_poly(n, p, ctx), mono(OMEGA, 0))


def rogers_half_sum(n: int, p: RogersParam, ctx: SeriesContext) -> QSeries:
    """The cube-dissected form of C_n(-1/2; a | b):

        sum_l (a^3;b^3)_l (1/a;b)_(n-3l) / ((b^3;b^3)_l (b;b)_(n-3l)) a^(n-3l).
    """
    a3 = p.a ** 3
    b3 = p.base ** 3
    ainv = p.a.inv()
    acc = ctx.zero()
    for l in range(n // 3 + 1):
        m = n - 3 * l
        num = poch(a3, b3, ctx, l) * poch(ainv, p.base, ctx, m)
        den = poch(b3, b3, ctx, l) * poch(p.base, p.base, ctx, m)
        am = p.a ** m
        acc = acc + (num * den.inverse()).mul_monomial(am.coeff, ctx.scale(am.exp))
    return acc


def rogers_half_4phi3(n: int, p: RogersParam, ctx: SeriesContext) -> QSeries:
    """The balanced 4phi3 restatement of C_n(-1/2; a | b)."""
    a, b = p.a, p.base
    b3 = b ** 3
    uppers = [b ** (-n), b ** (1 - n), b ** (2 - n), a ** 3]
    lowers = [a * b ** (1 - n), a * b ** (2 - n), a * b ** (3 - n)]
    series = phi_series(uppers, lowers, b3, b3, ctx)
    an = a ** n
    pref = poch(a.inv(), b, ctx, n) * poch(b, b, ctx, n).inverse()
    return (pref * series).mul_monomial(an.coeff, ctx.scale(an.exp))


# -- generating functions in an outer formal variable t ------------------


def _t_zero(ctx) -> ZSeries:
    return ZSeries(ctx, {})


def _t_mul(A: list, B: list, t_order: int) -> list:
    out = [None] * (t_order + 1)
    for i, ai in enumerate(A):
        if ai is None:
            continue
        for j, bj in enumerate(B):
            if bj is None or i + j > t_order:
                continue
            p = zmul(ai, bj)
            out[i + j] = p if out[i + j] is None else out[i + j] + p
    return [x if x is not None else _t_zero(A[0].ctx if A else B[0].ctx) for x in out]


def _t_scale(A: list, s: QSeries) -> list:
    return [x.scale(s) for x in A]


def _t_euler_inv(x: Monomial, zdeg: int, base: Monomial, t_order, ctx) -> list:
    """1/(x z^zdeg t; base)_inf as a t-series: t^m -> x^m z^(m zdeg)/(base;base)_m."""
    out = []
    invp = ctx.one()
    eb = ctx.scale(base.exp)
    for m in range(t_order + 1):
        if m:
            invp = div_binomial(invp, base.coeff ** m, m * eb)
        xm = x ** m
        out.append(ZSeries(ctx, {m * zdeg: invp.mul_monomial(xm.coeff, ctx.scale(xm.exp))}))
    return out


def _t_euler(x: Monomial, zdeg: int, base: Monomial, t_order, ctx, t_step: int = 1) -> list:
    """(x z^zdeg t^t_step; base)_inf as a t-series:
    t^(m t_step) -> (-1)^m base^C(m,2) x^m z^(m zdeg)/(base;base)_m."""
    out = [_t_zero(ctx) for _ in range(t_order + 1)]
    invp = ctx.one()
    eb = ctx.scale(base.exp)
    m = 0
    while m * t_step <= t_order:
        if m:
            invp = div_binomial(invp, base.coeff ** m, m * eb)
        binom = m * (m - 1) // 2
        cm = (-ONE) ** m * base.coeff ** binom
        xm = x ** m
        coeff = invp.mul_monomial(cm * xm.coeff, eb * binom + ctx.scale(xm.exp))
        out[m * t_step] = ZSeries(ctx, {m * zdeg: coeff})
        m += 1
    return out


def _t_phi(uppers, lowers, base: Monomial, argmono: Monomial, arg_zdeg: int,
           t_order: int, ctx, t_step: int = 1) -> list:
    """phi whose argument carries t^t_step z^arg_zdeg; uppers are
    (monomial, zdeg) pairs expanded as z-polynomials, lowers are scalar."""
    eb = ctx.scale(base.exp)
    out = [_t_zero(ctx) for _ in range(t_order + 1)]
    num = zs_one(ctx)
    den = ctx.one()
    m = 0
    argpow = mono(1, 0)
    while m * t_step <= t_order:
        if m:
            for u, zd in uppers:
                num = zmul(num, _z_binomial(ctx, u.coeff * base.coeff ** (m - 1),
                                            ctx.scale(u.exp) + (m - 1) * eb, zd))
            den = div_binomial(den, base.coeff ** m, m * eb)
            for l in lowers:
                den = div_binomial(den, l.coeff * base.coeff ** (m - 1),
                                   ctx.scale(l.exp) + (m - 1) * eb)
            argpow = argpow * argmono
        coeff = den.mul_monomial(argpow.coeff, ctx.scale(argpow.exp))
        out[m * t_step] = num.scale(coeff).shift(m * arg_zdeg)
        m += 1
    return out


def _t_div_binomial_t2(A: list, c: CycRat, e: int, t_order: int, ctx) -> list:
    """Divide a t-series by (1 - c q^e t^2)."""
    out = list(A)
    for m in range(2, t_order + 1):
        prev = out[m - 2]
        if prev.terms:
            out[m] = out[m] + prev.scale(ctx.monomial(c, e))
    return out


def _t_phi22_sym(a: Monomial, arg: Monomial, t_order: int, ctx) -> list:
    """2phi2(tz, t/z; at, -at; base q, arg) as a t-series.

    The lower product (at, -at; q)_k collapses to (a^2 t^2; q^2)_k, a
    geometric division in t^2 per k; terms are summed until the scalar
    part q^C(k,2) arg^k passes the truncation.
    """
    earg = ctx.scale(arg.exp)
    ea = ctx.scale(a.exp)
    u = ctx.scale(1)
    acc = [_t_zero(ctx) for _ in range(t_order + 1)]
    num = [zs_one(ctx)] + [_t_zero(ctx) for _ in range(t_order)]
    den_ops = []  # (c, e) of accumulated 1/(1 - a^2 q^(2j) t^2) factors
    inv_qk = ctx.one()
    k = 0
    while True:
        sc_e = (k * (k - 1) // 2) * u + k * earg
        if k and sc_e >= ctx.order:
            break
        term = _t_scale(num, inv_qk.mul_monomial((-ONE) ** k * arg.coeff ** k, sc_e))
        for c, e in den_ops:
            term = _t_div_binomial_t2(term, c, e, t_order, ctx)
        acc = [x + y for x, y in zip(acc, term)]
        # extend (tz, t/z; q)_k and the collapsed lower product for the next k
        nxt = [_t_zero(ctx) for _ in range(t_order + 1)]
        for m, zs in enumerate(num):
            if not zs.terms:
                continue
            nxt[m] = nxt[m] + zs
            if m + 1 <= t_order:
                f = zmul(zs, ZSeries(ctx, {1: ctx.monomial(-ONE, k * u),
                                           -1: ctx.monomial(-ONE, k * u)}))
                nxt[m + 1] = nxt[m + 1] + f
                if m + 2 <= t_order:
                    g = zmul(zs, ZSeries(ctx, {0: ctx.monomial(ONE, 2 * k * u)}))
                    nxt[m + 2] = nxt[m + 2] + g
        num = nxt
        den_ops.append((a.coeff ** 2, 2 * ea + 2 * k * u))
        inv_qk = div_binomial(inv_qk, ONE, (k + 1) * u)
        k += 1
        if k > 8 * (ctx.order + 8):
            break
    return acc


def genfun_lhs(variant: int, a: Monomial, t_order: int, ctx: SeriesContext) -> list:
    """t-coefficients (each a ZSeries) of the five generating-function
    left-hand sides for the Rogers polynomials, keyed 1..5:

      1: (tq/z;q^2)/(tz;q^2) * 2phi1(az,-az; -a^2; q, t/z)
      2: (-t/z;q)/(tz;q)     * 2phi1(az^2,az^2 q; a^2 q; q^2, t^2/z^2)
      3: 2phi1(az,-az; -a^2; q, t/z) * 2phi1(aq^(1/2)/z,-aq^(1/2)/z; -a^2 q; q, tz)
      4: (a^2 t^2;q^2) / ((-a^2;q) (tz,t/z;q^2)) * 2phi2(tz,t/z; at,-at; q, -a^2)
      5: as 4 with -a^2 q^(-1) in place of -a^2
    """
    q = _Q
    q2 = qpow(2)
    a2 = a ** 2
    if variant == 1:
        A = _t_euler(qpow(1), -1, q2, t_order, ctx)
        B = _t_euler_inv(mono(1, 0), 1, q2, t_order, ctx)
        C = _t_phi([(a, 1), (-a, 1)], [-a2], q, mono(1, 0), -1, t_order, ctx)
        return _t_mul(_t_mul(A, B, t_order), C, t_order)
    if variant == 2:
        A = _t_euler(mono(-1, 0), -1, q, t_order, ctx)
        B = _t_euler_inv(mono(1, 0), 1, q, t_order, ctx)
        C = _t_phi([(a, 2), (a * q, 2)], [a2 * q], q2, mono(1, 0), -2,
                   t_order, ctx, t_step=2)
        return _t_mul(_t_mul(A, B, t_order), C, t_order)
    if variant == 3:
        ah = a * Monomial(ONE, Fraction(1, 2))
        A = _t_phi([(a, 1), (-a, 1)], [-a2], q, mono(1, 0), -1, t_order, ctx)
        B = _t_phi([(ah, -1), (-ah, -1)], [-a2 * q], q, mono(1, 0), 1, t_order, ctx)
        return _t_mul(A, B, t_order)
    if variant in (4, 5):
        shift = mono(1, 0) if variant == 4 else qpow(-1)
        arg = -(a2 * shift)
        A = _t_euler(a2, 0, q2, t_order, ctx, t_step=2)
        B = _t_euler_inv(mono(1, 0), 1, q2, t_order, ctx)
        C = _t_euler_inv(mono(1, 0), -1, q2, t_order, ctx)
        D = _t_phi22_sym(a, arg, t_order, ctx)
        pref = poch(arg, q, ctx).inverse()
        out = _t_mul(_t_mul(_t_mul(A, B, t_order), C, t_order), D, t_order)
        return _t_scale(out, pref)
    raise ValueError(f"unknown generating-function variant {variant}")


def genfun_rhs_coeff(variant: int, n: int, a: Monomial, ctx: SeriesContext) -> ZSeries:
    """The stated multiple of a Rogers polynomial at t^n for each variant."""
    q = _Q
    q2 = qpow(2)
    a2 = a ** 2
    if variant in (1, 4):
        num = poch(a2 * q, q2, ctx, n)
        den = poch(a2 ** 2, q2, ctx, n)
        cn = rogers_poly(n, RogersParam(a2, q2), ctx)
    elif variant == 2:
        num = poch(-a, q, ctx, n)
        den = poch(a2, q, ctx, n)
        cn = rogers_poly(n, RogersParam(a, q), ctx)
    elif variant == 3:
        h = Monomial(ONE, Fraction(1, 2))
        num = poch(a2 * h, q, ctx, n) * poch(-(a2 * h), q, ctx, n)
        den = poch(-(a2 * q), q, ctx, n) * poch(a2 ** 2, q, ctx, n)
        cn = rogers_poly(n, RogersParam(a2, q), ctx)
    elif variant == 5:
        num = poch(a2 * qpow(-1), q2, ctx, n)
        den = poch(a2 ** 2 * qpow(-2), q2, ctx, n)
        cn = rogers_poly(n, RogersParam(a2, q2), ctx)
    else:
        raise ValueError(f"unknown generating-function variant {variant}")
    return cn.scale(num * den.inverse())


# -- transformation identities -------------------------------------------


@dataclass
class TransformReport:
    name: str
    lhs: QSeries
    rhs: QSeries
    order: int
    mismatch: Optional[tuple]

    @property
    def ok(self) -> bool:
        return self.mismatch is None


def _prod(ctx, *specs) -> QSeries:
    """Product of (arg; base)_inf over (arg, base) pairs."""
    acc = ctx.one()
    for arg, base in specs:
        acc = acc * poch(arg, base, ctx)
    return acc


def _one_minus(ctx, m: Monomial) -> QSeries:
    return ctx.one() - monomial_to_series(m, ctx)


TRANSFORMS = {}


def _register(name):
    def wrap(fn):
        TRANSFORMS[name] = fn
        return fn
    return wrap


@_register("sextic_a")
def _sextic_a(s, ctx):
    a = s["a"]
    q, q2, q6 = _Q, qpow(2), qpow(6)
    w, w2 = mono(OMEGA, 0), mono(OMEGA, 0) ** 2
    a2, a4, a6 = a ** 2, a ** 4, a ** 6
    lhs = phi_series([a * w, -(a * w)], [-a2], q, a2 * qpow(-1) * w2, ctx)
    pref = _prod(ctx, (a6, q2), (a6 * qpow(-3), q6)) * _prod(
        ctx, (a2 * qpow(-1) * w2, q), (a4 * qpow(-1), q)
    ).inverse()
    rhs = pref * phi_series(
        [a2 * q, a2 * qpow(3), a2 * qpow(5)],
        [a6 * q2, a6 * qpow(4)],
        q6, a6 * qpow(-3), ctx)
    return lhs, rhs


@_register("sextic_b")
def _sextic_b(s, ctx):
    a = s["a"]
    q, q2, q3 = _Q, qpow(2), qpow(3)
    w, w2 = mono(OMEGA, 0), mono(OMEGA, 0) ** 2
    a2, a3, a4 = a ** 2, a ** 3, a ** 4
    lhs = phi_series([a * w, a * q * w], [a2 * q], q2, a2 * w2, ctx)
    pref = _prod(ctx, (a3, q), (-a3, q3)) * _prod(ctx, (a2 * w2, q2), (a4, q2)).inverse()
    rhs = pref * phi_series([-a, -(a * q), -(a * q2)], [a3 * q, a3 * q2], q3, -a3, ctx)
    return lhs, rhs


@_register("sextic_c")
def _sextic_c(s, ctx):
    a = s["a"]
    q, q6 = _Q, qpow(6)
    w, w2 = mono(OMEGA, 0), mono(OMEGA, 0) ** 2
    a2, a3, a4, a6 = a ** 2, a ** 3, a ** 4, a ** 6
    qi = qpow(-1)
    lhs = phi_series([a2 * qi * w, a2 * qi * w2], [a3 * qi, -(a3 * qi)], q,
                     -(a2 * qi), ctx)
    pref = _prod(ctx, (-(a2 * qi), q), (a6 * qpow(-3), q6)) * poch(
        a4 * qpow(-2), q, ctx).inverse()
    rhs = pref * phi_series(
        [a2 * qi, a2 * q, a2 * qpow(3)],
        [a6 * qpow(-2), a6 * qpow(2)],
        q6, a6 * qpow(-3), ctx)
    return lhs, rhs


@_register("sextic_d")
def _sextic_d(s, ctx):
    a = s["a"]
    q, q6 = _Q, qpow(6)
    w, w2 = mono(OMEGA, 0), mono(OMEGA, 0) ** 2
    a2, a3, a4, a6 = a ** 2, a ** 3, a ** 4, a ** 6
    lhs = phi_series(
        [a2 * qpow(-3) * w, a2 * qpow(-3) * w2],
        [a3 * qpow(-3), -(a3 * qpow(-3))],
        q, -(a2 * qpow(-1)), ctx)
    den = (
        _one_minus(ctx, a2 * qpow(-3))
        * _one_minus(ctx, a6 * qpow(-6))
        * poch(a4 * qpow(-3), q, ctx)
    )
    pref = _prod(ctx, (-(a2 * qpow(-1)), q), (a6 * qpow(-9), q6)) * den.inverse()
    phi1 = phi_series(
        [a2 * qpow(-1), a2 * q, a2 * qpow(3)],
        [a6 * qpow(-4), a6 * qpow(-2)],
        q6, a6 * qpow(-9), ctx)
    phi2 = phi_series(
        [a2 * q, a2 * qpow(3), a2 * qpow(5)],
        [a6 * qpow(-2), a6 * qpow(2)],
        q6, a6 * qpow(-9), ctx)
    corr = _one_minus(ctx, a2 * qpow(-1)) * _one_minus(ctx, a6 * qpow(-4)).inverse()
    inner = phi1 - monomial_to_series(a2 * qpow(-3), ctx) * corr * phi2
    return lhs, pref * inner


@_register("quadratic_a")
def _quadratic_a(s, ctx):
    a, z, t = s["a"], s["z"], s["t"]
    q, q2 = _Q, qpow(2)
    a2 = a ** 2
    lhs = phi_series([a * z, -(a * z)], [-a2], q, t * z.inv(), ctx)
    pref = poch(a2 * t * z * q, q2, ctx) * poch(t * q * z.inv(), q2, ctx).inverse()
    rhs = pref * phi_series(
        [a2, a2 * q, a2 * z ** 2], [a2 ** 2, a2 * t * z * q], q2, t * z.inv(), ctx)
    return lhs, rhs


@_register("quadratic_jain")
def _quadratic_jain(s, ctx):
    a, z, t = s["a"], s["z"], s["t"]
    q, q2 = _Q, qpow(2)
    a2, z2 = a ** 2, z ** 2
    lhs = phi_series([a * z2, a * z2 * q], [a2 * q], q2, (t * z.inv()) ** 2, ctx)
    pref = poch(-(a * t * z), q, ctx) * poch(-(t * z.inv()), q, ctx).inverse()
    rhs = pref * phi_series([a, -a, a * z2], [a2, -(a * t * z)], q, t * z.inv(), ctx)
    return lhs, rhs


@_register("quartic")
def _quartic(s, ctx):
    a, t = s["a"], s["t"]
    q, q2, q4 = _Q, qpow(2), qpow(4)
    a2 = a ** 2
    lhs = phi_series([a, -a], [a2], q, t, ctx)
    pref = poch(-t, q2, ctx) * poch(t * q, q2, ctx).inverse()
    rhs = pref * phi_series(
        [-(a2 * q), -(a2 * qpow(3))], [a2 ** 2 * q2], q4, t ** 2, ctx)
    return lhs, rhs


@_register("koornwinder1")
def _koorn1(s, ctx):
    a, t = s["a"], s["t"]
    q, q2 = _Q, qpow(2)
    a2 = a ** 2
    lhs = phi_series([a, -a], [a2], q, t, ctx)
    rhs = poch(-t, q, ctx) * phi_series(
        [mono(0), mono(0)], [a2 * q], q2, t ** 2, ctx)
    return lhs, rhs


@_register("koornwinder2")
def _koorn2(s, ctx):
    a, t = s["a"], s["t"]
    q, q2 = _Q, qpow(2)
    a2 = a ** 2
    lhs = phi_series([a, -a], [a2], q, t, ctx)
    rhs = poch(t, q, ctx).inverse() * phi_series(
        [], [a2 * q], q2, a2 * t ** 2 * q, ctx)
    return lhs, rhs


@_register("gs_analytic1")
def _gs1(s, ctx):
    a, c, x = s["a"], s["c"], s["x"]
    q, q2 = _Q, qpow(2)
    a2, c2 = a ** 2, c ** 2
    lhs = phi_series([a, -a], [-c], q, c * x, ctx)
    t1 = (
        poch(a2 * x, q2, ctx)
        * poch(x, q2, ctx).inverse()
        * phi_series([c, c * q, a2], [c2, q2 * x.inv()], q2, qpow(2), ctx)
    )
    t2 = (
        _prod(ctx, (a2, q2), (c2 * x, q2))
        * (_prod(ctx, (-c, q), (c * x, q)) * poch(x.inv(), q2, ctx)).inverse()
        * phi_series([c * x, c * q * x, a2 * x], [c2 * x, q2 * x], q2, qpow(2), ctx)
    )
    return lhs, t1 + t2


@_register("gs_analytic2")
def _gs2(s, ctx):
    a, c, x = s["a"], s["c"], s["x"]
    q, q2 = _Q, qpow(2)
    c2 = c ** 2
    lhs = phi_series([a, a * q], [c2 * q], q2, (c * x) ** 2, ctx)
    t1 = (
        poch(a * x, q, ctx)
        * poch(x, q, ctx).inverse()
        * phi_series([c, -c, a], [c2, q * x.inv()], q, qpow(1), ctx)
    )
    t2 = (
        _prod(ctx, (a, q), (c2 * x, q))
        * (_prod(ctx, (c2 * q, q2), (c2 * x ** 2, q2)) * poch(x.inv(), q, ctx)).inverse()
        * phi_series([c * x, -(c * x), a * x], [c2 * x, q * x], q, qpow(1), ctx)
    )
    return lhs, t1 + t2


def transform_check(name: str, spec: dict, ctx: SeriesContext) -> TransformReport:
    """Expand both sides of a named transformation at monomial parameters
    and compare exactly to the context order."""
    builder = TRANSFORMS[name]
    lhs, rhs = builder(spec, ctx)
    order = min(lhs.trunc, rhs.trunc, ctx.order)
    return TransformReport(name, lhs, rhs, order, first_mismatch(lhs, rhs, order))
