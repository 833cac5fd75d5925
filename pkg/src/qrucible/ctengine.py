"""Bivariate z-Laurent series over QSeries and constant-term extraction.

Contour integrals "separating 0 from all poles" are modeled purely
formally: each denominator factor 1/(1 - c q^e z^d) expands as the
geometric series in positive powers of z^d, numerator factors in 1/z
expand in negative powers, and the integral is the z-degree-0 coefficient
of the resulting Laurent expansion.

The z window is bounded: a term at degree n can only return to degree 0
through the theta-type 1/z factors, at a q-cost that grows quadratically
in n, so degrees beyond a computable bound W cannot touch the constant
term below the truncation. Products with negative q-exponents (q^(-1)
parameters) demote coefficients downward, so the pipeline runs at an
elevated working order (the margin) and narrows back at the end. Both
bounds are deliberately conservative; window-enlargement stability is a
tested invariant, not an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cyclotomic import CycRat, ONE
from .errors import BalanceViolated, WindowOverflow
from .series import Monomial, QSeries, SeriesContext, mono, qpow

_Q = qpow(1)

MAX_WINDOW = 512


@dataclass(frozen=True)
class ZFactor:
    """(1 - coeff * q^qexp * z^zdeg); qexp in scaled units, zdeg != 0."""

    coeff: CycRat
    qexp: int
    zdeg: int


@dataclass(frozen=True)
class ZPochFamily:
    """(coeff q^qexp z^zdeg; base)_count, optionally in the denominator."""

    coeff: CycRat
    qexp: Fraction
    zdeg: int
    base: Monomial
    inverted: bool = False
    count: Optional[int] = None  # None = infinite product


class ZSeries:
    """Laurent polynomial in z with QSeries coefficients (one context)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: SeriesContext, terms: dict):
        self.ctx = ctx
        self.terms = {d: s for d, s in terms.items() if not s.is_zero()}

    @property
    def window(self):
        if not self.terms:
            return (0, 0)
        return (min(self.terms), max(self.terms))

    def coefficient(self, deg: int) -> QSeries:
        return self.terms.get(deg, self.ctx.zero())

    def shift(self, deg: int) -> "ZSeries":
        return ZSeries(self.ctx, {d + deg: s for d, s in self.terms.items()})

    def scale(self, s: QSeries) -> "ZSeries":
        return ZSeries(self.ctx, {d: c * s for d, c in self.terms.items()})

    def __add__(self, other: "ZSeries") -> "ZSeries":
        out = dict(self.terms)
        for d, s in other.terms.items():
            out[d] = out[d] + s if d in out else s
        return ZSeries(self.ctx, out)

    def __neg__(self) -> "ZSeries":
        return ZSeries(self.ctx, {d: -s for d, s in self.terms.items()})

    def __sub__(self, other: "ZSeries") -> "ZSeries":
        return self + (-other)

    def __mul__(self, other: "ZSeries") -> "ZSeries":
        return zmul(self, other)


def zs_one(ctx: SeriesContext) -> ZSeries:
    return ZSeries(ctx, {0: ctx.one()})


def zmul(x: ZSeries, y: ZSeries) -> ZSeries:
    """Full Laurent convolution; truncations propagate per coefficient."""
    out: dict = {}
    for dx, sx in x.terms.items():
        for dy, sy in y.terms.items():
            p = sx * sy
            d = dx + dy
            out[d] = out[d] + p if d in out else p
    return ZSeries(x.ctx, out)


def zsubst(x: ZSeries, z: Monomial) -> QSeries:
    """Substitute a monomial (or root of unity) for z."""
    acc = x.ctx.zero()
    for d, s in x.terms.items():
        zm = z ** d
        acc = acc + s.mul_monomial(zm.coeff, x.ctx.scale(zm.exp))
    return acc


def constant_term(x: ZSeries) -> QSeries:
    return x.terms.get(0, x.ctx.zero())


def _apply_factor(x: ZSeries, f: ZFactor, lo: int, hi: int) -> ZSeries:
    out = dict(x.terms)
    for d, s in x.terms.items():
        t = d + f.zdeg
        if lo <= t <= hi:
            shifted = s.mul_monomial(-f.coeff, f.qexp)
            out[t] = out[t] + shifted if t in out else shifted
    return ZSeries(x.ctx, out)


def _apply_inverse_factor(x: ZSeries, f: ZFactor, lo: int, hi: int) -> ZSeries:
    # y = x / (1 - c q^e z^d): y[m] = x[m] + c q^e y[m - d], swept in the
    # direction of increasing m*sign(d) so the recurrence is causal.
    out: dict = {}
    degs = range(lo, hi + 1) if f.zdeg > 0 else range(hi, lo - 1, -1)
    for m in degs:
        s = x.terms.get(m, None)
        prev = out.get(m - f.zdeg, None)
        if prev is not None and not prev.is_zero():
            inc = prev.mul_monomial(f.coeff, f.qexp)
            s = inc if s is None else s + inc
        if s is not None:
            out[m] = s
    return ZSeries(x.ctx, out)


def zproduct(
    factors: Sequence[tuple[ZFactor, bool]],
    ctx: SeriesContext,
    window: int,
) -> ZSeries:
    """Product of (1 - c q^e z^d)^(+-1) starting from 1, on [-window, window].

    Factors whose q-exponent can no longer influence the window below the
    working order are the caller's responsibility to omit (see
    _expand_family).
    """
    if window > MAX_WINDOW:
        raise WindowOverflow(f"window {window} exceeds the configured maximum")
    acc = zs_one(ctx)
    lo, hi = -window, window
    for f, inverted in factors:
        if f.zdeg == 0:
            raise WindowOverflow("z-degree-0 factor is not an integrand factor")
        if inverted:
            acc = _apply_inverse_factor(acc, f, lo, hi)
        else:
            acc = _apply_factor(acc, f, lo, hi)
    return acc


# -- planning -----------------------------------------------------------


def _family_members(fam: ZPochFamily, ctx: SeriesContext, stop: int):
    """Scaled factors (coeff, qexp) of the family below the stop order."""
    eb = ctx.scale(fam.base.exp)
    e = ctx.scale(fam.qexp)
    c = fam.coeff
    j = 0
    while (fam.count is None or j < fam.count) and (e < stop or fam.count is not None):
        yield ZFactor(c, e, fam.zdeg)
        c = c * fam.base.coeff
        e += eb
        j += 1
        if fam.count is None and e >= stop:
            break


def _neg_return_cost(families, ctx: SeriesContext, n: int) -> int:
    """Cheapest q-cost of assembling total z-degree -n from the negative-
    degree factor supply; infinite if there is none."""
    best = None
    for fam in families:
        if fam.zdeg >= 0 or fam.inverted:
            continue
        eb = ctx.scale(fam.base.exp)
        e0 = ctx.scale(fam.qexp)
        need = -(-n // -fam.zdeg)  # ceil(n / |zdeg|)
        m = need
        # picking extra negative-exponent factors can only lower the cost
        while e0 + m * eb < 0:
            m += 1
        cost = sum(e0 + j * eb for j in range(m))
        if best is None or cost < best:
            best = cost
    if best is None:
        raise WindowOverflow(
            "no negative z-degree factors: constant term window is unbounded"
        )
    return best


def _neg_margin(families, ctx: SeriesContext, window: int) -> int:
    """Worst possible downward q-shift the product can still apply."""
    total = 0
    for fam in families:
        eb = ctx.scale(fam.base.exp)
        e = ctx.scale(fam.qexp)
        apps = (2 * window) // abs(fam.zdeg) + 1 if fam.inverted else 1
        j = 0
        while e < 0 and (fam.count is None or j < fam.count):
            total += -e * apps
            e += eb
            j += 1
    return total


def plan_window(families, ctx: SeriesContext, pad: int = 4):
    """(window, margin) for a constant-term product of the families.

    The margin depends on the window (a q^(-1) denominator demotes once
    per geometric step) and vice versa, so iterate to a fixpoint; the
    quadratic return cost against the linear margin guarantees one.
    """
    margin = 0
    while True:
        target = ctx.order + margin
        n = 1
        while _neg_return_cost(families, ctx, n) < target:
            n += 1
            if n > MAX_WINDOW:
                raise WindowOverflow("required window exceeds the maximum")
        window = n + pad
        new_margin = _neg_margin(families, ctx, window)
        if new_margin <= margin:
            return window, margin
        margin = new_margin


def ct_product(
    families: Sequence[ZPochFamily],
    ctx: SeriesContext,
    pad: int = 4,
    window: int | None = None,
    degree: int = 0,
) -> QSeries:
    """z-degree coefficient (the constant term by default) of the product
    of Pochhammer families in z.

    Runs at order + margin internally and narrows the result back to the
    caller's context, so the returned truncation is honest.
    """
    auto_window, margin = plan_window(families, ctx, pad)
    if window is None:
        window = auto_window + abs(degree)
    work = SeriesContext(ctx.denom, ctx.order + margin)
    stop = work.order
    factors = []
    for fam in families:
        for f in _family_members(fam, work, stop):
            factors.append((f, fam.inverted))
    z = zproduct(factors, work, window)
    ct = z.terms.get(degree, work.zero())
    return QSeries(ctx, ct.val, list(ct.coeffs), min(ct.trunc, ctx.order))


# -- the integrands used by the identity registry -----------------------


def triple_sum_ct(u: Monomial, v: Monomial, w: Monomial, ctx: SeriesContext,
                  pad: int = 4, window: int | None = None) -> QSeries:
    """(q^2;q^2)_inf times the constant term of

        (1/z, q^2 z; q^2)_inf (-w z^3; q^6)_inf
        / ((-u z; q)_inf (v z^2; q^4)_inf),

    the contour representation of the triple sum F(u, v, w).
    """
    from .qkernel import poch

    families = [
        ZPochFamily(ONE, Fraction(0), -1, qpow(2)),
        ZPochFamily(ONE, Fraction(2), 1, qpow(2)),
        ZPochFamily(-w.coeff, w.exp, 3, qpow(6)),
        ZPochFamily(-u.coeff, u.exp, 1, qpow(1), inverted=True),
        ZPochFamily(v.coeff, v.exp, 2, qpow(4), inverted=True),
    ]
    ct = ct_product(families, ctx, pad, window)
    return poch(qpow(2), qpow(2), ctx) * ct


def theta_contour_ct(
    alphas: Sequence[Monomial],
    betas: Sequence[Monomial],
    ctx: SeriesContext,
    base: Monomial | None = None,
    pad: int = 4,
    window: int | None = None,
) -> QSeries:
    """Constant term of (a_1 z, a_2 z, qz, 1/z; q)_inf / (b_1 z, ..., b_m z; q)_inf."""
    b = base if base is not None else _Q
    families = [ZPochFamily(a.coeff, a.exp, 1, b) for a in alphas]
    families.append(ZPochFamily(b.coeff, b.exp, 1, b))
    families.append(ZPochFamily(ONE, Fraction(0), -1, b))
    families.extend(ZPochFamily(m.coeff, m.exp, 1, b, inverted=True) for m in betas)
    return ct_product(families, ctx, pad, window)


def balanced_theta_ct(
    alphas: Sequence[Monomial],
    betas: Sequence[Monomial],
    ctx: SeriesContext,
    base: Monomial | None = None,
    pad: int = 4,
    window: int | None = None,
) -> QSeries:
    """The balanced two-over-three contour integral; requires
    alpha_1 alpha_2 = beta_1 beta_2 beta_3 exactly."""
    if len(alphas) != 2 or len(betas) != 3:
        raise BalanceViolated("expected 2 numerator and 3 denominator parameters")
    lhs = alphas[0] * alphas[1]
    rhs = betas[0] * betas[1] * betas[2]
    if lhs != rhs:
        raise BalanceViolated(
            f"alpha product {lhs!r} differs from beta product {rhs!r}"
        )
    return theta_contour_ct(alphas, betas, ctx, base, pad, window)


def phi21_contour(a: Monomial, b: Monomial, c: Monomial, t: Monomial,
                  ctx: SeriesContext, pad: int = 4,
                  window: int | None = None) -> QSeries:
    """The contour representation of 2phi1(a, b; c; q, t):

        (q;q)_inf / (c, t; q)_inf *
        CT[(abz, cz, qz/t, t/z; q)_inf / ((az, bz, cz/t; q)_inf)].
    """
    from .qkernel import INF, poch, pochhammer_multi

    ab = a * b
    ct_families = [
        ZPochFamily(ab.coeff, ab.exp, 1, _Q),
        ZPochFamily(c.coeff, c.exp, 1, _Q),
        ZPochFamily(t.coeff.inv(), 1 - t.exp, 1, _Q),
        ZPochFamily(t.coeff, t.exp, -1, _Q),
        ZPochFamily(a.coeff, a.exp, 1, _Q, inverted=True),
        ZPochFamily(b.coeff, b.exp, 1, _Q, inverted=True),
        ZPochFamily(c.coeff / t.coeff, c.exp - t.exp, 1, _Q, inverted=True),
    ]
    ct = ct_product(ct_families, ctx, pad, window)
    pref = poch(_Q, _Q, ctx) * pochhammer_multi([c, t], _Q, INF, ctx).inverse()
    return pref * ct
