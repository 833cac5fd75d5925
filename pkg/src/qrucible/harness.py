"""Identity registry, verification runner, and partition-counting oracle.

Suite files declare one identity per block:

    identity "rogers-ramanujan-1" {
      lhs = ...;
      rhs = ...;
      D = 1;
      order = 60;
      tags = ["kanade-russell"];
      ref = "Rogers 1894 / Ramanujan";
    }

`order` is in scaled units (multiples of 1/D). Verification elaborates
both sides and compares coefficients exactly; if an evaluation returns
less proven truncation than requested (negative exponents genuinely cost
precision), the context is escalated and the case re-run, so a PASS
always proves at least the requested order.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import dsl
from .cyclotomic import render
from .errors import BoundExceeded, ParseError, QrucibleError
from .series import SeriesContext, first_mismatch

GROUPS = (
    "preliminaries",
    "kanade-russell",
    "section5",
    "contour",
    "ortho",
    "transforms",
)

_MAX_ESCALATIONS = 6


@dataclass(frozen=True)
class IdentityCase:
    name: str
    lhs_text: str
    rhs_text: str
    denom: int
    order: int  # scaled units: coefficients proven for exponents < order/denom
    tags: tuple
    ref: str
    source: str = "<memory>"

    def lhs(self):
        return dsl.parse(self.lhs_text)

    def rhs(self):
        return dsl.parse(self.rhs_text)

    def matches(self, pattern: str) -> bool:
        from fnmatch import fnmatchcase

        if fnmatchcase(self.name, pattern):
            return True
        return any(fnmatchcase(t, pattern) for t in self.tags)


@dataclass(frozen=True)
class Mismatch:
    exponent: Fraction
    lhs: str
    rhs: str


@dataclass
class VerifyReport:
    name: str
    status: str  # PASS | FAIL | SKIP
    proven_order: int  # scaled units
    denom: int
    mismatch: Optional[Mismatch]
    elapsed_ms: float
    ref: str
    skip_reason: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "PASS"


class Registry:
    """Ordered identity list; selection is by glob on name or tags."""

    def __init__(self, cases: Sequence[IdentityCase]):
        self.cases = list(cases)
        seen = {}
        for c in self.cases:
            if c.name in seen:
                raise ValueError(f"duplicate identity name {c.name!r}")
            seen[c.name] = c

    def __len__(self) -> int:
        return len(self.cases)

    def __iter__(self):
        return iter(self.cases)

    def get(self, name: str) -> IdentityCase:
        for c in self.cases:
            if c.name == name:
                return c
        raise KeyError(name)

    def select(self, pattern: Optional[str]) -> list:
        if not pattern:
            return list(self.cases)
        return [c for c in self.cases if c.matches(pattern)]

    def group(self, tag: str) -> list:
        return [c for c in self.cases if tag in c.tags]


# -- suite files ---------------------------------------------------------


def parse_suite(text: str, source: str = "<string>") -> list:
    """Parse a suite file into identity cases."""
    toks = dsl.tokenize(text)
    p = dsl.Parser(toks)
    cases = []
    while p.peek().kind != "EOF":
        t = p.next()
        if t.kind != "IDENT" or t.value != "identity":
            raise ParseError("expected 'identity'", t.line, t.col)
        t = p.next()
        if t.kind != "STR":
            raise ParseError("expected a quoted identity name", t.line, t.col)
        name = t.value
        p.expect("{")
        fields = {}
        while not p.at("}"):
            key_tok = p.next()
            if key_tok.kind != "IDENT":
                raise ParseError("expected a field name", key_tok.line, key_tok.col)
            key = key_tok.value
            p.expect("=")
            if key in ("lhs", "rhs"):
                expr = p.parse_expr()
                fields[key] = dsl.unparse(expr)
            elif key in ("D", "order"):
                t = p.next()
                if t.kind != "NUM":
                    raise ParseError(f"{key} must be an integer", t.line, t.col)
                fields[key] = t.value
            elif key == "tags":
                p.expect("[")
                tags = []
                if not p.at("]"):
                    while True:
                        t = p.next()
                        if t.kind != "STR":
                            raise ParseError("tags must be strings", t.line, t.col)
                        tags.append(t.value)
                        if not p.eat(","):
                            break
                p.expect("]")
                fields["tags"] = tuple(tags)
            elif key == "ref":
                t = p.next()
                if t.kind != "STR":
                    raise ParseError("ref must be a string", t.line, t.col)
                fields["ref"] = t.value
            else:
                raise ParseError(f"unknown field {key!r}", key_tok.line, key_tok.col)
            p.expect(";")
        p.expect("}")
        for req in ("lhs", "rhs", "D", "order"):
            if req not in fields:
                raise ParseError(f"identity {name!r} missing field {req!r}", t.line, t.col)
        cases.append(
            IdentityCase(
                name=name,
                lhs_text=fields["lhs"],
                rhs_text=fields["rhs"],
                denom=fields["D"],
                order=fields["order"],
                tags=fields.get("tags", ()),
                ref=fields.get("ref", ""),
                source=source,
            )
        )
    return cases


def default_suite_dir() -> Path:
    env = os.environ.get("QRUCIBLE_SUITE_DIR")
    if env:
        return Path(env)
    return Path(__file__).parent / "suites"


def load_registry(files: Optional[Sequence] = None) -> Registry:
    if files:
        paths = [Path(f) for f in files]
    else:
        paths = sorted(default_suite_dir().glob("*.qid"))
    cases = []
    for path in paths:
        cases.extend(parse_suite(path.read_text(encoding="utf-8"), str(path)))
    return Registry(cases)


# -- verification --------------------------------------------------------


def verify(
    case: IdentityCase,
    order: Optional[int] = None,
    denom: Optional[int] = None,
) -> VerifyReport:
    """Compare both sides exactly up to the case order (zero tolerance).

    Evaluator errors become a SKIP carrying the reason; the CLI's strict
    mode turns those into failures.
    """
    t0 = time.perf_counter()
    eff_denom = case.denom if denom is None else math.lcm(case.denom, denom)
    factor = eff_denom // case.denom
    target = (case.order if order is None else order) * factor

    def done(status, proven, mm=None, reason=None):
        ms = (time.perf_counter() - t0) * 1000.0
        return VerifyReport(case.name, status, proven, eff_denom, mm, ms, case.ref, reason)

    try:
        lhs_expr = case.lhs()
        rhs_expr = case.rhs()
    except QrucibleError as exc:
        return done("SKIP", 0, reason=f"parse: {exc}")

    pad = 0
    for _ in range(_MAX_ESCALATIONS):
        ctx = SeriesContext(eff_denom, target + pad)
        try:
            left = dsl.elaborate(lhs_expr, ctx)
            right = dsl.elaborate(rhs_expr, ctx)
        except QrucibleError as exc:
            return done("SKIP", 0, reason=str(exc))
        avail = min(left.trunc, right.trunc)
        if avail >= target:
            mm = first_mismatch(left, right, avail)
            if mm is None:
                return done("PASS", avail)
            e, cl, cr = mm
            if e >= target:
                # disagreement only beyond the requested order
                return done("PASS", e)
            return done(
                "FAIL", e, Mismatch(Fraction(e, eff_denom), render(cl), render(cr))
            )
        pad += (target - avail) + 4
    return done("SKIP", 0, reason=f"escalation failed to reach order {target}")


def _verify_worker(payload):
    case = IdentityCase(*payload[0])
    return verify(case, payload[1], payload[2])


def run_suite(
    files: Optional[Sequence] = None,
    pattern: Optional[str] = None,
    order: Optional[int] = None,
    denom: Optional[int] = None,
    jobs: int = 1,
    strict: bool = False,
    registry: Optional[Registry] = None,
):
    """Verify the selected cases; exit code 0 iff everything demanded passed.

    Reports are ordered by case order regardless of completion order.
    """
    reg = registry if registry is not None else load_registry(files)
    cases = reg.select(pattern)
    if jobs > 1 and len(cases) > 1:
        payloads = [
            (
                (c.name, c.lhs_text, c.rhs_text, c.denom, c.order, c.tags, c.ref, c.source),
                order,
                denom,
            )
            for c in cases
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_worker, payloads))
    else:
        reports = [verify(c, order, denom) for c in cases]
    bad = any(r.status == "FAIL" for r in reports)
    if strict:
        bad = bad or any(r.status != "PASS" for r in reports)
    return (1 if bad else 0), reports


def reports_to_json(reports: Sequence[VerifyReport]) -> str:
    out = []
    for r in reports:
        item = {
            "name": r.name,
            "status": r.status,
            "provenOrder": r.proven_order,
            "denom": r.denom,
            "elapsedMs": round(r.elapsed_ms, 3),
            "paperRef": r.ref,
        }
        if r.mismatch is not None:
            item["firstMismatch"] = {
                "exponent": str(r.mismatch.exponent),
                "lhs": r.mismatch.lhs,
                "rhs": r.mismatch.rhs,
            }
        if r.skip_reason:
            item["skipReason"] = r.skip_reason
        out.append(item)
    return json.dumps(out, indent=2)


# -- partition oracle ----------------------------------------------------


def partition_count(
    n: int,
    *,
    modulus: Optional[int] = None,
    residues: Optional[Sequence[int]] = None,
    min_gap: int = 0,
    bound: int = 5000,
) -> int:
    """Number of partitions of n by brute-force enumeration.

    modulus/residues restrict parts to given residue classes; min_gap
    demands successive parts differ by at least that much (1 = distinct
    parts, 2 = no repeated or consecutive parts). Used as an independent
    check of product-side coefficients.
    """
    if n < 0:
        return 0
    if n > bound:
        raise BoundExceeded(f"partition_count bound {bound} exceeded by n={n}")
    if modulus is not None:
        allowed_res = frozenset(r % modulus for r in (residues or range(modulus)))
    else:
        allowed_res = None

    def allowed(p: int) -> bool:
        return allowed_res is None or p % modulus in allowed_res

    cache: dict = {}

    def count(remaining: int, min_part: int) -> int:
        if remaining == 0:
            return 1
        key = (remaining, min_part)
        val = cache.get(key)
        if val is not None:
            return val
        total = 0
        for p in range(min_part, remaining + 1):
            if allowed(p):
                total += count(remaining - p, p + min_gap)
        cache[key] = total
        return total

    return count(n, 1)
