"""Reproduction and cross-check suites shared by the CLI and the test-suite."""

import random
from dataclasses import dataclass
from typing import Iterable, List, Optional

from .cosets import (CosetContext, all_cosets, is_leader_bruteforce, is_leader_fast,
                     lambda_lift, top_leaders)
from .dims import BchSpec, dimension_closed_form, dimension_exact
from .errors import Uncovered
from .leaders import conjecture_delta34, delta_set
from .modmath import gcd_plus_minus, gcd_plus_plus


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass(frozen=True)
class PublishedCode:
    q: int
    m: int
    lam: int
    delta: int           # designed distance of C(q, n, delta, 0)
    k: int
    d: Optional[int] = None
    d_lower: Optional[int] = None
    note: str = ""

    @property
    def n(self):
        return (self.q ** self.m + 1) // self.lam

    @property
    def label(self):
        return f"C({self.q},{self.n},{self.delta},0)"


PUBLISHED = (
    PublishedCode(3, 12, 1, 103697, 9, d_lower=207392),
    PublishedCode(3, 12, 1, 103665, 33, d_lower=207328),
    PublishedCode(3, 4, 1, 15, 17, d=28),
    PublishedCode(3, 4, 1, 17, 9, d=44),
    PublishedCode(3, 8, 1, 1281, 17, d=4268),
    PublishedCode(3, 8, 1, 1277, 33, d_lower=2552),
    PublishedCode(5, 3, 3, 8, 11, d=14),
    PublishedCode(5, 3, 3, 9, 9, d=22),
    PublishedCode(5, 4, 2, 11, 248, d_lower=20),
    PublishedCode(5, 3, 2, 21, 2, d_lower=40),
    PublishedCode(5, 3, 2, 20, 8, d_lower=38),
    PublishedCode(3, 6, 2, 72, 16, d_lower=132,
                  note="printed with q=5, but n=365=(3^6+1)/2 forces q=3"),
    PublishedCode(3, 6, 2, 66, 28, d_lower=130,
                  note="printed with q=5, but n=365=(3^6+1)/2 forces q=3"),
)


def run_examples(codes: Iterable[PublishedCode] = PUBLISHED) -> List[Check]:
    out = []
    for c in codes:
        spec = BchSpec(c.q, c.m, c.delta, c.lam)
        k = dimension_exact(spec)
        detail = f"[{c.n}, {k}] expected [{c.n}, {c.k}]"
        if c.note:
            detail += f" ({c.note})"
        out.append(Check(f"dimension {c.label}", k == c.k, detail))
    return out


def leader_mismatch(q: int, m: int, lam: int = 1) -> Optional[str]:
    """Compare closed-form leaders and sizes with an exhaustive scan; None if equal."""
    ds = delta_set(q, m, lam)
    table = top_leaders(CosetContext.antiprimitive(q, m, lam), len(ds.deltas))
    if table.leaders != list(ds.deltas):
        return f"leaders {table.leaders} != closed form {list(ds.deltas)}"
    for rank, (got, want) in enumerate(zip(table.sizes, ds.sizes), 1):
        if want is not None and got != want:
            return f"rank {rank} coset size {got} != {want}"
    return None


def run_conjecture(q: int, ms: Iterable[int]) -> List[Check]:
    """Exhaustive third/fourth leaders against the conjectured formulas."""
    out = []
    for m in ms:
        name = f"conjecture q={q} m={m}"
        try:
            d3, d4 = conjecture_delta34(q, m)
        except Uncovered as exc:
            out.append(Check(name, False, f"uncovered: {exc}"))
            continue
        got = top_leaders(CosetContext.antiprimitive(q, m), 4).leaders[2:]
        ok = got == [d3, d4]
        detail = f"delta3, delta4 = {got[0]}, {got[1]}"
        if not ok:
            detail = f"COUNTEREXAMPLE: exhaustive {got} vs formula {[d3, d4]}"
        out.append(Check(name, ok, detail))
    return out


def run_props(seed: int = 0) -> List[Check]:
    """A quick pass over the cross-module invariants at small sizes."""
    out = []
    rng = random.Random(seed)
    bad = 0
    for _ in range(200):
        b, u, v = rng.randint(2, 20), rng.randint(1, 12), rng.randint(1, 12)
        try:
            gcd_plus_minus(b, u, v)
            gcd_plus_plus(b, u, v)
        except AssertionError:
            bad += 1
    out.append(Check("gcd identities (200 random cases)", bad == 0, f"{bad} failures"))

    for q, m in ((3, 2), (3, 3), (5, 2)):
        ctx = CosetContext.antiprimitive(q, m)
        cs = all_cosets(ctx)
        union = set().union(*(c.elements for c in cs))
        disjoint = sum(c.size for c in cs) == ctx.n
        out.append(Check(f"partition q={q} m={m}", disjoint and union == set(range(ctx.n))))
        same = all(is_leader_fast(q, m, s) == is_leader_bruteforce(ctx, s) for s in range(ctx.n))
        out.append(Check(f"fast leader test q={q} m={m}", same))

    for q, m in ((5, 3), (3, 3)):
        for lam in range(2, q + 2):
            if (q + 1) % lam or (q ** m + 1) % lam:
                continue
            n = (q ** m + 1) // lam
            ok = all(lambda_lift(q, m, lam, s).consistent for s in range(1, n))
            out.append(Check(f"lifting q={q} m={m} lambda={lam}", ok))

    for q, m, lam in ((3, 4, 1), (5, 4, 1), (3, 6, 2), (5, 3, 2)):
        out.append(Check(f"closed-form leaders q={q} m={m} lambda={lam}",
                         leader_mismatch(q, m, lam) is None))
    for q, m, lam in ((5, 3, 3), (5, 3, 2), (5, 4, 2), (3, 4, 1)):
        n = (q ** m + 1) // lam
        bad = []
        for delta in range(2, n + 1):
            spec = BchSpec(q, m, delta, lam)
            try:
                k, _ = dimension_closed_form(spec)
            except Uncovered:
                continue
            if k != dimension_exact(spec):
                bad.append(delta)
        out.append(Check(f"closed-form dimensions q={q} m={m} lambda={lam}", not bad,
                         f"mismatch at designed distances {bad[:5]}" if bad else ""))
    return out


def report(checks: List[Check]) -> str:
    lines = [c.line() for c in checks]
    passed = sum(c.ok for c in checks)
    lines.append(f"{passed}/{len(checks)} checks passed")
    return "\n".join(lines)
