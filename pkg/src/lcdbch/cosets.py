"""q-cyclotomic cosets modulo n.

Two independent leader tests live here: the orbit walk (``is_leader_bruteforce``
and the vectorised ``top_leaders(method="brute")``) and the interval criterion
for n = q^m + 1 (``is_leader_fast``).  Tests pit them against each other.
"""

from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional

import numpy as np

from .modmath import ord_mod

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class CosetContext:
    q: int
    n: int
    ord: int = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 2 or self.q < 2:
            raise ValueError("need q >= 2 and n >= 2")
        if gcd(self.q, self.n) != 1:
            raise ValueError(f"gcd({self.n}, {self.q}) != 1")
        if self.ord is None:
            object.__setattr__(self, "ord", ord_mod(self.q, self.n))

    @classmethod
    def antiprimitive(cls, q: int, m: int, lam: int = 1) -> "CosetContext":
        """Context for n = (q^m + 1) / lam; the order divides 2m."""
        big = q ** m + 1
        if big % lam:
            raise ValueError(f"{lam} does not divide {q}^{m}+1")
        n = big // lam
        return cls(q, n, ord_mod(q, n, multiple=2 * m))

    @property
    def minus_one_is_power(self) -> bool:
        # -1 in <q> mod n makes C_s = C_{n-s}, so leaders sit at or below n/2
        x = 1
        for _ in range(self.ord):
            if x == self.n - 1:
                return True
            x = x * self.q % self.n
        return False


@dataclass(frozen=True)
class Coset:
    leader: int
    size: int
    elements: Optional[frozenset] = None


@dataclass(frozen=True)
class LeaderRecord:
    leader: int
    size: int


@dataclass
class LeaderTable:
    context: CosetContext
    entries: List[LeaderRecord]
    method: str

    @property
    def leaders(self):
        return [e.leader for e in self.entries]

    @property
    def sizes(self):
        return [e.size for e in self.entries]

    def rows(self):
        """(rank, leader, size) with rank 1 the largest leader."""
        return [(i + 1, e.leader, e.size) for i, e in enumerate(self.entries)]


def _check_index(ctx, s):
    if not 0 <= s < ctx.n:
        raise ValueError(f"s={s} outside [0, {ctx.n})")


def coset_of(ctx: CosetContext, s: int, materialize: bool = False) -> Coset:
    _check_index(ctx, s)
    q, n = ctx.q, ctx.n
    lead, size, x = s, 1, s * q % n
    elems = [s] if materialize else None
    while x != s:
        if x < lead:
            lead = x
        if materialize:
            elems.append(x)
        size += 1
        x = x * q % n
    return Coset(lead, size, frozenset(elems) if materialize else None)


def coset_size(ctx: CosetContext, s: int) -> int:
    return coset_of(ctx, s).size


def is_leader_bruteforce(ctx: CosetContext, s: int) -> bool:
    _check_index(ctx, s)
    q, n = ctx.q, ctx.n
    x = s * q % n
    while x != s:
        if x < s:
            return False
        x = x * q % n
    return True


def all_cosets(ctx: CosetContext) -> List[Coset]:
    """Every coset of Z_n, ordered by leader."""
    seen = np.zeros(ctx.n, dtype=bool)
    out = []
    q, n = ctx.q, ctx.n
    for s in range(n):
        if seen[s]:
            continue
        elems = []
        x = s
        while not seen[x]:
            seen[x] = True
            elems.append(x)
            x = x * q % n
        out.append(Coset(s, len(elems), frozenset(elems)))
    return out


# -- interval criterion for n = q^m + 1 -------------------------------------

@dataclass(frozen=True)
class LeaderWitness:
    i: int
    l: int
    h: int


def _witness_ok(q, m, i, l, h):
    qi, Q = q ** i, q ** (m - i)
    if not 1 <= 2 * l <= qi - 1:
        return False
    # -l(Q-1)/(q^i+1) < h < l(Q+1)/(q^i-1), cleared of denominators
    return -l * (Q - 1) < h * (qi + 1) and h * (qi - 1) < l * (Q + 1)


def find_witness(q: int, m: int, s: int, sweep: bool = False) -> Optional[LeaderWitness]:
    """A triple (i, l, h) with s = l*q^(m-i) + h inside the forbidden bounds.

    Only l in {floor(s/q^(m-i)), floor(s/q^(m-i)) + 1} can qualify; ``sweep``
    tries every admissible l instead, for cross-checking that shortcut.
    """
    for i in range(1, m):
        Q = q ** (m - i)
        if sweep:
            cands = range(1, (q ** i - 1) // 2 + 1)
        else:
            base = s // Q
            cands = (base, base + 1)
        for l in cands:
            h = s - l * Q
            if _witness_ok(q, m, i, l, h):
                return LeaderWitness(i, l, h)
    return None


def is_leader_fast(q: int, m: int, s: int, sweep: bool = False) -> bool:
    """Leader test modulo q^m + 1 in O(m) big-int operations (odd q)."""
    if q % 2 == 0:
        raise ValueError("fast leader test needs odd q")
    if m < 2:
        raise ValueError("fast leader test needs m >= 2")
    n = q ** m + 1
    if not 0 <= s <= q ** m:
        raise ValueError(f"s={s} outside [0, {n})")
    if 2 * s > n:
        return False
    return find_witness(q, m, s, sweep) is None


# -- searching for the largest leaders --------------------------------------

def _leaders_in_block(q, n, order, lo, hi):
    """All coset leaders in [lo, hi], descending, by vectorised orbit walk."""
    cand = np.arange(hi, lo - 1, -1, dtype=np.int64)
    cur = cand.copy()
    for _ in range(order - 1):
        cur = cur * q % n
        keep = cur >= cand
        cand, cur = cand[keep], cur[keep]
        if not len(cand):
            break
    return cand.tolist()


def _brute_scan(ctx, count, chunk):
    q, n = ctx.q, ctx.n
    hi = n // 2 if ctx.minus_one_is_power else n - 1
    found = []
    if n * q >= _INT64_SAFE:
        s = hi
        while s >= 0 and len(found) < count:
            if is_leader_bruteforce(ctx, s):
                found.append(s)
            s -= 1
        return found
    while hi >= 0 and len(found) < count:
        lo = max(0, hi - chunk + 1)
        found.extend(_leaders_in_block(q, n, ctx.ord, lo, hi))
        hi = lo - 1
    return found[:count]


def _fast_scan(ctx, count):
    q, n = ctx.q, ctx.n
    m = _antiprimitive_exponent(q, n)
    found = []
    s = n // 2
    while s >= 0 and len(found) < count:
        if is_leader_fast(q, m, s):
            found.append(s)
        s -= 1
    return found


def _antiprimitive_exponent(q, n):
    m, x = 0, n - 1
    while x > 1 and x % q == 0:
        x //= q
        m += 1
    if x != 1 or m < 2 or q % 2 == 0:
        raise ValueError(f"fast method needs n = q^m + 1 with odd q and m >= 2, got n={n}")
    return m


def top_leaders(ctx: CosetContext, count: int, method: str = "brute",
                chunk: int = 1 << 20) -> LeaderTable:
    """The ``count`` largest coset leaders modulo n, largest first."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if method == "brute":
        leaders = _brute_scan(ctx, count, chunk)
    elif method == "fast":
        leaders = _fast_scan(ctx, count)
    else:
        raise ValueError(f"unknown method {method!r}")
    entries = [LeaderRecord(s, coset_size(ctx, s)) for s in leaders]
    return LeaderTable(ctx, entries, method)


# -- lifting between n and lam*n --------------------------------------------

@dataclass(frozen=True)
class LiftResult:
    leader_small: bool
    leader_big: bool
    size_small: int
    size_big: int

    @property
    def consistent(self):
        return self.leader_small == self.leader_big and self.size_small == self.size_big


def lambda_lift(q: int, m: int, lam: int, s: int, small: CosetContext = None,
                big: CosetContext = None) -> LiftResult:
    """Leader status and coset size of s mod (q^m+1)/lam and of lam*s mod q^m+1.

    Pre-built contexts may be passed to avoid recomputing orders in sweeps.
    """
    if (q ** m + 1) % lam:
        raise ValueError(f"{lam} does not divide {q}^{m}+1")
    small = small or CosetContext.antiprimitive(q, m, lam)
    big = big or CosetContext.antiprimitive(q, m, 1)
    if not 1 <= s <= small.n - 1:
        raise ValueError(f"s={s} outside [1, {small.n - 1}]")
    a, b = coset_of(small, s), coset_of(big, lam * s)
    return LiftResult(a.leader == s, b.leader == lam * s, a.size, b.size)


# -- leaders below q^((m+1)/2)/lam for odd m --------------------------------

def interval_exclusions(q: int, m: int, lam: int) -> List[int]:
    """Non-multiples of q in the low interval that fail to be leaders."""
    top = q ** ((m + 1) // 2)
    if m % 4 == 1:
        base = (top + 1) // lam
        return [base - c for c in range(1, q // lam + 1)]
    base = (top - 1) // lam
    return [base - c for c in range(0, (q - 2) // lam + 1)]


def _check_interval_regime(q, m, lam, lo, hi):
    if m < 3 or m % 2 == 0:
        raise ValueError("interval description needs odd m >= 3")
    if not 1 < lam < q + 1 or (q + 1) % lam:
        raise ValueError("interval description needs 1 < lam < q+1 with lam | q+1")
    if not 1 <= lo <= hi or lam * hi > q ** ((m + 1) // 2):
        raise ValueError(f"interval [{lo}, {hi}] outside [1, q^((m+1)/2)/lam]")


def leaders_in_interval(q: int, m: int, lam: int, lo: int, hi: int,
                        method: str = "closed") -> List[LeaderRecord]:
    """Coset leaders s in [lo, hi] modulo (q^m+1)/lam, ascending.

    ``closed`` uses the known description (every non-multiple of q except a
    short run just below q^((m+1)/2)/lam; size 2m except one size-2 coset when
    lam = m = 3 and q = 2 mod 3, q > 3).  ``brute`` walks every orbit.
    """
    _check_interval_regime(q, m, lam, lo, hi)
    if method == "brute":
        ctx = CosetContext.antiprimitive(q, m, lam)
        return [LeaderRecord(s, coset_size(ctx, s))
                for s in range(lo, hi + 1) if is_leader_bruteforce(ctx, s)]
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    excluded = set(interval_exclusions(q, m, lam))
    special = None
    if lam == 3 and m == 3 and q > 3 and q % 3 == 2:
        special = (q * q - q + 1) // 3
        excluded.discard(special)   # bottom of the excluded run, yet a leader
    out = []
    for s in range(lo, hi + 1):
        if s % q == 0 or s in excluded:
            continue
        out.append(LeaderRecord(s, 2 if s == special else 2 * m))
    return out
