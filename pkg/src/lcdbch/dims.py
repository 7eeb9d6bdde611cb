"""Dimensions of BCH codes C(q, n, delta, b) with n = (q^m + 1)/lam.

``delta`` is always the designed distance of the code, i.e. the generator has
the consecutive zeros beta^b, ..., beta^(b+delta-2).  The dimension theorems
are stated for C(q, n, t+1, 0); the translation t = delta - 1 happens here.
"""

from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Tuple

import numpy as np

from .cosets import CosetContext
from .errors import Uncovered
from .leaders import CONJECTURAL, PROVEN, delta_set
from .modmath import even_decompose, ord_mod


@dataclass(frozen=True)
class BchSpec:
    q: int
    m: int
    delta: int
    lam: int = 1
    b: int = 0

    def __post_init__(self):
        if self.lam < 1 or (self.q ** self.m + 1) % self.lam:
            raise ValueError(f"lambda={self.lam} does not divide {self.q}^{self.m}+1")
        if gcd(self.n, self.q) != 1:
            raise ValueError(f"gcd(n, q) != 1 for n={self.n}")
        if not 2 <= self.delta <= self.n:
            raise ValueError(f"designed distance {self.delta} outside [2, {self.n}]")

    @property
    def n(self) -> int:
        return (self.q ** self.m + 1) // self.lam

    def context(self) -> CosetContext:
        return CosetContext(self.q, self.n, ord_mod(self.q, self.n, multiple=2 * self.m))


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d_lower: int
    d_exact: Optional[int] = None


@dataclass
class DefiningSet:
    n: int
    mask: np.ndarray = field(repr=False)
    leaders: List[int]

    @property
    def cardinality(self) -> int:
        return int(self.mask.sum())

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)


def defining_set(spec: BchSpec, ctx: CosetContext = None) -> DefiningSet:
    """Union of the cosets of b, b+1, ..., b+delta-2 (mod n)."""
    ctx = ctx or spec.context()
    q, n = ctx.q, ctx.n
    mask = np.zeros(n, dtype=bool)
    leaders = []
    for i in range(spec.b, spec.b + spec.delta - 1):
        s = i % n
        if mask[s]:
            continue
        leaders.append(s)
        x = s
        while not mask[x]:
            mask[x] = True
            x = x * q % n
    return DefiningSet(n, mask, leaders)


def dimension_exact(spec: BchSpec, ctx: CosetContext = None) -> int:
    return spec.n - defining_set(spec, ctx).cardinality


def distance_lower_bound(spec: BchSpec) -> int:
    """2(delta-1) for b = 0 with lam | q+1; the plain BCH bound delta otherwise."""
    if spec.b == 0 and (spec.q + 1) % spec.lam == 0:
        return 2 * (spec.delta - 1)
    return spec.delta


# -- closed forms ------------------------------------------------------------

@dataclass(frozen=True)
class RangeRow:
    lo: int          # designed distances lo..hi inclusive
    hi: int
    k: int
    provenance: str


def _small_interval_k(q, m, lam, t):
    """Dimension of C(q, n, t+1, 0) for 1 <= t-1 <= q^floor((m+1)/2)/lam."""
    n = (q ** m + 1) // lam
    if m % 2 == 0:
        if lam != 2 or m < 4:
            raise Uncovered("low-distance formula for even m needs lam = 2, m >= 4")
        return n - 2 * m * (t - 1 - (t - 1) // q) - 1
    if m == 3 and lam == 3 and q > 3 and q % 3 == 2:
        special = (q * q - q + 1) // 3
        if t <= special:
            return n - 6 * (t - 1 - (t - 1) // q) - 1
        return n - 6 * (special - 1 - (t - 1) // q) - 3
    half = q ** ((m + 1) // 2)
    if m % 4 == 1:
        first_gap = (half + 1) // lam - q // lam
    else:
        first_gap = (half - 1) // lam - (q - 2) // lam
    if t <= first_gap:
        return n - 2 * m * (t - 1 - (t - 1) // q) - 1
    # t-1 >= first_gap: leaders first_gap..t-1 are all excluded
    return n - 2 * m * (first_gap - 1 - (t - 1) // q) - 1


def _small_interval_limit(q, m, lam):
    """Largest theorem-t with t-1 <= q^floor((m+1)/2)/lam, or None if not covered."""
    if lam == 1 or lam == q + 1 or (q + 1) % lam or q % 2 == 0:
        return None
    if m % 2 == 0 and (lam != 2 or m < 4):
        return None
    if m % 2 == 1 and m < 3:
        return None
    return q ** ((m + 1) // 2) // lam + 1


def _large_rows(q, m, lam):
    """(t_lo, t_hi, k, provenance) rows for the largest-leader theorems, t = delta-1."""
    ds = delta_set(q, m, lam)
    d = ds.deltas
    if lam == 1:
        if m % 2:
            raise Uncovered("no large-distance dimension formula for odd m with lam = 1")
        if m == 4:
            ks = [1, 9, 17]
            last = 25
        elif m == 8:
            ks = [1, 17, 33]
            last = 49
        elif m >= 12 and m % 8 == 4:
            ks = [1, 9, 2 * m + 9]
            last = 4 * m + 9
        else:
            raise Uncovered(f"no large-distance dimension formula for m={m}")
    elif m % 2:
        ks = [2]
        last = 2 + 2 * m
    else:
        split = even_decompose(m)
        if split.nu not in (1, 2) or m < 3 << split.nu or len(d) < 3:
            raise Uncovered(f"no large-distance dimension formula for m={m}, lam=2")
        v = split.nu
        ks = [2 * m * (i - 1) + (1 << (v + 1)) for i in (1, 2)]
        last = 4 * m + (1 << (v + 1))
    rows = []
    for i, k in enumerate(ks):
        prov = CONJECTURAL if CONJECTURAL in ds.provenances[: i + 2] else PROVEN
        rows.append((d[i + 1] + 1, d[i], k, prov))
    j = len(ks)
    prov = CONJECTURAL if CONJECTURAL in ds.provenances[: j + 1] else PROVEN
    rows.append((d[j], d[j], last, prov))
    return rows


def dimension_closed_form(spec: BchSpec) -> Tuple[int, str]:
    """(k, provenance) from the dimension theorems; Uncovered outside them."""
    if spec.b != 0:
        raise Uncovered("closed forms exist only for b = 0")
    q, m, lam = spec.q, spec.m, spec.lam
    t = spec.delta - 1
    limit = _small_interval_limit(q, m, lam)
    if limit is not None and 2 <= t <= limit:
        return _small_interval_k(q, m, lam, t), PROVEN
    try:
        rows = _large_rows(q, m, lam)
    except Uncovered:
        rows = []
    for lo, hi, k, prov in rows:
        if lo <= t <= hi:
            return k, prov
    raise Uncovered(f"designed distance {spec.delta} not covered for q={q}, m={m}, lambda={lam}")


def range_table(q: int, m: int, lam: int = 1) -> List[RangeRow]:
    """Piecewise dimension table over designed distances, largest first."""
    rows = [RangeRow(lo + 1, hi + 1, k, p) for lo, hi, k, p in _large_rows(q, m, lam)]
    return rows
