"""Closed forms for the largest coset leaders modulo (q^m + 1)/lam, odd q.

``delta_set(q, m, lam)`` is the single entry point that dispatches on the
parameter regime.  Values that are only conjectured carry
``provenance="conjectural"``; regimes with no formula raise ``Uncovered``.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import Uncovered
from .modmath import even_decompose, exact_div, phi_term, psi

PROVEN = "proven"
CONJECTURAL = "conjectural"

M4 = "M4"
M8 = "M8"
M_4MOD8_GE12 = "M_4mod8_ge12"
M_POW2_GE16 = "M_pow2_ge4"
M_2NU_GENERAL = "M_2nu_general"
M8MOD16_GE24 = "M8mod16_ge24"
M_ODD = "M_odd"

LAMBDA1 = "lambda=1"
LAMBDA2_EVEN = "lambda=2 even-m"
LAMBDA2_ODD = "lambda=2 odd-m q=1 mod 4"
LAMBDA_ODD_M = "lambda generic odd-m"


@dataclass(frozen=True)
class RegimeTag:
    m_class: str
    lam_class: str


@dataclass(frozen=True)
class DeltaSet:
    """Ranked largest leaders; ``sizes[i]`` is None where no size is known."""
    q: int
    m: int
    lam: int
    deltas: Tuple[int, ...]
    sizes: Tuple[Optional[int], ...]
    provenances: Tuple[str, ...]

    @property
    def provenance(self) -> str:
        return CONJECTURAL if CONJECTURAL in self.provenances else PROVEN

    @property
    def n(self) -> int:
        return (self.q ** self.m + 1) // self.lam

    def __getitem__(self, rank):
        """1-based access: ds[1] is the largest leader."""
        return self.deltas[rank - 1]


def _require_odd_q(q):
    if q < 3 or q % 2 == 0:
        raise ValueError(f"q must be an odd prime power, got {q}")


def _m_class(m):
    if m % 2:
        return M_ODD
    if m == 4:
        return M4
    if m == 8:
        return M8
    split = even_decompose(m)
    if split.power_of_two:
        return M_POW2_GE16 if m >= 16 else M_2NU_GENERAL  # m = 2 falls in the general case
    if split.nu == 2 and m >= 12:
        return M_4MOD8_GE12
    if split.nu == 3 and m >= 24:
        return M8MOD16_GE24
    return M_2NU_GENERAL


def classify(q: int, m: int, lam: int = 1) -> RegimeTag:
    """Regime of (q, m, lam); raises Uncovered when no result applies."""
    _require_odd_q(q)
    if m < 2:
        raise Uncovered(f"m={m} is not covered")
    mc = _m_class(m)
    if lam == 1:
        if mc == M_ODD and m < 3:
            raise Uncovered("odd m needs m >= 3")
        return RegimeTag(mc, LAMBDA1)
    if (q + 1) % lam or (q ** m + 1) % lam:
        raise ValueError(f"lambda={lam} must divide both q+1 and q^m+1")
    if lam == 2 and mc != M_ODD:
        return RegimeTag(mc, LAMBDA2_EVEN)
    if lam == 2 and q % 4 == 1 and m >= 3:
        return RegimeTag(mc, LAMBDA2_ODD)
    raise Uncovered(f"no largest-leader formula for q={q}, m={m}, lambda={lam}")


# -- lam = 1, even m ---------------------------------------------------------

def delta1(q: int, m: int) -> int:
    _require_odd_q(q)
    return (q ** m + 1) // 2


def delta2_even(q: int, m: int) -> int:
    _require_odd_q(q)
    split = even_decompose(m)
    if split.power_of_two and m >= 4:
        return psi(q, split.nu - 1)
    n = q ** m + 1
    return exact_div(n, q ** (1 << split.nu) + 1) * psi(q, split.nu - 1)


def delta34_m4(q: int) -> Tuple[int, int]:
    _require_odd_q(q)
    top = (q - 1) ** 2 * (q * q - 1) // 2
    return top - (q - 1), top - q


def delta34_m8(q: int) -> Tuple[int, int]:
    """Third and fourth largest leaders modulo q^8 + 1.

    The fourth is top - (q^3 - q^2); exhaustive search confirms this for
    q = 3, 5, 7 (1262, 119708, ...), not top - (q^3 + q^2).
    """
    _require_odd_q(q)
    top = (q - 1) ** 2 * (q * q - 1) * (q ** 4 - 1) // 2
    return top - (q - 1) ** 2, top - (q ** 3 - q ** 2)


def delta34_4mod8(q: int, m: int) -> Tuple[int, int]:
    _require_odd_q(q)
    if m < 12 or m % 8 != 4:
        raise Uncovered(f"m={m} is not >= 12 with m = 4 mod 8")
    coef = (q - 1) ** 2 * (q * q - 1)
    d3 = exact_div(coef * (q ** m - 2 * q ** (m - 8) - 1), 2 * (q ** 4 + 1))
    if m == 12:
        d4 = d3 - q * q * (q * q - 1) * (q - 1) ** 2
    else:
        d4 = d3 - (q ** 4 - 1) * (q * q - 1) * (q - 1) ** 2
    return d3, d4


def delta3_alternating(q: int, m: int) -> int:
    """The third leader for m = 4 mod 8 written as n/2 plus signed powers of q."""
    if m < 12 or m % 8 != 4:
        raise Uncovered(f"m={m} is not >= 12 with m = 4 mod 8")
    value = (q ** m + 1) // 2
    for e, sign in ((1, -1), (3, 1), (4, -1), (5, 1), (7, -1), (9, 1), (11, -1)):
        value += sign * q ** (m - e)
    return value + sum(phi_term(q, j) for j in range(1, (m - 12) // 8 + 1))


def conjecture_delta34(q: int, m: int) -> Tuple[int, int]:
    """Third and fourth leaders predicted for even m >= 4 (lam = 1)."""
    _require_odd_q(q)
    split = even_decompose(m)
    if m < 4:
        raise Uncovered("third/fourth leader formulas need m >= 4")
    d2 = delta2_even(q, m)
    nu = split.nu
    if split.power_of_two:
        k = nu
        d3 = d2 - 2 * psi(q, k - 3)
        if m == 4:
            d4 = d3 - 1
        else:
            d4 = d2 - 2 * q ** (1 << (k - 2)) * psi(q, k - 4)
        return d3, d4
    d3 = d2 - 2 * exact_div(d2 + psi(q, nu), q ** (1 << (nu + 1)))
    t = (m - (1 << nu)) >> (nu + 1)
    if t == 1:
        d4 = d3 - 2 * q ** (1 << (nu - 1)) * psi(q, nu - 1)
    else:
        d4 = d3 - 2 * psi(q, nu)
    return d3, d4


def delta3_m8mod16_expansion(q: int, m: int) -> int:
    """Signed base-q expansion of the third leader for m = 8 mod 16, m >= 24."""
    if m < 24 or m % 16 != 8:
        raise Uncovered(f"m={m} is not >= 24 with m = 8 mod 16")
    head = (1, -1), (3, 1), (4, -1), (5, 1), (7, -1), (9, 1), (11, -1), (12, 1), \
        (13, -1), (15, 1), (16, -1), (17, 1), (19, -1), (20, 1), (21, -1), (23, 1)
    value = (q ** m - 1) // 2
    for e, sign in head:
        value += sign * q ** (m - e)
    block = (1, -1), (3, 1), (4, -1), (5, 1), (7, -1), (9, 1), (11, -1), (12, 1), \
        (13, -1), (15, 1)
    for j in range(1, (m - 24) // 16 + 1):
        for e, sign in block:
            value += sign * q ** (16 * j - e)
    return value


def delta3_m8mod16_closed(q: int, m: int) -> int:
    if m < 24 or m % 16 != 8:
        raise Uncovered(f"m={m} is not >= 24 with m = 8 mod 16")
    num = (q - 1) ** 2 * (q * q - 1) * (q ** 4 - 1) * (q ** m - 2 * q ** (m - 16) - 1)
    return exact_div(num, 2 * (q ** 8 + 1))


def _top_size(m):
    # coset size of the second largest leader for lam = 1, even m
    split = even_decompose(m)
    return 2 * m if split.power_of_two else 1 << (split.nu + 1)


def _sizes34(m):
    split = even_decompose(m)
    if split.power_of_two or split.nu in (1, 2):
        return 2 * m
    return None


def _even_lambda1(q, m, mc):
    d1, d2 = delta1(q, m), delta2_even(q, m)
    deltas, sizes, prov = [d1, d2], [1, _top_size(m)], [PROVEN, PROVEN]
    if m == 2:
        return deltas, sizes, prov
    if mc == M4:
        d3, d4 = delta34_m4(q)
        status = PROVEN
    elif mc == M8:
        d3, d4 = delta34_m8(q)
        status = PROVEN
    elif mc == M_4MOD8_GE12:
        d3, d4 = delta34_4mod8(q, m)
        status = PROVEN
    else:
        d3, d4 = conjecture_delta34(q, m)
        status = CONJECTURAL
        if mc == M8MOD16_GE24:
            assert delta3_m8mod16_expansion(q, m) == d3 == delta3_m8mod16_closed(q, m)
    s34 = _sizes34(m)
    return deltas + [d3, d4], sizes + [s34, s34], prov + [status, status]


def _odd_lambda1(q, m):
    n = q ** m + 1
    d2 = exact_div((q - 1) * n, 2 * (q + 1))
    d3 = exact_div((q - 1) * (q ** m - 2 * q ** (m - 2) - 1), 2 * (q + 1))
    return [n // 2, d2, d3], [1, 2, 2 * m], [PROVEN] * 3


def delta_set(q: int, m: int, lam: int = 1) -> DeltaSet:
    """Ranked closed-form leaders for every covered (q, m, lam)."""
    tag = classify(q, m, lam)
    if tag.lam_class == LAMBDA1:
        if tag.m_class == M_ODD:
            d, s, p = _odd_lambda1(q, m)
        else:
            d, s, p = _even_lambda1(q, m, tag.m_class)
    elif tag.lam_class == LAMBDA2_ODD:
        d, s, p = _odd_lambda1(q, m)
        # halves of the even leaders modulo q^m + 1
        d, s, p = [exact_div(x, 2) for x in d[1:]], s[1:], p[1:]
    else:
        d, s, p = _even_lambda1(q, m, tag.m_class)
        split = even_decompose(m)
        keep = 3 if split.nu in (1, 2) and m >= 3 << split.nu else 1
        d, s, p = d[1:1 + keep], s[1:1 + keep], p[1:1 + keep]
        d = [exact_div(x, 2) for x in d]
    ds = DeltaSet(q, m, lam, tuple(d), tuple(s), tuple(p))
    _check_monotone(ds)
    return ds


def _check_monotone(ds):
    for a, b in zip(ds.deltas, ds.deltas[1:]):
        if not a > b:
            raise ArithmeticError(f"non-decreasing leaders {ds.deltas}")
    if ds.lam == 1 and ds.m % 2 == 0 and ds.deltas[0] * 2 != ds.n:
        raise ArithmeticError("largest leader must be n/2")


def delta_lambda(q: int, m: int, lam: int) -> DeltaSet:
    """Alias of ``delta_set`` with an explicit lam; lam outside {1, 2} is uncovered."""
    if lam not in (1, 2):
        raise Uncovered(f"no largest-leader formula for lambda={lam}")
    return delta_set(q, m, lam)


def coset_size_of_top(q: int, m: int, lam: int, rank: int) -> Optional[int]:
    ds = delta_set(q, m, lam)
    if not 1 <= rank <= len(ds.deltas):
        raise Uncovered(f"rank {rank} has no closed form for q={q}, m={m}, lambda={lam}")
    return ds.sizes[rank - 1]
