"""Exact integer helpers: 2-adic valuation, multiplicative order, gcd identities
for b^u +/- 1, and the product/alternating-sum building blocks used by the
leader formulas.

Python ints are unbounded, so every function here is exact for any input size.
"""

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

from sympy import factorint

# deterministic for every n < 3.3e24, which covers the 2^64 contract
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, valid for p < 2**64."""
    if p < 2:
        return False
    if p >= 1 << 64:
        raise ValueError("primality test only supported below 2**64")
    for w in _MR_WITNESSES:
        if p % w == 0:
            return p == w
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimePower:
    p: int
    e: int

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("exponent must be >= 1")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def q(self) -> int:
        return self.p ** self.e

    @classmethod
    def of(cls, q: int) -> "PrimePower":
        """Split q into p**e, raising ValueError if q is not a prime power."""
        if q < 2:
            raise ValueError(f"{q} is not a prime power")
        f = factorint(q)
        if len(f) != 1:
            raise ValueError(f"{q} is not a prime power")
        (p, e), = f.items()
        return cls(int(p), int(e))


def nu2(b: int) -> int:
    if b <= 0:
        raise ValueError("nu2 needs a positive integer")
    return (b & -b).bit_length() - 1


class EvenSplit(NamedTuple):
    power_of_two: bool
    nu: int


def even_decompose(m: int) -> EvenSplit:
    """Classify an even m: either m = 2**nu, or m = 2**nu (mod 2**(nu+1))."""
    if m < 2 or m % 2:
        raise ValueError(f"m must be even and >= 2, got {m}")
    nu = nu2(m)
    pow2 = m == 1 << nu
    # the odd cofactor is 1 + 2i, so m = 2^nu + i*2^(nu+1)
    assert pow2 or m % (1 << (nu + 1)) == 1 << nu
    return EvenSplit(pow2, nu)


def _order_from_multiple(q: int, n: int, multiple: int) -> int:
    # shrink a known exponent e with q^e = 1 (mod n) down to the true order
    t = multiple
    for r in factorint(multiple):
        while t % r == 0 and pow(q, t // r, n) == 1:
            t //= r
    return t


def _power_exponent(base: int, x: int):
    """Return m with base**m == x, or None."""
    if x < 1:
        return None
    m = 0
    while x % base == 0:
        x //= base
        m += 1
    return m if x == 1 else None


def ord_mod(q: int, n: int, multiple: int = None, max_steps: int = 10**7) -> int:
    """Multiplicative order of q modulo n.

    ``multiple`` is any known exponent with q**multiple == 1 (mod n). When it is
    absent and n = q^m + 1 or n = q^m - 1 the exponent 2m (resp. m) is used;
    otherwise successive powers are tried up to ``max_steps``.
    """
    if q < 2 or n < 2:
        raise ValueError("ord_mod needs q >= 2 and n >= 2")
    if gcd(q, n) != 1:
        raise ValueError(f"gcd({q}, {n}) != 1")
    if multiple is None:
        m = _power_exponent(q, n - 1)
        if m:
            multiple = 2 * m
        else:
            m = _power_exponent(q, n + 1)
            if m:
                multiple = m
    if multiple is not None:
        if pow(q, multiple, n) != 1:
            raise ValueError(f"{q}^{multiple} != 1 mod {n}")
        return _order_from_multiple(q, n, multiple)
    x, t = q % n, 1
    while x != 1:
        x = x * q % n
        t += 1
        if t > max_steps:
            raise ArithmeticError(f"order of {q} mod {n} exceeds {max_steps} steps")
    return t


def gcd_plus_minus(b: int, u: int, v: int) -> int:
    """gcd(b^u + 1, b^v - 1) by the parity case split, checked against math.gcd."""
    if b < 2 or u < 1 or v < 1:
        raise ValueError("need b >= 2 and u, v >= 1")
    g = gcd(u, v)
    if (v // g) % 2 == 0:
        value = b ** g + 1
    else:
        value = 1 if b % 2 == 0 else 2
    assert value == gcd(b ** u + 1, b ** v - 1), (b, u, v)
    return value


def gcd_plus_plus(b: int, u: int, v: int) -> int:
    """gcd(b^u + 1, b^v + 1) by comparing 2-adic valuations, checked against math.gcd.

    The valuation split assumes odd b; for even b the mismatched branch is 1.
    """
    if b < 2 or u < 1 or v < 1:
        raise ValueError("need b >= 2 and u, v >= 1")
    if nu2(u) == nu2(v):
        value = b ** gcd(u, v) + 1
    else:
        value = 2 if b % 2 else 1
    assert value == gcd(b ** u + 1, b ** v + 1), (b, u, v)
    return value


def remainder(a: int, b: int) -> int:
    """Least non-negative residue of a modulo b."""
    if b < 1:
        raise ValueError("modulus must be positive")
    return a % b


def psi(q: int, x: int) -> int:
    """(q-1)/2 * prod_{j=0..x} (q^(2^j) - 1); just (q-1)/2 when x < 0."""
    if q % 2 == 0:
        raise ValueError("psi is defined for odd q")
    value = (q - 1) // 2
    for j in range(x + 1):
        value *= q ** (1 << j) - 1
    return value


def phi_term(q: int, j: int) -> int:
    if j < 1:
        raise ValueError("phi_term needs j >= 1")
    e = 8 * j
    return q**e - q**(e - 1) + q**(e - 3) - q**(e - 4) + q**(e - 5) - q**(e - 7)


def exact_div(a: int, b: int) -> int:
    """a / b, raising ArithmeticError when b does not divide a."""
    qt, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"{b} does not divide {a}")
    return qt
