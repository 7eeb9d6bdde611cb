"""Finite fields, BCH generator polynomials and minimum-distance search.

Extension-field elements are ints whose base-p digits are the coefficients of
a polynomial in the primitive root x (little-endian).  Fields up to
``TABLE_LIMIT`` elements use exp/log/Zech tables; larger ones fall back to
digit-vector arithmetic, which is slow but exact.

Code symbols live in GF(q) and are stored as small integer labels.  For prime
q the label is the residue itself; for q = p^e, e > 1, label j >= 1 stands for
gamma^(j-1) with gamma a generator of the subfield.
"""

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence

import numpy as np
from sympy import factorint

from .cosets import CosetContext
from .dims import BchSpec, defining_set, distance_lower_bound
from .errors import BudgetExceeded, DeskScaleExceeded
from .modmath import PrimePower, ord_mod

TABLE_LIMIT = 1 << 22
DESK_LIMIT = 10 ** 8
DEFAULT_BUDGET = 5 * 10 ** 7
EXTENDED_BUDGET = 2 * 10 ** 8


# -- polynomials over a prime field, coefficient lists ascending -------------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, f, p)


def _pmod(a, f, p):
    a = list(a)
    d = len(f) - 1
    inv = pow(f[-1], -1, p)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * f[j]) % p
    return _ptrim(a[:d] if len(a) > d else a)


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppow_x(e, f, p):
    """x^e mod f."""
    result, base = [1], [0, 1]
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic f over GF(p)."""
    d = len(f) - 1
    if d < 1:
        return False
    xq = [0, 1]
    powers = {}
    for i in range(1, d + 1):
        xq = _frobenius(xq, f, p)
        powers[i] = xq
    if _psub(powers[d], [0, 1], p):
        return False
    for r in factorint(d):
        g = _pgcd(f, _psub(powers[d // r], [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def _frobenius(a, f, p):
    # a^p mod f by square-and-multiply
    result, base, e = [1], a, p
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


# -- extension field ---------------------------------------------------------

class Field:
    """GF(p^t) with a primitive modulus, so x itself generates the unit group."""

    def __init__(self, p: int, t: int, seed: int = 0, tables: Optional[bool] = None):
        self.p, self.t = p, t
        self.order = p ** t
        self.modulus = self._find_primitive(seed)
        if tables is None:
            tables = self.order <= TABLE_LIMIT
        self.tables = tables
        if tables:
            self._build_tables()

    def __repr__(self):
        return f"Field(GF({self.p}^{self.t}), modulus={self.modulus})"

    def _find_primitive(self, seed):
        p, t = self.p, self.t
        if t == 1:
            g = _prime_field_generator(p)
            return [(-g) % p, 1]
        rng = random.Random(seed)
        group = self.order - 1
        primes = list(factorint(group))
        while True:
            f = [rng.randrange(p) for _ in range(t)] + [1]
            if f[0] == 0 or not is_irreducible(f, p):
                continue
            if all(_ppow_x(group // r, f, p) != [1] for r in primes):
                return f

    # digits <-> int
    def to_digits(self, a: int) -> List[int]:
        out = []
        for _ in range(self.t):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        v = 0
        for d in reversed(list(ds)):
            v = v * self.p + d
        return v

    @property
    def generator(self) -> int:
        """The primitive element x (or the chosen generator for t = 1)."""
        if self.t == 1:
            return (-self.modulus[0]) % self.p
        return self.p

    def _times_generator_matrix(self):
        # column j = digits of g * x^j, so multiplication by g is a linear map
        cols = [self.to_digits(self._mul_dense(self.p ** j, self.generator))
                for j in range(self.t)]
        return np.array(cols, dtype=np.int64).T

    def _build_tables(self, block: int = 1024):
        size, p, t = self.order - 1, self.p, self.t
        step = self._times_generator_matrix()
        digits = np.zeros((size, t), dtype=np.int64)
        digits[0, 0] = 1
        first = min(block, size)
        for i in range(1, first):
            digits[i] = step @ digits[i - 1] % p
        # g^(i + block) = g^block * g^i, a fixed linear map on digit vectors
        jump = np.eye(t, dtype=np.int64)
        for _ in range(first):
            jump = step @ jump % p
        for start in range(first, size, first):
            stop = min(start + first, size)
            digits[start:stop] = digits[start - first:stop - first] @ jump.T % p
        vals = digits @ (p ** np.arange(t, dtype=np.int64))
        log = np.full(self.order, -1, dtype=np.int64)
        log[vals] = np.arange(size)
        if (log[1:] < 0).any():
            raise ArithmeticError("modulus is not primitive")
        self.exp = np.concatenate([vals, vals])
        self.log = log
        # zech[i] = log(1 + g^i), -1 when 1 + g^i = 0
        low = vals % p
        self.zech = log[vals - low + (low + 1) % p]

    def _mul_dense(self, a, b):
        if self.t == 1:
            return a * b % self.p
        return self.from_digits(_pmulmod(self.to_digits(a), self.to_digits(b),
                                         self.modulus, self.p) + [0] * self.t)

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        if self.tables:
            la, lb = int(self.log[a]), int(self.log[b])
            z = int(self.zech[(lb - la) % (self.order - 1)])
            return 0 if z < 0 else int(self.exp[(la + z) % (self.order - 1)])
        da, db = self.to_digits(a), self.to_digits(b)
        return self.from_digits((x + y) % self.p for x, y in zip(da, db))

    def neg(self, a: int) -> int:
        return self.from_digits((-x) % self.p for x in self.to_digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.tables:
            return int(self.exp[int(self.log[a]) + int(self.log[b])])
        return self._mul_dense(a, b)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        if self.tables:
            return int(self.exp[(int(self.log[a]) * e) % (self.order - 1)])
        e %= self.order - 1
        result = 1
        while e:
            if e & 1:
                result = self._mul_dense(result, a)
            a = self._mul_dense(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.order - 2)

    def element_order(self, a: int) -> int:
        return ord_like(self, a)


def ord_like(F: Field, a: int) -> int:
    group = F.order - 1
    t = group
    for r in factorint(group):
        while t % r == 0 and F.pow(a, t // r) == 1:
            t //= r
    return t


def _prime_field_generator(p):
    if p == 2:
        return 1
    primes = list(factorint(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in primes):
            return g
    raise ArithmeticError(f"no generator mod {p}")


# -- the coefficient field GF(q) ---------------------------------------------

class BaseField:
    """GF(q) on labels 0..q-1 with full operation tables, embedded in ``ext``."""

    def __init__(self, q: int, ext: Field):
        pp = PrimePower.of(q)
        if pp.p != ext.p or ext.t % pp.e:
            raise ValueError(f"GF({q}) is not a subfield of GF({ext.p}^{ext.t})")
        self.q, self.ext = q, ext
        self.prime = pp.e == 1
        if self.prime:
            elems = list(range(q))
        else:
            gamma = ext.pow(ext.generator, (ext.order - 1) // (q - 1))
            elems = [0] + [ext.pow(gamma, j) for j in range(q - 1)]
        self.to_ext = elems
        self.from_ext: Dict[int, int] = {e: i for i, e in enumerate(elems)}
        add = np.zeros((q, q), dtype=np.uint8 if q < 256 else np.int32)
        mul = np.zeros_like(add)
        for i in range(q):
            for j in range(q):
                add[i, j] = self.from_ext[ext.add(elems[i], elems[j])]
                mul[i, j] = self.from_ext[ext.mul(elems[i], elems[j])]
        self.add_tab, self.mul_tab = add, mul
        self.neg_tab = np.array([int(np.flatnonzero(add[i] == 0)[0]) for i in range(q)])
        self.inv_tab = [0] + [int(np.flatnonzero(mul[i] == 1)[0]) for i in range(1, q)]

    def add(self, a, b):
        return int(self.add_tab[a, b])

    def mul(self, a, b):
        return int(self.mul_tab[a, b])

    def neg(self, a):
        return int(self.neg_tab[a])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_tab[a]

    def label(self, e: int) -> int:
        """Label of an extension element, or ValueError if it is not in GF(q)."""
        try:
            return self.from_ext[e]
        except KeyError:
            raise ValueError(f"element {e} is not in GF({self.q})") from None


# -- polynomials over GF(q), label lists ascending ---------------------------

def poly_mul(K: BaseField, a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not len(a) or not len(b):
        return []
    if K.prime:
        return _ptrim([int(c) for c in np.convolve(np.asarray(a, dtype=np.int64),
                                                   np.asarray(b, dtype=np.int64)) % K.q])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = K.mul_tab[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] = int(K.add_tab[out[i + j], row[y]])
    return _ptrim(out)


def poly_divmod(K: BaseField, a: Sequence[int], f: Sequence[int]):
    a = list(a)
    d = len(f) - 1
    if d < 0:
        raise ZeroDivisionError("division by the zero polynomial")
    inv = K.inv(f[-1])
    quot = [0] * max(len(a) - d, 0)
    fa = np.asarray(f, dtype=np.int64)
    for i in range(len(a) - 1, d - 1, -1):
        c = K.mul(a[i], inv)
        if not c:
            continue
        quot[i - d] = c
        if K.prime:
            seg = (np.asarray(a[i - d:i + 1], dtype=np.int64) - c * fa) % K.q
            a[i - d:i + 1] = seg.tolist()
        else:
            for j in range(d + 1):
                a[i - d + j] = K.add(a[i - d + j], K.neg(K.mul(c, f[j])))
    rem = _ptrim(a[:d] if len(a) > d else a)
    return _ptrim(quot), rem


def reciprocal(K: BaseField, g: Sequence[int]) -> List[int]:
    """g0^-1 * x^deg(g) * g(1/x)."""
    if not g or g[0] == 0:
        raise ValueError("reciprocal needs g(0) != 0")
    inv = K.inv(g[0])
    return [K.mul(inv, c) for c in reversed(g)]


def poly_eval_ext(K: BaseField, a: Sequence[int], z: int) -> int:
    F = K.ext
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, z), K.to_ext[c])
    return acc


# -- BCH construction --------------------------------------------------------

@dataclass
class Extension:
    field: Field
    base: BaseField
    beta: int
    n: int


def build_extension(q: int, n: int, limit: int = DESK_LIMIT, seed: int = 0,
                    order_hint: int = None) -> Extension:
    """GF(q^t), t = ord_n(q), with beta of multiplicative order exactly n."""
    pp = PrimePower.of(q)
    t = ord_mod(q, n, multiple=order_hint)
    if q ** t > limit:
        raise DeskScaleExceeded(f"GF({q}^{t}) has {q ** t} elements, above the limit {limit}")
    F = Field(pp.p, pp.e * t, seed=seed)
    beta = F.pow(F.generator, (F.order - 1) // n)
    if F.pow(beta, n) != 1 or any(F.pow(beta, n // r) == 1 for r in factorint(n)):
        raise ArithmeticError(f"beta does not have order {n}")
    return Extension(F, BaseField(q, F), beta, n)


def minimal_poly(ext: Extension, ctx: CosetContext, i: int,
                 beta_powers: Sequence[int] = None) -> List[int]:
    """prod over j in C_i of (x - beta^j), returned over GF(q)."""
    F, K, n = ext.field, ext.base, ext.n
    coeffs = [1]
    j = i % n
    while True:
        root = beta_powers[j] if beta_powers is not None else F.pow(ext.beta, j)
        nr = F.neg(root)
        # multiply by (x - root)
        nxt = [0] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d + 1] = F.add(nxt[d + 1], c)
            nxt[d] = F.add(nxt[d], F.mul(c, nr))
        coeffs = nxt
        j = j * ctx.q % n
        if j == i % n:
            break
    try:
        return [K.label(c) for c in coeffs]
    except ValueError as exc:
        raise ArithmeticError(f"minimal polynomial of beta^{i} left GF({K.q})") from exc


@dataclass
class CyclicCode:
    q: int
    n: int
    generator: List[int]
    base: BaseField = field(repr=False)
    spec: Optional[BchSpec] = None
    defining: Optional[object] = field(default=None, repr=False)
    extension: Optional[Extension] = field(default=None, repr=False)

    def __post_init__(self):
        self.check = self._check_poly()

    @property
    def k(self) -> int:
        return self.n - (len(self.generator) - 1)

    def _check_poly(self):
        xn1 = [self.base.neg(1)] + [0] * (self.n - 1) + [1]
        h, rem = poly_divmod(self.base, xn1, self.generator)
        if rem:
            raise ArithmeticError("generator does not divide x^n - 1")
        return h

    @cached_property
    def parity_rows(self) -> np.ndarray:
        """Systematic form: message symbol i contributes row i to the check symbols."""
        K, g, r = self.base, self.generator, len(self.generator) - 1
        rows = np.zeros((self.k, r), dtype=np.int64)
        cur = [0] * (r - 1) + [1] if r else []     # x^(r-1) mod g
        for i in range(self.k):
            cur = _times_x_mod(K, cur, g)
            rows[i, :len(cur)] = [K.neg(c) for c in cur]
        return rows

    def encode(self, msg: Sequence[int]) -> List[int]:
        """Non-systematic encoding c(x) = msg(x) g(x), padded to length n."""
        if len(msg) != self.k:
            raise ValueError(f"message length {len(msg)} != k={self.k}")
        c = poly_mul(self.base, list(msg), self.generator)
        return c + [0] * (self.n - len(c))

    def encode_systematic(self, msg: Sequence[int]) -> List[int]:
        K = self.base
        parity = [0] * (len(self.generator) - 1)
        for i, u in enumerate(msg):
            if u:
                for j, v in enumerate(self.parity_rows[i]):
                    parity[j] = K.add(parity[j], K.mul(u, int(v)))
        return parity + list(msg)


def _times_x_mod(K, cur, g):
    r = len(g) - 1
    if r == 0:
        return []
    shifted = [0] + list(cur) + [0] * (r - 1 - len(cur))
    top = shifted[r] if len(shifted) > r else 0
    shifted = shifted[:r]
    if top:
        shifted = [K.add(a, K.neg(K.mul(top, b))) for a, b in zip(shifted, g[:r])]
    return shifted


def generator_poly(spec: BchSpec, limit: int = DESK_LIMIT, seed: int = 0) -> CyclicCode:
    """lcm of the minimal polynomials of beta^b, ..., beta^(b+delta-2)."""
    ctx = spec.context()
    ext = build_extension(spec.q, spec.n, limit=limit, seed=seed, order_hint=ctx.ord)
    T = defining_set(spec, ctx)
    F = ext.field
    powers = [1] * spec.n
    for j in range(1, spec.n):
        powers[j] = F.mul(powers[j - 1], ext.beta)
    g = [1]
    for s in T.leaders:
        g = poly_mul(ext.base, g, minimal_poly(ext, ctx, s, powers))
    if len(g) - 1 != T.cardinality:
        raise ArithmeticError("generator degree differs from defining set size")
    return CyclicCode(spec.q, spec.n, g, ext.base, spec, T, ext)


def is_lcd(code: CyclicCode) -> bool:
    return reciprocal(code.base, code.generator) == list(code.generator)


# -- minimum distance --------------------------------------------------------

def _low_block(K, rows):
    """Check-symbol vectors and info weights for every message on ``rows``."""
    r = rows.shape[1]
    vecs = np.zeros((1, r), dtype=np.uint8)
    wts = np.zeros(1, dtype=np.int64)
    for row in rows:
        parts, wparts = [vecs], [wts]
        for a in range(1, K.q):
            contrib = K.mul_tab[a][row]
            parts.append(K.add_tab[vecs, contrib[None, :]])
            wparts.append(wts + 1)
        vecs, wts = np.concatenate(parts), np.concatenate(wparts)
    return vecs, wts


def _weights(K, low, high_vec):
    if K.prime:
        s = low + high_vec.astype(np.uint8)
        return low.shape[1] - (s == 0).sum(axis=1) - (s == K.q).sum(axis=1)
    return (K.add_tab[low, high_vec[None, :]] != 0).sum(axis=1)


def _projective_messages(K, k):
    """Nonzero vectors over GF(q) whose first nonzero entry is 1."""
    if k == 0:
        return
    for lead in range(k):
        tail = k - lead - 1
        for rest in itertools.product(range(K.q), repeat=tail):
            yield (0,) * lead + (1,) + rest


def min_distance_exhaustive(code: CyclicCode, budget: int = DEFAULT_BUDGET,
                            block_bytes: int = 1 << 24) -> int:
    """Exact minimum Hamming weight over all nonzero codewords.

    Raises BudgetExceeded (with an upper bound) once more than ``budget``
    codewords would have been covered.
    """
    K, k = code.base, code.k
    if k == 0:
        raise ValueError("the zero code has no minimum distance")
    rows = code.parity_rows
    r = rows.shape[1]
    kl = 0
    while kl < k and K.q ** (kl + 1) * max(r, 1) <= block_bytes:
        kl += 1
    low, low_w = _low_block(K, rows[:kl])
    low = low.astype(np.uint8)
    high_rows = rows[kl:]
    kh = k - kl
    best = code.n + 1
    covered = 0
    if kl:
        # high part zero: low part alone (drop the all-zero message)
        w = _weights(K, low[1:], np.zeros(r, dtype=np.int64)) + low_w[1:]
        best = int(w.min())
        covered = K.q ** kl
    for hi in _projective_messages(K, kh):
        if covered > budget:
            raise BudgetExceeded(best, covered, budget)
        hw = sum(1 for a in hi if a)
        covered += (K.q - 1) * K.q ** kl
        if hw >= best:
            continue
        hv = np.zeros(r, dtype=np.int64)
        for a, row in zip(hi, high_rows):
            if a:
                hv = K.add_tab[hv, K.mul_tab[a][row]].astype(np.int64)
        w = _weights(K, low, hv) + low_w + hw
        best = min(best, int(w.min()))
    if covered > budget:
        raise BudgetExceeded(best, covered, budget)
    return best


def min_distance_sample(code: CyclicCode, trials: int, seed: int = 0) -> int:
    """Smallest weight among random nonzero codewords: an upper bound only."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    K, k = code.base, code.k
    rng = np.random.default_rng(seed)
    rows = code.parity_rows
    best = code.n + 1
    batch = 4096
    done = 0
    while done < trials:
        b = min(batch, trials - done)
        msgs = rng.integers(0, K.q, size=(b, k))
        zero = ~msgs.any(axis=1)
        msgs[zero, 0] = 1
        if K.prime:
            par = (msgs @ rows) % K.q
        else:
            par = np.zeros((b, rows.shape[1]), dtype=np.int64)
            for i in range(k):
                par = K.add_tab[par, K.mul_tab[msgs[:, i][:, None], rows[i][None, :]]]
        w = (par != 0).sum(axis=1) + (msgs != 0).sum(axis=1)
        best = min(best, int(w.min()))
        done += b
    return best


def code_params(code: CyclicCode, budget: Optional[int] = DEFAULT_BUDGET):
    """CodeParams with the exact distance when enumeration fits the budget."""
    from .dims import CodeParams
    d_exact = None
    if budget and code.q ** code.k <= budget:
        d_exact = min_distance_exhaustive(code, budget)
    return CodeParams(code.n, code.k, distance_lower_bound(code.spec), d_exact)
