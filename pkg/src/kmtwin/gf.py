"""Finite fields F_{p^k} arranged as a lazily grown tower inside the algebraic closure.

Elements carry their absolute degree over F_p (the *level*).  A level is built
the first time it is requested: its modulus is the lexicographically least
monic irreducible polynomial of that degree, and embeddings between levels are
chosen once, compatibly, by root search.

Elements are stored as integers: the coefficient vector (c_0, ..., c_{k-1}) of
the residue c_0 + c_1 X + ... is read as the base-p number sum c_i p^i.  Small
levels get exp/log/Zech tables so that field operations are table lookups.
"""

from __future__ import annotations

import itertools
import math
import threading
from functools import lru_cache

TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# -- dense polynomials over F_p, coefficient lists low -> high, no trailing zeros

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
    return a


def poly_mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_mod(out, f, p)


def poly_powmod(a, e, f, p):
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
        a = _trim(a)
        b = _trim(b)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def is_irreducible(f, p) -> bool:
    """Rabin's test for a monic polynomial f over F_p."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # x^(p^k) == x mod f
    if _trim(poly_sub(_frobenius_power(x, k, f, p), x, p)):
        return False
    for r in prime_factors(k):
        h = poly_sub(_frobenius_power(x, k // r, f, p), x, p)
        if len(poly_gcd(f, h, p)) > 1:
            return False
    return True


def _frobenius_power(a, times, f, p):
    for _ in range(times):
        a = poly_powmod(a, p, f, p)
    return a


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k; returns (c_0..c_{k-1}, 1)."""
    for low in itertools.product(range(p), repeat=k):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _to_int(coeffs, p):
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _to_coeffs(v, p, k):
    out = []
    for _ in range(k):
        v, c = divmod(v, p)
        out.append(c)
    return out


class Level:
    """The field F_{p^k} with a fixed modulus, operating on integer codes."""

    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k
        self.size = p**k
        self.modulus = least_irreducible(p, k)
        self.order = self.size - 1
        self._digits = [p**i for i in range(k)]
        self.generator = self._find_generator()
        self.tabled = self.size <= TABLE_LIMIT
        if self.tabled:
            self._build_tables()

    # polynomial fallbacks
    def _pmul(self, a, b):
        r = poly_mulmod(_to_coeffs(a, self.p, self.k), _to_coeffs(b, self.p, self.k),
                        list(self.modulus), self.p)
        return _to_int(r + [0] * (self.k - len(r)), self.p)

    def _ppow(self, a, e):
        r = poly_powmod(_to_coeffs(a, self.p, self.k), e, list(self.modulus), self.p)
        return _to_int(r + [0] * (self.k - len(r)), self.p)

    def _find_generator(self):
        if self.size == 2:
            return 1
        fac = prime_factors(self.order)
        for g in range(2, self.size):
            if all(self._ppow(g, self.order // r) != 1 for r in fac):
                return g
        raise AssertionError("no generator")  # pragma: no cover

    def _build_tables(self):
        n = self.order
        exp = [0] * (2 * n)
        log = [None] * self.size
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._pmul(x, self.generator)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self.exp = exp
        self.log = log
        # zech[d] = log(1 + g^d), None when 1 + g^d = 0
        zech = [None] * n
        for d in range(n):
            s = self._padd(1, exp[d])
            zech[d] = log[s] if s else None
        self.zech = zech

    def _padd(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        out = 0
        for w in self._digits:
            out += ((a // w + b // w) % p) * w
        return out

    # public integer-code operations
    def add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        if self.p == 2:
            return a ^ b
        if self.tabled:
            la, lb = self.log[a], self.log[b]
            z = self.zech[(lb - la) % self.order]
            return 0 if z is None else self.exp[la + z]
        return self._padd(a, b)

    def neg(self, a):
        if not a or self.p == 2:
            return a
        p = self.p
        out = 0
        for w in self._digits:
            out += ((-(a // w)) % p) * w
        return out

    def mul(self, a, b):
        if not a or not b:
            return 0
        if self.tabled:
            return self.exp[self.log[a] + self.log[b]]
        return self._pmul(a, b)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.tabled:
            return self.exp[(-self.log[a]) % self.order]
        return self._ppow(a, self.order - 1)

    def pow(self, a, e):
        if not a:
            if e < 0:
                raise ZeroDivisionError("inverse of zero in finite field")
            return 1 if e == 0 else 0
        if self.tabled:
            return self.exp[(self.log[a] * e) % self.order]
        e %= self.order
        return self._ppow(a, e)

    def eval_poly(self, coeffs, y):
        """Evaluate sum c_i Y^i (c_i in F_p) at the level element y."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, y), c)
        return acc

    def mult_order(self, a):
        if not a:
            raise ValueError("zero has no multiplicative order")
        if self.tabled:
            return self.order // math.gcd(self.order, self.log[a])
        n = self.order
        for r in prime_factors(self.order):
            while n % r == 0 and self._ppow(a, n // r) == 1:
                n //= r
        return n

    def subfield_elements(self, d):
        """Nonzero elements of the unique subfield of degree d, in a fixed order."""
        step = self.order // (p_pow(self.p, d) - 1)
        g_step = self.pow(self.generator, step)
        x = 1
        for _ in range(p_pow(self.p, d) - 1):
            yield x
            x = self.mul(x, g_step)


def p_pow(p, d):
    return p**d


class FieldTower:
    """Directed system of finite fields F_{p^k}, k = 1, 2, ..., grown on demand.

    ``q = p ** q_exponent`` is the base field; "q-levels" are the fields F_{q^l}.
    """

    def __init__(self, p: int, q_exponent: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if q_exponent < 1:
            raise ValueError("q_exponent must be positive")
        self.p = p
        self.q_exponent = q_exponent
        self.q = p**q_exponent
        self._levels: dict[int, Level] = {}
        self._embeddings: dict[tuple[int, int], int] = {}
        self._embed_tables: dict[tuple[int, int], list[int]] = {}
        self._lock = threading.RLock()

    def __repr__(self):
        return f"FieldTower(p={self.p}, q={self.q})"

    def level(self, k: int) -> Level:
        lev = self._levels.get(k)
        if lev is None:
            with self._lock:
                lev = self._levels.get(k)
                if lev is None:
                    lev = Level(self.p, k)
                    self._levels[k] = lev
        return lev

    def degree_of_q_level(self, ell: int) -> int:
        return ell * self.q_exponent

    # -- element construction
    def elt(self, value, level: int | None = None) -> "FieldElt":
        """Build an element from an int (prime-field residue), a coefficient list, or an element."""
        if isinstance(value, FieldElt):
            return value if level is None else value.embed(level)
        if isinstance(value, int):
            k = level or 1
            self.level(k)
            return FieldElt(self, k, value % self.p)
        coeffs = [int(c) % self.p for c in value]
        k = level or max(1, len(coeffs))
        if len(coeffs) > k:
            raise ValueError("too many coefficients for level")
        self.level(k)
        return FieldElt(self, k, _to_int(coeffs, self.p))

    def zero(self, level=1):
        return FieldElt(self, level, 0)

    def one(self, level=1):
        return FieldElt(self, level, 1)

    def generator(self, level: int) -> "FieldElt":
        lev = self.level(level)
        return FieldElt(self, level, lev.generator)

    def elements(self, level: int):
        lev = self.level(level)
        return [FieldElt(self, level, v) for v in range(lev.size)]

    def units(self, level: int):
        return self.elements(level)[1:]

    def random(self, rng, level: int, nonzero=False) -> "FieldElt":
        size = self.level(level).size
        v = rng.randrange(1 if nonzero else 0, size)
        return FieldElt(self, level, v)

    # -- embeddings
    def embedding_image(self, k: int, big: int) -> int:
        """Image of the generator X of level k inside level ``big`` (integer code).

        Images are chosen so that every triangle of embeddings among divisors
        of ``big`` commutes: the least root of the level-k modulus that is
        compatible with the already fixed embeddings of all proper divisors of k.
        """
        if big % k:
            raise ValueError(f"level {k} does not divide level {big}")
        key = (k, big)
        y = self._embeddings.get(key)
        if y is not None:
            return y
        with self._lock:
            y = self._embeddings.get(key)
            if y is not None:
                return y
            if k == 1:
                # prime field: constants embed as themselves
                self._embeddings[key] = 0
                return 0
            if k == big:
                y = self._code_of_x(big)
                self._embeddings[key] = y
                return y
            lev_small = self.level(k)
            lev_big = self.level(big)
            f = list(lev_small.modulus)
            constraints = []
            for e in divisors(k):
                if e == k or e == 1:
                    continue
                x_e_in_k = self.embedding_image(e, k)
                x_e_in_big = self.embedding_image(e, big)
                constraints.append((_to_coeffs(x_e_in_k, self.p, k), x_e_in_big))
            for cand in lev_big.subfield_elements(k):
                if lev_big.eval_poly(f, cand) != 0:
                    continue
                if all(lev_big.eval_poly(c, cand) == target for c, target in constraints):
                    y = cand
                    break
            else:  # pragma: no cover
                raise AssertionError(f"no compatible embedding {k}->{big}")
            self._embeddings[key] = y
            return y

    def _code_of_x(self, k):
        return self.p

    def embed_code(self, v: int, k: int, big: int) -> int:
        if k == big:
            return v
        key = (k, big)
        table = self._embed_tables.get(key)
        if table is None and self.p**k <= 4096:
            with self._lock:
                y = self.embedding_image(k, big)
                lev = self.level(big)
                table = [lev.eval_poly(_to_coeffs(u, self.p, k), y) for u in range(self.p**k)]
                self._embed_tables[key] = table
        if table is not None:
            return table[v]
        y = self.embedding_image(k, big)
        return self.level(big).eval_poly(_to_coeffs(v, self.p, k), y)

    def descend_code(self, v: int, big: int, k: int) -> int | None:
        """Preimage of v under the embedding k -> big, or None if v is not in the subfield."""
        if k == big:
            return v
        if k == 1:
            return v if v < self.p else None
        lev = self.level(big)
        if v and lev.pow(v, self.p**k) != v:
            return None
        table = self._embed_tables.get((k, big))
        if table is None:
            self.embed_code(0, k, big)
            table = self._embed_tables.get((k, big))
        if table is not None:
            try:
                return table.index(v)
            except ValueError:  # pragma: no cover
                return None
        for u in range(self.p**k):  # pragma: no cover
            if self.embed_code(u, k, big) == v:
                return u
        return None  # pragma: no cover


class FieldElt:
    """An element of F_{p^level} inside a FieldTower.  Immutable."""

    __slots__ = ("tower", "level", "value", "_canon")

    def __init__(self, tower: FieldTower, level: int, value: int):
        self.tower = tower
        self.level = level
        self.value = value
        self._canon = None

    @property
    def coeffs(self) -> list[int]:
        return _to_coeffs(self.value, self.tower.p, self.level)

    @property
    def p(self):
        return self.tower.p

    def embed(self, target_level: int) -> "FieldElt":
        if target_level % self.level:
            raise ValueError(f"cannot embed level {self.level} into level {target_level}")
        if target_level == self.level:
            return self
        return FieldElt(self.tower, target_level,
                        self.tower.embed_code(self.value, self.level, target_level))

    def canonical(self) -> tuple[int, int]:
        """(minimal level, code there): a level-independent identity for the element."""
        c = self._canon
        if c is None:
            c = (1, self.value) if self.level == 1 else None
            if c is None:
                for d in divisors(self.level):
                    u = self.tower.descend_code(self.value, self.level, d)
                    if u is not None:
                        c = (d, u)
                        break
            self._canon = c
        return c

    def minimal(self) -> "FieldElt":
        d, u = self.canonical()
        return self if d == self.level else FieldElt(self.tower, d, u)

    def _coerce(self, other):
        if isinstance(other, FieldElt):
            if other.tower is not self.tower:
                raise ValueError("elements from different towers")
            if other.level == self.level:
                return self.level, self.value, other.value
            k = math.lcm(self.level, other.level)
            return (k, self.tower.embed_code(self.value, self.level, k),
                    self.tower.embed_code(other.value, other.level, k))
        if isinstance(other, int):
            return self.level, self.value, self.tower.embed_code(other % self.tower.p, 1, self.level)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        k, a, b = c
        return FieldElt(self.tower, k, self.tower.level(k).add(a, b))

    __radd__ = __add__

    def __neg__(self):
        return FieldElt(self.tower, self.level, self.tower.level(self.level).neg(self.value))

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        k, a, b = c
        lev = self.tower.level(k)
        return FieldElt(self.tower, k, lev.add(a, lev.neg(b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        k, a, b = c
        return FieldElt(self.tower, k, self.tower.level(k).mul(a, b))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElt":
        return FieldElt(self.tower, self.level, self.tower.level(self.level).inv(self.value))

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        k, a, b = c
        lev = self.tower.level(k)
        return FieldElt(self.tower, k, lev.mul(a, lev.inv(b)))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        return FieldElt(self.tower, self.level, self.tower.level(self.level).pow(self.value, e))

    def __bool__(self):
        return self.value != 0

    def is_one(self):
        return self.value == 1

    def order(self) -> int:
        return self.tower.level(self.level).mult_order(self.value)

    def __eq__(self, other):
        if isinstance(other, int):
            other = FieldElt(self.tower, 1, other % self.tower.p)
        if not isinstance(other, FieldElt):
            return NotImplemented
        if other.level == self.level:
            return self.value == other.value
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        if self.level == 1:
            return f"{self.value}"
        return f"F{self.tower.p}^{self.level}{self.coeffs}"

    def to_json(self) -> dict:
        return {"p": self.tower.p, "level": self.level, "coeffs": self.coeffs}


def tower_create(p: int, q_exponent: int = 1) -> FieldTower:
    return FieldTower(p, q_exponent)


@lru_cache(maxsize=None)
def _cached_tower(p: int, q_exponent: int) -> FieldTower:
    return FieldTower(p, q_exponent)


def shared_tower(p: int, q_exponent: int = 1) -> FieldTower:
    """Process-wide tower for (p, q_exponent); levels are shared across callers."""
    return _cached_tower(p, q_exponent)


def embed(x: FieldElt, target_level: int) -> FieldElt:
    return x.embed(target_level)


def unit_of_order_avoiding(tower: FieldTower, e: int) -> tuple[FieldElt, int]:
    """Least q-level l admitting a unit with kappa**e != 1, and that level's generator.

    Such a unit exists iff (q^l - 1) does not divide e.
    """
    if e == 0:
        raise ValueError("exponent must be nonzero")
    ell = 1
    while e % (tower.q**ell - 1) == 0:
        ell += 1
    kappa = tower.generator(tower.degree_of_q_level(ell))
    assert kappa**e != 1
    return kappa, ell
