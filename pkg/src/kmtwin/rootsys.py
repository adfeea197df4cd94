"""Rank-2 Cartan data, the infinite dihedral Weyl group, and real roots.

Conventions (all chamber and root encodings depend on them):

* the apartment is the real line tiled by the integers; the base chamber is (0, 1);
* the simple root alpha is the half-line [0, inf), beta is (-inf, 1];
* s_alpha is the reflection x -> -x, s_beta is x -> 2 - x;
* tau = s_alpha s_beta is then the translation x -> x - 2.

A real root is stored by its coordinates (a, b) in the basis (alpha, beta).
Its half-line form is ``(wall, direction)`` with direction +1 for [wall, inf)
and -1 for (-inf, wall].  A root is positive iff its half-line contains the
base chamber.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

ALPHA = "alpha"
BETA = "beta"
SIMPLE = (ALPHA, BETA)


class GCMError(ValueError):
    """Cartan data outside the supported regime."""


@dataclass(frozen=True)
class GCM2:
    """A = [[2, -n], [-m, 2]], so beta(alpha^vee) = -n and alpha(beta^vee) = -m."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise GCMError("m and n must be positive integers")

    @property
    def matrix(self):
        return ((2, -self.n), (-self.m, 2))

    @property
    def indefinite(self) -> bool:
        return self.m * self.n > 4

    @property
    def trivial_commutation(self) -> bool:
        return self.indefinite and self.m >= 2 and self.n >= 2

    def require_trivial_commutation(self):
        if self.m * self.n <= 4:
            raise GCMError(
                f"(m, n) = ({self.m}, {self.n}) has mn <= 4; the group must be of "
                "indefinite type (mn > 4)")
        if self.m == 1 or self.n == 1:
            raise GCMError(
                f"(m, n) = ({self.m}, {self.n}): m = 1 or n = 1 gives non-trivial "
                "commutation relations, which are out of scope (need m, n >= 2)")

    # pairings
    def pair_alpha(self, a: int, b: int) -> int:
        """gamma(alpha^vee) for gamma = a alpha + b beta."""
        return 2 * a - self.n * b

    def pair_beta(self, a: int, b: int) -> int:
        """gamma(beta^vee)."""
        return -self.m * a + 2 * b

    def pair(self, root: "Root", delta: str) -> int:
        if delta == ALPHA:
            return self.pair_alpha(root.a, root.b)
        return self.pair_beta(root.a, root.b)

    @property
    def tau_matrix(self):
        m, n = self.m, self.n
        return ((m * n - 1, -n), (m, -1))


@dataclass(frozen=True, order=True)
class Root:
    a: int
    b: int

    def __neg__(self):
        return Root(-self.a, -self.b)

    def __add__(self, other):
        return Root(self.a + other.a, self.b + other.b)

    def __repr__(self):
        return f"Root({self.a}, {self.b})"


ROOT_ALPHA = Root(1, 0)
ROOT_BETA = Root(0, 1)


def simple_root(delta: str) -> Root:
    return ROOT_ALPHA if delta == ALPHA else ROOT_BETA


class NotARealRoot(ValueError):
    pass


# -- Weyl group

@dataclass(frozen=True)
class WeylElt:
    """A reduced (alternating) word over {alpha, beta}, read left to right."""

    word: tuple[str, ...] = ()

    def __post_init__(self):
        for x, y in zip(self.word, self.word[1:]):
            if x == y:
                raise ValueError("WeylElt word must be alternating; use weyl_normalize")

    def __len__(self):
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return weyl_mul(self, other)

    def inverse(self) -> "WeylElt":
        return WeylElt(tuple(reversed(self.word)))

    def __repr__(self):
        return "W(" + "".join("a" if s == ALPHA else "b" for s in self.word) + ")"

    def to_str(self) -> str:
        return "".join("a" if s == ALPHA else "b" for s in self.word) or "1"

    def act_point(self, x):
        for s in reversed(self.word):
            x = reflect_point(s, x)
        return x


IDENTITY = WeylElt(())


def weyl_normalize(word) -> WeylElt:
    out: list[str] = []
    for s in word:
        if s not in SIMPLE:
            raise ValueError(f"unknown simple reflection {s!r}")
        if out and out[-1] == s:
            out.pop()
        else:
            out.append(s)
    return WeylElt(tuple(out))


def weyl_mul(u: WeylElt, v: WeylElt) -> WeylElt:
    return weyl_normalize(u.word + v.word)


def tau_power(j: int) -> WeylElt:
    """tau^j with tau = s_alpha s_beta."""
    if j >= 0:
        return WeylElt((ALPHA, BETA) * j)
    return WeylElt((BETA, ALPHA) * (-j))


def weyl_elements(max_length: int):
    yield IDENTITY
    for d in range(1, max_length + 1):
        for first in SIMPLE:
            other = BETA if first == ALPHA else ALPHA
            yield WeylElt(tuple(first if i % 2 == 0 else other for i in range(d)))


def other_simple(delta: str) -> str:
    return BETA if delta == ALPHA else ALPHA


# -- half-line model

def reflect_point(s: str, x):
    return -x if s == ALPHA else 2 - x


def reflect_halfline(s: str, hl: tuple[int, int]) -> tuple[int, int]:
    wall, d = hl
    return (reflect_point(s, wall), -d)


def halfline_positive(hl: tuple[int, int]) -> bool:
    wall, d = hl
    return wall <= 0 if d > 0 else wall >= 1


def contains_chamber(hl: tuple[int, int], c: int) -> bool:
    """Does the half-line contain the chamber (c, c + 1)?"""
    wall, d = hl
    return c >= wall if d > 0 else c + 1 <= wall


SIMPLE_HALFLINES = {ROOT_ALPHA: (0, 1), ROOT_BETA: (1, -1),
                    -ROOT_ALPHA: (0, -1), -ROOT_BETA: (1, 1)}


def reflect(s: str, gamma: Root, gcm: GCM2) -> Root:
    """s_delta(gamma) = gamma - gamma(delta^vee) delta, for a real root gamma."""
    _descent(gamma, gcm)
    return _reflect(s, gamma, gcm)


def _reflect(s: str, gamma: Root, gcm: GCM2) -> Root:
    c = gcm.pair(gamma, s)
    if s == ALPHA:
        return Root(gamma.a - c, gamma.b)
    return Root(gamma.a, gamma.b - c)


@lru_cache(maxsize=None)
def _descent(gamma: Root, gcm: GCM2) -> tuple[tuple[str, ...], Root]:
    """Word w and a simple root +-delta with gamma = w . (+-delta)."""
    word: list[str] = []
    g = gamma
    for _ in range(10_000):
        if g in SIMPLE_HALFLINES:
            return tuple(word), g
        if g.a * g.b < 0 or (g.a == 0 and g.b == 0):
            raise NotARealRoot(f"{gamma} is not a real root for {gcm}")
        sign = 1 if (g.a > 0 or g.b > 0) else -1
        moved = False
        for s in SIMPLE:
            c = gcm.pair(g, s) * sign
            if c > 0:
                g2 = _reflect(s, g, gcm)
                if abs(g2.a) + abs(g2.b) < abs(g.a) + abs(g.b):
                    word.append(s)
                    g = g2
                    moved = True
                    break
        if not moved:
            raise NotARealRoot(f"{gamma} is not a real root for {gcm}")
    raise NotARealRoot(f"{gamma}: descent did not terminate")  # pragma: no cover


def is_real(gamma: Root, gcm: GCM2) -> bool:
    try:
        _descent(gamma, gcm)
    except NotARealRoot:
        return False
    return True


def check_real(gamma: Root, gcm: GCM2):
    _descent(gamma, gcm)


def descent(gamma: Root, gcm: GCM2) -> tuple[WeylElt, Root]:
    """(w, sigma) with gamma = w . sigma and sigma in {+-alpha, +-beta}."""
    word, base = _descent(gamma, gcm)
    # gamma = s_1 s_2 ... s_k base where word = (s_1, ..., s_k) read in application order
    return WeylElt(tuple(word)) if _alternating(word) else weyl_normalize(word), base


def _alternating(word):
    return all(x != y for x, y in zip(word, word[1:]))


def halfline(gamma: Root, gcm: GCM2) -> tuple[int, int]:
    word, base = _descent(gamma, gcm)
    hl = SIMPLE_HALFLINES[base]
    for s in reversed(word):
        hl = reflect_halfline(s, hl)
    return hl


@lru_cache(maxsize=None)
def root_from_halfline(hl: tuple[int, int], gcm: GCM2) -> Root:
    wall, d = hl
    word = []
    while wall not in (0, 1):
        s = BETA if wall >= 2 else ALPHA
        wall, d = reflect_halfline(s, (wall, d))
        word.append(s)
    base = {(0, 1): ROOT_ALPHA, (0, -1): -ROOT_ALPHA,
            (1, -1): ROOT_BETA, (1, 1): -ROOT_BETA}[(wall, d)]
    g = base
    for s in reversed(word):
        g = _reflect(s, g, gcm)
    return g


@lru_cache(maxsize=None)
def positive_root_at_wall(wall: int, gcm: GCM2) -> Root:
    """The unique positive root whose wall is ``wall``."""
    return root_from_halfline((wall, 1) if wall <= 0 else (wall, -1), gcm)


def is_positive(gamma: Root) -> bool:
    return gamma.a > 0 or gamma.b > 0


def act_on_root(w: WeylElt, gamma: Root, gcm: GCM2) -> Root:
    for s in reversed(w.word):
        gamma = _reflect(s, gamma, gcm)
    return gamma


def act_on_halfline(w: WeylElt, hl: tuple[int, int]) -> tuple[int, int]:
    for s in reversed(w.word):
        hl = reflect_halfline(s, hl)
    return hl


def _matvec(M, v):
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


def tau_root(j: int, gcm: GCM2) -> Root:
    """gamma_j = tau^j . alpha via the two-term recurrence x_{j+1} = (mn-2) x_j - x_{j-1}."""
    t = gcm.m * gcm.n - 2
    prev, cur = (1, 0), _matvec(gcm.tau_matrix, (1, 0))
    if j == 0:
        return Root(1, 0)
    if j > 0:
        for _ in range(j - 1):
            prev, cur = cur, (t * cur[0] - prev[0], t * cur[1] - prev[1])
        return Root(*cur)
    # backwards: x_{j-1} = t x_j - x_{j+1}
    nxt, cur = cur, (1, 0)
    for _ in range(-j):
        nxt, cur = cur, (t * cur[0] - nxt[0], t * cur[1] - nxt[1])
    return Root(*cur)


def eval_char(gamma: Root, mu, nu, gcm: GCM2):
    """gamma(h_alpha(mu) h_beta(nu)) = mu^{gamma(alpha^vee)} nu^{gamma(beta^vee)}."""
    if not mu or not nu:
        raise ValueError("torus parameters must be nonzero")
    return mu ** gcm.pair_alpha(gamma.a, gamma.b) * nu ** gcm.pair_beta(gamma.a, gamma.b)


def coroot_coords(gamma: Root, gcm: GCM2) -> tuple[int, int]:
    """(c, d) with gamma^vee = c alpha^vee + d beta^vee."""
    word, base = _descent(gamma, gcm)
    c, d = {ROOT_ALPHA: (1, 0), -ROOT_ALPHA: (-1, 0),
            ROOT_BETA: (0, 1), -ROOT_BETA: (0, -1)}[base]
    for s in reversed(word):
        if s == ALPHA:
            c = -c + gcm.m * d
        else:
            d = gcm.n * c - d
    return c, d


def pairing(delta: Root, gamma: Root, gcm: GCM2) -> int:
    """delta(gamma^vee)."""
    c, d = coroot_coords(gamma, gcm)
    return c * gcm.pair_alpha(delta.a, delta.b) + d * gcm.pair_beta(delta.a, delta.b)


# -- prenilpotency

def prenilpotent_search(gamma: Root, delta: Root, gcm: GCM2, search_bound: int = 10) -> bool:
    """Exhaustive search for w, w' in W (length <= bound) with both roots positive/negative."""
    hl_g, hl_d = halfline(gamma, gcm), halfline(delta, gcm)
    # moving a wall at distance d past the base chamber needs a word of length ~d
    sep = max(abs(hl_g[0]), abs(hl_d[0] - 1), abs(hl_g[0] - 1), abs(hl_d[0]))
    search_bound = max(search_bound, 2 * sep + 4)
    both_pos = both_neg = False
    for w in weyl_elements(search_bound):
        pg = is_positive(act_on_root(w, gamma, gcm))
        pd = is_positive(act_on_root(w, delta, gcm))
        both_pos |= pg and pd
        both_neg |= (not pg) and (not pd)
        if both_pos and both_neg:
            return True
    return False


def prenilpotent_halfline(gamma: Root, delta: Root, gcm: GCM2) -> bool:
    """Closed form: prenilpotent iff the half-lines point the same way."""
    return halfline(gamma, gcm)[1] == halfline(delta, gcm)[1]


def is_prenilpotent(gamma: Root, delta: Root, gcm: GCM2, search_bound: int = 10) -> bool:
    closed = prenilpotent_halfline(gamma, delta, gcm)
    searched = prenilpotent_search(gamma, delta, gcm, search_bound)
    if closed != searched:  # pragma: no cover
        raise AssertionError(f"prenilpotency criteria disagree on {gamma}, {delta}")
    return closed


def roots_in_wall_range(gcm: GCM2, lo: int, hi: int):
    for wall, d in product(range(lo, hi + 1), (1, -1)):
        yield root_from_halfline((wall, d), gcm)
