"""The twin trees X_+ and X_- as chamber systems of a KMGroup.

A chamber of X_+ is a coset gB+, recorded by the gallery coordinates of its
Bruhat normal form: (w, (r_1, ..., r_l)) stands for

    u_{d_1}(r_1) w_{d_1} ... u_{d_l}(r_l) w_{d_l} B+.

Chambers of X_- use the same coordinates transported by the Chevalley
involution theta (u_d(r) -> u_{-d}(-r), w_d -> w_d, t -> t^{-1}), which swaps
B+ and B-.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .kmgroup import SIMPLE_WALL, GroupElt, KMGroup
from .rootsys import (
    ALPHA,
    IDENTITY,
    WeylElt,
    act_on_root,
    is_positive,
    simple_root,
    weyl_elements,
)

PLUS, MINUS = "+", "-"


@dataclass(frozen=True)
class Chamber:
    sign: str
    w: WeylElt
    params: tuple

    def __post_init__(self):
        if self.sign not in (PLUS, MINUS):
            raise ValueError("sign must be '+' or '-'")
        if len(self.params) != len(self.w):
            raise ValueError("need one parameter per letter of w")

    @property
    def distance(self) -> int:
        return len(self.w)

    def ident(self) -> str:
        blob = repr([x.to_json() for x in self.params]).encode()
        return f"{self.sign}:{self.w.to_str()}:{hashlib.sha1(blob).hexdigest()[:8]}"

    def panel(self, delta: str):
        """Key of the delta-panel containing this chamber."""
        word = self.w.word
        if word and word[-1] == delta:
            return (self.sign, delta, word[:-1], self.params[:-1])
        return (self.sign, delta, word, self.params)

    def to_json(self):
        return {"sign": self.sign, "w": self.w.to_str(),
                "params": [x.to_json() for x in self.params], "id": self.ident()}


def base_chamber(sign: str = PLUS) -> Chamber:
    return Chamber(sign, IDENTITY, ())


class TwinTree:
    def __init__(self, group: KMGroup):
        self.group = group

    # -------------------------------------------------------------- involution
    def theta(self, g: GroupElt) -> GroupElt:
        """Chevalley involution; maps B+ onto B-."""
        G = self.group
        atoms = []
        for a in G.atoms_of(g):
            kind = a[0]
            if kind == "upos":
                for b in G._root_expansion_simple(a[1], a[2]):
                    atoms.extend(self._theta_atom(b))
            else:
                atoms.extend(self._theta_atom(a))
        return G._run(G._new_state(), atoms)

    def _theta_atom(self, a):
        kind = a[0]
        if kind == "upos":
            delta = ALPHA if a[1] == 0 else "beta"
            return [("w", delta), ("upos", a[1], a[2]), ("winv", delta)]
        if kind == "h":
            return [("h", a[1].inverse(), a[2].inverse())]
        return [a]

    # -------------------------------------------------------------- chambers
    def representative(self, c: Chamber) -> GroupElt:
        G = self.group
        atoms = []
        for d, r in zip(c.w.word, c.params):
            if r:
                atoms.append(("upos", SIMPLE_WALL[d], r))
            atoms.append(("w", d))
        rep = G._run(G._new_state(), atoms)
        return rep if c.sign == PLUS else self.theta(rep)

    def chamber_of(self, g: GroupElt, sign: str = PLUS) -> Chamber:
        """The chamber g C0^sign."""
        if sign == MINUS:
            g = self.theta(g)
        return Chamber(sign, g.w, g.gallery)

    def act(self, g: GroupElt, c: Chamber) -> Chamber:
        G = self.group
        if c.sign == PLUS:
            h = g
        else:
            h = self.theta(g)
        atoms = []
        for d, r in zip(c.w.word, c.params):
            if r:
                atoms.append(("upos", SIMPLE_WALL[d], r))
            atoms.append(("w", d))
        prod = G._run(G._state_of(h), atoms)
        return Chamber(c.sign, prod.w, prod.gallery)

    # -------------------------------------------------------------- balls
    def ball(self, sign: str, radius: int, level: int = 1) -> "Ball":
        """All chambers at gallery distance <= radius over F_{q^level}."""
        if radius < 0:
            raise ValueError("radius must be non-negative")
        tower = self.group.tower
        elts = tower.elements(tower.degree_of_q_level(level))
        chambers = []
        for w in weyl_elements(radius):
            for params in product(elts, repeat=len(w)):
                chambers.append(Chamber(sign, w, tuple(params)))
        return Ball(sign, radius, level, len(elts), chambers)

    # -------------------------------------------------------------- opposition
    def opposition_cell(self, g: GroupElt) -> WeylElt:
        """The w with g in B- w B+ (codistance from C0^- to g C0^+)."""
        G = self.group
        w = IDENTITY
        b = G.identity
        for d, r in zip(g.w.word, g.gallery):
            dw = SIMPLE_WALL[d]
            b1 = G.mul(b, G._run(G._new_state(), [("upos", dw, r)]))
            x = _delta_projection(G, b1, d)
            # b1 w_d = u_d(x) w_d b2 with b2 in B+
            ux = G._run(G._new_state(), [("upos", dw, -x)]) if x else G.identity
            b2 = G.product(G.inv(G.w(d)), ux, b1, G.w(d))
            assert not b2.gallery, "remainder must lie in B+"
            wd = act_on_root(w, simple_root(d), G.gcm)
            if not is_positive(wd):
                shorter = w.word and w.word[-1] == d
                w = w * WeylElt((d,))
                b = G.mul(G.h_delta(d, -G._one), b2) if shorter else b2
            elif not x:
                w = w * WeylElt((d,))
                b = b2
            else:
                inv_x = x.inverse()
                pre = G._run(G._new_state(), [("h", *G._h_params(d, -x)), ("upos", dw, -inv_x)])
                b = G.mul(pre, b2)
        return w

    # -------------------------------------------------------------- faithfulness
    def moves_some_chamber(self, g: GroupElt, ball: "Ball"):
        for c in ball.chambers:
            if self.act(g, c) != c:
                return c
        return None

    def kernel_check(self, ball: "Ball", sample) -> dict:
        fixing, moving = [], []
        violations = []
        for g in sample:
            moved = self.moves_some_chamber(g, ball)
            if moved is None:
                fixing.append(g)
                if ball.radius >= displacement_bound(g) and not self.group.is_central(g):
                    violations.append(g)
            else:
                moving.append((g, moved))
        if violations:
            raise AssertionError(f"non-central elements fix the ball: {violations}")
        return {"fixing": fixing, "moving": moving, "radius": ball.radius}


def displacement_bound(g: GroupElt) -> int:
    """A radius beyond which a non-central element is guaranteed to move some chamber."""
    if g.gallery:
        return 0
    total = 1
    for b in g.uplus.blocks:
        total += max(abs(2 * w - 1) // 2 + 1 for w, _ in b)
    return total


def _delta_projection(G: KMGroup, b: GroupElt, d: str):
    """delta(t) * (sum of delta-coordinates of u+) for b = t u+ in B+."""
    dw = SIMPLE_WALL[d]
    acc = None
    for blk in b.uplus.blocks:
        for wall, c in blk:
            if wall == dw:
                acc = c if acc is None else acc + c
    if acc is None or not acc:
        return None
    return acc * G._char(dw, b.torus.mu, b.torus.nu)


class Ball:
    def __init__(self, sign, radius, level, field_size, chambers):
        self.sign = sign
        self.radius = radius
        self.level = level
        self.q = field_size
        self.chambers = chambers
        self.index = {c: i for i, c in enumerate(chambers)}

    def __len__(self):
        return len(self.chambers)

    def panels(self) -> dict:
        out: dict = {}
        for c in self.chambers:
            for d in (ALPHA, "beta"):
                out.setdefault(c.panel(d), []).append(c)
        return out

    def full_panels(self):
        """Panels whose chambers all lie in the ball (their nearer chamber is at distance < R)."""
        return {k: v for k, v in self.panels().items() if len(k[2]) + 1 <= self.radius}

    def is_tree(self) -> bool:
        """Chambers as edges between panels: connected and acyclic (checked by union-find)."""
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.chambers:
            a, b = find(c.panel(ALPHA)), find(c.panel("beta"))
            if a == b:
                return False
            parent[a] = b
        roots = {find(x) for x in list(parent)}
        return len(roots) == 1

    def adjacency(self):
        """Pairs of distinct chambers sharing a panel."""
        edges = []
        for chambers in self.panels().values():
            for i in range(len(chambers)):
                for j in range(i + 1, len(chambers)):
                    edges.append((chambers[i], chambers[j]))
        return edges

    def to_dot(self) -> str:
        lines = ["graph chambers {"]
        for c in self.chambers:
            lines.append(f'  "{c.ident()}";')
        for a, b in self.adjacency():
            lines.append(f'  "{a.ident()}" -- "{b.ident()}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def expected_ball_size(q: int, radius: int) -> int:
    return 1 + 2 * sum(q**d for d in range(1, radius + 1))


def covolume_partial(q: int, N: int) -> Fraction:
    """sum over w in W with l(w) <= N of q^{-l(w)}."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if N < 0:
        raise ValueError("N must be non-negative")
    return 1 + 2 * sum((Fraction(1, q**d) for d in range(1, N + 1)), Fraction(0))


def covolume_limit(q: int) -> Fraction:
    if q < 2:
        raise ValueError("q must be at least 2")
    return Fraction(q + 1, q - 1)
