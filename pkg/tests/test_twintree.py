import random
from fractions import Fraction

import pytest

from conftest import random_element
from kmtwin.gf import shared_tower
from kmtwin.kmgroup import KMGroup
from kmtwin.rootsys import ALPHA, BETA, GCM2, IDENTITY, ROOT_ALPHA, ROOT_BETA, WeylElt, weyl_elements
from kmtwin.twintree import (
    MINUS,
    PLUS,
    Chamber,
    TwinTree,
    base_chamber,
    covolume_limit,
    covolume_partial,
    displacement_bound,
    expected_ball_size,
)


def tree(m=2, n=3, p=5, e=1):
    return TwinTree(KMGroup(GCM2(m, n), shared_tower(p, e)))


def random_borel_plus(G, rng):
    """A random element of B+ = T U+."""
    atoms = [("h", G.tower.random(rng, 1, True), G.tower.random(rng, 1, True))]
    for _ in range(rng.randint(0, 4)):
        atoms.append(("u", rng.choice([ROOT_ALPHA, ROOT_BETA]), G.tower.random(rng, 1)))
    return G.from_atoms(atoms)


# ------------------------------------------------------------------ action

def test_act_examples():
    T = tree()
    G = T.group
    c0 = base_chamber(PLUS)
    assert T.act(G.identity, c0) == c0
    assert T.act(G.u(ROOT_ALPHA, 3), c0) == c0
    c = T.act(G.w(ALPHA), c0)
    assert c.w == WeylElt((ALPHA,)) and [x.value for x in c.params] == [0]
    # U- fixes the negative base chamber
    assert T.act(G.u(-ROOT_ALPHA, 3), base_chamber(MINUS)) == base_chamber(MINUS)


@pytest.mark.parametrize("sign", [PLUS, MINUS])
def test_action_axiom(sign):
    T = tree(p=3)
    G = T.group
    rng = random.Random(12)
    ball = T.ball(sign, 3)
    for _ in range(200):
        g, h = random_element(G, rng, 6), random_element(G, rng, 6)
        c = rng.choice(ball.chambers)
        assert T.act(g * h, c) == T.act(g, T.act(h, c))


@pytest.mark.parametrize("sign", [PLUS, MINUS])
def test_representative_round_trip(sign):
    T = tree(p=3)
    for c in T.ball(sign, 3).chambers:
        assert T.chamber_of(T.representative(c), sign) == c
        assert T.act(T.representative(c), base_chamber(sign)) == c


def test_theta_is_involutive_automorphism():
    T = tree()
    G = T.group
    rng = random.Random(8)
    for _ in range(60):
        a, b = random_element(G, rng, 6), random_element(G, rng, 6)
        assert T.theta(a * b) == T.theta(a) * T.theta(b)
        assert T.theta(T.theta(a)) == a
    assert T.theta(G.u(ROOT_ALPHA, 1)) == G.u(-ROOT_ALPHA, -1)


# ------------------------------------------------------------------ balls

@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("sign", [PLUS, MINUS])
def test_ball_sizes_and_shape(q, sign):
    T = tree(p=q)
    for R in range(0, 5 if q < 5 else 4):
        ball = T.ball(sign, R)
        assert len(ball) == expected_ball_size(q, R)
        by_w = {}
        for c in ball.chambers:
            by_w[c.w] = by_w.get(c.w, 0) + 1
        assert all(v == q ** len(w) for w, v in by_w.items())
        assert ball.is_tree()
        full = ball.full_panels()
        assert all(len(v) == q + 1 for v in full.values())


def test_ball_examples():
    T = tree(p=2)
    assert len(T.ball(PLUS, 0)) == 1
    assert len(T.ball(PLUS, 3)) == 29
    T5 = tree(p=5)
    b = T5.ball(PLUS, 1)
    assert len(b) == 11
    c0 = base_chamber(PLUS)
    for d in (ALPHA, BETA):
        assert len(b.panels()[c0.panel(d)]) == 6
    with pytest.raises(ValueError):
        T5.ball(PLUS, -1)


def test_ball_over_extension_level():
    T = tree(p=2)
    ball = T.ball(PLUS, 2, level=2)
    assert len(ball) == expected_ball_size(4, 2)
    assert ball.is_tree()


def test_is_tree_detects_cycle():
    T = tree(p=2)
    ball = T.ball(PLUS, 2)
    ball.chambers.append(ball.chambers[1])  # a repeated edge closes a cycle
    assert not ball.is_tree()


def test_dot_export_ids():
    T = tree(p=2)
    dot = T.ball(PLUS, 1).to_dot()
    assert dot.startswith("graph chambers {")
    assert '"+:1:' in dot and "--" in dot
    cid = base_chamber(PLUS).ident()
    assert cid.startswith("+:1:") and len(cid.split(":")[2]) == 8


def test_chamber_validation():
    with pytest.raises(ValueError):
        Chamber("*", IDENTITY, ())
    with pytest.raises(ValueError):
        Chamber(PLUS, WeylElt((ALPHA,)), ())


# ------------------------------------------------------------------ opposition

def test_opposition_examples():
    T = tree()
    G = T.group
    assert T.opposition_cell(G.identity) == IDENTITY
    assert T.opposition_cell(G.u(ROOT_ALPHA, 2)) == IDENTITY
    # u(-alpha, r) lies in B-, hence in the big cell B- B+
    assert T.opposition_cell(G.u(-ROOT_ALPHA, 2)) == IDENTITY
    assert T.opposition_cell(G.w(ALPHA)) == WeylElt((ALPHA,))
    assert T.opposition_cell(G.tau(2)) == WeylElt((ALPHA, BETA, ALPHA, BETA))


def test_opposition_cell_recovers_birkhoff_factorization():
    T = tree(p=3)
    G = T.group
    rng = random.Random(21)
    words = list(weyl_elements(5))
    for _ in range(150):
        w = rng.choice(words)
        bminus = T.theta(random_borel_plus(G, rng))
        bplus = random_borel_plus(G, rng)
        g = G.product(bminus, G.lift(w), bplus)
        assert T.opposition_cell(g) == w


def test_opposition_identity_iff_opposite():
    """w* = 1 exactly for g with g C0+ opposite C0-, i.e. g in B- B+."""
    T = tree(p=3)
    G = T.group
    rng = random.Random(5)
    for _ in range(100):
        g = random_element(G, rng, 6)
        cell = T.opposition_cell(g)
        # multiplying by B- on the left and B+ on the right never changes the cell
        b1 = T.theta(random_borel_plus(G, rng))
        b2 = random_borel_plus(G, rng)
        assert T.opposition_cell(G.product(b1, g, b2)) == cell


# ------------------------------------------------------------------ faithfulness

def test_kernel_check_examples():
    T = tree(p=5)
    G = T.group
    ball2 = T.ball(PLUS, 2)
    rep = T.kernel_check(ball2, [G.identity, G.u(ROOT_ALPHA, 1)])
    assert rep["fixing"] == [G.identity]
    assert rep["moving"][0][0] == G.u(ROOT_ALPHA, 1)
    assert rep["moving"][0][1].distance <= 2


@pytest.mark.slow
def test_central_element_fixes_radius_six_ball():
    T = tree(p=5)
    G = T.group
    z = G.h(1, -1)
    assert G.is_central(z)
    ball = T.ball(PLUS, 6)
    rep = T.kernel_check(ball, [z])
    assert rep["fixing"] == [z]


@pytest.mark.slow
def test_faithfulness_probe_radius_six():
    T = tree(p=5)
    G = T.group
    rng = random.Random(31)
    ball = T.ball(PLUS, 6)
    sample = [g for g in (random_element(G, rng, 8) for _ in range(200))
              if not g.is_identity() and not G.is_central(g)]
    for g in sample:
        assert T.moves_some_chamber(g, ball) is not None, g


@pytest.mark.parametrize("m,n,p", [(2, 3, 2), (3, 3, 2), (2, 3, 3)])
def test_displacement_bound_is_sound(m, n, p):
    T = tree(m, n, p)
    G = T.group
    rng = random.Random(m * 10 + n + p)
    balls = [T.ball(PLUS, R) for R in range(0, 5)]
    sample = [random_element(G, rng, 6) for _ in range(150)]
    for _ in range(150):
        atoms = [("u", rng.choice([ROOT_ALPHA, ROOT_BETA]), G.tower.random(rng, 1, True)) for _ in range(3)]
        sample.append(G.from_atoms(atoms))
    for g in sample:
        if G.is_central(g):
            continue
        bound = displacement_bound(g)
        if bound < len(balls):
            assert T.moves_some_chamber(g, balls[bound]) is not None, (g, bound)


# ------------------------------------------------------------------ covolume

def test_covolume_examples():
    assert covolume_partial(5, 0) == 1
    assert covolume_limit(3) == 2
    assert covolume_partial(2, 4) == Fraction(23, 8)
    assert covolume_limit(2) - covolume_partial(2, 4) == Fraction(1, 8)
    with pytest.raises(ValueError):
        covolume_partial(1, 3)
    with pytest.raises(ValueError):
        covolume_partial(3, -1)


def test_covolume_error_term_identity():
    for q in range(2, 8):
        for N in range(0, 31):
            part = covolume_partial(q, N)
            assert part == covolume_limit(q) - Fraction(2, (q - 1) * q**N)
            # equals the sum over the Weyl group directly
            direct = sum(Fraction(1, q ** len(w)) for w in weyl_elements(N)) if N <= 12 else part
            assert direct == part
