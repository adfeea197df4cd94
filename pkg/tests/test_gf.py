import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kmtwin.gf import (
    FieldTower,
    embed,
    is_irreducible,
    least_irreducible,
    shared_tower,
    tower_create,
    unit_of_order_avoiding,
)


def naive_mul(a, b, f, p):
    """Schoolbook product of coefficient lists modulo the monic f."""
    prod = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    k = len(f) - 1
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = (prod[i - k + j] - c * f[j]) % p
    return (prod + [0] * k)[:k]


def brute_irreducible(f, p):
    """No root-free factorization check: try every monic divisor of lower degree."""
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            # polynomial long division
            r = list(f)
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    for j in range(d + 1):
                        r[i - d + j] = (r[i - d + j] - c * g[j]) % p
            if not any(r[:d]):
                return False
    return True


TOWERS = [(2, 1), (3, 1), (5, 1), (5, 2), (7, 1), (2, 3)]


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_least_irreducible_against_bruteforce(p, k):
    f = least_irreducible(p, k)
    assert len(f) == k + 1 and f[-1] == 1
    assert brute_irreducible(list(f), p)
    assert is_irreducible(list(f), p)


def test_rabin_agrees_with_bruteforce_small():
    for p, k in [(2, 4), (3, 3)]:
        for tail in itertools.product(range(p), repeat=k):
            f = list(tail) + [1]
            assert is_irreducible(f, p) == brute_irreducible(f, p), f


def test_tower_create_examples():
    assert tower_create(5, 1).q == 5
    t = tower_create(5, 2)
    assert t.q == 25 and len(t.elements(2)) == 25
    # x^2 - 2 is irreducible over F_5: 2 is not a square mod 5
    assert 2 not in {x * x % 5 for x in range(5)}
    assert is_irreducible([-2 % 5, 0, 1], 5)
    assert len(tower_create(2, 1).elements(3)) == 8


@pytest.mark.parametrize("p", [1, 4, 9, 0])
def test_non_prime_rejected(p):
    with pytest.raises(ValueError):
        FieldTower(p)


@pytest.mark.parametrize("p,e", TOWERS)
def test_field_axioms_and_table_vs_naive(p, e):
    tower = shared_tower(p, e)
    rng = random.Random(p * 100 + e)
    for k in {e, 2 * e}:
        f = list(tower.level(k).modulus)
        for _ in range(100):
            a, b, c = (tower.random(rng, k) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == tower.zero(k)
            assert (a * b).coeffs == naive_mul(a.coeffs, b.coeffs, f, p)
            if a:
                assert a * a.inverse() == 1
                assert a ** (p**k - 1) == 1
            assert a ** (p**k) == a


def test_generator_is_primitive():
    tower = shared_tower(5, 2)
    g = tower.generator(2)
    assert g.order() == 24


def test_embedding_examples():
    tower = shared_tower(5, 1)
    rng = random.Random(7)
    x = tower.elt(3)
    assert embed(x, 1) == x
    for _ in range(100):
        a, b = tower.random(rng, 1), tower.random(rng, 1)
        assert embed(a, 2) + embed(b, 2) == embed(a + b, 2)
        assert embed(a, 2) * embed(b, 2) == embed(a * b, 2)
    two = tower.elt(2)
    assert two.order() == 4
    assert embed(two, 2).order() == 4


def test_embedding_rejects_non_multiple():
    tower = shared_tower(2, 1)
    x = tower.generator(2)
    with pytest.raises(ValueError):
        embed(x, 3)


@pytest.mark.parametrize("p,small,mid,big", [(2, 1, 2, 4), (2, 2, 4, 8), (3, 1, 2, 4), (2, 3, 6, 6), (5, 1, 2, 2)])
def test_embedding_triangles_commute(p, small, mid, big):
    tower = shared_tower(p, 1)
    rng = random.Random(big)
    for _ in range(50):
        x = tower.random(rng, small)
        assert x.embed(mid).embed(big).value == x.embed(big).value
        y = tower.random(rng, small)
        assert (x * y).embed(big).value == (x.embed(big) * y.embed(big)).value


def test_embedding_preserves_minimal_polynomial():
    tower = shared_tower(2, 1)
    g = tower.generator(3)
    f = tower.level(3).modulus
    img = g.embed(6)
    val = sum((img**i) * c for i, c in enumerate(f))
    assert not val


def test_mixed_level_arithmetic_lifts_to_lcm():
    tower = shared_tower(2, 1)
    a, b = tower.generator(2), tower.generator(3)
    c = a + b
    assert c.level == 6
    assert c - b == a
    # equality and hashing are level independent
    assert a.embed(4) == a and hash(a.embed(4)) == hash(a)


@pytest.mark.parametrize("q,e,level", [(7, -4, 1), (5, -4, 2), (5, 1, 1), (2, -15, 3), (2, 1, 2)])
def test_unit_of_order_avoiding(q, e, level):
    tower = shared_tower(q, 1)
    kappa, ell = unit_of_order_avoiding(tower, e)
    assert ell == level
    assert kappa**e != 1
    # minimality: every unit of every lower level satisfies x^e = 1
    for lower in range(1, ell):
        assert all(u**e == 1 for u in tower.units(lower))


def test_unit_of_order_avoiding_q7_example():
    # 3^4 = 81 = 4 mod 7
    assert pow(3, 4, 7) == 4
    assert all(pow(x, 4, 5) == 1 for x in range(1, 5))


def test_unit_of_order_avoiding_rejects_zero():
    with pytest.raises(ValueError):
        unit_of_order_avoiding(shared_tower(5, 1), 0)


def test_json_serialization():
    tower = shared_tower(5, 2)
    x = tower.generator(2)
    assert x.to_json() == {"p": 5, "level": 2, "coeffs": x.coeffs}


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 24), st.integers(0, 24), st.integers(0, 24))
def test_hypothesis_f25_ring_laws(a, b, c):
    tower = shared_tower(5, 2)
    x, y, z = (tower.elt([v % 5, v // 5], 2) for v in (a, b, c))
    assert x * (y + z) == x * y + x * z
    assert x - y + y == x
    if y:
        assert (x / y) * y == x


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 2**8 - 1), st.integers(-50, 50))
def test_hypothesis_pow_homomorphism(v, e):
    tower = shared_tower(2, 1)
    x = tower.elt([(v >> i) & 1 for i in range(8)], 8)
    assert x**e * x ** (-e) == 1
    assert (x * x) ** e == x ** (2 * e)


def test_threaded_level_construction():
    from concurrent.futures import ThreadPoolExecutor

    tower = FieldTower(3, 1)
    with ThreadPoolExecutor(4) as ex:
        levels = list(ex.map(tower.level, [4, 4, 4, 4, 2, 2]))
    assert levels[0] is levels[1] is levels[3]
