import random

import pytest

from kmtwin.gf import shared_tower
from kmtwin.kmgroup import KMGroup
from kmtwin.rootsys import ALPHA, BETA, GCM2, positive_root_at_wall

SEED = 20240611


def random_root(gcm, rng, span=6):
    r = positive_root_at_wall(rng.randint(-span, span), gcm)
    return r if rng.random() < 0.5 else -r


def random_atoms(group, rng, max_atoms=12, level=1, span=6):
    tower = group.tower
    k = tower.degree_of_q_level(level)
    atoms = []
    for _ in range(rng.randint(1, max_atoms)):
        kind = rng.random()
        if kind < 0.55:
            atoms.append(("u", random_root(group.gcm, rng, span), tower.random(rng, k)))
        elif kind < 0.75:
            atoms.append(("h", tower.random(rng, k, nonzero=True), tower.random(rng, k, nonzero=True)))
        elif kind < 0.9:
            atoms.append(("w", rng.choice([ALPHA, BETA])))
        else:
            atoms.append(("winv", rng.choice([ALPHA, BETA])))
    return atoms


def random_element(group, rng, max_atoms=12, level=1, span=6):
    return group.from_atoms(random_atoms(group, rng, max_atoms, level, span))


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def g23_5():
    return KMGroup(GCM2(2, 3), shared_tower(5, 1))


@pytest.fixture(scope="session")
def g23_25():
    return KMGroup(GCM2(2, 3), shared_tower(5, 2))


@pytest.fixture(scope="session")
def g33_2():
    return KMGroup(GCM2(3, 3), shared_tower(2, 1))
