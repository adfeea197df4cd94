"""Replay of the root-group separation argument, plus a bounded normal-closure search.

The replay takes the power k with tau^k in K as a hypothesis and checks, with
the group engine, every identity the argument uses: tau-conjugation of U_alpha,
the shape of [tau^J, u_alpha(c)], the torus commutator, the specialization
mu = kappa^m, nu = kappa^2, and the final separation into U_alpha and U_beta.
Each identity is evaluated twice: once by full normalization and once from
atom-level character/sign formulas.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .gf import FieldElt, FieldTower, unit_of_order_avoiding
from .kmgroup import GroupElt, KMGroup, TorusElt
from .rootsys import (
    ALPHA,
    BETA,
    GCM2,
    ROOT_ALPHA,
    ROOT_BETA,
    Root,
    eval_char,
    halfline,
    reflect,
    tau_power,
)


class ReplayError(AssertionError):
    """An identity of the replay failed; this indicates an engine bug."""


@dataclass
class Step:
    name: str
    inputs: dict
    lhs: object
    rhs: object
    verdict: bool

    def to_json(self):
        return {"name": self.name, "inputs": _jsonable(self.inputs),
                "lhs": _jsonable(self.lhs), "rhs": _jsonable(self.rhs),
                "verdict": "pass" if self.verdict else "fail"}


@dataclass
class ProofTranscript:
    gcm: GCM2
    q: int
    j: int
    k: int
    steps: list = field(default_factory=list)
    witnesses: tuple | None = None
    levels: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(s.verdict for s in self.steps) and self.witnesses is not None

    @property
    def level(self) -> int:
        return max(self.levels.values()) if self.levels else 1

    def check(self, name, inputs, lhs, rhs, verdict=None):
        ok = (lhs == rhs) if verdict is None else bool(verdict)
        step = Step(name, inputs, lhs, rhs, ok)
        self.steps.append(step)
        if not ok:
            raise ReplayError(f"step {name!r} failed: {lhs!r} != {rhs!r}")
        return step

    def to_json(self):
        out = {
            "schema": "kmtwin.transcript/1",
            "gcm": [self.gcm.m, self.gcm.n],
            "q": self.q,
            "j": self.j,
            "k": self.k,
            "levels": self.levels,
            "level": self.level,
            "steps": [s.to_json() for s in self.steps],
            "passed": self.passed,
        }
        if self.witnesses is not None:
            out["witnesses"] = {"alpha": self.witnesses[0].to_json(),
                                "beta": self.witnesses[1].to_json()}
        return out


def _jsonable(x):
    if isinstance(x, (GroupElt, FieldElt, TorusElt)):
        return x.to_json()
    if isinstance(x, Root):
        return [x.a, x.b]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# ------------------------------------------------------------------ building blocks

def root_group_support(g: GroupElt):
    """{wall: coeff} if g lies in U+ with a single free-product block, else None."""
    if g.gallery or not g.torus.is_trivial() or len(g.uplus.blocks) != 1:
        return None
    return dict(g.uplus.blocks[0])


def in_root_group(g: GroupElt, wall: int) -> bool:
    """g in U_gamma - {1} for the positive root at ``wall``."""
    s = root_group_support(g)
    return s is not None and list(s) == [wall]


def tau_conj_atom(group: KMGroup, J: int, root: Root, r):
    """tau^J u_root(r) tau^{-J} through the atom-level sign ledger only."""
    word = tau_power(J).word
    for s in reversed(word):
        if J >= 0:
            root, r = group.conj_weyl_atom(s, root, r)
        else:
            # tau^{-1} = w_beta^{-1} w_alpha^{-1}; undo the w_s sign
            root = reflect(s, root, group.gcm)
            r = group._sign(group.eta(s, root), group._field(r))
    return root, r


def replay_tau_commutator(group: KMGroup, j: int, c) -> GroupElt:
    """[tau^j, u_alpha(c)], checked to be u_{gamma_j}(r) u_alpha(-c) with r != 0."""
    if j < 1:
        raise ValueError("replay is restricted to j >= 1 (gamma_j positive)")
    c = group._field(c)
    if not c:
        raise ValueError("c must be nonzero")
    g = group.commutator(group.tau(j), group.u(ROOT_ALPHA, c))
    wall = -2 * j
    s = root_group_support(g)
    if s is None or set(s) != {wall, 0}:
        raise ReplayError(f"[tau^{j}, u_alpha] has unexpected normal form {g!r}")
    if s[0] != -c:
        raise ReplayError("u_alpha coefficient of the commutator is not -c")
    return g


def replay_torus_commutator(group: KMGroup, t: TorusElt, r, s, j: int):
    """(engine [t, v], atom-level prediction) for v = u_alpha(r) u_{gamma_j}(s)."""
    gcm = group.gcm
    gj = group_tau_root(group, j)
    v = group.u(ROOT_ALPHA, r) * group.u(gj, s)
    lhs = group.commutator(group.h(t.mu, t.nu), v)
    a_t = eval_char(ROOT_ALPHA, t.mu, t.nu, gcm)
    g_t = eval_char(gj, t.mu, t.nu, gcm)
    rhs = group.u(ROOT_ALPHA, (a_t - 1) * group._field(r)) * group.u(gj, (g_t - 1) * group._field(s))
    return lhs, rhs


def group_tau_root(group: KMGroup, j: int) -> Root:
    from .rootsys import tau_root
    return tau_root(j, group.gcm)


def specialize_torus(kappa: FieldElt, gcm: GCM2, side: str = ALPHA) -> TorusElt:
    """mu = kappa^m, nu = kappa^2 (kills alpha); for the beta side mu = kappa^2, nu = kappa^n."""
    if not kappa:
        raise ValueError("kappa must be nonzero")
    if side == ALPHA:
        return TorusElt(kappa**gcm.m, kappa**2)
    return TorusElt(kappa**2, kappa**gcm.n)


def kappa_exponent(gcm: GCM2, root: Root, side: str = ALPHA) -> int:
    """Exponent e with root(specialize_torus(kappa)) = kappa^e."""
    coord = root.b if side == ALPHA else root.a
    return (4 - gcm.m * gcm.n) * coord


def find_kappa(gcm: GCM2, j: int, tower: FieldTower, side: str = ALPHA):
    if j < 1:
        raise ValueError("j must be >= 1")
    root = _side_root(gcm, j, side)
    return unit_of_order_avoiding(tower, kappa_exponent(gcm, root, side))


def _side_root(gcm, J, side):
    """gamma_J = tau^J alpha on the alpha side, tau^{-J} beta on the beta side."""
    from .rootsys import act_on_root
    if side == ALPHA:
        return act_on_root(tau_power(J), ROOT_ALPHA, gcm)
    return act_on_root(tau_power(-J), ROOT_BETA, gcm)


# ------------------------------------------------------------------ the replay

def proof_replay(group: KMGroup, j: int = 1, k: int = 1, c=1) -> ProofTranscript:
    gcm = group.gcm
    gcm.require_trivial_commutation()
    if j < 1 or k < 1:
        raise ValueError("j and k must be >= 1")
    tower = group.tower
    c = group._field(c)
    tr = ProofTranscript(gcm, tower.q, j, k)
    J = k * j
    tr.check("tau-power-in-K", {"k": k, "j": j, "J": J},
             J % k, 0, verdict=(J % k == 0))
    witnesses = {}
    for side in (ALPHA, BETA):
        witnesses[side] = _replay_side(group, tr, side, J, c)
    tr.witnesses = (witnesses[ALPHA], witnesses[BETA])
    return tr


def _replay_side(group: KMGroup, tr: ProofTranscript, side: str, J: int, c):
    gcm = group.gcm
    simple = ROOT_ALPHA if side == ALPHA else ROOT_BETA
    simple_wall = 0 if side == ALPHA else 1
    power = J if side == ALPHA else -J
    tau_J = group.tau(power)
    gam = _side_root(gcm, J, side)
    gwall = halfline(gam, gcm)[0]
    tag = side

    # tau^J U_simple tau^{-J} = U_gamma
    lhs = group.conj(tau_J, group.u(simple, c))
    root, r_pred = tau_conj_atom(group, power, simple, c)
    tr.check(f"{tag}:tau-conjugation", {"J": power, "c": c, "root": gam},
             lhs, group.u(root, r_pred))
    tr.check(f"{tag}:tau-orbit-root", {"J": power}, root, gam)

    # [tau^J, u(c)] = u_gamma(r) u_simple(-c), both coefficients nonzero
    v = group.commutator(tau_J, group.u(simple, c))
    sup = root_group_support(v)
    tr.check(f"{tag}:tau-commutator", {"J": power, "c": c}, v,
             group.u(gam, r_pred) * group.u(simple, -c),
             verdict=(sup is not None and set(sup) == {gwall, simple_wall}
                      and v == group.u(gam, r_pred) * group.u(simple, -c)))
    r_coef, s_coef = sup[simple_wall], sup[gwall]

    # kappa with kappa^e != 1
    kappa, ell = find_kappa(gcm, J, group.tower, side)
    e = kappa_exponent(gcm, gam, side)
    tr.levels[side] = ell
    tr.check(f"{tag}:kappa", {"e": e, "level": ell, "kappa": kappa},
             kappa**e, 1, verdict=(kappa**e != 1))

    t = specialize_torus(kappa, gcm, side)
    tr.check(f"{tag}:specialize-kills-simple", {"kappa": kappa},
             eval_char(simple, t.mu, t.nu, gcm), group._one)
    tr.check(f"{tag}:specialize-character", {"kappa": kappa, "root": gam},
             eval_char(gam, t.mu, t.nu, gcm), kappa**e)

    # [t, v] computed by the engine versus the character prediction
    lhs = group.commutator(group.h(t.mu, t.nu), v)
    pred = group.u(simple, (eval_char(simple, t.mu, t.nu, gcm) - 1) * r_coef) * \
        group.u(gam, (eval_char(gam, t.mu, t.nu, gcm) - 1) * s_coef)
    tr.check(f"{tag}:torus-commutator", {"t": t}, lhs, pred)
    tr.check(f"{tag}:gamma-witness", {"root": gam}, lhs, None,
             verdict=in_root_group(lhs, gwall))

    # move the U_gamma witness back to the simple root group
    back = group.conj(group.inv(tau_J), lhs)
    _, x = lhs.uplus.blocks[0][0]
    root2, x_pred = tau_conj_atom(group, -power, gam, x)
    tr.check(f"{tag}:simple-witness", {"root": simple}, back, group.u(root2, x_pred),
             verdict=(root2 == simple and in_root_group(back, simple_wall)
                      and back == group.u(root2, x_pred)))
    return back


# ------------------------------------------------------------------ saturation

@dataclass
class SaturationResult:
    status: str
    alpha: GroupElt | None
    beta: GroupElt | None
    nodes: int
    derivations: dict

    def to_json(self):
        out = {"schema": "kmtwin.saturation/1", "status": self.status, "nodes": self.nodes}
        if self.alpha is not None:
            out["alpha_witness"] = self.alpha.to_json()
            out["alpha_derivation"] = self.derivations.get("alpha")
        if self.beta is not None:
            out["beta_witness"] = self.beta.to_json()
            out["beta_derivation"] = self.derivations.get("beta")
        return out


def saturation_generators(group: KMGroup, level: int):
    tower = group.tower
    deg = tower.degree_of_q_level(level)
    gens = []
    basis = [tower.elt([0] * i + [1], deg) for i in range(deg)]
    for i, x in enumerate(basis):
        gens.append((f"u_alpha(X^{i})", group.u(ROOT_ALPHA, x)))
        gens.append((f"u_beta(X^{i})", group.u(ROOT_BETA, x)))
    gens.append(("w_alpha", group.w(ALPHA)))
    gens.append(("w_beta", group.w(BETA)))
    g = tower.generator(deg)
    gens.append(("h_alpha(g)", group.h(g, 1)))
    gens.append(("h_beta(g)", group.h(1, g)))
    out = []
    for name, x in gens:
        out.append((name, x))
        out.append((name + "^-1", group.inv(x)))
    return out


def saturate(group: KMGroup, v: GroupElt, budget: int = 100_000, level: int = 1) -> SaturationResult:
    """Breadth-first closure of {v} under generator conjugation and commutators.

    Each visited x spawns s x s^{-1} for every generator s (first), then
    [x, s] = x s x^{-1} s^{-1}.  Visited elements are deduplicated by their
    normal form.  Returns witnesses in U_alpha - {1} and U_beta - {1}, or
    "inconclusive" when ``budget`` distinct elements have been seen; an
    inconclusive result is never a refutation.
    """
    if group.is_central(v):
        raise ValueError("saturation needs a non-central element")
    if budget < 1:
        raise ValueError("budget must be positive")
    gens = saturation_generators(group, level)
    pairs = [(name, s, _inverse_gen(gens, name)) for name, s in gens]
    parent = {v: None}
    found = {}

    def note(x):
        for side, wall in (("alpha", 0), ("beta", 1)):
            if side not in found and in_root_group(x, wall):
                found[side] = x

    note(v)
    queue = deque([v])
    while queue and len(found) < 2 and len(parent) < budget:
        x = queue.popleft()
        x_inv = group.inv(x)
        moves = [("conj", name, lambda s=s, si=si: group.product(s, x, si)) for name, s, si in pairs]
        moves += [("comm", name, lambda s=s, si=si: group.product(x, s, x_inv, si)) for name, s, si in pairs]
        for op, name, make in moves:
            y = make()
            if y in parent:
                continue
            parent[y] = (op, name, x)
            queue.append(y)
            note(y)
            if len(found) == 2 or len(parent) >= budget:
                break

    derivations = {side: _derivation(parent, g) for side, g in found.items()}
    status = "witnesses" if len(found) == 2 else "inconclusive"
    return SaturationResult(status, found.get("alpha"), found.get("beta"), len(parent), derivations)


def _inverse_gen(gens, name):
    target = name[:-3] if name.endswith("^-1") else name + "^-1"
    for n, g in gens:
        if n == target:
            return g
    raise KeyError(name)  # pragma: no cover


def _derivation(parent, g):
    """Operations leading from v to g, oldest first."""
    ops = []
    while parent[g] is not None:
        op, name, g = parent[g]
        ops.append(f"{op}:{name}")
    return ops[::-1]
