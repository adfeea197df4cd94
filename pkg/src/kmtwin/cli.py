"""Command-line front end: ``kmtwin <subcommand> ...``.

Every subcommand prints one JSON document with a top-level "schema" key
(``tree --format dot`` prints Graphviz instead).  Exit status: 0 on success,
1 on a domain error or bad usage, 2 when saturation is inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from dataclasses import dataclass

from .gf import is_prime, shared_tower
from .kmgroup import KMGroup, center_elements, center_order, center_order_bruteforce, smith_invariants_2x2
from .probe import proof_replay, saturate
from .rootsys import (
    GCM2,
    GCMError,
    NotARealRoot,
    Root,
    coroot_coords,
    halfline,
    tau_root,
)
from .twintree import (
    MINUS,
    PLUS,
    TwinTree,
    covolume_limit,
    covolume_partial,
    expected_ball_size,
)

SEED_ENV = "KMTWIN_SEED"


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    gcm: tuple[int, int] | None = None
    p: int | None = None
    q_exponent: int = 1
    seed: int = 0
    output: str = "json"

    @property
    def q(self):
        return self.p**self.q_exponent if self.p else None

    def gcm2(self) -> GCM2:
        g = GCM2(*self.gcm)
        g.require_trivial_commutation()
        return g

    def group(self) -> KMGroup:
        return KMGroup(self.gcm2(), shared_tower(self.p, self.q_exponent))


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw, 0) & (2**64 - 1)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}")


# ------------------------------------------------------------------ parsing

def parse_gcm(text: str) -> tuple[int, int]:
    try:
        m, n = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--gcm expects 'm,n', got {text!r}")
    return m, n


def parse_q(q: int) -> tuple[int, int]:
    """q = p^e with p prime."""
    if q < 2:
        raise DomainError("q must be a prime power >= 2")
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):  # pragma: no cover - the least divisor is prime
                break
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise DomainError(f"q = {q} is not a prime power")
            return p, e
    raise DomainError(f"q = {q} is not a prime power")  # pragma: no cover


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise UsageError(f"--range expects 'j0..j1', got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise UsageError("--range must have j0 <= j1")
    return lo, hi


_ATOM = re.compile(r"\s*(u|h|w|winv)\(([^()]*)\)\s*")


def _coeffs(group: KMGroup, text: str):
    parts = text.split()
    if not parts:
        raise UsageError("empty field element")
    try:
        coeffs = [int(x) for x in parts]
    except ValueError:
        raise UsageError(f"field element must be integer coefficients, got {text!r}")
    return group.tower.elt(coeffs, len(coeffs)) if len(coeffs) > 1 else group.tower.elt(coeffs[0])


def parse_word(group: KMGroup, text: str):
    """Atoms ``u(a,b;c0 c1 ..)``, ``h(mu,nu)``, ``w(alpha|beta)``, ``winv(..)``."""
    atoms = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _ATOM.match(text, pos)
        if not m:
            raise UsageError(f"cannot parse word at {text[pos:]!r}")
        kind, body = m.group(1), m.group(2)
        if kind == "u":
            try:
                root_part, coeff_part = body.split(";")
                a, b = (int(x) for x in root_part.split(","))
            except ValueError:
                raise UsageError(f"bad u atom {m.group(0).strip()!r}; expected u(a,b;coeffs)")
            atoms.append(("u", Root(a, b), _coeffs(group, coeff_part)))
        elif kind == "h":
            parts = body.split(",")
            if len(parts) != 2:
                raise UsageError(f"bad h atom {m.group(0).strip()!r}; expected h(mu,nu)")
            atoms.append(("h", _coeffs(group, parts[0]), _coeffs(group, parts[1])))
        else:
            name = body.strip()
            if name not in ("alpha", "beta"):
                raise UsageError(f"{kind} takes alpha or beta, got {name!r}")
            atoms.append((kind, name))
        pos = m.end()
    if not atoms:
        raise UsageError("empty word")
    return group.from_atoms(atoms)


# ------------------------------------------------------------------ subcommands

def cmd_roots(cfg: RunConfig, args):
    gcm = cfg.gcm2()
    lo, hi = parse_range(args.range)
    rows = []
    for j in range(lo, hi + 1):
        r = tau_root(j, gcm)
        wall, side = halfline(r, gcm)
        rows.append({"j": j, "root": [r.a, r.b], "coroot": list(coroot_coords(r, gcm)),
                     "halfline": {"wall": wall, "side": side}})
    return {"schema": "kmtwin.roots/1", "gcm": list(cfg.gcm), "rows": rows}


def cmd_normalize(cfg: RunConfig, args):
    group = cfg.group()
    g = parse_word(group, args.word)
    return {"schema": "kmtwin.normalize/1", "gcm": list(cfg.gcm), "q": cfg.q,
            "element": g.to_json(), "text": repr(g)}


def cmd_tree(cfg: RunConfig, args):
    group = cfg.group()
    tree = TwinTree(group)
    sign = PLUS if args.sign in ("+", "plus") else MINUS
    ball = tree.ball(sign, args.radius, args.level)
    if cfg.output == "dot":
        return ball.to_dot()
    panels = ball.full_panels()
    out = {
        "schema": "kmtwin.tree/1",
        "gcm": list(cfg.gcm),
        "q": cfg.q,
        "level": args.level,
        "sign": sign,
        "radius": args.radius,
        "chambers": len(ball),
        "expected_chambers": expected_ball_size(ball.q, args.radius),
        "full_panels": len(panels),
        "panel_sizes": sorted({len(v) for v in panels.values()}),
        "is_tree": ball.is_tree(),
        "chamber_list": [c.to_json() for c in ball.chambers],
    }
    if args.kernel_sample:
        rng = random.Random(cfg.seed)
        sample = [_random_element(group, rng, args.level) for _ in range(args.kernel_sample)]
        rep = tree.kernel_check(ball, sample)
        out["kernel_check"] = {"seed": cfg.seed, "sample": len(sample),
                               "fixing": [repr(g) for g in rep["fixing"]],
                               "moving": len(rep["moving"])}
    return out


def _random_element(group: KMGroup, rng: random.Random, level: int):
    tower = group.tower
    k = tower.degree_of_q_level(level)
    atoms = []
    for _ in range(rng.randint(1, 5)):
        kind = rng.choice("uhw")
        if kind == "u":
            root = rng.choice([Root(1, 0), Root(0, 1), Root(-1, 0), Root(0, -1)])
            atoms.append(("u", root, tower.random(rng, k)))
        elif kind == "h":
            atoms.append(("h", tower.random(rng, k, nonzero=True), tower.random(rng, k, nonzero=True)))
        else:
            atoms.append(("w", rng.choice(["alpha", "beta"])))
    return group.from_atoms(atoms)


def cmd_covolume(cfg: RunConfig, args):
    q, N = args.q, args.terms
    parse_q(q)
    part = covolume_partial(q, N)
    lim = covolume_limit(q)
    return {"schema": "kmtwin.covolume/1", "q": q, "terms": N,
            "partial": f"{part.numerator}/{part.denominator}",
            "limit": str(lim), "gap": str(lim - part)}


def cmd_center(cfg: RunConfig, args):
    gcm = cfg.gcm2()
    q, ell = cfg.q, args.level
    if ell < 1:
        raise DomainError("--level must be >= 1")
    order = center_order(gcm, q, ell)
    out = {"schema": "kmtwin.center/1", "gcm": list(cfg.gcm), "q": q, "level": ell,
           "order": order,
           "smith": list(smith_invariants_2x2(((2, -gcm.m), (-gcm.n, 2))))}
    if q**ell <= 256:
        out["bruteforce"] = center_order_bruteforce(gcm, q, ell)
        out["elements"] = [t.to_json() for t in center_elements(cfg.group(), ell)]
    return out


def cmd_probe_replay(cfg: RunConfig, args):
    tr = proof_replay(cfg.group(), args.j, args.k)
    return tr.to_json()


def cmd_probe_saturate(cfg: RunConfig, args):
    group = cfg.group()
    v = parse_word(group, args.v)
    res = saturate(group, v, args.budget, args.level)
    out = res.to_json()
    out.update({"gcm": list(cfg.gcm), "q": cfg.q, "level": args.level,
                "budget": args.budget, "v": v.to_json()})
    return out


# ------------------------------------------------------------------ driver

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage()}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="kmtwin", description="Rank-2 Kac-Moody groups and their twin trees.")
    ap.add_argument("--seed", type=int, default=None,
                    help=f"seed for randomized steps (default: ${SEED_ENV} or 0)")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("roots", help="tau-orbit roots gamma_j")
    p.add_argument("--gcm", required=True)
    p.add_argument("--range", default="0..5")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("normalize", help="normal form of an atom word")
    p.add_argument("--gcm", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("tree", help="ball of chambers in X_+ or X_-")
    p.add_argument("--gcm", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--sign", choices=["+", "-", "plus", "minus"], default="+")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--kernel-sample", type=int, default=0,
                   help="also check this many random elements against the ball")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("covolume", help="partial sums of the lattice covolume series")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--terms", type=int, required=True)
    p.set_defaults(func=cmd_covolume)

    p = sub.add_parser("center", help="order of the center over F_{q^level}")
    p.add_argument("--gcm", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("probe", help="separation replay and saturation")
    psub = p.add_subparsers(dest="probe_cmd", required=True, parser_class=_Parser)
    r = psub.add_parser("replay")
    r.add_argument("--gcm", required=True)
    r.add_argument("--q", type=int, required=True)
    r.add_argument("--j", type=int, default=1)
    r.add_argument("--k", type=int, default=1)
    r.set_defaults(func=cmd_probe_replay)
    s = psub.add_parser("saturate")
    s.add_argument("--gcm", required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--level", type=int, default=1)
    s.add_argument("--v", required=True)
    s.add_argument("--budget", type=int, default=100_000)
    s.set_defaults(func=cmd_probe_saturate)
    return ap


def make_config(args) -> RunConfig:
    seed = args.seed if args.seed is not None else default_seed()
    gcm = parse_gcm(args.gcm) if getattr(args, "gcm", None) else None
    p = e = None
    q = getattr(args, "q", None)
    if q is not None:
        p, e = parse_q(q)
    output = getattr(args, "format", "json")
    return RunConfig(gcm=gcm, p=p, q_exponent=e or 1, seed=seed, output=output)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = make_config(args)
        result = args.func(cfg, args)
    except UsageError as exc:
        print(f"kmtwin: {exc}", file=stderr)
        return 1
    except (DomainError, GCMError, NotARealRoot, ValueError) as exc:
        print(f"kmtwin: error: {exc}", file=stderr)
        return 1
    if isinstance(result, str):
        stdout.write(result)
        return 0
    stdout.write(json.dumps(result, sort_keys=True, indent=2) + "\n")
    if result.get("schema") == "kmtwin.saturation/1" and result["status"] == "inconclusive":
        return 2
    return 0


def main() -> None:
    sys.exit(run())
