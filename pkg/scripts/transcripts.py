"""Write one JSON file with the output of a fixed battery of kmtwin commands.

Two runs with the same --seed must produce byte-identical files; the
acceptance suite runs this script twice in fresh interpreters to check that.

    python scripts/transcripts.py --seed 7 --out run.json
"""

import argparse
import io
import json
import random
import sys

from kmtwin.cli import run

ATOMS = ["u(1,0;{c})", "u(0,1;{c})", "u(-1,0;{c})", "u(0,-1;{c})", "u(5,2;{c})",
         "h({c},{d})", "w(alpha)", "w(beta)", "winv(alpha)"]


def random_word(rng, p):
    parts = []
    for _ in range(rng.randint(1, 8)):
        atom = rng.choice(ATOMS)
        parts.append(atom.format(c=rng.randrange(p), d=rng.randrange(1, p)).replace("h(0,", "h(1,"))
    return " ".join(parts)


def battery(seed):
    rng = random.Random(seed)
    cmds = [
        ["roots", "--gcm", "2,3", "--range=-3..5"],
        ["roots", "--gcm", "3,3", "--range", "0..8"],
        ["covolume", "--q", "3", "--terms", "30"],
        ["center", "--gcm", "2,3", "--q", "5", "--level", "1"],
        ["center", "--gcm", "3,3", "--q", "2", "--level", "4"],
        ["tree", "--gcm", "2,3", "--q", "2", "--radius", "3", "--sign", "+", "--kernel-sample", "20"],
        ["tree", "--gcm", "2,3", "--q", "3", "--radius", "2", "--sign", "-", "--kernel-sample", "20"],
        ["probe", "saturate", "--gcm", "2,3", "--q", "5", "--level", "1", "--v", "u(1,0;1)"],
        ["probe", "saturate", "--gcm", "2,3", "--q", "5", "--level", "1", "--v", "h(2,1)"],
    ]
    for gcm in ("2,3", "3,2", "3,3"):
        for q in ("2", "5"):
            for j in ("1", "2"):
                for k in ("1", "2"):
                    cmds.append(["probe", "replay", "--gcm", gcm, "--q", q, "--j", j, "--k", k])
    for _ in range(20):
        cmds.append(["normalize", "--gcm", "2,3", "--q", "5", "--word", random_word(rng, 5)])
    return cmds


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", required=True)
    args = ap.parse_args(argv)
    docs = []
    for cmd in battery(args.seed):
        argv_full = ["--seed", str(args.seed)] + cmd
        out, err = io.StringIO(), io.StringIO()
        code = run(argv_full, stdout=out, stderr=err)
        docs.append({"argv": argv_full, "exit": code,
                     "output": json.loads(out.getvalue()) if out.getvalue() else None,
                     "stderr": err.getvalue()})
    with open(args.out, "w") as fh:
        json.dump({"schema": "kmtwin.battery/1", "seed": args.seed, "runs": docs}, fh,
                  sort_keys=True, indent=1)
        fh.write("\n")
    bad = [d["argv"] for d in docs if d["exit"] != 0]
    if bad:
        print(f"{len(bad)} command(s) failed: {bad}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
