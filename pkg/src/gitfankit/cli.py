"""Command line front end.

Subcommands run the enumerations and fan constructions, export fans and
posets as JSON, and execute the verification suite.  Guards keep runtimes at
desk scale; ``--force`` overrides them with a warning.  Identical
configurations (including the seed) produce byte-identical output files, so
timings are printed to the console only, never written into reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from . import gitfan as gfan
from . import grassmann as gr
from . import semilattice as sl
from .grassmann import GuardExceeded
from .polyhedral import Fan, FanAxiomViolation

DEFAULT_SEED = 2024

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _jobs_from_env(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("GITFANKIT_JOBS")
    return int(env) if env else 1


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    elif args.format == "json":
        sys.stdout.write(text)


def fan_payload(fan: Fan, n: int) -> dict:
    """JSON fan format: integer-string rays, cones as sorted ray indices."""
    rays = list(fan.rays)
    index = {r: i for i, r in enumerate(rays)}
    cones = []
    for c in sorted(fan.maximal, key=lambda c: c.rays):
        entry: dict = {"rays": sorted(index[r] for r in c.rays)}
        if c.lineality:
            entry["lineality"] = [[str(x) for x in l] for l in c.lineality]
        cones.append(entry)
    return {
        "n": n,
        "rays": [[str(x) for x in r] for r in rays],
        "cones": cones,
    }



def _guard_check(n: int, limit: int, what: str, force: bool) -> bool:
    """True when execution may proceed; warns when forcing past a guard."""
    if n <= limit:
        return True
    if force:
        print(
            f"warning: forcing {what} past its guard (n={n} > {limit}); "
            "expect a long run",
            file=sys.stderr,
        )
        return True
    print(f"guard: {what} needs n <= {limit} (got {n}); use --force", file=sys.stderr)
    return False


def cmd_ysets(args) -> int:
    n = args.n
    if not _guard_check(n, 6, "ysets", args.force):
        return EXIT_USAGE
    ysets = gr.enumerate_y_sets(n, force=True)
    payload = {
        "n": n,
        "count": len(ysets),
        "ysets": [y.serialize() for y in ysets],
    }
    print(f"n={n}: {len(ysets)} Y-sets")
    if args.oracle:
        if not _guard_check(n, 3, "ysets --oracle", args.force):
            return EXIT_USAGE
        brute = {frozenset(y.members) for y in gr.brute_force_supports(n, force=True)}
        enum = {frozenset(y.members) for y in ysets}
        equal = brute == enum
        payload["oracle"] = {"count": len(brute), "equal": equal}
        print(f"equal: {str(equal).lower()}")
        if not equal:
            _emit(payload, args)
            return EXIT_CLAIM_FAILED
    _emit(payload, args)
    return EXIT_OK


_FAN_GUARDS = {
    "gitfan": 5,
    "gitfan-star": 5,
    "sigma0": 5,
    "sigma1": 5,
    "sigmar": 5,
    "delta": 4,
}


def _build_fan(which: str, n: int, force: bool) -> Fan:
    if which == "gitfan":
        return gfan.git_fan(n, force)
    if which == "gitfan-star":
        return gfan.git_fan_star(n, force)
    if which == "sigma0":
        return gfan.sigma_fan_cached(n, 0)
    if which == "sigma1":
        return gfan.sigma_fan_cached(n, 1)
    if which == "sigmar":
        return gfan.sigma_r(n, force)
    if which == "delta":
        return gfan.delta_reduction(n, force)
    raise ValueError(which)


def cmd_fan(args) -> int:
    n = args.n
    if not _guard_check(n, _FAN_GUARDS[args.which], f"fan {args.which}", args.force):
        return EXIT_USAGE
    if n < (3 if args.which != "gitfan" else 2):
        print(f"fan {args.which} needs a larger n", file=sys.stderr)
        return EXIT_USAGE
    try:
        fan = _build_fan(args.which, n, args.force)
    except (FanAxiomViolation, AssertionError) as err:
        print(f"internal validation failure: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    payload = fan_payload(fan, n)
    print(
        f"fan {args.which} n={n}: {len(fan.rays)} rays, "
        f"{len(fan.maximal)} maximal cones"
    )
    _emit(payload, args)
    return EXIT_OK


_CLAIM_GUARDS = {
    "walls": 5,
    "star-subfan": 5,
    "fk-bridge": 99,
    "thm44": 99,
    "delta-subfan": 4,
    "rays": 4,
    "nu-equality": 5,
}


def _run_claim(claim: str, n: int, seed: int, force: bool, jobs: int = 1) -> dict:
    if claim == "walls":
        return gfan.verify_walls(n, force)
    if claim == "star-subfan":
        return gfan.verify_star_subfan(n, force)
    if claim == "fk-bridge":
        return sl.verify_fk_bridge(seed=seed, jobs=jobs)
    if claim == "thm44":
        return sl.verify_blowup_join_criterion()
    if claim == "delta-subfan":
        return gfan.verify_delta_subfan(n, force)
    if claim == "rays":
        return gfan.verify_ray_classification(n, force)
    if claim == "nu-equality":
        return gfan.verify_nu_equality(n, force)
    raise ValueError(claim)


def cmd_verify(args) -> int:
    n = args.n
    claims = (
        ["walls", "star-subfan", "fk-bridge", "thm44", "delta-subfan", "rays", "nu-equality"]
        if args.claim == "all"
        else [args.claim]
    )
    reports = []
    for claim in claims:
        limit = _CLAIM_GUARDS[claim]
        if n > limit:
            if args.claim == "all" and not args.force:
                continue
            if not _guard_check(n, limit, f"verify {claim}", args.force):
                return EXIT_USAGE
        t0 = time.perf_counter()
        try:
            rep = _run_claim(claim, n, args.seed, args.force, args.jobs)
        except (FanAxiomViolation, AssertionError) as err:
            print(f"internal validation failure in {claim}: {err}", file=sys.stderr)
            return EXIT_INTERNAL
        elapsed = time.perf_counter() - t0
        reports.append(rep)
        print(f"{claim}: {'pass' if rep['result'] else 'FAIL'} ({elapsed:.1f}s)")
    payload = reports[0] if len(reports) == 1 else {"n": n, "reports": reports}
    _emit(payload, args)
    return EXIT_OK if all(r["result"] for r in reports) else EXIT_CLAIM_FAILED


def cmd_centers(args) -> int:
    n = args.n
    try:
        block = sorted({int(x) for x in args.block.split(",")})
    except ValueError:
        print("block must be a comma-separated list of indices", file=sys.stderr)
        return EXIT_USAGE
    if len(block) < 2 or not set(block) <= set(range(2, n + 1)):
        print(
            f"block must be a subset of {{2..{n}}} with at least two elements",
            file=sys.stderr,
        )
        return EXIT_USAGE
    nu = gfan.nu_vector(block, n)
    sigma0 = gfan.sigma_fan_cached(n, 0)
    ideal = gfan.center_ideal(sigma0, nu, n)
    displayed = gfan.center_pullback(block, n)
    extra = sorted(set(ideal.pullback_generators) - set(displayed))
    payload = {
        "n": n,
        "block": block,
        "nu": [str(x) for x in nu],
        "carrier_pairs": [f"{i},{j}" for i, j in ideal.carrier_pairs],
        "alphas": list(ideal.alphas),
        "c": ideal.c,
        "exponents": [list(e) for e in ideal.exponents],
        "pullback": list(ideal.pullback_generators),
        "displayed": displayed,
        "extra": extra,
    }
    print(f"nu = {nu}")
    print(f"carrier: {ideal.carrier_pairs}  alphas: {ideal.alphas}  c: {ideal.c}")
    print(f"pullback:  {{{', '.join(ideal.pullback_generators)}}}")
    print(f"displayed: {{{', '.join(displayed)}}}")
    print(f"extra: {', '.join(extra) if extra else '(none)'}")
    _emit(payload, args)
    return EXIT_OK


def cmd_poset(args) -> int:
    n = args.n
    if not _guard_check(n, _FAN_GUARDS[args.which], f"poset {args.which}", args.force):
        return EXIT_USAGE
    try:
        fan = _build_fan(args.which, n, args.force)
    except (FanAxiomViolation, AssertionError) as err:
        print(f"internal validation failure: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    poset = sl.face_poset(fan)
    payload = poset.dump()
    payload["n"] = n
    payload["fan"] = args.which
    print(
        f"face poset of {args.which} n={n}: {len(poset)} elements, "
        f"{len(payload['hasse'])} cover relations"
    )
    _emit(payload, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gitfankit",
        description="Exact GIT-fan and blow-up combinatorics of Gr(2, n+1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-n", type=int, required=True, help="number of marked points")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--output", "-o", help="write the JSON payload to a file")
        p.add_argument("--format", choices=["json", "text"], default="text")
        p.add_argument("--force", action="store_true", help="override size guards")
        p.add_argument("--jobs", type=int, default=None, help="worker processes")

    p = sub.add_parser("ysets", help="enumerate Y-sets, optionally against the oracle")
    common(p)
    p.add_argument("--oracle", action="store_true", help="compare with brute force")
    p.set_defaults(func=cmd_ysets)

    p = sub.add_parser("fan", help="compute and export a fan")
    p.add_argument(
        "which",
        choices=["gitfan", "gitfan-star", "sigma0", "sigma1", "sigmar", "delta"],
    )
    common(p)
    p.set_defaults(func=cmd_fan)

    p = sub.add_parser("verify", help="run verification claims")
    p.add_argument(
        "claim",
        choices=[
            "walls",
            "star-subfan",
            "fk-bridge",
            "thm44",
            "delta-subfan",
            "rays",
            "nu-equality",
            "all",
        ],
    )
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("centers", help="blow-up center ideal of a block")
    common(p)
    p.add_argument("-A", "--block", required=True, help="comma separated block, e.g. 2,3")
    p.set_defaults(func=cmd_centers)

    p = sub.add_parser("poset", help="dump the face poset of a fan")
    p.add_argument(
        "which",
        choices=["gitfan", "gitfan-star", "sigma0", "sigma1", "sigmar", "delta"],
    )
    common(p)
    p.set_defaults(func=cmd_poset)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    args.jobs = _jobs_from_env(args.jobs)
    if args.n < 2:
        print("need n >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except GuardExceeded as err:
        print(f"guard: {err}", file=sys.stderr)
        return EXIT_USAGE
    except FanAxiomViolation as err:
        print(f"internal validation failure: {err}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
