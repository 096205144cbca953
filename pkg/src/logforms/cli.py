"""Command-line front end.

Exit codes: 0 success, 1 a check or certificate failed, 2 malformed input.
JSON goes to ``--out`` when given (summary on stdout), otherwise to stdout
(summary on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .baselocus import components
from .logarithmic import DegreeVector, LogInstance, identity_suite, random_instance
from .poly import FieldSpec
from .singular import hilbert_check
from .tangent import BaseLocusError, stability_certificate

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_SEEDS = (0, 1, 2, 3, 4)


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    degrees: DegreeVector | None = None
    field: FieldSpec = dc_field(default_factory=FieldSpec.prime)
    seeds: list = dc_field(default_factory=list)
    out: Path | None = None
    verbosity: int = 0
    jobs: int = 1


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(cfg: RunConfig, payload: dict, summary: str) -> None:
    text = _dump(payload)
    if cfg.out is not None:
        cfg.out.write_text(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)


def _parse_seeds(args) -> list:
    if getattr(args, "seeds", None):
        return _parse_int_list(args.seeds)
    if getattr(args, "seed", None) is not None:
        return [int(args.seed)]
    return []


def _parse_int_list(text: str) -> list:
    """``a..b`` (inclusive) or a comma list."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(k) for k in text.split(",") if k.strip()]


def _config(args) -> RunConfig:
    try:
        cfg = RunConfig(args.command)
        if getattr(args, "n", None) is not None:
            cfg.n = int(args.n)
        if getattr(args, "degrees", None):
            cfg.degrees = DegreeVector.parse(args.degrees)
        if getattr(args, "field", None):
            cfg.field = FieldSpec.parse(args.field)
        cfg.seeds = _parse_seeds(args)
        if getattr(args, "out", None):
            cfg.out = Path(args.out)
        cfg.verbosity = getattr(args, "verbose", 0) or 0
        cfg.jobs = max(1, int(getattr(args, "jobs", 1) or 1))
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    if cfg.degrees is not None:
        try:
            cfg.field.check_degree(cfg.degrees.d)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    return cfg


def _require(cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) in (None, []):
            raise InputError(f"--{name.rstrip('s') if name == 'seeds' else name} is required")


def load_instance(path: str) -> LogInstance:
    try:
        obj = json.loads(Path(path).read_text())
        return LogInstance.from_json(obj)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"cannot read instance {path}: {exc}") from exc


# -- subcommands ---------------------------------------------------------

def cmd_gen(cfg: RunConfig, args) -> int:
    _require(cfg, "n", "degrees")
    seed = cfg.seeds[0] if cfg.seeds else 0
    inst = random_instance(cfg.n, cfg.degrees, cfg.field, seed)
    _emit(cfg, inst.to_json(), f"generated n={cfg.n} d={cfg.degrees} over {cfg.field} seed={seed}")
    return EXIT_OK


def cmd_check(cfg: RunConfig, args) -> int:
    inst = load_instance(args.instance)
    report = identity_suite(inst)
    payload = {
        "instance": {"seed": inst.seed, "n": inst.n, "degrees": list(inst.dv.parts), "field": inst.field.to_json()},
        "genericity": inst.genericity_flags(),
        **report.to_json(),
    }
    status = "PASS" if report.passed else "FAIL " + ",".join(report.failures)
    _emit(cfg, payload, f"check {args.instance}: {status}")
    return EXIT_OK if report.passed else EXIT_FAIL


def _certify_one(task):
    n, parts, field_json, seed = task
    inst = random_instance(n, DegreeVector(tuple(parts)), FieldSpec.from_json(field_json), seed)
    return _certify_instance(inst)


def _certify_instance(inst: LogInstance) -> dict:
    try:
        return stability_certificate(inst).to_json()
    except BaseLocusError as exc:
        return {"seed": inst.seed, "error": str(exc), "surjective": False}


def cmd_certify(cfg: RunConfig, args) -> int:
    if args.instance:
        inst = load_instance(args.instance)
        reports = [_certify_instance(inst)]
        n, dv, field = inst.n, inst.dv, inst.field
        seeds = [inst.seed]
    else:
        _require(cfg, "n", "degrees")
        n, dv, field = cfg.n, cfg.degrees, cfg.field
        seeds = cfg.seeds or list(DEFAULT_SEEDS)
        tasks = [(n, dv.parts, field.to_json(), s) for s in seeds]
        if cfg.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                reports = list(pool.map(_certify_one, tasks))
        else:
            reports = [_certify_one(t) for t in tasks]
    unanimous = all(r.get("surjective") for r in reports)
    payload = {
        "n": n,
        "degrees": list(dv.parts),
        "field": field.to_json(),
        "seeds": seeds,
        "unanimous": unanimous,
        "reports": reports,
    }
    lines = [f"certify n={n} d={dv} over {field}"]
    for r in reports:
        if "error" in r:
            lines.append(f"  seed {r['seed']}: ERROR {r['error']}")
        else:
            lines.append(
                f"  seed {r['seed']}: rank dmu={r['rank_dmu']} dim T={r['dim_T']} "
                f"ker={r['ker_dmu_dim']} surjective={r['surjective']}"
            )
    lines.append("verdict: " + ("surjective at every seed" if unanimous else "NOT unanimous"))
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if unanimous else EXIT_FAIL


def cmd_baselocus(cfg: RunConfig, args) -> int:
    _require(cfg, "degrees")
    comps = components(cfg.degrees)
    payload = {
        "degrees": list(cfg.degrees.parts),
        "factorizations": [c.to_json() for c in comps],
        "maximal": [c.to_json() for c in comps if c.is_maximal and c.lambda_dim > 0],
    }
    _emit(cfg, payload, f"base locus of d={cfg.degrees}: {len(comps)} factorizations, "
                        f"{len(payload['maximal'])} components")
    return EXIT_OK


def cmd_hilbert(cfg: RunConfig, args) -> int:
    _require(cfg, "n", "degrees")
    try:
        ks = _parse_int_list(args.k)
    except ValueError as exc:
        raise InputError(f"bad --k range: {exc}") from exc
    seeds = cfg.seeds or [0]
    tables = []
    ok = True
    for seed in seeds:
        inst = random_instance(cfg.n, cfg.degrees, cfg.field, seed)
        rows = [hilbert_check(inst, k).to_json() for k in ks]
        ok = ok and all(r["match"] for r in rows)
        tables.append({"seed": seed, "rows": rows})
    payload = {"n": cfg.n, "degrees": list(cfg.degrees.parts), "field": cfg.field.to_json(), "tables": tables, "match": ok}
    _emit(cfg, payload, f"hilbert n={cfg.n} d={cfg.degrees} k={ks[0]}..{ks[-1]}: " + ("all match" if ok else "MISMATCH"))
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "gen": cmd_gen,
    "check": cmd_check,
    "certify": cmd_certify,
    "baselocus": cmd_baselocus,
    "hilbert": cmd_hilbert,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logforms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, randomized=True):
        p.add_argument("--n", type=int, help="projective dimension")
        p.add_argument("--degrees", help="comma-separated d1,d2,...")
        p.add_argument("--field", default="prime:2147483647", help="rational | prime:P")
        if randomized:
            p.add_argument("--seed", type=int)
            p.add_argument("--seeds", help="comma list or range a..b")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("-v", "--verbose", action="count", default=0)

    common(sub.add_parser("gen", help="write a seeded random instance"))
    p = sub.add_parser("check", help="run the identity suite on an instance file")
    p.add_argument("instance")
    p.add_argument("--out")
    p = sub.add_parser("certify", help="compare rank d(mu) with dim T(omega)")
    common(p)
    p.add_argument("--instance", help="certify this instance file instead of seeded ones")
    p.add_argument("--jobs", type=int, default=1)
    common(sub.add_parser("baselocus", help="enumerate base-locus factorizations"), randomized=False)
    p = sub.add_parser("hilbert", help="Hilbert function of the stratum ideal vs its resolution")
    common(p)
    p.add_argument("--k", default="0..6", help="degree range a..b or list")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
