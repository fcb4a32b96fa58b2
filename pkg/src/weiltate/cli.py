"""Command-line front end.

    weiltate run scenario.json --json report.json
    weiltate enumerate --k 3 --c 7
    weiltate verify lemma1 --kmax 3
    weiltate verify thm2 --bound 6
    weiltate analyze --preset standard_quadruple --degree 4
    weiltate relations --preset standard_quadruple --preset beta --max-degree 6

Exit codes: 0 all tasks pass, 1 a verifier found a counterexample or an
analysis produced an unexpected gap, 2 invalid config or arguments.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__
from .coniveau import analyze, verify_lemma1, verify_thm2
from .config import (
    CONFIG_SCHEMA_ID,
    PRESETS,
    REPORT_SCHEMA_ID,
    ConfigError,
    Scenario,
    parse_config,
    preset_config,
)
from .groupring import element_name
from .relations import GeneratorSet, survey_relations
from .weilmodel import FieldContext, classify_section, enumerate_sections, orbits

log = logging.getLogger("weiltate")

CACHE_ENV = "WEILTATE_CACHE_DIR"
CACHED_TASKS = ("verify_lemma1", "verify_thm2")


# --- task execution -------------------------------------------------------


def enumerate_result(ctx: FieldContext) -> dict:
    sections = enumerate_sections(ctx)
    index = {m: i for i, m in enumerate(sections)}
    rows = []
    for i, m in enumerate(sections):
        info = classify_section(ctx, m)
        rows.append({"index": i, "divisor": m.to_json(), **info.to_json()})
    mod_c = [[index[m] for m in cls] for cls in orbits(ctx, mod_c=True)]
    mod_g = [[index[m] for m in cls] for cls in orbits(ctx, mod_c=True, mod_galois=True)]
    sizes = sorted(len(o) // 2 for o in mod_g) if ctx.k else []
    summary = (
        f"{len(sections)} sections; {len(mod_c)} up to conjugation; "
        f"classes {'+'.join(map(str, sizes))}"
    )
    return {
        "context": ctx.to_json(),
        "sections": rows,
        "orbits_mod_c": mod_c,
        "orbits_mod_galois": mod_g,
        "summary": summary,
    }


def _task_params(task: dict) -> dict:
    return {k: v for k, v in task.items() if k != "task"}


def _run_task(task: dict, sc: Scenario, jobs: int) -> tuple[dict, bool]:
    kind = task["task"]
    if kind == "enumerate":
        return enumerate_result(sc.ctx), True
    if kind == "analyze":
        rep = analyze(sc.product, task["degree"])
        out = rep.to_json()
        expected = task.get("expected_gaps", False)
        if expected is True:
            unexpected = []
        else:
            allowed = set(expected or [])
            unexpected = [g for g in out["gaps"] if g not in allowed]
        out["unexpected_gaps"] = unexpected
        return out, not unexpected
    if kind == "verify_lemma1":
        rep = verify_lemma1(task["kmax"], jobs=jobs)
        return rep.to_json(), rep.passed
    if kind == "verify_thm2":
        rep = verify_thm2(FieldContext.standard(), task["bound"])
        return rep.to_json(), rep.passed
    if kind == "relations":
        labels = task.get("generators") or [c.label for c in sc.classes]
        gens = GeneratorSet(sc.ctx, tuple(sc.class_by_label(x) for x in labels))
        return survey_relations(gens, task["max_degree"]).to_json(), True
    raise ValueError(f"unknown task {kind!r}")


def _cache_key(task: dict, ctx: FieldContext) -> str:
    blob = json.dumps({"tool": __version__, "context": ctx.to_json(), "task": task}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def run(raw: dict, jobs: int = 1, cache_dir: str | os.PathLike | None = None) -> dict:
    """Execute every task of a config document and return the report dict.

    Raises :class:`ConfigError` for invalid configs.
    """
    sc = parse_config(raw)
    cache = Path(cache_dir) if cache_dir else None
    entries = []
    for task in sc.tasks:
        start = time.perf_counter_ns()
        status = "off"
        result = ok = None
        path = None
        if cache is not None and task["task"] in CACHED_TASKS:
            path = cache / f"{_cache_key(task, sc.ctx)}.json"
            if path.exists():
                stored = json.loads(path.read_text())
                result, ok, status = stored["result"], stored["ok"], "hit"
            else:
                status = "miss"
        if result is None:
            result, ok = _run_task(task, sc, jobs)
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(json.dumps({"task": task, "result": result, "ok": ok}, sort_keys=True))
        elapsed = (time.perf_counter_ns() - start) // 1_000_000
        entries.append(
            {
                "task": task["task"],
                "params": _task_params(task),
                "status": "pass" if ok else "fail",
                "result": result,
                "meta": {"wall_time_ms": int(elapsed), "cache": status},
            }
        )
    return {
        "schema": REPORT_SCHEMA_ID,
        "tool": {"name": "weiltate", "version": __version__},
        "config": raw,
        "tasks": entries,
        "exit_code": 0 if all(e["status"] == "pass" for e in entries) else 1,
    }


# --- text output ----------------------------------------------------------


def summarize(report: dict) -> str:
    lines = []
    for e in report["tasks"]:
        r = e["result"]
        head = f"[{e['status']}] {e['task']} {json.dumps(e['params'], sort_keys=True)}"
        if e["meta"]["cache"] == "hit":
            head += " (cached)"
        lines.append(head)
        if e["task"] == "enumerate":
            for row in r["sections"]:
                stab = ",".join(element_name(g) for g in row["stabilizer"])
                lines.append(
                    f"  {row['index']:>3}  {row['divisor']}  stab={{{stab}}}  "
                    f"deg={row['field_degree']}  elliptic={row['is_elliptic']}  dim={row['dimension']}"
                )
            lines.append(f"  {r['summary']}")
        elif e["task"] == "analyze":
            tally: dict[tuple[int, int], int] = {}
            for m in r["monomials"]:
                key = (m["tate"], m["witnessed"])
                tally[key] = tally.get(key, 0) + 1
            lines.append(f"  {len(r['monomials'])} monomials in degree {r['degree']}")
            for (t, w), n in sorted(tally.items()):
                lines.append(f"    tate={t} witnessed={w}: {n}")
            for g in r["gaps"]:
                tag = "UNEXPECTED" if g in r["unexpected_gaps"] else "expected"
                lines.append(f"  gap ({tag}): {g}")
        elif e["task"] in CACHED_TASKS:
            lines.append(
                f"  {r['configurations_checked']} configurations, "
                f"{len(r['counterexamples'])} counterexamples"
            )
            for key, val in r["details"].items():
                if key.endswith("_holds"):
                    lines.append(f"  {key}: {val}")
        elif e["task"] == "relations":
            lines.append(f"  generators: {', '.join(r['generators'])}")
            lines.append(
                f"  {len(r['degree2_relations'])} degree-2 relations; "
                f"{r['relations_checked']} relations of degree <= {r['max_degree']}"
            )
            for x in r["exotic"]:
                lines.append(f"  exotic: {x['name']}  [{x['membership']['obstruction']}]")
            for x in r["monoid_gaps"]:
                lines.append(f"  in lattice, not a nonnegative combination: {x['name']}")
    return "\n".join(lines)


# --- argument parsing -----------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report here")
    common.add_argument(
        "--cache-dir",
        metavar="PATH",
        default=os.environ.get(CACHE_ENV),
        help=f"cache verifier results here (default ${CACHE_ENV})",
    )
    common.add_argument("--jobs", type=int, default=1, help="worker processes for verifiers")

    ap = argparse.ArgumentParser(prog="weiltate", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"weiltate {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common], help="run a scenario config")
    p.add_argument("config", help="path to a JSON scenario config")

    p = sub.add_parser("enumerate", parents=[common], help="list ordinary divisor classes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=int, required=True, help="complex conjugation as an element index")

    p = sub.add_parser("verify", help="exhaustive verifiers")
    vsub = p.add_subparsers(dest="which", required=True)
    v = vsub.add_parser("lemma1", parents=[common])
    v.add_argument("--kmax", type=int, required=True)
    v = vsub.add_parser("thm2", parents=[common])
    v.add_argument("--bound", type=int, required=True)

    p = sub.add_parser("analyze", parents=[common], help="coniveau of eigenvalues on H^n")
    p.add_argument("--preset", choices=PRESETS, required=True)
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("relations", parents=[common], help="degree-2 and exotic relations")
    p.add_argument("--preset", choices=PRESETS, action="append", required=True)
    p.add_argument("--max-degree", type=int, default=8)
    return ap


def config_from_args(args: argparse.Namespace) -> dict:
    if args.command == "run":
        try:
            with open(args.config) as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("", f"cannot read {args.config}: {exc}") from None
    if args.command == "enumerate":
        return {
            "schema": CONFIG_SCHEMA_ID,
            "context": {"k": args.k, "c": args.c},
            "tasks": [{"task": "enumerate"}],
        }
    if args.command == "verify":
        task = (
            {"task": "verify_lemma1", "kmax": args.kmax}
            if args.which == "lemma1"
            else {"task": "verify_thm2", "bound": args.bound}
        )
        return {"schema": CONFIG_SCHEMA_ID, "context": {"k": 3, "c": 7}, "tasks": [task]}
    if args.command == "analyze":
        task = {"task": "analyze", "degree": args.degree, "expected_gaps": True}
        return preset_config([args.preset], [task])
    if args.command == "relations":
        presets = list(dict.fromkeys(args.preset))
        return preset_config(presets, [{"task": "relations", "max_degree": args.max_degree}])
    raise AssertionError(args.command)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        raw = config_from_args(args)
        report = run(raw, jobs=args.jobs, cache_dir=args.cache_dir)
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    print(summarize(report))
    if args.json:
        Path(args.json).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
        log.info("wrote %s", args.json)
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
