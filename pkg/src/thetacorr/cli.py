"""``verify <suite...>``: run registered suites and write a JSON report.

Exit status is 0 when every check passes (skipped checks do not count as
failures), 1 when any check fails and 2 on a configuration error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .local_field import FieldParams
from .suites import ANCHORS, SUITES, SuiteParams, run_suite


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    p: int = 3
    z: int | None = None
    precision: int = 14
    suites: list = field(default_factory=list)
    n_values: list = field(default_factory=list)
    k_values: list = field(default_factory=list)
    trials: int = 100
    seed: int = 0
    budget: int | None = 10**7
    jobs: int = 1
    report_path: str | None = None

    def validate(self) -> None:
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        try:
            FieldParams(self.p, self.z, self.precision)
        except ValueError as e:
            raise ConfigError(str(e)) from e

    def suite_params(self) -> SuiteParams:
        return SuiteParams(self.p, self.z, self.precision, list(self.n_values), list(self.k_values),
                           self.trials, self.budget, self.jobs)

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("report_path")
        return d


def suite_seed(name: str, seed: int) -> int:
    h = hashlib.sha256(f"{name}:{seed}".encode()).digest()
    return int.from_bytes(h[:8], "big")


def _run_one(name: str, cfg: RunConfig) -> dict:
    t0 = time.perf_counter()
    P = cfg.suite_params()
    checks = run_suite(name, P, random.Random(suite_seed(name, cfg.seed)))
    return {
        "suite": name,
        "params": asdict(P),
        "checks": [c.to_dict() for c in checks],
        "runtime_ms": round(1000 * (time.perf_counter() - t0)),
    }


def run(cfg: RunConfig) -> dict:
    """Run the configured suites; the report is deterministic apart from runtime_ms."""
    cfg.validate()
    if cfg.jobs > 1 and len(cfg.suites) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            records = list(ex.map(_run_one, cfg.suites, [cfg] * len(cfg.suites)))
    else:
        records = [_run_one(s, cfg) for s in cfg.suites]
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in records:
        for c in r["checks"]:
            counts[c["status"]] += 1
    anchors = sorted({c["paper_anchor"] for r in records for c in r["checks"]})
    return {
        "suites": records,
        "summary": {"counts": counts, "ok": counts["fail"] == 0, "anchors": anchors, "config": cfg.echo()},
    }


def exit_code(report: dict) -> int:
    return 0 if report["summary"]["ok"] else 1


# ---- argument handling


def _int_list(s: str) -> list:
    return [int(t) for t in s.replace(",", " ").split()]


_KEYS = {
    "p": ("p", int), "z": ("z", int), "precision": ("precision", int), "n": ("n_values", _int_list),
    "k": ("k_values", _int_list), "trials": ("trials", int), "seed": ("seed", int), "budget": ("budget", int),
    "jobs": ("jobs", int), "report": ("report_path", str), "suites": ("suites", lambda s: s.replace(",", " ").split()),
}


def read_config(path: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from e
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, val = (t.strip() for t in line.split("=", 1))
        key = key.replace("-", "_").lstrip("_")
        if key not in _KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        attr, conv = _KEYS[key]
        try:
            out[attr] = conv(val)
        except ValueError as e:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {val!r}") from e
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="verify", description="Run exact verification suites.")
    ap.add_argument("suites", nargs="*", help="suites to run: " + ", ".join(SUITES))
    ap.add_argument("--p", type=int)
    ap.add_argument("--z", type=int)
    ap.add_argument("--precision", type=int)
    ap.add_argument("--n", type=_int_list, help="comma separated n values")
    ap.add_argument("--k", type=_int_list, help="comma separated k values")
    ap.add_argument("--trials", type=int)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--budget", type=int)
    ap.add_argument("--jobs", type=int)
    ap.add_argument("--report", help="write the JSON report here")
    ap.add_argument("--config", help="key = value file; flags override it")
    ap.add_argument("--list", action="store_true", help="list suites and anchors, then exit")
    return ap


def config_from_args(argv) -> tuple[RunConfig, bool]:
    ns = build_parser().parse_args(argv)
    vals = read_config(ns.config) if ns.config else {}
    flag_map = {"p": "p", "z": "z", "precision": "precision", "n": "n_values", "k": "k_values", "trials": "trials",
                "seed": "seed", "budget": "budget", "jobs": "jobs", "report": "report_path"}
    for flag, attr in flag_map.items():
        v = getattr(ns, flag)
        if v is not None:
            vals[attr] = v
    if ns.suites:
        vals["suites"] = ns.suites
    return RunConfig(**vals), ns.list


def _summary_lines(report: dict):
    for r in report["suites"]:
        cs = r["checks"]
        n_pass = sum(c["status"] == "pass" for c in cs)
        yield f"[{r['suite']}] {n_pass}/{len(cs)} pass ({r['runtime_ms']} ms)"
        for c in cs:
            if c["status"] != "pass":
                extra = f" -- {c['note']}" if c.get("note") else ""
                yield f"  {c['status'].upper()}: {c['name']}: expected {c['expected']}, got {c['actual']}{extra}"
    s = report["summary"]["counts"]
    yield f"total: {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped"


def main(argv=None) -> int:
    try:
        cfg, listing = config_from_args(sys.argv[1:] if argv is None else argv)
        if listing:
            for name in SUITES:
                print(name)
            for a in ANCHORS.values():
                print("  anchor:", a)
            return 0
        report = run(cfg)
    except ConfigError as e:
        print(f"verify: configuration error: {e}", file=sys.stderr)
        return 2
    for line in _summary_lines(report):
        print(line)
    if cfg.report_path:
        with open(cfg.report_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
