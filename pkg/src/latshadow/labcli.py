"""Command-line harness: generate instances, run pivot rules, audit them against oracles.

Exit codes: 0 success, 1 usage or validation error, 2 a path bound or an
oracle cross-check failed.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import formats
from .exactgeom import EdgeGraph, GeometryError, Polytope, build_edge_graph, level_profile, matrix_metrics
from .formats import SCHEMA_VERSION, FormatError, fmt_rational, fmt_vector
from .oracles import (
    OrientationDigraph,
    brute_force_optimum,
    monotone_diameter_estimate,
    verify_lex_order,
)
from .pathalgos import (
    BoundCheck,
    SolveReport,
    greatest_improvement_solve,
    is_half_integral,
    lattice_shadow_solve,
    path_from_sigma_max,
    solve_half_integral,
    solve_lattice_lp,
    solve_level,
    uniform_support,
)
from .pivotcore import Objective, PreconditionError, SignedPermutation, generic, sigma_flag
from .polygen import GenSpec, XorShift64Star, generate

EXIT_OK, EXIT_USAGE, EXIT_BOUND = 0, 1, 2
RULES = ("half_integral", "level", "lattice_shadow", "two_phase", "sigma_max", "greatest_improvement")
HEADLINE = {
    "half_integral": "half_integral:",
    "level": "level:(d-1)m+1",
    "lattice_shadow": "shadow:dnk|A|",
    "two_phase": "two_phase:d(k+floor(k/2))",
    "sigma_max": "flag_path:dk",
    "greatest_improvement": "monotone<=|V|-1",
}
RESULT_COLUMNS = (
    "schema", "instance", "rule", "objective", "start", "sigma", "dim", "n", "k", "norm_a", "m", "s",
    "bound", "declared", "observed", "optimum", "oracle", "status", "violations",
)  # fmt: skip
SUMMARY_COLUMNS = ("schema", "check", "runs", "failures", "max_observed", "max_declared", "min_slack")
_LEG_INDEX = re.compile(r"leg\d+")


class UsageError(Exception):
    pass


# --- rules ----------------------------------------------------------------------


def incompatibility(rule: str, p: Polytope) -> str | None:
    """Why ``rule`` cannot run on ``p``, or None."""
    if rule not in RULES:
        return f"unknown rule {rule!r}"
    if rule == "half_integral" and not is_half_integral(p):
        return "half_integral needs vertices in {0,1/2,1}^n"
    if rule in ("lattice_shadow", "two_phase", "sigma_max") and not p.k:
        return f"{rule} needs a (0,k)-lattice polytope with k >= 1"
    return None


def run_rule(
    rule: str, p: Polytope, graph: EdgeGraph, o: Objective, start: int, sigma: SignedPermutation | None = None
) -> SolveReport:
    if rule == "half_integral":
        return solve_half_integral(p, graph, o, start)
    if rule == "level":
        return solve_level(p, graph, o, start)
    if rule == "lattice_shadow":
        return lattice_shadow_solve(p, graph, o, start)
    if rule == "two_phase":
        return solve_lattice_lp(p, graph, o, start)
    if rule == "sigma_max":
        return path_from_sigma_max(p, graph, sigma or SignedPermutation.identity(p.n), o, start)
    return greatest_improvement_solve(p, graph, o, start)


@dataclass
class Audit:
    """Bound checks of one solve plus the oracle cross-checks run on it."""

    checks: list[BoundCheck]
    oracle_failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.oracle_failures and all(c.ok for c in self.checks)


def audit(rule: str, p: Polytope, graph: EdgeGraph, o: Objective, report: SolveReport, dist: Sequence[int]) -> Audit:
    """Compare a solve with brute force: optimum, walk, monotonicity, BFS distance."""
    V = p.vertices
    fails = []
    if report.optimum != brute_force_optimum(V, o):
        fails.append("optimum")
    if not report.trace.is_walk(graph):
        fails.append("walk")
    if rule == "two_phase":
        monotone = all(leg.is_monotone(V, o) for leg in report.legs)
    else:
        monotone = report.trace.is_monotone(V, o)
    if not monotone:
        fails.append("monotone")
    if rule != "two_phase" and report.steps < dist[report.trace.start]:
        fails.append("bfs<=steps")
    checks = list(report.bound_checks)
    if rule == "sigma_max":
        checks.append(BoundCheck("flag_path:bfs<=dk", p.dim * p.k, dist[report.trace.start]))
    return Audit(checks, fails)


# --- run configuration ----------------------------------------------------------------


@dataclass
class RunConfig:
    corpus: list[GenSpec] = field(default_factory=list)
    rules: tuple[str, ...] = RULES
    objectives: int = 20
    objective_seed: int = 1
    objective_list: tuple[tuple[Fraction, ...], ...] = ()
    starts: str = "all"
    sigma_samples: int = 10
    lemma8: tuple[tuple[int, int], ...] = ()
    diameter: str = "none"
    diameter_count: int = 50
    jobs: int = 1

    @classmethod
    def from_text(cls, text: str, base: Path) -> "RunConfig":
        kv = formats.load_config(text)
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(kv) - known
        if unknown:
            raise UsageError(f"unknown config keys {sorted(unknown)}")
        cfg = cls()
        if kv.get("corpus"):
            cfg.corpus = load_corpus(kv["corpus"], base)
        if "rules" in kv:
            cfg.rules = tuple(r.strip() for r in kv["rules"].split(",") if r.strip())
            bad = [r for r in cfg.rules if r not in RULES]
            if bad:
                raise UsageError(f"unknown rules {bad}")
        for key in ("objectives", "objective_seed", "sigma_samples", "diameter_count", "jobs"):
            if key in kv:
                setattr(cfg, key, _int(kv[key], key))
        if kv.get("objective_list"):
            cfg.objective_list = tuple(formats.parse_vector(v) for v in kv["objective_list"].split(";"))
        if "starts" in kv:
            cfg.starts = kv["starts"]
            parse_starts(cfg.starts)
        if kv.get("lemma8"):
            cfg.lemma8 = tuple(_pair(t) for t in kv["lemma8"].split(","))
        if "diameter" in kv:
            if kv["diameter"] not in ("none", "sampled", "exact"):
                raise UsageError("diameter must be none, sampled or exact")
            cfg.diameter = kv["diameter"]
        return cfg


def _int(text: str, key: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{key} must be an integer, got {text!r}") from None


def _pair(text: str) -> tuple[int, int]:
    n, sep, k = text.strip().partition(":")
    if not sep:
        raise UsageError(f"lemma8 entries are n:k, got {text!r}")
    return _int(n, "lemma8 n"), _int(k, "lemma8 k")


def parse_starts(text: str) -> int | None:
    """``all`` -> None, ``sample:N`` -> N."""
    if text == "all":
        return None
    m = re.fullmatch(r"sample:(\d+)", text)
    if not m or int(m.group(1)) < 1:
        raise UsageError(f"starts must be 'all' or 'sample:N', got {text!r}")
    return int(m.group(1))


def apply_seed_override(specs: list[GenSpec]) -> list[GenSpec]:
    env = os.environ.get("LAB_SEED")
    if not env:
        return specs
    base = _int(env, "LAB_SEED")
    return [replace(s, seed=base + i) for i, s in enumerate(specs)]


def load_corpus(ref: str, base: Path) -> list[GenSpec]:
    if ref.startswith("builtin:"):
        text = resources.files("latshadow").joinpath("data", ref.split(":", 1)[1] + ".txt").read_text("utf-8")
    else:
        path = (base / ref) if not Path(ref).is_absolute() else Path(ref)
        if not path.exists():
            raise UsageError(f"corpus manifest {path} does not exist")
        text = path.read_text(encoding="utf-8")
    return apply_seed_override(formats.load_manifest(text))


def default_config_text() -> str:
    return resources.files("latshadow").joinpath("data", "default.cfg").read_text("utf-8")


# --- verify ------------------------------------------------------------------------


def _instance_rng(cfg: RunConfig, spec: GenSpec, salt: int) -> XorShift64Star:
    return XorShift64Star((cfg.objective_seed << 40) ^ (salt << 32) ^ zlib.crc32(spec.to_string().encode()))


def objectives_for(cfg: RunConfig, spec: GenSpec, n: int) -> list[tuple[Fraction, ...]]:
    """Seeded nonzero integer vectors in ``[-9, 9]^n`` followed by the explicit list."""
    rng = _instance_rng(cfg, spec, 1)
    out = []
    while len(out) < cfg.objectives:
        c = tuple(Fraction(rng.randint(-9, 9)) for _ in range(n))
        if any(c):
            out.append(c)
    out += [c for c in cfg.objective_list if len(c) == n]
    return out


def starts_for(cfg: RunConfig, spec: GenSpec, nv: int) -> list[int]:
    cap = parse_starts(cfg.starts)
    if cap is None or cap >= nv:
        return list(range(nv))
    idx = list(range(nv))
    _instance_rng(cfg, spec, 2).shuffle(idx)
    return sorted(idx[:cap])


def sigmas_for(cfg: RunConfig, spec: GenSpec, n: int) -> list[SignedPermutation]:
    rng = _instance_rng(cfg, spec, 3)
    return [SignedPermutation.identity(n)] + [rng.signed_permutation(n) for _ in range(cfg.sigma_samples)]


@dataclass
class InstanceResult:
    rows: list[dict]
    tallies: list[tuple[str, int | None, int | None, bool]]
    failures: list[str]
    side_files: dict[str, str]


def _headline(rule: str, checks: Sequence[BoundCheck]) -> BoundCheck:
    prefix = HEADLINE[rule]
    return next(c for c in checks if c.name.startswith(prefix))


def run_instance(cfg: RunConfig, spec: GenSpec) -> InstanceResult:
    p = generate(spec)
    graph = build_edge_graph(p)
    V = p.vertices
    metrics = matrix_metrics(p.hrep, delta_max_n=0)
    level = level_profile(p).level
    s = uniform_support(p) if is_half_integral(p) else None
    ident = spec.to_string()
    base = {
        "schema": SCHEMA_VERSION, "instance": ident, "dim": p.dim, "n": p.n,
        "k": "" if p.k is None else p.k, "norm_a": metrics.norm_inf, "m": level - 1, "s": "" if s is None else s,
    }  # fmt: skip
    out = InstanceResult([], [], [], {})
    objs = [(c, generic(c, V)) for c in objectives_for(cfg, spec, p.n)]
    dists = [OrientationDigraph.build(graph, V, o).distances_to_sink() for _, o in objs]
    starts = starts_for(cfg, spec, len(V))
    for rule in cfg.rules:
        if incompatibility(rule, p):
            continue
        if rule == "sigma_max":
            jobs = [(j, sigma_flag(p, sg).vertex, sg) for j in range(len(objs)) for sg in sigmas_for(cfg, spec, p.n)]
        else:
            jobs = [(j, st, None) for j in range(len(objs)) for st in starts]
        for j, start, sg in jobs:
            c, o = objs[j]
            report = run_rule(rule, p, graph, o, start, sg)
            a = audit(rule, p, graph, o, report, dists[j])
            head = _headline(rule, a.checks)
            bad = [b.name for b in a.checks if not b.ok]
            opt = report.optimum
            out.rows.append({
                **base, "rule": rule, "objective": fmt_vector(c), "start": start,
                "sigma": "" if report.sigma is None else str(report.sigma),
                "bound": head.name, "declared": head.declared, "observed": head.observed,
                "optimum": fmt_rational(o.value(V[opt])[0]),
                "oracle": "ok" if not a.oracle_failures else ";".join(a.oracle_failures),
                "status": "pass" if a.ok else "fail", "violations": ";".join(bad),
            })  # fmt: skip
            for b in a.checks:
                out.tallies.append((_LEG_INDEX.sub("leg", b.name), b.declared, b.observed, b.ok))
            for name in ("optimum", "walk", "monotone", "bfs<=steps"):
                if name == "bfs<=steps" and rule == "two_phase":
                    continue
                out.tallies.append((f"oracle:{name}", None, None, name not in a.oracle_failures))
            if not a.ok:
                what = ", ".join(bad + [f"oracle:{f}" for f in a.oracle_failures])
                sig = f" sigma={report.sigma}" if sg is not None else ""
                out.failures.append(f"{ident} rule={rule} c=({fmt_vector(c)}) start=v{start}{sig}: {what}")
    if cfg.diameter != "none":
        mode = "exact" if cfg.diameter == "exact" and p.n <= 3 and len(V) <= 12 else "sampled"
        est = monotone_diameter_estimate(p, graph, mode, count=cfg.diameter_count, seed=cfg.objective_seed)
        out.tallies.append((f"diameter:{mode}:{spec.ident}", None, est.value, True))
        if mode == "exact":
            lines = [f"{' '.join('+' if x > 0 else '-' for x in sg)} c=({fmt_vector(c)}) worst={val}"
                     for sg, c, val in est.orientations]  # fmt: skip
            out.side_files[f"orientations_{spec.ident}.txt"] = "\n".join(lines) + "\n"
    return out


def _summarize(tallies) -> list[dict]:
    agg: dict[str, dict] = {}
    for name, declared, observed, ok in tallies:
        row = agg.setdefault(name, {"runs": 0, "failures": 0, "obs": None, "dec": None, "slack": None})
        row["runs"] += 1
        row["failures"] += 0 if ok else 1
        if observed is not None:
            row["obs"] = observed if row["obs"] is None else max(row["obs"], observed)
        if declared is not None:
            row["dec"] = declared if row["dec"] is None else max(row["dec"], declared)
            slack = declared - observed
            row["slack"] = slack if row["slack"] is None else min(row["slack"], slack)
    blank = lambda x: "" if x is None else x  # noqa: E731
    return [
        {"schema": SCHEMA_VERSION, "check": name, "runs": r["runs"], "failures": r["failures"],
         "max_observed": blank(r["obs"]), "max_declared": blank(r["dec"]), "min_slack": blank(r["slack"])}
        for name, r in sorted(agg.items())
    ]  # fmt: skip


def _table(summary: list[dict], extra: Sequence[str]) -> str:
    cols = ("check", "runs", "failures", "max_observed", "max_declared", "min_slack")
    cells = [cols] + [tuple(str(r[c]) for c in cols) for r in summary]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines + list(extra)) + "\n"


def verify(cfg: RunConfig, outdir: Path) -> tuple[int, list[str]]:
    """Run every combination in ``cfg``; write ``results.csv``, ``summary.csv``, ``summary.txt``."""
    if cfg.jobs > 1 and len(cfg.corpus) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(run_instance, [cfg] * len(cfg.corpus), cfg.corpus))
    else:
        results = [run_instance(cfg, s) for s in cfg.corpus]
    rows = [r for res in results for r in res.rows]
    tallies = [t for res in results for t in res.tallies]
    failures = [f for res in results for f in res.failures]
    lines = []
    for n, k in cfg.lemma8:
        chk = verify_lex_order(n, k)
        lines.append(chk.summary())
        tallies.append((f"lemma8:n{n}k{k}", None, None, chk.ok))
        if not chk.ok:
            failures.append(f"lemma8 n={n} k={k}: {chk.counterexample}")
    summary = _summarize(tallies)
    outdir.mkdir(parents=True, exist_ok=True)
    formats.write_text(outdir / "results.csv", formats.csv_text(RESULT_COLUMNS, rows))
    formats.write_text(outdir / "summary.csv", formats.csv_text(SUMMARY_COLUMNS, summary))
    status = [f"instances: {len(cfg.corpus)}", f"solves: {len(rows)}", f"failures: {len(failures)}"]
    formats.write_text(outdir / "summary.txt", _table(summary, lines + status))
    for res in results:
        for name, text in res.side_files.items():
            formats.write_text(outdir / name, text)
    return (EXIT_BOUND if failures else EXIT_OK), lines + status + failures


# --- argument handling ------------------------------------------------------------


def _polytope_arg(args) -> tuple[Polytope, str]:
    if getattr(args, "spec", None):
        spec = GenSpec.parse(args.spec)
        return generate(spec), spec.to_string()
    if not args.polytope:
        raise UsageError("give a polytope file or --spec")
    return formats.read_polytope(args.polytope), Path(args.polytope).stem


def _objective_arg(args, n: int) -> Objective:
    if args.objective and args.c:
        raise UsageError("use either --objective or --c")
    if args.objective:
        o = formats.load_objective(Path(args.objective).read_text(encoding="utf-8"))
    elif args.c:
        o = Objective(formats.parse_vector(args.c))
    else:
        raise UsageError("an objective is required (--objective FILE or --c 'c1 c2 ...')")
    if o.n != n:
        raise UsageError(f"objective has length {o.n}, polytope lives in dimension {n}")
    return o


def _start_arg(p: Polytope, text: str | None) -> int | None:
    if text is None:
        return None
    return p.index_of(formats.parse_vector(text, p.n))


def cmd_gen(args) -> int:
    if args.manifest:
        specs = apply_seed_override(formats.load_manifest(Path(args.manifest).read_text(encoding="utf-8")))
    elif args.spec:
        specs = [GenSpec.parse(args.spec)]
    elif args.family:
        specs = [GenSpec(args.family, args.n, args.k, args.points, args.seed, args.variant)]
    else:
        raise UsageError("give --family, --spec or --manifest")
    out = Path(args.output)
    for spec in specs:
        h, v = formats.write_polytope(generate(spec), out, spec.ident)
        print(f"{spec.to_string()} -> {h.name} {v.name}")
    return EXIT_OK


def cmd_solve(args) -> int:
    p, ident = _polytope_arg(args)
    why = incompatibility(args.rule, p)
    if why:
        raise UsageError(why)
    graph = build_edge_graph(p)
    raw = _objective_arg(args, p.n)
    o = generic(raw, p.vertices)
    sigma = formats.load_sigma(args.sigma) if args.sigma else None
    start = _start_arg(p, args.start)
    if args.rule == "sigma_max":
        sigma = sigma or SignedPermutation.identity(p.n)
        if sigma.n != p.n:
            raise UsageError("signed permutation has the wrong length")
        if start is None:
            start = sigma_flag(p, sigma).vertex
    elif start is None:
        start = 0
    report = run_rule(args.rule, p, graph, o, start, sigma)
    dist = OrientationDigraph.build(graph, p.vertices, o).distances_to_sink()
    a = audit(args.rule, p, graph, o, report, dist)
    head = _headline(args.rule, a.checks)
    metrics = matrix_metrics(p.hrep, delta_max_n=0)
    s = uniform_support(p) if is_half_integral(p) else None
    bad = [b.name for b in a.checks if not b.ok]
    row = {
        "schema": SCHEMA_VERSION, "instance": ident, "rule": args.rule, "objective": fmt_vector(raw.primary),
        "start": start, "sigma": "" if report.sigma is None else str(report.sigma), "dim": p.dim, "n": p.n,
        "k": "" if p.k is None else p.k, "norm_a": metrics.norm_inf, "m": level_profile(p).level - 1,
        "s": "" if s is None else s, "bound": head.name, "declared": head.declared, "observed": head.observed,
        "optimum": fmt_rational(o.value(p.vertices[report.optimum])[0]),
        "oracle": "ok" if not a.oracle_failures else ";".join(a.oracle_failures),
        "status": "pass" if a.ok else "fail", "violations": ";".join(bad),
    }  # fmt: skip
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    formats.append_csv(out / "results.csv", RESULT_COLUMNS, row)
    trace_text = formats.dump_trace(p, report.trace, f"# {ident} c=({fmt_vector(raw.primary)})")
    with open(out / "traces.txt", "a", encoding="utf-8", newline="\n") as fh:
        fh.write(trace_text)
    sys.stdout.write(trace_text)
    for b in a.checks:
        print(f"{b.name}: {b.observed} <= {b.declared} {'ok' if b.ok else 'VIOLATED'}")
    if not a.ok:
        print("failed: " + ", ".join(bad + [f"oracle:{f}" for f in a.oracle_failures]), file=sys.stderr)
        return EXIT_BOUND
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise UsageError(f"config {path} does not exist")
        cfg = RunConfig.from_text(path.read_text(encoding="utf-8"), path.parent)
    else:
        cfg = RunConfig.from_text(default_config_text(), Path("."))
    if args.jobs:
        cfg.jobs = args.jobs
    code, lines = verify(cfg, Path(args.output))
    for ln in lines:
        print(ln)
    return code


def cmd_oracle(args) -> int:
    if args.check == "lemma8":
        if args.n is None or args.k is None:
            raise UsageError("lemma8 needs --n and --k")
        chk = verify_lex_order(args.n, args.k, args.alpha)
        print(chk.summary())
        below = args.alpha is not None and args.alpha < 2 * args.k + 1
        if below:
            print(f"alpha={args.alpha} is below 2k+1; a mismatch here is expected, not a failure")
        return EXIT_OK if chk.ok or below else EXIT_BOUND
    p, ident = _polytope_arg(args)
    graph = build_edge_graph(p)
    if args.check == "diameter":
        est = monotone_diameter_estimate(p, graph, args.mode, count=args.count, seed=args.seed)
        print(f"monotone_diameter ({args.mode}): {est.value}")
        if est.objective is not None:
            print(f"witness c=({fmt_vector(est.objective.primary)}) from v{est.vertex} {fmt_vector(p.vertices[est.vertex])}")
        if args.mode == "exact" and args.output:
            out = Path(args.output)
            out.mkdir(parents=True, exist_ok=True)
            lines = [f"{' '.join('+' if x > 0 else '-' for x in sg)} c=({fmt_vector(c)}) worst={val}"
                     for sg, c, val in est.orientations]  # fmt: skip
            formats.write_text(out / f"orientations_{ident}.txt", "\n".join(lines) + "\n")
        return EXIT_OK
    o = generic(_objective_arg(args, p.n), p.vertices)
    opt = brute_force_optimum(p.vertices, o)
    if args.check == "optimum":
        print(f"optimum v{opt} {fmt_vector(p.vertices[opt])} value {fmt_rational(o.value(p.vertices[opt])[0])}")
        return EXIT_OK
    start = _start_arg(p, args.start)
    if start is None:
        raise UsageError("distance needs --start")
    dist = OrientationDigraph.build(graph, p.vertices, o).distances_to_sink()
    print(f"shortest monotone distance from v{start} to v{opt}: {dist[start]}")
    return EXIT_OK


def cmd_metrics(args) -> int:
    p, ident = _polytope_arg(args)
    m = matrix_metrics(p.hrep)
    prof = level_profile(p)
    k = p.k
    print(f"instance {ident}")
    print(f"n {p.n}\ndim {p.dim}\nvertices {len(p.vertices)}\nfacets {len(p.hrep)}")
    print(f"k {'' if k is None else k}\nnorm_inf {m.norm_inf}\nmax_support {m.max_support}")
    print(f"delta {'skipped' if m.delta_skipped else m.delta}")
    print(f"level {prof.level}\nprofile {' '.join(map(str, prof.per_row))}")
    if k is not None:
        bound = m.max_support * k * m.norm_inf + 1
        print(f"sparse_level_bound {bound} {'ok' if prof.level <= bound else 'VIOLATED'}")
        if prof.level > bound:
            return EXIT_BOUND
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="latshadow", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write H- and V-representation files")
    g.add_argument("--family")
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--points", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--variant", default="")
    g.add_argument("--spec", help="one-line key=value generator spec")
    g.add_argument("--manifest", help="file with one spec per line")
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen)

    def poly(q):
        q.add_argument("polytope", nargs="?", help="H-representation file")
        q.add_argument("--spec", help="generate the polytope from a spec instead")

    s = sub.add_parser("solve", help="run one pivot rule and audit it")
    poly(s)
    s.add_argument("--rule", required=True, choices=RULES)
    s.add_argument("--objective", help="objective file")
    s.add_argument("--c", help="objective vector, e.g. '1 0'")
    s.add_argument("--start", help="start vertex coordinates, e.g. '0 1/2'")
    s.add_argument("--sigma", help="signed permutation for sigma_max, e.g. '2 -1'")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="batch run from a key=value config")
    v.add_argument("config", nargs="?", help="config file (default: shipped desk config)")
    v.add_argument("-o", "--output", required=True)
    v.add_argument("--jobs", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="brute-force checks")
    o.add_argument("check", choices=("optimum", "distance", "diameter", "lemma8"))
    poly(o)
    o.add_argument("--objective")
    o.add_argument("--c")
    o.add_argument("--start")
    o.add_argument("--mode", choices=("sampled", "exact"), default="sampled")
    o.add_argument("--count", type=int, default=200)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--n", type=int)
    o.add_argument("--k", type=int)
    o.add_argument("--alpha", type=int)
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_oracle)

    m = sub.add_parser("metrics", help="matrix and level metrics")
    poly(m)
    m.set_defaults(func=cmd_metrics)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, GeometryError, PreconditionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
