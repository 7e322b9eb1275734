"""Command-line entry point.

One experiment per invocation: the subcommand names the experiment kind,
`--config` points at the JSON config, and the run writes its data files
plus a manifest into the output directory. Exit codes: 0 success, 2 config
error, 3 domain/numeric error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import reports
from .baire import (CellResult, CylinderCell, IntervalCell, LambdaQuery,
                    LambdaReport, criterion_check, escaper_probe,
                    replay_escaper)
from .birkhoff import DenseTail, trace
from .cocycles import (CocycleLogNorm, check_invertibility, log_norm_series,
                       lyapunov_gap)
from .config import (ExperimentConfig, build_cocycle, build_cover,
                     build_measure, build_observable, build_point,
                     build_sampler, build_schedule, build_system, parse_config,
                     render)
from .entropy import brin_katok_trace, weak_gibbs_check
from .errors import ConfigError, DomainError, ReportIOError
from .irregular import build_irregular_word
from .observables import Observable
from .cocycles import AdditiveFromObservable

# CLI subcommand name -> config experiment kind
SUBCOMMANDS = {
    "trace": "trace",
    "criterion": "criterion",
    "probe": "probe",
    "lyapunov": "lyapunov",
    "entropy": "entropy",
    "build-irregular": "irregular-build",
    "weak-gibbs": "weak-gibbs",
    "replay": "replay",
}


def _flags(cfg):
    return {"csv": cfg.emit_csv, "json": cfg.emit_json, "svg": cfg.emit_svg}


def _run_trace(cfg, out):
    system = build_system(cfg.section("system"))
    obs = build_observable(cfg.section("observable"))
    point = build_point(cfg.section("point"))
    params = cfg.section("params")
    tr = trace(system, obs, point, params["horizon"],
               DenseTail(params["tail_start"]))
    return reports.emit_series(
        out, "trace", ("n", "psi_n"), tr.checkpoints, tr.values, _flags(cfg),
        extra_json={
            "system": tr.system_id,
            "observable": tr.observable_id,
            "point": tr.point_descriptor,
            "horizon": tr.horizon,
            "tail_start": tr.tail_start,
        },
        xlabel="n", ylabel="psi_n",
    )


def _run_criterion(cfg, out):
    system = build_system(cfg.section("system"))
    obs = build_observable(cfg.section("observable"))
    sampler_a = build_sampler(system, cfg.section("sampler_a"), cfg.seed)
    sampler_b = build_sampler(system, cfg.section("sampler_b"), cfg.seed)
    params = cfg.section("params")
    verdict = criterion_check(
        system, obs, sampler_a, sampler_b, params["count"], params["horizon"],
        params["tail_start"],
    )
    files = []
    if cfg.emit_json:
        p = out / "criterion.json"
        reports.write_json(p, verdict)
        files.append(p)
    if cfg.emit_csv:
        p = out / "criterion.csv"
        rows = [("a", d, v) for d, v in verdict.samples_a]
        rows += [("b", d, v) for d, v in verdict.samples_b]
        reports.write_csv(p, ("group", "point", "tail_upper"), rows)
        files.append(p)
    print(f"verdict: {verdict.verdict} "
          f"(alpha_hat={reports.fmt(verdict.alpha_hat)}, "
          f"beta_hat={reports.fmt(verdict.beta_hat)}, "
          f"epsilon={reports.fmt(verdict.epsilon)})")
    return files


def _run_probe(cfg, out):
    system = build_system(cfg.section("system"))
    obs = build_observable(cfg.section("observable"))
    cover = build_cover(system, cfg.section("cover"))
    params = cfg.section("params")
    query = LambdaQuery(params["start"], params["epsilon"], params["horizon"])
    report = escaper_probe(system, obs, cover, query, params["budget"],
                           cfg.seed)
    files = []
    if cfg.emit_json:
        p = out / "probe.json"
        payload = reports.to_jsonable(report)
        # embed the construction specs so `replay` can rebuild the run
        payload["system_spec"] = cfg.section("system")
        payload["observable_spec"] = cfg.section("observable")
        reports.write_json(p, payload)
        files.append(p)
    if cfg.emit_csv:
        p = out / "probe.csv"
        reports.write_csv(
            p, ("cells", "budget", "escaper_fraction"),
            [(len(report.cells), report.budget, report.escaper_fraction)],
        )
        files.append(p)
    print(f"escaper fraction: {reports.fmt(report.escaper_fraction)} "
          f"over {len(report.cells)} cells")
    return files


def _run_lyapunov(cfg, out):
    system = build_system(cfg.section("system"))
    cocycle = build_cocycle(cfg.section("cocycle"))
    check_invertibility(cocycle, system)
    point = build_point(cfg.section("point"))
    params = cfg.section("params")
    horizon = params["horizon"]
    tail = params["tail_start"] or max(horizon // 2, 1)
    gap = lyapunov_gap(cocycle, system, point, tail, horizon)
    series = log_norm_series(cocycle, system, point, horizon)
    ns = np.arange(1, horizon + 1, dtype=np.int64)
    files = reports.emit_series(
        out, "lyapunov", ("n", "value"), ns, series / ns, _flags(cfg),
        extra_json=reports.to_jsonable(gap), xlabel="n",
        ylabel="(1/n) log ||A^n||",
    )
    if cfg.emit_json:
        p = out / "gap.json"
        reports.write_json(p, gap)
        files.append(p)
    print(f"lyapunov gap: {reports.fmt(gap.gap)} "
          f"[{reports.fmt(gap.lower)}, {reports.fmt(gap.upper)}]")
    return files


def _run_entropy(cfg, out):
    system = build_system(cfg.section("system"))
    measure = build_measure(cfg.section("measure"))
    point = build_point(cfg.section("point"))
    params = cfg.section("params")
    tr = brin_katok_trace(system, measure, point, params["n_max"])
    return reports.emit_series(
        out, "entropy", ("n", "value"), tr.checkpoints, tr.values, _flags(cfg),
        extra_json={"measure": tr.measure_id, "point": tr.point_descriptor},
        xlabel="n", ylabel="-(1/n) log mu(B_n)",
    )


def _run_irregular(cfg, out):
    system = build_system(cfg.section("system"))
    schedule = build_schedule(cfg.section("schedule"))
    word = build_irregular_word(system, schedule)
    files = []
    if cfg.emit_csv:
        p = out / "irregular.csv"
        reports.write_csv(
            p, ("n", "symbol"),
            ((i + 1, int(s)) for i, s in enumerate(word.symbols)),
        )
        files.append(p)
    if cfg.emit_json:
        p = out / "irregular.json"
        reports.write_json(p, {
            "alphabet": word.alphabet,
            "generator": word.generator,
            "meta": word.meta,
            "length": len(word.symbols),
        })
        files.append(p)
    meta = word.meta
    print(f"built {len(word.symbols)} symbols, "
          f"{meta['cycles_completed']} cycles, "
          f"switches at {list(meta['switches'])[:8]}...")
    return files


def _run_weak_gibbs(cfg, out):
    system = build_system(cfg.section("system"))
    measure = build_measure(cfg.section("measure"))
    potential = build_observable(cfg.section("potential"))
    points = [build_point(p) for p in cfg.section("points")]
    params = cfg.section("params")
    spec = AdditiveFromObservable(potential, system)
    report = weak_gibbs_check(
        system, measure, spec, params["pressure"], points, params["horizon"],
        params["envelope"],
    )
    files = []
    if cfg.emit_json:
        p = out / "weak_gibbs.json"
        reports.write_json(p, report)
        files.append(p)
    if cfg.emit_csv:
        p = out / "weak_gibbs.csv"
        reports.write_csv(
            p, ("max_rate", "envelope", "is_weak_gibbs"),
            [(report.max_rate, report.envelope, report.is_weak_gibbs)],
        )
        files.append(p)
    print(f"weak-Gibbs at H={report.horizon}: {report.is_weak_gibbs} "
          f"(max rate {reports.fmt(report.max_rate)})")
    return files


def _load_report(path):
    try:
        payload = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ReportIOError(f"cannot read report {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError([f"report {path} is not valid JSON: {exc}"])
    cells = []
    for c in payload["cells"]:
        cell_spec = c["cell"]
        if "word" in cell_spec:
            cell = CylinderCell(tuple(cell_spec["word"]))
            escaper = tuple(c["escaper"]) if c["escaper"] is not None else None
        else:
            cell = IntervalCell(cell_spec["lo"], cell_spec["hi"])
            escaper = c["escaper"]
        cells.append(CellResult(
            index=c["index"], cell=cell, status=c["status"],
            samples_used=c["samples_used"], escaper=escaper,
            oscillation=c["oscillation"],
        ))
    q = payload["query"]
    report = LambdaReport(
        cover_description=payload["cover_description"],
        query=LambdaQuery(q["start"], q["epsilon"], q["horizon"]),
        budget=payload["budget"],
        seed=payload["seed"],
        system_id=payload["system_id"],
        observable_id=payload["observable_id"],
        cells=tuple(cells),
        escaper_fraction=payload["escaper_fraction"],
    )
    return report, payload["system_spec"], payload["observable_spec"]


def _run_replay(cfg, out):
    report, system_spec, observable_spec = _load_report(cfg.section("report"))
    system = build_system(system_spec)
    obs = build_observable(observable_spec)
    cell = cfg.section("cell")
    member, osc = replay_escaper(system, obs, report, cell)
    files = []
    if cfg.emit_json:
        p = out / "replay.json"
        reports.write_json(p, {
            "cell": cell,
            "lambda_member": member,
            "oscillation": osc,
            "epsilon": report.query.epsilon,
        })
        files.append(p)
    print(f"cell {cell}: lambda_member={member}, "
          f"oscillation={reports.fmt(osc)}")
    if member:
        raise DomainError(
            f"replayed cell {cell} did not reproduce lambda_membership=false"
        )
    return files


RUNNERS = {
    "trace": _run_trace,
    "criterion": _run_criterion,
    "probe": _run_probe,
    "lyapunov": _run_lyapunov,
    "entropy": _run_entropy,
    "irregular-build": _run_irregular,
    "weak-gibbs": _run_weak_gibbs,
    "replay": _run_replay,
}


def run_experiment(cfg: ExperimentConfig, out_dir=None):
    """Dispatch one experiment and write its manifest; returns the manifest."""
    out = Path(out_dir if out_dir is not None else cfg.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ReportIOError(f"cannot create output directory {out}: {exc}")
    files = RUNNERS[cfg.kind](cfg, out)
    return reports.write_manifest(out, render(cfg), files)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ergolab",
        description="finite-horizon experiments on Birkhoff averages, "
        "Lyapunov exponents, and entropy estimators",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--out", default=None, help="output directory override")
        p.add_argument("--seed", type=int, default=None,
                       help="64-bit seed override")
        p.add_argument("--threads", type=int, default=None,
                       help="compute thread count")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.threads is not None:
            if args.threads < 1:
                raise ConfigError(["--threads: must be >= 1"])
            import numba

            numba.set_num_threads(args.threads)
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ReportIOError(f"cannot read config {args.config}: {exc}")
        cfg = parse_config(text)
        expected = SUBCOMMANDS[args.command]
        if cfg.kind != expected:
            raise ConfigError(
                [f"config kind {cfg.kind!r} does not match "
                 f"subcommand {args.command!r}"]
            )
        if args.seed is not None:
            if not 0 <= args.seed < 2 ** 64:
                raise ConfigError(["--seed: expected an unsigned 64-bit integer"])
            tree = json.loads(text)
            tree["seed"] = args.seed
            cfg = parse_config(json.dumps(tree))
        run_experiment(cfg, args.out)
        return 0
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return 2
    except ReportIOError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
