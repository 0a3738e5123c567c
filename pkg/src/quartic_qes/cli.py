"""Command-line front end.

Usage:
    quartic-qes solve --n 1 --parity even --beta1 -0.7 --beta3 0.1
    quartic-qes solve --n 2 --parity both --beta1 0.4 --simultaneous
    quartic-qes oracle --n 1 --parity even --beta1 -0.7 --beta3 0.1
    quartic-qes table1
    quartic-qes --out figs figure-data --figure 4
    quartic-qes scan --n 1 --parity even --beta1-range 0.3 1.0 8 --beta3-range 0.1 0.1 1

Exit codes: 0 ok, 1 usage, 2 no solution, 3 oracle not converged,
4 table mismatch.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

import click
import numpy as np
from scipy.integrate import simpson

from .oracle import AmbiguousMatch, NoMatch, OracleConfig, lowest_eigenvalues, rank_of_energy
from .potential import PotentialParams, eval_potential
from .group import BetaVector
from .qes import (
    DegenerateFamilyError,
    NoRealSolution,
    NoZeroEnergySolution,
    Parity,
    QESProblem,
    QESSolution,
    czero_solutions,
    scaled_energy_check,
    simultaneous_n2_beta3,
    solve_qes,
)
from .wavefunction import WavefunctionSpec, count_nodes, eval_psi, relative_residual

__all__ = ["cli", "main", "run", "RunConfig", "EXIT_OK", "EXIT_USAGE", "EXIT_NO_SOLUTION",
           "EXIT_NOT_CONVERGED", "EXIT_TABLE_MISMATCH", "TABLE1"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_SOLUTION = 2
EXIT_NOT_CONVERGED = 3
EXIT_TABLE_MISMATCH = 4

CHECK_TOL = 1e-9

S7, S51, S15, S21 = math.sqrt(7), math.sqrt(51), math.sqrt(15), math.sqrt(21)

# beta2 / beta1**2 on the c = 0, E = 0 surface, keyed by (N, parity)
TABLE1: dict[tuple[int, str], list[tuple[str, float]]] = {
    (1, "even"): [("2", 2.0)],
    (1, "odd"): [],
    (3, "even"): [("1/2", 0.5)],
    (3, "odd"): [("2", 2.0)],
    (4, "even"): [("3-sqrt(7)", 3 - S7), ("3+sqrt(7)", 3 + S7)],
    (4, "odd"): [("1", 1.0)],
    (6, "even"): [("(2/35)(11-sqrt(51))", 2 / 35 * (11 - S51)), ("(2/35)(11+sqrt(51))", 2 / 35 * (11 + S51))],
    (6, "odd"): [("(2/5)(5-sqrt(15))", 2 / 5 * (5 - S15)), ("(2/5)(5+sqrt(15))", 2 / 5 * (5 + S15))],
    (7, "even"): [],
    (7, "odd"): [("(7-sqrt(21))/7", (7 - S21) / 7), ("(7+sqrt(21))/7", (7 + S21) / 7)],
}
TRIVIAL_ONLY = (9, 10)

SQ2 = math.sqrt(2.0)
FIGURES: dict[int, list[dict[str, Any]]] = {
    1: [
        {"panel": "left", "N": 0, "parity": "even", "beta": (0.0, 0.3, 0.6)},
        {"panel": "right", "N": 0, "parity": "even", "beta": (0.0, -1.5, 1.0)},
    ],
    2: [
        {"panel": "left", "N": 1, "parity": "even", "beta1": 0.7, "beta3": 0.1},
        {"panel": "right", "N": 1, "parity": "even", "beta1": -0.7, "beta3": 0.1},
    ],
    3: [
        {"panel": "left", "N": 1, "parity": "odd", "beta": (0.0, 0.3, 0.6)},
        {"panel": "right", "N": 1, "parity": "odd", "beta": (0.0, -1.5, 1.0)},
    ],
    4: [
        {"panel": "left", "N": 2, "parity": "even", "beta1": 0.4, "beta3": 4 / 7 * (2 + 3 * SQ2) * 0.4**3, "shared": True},
        {"panel": "right", "N": 2, "parity": "odd", "beta1": 0.4, "beta3": 4 / 7 * (2 + 3 * SQ2) * 0.4**3, "shared": True},
    ],
    5: [{"panel": f"N{n}", "N": n, "parity": "even", "czero": 0.5} for n in (1, 3, 4, 6)],
}


@dataclass
class RunConfig:
    """Everything that determines a run's output; serialized into ``params``."""

    subcommand: str
    params: dict[str, Any]
    fmt: str = "json"
    out: str | None = None
    seed: int = 0

    def as_params(self) -> dict[str, Any]:
        return dict(_clean(self.params), seed=self.seed)


# --------------------------------------------------------------------------
# formatting
# --------------------------------------------------------------------------


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if isinstance(v, (list, tuple, np.ndarray)):
        return " ".join(_fmt(x) for x in v)
    return str(v)


def _clean(v: Any) -> Any:
    """JSON-safe copy: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(v, dict):
        return {str(k): _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_clean(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        f = float(v)
        return f if math.isfinite(f) else str(f)
    return v


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for row in rows:
        wr.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def json_text(command: str, cfg: RunConfig, solutions: list[dict], checks: dict) -> str:
    doc = {"command": command, "params": cfg.as_params(), "solutions": _clean(solutions), "checks": _clean(checks)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit(cfg: RunConfig, solutions: list[dict], checks: dict, header: Sequence[str], rows: list[Sequence[Any]],
         stem: str | None = None) -> None:
    text = json_text(cfg.subcommand, cfg, solutions, checks) if cfg.fmt == "json" else csv_text(header, rows)
    if cfg.out is None:
        click.echo(text, nl=False)
        return
    path = Path(cfg.out) / f"{stem or cfg.subcommand}.{cfg.fmt}"
    path.write_text(text)
    click.echo(str(path), err=True)


def _warn(msg: str) -> None:
    click.echo(f"warning: {msg}", err=True)


# --------------------------------------------------------------------------
# config file
# --------------------------------------------------------------------------


def load_config(path: str) -> dict[str, dict[str, str]]:
    """Key/value file; top-level keys apply everywhere, ``[solve]`` style sections to one command."""
    text = Path(path).read_text()
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.MissingSectionHeaderError:
        cp.read_string("[DEFAULT]\n" + text)
    out: dict[str, dict[str, str]] = {"": dict(cp.defaults())}
    for sec in cp.sections():
        out[sec] = {k: v for k, v in cp.items(sec)}
    return out


def _norm_key(k: str) -> str:
    return k.strip().lstrip("-").replace("-", "_")


def _default_map(cmd: click.Command, values: dict[str, str]) -> dict[str, Any]:
    names: dict[str, click.Option] = {}
    for p in cmd.params:
        if isinstance(p, click.Option):
            for opt in p.opts:
                names[_norm_key(opt)] = p
    dm: dict[str, Any] = {}
    for k, v in values.items():
        p = names.get(_norm_key(k))
        if p is None:
            continue
        if p.nargs > 1 or p.multiple:
            parts = v.replace(",", " ").split()
            dm[p.name] = [parts] if (p.multiple and p.nargs > 1) else parts
        else:
            dm[p.name] = v
    return dm


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

GLOBAL_KEYS = ("format", "out", "seed")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="key=value file mirroring the flags")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="json", show_default=True)
@click.option("--out", type=click.Path(file_okay=False), default=None, help="output directory (default: stdout)")
@click.option("--seed", type=int, default=0, show_default=True, help="recorded in params for reproducibility")
@click.pass_context
def cli(ctx: click.Context, config_path, fmt, out, seed):
    """Quasi-exact solutions of the quartic anharmonic oscillator."""
    conf: dict[str, dict[str, str]] = {"": {}}
    if config_path:
        conf = load_config(config_path)
        top = {_norm_key(k): v for k, v in conf[""].items()}
        src = ctx.get_parameter_source
        if "format" in top and src("fmt") == click.core.ParameterSource.DEFAULT:
            fmt = top["format"].strip()
            if fmt not in ("csv", "json"):
                raise click.BadParameter(f"format must be csv or json, got {fmt!r}", param_hint="--format")
        if "out" in top and src("out") == click.core.ParameterSource.DEFAULT:
            out = top["out"].strip()
        if "seed" in top and src("seed") == click.core.ParameterSource.DEFAULT:
            seed = int(top["seed"])
        dm = {}
        for name, cmd in cli.commands.items():
            merged = {k: v for k, v in conf[""].items() if _norm_key(k) not in GLOBAL_KEYS}
            merged.update(conf.get(name, {}))
            dm[name] = _default_map(cmd, merged)
        ctx.default_map = dm
    if out is not None:
        try:
            Path(out).mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise click.BadParameter(f"cannot create {out}: {exc}", param_hint="--out")
        if not os.access(out, os.W_OK):
            raise click.BadParameter(f"{out} is not writable", param_hint="--out")
    ctx.obj = {"fmt": fmt, "out": out, "seed": seed}


def _cfg(ctx: click.Context, name: str, params: dict[str, Any]) -> RunConfig:
    o = ctx.obj
    return RunConfig(name, params, o["fmt"], o["out"], o["seed"])


def _check_x(x_range: float) -> np.ndarray:
    x = np.linspace(-x_range, x_range, 4001)
    return x[x != 0.0]


def _solution_report(s: QESSolution, x_range: float) -> dict[str, Any]:
    w = WavefunctionSpec(s)
    d = s.to_dict()
    d.update(
        matrix_residual=s.matrix_residual(),
        continuity_residual=s.continuity_relative(),
        schrodinger_residual=relative_residual(w, _check_x(x_range)),
        nodes=count_nodes(w, x_range),
    )
    return d


SOLVE_HEADER = ["N", "parity", "alpha", "E", "beta1", "beta2", "beta3", "casimir", "coeffs",
                "matrix_residual", "continuity_residual", "schrodinger_residual", "nodes"]


def _solve_rows(reports: list[dict]) -> list[list[Any]]:
    return [[r[k] for k in SOLVE_HEADER] for r in reports]


def _summary(reports: list[dict]) -> dict[str, Any]:
    keys = ("matrix_residual", "continuity_residual", "schrodinger_residual")
    worst = {f"max_{k}": max((r[k] for r in reports), default=0.0) for k in keys}
    return dict(worst, count=len(reports), tolerance=CHECK_TOL, ok=bool(reports) and all(v <= CHECK_TOL for v in worst.values()))


@cli.command()
@click.option("--n", "N", type=click.IntRange(min=0), required=True, help="polynomial degree N (alpha = -(N+1))")
@click.option("--parity", type=click.Choice(["even", "odd", "both"]), default="even", show_default=True)
@click.option("--beta1", type=float, required=True)
@click.option("--beta3", type=float, default=None, help="required unless --simultaneous")
@click.option("--beta2", type=float, default=None, help="fix beta2 and only test the energies there")
@click.option("--simultaneous", is_flag=True, help="N=2: beta3 where even and odd share beta2")
@click.option("--bracket", type=float, nargs=2, default=None, help="beta2 scan bracket LO HI")
@click.option("--samples", type=click.IntRange(min=10), default=2000, show_default=True)
@click.option("--x-range", type=click.FloatRange(min=1.0), default=20.0, show_default=True)
@click.pass_context
def solve(ctx, N, parity, beta1, beta3, beta2, simultaneous, bracket, samples, x_range):
    """All (E, beta2) solutions with their invariant checks."""
    if simultaneous:
        if N != 2 or parity != "both":
            raise click.UsageError("--simultaneous needs --n 2 --parity both")
        if beta1 == 0:
            raise click.BadParameter("beta1 must be nonzero", param_hint="--beta1")
        beta3 = simultaneous_n2_beta3(beta1)
    if beta3 is None:
        raise click.UsageError("--beta3 is required")
    if not beta3 > 0:
        raise click.BadParameter("beta3 must be positive", param_hint="--beta3")
    cfg = _cfg(ctx, "solve", dict(N=N, parity=parity, beta1=beta1, beta2=beta2, beta3=beta3,
                                   simultaneous=simultaneous, bracket=bracket, samples=samples, x_range=x_range))
    parities = ["even", "odd"] if parity == "both" else [parity]
    found: dict[str, list[QESSolution]] = {}
    for par in parities:
        try:
            found[par] = list(solve_qes(QESProblem(N, Parity(par), beta1, beta3, beta2),
                                        bracket=tuple(bracket) if bracket else None, samples=samples))
        except DegenerateFamilyError as exc:
            raise click.UsageError(f"{exc}; use --beta2")
        except ValueError as exc:
            raise click.UsageError(str(exc))
    if simultaneous:
        ev, od = found["even"], found["odd"]
        same = lambda a, b: abs(a.beta2 - b.beta2) <= CHECK_TOL * max(1.0, abs(a.beta2))  # noqa: E731
        found = {"even": [e for e in ev if any(same(e, o) for o in od)],
                 "odd": [o for o in od if any(same(o, e) for e in ev)]}
    sols = [s for par in parities for s in found[par]]
    reports = [_solution_report(s, x_range) for s in sols]
    checks = _summary(reports)
    if simultaneous and reports:
        checks["shared_beta2"] = reports[0]["beta2"]
    emit(cfg, reports, checks, SOLVE_HEADER, _solve_rows(reports))
    for par in parities:
        if not found[par]:
            click.echo(f"no {par} N={N} solution", err=True)
    return EXIT_OK if sols else EXIT_NO_SOLUTION


ORACLE_HEADER = ["kind", "index", "parity", "energy", "precision", "rank", "deviation", "nodes", "converged"]


@cli.command()
@click.option("--alpha", type=float, default=None)
@click.option("--beta1", type=float, required=True)
@click.option("--beta2", type=float, default=None, help="omit together with --n to take beta2 from the solver")
@click.option("--beta3", type=float, required=True)
@click.option("--n", "N", type=click.IntRange(min=0), default=None, help="sets alpha = -(N+1)")
@click.option("--parity", type=click.Choice(["even", "odd"]), default="even", show_default=True)
@click.option("--solution-index", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--grid", type=int, default=2001, show_default=True, help="points on the coarsest level (>= 200)")
@click.option("--levels", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--eigen-count", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--mode", type=click.Choice(["arctan", "box"]), default="arctan", show_default=True)
@click.option("--convergence-tol", type=click.FloatRange(min=0, min_open=True), default=1e-3, show_default=True)
@click.option("--match-tol", type=click.FloatRange(min=0, min_open=True), default=1e-5, show_default=True)
@click.pass_context
def oracle(ctx, alpha, beta1, beta2, beta3, N, parity, solution_index, grid, levels, eigen_count, mode,
           convergence_tol, match_tol):
    """Finite-difference spectrum, compared with any closed-form solutions."""
    if not beta3 > 0:
        raise click.BadParameter("beta3 must be positive", param_hint="--beta3")
    if N is not None:
        if alpha is not None and alpha != -(N + 1):
            raise click.UsageError(f"--alpha {alpha} contradicts --n {N}")
        alpha = float(-(N + 1))
        if beta2 is None:
            sols = solve_qes(QESProblem(N, Parity(parity), beta1, beta3))
            if solution_index >= len(sols):
                click.echo(f"no {parity} N={N} solution with index {solution_index}", err=True)
                return EXIT_NO_SOLUTION
            beta2 = sols[solution_index].beta2
    if alpha is None or beta2 is None:
        raise click.UsageError("give --alpha and --beta2, or --n")
    try:
        ocfg = OracleConfig(grid_points=grid, eigen_count=eigen_count, refinement_levels=levels, mode=mode,
                            convergence_tol=convergence_tol)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--grid")
    cfg = _cfg(ctx, "oracle", dict(alpha=alpha, beta1=beta1, beta2=beta2, beta3=beta3, N=N, parity=parity,
                                    grid=grid, levels=levels, eigen_count=eigen_count, mode=mode,
                                    convergence_tol=convergence_tol, match_tol=match_tol))
    p = PotentialParams(alpha, BetaVector(beta1, beta2, beta3))
    res = lowest_eigenvalues(p, ocfg)

    analytic: list[dict] = []
    n_float = -alpha - 1.0
    if n_float >= 0 and n_float == int(n_float):
        n_int = int(n_float)
        for par in Parity:
            try:
                for s in solve_qes(QESProblem(n_int, par, beta1, beta3, beta2)):
                    entry = s.to_dict()
                    try:
                        k = rank_of_energy(res, s.E, match_tol)
                        entry.update(rank=k, deviation=abs(float(res.energies[k]) - s.E))
                    except (NoMatch, AmbiguousMatch) as exc:
                        entry.update(rank=None, deviation=None, note=str(exc))
                    entry["nodes"] = count_nodes(WavefunctionSpec(s))
                    analytic.append(entry)
            except ValueError:
                continue

    levels_out = [
        {"index": k, "energy": float(e), "precision": float(res.precision[k])}
        for k, e in enumerate(res.energies)
    ]
    all_matched = all(a["rank"] is not None for a in analytic)
    checks = {"oracle": res.to_dict(), "converged": res.converged, "levels": levels_out,
              "analytic_matched": all_matched, "ok": bool(res.converged and all_matched)}
    rows: list[list[Any]] = [["level", k, None, e, res.precision[k], k, None, None, res.converged]
                             for k, e in enumerate(res.energies)]
    rows += [["analytic", i, a["parity"], a["E"], None, a["rank"], a["deviation"], a["nodes"], None]
             for i, a in enumerate(analytic)]
    emit(cfg, analytic, checks, ORACLE_HEADER, rows)
    if not res.converged:
        _warn(f"oracle not converged: last level change {np.max(res.level_changes[-1]) if res.level_changes.size else 'n/a'} "
              f"> {convergence_tol}")
        return EXIT_NOT_CONVERGED
    return EXIT_OK


TABLE_HEADER = ["N", "parity", "label", "expected", "computed", "deviation", "status"]


@cli.command()
@click.option("--beta1", type=click.FloatRange(min=0, min_open=True), default=1.0, show_default=True)
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=1e-8, show_default=True)
@click.option("--scan-max", type=click.FloatRange(min=0, min_open=True), default=20.0, show_default=True,
              help="upper end of the beta2/beta1**2 window searched for N=9,10")
@click.pass_context
def table1(ctx, beta1, tol, scan_max):
    """E=0 solutions on the vanishing-Casimir surface against the tabulated ratios."""
    cfg = _cfg(ctx, "table1", dict(beta1=beta1, tol=tol, scan_max=scan_max))
    entries: list[dict] = []
    worst = 0.0
    mismatch = False
    extras = []
    for (N, par), expected in TABLE1.items():
        got = [s.beta2 / beta1**2 for s in czero_solutions(N, beta1, par)]
        used = set()
        for label, val in expected:
            if got:
                j = min(range(len(got)), key=lambda i: abs(got[i] - val))
                dev = abs(got[j] - val)
                used.add(j)
            else:
                j, dev = None, math.inf
            worst = max(worst, dev)
            ok = dev <= tol
            mismatch |= not ok
            entries.append(dict(N=N, parity=par, label=label, expected=val,
                                computed=None if j is None else got[j], deviation=dev,
                                status="match" if ok else "mismatch"))
        for i, r in enumerate(got):
            if i not in used:
                extras.append((N, par, r))
                entries.append(dict(N=N, parity=par, label="", expected=None, computed=r,
                                    deviation=None, status="extra"))
    trivial = []
    for N in TRIVIAL_ONLY:
        for par in ("even", "odd"):
            got = [s.beta2 / beta1**2 for s in czero_solutions(N, beta1, par)]
            got = [r for r in got if 0 < r <= scan_max]
            trivial.append(dict(N=N, parity=par, roots=got))
            for r in got:
                entries.append(dict(N=N, parity=par, label="", expected=None, computed=r,
                                    deviation=None, status="nontrivial"))
    trivial_ok = all(not t["roots"] for t in trivial)
    checks = {
        "max_deviation": worst,
        "tolerance": tol,
        "ratios_ok": not mismatch,
        "extra_roots": [dict(N=n, parity=p, ratio=r) for n, p, r in extras],
        "trivial_only_9_10": trivial_ok,
        "trivial_scan": trivial,
        "ok": bool(not mismatch and not extras and trivial_ok),
    }
    rows = [[e[k] for k in TABLE_HEADER] for e in entries]
    emit(cfg, entries, checks, TABLE_HEADER, rows)
    if extras or not trivial_ok:
        _warn("real nonzero roots beyond the tabulated entries (see extra/nontrivial rows)")
    return EXIT_TABLE_MISMATCH if mismatch else EXIT_OK


def _figure_solution(spec: dict[str, Any]) -> QESSolution:
    N, par = spec["N"], Parity(spec["parity"])
    if "czero" in spec:
        sols = czero_solutions(N, spec["czero"], par)
        return min(sols, key=lambda s: s.beta2)  # minus branch
    if "beta" in spec:
        b1, b2, b3 = spec["beta"]
        sols = solve_qes(QESProblem(N, par, b1, b3, b2))
    else:
        sols = solve_qes(QESProblem(N, par, spec["beta1"], spec["beta3"]))
        if spec.get("shared"):
            other = solve_qes(QESProblem(N, Parity("odd" if par is Parity.EVEN else "even"), spec["beta1"], spec["beta3"]))
            sols = [s for s in sols if any(abs(s.beta2 - o.beta2) <= CHECK_TOL * max(1.0, abs(s.beta2)) for o in other)]
    if len(sols) != 1:
        raise NoRealSolution(f"figure panel {spec['panel']}: expected one solution, found {len(sols)}")
    return sols[0]


@cli.command("figure-data")
@click.option("--figure", type=click.IntRange(1, 5), required=True, help="figure id 1..5")
@click.option("--points", type=click.IntRange(min=101), default=2001, show_default=True, help="y-grid points (odd)")
@click.pass_context
def figure_data(ctx, figure, points):
    """CSV of V(tan y) and unit-normalized psi(tan y) on the compactified grid."""
    if points % 2 == 0:
        raise click.BadParameter("points must be odd (Simpson grid)", param_hint="--points")
    cfg = _cfg(ctx, "figure-data", dict(figure=figure, points=points))
    outdir = Path(cfg.out or ".")
    y_full = np.linspace(-np.pi / 2, np.pi / 2, points)
    y = y_full[1:-1]
    x = np.tan(y)
    panels = []
    columns: dict[str, dict[str, np.ndarray]] = {}
    for spec in FIGURES[figure]:
        s = _figure_solution(spec)
        w = WavefunctionSpec(s)
        psi = np.asarray(eval_psi(w, x))
        sq = np.zeros_like(y_full)
        sq[1:-1] = psi * psi
        kappa = 1.0 / math.sqrt(simpson(sq, x=y_full))
        psi = kappa * psi
        sq[1:-1] = psi * psi
        v = eval_potential(PotentialParams(s.alpha, s.beta), x)
        panels.append(dict(s.to_dict(), panel=spec["panel"], kappa=kappa, norm=float(simpson(sq, x=y_full)),
                           nodes=count_nodes(w)))
        columns[spec["panel"]] = {"V": v, "psi": psi}
    files = []
    if figure == 5:
        header = ["y"] + [f"{c}_{p}" for p in columns for c in ("V", "psi")]
        data = [y] + [columns[p][c] for p in columns for c in ("V", "psi")]
        targets = [("figure5.csv", header, data)]
    else:
        targets = [(f"figure{figure}_{p}.csv", ["y", "V", "psi"], [y, columns[p]["V"], columns[p]["psi"]])
                   for p in columns]
    for name, header, data in targets:
        path = outdir / name
        path.write_text(csv_text(header, zip(*data)))
        files.append(name)
    worst = max(abs(p["norm"] - 1.0) for p in panels)
    checks = {"files": files, "max_norm_defect": worst, "ok": bool(worst <= 1e-12)}
    rows = [[p["panel"], p["N"], p["parity"], p["E"], p["beta1"], p["beta2"], p["beta3"], p["kappa"], p["nodes"]]
            for p in panels]
    emit(cfg, panels, checks, ["panel", "N", "parity", "E", "beta1", "beta2", "beta3", "kappa", "nodes"], rows,
         stem=f"figure{figure}_summary")
    return EXIT_OK


def _grid(lo: float, hi: float, n: int, name: str) -> np.ndarray:
    if n < 1 or hi < lo or (n == 1 and hi != lo):
        raise click.BadParameter(f"empty or inconsistent range ({lo}, {hi}, {n})", param_hint=name)
    return np.array([lo]) if n == 1 else np.linspace(lo, hi, n)


SCAN_HEADER = ["beta1", "beta3", "E", "beta2", "casimir", "scaling_defect", "status"]


@cli.command()
@click.option("--n", "N", type=click.IntRange(min=0), required=True)
@click.option("--parity", type=click.Choice(["even", "odd"]), default="even", show_default=True)
@click.option("--beta1-range", type=(float, float, int), required=True, help="LO HI COUNT")
@click.option("--beta3-range", type=(float, float, int), required=True, help="LO HI COUNT")
@click.option("--t", "ts", type=click.FloatRange(min=0, min_open=True), multiple=True, default=(0.5, 2.0, 3.0),
              show_default=True, help="scaling factors for the companion check")
@click.option("--samples", type=click.IntRange(min=10), default=2000, show_default=True)
@click.pass_context
def scan(ctx, N, parity, beta1_range, beta3_range, ts, samples):
    """Solutions over a (beta1, beta3) grid with the scaling-law defect."""
    b1s = _grid(*beta1_range, "--beta1-range")
    b3s = _grid(*beta3_range, "--beta3-range")
    if np.any(b3s <= 0):
        raise click.BadParameter("beta3 values must be positive", param_hint="--beta3-range")
    cfg = _cfg(ctx, "scan", dict(N=N, parity=parity, beta1_range=beta1_range, beta3_range=beta3_range,
                                  t=list(ts), samples=samples))
    entries: list[dict] = []
    for b1 in b1s:
        for b3 in b3s:
            base = dict(beta1=float(b1), beta3=float(b3))
            try:
                sols = solve_qes(QESProblem(N, Parity(parity), b1, b3), samples=samples)
            except (ValueError, NoZeroEnergySolution) as exc:
                entries.append(dict(base, E=None, beta2=None, casimir=None, scaling_defect=None, status=f"error: {exc}"))
                continue
            if not sols:
                entries.append(dict(base, E=None, beta2=None, casimir=None, scaling_defect=None, status="no_solution"))
                continue
            try:
                defect = max(scaled_energy_check(N, parity, b1, b3, t, samples=samples) for t in ts)
            except ValueError as exc:
                defect = math.inf
                _warn(f"scaling check failed at beta1={b1}, beta3={b3}: {exc}")
            for s in sols:
                entries.append(dict(base, E=s.E, beta2=s.beta2, casimir=s.casimir, scaling_defect=defect, status="ok"))
    n_ok = sum(e["status"] == "ok" for e in entries)
    worst = max((e["scaling_defect"] for e in entries if e["status"] == "ok"), default=math.nan)
    checks = {"rows": len(entries), "rows_ok": n_ok, "max_scaling_defect": worst,
              "ok": bool(n_ok > 0 and worst <= 1e-8)}
    rows = [[e[k] for k in SCAN_HEADER] for e in entries]
    emit(cfg, entries, checks, SCAN_HEADER, rows)
    return EXIT_OK if n_ok else EXIT_NO_SOLUTION


# --------------------------------------------------------------------------
# entry points
# --------------------------------------------------------------------------


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="quartic-qes", standalone_mode=False)
    except click.exceptions.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except NoRealSolution as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_NO_SOLUTION
    return int(rv or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
