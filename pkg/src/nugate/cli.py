"""Command-line experiment harness.

Every command writes flat files (CSV or JSON) into an output directory,
with deterministic content for a fixed seed: Monte Carlo work is split
into per-grid-point child streams so worker count never changes results,
and rows are emitted in sorted-key order.

CSV files are UTF-8, comma-separated, '.' decimal, floats at 17
significant digits. JSON reports validate against the schema shipped in
``nugate/schemas/report.schema.json``.
"""
from __future__ import annotations

import csv
import importlib.resources
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click
import jsonschema
import numpy as np

from .embedding import (
    DiagonalSigma,
    default_max_shots,
    load_sigma,
    rus_first_flip_ensemble,
)
from .grover import failure_prob, method1_run, method2_run, optimal_t_roots
from .ising import IsingChain, bond_sigma, ground_subspace, ite_rus_protocol, ite_success_ensemble, random_chain
from .rng import Rng
from .statevector import uniform_superposition
from .tradeoff import (
    TradeoffQuery,
    UnboundedShots,
    cumulative_success,
    limiting_success,
    multi_gate_cumulative,
    threshold_shots,
)

SCHEMA_VERSION = "1.0"
OUTPUT_DIR_ENV = "NUGATE_OUTPUT_DIR"

SIGMA_PRESETS = {
    "idempotent": (1.0, 0.0),
    "halfgap": (1.0, 0.5),
}


# ------------------------------------------------------------------ output


def fmt(x: float) -> str:
    return "%.17g" % float(x)


def _resolve_out(out: str | None) -> Path:
    if out is None:
        out = os.environ.get(OUTPUT_DIR_ENV, ".")
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    click.echo(str(path))


def report_schema() -> dict:
    text = (
        importlib.resources.files("nugate").joinpath("schemas/report.schema.json").read_text()
    )
    return json.loads(text)


def write_json_report(path: Path, command: str, seed: int, parameters: dict, results) -> None:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "seed": int(seed),
        "parameters": parameters,
        "results": results,
    }
    jsonschema.validate(doc, report_schema())
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    click.echo(str(path))


def _pool_map(fn, tasks: list, workers: int) -> list:
    """Run tasks (any order) but return results in task order."""
    if workers <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


# ------------------------------------------------------------------- group


@click.group()
def main() -> None:
    """Heralded nonunitary gate experiments."""


def _common(fn):
    fn = click.option("--seed", type=int, default=0, show_default=True, help="Master seed.")(fn)
    fn = click.option(
        "--out",
        type=click.Path(file_okay=False),
        default=None,
        help=f"Output directory (default ${OUTPUT_DIR_ENV} or cwd).",
    )(fn)
    fn = click.option(
        "--format",
        "fmt_kind",
        type=click.Choice(["csv", "json"]),
        default="csv",
        show_default=True,
    )(fn)
    return fn


# ---------------------------------------------------------------- tradeoff


def _tradeoff_mc(task: tuple) -> float:
    """Success frequency within the shot budget for one grid point."""
    seed, index, values, epsilon, max_shots, n_traj = task
    sigma = DiagonalSigma(values=np.asarray(values))
    psi0 = uniform_superposition(sigma.num_qubits)
    rng = Rng(seed).child(index)
    rounds = rus_first_flip_ensemble(sigma, psi0, epsilon, n_traj, max_shots, rng)
    return float(np.mean(rounds > 0))


@main.command()
@_common
@click.option("--eta", "etas", type=float, multiple=True, default=(0.1, 0.01, 0.001), show_default=True)
@click.option(
    "--epsilon",
    "epsilons",
    type=float,
    multiple=True,
    default=(0.1, 0.05, 0.02, 0.01, 0.005),
    show_default=True,
)
@click.option("--grid-json", type=click.Path(exists=True, dir_okay=False), default=None,
              help='JSON {"eta": [...], "epsilon": [...]} overriding the grid flags.')
@click.option("--sigma-preset", type=click.Choice(sorted(SIGMA_PRESETS)), default=None)
@click.option("--sigma-file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--sigma-random", type=int, default=None, help="Random diagonal of this dimension.")
@click.option("--traj", type=int, default=20000, show_default=True, help="Monte Carlo trajectories per grid point.")
@click.option("--exact", is_flag=True, help="Skip the Monte Carlo column.")
@click.option("--workers", type=int, default=1, show_default=True)
def tradeoff(seed, out, fmt_kind, etas, epsilons, grid_json, sigma_preset, sigma_file,
             sigma_random, traj, exact, workers):
    """Success probability within the fidelity budget, closed form vs sampling."""
    if grid_json is not None:
        grid = json.loads(Path(grid_json).read_text())
        etas = tuple(float(x) for x in grid["eta"])
        epsilons = tuple(float(x) for x in grid["epsilon"])
    if not etas or not epsilons:
        raise click.UsageError("eta and epsilon grids must be non-empty")
    picked = [x for x in (sigma_preset, sigma_file, sigma_random) if x is not None]
    if len(picked) > 1:
        raise click.UsageError("choose at most one sigma source")
    if sigma_file is not None:
        sigma = load_sigma(sigma_file)
    elif sigma_random is not None:
        raw = Rng(seed).child(999_999).random(sigma_random) + 1e-9
        sigma = DiagonalSigma.from_raw(raw)
    else:
        sigma = DiagonalSigma.from_raw(np.array(SIGMA_PRESETS[sigma_preset or "halfgap"]))
    psi0 = uniform_superposition(sigma.num_qubits)

    points = [(eta, eps) for eta in sorted(etas) for eps in sorted(epsilons)]
    rows_data = []
    tasks = []
    for i, (eta, eps) in enumerate(points):
        q = TradeoffQuery(sigma=sigma, psi0=psi0, eta=eta, epsilon=eps)
        try:
            n_star = threshold_shots(q)
        except UnboundedShots:
            n_star = None
        p_closed = cumulative_success(q)
        p_limit = limiting_success(sigma, psi0, eta)
        budget = n_star if n_star is not None else default_max_shots(sigma, psi0, eps)
        rows_data.append({"eta": eta, "epsilon": eps, "p_closed_form": p_closed,
                          "p_limit": p_limit, "n_star": n_star})
        tasks.append((seed, i, tuple(sigma.values.tolist()), eps, int(budget), int(traj)))
    if not exact:
        mc = _pool_map(_tradeoff_mc, tasks, workers)
        for row, p in zip(rows_data, mc):
            row["p_monte_carlo"] = p

    out_dir = _resolve_out(out)
    header = ["eta", "epsilon", "p_closed_form", "p_monte_carlo", "p_limit", "n_star"]
    if fmt_kind == "csv":
        rows = [
            [
                fmt(r["eta"]),
                fmt(r["epsilon"]),
                fmt(r["p_closed_form"]),
                "" if exact else fmt(r["p_monte_carlo"]),
                fmt(r["p_limit"]),
                "" if r["n_star"] is None else str(r["n_star"]),
            ]
            for r in rows_data
        ]
        write_csv(out_dir / "tradeoff.csv", header, rows)
    else:
        write_json_report(
            out_dir / "tradeoff.json",
            "tradeoff",
            seed,
            {
                "eta": list(etas),
                "epsilon": list(epsilons),
                "sigma": sigma.values.tolist(),
                "traj": None if exact else traj,
                "exact": exact,
            },
            rows_data,
        )


# ------------------------------------------------------------ grover-table


@main.command("grover-table")
@_common
@click.option("--k-max", type=int, default=7, show_default=True, help="Root table covers k=1..k_max.")
@click.option("--k-scan", type=int, default=12, show_default=True, help="Failure curves cover k=0..k_scan.")
@click.option("--t", "t_values", type=float, multiple=True, default=(0.9797, 0.9855, 0.9891), show_default=True)
def grover_table(seed, out, fmt_kind, k_max, k_scan, t_values):
    """Certain-success no-flip roots and failure-probability curves."""
    if k_max < 1 or k_scan < 0:
        raise click.UsageError("k ranges must be positive")
    roots = [(k, optimal_t_roots(k, 0)) for k in range(1, k_max + 1)]
    curves = []
    for t in sorted(t_values):
        p0 = [failure_prob(t, k) for k in range(k_scan + 1)]
        argmin_k = int(np.argmin(p0))
        for k, p in enumerate(p0):
            curves.append((t, k, p, argmin_k))

    out_dir = _resolve_out(out)
    if fmt_kind == "csv":
        write_csv(out_dir / "grover_roots.csv", ["k", "t_star"], [[str(k), fmt(t)] for k, t in roots])
        write_csv(
            out_dir / "grover_failure.csv",
            ["t", "k", "p0", "argmin_k"],
            [[fmt(t), str(k), fmt(p), str(a)] for t, k, p, a in curves],
        )
    else:
        write_json_report(
            out_dir / "grover_table.json",
            "grover-table",
            seed,
            {"k_max": k_max, "k_scan": k_scan, "t": sorted(t_values)},
            {
                "roots": [{"k": k, "t_star": t} for k, t in roots],
                "failure": [
                    {"t": t, "k": k, "p0": p, "argmin_k": a} for t, k, p, a in curves
                ],
            },
        )


# --------------------------------------------------------------------- ite


def _ite_point(task: tuple) -> tuple[float, float]:
    """(success frequency, mean completion round among successes) for one L."""
    seed, index, sites, couplings, tau, epsilon, eta, n_traj = task
    chain = IsingChain(sites=sites, couplings=couplings)
    rng = Rng(seed).child(index)
    rounds = ite_success_ensemble(chain, tau, epsilon, eta, n_traj, rng)
    ok = rounds > 0
    freq = float(np.mean(ok))
    mean_rounds = float(np.mean(rounds[ok])) if np.any(ok) else math.nan
    return freq, mean_rounds


@main.command()
@_common
@click.option("--sites", "sites_grid", type=int, multiple=True, default=(2, 3, 4, 5, 6), show_default=True)
@click.option("--tau", type=float, default=1.0, show_default=True)
@click.option("--eta", type=float, default=0.01, show_default=True)
@click.option("--epsilon", type=float, default=0.05, show_default=True)
@click.option("--traj", type=int, default=2000, show_default=True)
@click.option("--full-runs", type=int, default=5, show_default=True,
              help="Full-register protocol runs per L for fidelity statistics.")
@click.option("--exact", is_flag=True, help="Closed-form success probabilities only, no sampling.")
@click.option("--workers", type=int, default=1, show_default=True)
def ite(seed, out, fmt_kind, sites_grid, tau, eta, epsilon, traj, full_runs, exact, workers):
    """Imaginary-time evolution of random-sign chains by heralded bond gates."""
    if not sites_grid:
        raise click.UsageError("sites grid must be non-empty")
    master = Rng(seed)
    sites_grid = sorted(set(sites_grid))
    chains = {L: random_chain(L, master.child(1000 + L)) for L in sites_grid}

    rows_data = []
    tasks = []
    for i, L in enumerate(sites_grid):
        chain = chains[L]
        psi0 = uniform_superposition(L)
        placed = [
            (bond_sigma(J, tau).as_sigma(), (b, b + 1))
            for b, J in enumerate(chain.couplings)
        ]
        p_closed = multi_gate_cumulative(placed, psi0, eta, epsilon)
        # bond-level single-gate quantity with its own (shape-aware) shot
        # budget — identical to what the tradeoff command reports for the
        # bond diagonal, unlike the shared-budget multi-gate column
        q_bond = TradeoffQuery(
            sigma=bond_sigma(chain.couplings[0], tau).as_sigma(),
            psi0=uniform_superposition(2),
            eta=eta,
            epsilon=epsilon,
        )
        rows_data.append({
            "sites": L,
            "couplings": "".join("+" if J > 0 else "-" for J in chain.couplings),
            "p_closed_form": p_closed,
            "p_bond": cumulative_success(q_bond),
        })
        tasks.append((seed, i, L, chain.couplings, tau, epsilon, eta, int(traj)))

    if not exact:
        sampled = _pool_map(_ite_point, tasks, workers)
        for row, (freq, mean_rounds), L in zip(rows_data, sampled, sites_grid):
            row["success_freq"] = freq
            row["mean_rounds"] = mean_rounds
            fids = []
            for j in range(full_runs):
                rep = ite_rus_protocol(
                    chains[L], tau, epsilon, eta, master.child(2000 + 100 * L + j)
                )
                if rep.success:
                    fids.append(rep.fidelity_ite)
            row["fidelity_mean"] = float(np.mean(fids)) if fids else math.nan

    # log-linear scaling fit of the success probability against chain length
    p_col = "p_closed_form" if exact else "success_freq"
    xs = [r["sites"] for r in rows_data if r[p_col] > 0]
    ys = [math.log(r[p_col]) for r in rows_data if r[p_col] > 0]
    slope = float(np.polyfit(xs, ys, 1)[0]) if len(xs) >= 2 else math.nan
    predicted = 0.5 * math.log(eta)

    out_dir = _resolve_out(out)
    if fmt_kind == "csv":
        header = ["sites", "couplings", "p_closed_form", "p_bond", "success_freq", "mean_rounds", "fidelity_mean"]
        rows = []
        for r in rows_data:
            rows.append([
                str(r["sites"]),
                r["couplings"],
                fmt(r["p_closed_form"]),
                fmt(r["p_bond"]),
                "" if exact else fmt(r["success_freq"]),
                "" if exact or math.isnan(r["mean_rounds"]) else fmt(r["mean_rounds"]),
                "" if exact or math.isnan(r["fidelity_mean"]) else fmt(r["fidelity_mean"]),
            ])
        write_csv(out_dir / "ite.csv", header, rows)
        write_csv(
            out_dir / "ite_fit.csv",
            ["slope", "predicted_slope"],
            [[fmt(slope), fmt(predicted)]],
        )
    else:
        write_json_report(
            out_dir / "ite.json",
            "ite",
            seed,
            {"sites": list(sites_grid), "tau": tau, "eta": eta, "epsilon": epsilon,
             "traj": None if exact else traj, "exact": exact},
            {"rows": rows_data, "fit": {"slope": slope, "predicted_slope": predicted}},
        )


# ------------------------------------------------------------------ method1


def _parse_couplings(text: str) -> tuple[int, ...]:
    out = []
    for ch in text.replace(",", ""):
        if ch == "+":
            out.append(1)
        elif ch == "-":
            out.append(-1)
        else:
            raise click.UsageError(f"coupling characters must be + or -, got {ch!r}")
    return tuple(out)


def _load_plan(plan_path: str | None):
    if plan_path is None:
        return None
    plan = json.loads(Path(plan_path).read_text())
    return plan


@main.command()
@_common
@click.option("--sites", type=int, default=4, show_default=True)
@click.option("--couplings", type=str, default=None, help='Signs like "++-"; random when omitted.')
@click.option("--tau", type=float, default=10.0, show_default=True)
@click.option("--k", type=int, default=1, show_default=True, help="Grover iterations per bond.")
@click.option("--sampled", is_flag=True, help="Draw the bond outcomes instead of exact bookkeeping.")
@click.option("--plan", "plan_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help='JSON plan {"couplings": [...], "tau": ..., "k": ..., "mode": ...}.')
def method1(seed, out, fmt_kind, sites, couplings, tau, k, sampled, plan_path):
    """Per-bond amplified run: success/fidelity ledger and gate-count growth."""
    plan = _load_plan(plan_path)
    mode = "sampled" if sampled else "exact"
    if plan is not None:
        couplings_t = tuple(int(j) for j in plan["couplings"])
        sites = len(couplings_t) + 1
        tau = float(plan.get("tau", tau))
        k = int(plan.get("k", k))
        mode = plan.get("mode", mode)
    elif couplings is not None:
        couplings_t = _parse_couplings(couplings)
        sites = len(couplings_t) + 1
    else:
        couplings_t = random_chain(sites, Rng(seed).child(1)).couplings
    chain = IsingChain(sites=sites, couplings=couplings_t)
    rng = Rng(seed).child(2) if mode == "sampled" else None
    report = method1_run(chain, tau, k_per_bond=k, mode=mode, rng=rng)

    out_dir = _resolve_out(out)
    _emit_plot_script(out_dir)
    if fmt_kind == "csv":
        header = ["bond", "epsilon", "flip_prob", "gate_fidelity", "reflection_gates"]
        rows = [
            [str(b.bond), fmt(b.epsilon), fmt(b.flip_prob), fmt(b.gate_fidelity), str(b.reflection_gates)]
            for b in report.bonds
        ]
        write_csv(out_dir / "method1.csv", header, rows)
        write_csv(
            out_dir / "method1_summary.csv",
            ["sites", "tau", "k", "t_star", "fidelity_ite", "fidelity_ground", "all_certain"],
            [[str(sites), fmt(tau), str(k), fmt(report.t_star), fmt(report.fidelity_ite),
              fmt(report.fidelity_ground), str(int(report.all_certain))]],
        )
    else:
        write_json_report(
            out_dir / "method1.json", "method1", seed,
            {"sites": sites, "tau": tau, "k": k, "mode": mode},
            report.to_json(),
        )


# ------------------------------------------------------------------ method2


@main.command()
@_common
@click.option("--sites", "sites_grid", type=int, multiple=True, default=(6,), show_default=True)
@click.option("--couplings", type=str, default=None, help='Signs like "++-"; random per L when omitted.')
@click.option("--tau", type=float, default=10.0, show_default=True)
@click.option("--k", type=int, default=None, help="Iteration count (default: predicted).")
@click.option("--normalized", is_flag=True, help="Use max-normalized bond diagonals in the flip-weight root.")
@click.option("--sampled", is_flag=True, help="Also draw the final ancilla measurement.")
@click.option("--plan", "plan_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help='JSON plan {"couplings": [...], "tau": ..., "k": int|"auto", "mode": ...}.')
def method2(seed, out, fmt_kind, sites_grid, couplings, tau, k, normalized, sampled, plan_path):
    """Whole-register amplified run: fidelity-vs-k curves and the (L, k_final) table."""
    plan = _load_plan(plan_path)
    mode = "sampled" if sampled else "exact"
    if plan is not None:
        couplings_t = tuple(int(j) for j in plan["couplings"])
        sites_grid = (len(couplings_t) + 1,)
        tau = float(plan.get("tau", tau))
        plan_k = plan.get("k", "auto")
        k = None if plan_k == "auto" else int(plan_k)
        mode = plan.get("mode", mode)
        chains = {sites_grid[0]: IsingChain(sites=sites_grid[0], couplings=couplings_t)}
    elif couplings is not None:
        couplings_t = _parse_couplings(couplings)
        sites_grid = (len(couplings_t) + 1,)
        chains = {sites_grid[0]: IsingChain(sites=sites_grid[0], couplings=couplings_t)}
    else:
        sites_grid = tuple(sorted(set(sites_grid)))
        chains = {L: random_chain(L, Rng(seed).child(1000 + L)) for L in sites_grid}

    reports = {}
    for L in sites_grid:
        rng = Rng(seed).child(3000 + L) if mode == "sampled" else None
        reports[L] = method2_run(chains[L], tau, mode=mode, rng=rng, k_final=k, normalized=normalized)

    Ls = sorted(reports)
    if len(Ls) >= 2:
        slope = float(np.polyfit(Ls, [math.log2(reports[L].k_final) for L in Ls], 1)[0])
    else:
        slope = math.nan

    out_dir = _resolve_out(out)
    _emit_plot_script(out_dir)
    if fmt_kind == "csv":
        for L in Ls:
            rep = reports[L]
            rows = [
                [str(kk), fmt(rep.success_probs[kk]), fmt(rep.fidelity_ground_curve[kk]),
                 fmt(rep.fidelity_ite_curve[kk])]
                for kk in range(rep.k_final + 1)
            ]
            write_csv(out_dir / f"method2_L{L}.csv",
                      ["k", "success_prob", "fidelity_ground", "fidelity_ite"], rows)
        write_csv(
            out_dir / "method2_table.csv",
            ["sites", "k_final", "epsilon", "s_star", "post_fidelity_ground"],
            [[str(L), str(reports[L].k_final), fmt(reports[L].epsilon), fmt(reports[L].s_star),
              fmt(reports[L].post_fidelity_ground)] for L in Ls],
        )
        write_csv(out_dir / "method2_fit.csv", ["slope_log2k_vs_sites"], [[fmt(slope)]])
    else:
        write_json_report(
            out_dir / "method2.json", "method2", seed,
            {"sites": list(Ls), "tau": tau, "k": k, "normalized": normalized, "mode": mode},
            {"runs": {str(L): reports[L].to_json() for L in Ls},
             "slope_log2k_vs_sites": slope},
        )


# ------------------------------------------------------------------- oracle


@main.group()
def oracle() -> None:
    """Brute-force references."""


@oracle.command("ground-state")
@_common
@click.option("--sites", type=int, default=4, show_default=True)
@click.option("--couplings", type=str, default=None, help='Signs like "++-"; random when omitted.')
def oracle_ground_state(seed, out, fmt_kind, sites, couplings):
    """Exact ground energy and degenerate basis set by enumeration."""
    if couplings is not None:
        couplings_t = _parse_couplings(couplings)
        sites = len(couplings_t) + 1
    else:
        couplings_t = random_chain(sites, Rng(seed).child(1)).couplings
    chain = IsingChain(sites=sites, couplings=couplings_t)
    energy, basis = ground_subspace(chain)
    bits = sorted(int(b) for b in basis)

    out_dir = _resolve_out(out)
    if fmt_kind == "csv":
        write_csv(
            out_dir / "ground_state.csv",
            ["energy", "bitstring", "index"],
            [[fmt(energy), format(b, f"0{sites}b"), str(b)] for b in bits],
        )
    else:
        write_json_report(
            out_dir / "ground_state.json", "oracle ground-state", seed,
            {"sites": sites, "couplings": list(couplings_t)},
            {"energy": energy, "basis": bits},
        )


# -------------------------------------------------------------- plot script


PLOT_SCRIPT = '''"""Render the amplified-run figures from the CSVs in this directory.

Usage: python plot_figures.py [directory]
Produces method2_fidelity.png (fidelity vs iteration per chain length) and
method2_scaling.png (log2 of the terminal iteration count vs chain length).
"""
import csv
import glob
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

base = sys.argv[1] if len(sys.argv) > 1 else "."

fig, ax = plt.subplots()
for path in sorted(glob.glob(os.path.join(base, "method2_L*.csv"))):
    label = os.path.basename(path)[len("method2_") : -len(".csv")]
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    ax.plot(
        [int(r["k"]) for r in rows],
        [float(r["fidelity_ground"]) for r in rows],
        marker="o",
        label=label,
    )
ax.set_xlabel("Grover iteration k")
ax.set_ylabel("success-weighted ground-state fidelity")
ax.legend()
fig.savefig(os.path.join(base, "method2_fidelity.png"), dpi=150)

table = os.path.join(base, "method2_table.csv")
if os.path.exists(table):
    with open(table, encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    import math

    fig2, ax2 = plt.subplots()
    ax2.plot(
        [int(r["sites"]) for r in rows],
        [math.log2(int(r["k_final"])) for r in rows],
        marker="s",
    )
    ax2.set_xlabel("chain length")
    ax2.set_ylabel("log2 k_final")
    fig2.savefig(os.path.join(base, "method2_scaling.png"), dpi=150)

m1 = os.path.join(base, "method1.csv")
if os.path.exists(m1):
    with open(m1, encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    fig3, ax3 = plt.subplots()
    ax3.semilogy(
        [int(r["bond"]) for r in rows],
        [int(r["reflection_gates"]) for r in rows],
        marker="^",
    )
    ax3.set_xlabel("bond")
    ax3.set_ylabel("gates per reflection")
    fig3.savefig(os.path.join(base, "method1_gates.png"), dpi=150)
'''


def _emit_plot_script(out_dir: Path) -> None:
    path = out_dir / "plot_figures.py"
    path.write_text(PLOT_SCRIPT, encoding="utf-8")
    click.echo(str(path))


if __name__ == "__main__":
    main()
