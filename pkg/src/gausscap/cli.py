"""Command-line surface: every dataset the library computes, as seeded CSV.

Subcommands: capacity, efficiency-grid, waterfill, additivity-test, becerra,
qam-heterodyne, selftest.  Parameters come from flags, optionally seeded from
a TOML or JSON config file (flags override file values).  Every CSV starts
with comment lines carrying the tool version, a sha256 hash of the resolved
run parameters, and the master seed, so identical configs produce identical
files.

Exit codes: 0 success, 2 config/usage error, 3 numerical failure
(quadrature or bisection), 4 invariant violation detected during the run.
The default master seed is 0; the GB_SEED environment variable overrides
that default, and an explicit seed (flag or config) overrides both.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from contextlib import contextmanager

import numpy as np

try:
    import tomllib
except ImportError:  # py<3.11
    import tomli as tomllib

from . import __version__
from .becerra import becerra_capacity_curve
from .capacity import (
    capacity_report,
    crossover_energy,
    efficiency_grid,
    threshold_energy,
)
from .channel import PhaseInsensitiveChannel
from .heterodyne import BoundViolationError, heterodyne_curve
from .multimode import run_additivity_experiment, waterfill

__all__ = ["main", "InvariantViolation"]


class InvariantViolation(RuntimeError):
    """A run-level consistency check failed on otherwise valid inputs."""


# ---------------------------------------------------------------------------
# formatting and output plumbing

def fmt(value) -> str:
    """Locale-independent cell formatting: 12 significant digits."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return "%d" % value
    if isinstance(value, str):
        return value
    return "%.12g" % float(value)


@contextmanager
def _open_output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        # newline pinned so identical configs give identical bytes anywhere
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            yield fh


def _write_csv(stream, columns, rows, meta, extra_comments=()):
    stream.write("# gausscap %s\n" % meta["version"])
    stream.write("# config sha256 %s\n" % meta["config_hash"])
    stream.write("# master seed %d\n" % meta["seed"])
    for line in extra_comments:
        stream.write("# %s\n" % line)
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(fmt(cell) for cell in row) + "\n")


def _run_meta(command: str, params: dict, seed: int) -> dict:
    payload = {"command": command, "seed": seed}
    payload.update(params)
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return {
        "version": __version__,
        "config_hash": hashlib.sha256(blob.encode()).hexdigest(),
        "seed": seed,
    }


def _resolve_seed(args) -> int:
    seed = getattr(args, "seed", None)
    if seed is None:
        env = os.environ.get("GB_SEED")
        seed = int(env) if env not in (None, "") else 0
    seed = int(seed)
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    return seed


def _float_list(value, name: str) -> list:
    """Accept a comma-separated string (flag) or a sequence (config file)."""
    if value is None:
        raise ValueError("missing required parameter: %s" % name)
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
    elif isinstance(value, (list, tuple)):
        parts = value
    else:
        parts = [value]
    if not parts:
        raise ValueError("%s must contain at least one value" % name)
    try:
        return [float(p) for p in parts]
    except (TypeError, ValueError):
        raise ValueError("%s must be a list of numbers" % name) from None


def _require(args, names) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise ValueError("missing required parameter: %s" % name.replace("_", "-"))


# ---------------------------------------------------------------------------
# subcommands

def _build_channel(args) -> PhaseInsensitiveChannel:
    picked = [n for n in ("loss", "amp", "tau") if getattr(args, n) is not None]
    if len(picked) != 1:
        raise ValueError("specify the channel with exactly one of --loss, --amp, "
                         "or --tau together with --m")
    if args.loss is not None:
        return PhaseInsensitiveChannel.from_loss(args.loss, args.nth)
    if args.amp is not None:
        return PhaseInsensitiveChannel.from_amplifier(args.amp, args.nth)
    if args.m is None:
        raise ValueError("--tau requires --m")
    return PhaseInsensitiveChannel(args.tau, args.m)


def cmd_capacity(args) -> int:
    _require(args, ["nbar"])
    ch = _build_channel(args)
    if args.nbar < 0.0:
        raise ValueError("nbar must be nonnegative")
    seed = _resolve_seed(args)
    params = {"loss": args.loss, "amp": args.amp, "tau": args.tau, "m": args.m,
              "nth": args.nth, "nbar": args.nbar}
    meta = _run_meta("capacity", params, seed)
    rep = capacity_report(ch, args.nbar)
    print("tau = %s" % fmt(ch.tau))
    print("m = %s" % fmt(ch.m))
    print("n_bar = %s" % fmt(args.nbar))
    print("C_coh = %s" % fmt(rep.c_coh))
    print("C_sq = %s" % fmt(rep.c_sq))
    print("C_holevo = %s" % fmt(rep.c_holevo))
    print("C_gauss = %s" % fmt(rep.c_gauss))
    print("optimal_scheme = %s" % rep.optimal_scheme)
    print("optimal_r = %s" % fmt(rep.optimal_squeezing_r))
    print("efficiency = %s" % fmt(rep.efficiency))
    if args.output is not None:
        columns = ["tau", "m", "n_bar", "C_coh", "C_sq", "C_holevo", "C_gauss",
                   "optimal_scheme", "optimal_r", "efficiency"]
        row = [ch.tau, ch.m, args.nbar, rep.c_coh, rep.c_sq, rep.c_holevo,
               rep.c_gauss, rep.optimal_scheme, rep.optimal_squeezing_r,
               rep.efficiency]
        with _open_output(args.output) as out:
            _write_csv(out, columns, [row], meta)
    return 0


def cmd_efficiency_grid(args) -> int:
    _require(args, ["tau"])
    resolution = int(args.resolution)
    seed = _resolve_seed(args)
    params = {"tau": args.tau, "nbar_min": args.nbar_min, "nbar_max": args.nbar_max,
              "nth_min": args.nth_min, "nth_max": args.nth_max,
              "resolution": resolution, "spacing": args.spacing}
    meta = _run_meta("efficiency-grid", params, seed)
    grid = efficiency_grid(args.tau, (args.nbar_min, args.nbar_max),
                           (args.nth_min, args.nth_max), resolution,
                           args.spacing)
    columns = ["n_bar", "n_th", "C_coh", "C_sq", "C_holevo", "C_gauss",
               "optimal_scheme", "optimal_r", "efficiency", "crossover_n_bar"]
    rows = []
    for i, nb in enumerate(grid.n_bar_values):
        for j, nt in enumerate(grid.n_th_values):
            rep = grid.reports[i][j]
            rows.append([nb, nt, rep.c_coh, rep.c_sq, rep.c_holevo, rep.c_gauss,
                         rep.optimal_scheme, rep.optimal_squeezing_r,
                         rep.efficiency, grid.crossover[j]])
    with _open_output(args.output) as out:
        _write_csv(out, columns, rows, meta,
                   extra_comments=["tau %s" % fmt(args.tau)])
    return 0


def cmd_waterfill(args) -> int:
    _require(args, ["lambdas", "budget"])
    lams = _float_list(args.lambdas, "lambdas")
    seed = _resolve_seed(args)
    params = {"lambdas": lams, "budget": args.budget}
    meta = _run_meta("waterfill", params, seed)
    alloc = waterfill(lams, args.budget)
    extra = ["budget %s" % fmt(args.budget),
             "water_level %s" % fmt(alloc.nu),
             "k_active %d" % alloc.k_active,
             "mutual_info_bits %s" % fmt(alloc.mutual_info_bits)]
    columns = ["index", "lambda", "power"]
    rows = [[j, lam, p]
            for j, (lam, p) in enumerate(zip(alloc.lambdas, alloc.powers))]
    with _open_output(args.output) as out:
        _write_csv(out, columns, rows, meta, extra_comments=extra)
    return 0


def cmd_additivity_test(args) -> int:
    trials, max_modes = int(args.trials), int(args.max_modes)
    seed = _resolve_seed(args)
    params = {"trials": trials, "max_modes": max_modes}
    meta = _run_meta("additivity-test", params, seed)
    summary = run_additivity_experiment(trials, max_modes, seed,
                                        threads=args.threads)
    print("trials = %d" % summary.trials)
    print("min_gap = %s" % fmt(summary.min_gap))
    print("mean_gap = %s" % fmt(summary.mean_gap))
    print("violations = %d" % summary.violations)
    if args.output is not None:
        columns = ["trials", "max_modes", "min_gap", "mean_gap", "violations"]
        row = [summary.trials, max_modes, summary.min_gap,
               summary.mean_gap, summary.violations]
        with _open_output(args.output) as out:
            _write_csv(out, columns, [row], meta)
    if summary.violations:
        raise InvariantViolation(
            "separable encoding beaten in %d of %d trials (min gap %.3e)"
            % (summary.violations, summary.trials, summary.min_gap))
    return 0


def _normalize_sigma_policy(value):
    if isinstance(value, str):
        if value in ("uniform", "optimize"):
            return value
        try:
            return float(value)
        except ValueError:
            raise ValueError("sigma-policy must be 'uniform', 'optimize', or a "
                             "number") from None
    return float(value)


def cmd_becerra(args) -> int:
    _require(args, ["eta", "stages", "nbar"])
    n_bars = _float_list(args.nbar, "nbar")
    policy = _normalize_sigma_policy(args.sigma_policy)
    order, stages, trials = int(args.order), int(args.stages), int(args.trials)
    opt_trials = None if args.opt_trials is None else int(args.opt_trials)
    seed = _resolve_seed(args)
    params = {"order": order, "eta": args.eta, "stages": stages,
              "nbar": n_bars, "sigma_policy": policy, "trials": trials,
              "opt_trials": opt_trials,
              "detector_efficiency": args.detector_efficiency,
              "dark_count": args.dark_count}
    meta = _run_meta("becerra", params, seed)
    points = becerra_capacity_curve(
        order, args.eta, stages, n_bars, sigma_policy=policy,
        trials_per_symbol=trials, seed=seed, threads=args.threads,
        opt_trials=opt_trials, detector_efficiency=args.detector_efficiency,
        dark_count_prob=args.dark_count)
    columns = ["n_bar", "delta", "sigma", "I_becerra", "I_stderr",
               "C_coh", "C_sq", "C_holevo", "beats_gaussian"]
    rows = [[p.n_bar, p.delta, p.sigma, p.mi_bits, p.mi_stderr,
             p.c_coh, p.c_sq, p.c_holevo, p.beats_gaussian] for p in points]
    extra = ["order %d" % order, "eta %s" % fmt(args.eta),
             "stages %d" % stages]
    with _open_output(args.output) as out:
        _write_csv(out, columns, rows, meta, extra_comments=extra)
    return 0


def cmd_qam_heterodyne(args) -> int:
    _require(args, ["eta", "sigmas", "nbar"])
    sigmas = _float_list(args.sigmas, "sigmas")
    n_bars = _float_list(args.nbar, "nbar")
    order = int(args.order)
    seed = _resolve_seed(args)
    params = {"order": order, "eta": args.eta, "sigmas": sigmas,
              "nbar": n_bars, "noise_variance": args.noise_variance}
    meta = _run_meta("qam-heterodyne", params, seed)
    points, crossings = heterodyne_curve(order, args.eta, sigmas, n_bars,
                                         v=args.noise_variance)
    extra = ["order %d" % order, "eta %s" % fmt(args.eta)]
    for sig in sorted(crossings):
        extra.append("tracking_knee sigma %s eta_n_bar %s"
                     % (fmt(sig), fmt(crossings[sig] * args.eta)))
    columns = ["M", "eta", "sigma", "delta", "n_bar", "I_bits", "C_coh_bits"]
    rows = [[p.order, p.eta, p.sigma, p.delta, p.n_bar, p.mi_bits, p.c_coh_bits]
            for p in points]
    with _open_output(args.output) as out:
        _write_csv(out, columns, rows, meta, extra_comments=extra)
    return 0


# ---------------------------------------------------------------------------
# selftest

def _check_thresholds() -> None:
    x80 = threshold_energy(0.8)
    x90 = threshold_energy(0.9)
    assert 51.0 <= x80 <= 53.0, "threshold_energy(0.8) = %g" % x80
    assert 7900.0 <= x90 <= 8300.0, "threshold_energy(0.9) = %g" % x90


def _check_crossover(seed: int) -> None:
    from .capacity import coherent_capacity, squeezed_capacity

    rng = np.random.default_rng(seed)
    for _ in range(100):
        tau = rng.uniform(0.1, 3.0)
        m = max(rng.uniform(1e-3, 5.0), abs(tau - 1.0))
        ch = PhaseInsensitiveChannel(tau, m)
        nc = crossover_energy(ch)
        diff = abs(coherent_capacity(ch, nc) - squeezed_capacity(ch, nc)[0])
        assert diff < 1e-9, "capacities differ by %g at the crossover" % diff


def _check_pipeline_reduction(seed: int) -> None:
    from .capacity import coherent_capacity
    from .multimode import mutual_information_gaussian
    from .gaussian_core import CovMatrix

    rng = np.random.default_rng(seed)
    for _ in range(25):
        tau = rng.uniform(0.1, 3.0)
        m = max(rng.uniform(1e-3, 3.0), abs(tau - 1.0))
        n_bar = rng.uniform(0.05, 20.0)
        ch = PhaseInsensitiveChannel(tau, m)
        p_out = tau * n_bar * np.eye(2)
        noise = CovMatrix(1, np.eye(2) * (tau * 0.5 + m + 0.5))
        via_pipeline = mutual_information_gaussian(p_out, noise)
        direct = coherent_capacity(ch, n_bar)
        assert abs(via_pipeline - direct) < 1e-10, (
            "pipeline deviates by %g" % abs(via_pipeline - direct))


def _check_waterfill(seed: int) -> None:
    a = waterfill([1.0, 1.0], 2.0)
    assert abs(a.nu - 2.0) < 1e-12 and abs(a.mutual_info_bits - 1.0) < 1e-12
    b = waterfill([1.0, 3.0], 1.0)
    assert abs(b.nu - 2.0) < 1e-12 and b.k_active == 1
    c = waterfill([1.0, 2.0, 4.0], 4.0)
    assert abs(c.nu - 3.5) < 1e-12
    assert abs(c.mutual_info_bits - 0.5 * (math.log2(3.5) + math.log2(1.75))) < 1e-12
    rng = np.random.default_rng(seed)
    for _ in range(50):
        lams = rng.uniform(0.2, 5.0, size=rng.integers(2, 9))
        budget = rng.uniform(0.0, 10.0)
        alloc = waterfill(lams, budget)
        assert abs(sum(alloc.powers) - budget) < 1e-9, "budget accounting broke"


def _check_waterfill_dominance(seed: int) -> None:
    rng = np.random.default_rng(seed)
    for _ in range(20):
        lams = np.sort(rng.uniform(0.2, 5.0, size=rng.integers(2, 9)))
        budget = rng.uniform(0.1, 10.0)
        alloc = waterfill(lams, budget)
        raw = rng.dirichlet(np.ones(lams.size), size=200) * budget
        vals = 0.5 * np.sum(np.log2(1.0 + raw / lams[None, :]), axis=1)
        assert alloc.mutual_info_bits >= vals.max() - 1e-12, (
            "a random allocation beat the water-filling optimum")


def _check_additivity(seed: int, threads: int) -> None:
    summary = run_additivity_experiment(300, 4, seed, threads=threads)
    assert summary.violations == 0, (
        "%d additivity violations, min gap %g"
        % (summary.violations, summary.min_gap))


def _check_majorization(seed: int) -> None:
    from .majorization import (
        case_inequality_check,
        random_majorized_pairs,
        schur_convexity_check,
    )

    rng = np.random.default_rng(seed)
    for _ in range(10):
        d = int(rng.integers(2, 9))
        lams, mus = random_majorized_pairs(200, d, rng)
        for lam, mu in zip(lams, mus):
            budget = float(rng.uniform(0.05, 4.0))
            assert case_inequality_check(lam, mu, budget), "case inequality failed"
    worst = schur_convexity_check(k=4, budget=3.0, trials=200, seed=seed)
    assert worst < 1e-7, "Schur transfer check worst violation %g" % worst


def _check_receiver(seed: int) -> None:
    from .becerra import (
        ReceiverConfig,
        SymbolAlphabet,
        exact_joint,
        monte_carlo_confusion,
    )
    from .constellation import build_qam

    const = build_qam(4, 1.0, math.inf)
    for stages in (1, 3):
        cfg = ReceiverConfig(stages=stages, constellation=const)
        conf = exact_joint(cfg).matrix
        assert np.all(np.abs(conf.sum(axis=1) - 1.0) < 1e-12), (
            "exact confusion rows must sum to 1")
    beta = 0.6
    pair = SymbolAlphabet(points=np.array([beta + 0j, -beta + 0j]),
                          prior=np.array([0.5, 0.5]))
    cfg = ReceiverConfig(stages=1, constellation=pair)
    p_wrong = exact_joint(cfg).matrix[1, 0]
    assert abs(p_wrong - math.exp(-4.0 * beta * beta)) < 1e-12, (
        "single-stage binary error rate off analytic value")
    cfg4 = ReceiverConfig(stages=2, constellation=build_qam(4, 1.2, math.inf))
    exact = exact_joint(cfg4).matrix
    mc = monte_carlo_confusion(cfg4, trials_per_symbol=20000, seed=seed)
    se = np.sqrt(exact * (1.0 - exact) / 20000.0)
    assert np.all(np.abs(mc.matrix - exact) <= 4.0 * se + 1e-12), (
        "MC confusion strayed beyond 4 binomial standard errors")


def _check_heterodyne() -> None:
    from .constellation import QamConstellation, build_qam
    from .heterodyne import HeterodyneModel, _entropy_and_mass, heterodyne_mi

    lonely = heterodyne_mi(HeterodyneModel(QamConstellation.single_point(1 + 1j)))
    assert abs(lonely) < 1e-9, "single-symbol alphabet must carry no information"
    wide = heterodyne_mi(HeterodyneModel(build_qam(4, 40.0, math.inf)))
    assert abs(wide - 2.0) < 1e-6, "well-separated 4-QAM must reach 2 bits"
    model = HeterodyneModel(build_qam(16, 1.2, 2.5))
    h1, _ = _entropy_and_mass(model, 32)
    h2, _ = _entropy_and_mass(model, 64)
    assert abs(h2 - h1) < 1e-5, "entropy quadrature unstable under doubling"


def cmd_selftest(args) -> int:
    seed = _resolve_seed(args)
    checks = [
        ("threshold-energies", lambda: _check_thresholds()),
        ("crossover-identity", lambda: _check_crossover(seed)),
        ("pipeline-reduction", lambda: _check_pipeline_reduction(seed)),
        ("waterfill-examples", lambda: _check_waterfill(seed)),
        ("waterfill-dominance", lambda: _check_waterfill_dominance(seed)),
        ("additivity-gaps", lambda: _check_additivity(seed, args.threads)),
        ("majorization-cases", lambda: _check_majorization(seed)),
        ("receiver-exactness", lambda: _check_receiver(seed)),
        ("heterodyne-limits", lambda: _check_heterodyne()),
    ]
    failures = 0
    for name, run in checks:
        start = time.perf_counter()
        try:
            run()
        except AssertionError as exc:
            failures += 1
            print("FAIL - %s: %s" % (name, exc))
        else:
            print("ok - %s (%.2fs)" % (name, time.perf_counter() - start))
    if failures:
        raise InvariantViolation("%d selftest check(s) failed" % failures)
    print("all %d checks passed" % len(checks))
    return 0


# ---------------------------------------------------------------------------
# parser assembly and config-file merging

def _add_common(sub, *, threads: bool = False) -> None:
    sub.add_argument("--config", metavar="FILE",
                     help="TOML or JSON file with parameter defaults")
    sub.add_argument("--output", metavar="FILE",
                     help="CSV destination ('-' or omitted: stdout)")
    sub.add_argument("--seed", type=int, default=None,
                     help="master seed (default 0, or GB_SEED if set)")
    if threads:
        sub.add_argument("--threads", type=int, default=1,
                         help="parallelism cap; results do not depend on it")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gausscap",
        description="Gaussian-channel capacity benchmarks and receiver sweeps")
    parser.add_argument("--version", action="version",
                        version="gausscap %s" % __version__)
    subs = parser.add_subparsers(dest="command", metavar="COMMAND")
    registry = {}

    cap = subs.add_parser("capacity",
                          help="single-channel capacities at one energy")
    cap.add_argument("--loss", type=float, help="transmittance eta in (0, 1]")
    cap.add_argument("--amp", type=float, help="amplifier gain g > 1")
    cap.add_argument("--tau", type=float, help="quadrature gain (with --m)")
    cap.add_argument("--m", type=float, help="added noise (with --tau)")
    cap.add_argument("--nth", type=float, default=0.0,
                     help="environment photon number for --loss/--amp")
    cap.add_argument("--nbar", type=float, help="mean input photon number")
    _add_common(cap)
    registry["capacity"] = (cap, cmd_capacity)

    eff = subs.add_parser("efficiency-grid",
                          help="capacity grid over (n_bar, n_th) at fixed tau")
    eff.add_argument("--tau", type=float, help="channel gain")
    eff.add_argument("--nbar-min", type=float, default=0.01)
    eff.add_argument("--nbar-max", type=float, default=100.0)
    eff.add_argument("--nth-min", type=float, default=0.01)
    eff.add_argument("--nth-max", type=float, default=100.0)
    eff.add_argument("--resolution", type=int, default=40)
    eff.add_argument("--spacing", choices=("log", "linear"), default="log")
    _add_common(eff)
    registry["efficiency-grid"] = (eff, cmd_efficiency_grid)

    wf = subs.add_parser("waterfill",
                         help="power allocation over noise eigenvalues")
    wf.add_argument("--lambdas", help="comma-separated noise eigenvalues")
    wf.add_argument("--budget", type=float, help="total signal power")
    _add_common(wf)
    registry["waterfill"] = (wf, cmd_waterfill)

    add = subs.add_parser("additivity-test",
                          help="randomized separable-vs-entangled gap check")
    add.add_argument("--trials", type=int, default=1000)
    add.add_argument("--max-modes", type=int, default=4)
    _add_common(add, threads=True)
    registry["additivity-test"] = (add, cmd_additivity_test)

    bec = subs.add_parser("becerra",
                          help="adaptive-receiver mutual information sweep")
    bec.add_argument("--order", type=int, default=4,
                     help="QAM order (4, 16, 64, ...)")
    bec.add_argument("--eta", type=float, help="channel transmittance")
    bec.add_argument("--stages", type=int, help="receiver stage count L")
    bec.add_argument("--nbar", help="comma-separated mean photon numbers")
    bec.add_argument("--sigma-policy", default="uniform",
                     help="'uniform', 'optimize', or a fixed prior width")
    bec.add_argument("--trials", type=int, default=200000,
                     help="Monte Carlo trials per symbol")
    bec.add_argument("--opt-trials", type=int, default=None,
                     help="cheaper trial count for the sigma scan")
    bec.add_argument("--detector-efficiency", type=float, default=1.0)
    bec.add_argument("--dark-count", type=float, default=0.0)
    _add_common(bec, threads=True)
    registry["becerra"] = (bec, cmd_becerra)

    het = subs.add_parser("qam-heterodyne",
                          help="QAM + dual-quadrature detection sweep")
    het.add_argument("--order", type=int, default=16)
    het.add_argument("--eta", type=float, help="channel transmittance")
    het.add_argument("--sigmas",
                     help="comma-separated received-side prior widths "
                          "('inf' for a flat prior)")
    het.add_argument("--nbar", help="comma-separated mean photon numbers")
    het.add_argument("--noise-variance", type=float, default=1.0,
                     help="per-quadrature outcome variance (1 = pure loss)")
    _add_common(het)
    registry["qam-heterodyne"] = (het, cmd_qam_heterodyne)

    st = subs.add_parser("selftest", help="fast internal consistency suite")
    _add_common(st, threads=True)
    registry["selftest"] = (st, cmd_selftest)

    return parser, registry


def _scan_option(argv, name):
    for i, tok in enumerate(argv):
        if tok == name and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith(name + "="):
            return tok.split("=", 1)[1]
    return None


def _load_config_file(path: str) -> dict:
    with open(path, "rb") as fh:
        blob = fh.read()
    if path.endswith(".json"):
        data = json.loads(blob)
    else:
        data = tomllib.loads(blob.decode())
    if not isinstance(data, dict):
        raise ValueError("config file must hold a table of parameters")
    return data


def _merge_config(argv, parser, registry) -> None:
    cfg_path = _scan_option(argv, "--config")
    if cfg_path is None:
        return
    command = next((tok for tok in argv if not tok.startswith("-")), None)
    if command not in registry:
        parser.error("--config requires a known subcommand")
    sub = registry[command][0]
    known = {a.dest for a in sub._actions} - {"help", "config"}
    data = _load_config_file(cfg_path)
    unknown = sorted(set(data) - known)
    if unknown:
        raise ValueError("unknown config keys for %s: %s"
                         % (command, ", ".join(unknown)))
    sub.set_defaults(**data)


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, registry = build_parser()
    try:
        _merge_config(argv, parser, registry)
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 2
        return registry[args.command][1](args)
    except (ValueError, OSError) as exc:
        print("gausscap: error: %s" % exc, file=sys.stderr)
        return 2
    except (InvariantViolation, BoundViolationError) as exc:
        print("gausscap: invariant violation: %s" % exc, file=sys.stderr)
        return 4
    except RuntimeError as exc:
        print("gausscap: numerical failure: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
