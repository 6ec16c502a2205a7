"""Reproducible experiment driver.

Parses flat key-value configs, builds ensembles per requested size,
dispatches to the library, and writes CSV results plus a JSON manifest with
seed, checksums, and version.  Outputs are byte-identical for a fixed
(config, seed) regardless of the thread count: every trial draws from its
own derived stream and rows are written in a fixed order by a single
thread.

Exit codes: 0 success, 2 unknown command / bad usage, 3 malformed config,
4 unwritable output path.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .concentration import bernstein_tail_check, empirical_tail
from .ensembles import (
    EnsembleSpec,
    EntryLaw,
    VarianceProfile,
    condition_sums,
    gaussian_row_check,
    heavy_tail_spec,
    sample_trial,
    wigner_unit_spec,
)
from .hermitian_core import eigenvalues_desc
from .reductions import auto_eta, pipeline
from .spectral_measures import (
    RampFunction,
    SemicircleLaw,
    esd,
    expected_esd,
    kolmogorov_distance,
    levy_distance,
    semicircle_moment,
)
from .stieltjes import invert_on_grid, semicircle_stieltjes, stieltjes_atomic
from .walk_combinatorics import (
    ORACLE_MAX_K,
    ORACLE_MAX_N,
    classify,
    enumerate_canonical_walks,
    walk_sum_moment,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "RunManifest",
    "parse_config_text",
    "validate",
    "run",
    "main",
]

COMMANDS = (
    "simulate",
    "moments",
    "walks",
    "stieltjes",
    "concentration",
    "reduce",
    "conditions",
)

LAW_BUILDERS: dict[str, Callable[..., EntryLaw]] = {
    "rademacher": EntryLaw.rademacher,
    "gaussian_real": EntryLaw.gaussian_real,
    "gaussian_complex": EntryLaw.gaussian_complex,
    "uniform_bounded": EntryLaw.uniform_bounded,
    "constant_zero": EntryLaw.constant_zero,
}


class ConfigError(ValueError):
    """Raised for configs that cannot be parsed or fail validation."""


# -- config parsing ----------------------------------------------------------

def parse_config_text(text: str) -> dict[str, str]:
    """Flat `key = value` lines; '#' starts a comment; later keys override."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        out[key] = value.strip()
    return out


def _get_int(m: dict[str, str], key: str, default: int | None = None) -> int:
    if key not in m:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    try:
        return int(m[key])
    except ValueError as exc:
        raise ConfigError(f"{key}: expected integer, got {m[key]!r}") from exc


def _get_float(m: dict[str, str], key: str, default: float | None = None) -> float:
    if key not in m:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    try:
        return float(m[key])
    except ValueError as exc:
        raise ConfigError(f"{key}: expected number, got {m[key]!r}") from exc


def _get_bool(m: dict[str, str], key: str, default: bool = False) -> bool:
    if key not in m:
        return default
    v = m[key].lower()
    if v in ("true", "1", "yes", "on"):
        return True
    if v in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected boolean, got {m[key]!r}")


def _split_list(value: str) -> list[str]:
    return [p.strip() for p in value.split(",") if p.strip()]


def _get_int_list(m: dict[str, str], key: str) -> tuple[int, ...]:
    if key not in m:
        return ()
    try:
        return tuple(int(p) for p in _split_list(m[key]))
    except ValueError as exc:
        raise ConfigError(f"{key}: expected integers, got {m[key]!r}") from exc


def _get_float_list(m: dict[str, str], key: str) -> tuple[float, ...]:
    if key not in m:
        return ()
    try:
        return tuple(float(p) for p in _split_list(m[key]))
    except ValueError as exc:
        raise ConfigError(f"{key}: expected numbers, got {m[key]!r}") from exc


def _get_complex_list(m: dict[str, str], key: str) -> tuple[complex, ...]:
    if key not in m:
        return ()
    try:
        return tuple(complex(p.replace(" ", "")) for p in _split_list(m[key]))
    except ValueError as exc:
        raise ConfigError(f"{key}: expected complex numbers, got {m[key]!r}") from exc


@dataclass(frozen=True)
class EnsembleConfig:
    """Declarative ensemble block; built into an EnsembleSpec per size."""

    preset: str | None = None
    law_kind: str = "gaussian_real"
    alpha: float = 0.0
    scale: float = 0.0
    profile_kind: str = "uniform"
    variance: str = "1/n"
    band_width: int = 0
    band_inside: str = "1/n"
    band_outside: str = "0"
    diagonal_law: str | None = None

    def _law(self) -> EntryLaw:
        if self.law_kind == "pareto_symmetric":
            return EntryLaw.pareto_symmetric(self.alpha, self.scale)
        if self.law_kind in LAW_BUILDERS:
            return LAW_BUILDERS[self.law_kind]()
        raise ConfigError(f"unknown entry law {self.law_kind!r}")

    @staticmethod
    def _value(expr: str, n: int) -> float:
        if expr == "1/n":
            return 1.0 / n
        try:
            return float(expr)
        except ValueError as exc:
            raise ConfigError(f"expected number or '1/n', got {expr!r}") from exc

    def build(self, n: int, seed: int) -> EnsembleSpec:
        if self.preset == "wigner_unit":
            return wigner_unit_spec(n, self._law(), seed=seed)
        if self.preset == "heavy_tail":
            return heavy_tail_spec(n, seed=seed)
        if self.preset is not None:
            raise ConfigError(f"unknown ensemble preset {self.preset!r}")
        if self.profile_kind == "uniform":
            profile = VarianceProfile.uniform(self._value(self.variance, n))
        elif self.profile_kind == "banded":
            profile = VarianceProfile.banded(
                self.band_width,
                self._value(self.band_inside, n),
                self._value(self.band_outside, n),
            )
        else:
            raise ConfigError(f"unknown profile kind {self.profile_kind!r}")
        dlaw = None
        if self.diagonal_law is not None:
            if self.diagonal_law not in LAW_BUILDERS:
                raise ConfigError(f"unknown diagonal law {self.diagonal_law!r}")
            dlaw = LAW_BUILDERS[self.diagonal_law]()
        return EnsembleSpec(n, self._law(), profile, diagonal_law=dlaw, seed=seed)

    @classmethod
    def from_mapping(cls, m: dict[str, str]) -> "EnsembleConfig":
        return cls(
            preset=m.get("ensemble.preset"),
            law_kind=m.get("ensemble.law", "gaussian_real"),
            alpha=_get_float(m, "ensemble.alpha", 0.0),
            scale=_get_float(m, "ensemble.scale", 0.0),
            profile_kind=m.get("ensemble.profile", "uniform"),
            variance=m.get("ensemble.variance", "1/n"),
            band_width=_get_int(m, "ensemble.band_width", 0),
            band_inside=m.get("ensemble.band_inside", "1/n"),
            band_outside=m.get("ensemble.band_outside", "0"),
            diagonal_law=m.get("ensemble.diagonal_law"),
        )


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: a command plus everything needed to reproduce it."""

    command: str
    sizes: tuple[int, ...]
    trials: int
    seed: int
    out_dir: str
    threads: int = 1
    ensemble: EnsembleConfig = field(default_factory=EnsembleConfig)
    k_list: tuple[int, ...] = ()
    exact_oracle: bool = False
    z_list: tuple[complex, ...] = ()
    grid: tuple[float, float, float] | None = None
    bandwidth: float = 1e-2
    c_bound: float = 1.0
    eps_list: tuple[float, ...] = (0.125, 0.25, 0.5, 1.0)
    t_list: tuple[float, ...] = ()
    ramp_p: float = -0.5
    ramp_q: float = 0.5
    bernoulli_p: float = 0.0
    bernoulli_count: int = 0
    bernoulli_x: float = 0.0
    eta: float | None = None
    raw: tuple[tuple[str, str], ...] = ()

    @classmethod
    def from_mapping(cls, m: dict[str, str]) -> "ExperimentConfig":
        grid_vals = _get_float_list(m, "stieltjes.grid")
        if grid_vals and len(grid_vals) != 3:
            raise ConfigError("stieltjes.grid: expected 'min, max, step'")
        eta_raw = m.get("reduce.eta", "auto")
        eta = None
        if eta_raw != "auto":
            try:
                eta = float(eta_raw)
            except ValueError as exc:
                raise ConfigError(f"reduce.eta: expected number or 'auto', got {eta_raw!r}") from exc
        eps = _get_float_list(m, "conditions.eps")
        return cls(
            command=m.get("command", ""),
            sizes=_get_int_list(m, "sizes"),
            trials=_get_int(m, "trials", 1),
            seed=_get_int(m, "seed", 0),
            out_dir=m.get("out", "results"),
            threads=_get_int(m, "threads", 1),
            ensemble=EnsembleConfig.from_mapping(m),
            k_list=_get_int_list(m, "moments.k") or _get_int_list(m, "walks.k"),
            exact_oracle=_get_bool(m, "moments.exact_oracle", False),
            z_list=_get_complex_list(m, "stieltjes.z"),
            grid=tuple(grid_vals) if grid_vals else None,
            bandwidth=_get_float(m, "stieltjes.bandwidth", 1e-2),
            c_bound=_get_float(m, "conditions.c", _get_float(m, "reduce.c", 1.0)),
            eps_list=eps if eps else (0.125, 0.25, 0.5, 1.0),
            t_list=_get_float_list(m, "concentration.t"),
            ramp_p=_get_float(m, "concentration.ramp_p", -0.5),
            ramp_q=_get_float(m, "concentration.ramp_q", 0.5),
            bernoulli_p=_get_float(m, "concentration.bernoulli_p", 0.0),
            bernoulli_count=_get_int(m, "concentration.bernoulli_count", 0),
            bernoulli_x=_get_float(m, "concentration.bernoulli_x", 0.0),
            eta=eta,
            raw=tuple(sorted(m.items())),
        )


@dataclass(frozen=True)
class RunManifest:
    """Provenance record: config echo, seed, checksums, wall time, version."""

    command: str
    master_seed: int
    config: tuple[tuple[str, str], ...]
    checksums: tuple[tuple[str, str], ...]
    wall_time_s: float
    version: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "master_seed": self.master_seed,
                "config": dict(self.config),
                "checksums": dict(self.checksums),
                "wall_time_s": self.wall_time_s,
                "version": self.version,
            },
            indent=2,
            sort_keys=True,
        )


def validate(config: ExperimentConfig) -> list[str]:
    """All problems with the config; an empty list means runnable."""
    diags: list[str] = []
    if config.command not in COMMANDS:
        diags.append(f"unknown command: {config.command!r}")
        return diags
    needs_sizes = config.command != "walks"
    if needs_sizes:
        if not config.sizes:
            diags.append("sizes must be nonempty")
        elif any(n < 1 for n in config.sizes):
            diags.append("sizes must be positive")
    if config.trials < 1:
        diags.append("trials must be at least 1")
    if config.threads < 1:
        diags.append("threads must be at least 1")
    if config.sizes and not diags:
        for n in config.sizes:
            try:
                config.ensemble.build(n, config.seed)
            except (ConfigError, ValueError) as exc:
                diags.append(f"ensemble at n={n}: {exc}")
                break
    cmd = config.command
    if cmd in ("moments", "walks") and not config.k_list:
        diags.append(f"{cmd}.k must be nonempty")
    if cmd == "moments" and any(k < 1 for k in config.k_list):
        diags.append("moments.k must be positive")
    if cmd == "moments" and config.exact_oracle:
        try:
            law = config.ensemble.build(max(config.sizes or (1,)), config.seed).law
        except (ConfigError, ValueError):
            law = None
        if law is not None and config.k_list and not law.has_moments_to(max(config.k_list)):
            diags.append("oracle requires finite moments")
        if config.sizes and max(config.sizes) > ORACLE_MAX_N:
            diags.append(f"exact oracle limited to n <= {ORACLE_MAX_N}")
        if config.k_list and max(config.k_list) > ORACLE_MAX_K:
            diags.append(f"exact oracle limited to k <= {ORACLE_MAX_K}")
    if cmd == "walks" and config.k_list:
        if min(config.k_list) < 1:
            diags.append("walks.k must be positive")
        if max(config.k_list) > 12:
            diags.append("walk census limited to k <= 12")
    if cmd == "stieltjes":
        if not config.z_list:
            diags.append("stieltjes.z must be nonempty")
        elif any(z.imag <= 0 for z in config.z_list):
            diags.append("stieltjes points must lie in the upper half plane")
        if config.grid is not None:
            lo, hi, step = config.grid
            if not (step > 0 and hi > lo):
                diags.append("stieltjes.grid must satisfy min < max and step > 0")
        if config.bandwidth <= 0:
            diags.append("stieltjes.bandwidth must be positive")
    if cmd == "conditions":
        if config.c_bound <= 0:
            diags.append("conditions.c must be positive")
        if any(e <= 0 for e in config.eps_list):
            diags.append("conditions.eps must be positive")
    if cmd == "concentration":
        if not config.t_list:
            diags.append("concentration.t must be nonempty")
        elif any(t <= 0 for t in config.t_list):
            diags.append("concentration.t must be positive")
        if config.ramp_p >= config.ramp_q:
            diags.append("concentration ramp requires ramp_p < ramp_q")
        if config.trials < 100:
            diags.append("concentration needs at least 100 trials")
        if config.bernoulli_count and not (0 <= config.bernoulli_p <= 1):
            diags.append("concentration.bernoulli_p must lie in [0, 1]")
    if cmd == "reduce":
        if config.eta is not None and config.eta <= 0:
            diags.append("reduce.eta must be positive or 'auto'")
        if config.c_bound <= 0:
            diags.append("reduce.c must be positive")
    return diags


# -- output helpers ----------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])


def _parallel_map(fn: Callable, items: Sequence, threads: int) -> list:
    """Order-preserving map; results do not depend on the thread count."""
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _trial_eigenvalues(spec: EnsembleSpec, trials: int, threads: int) -> list[np.ndarray]:
    return _parallel_map(
        lambda t: eigenvalues_desc(sample_trial(spec, t)), range(trials), threads
    )


# -- commands ----------------------------------------------------------------

def _cmd_simulate(config: ExperimentConfig, out: Path) -> list[Path]:
    sc = SemicircleLaw()
    rows = []
    for n in config.sizes:
        spec = config.ensemble.build(n, config.seed)

        def one(trial: int) -> tuple[float, float]:
            dist = esd(eigenvalues_desc(sample_trial(spec, trial)))
            return levy_distance(dist, sc), kolmogorov_distance(dist, sc)

        for trial, (lv, kv) in enumerate(_parallel_map(one, range(config.trials), config.threads)):
            rows.append((n, trial, lv, kv))
    path = out / "simulate.csv"
    _write_csv(path, ("n", "trial", "levy_to_sc", "kolmogorov_to_sc"), rows)
    return [path]


def _cmd_moments(config: ExperimentConfig, out: Path) -> list[Path]:
    rows = []
    oracle_rows = []
    for n in config.sizes:
        spec = config.ensemble.build(n, config.seed)
        eigs = _trial_eigenvalues(spec, config.trials, config.threads)
        for k in config.k_list:
            empirical = float(np.mean([np.mean(lam**k) for lam in eigs]))
            catalan = semicircle_moment(k)
            rows.append((n, k, config.trials, empirical, catalan, abs(empirical - catalan)))
            if config.exact_oracle:
                exact = walk_sum_moment(spec.law, spec.profile, n, k)
                oracle_rows.append((n, k, exact, empirical, abs(empirical - exact)))
    path = out / "moments.csv"
    _write_csv(path, ("n", "k", "trials", "empirical", "catalan", "abs_err"), rows)
    written = [path]
    if config.exact_oracle:
        opath = out / "moments_oracle.csv"
        _write_csv(opath, ("n", "k", "walk_sum", "empirical", "abs_err"), oracle_rows)
        written.append(opath)
    return written


def _cmd_walks(config: ExperimentConfig, out: Path) -> list[Path]:
    rows = []
    for k in config.k_list:
        for class_id, walk in enumerate(enumerate_canonical_walks(k)):
            rows.append(
                (
                    k,
                    walk.t,
                    class_id,
                    "-".join(str(c) for c in walk.sequence),
                    classify(walk).value,
                )
            )
    path = out / "walks.csv"
    _write_csv(path, ("k", "t", "class_id", "sequence", "classification"), rows)
    return [path]


def _cmd_stieltjes(config: ExperimentConfig, out: Path) -> list[Path]:
    rows = []
    written = []
    density_paths = []
    for n in config.sizes:
        spec = config.ensemble.build(n, config.seed)
        eigs = _trial_eigenvalues(spec, config.trials, config.threads)
        pooled = expected_esd(esd(lam) for lam in eigs)
        for z in config.z_list:
            s = stieltjes_atomic(pooled, z)
            sc = semicircle_stieltjes(z)
            residual = abs(s + 1.0 / (z + s))
            rows.append((n, z.real, z.imag, s.real, s.imag, sc.real, sc.imag, residual))
        if config.grid is not None:
            lo, hi, step = config.grid
            pts = np.arange(lo, hi + 0.5 * step, step)
            dens = invert_on_grid(lambda zz: stieltjes_atomic(pooled, zz), config.bandwidth, pts)
            dpath = out / f"density_n{n}.csv"
            _write_csv(dpath, ("a", "density"), list(zip(dens.grid, dens.values)))
            density_paths.append(dpath)
    path = out / "stieltjes.csv"
    _write_csv(
        path,
        ("n", "z_re", "z_im", "s_re", "s_im", "sc_re", "sc_im", "residual"),
        rows,
    )
    written.append(path)
    written.extend(density_paths)
    return written


def _cmd_conditions(config: ExperimentConfig, out: Path) -> list[Path]:
    rows = []
    for n in config.sizes:
        spec = config.ensemble.build(n, config.seed)
        base = condition_sums(spec, config.c_bound, config.eps_list)
        gauss = gaussian_row_check(spec, config.eps_list).gauss_conditions
        tail_by_eps = dict(gauss.tail_prob_sums)
        lind_by_eps = dict(base.lindeberg)
        for eps in config.eps_list:
            rows.append(
                (
                    n,
                    base.C,
                    eps,
                    base.var_row_sum_stat,
                    base.row_excess_stat,
                    lind_by_eps[eps],
                    tail_by_eps[eps],
                    gauss.truncated_mean_sum,
                    gauss.truncated_variance_sum,
                    base.finite_variance,
                )
            )
    path = out / "conditions.csv"
    _write_csv(
        path,
        (
            "n",
            "c",
            "eps",
            "var_row_sum",
            "row_excess",
            "lindeberg",
            "tail_prob_row_max",
            "trunc_mean_row_max",
            "trunc_var_row_worst",
            "finite_variance",
        ),
        rows,
    )
    return [path]


def _cmd_concentration(config: ExperimentConfig, out: Path) -> list[Path]:
    rows = []
    ramp = RampFunction(config.ramp_p, config.ramp_q)
    for n in config.sizes:
        spec = config.ensemble.build(n, config.seed)
        estimates = empirical_tail(
            spec, ramp, list(config.t_list), config.trials, threads=config.threads
        )
        for est in estimates:
            rows.append(
                (est.statistic_name, est.t, est.empirical_prob, est.bound, est.trials, n, config.seed)
            )
    if config.bernoulli_count > 0 and config.bernoulli_x > 0:
        probs = [config.bernoulli_p] * config.bernoulli_count
        est = bernstein_tail_check(probs, config.bernoulli_x, config.trials, seed=config.seed)
        rows.append(
            (
                est.statistic_name,
                est.t,
                est.empirical_prob,
                est.bound,
                est.trials,
                config.bernoulli_count,
                config.seed,
            )
        )
    path = out / "concentration.csv"
    _write_csv(path, ("statistic", "t", "empirical", "bound", "trials", "n", "seed"), rows)
    return [path]


def _cmd_reduce(config: ExperimentConfig, out: Path) -> list[Path]:
    rows = []
    for n in config.sizes:
        spec = config.ensemble.build(n, config.seed)
        eta = config.eta if config.eta is not None else auto_eta(spec)

        def one(trial: int):
            w = sample_trial(spec, trial)
            _, trace = pipeline(w, spec, eta, config.c_bound)
            coeffs = trace.rescale_coeffs
            d = trace.frobenius_delta_sq_per_stage
            return (
                trace.eta,
                trace.truncated_count,
                trace.centering_norm_sq,
                d[0],
                d[1],
                d[2],
                float(coeffs.min()),
                float(coeffs.max()),
            )

        for trial, vals in enumerate(_parallel_map(one, range(config.trials), config.threads)):
            rows.append((n, trial) + vals)
    path = out / "reduce.csv"
    _write_csv(
        path,
        (
            "n",
            "trial",
            "eta",
            "truncated_count",
            "centering_norm_sq",
            "delta_truncate",
            "delta_centralize",
            "delta_rescale",
            "coeff_min",
            "coeff_max",
        ),
        rows,
    )
    return [path]


_COMMAND_FNS = {
    "simulate": _cmd_simulate,
    "moments": _cmd_moments,
    "walks": _cmd_walks,
    "stieltjes": _cmd_stieltjes,
    "conditions": _cmd_conditions,
    "concentration": _cmd_concentration,
    "reduce": _cmd_reduce,
}


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    h.update(path.read_bytes())
    return h.hexdigest()


def run(config: ExperimentConfig) -> RunManifest:
    """Execute one experiment and persist CSVs plus manifest.json."""
    diags = validate(config)
    if diags:
        raise ConfigError("; ".join(diags))
    t0 = time.perf_counter()
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = _COMMAND_FNS[config.command](config, out)
    checksums = tuple((p.name, _sha256(p)) for p in written)
    manifest = RunManifest(
        command=config.command,
        master_seed=config.seed,
        config=config.raw,
        checksums=checksums,
        wall_time_s=time.perf_counter() - t0,
        version=__version__,
    )
    (out / "manifest.json").write_text(manifest.to_json() + "\n")
    return manifest


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="wignerlab",
        description="Sample Hermitian ensembles and check semicircle-law predictions.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="path to a key = value config file")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--out", default=None, help="override the output directory")
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker threads (default: config, then WIGNERLAB_THREADS, then 1)",
    )
    args = parser.parse_args(argv)
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 3
    try:
        config = ExperimentConfig.from_mapping(parse_config_text(text))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    overrides: dict = {"command": args.command}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out is not None:
        overrides["out_dir"] = args.out
    threads = args.threads
    if threads is None and "WIGNERLAB_THREADS" in os.environ:
        try:
            threads = int(os.environ["WIGNERLAB_THREADS"])
        except ValueError:
            print("error: WIGNERLAB_THREADS must be an integer", file=sys.stderr)
            return 3
    if threads is not None:
        overrides["threads"] = threads
    config = replace(config, **overrides)
    try:
        manifest = run(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return 4
    names = ", ".join(name for name, _ in manifest.checksums)
    print(
        f"{config.command}: wrote {names} + manifest.json to {config.out_dir} "
        f"in {manifest.wall_time_s:.2f}s (seed {config.seed})"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
