"""Monte Carlo comparison of overlap estimators.

Every (scenario, size cell, repetition, group) draws from its own
substream derived from the master seed, so a report depends only on the
config and never on thread count or execution order.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

import jsonschema
import numpy as np

from .distributions import Convention, NormalParams, derive_stream, sample_normal
from .errors import (
    ConfigError,
    DegenerateSample,
    DomainError,
    NoConvergence,
    OracleFailure,
    ParameterError,
    ZeroMSE,
)
from .estimators import EstimatorSpec, evaluate, resolve_r
from .quadrature import exact_ovl

__all__ = [
    "Scenario",
    "SimulationConfig",
    "CellMetrics",
    "MetricsReport",
    "average_estimate",
    "relative_bias",
    "rrmse",
    "mse",
    "efficiency",
    "mc_std_error",
    "run_scenario",
    "run_simulation",
    "load_config",
    "config_from_dict",
    "bundled_config",
]

_MAX_SEED = 2**64 - 1


# -- metrics ------------------------------------------------------------------


def _check_delta(delta):
    if not delta > 0:
        raise DomainError(f"reference delta must be > 0, got {delta}")


def average_estimate(estimates):
    estimates = list(estimates)
    if not estimates:
        raise ParameterError("no estimates")
    return math.fsum(estimates) / len(estimates)


def relative_bias(av, delta):
    _check_delta(delta)
    return (av - delta) / delta


def mse(estimates, delta):
    estimates = np.asarray(estimates, dtype=float)
    if estimates.size == 0:
        raise ParameterError("no estimates")
    return math.fsum((estimates - delta) ** 2) / estimates.size


def rrmse(estimates, delta):
    _check_delta(delta)
    return math.sqrt(mse(estimates, delta)) / delta


def efficiency(comparator_estimates, candidate_estimates, delta):
    """MSE of the comparator divided by MSE of the candidate (paired draws)."""
    if len(comparator_estimates) != len(candidate_estimates):
        raise ParameterError("efficiency needs paired sequences of equal length")
    num = mse(comparator_estimates, delta)
    den = mse(candidate_estimates, delta)
    if den == 0.0:
        if num == 0.0:
            return 1.0
        raise ZeroMSE("candidate MSE is zero but comparator MSE is not")
    return num / den


def mc_std_error(estimates):
    """Standard error of the average: sample sd / sqrt(R); 0 for R = 1."""
    estimates = np.asarray(estimates, dtype=float)
    if estimates.size < 2:
        return 0.0
    return float(np.std(estimates, ddof=1)) / math.sqrt(estimates.size)


# -- configuration ------------------------------------------------------------


@dataclass(frozen=True)
class Scenario:
    """k populations, one or more sample-size cells, optional reference overlap."""

    name: str
    populations: tuple
    sample_sizes: tuple
    reference_delta: float | None = None

    def __post_init__(self):
        pops = tuple(p if isinstance(p, NormalParams) else NormalParams(*p) for p in self.populations)
        k = len(pops)
        if k < 2:
            raise ParameterError(f"scenario {self.name!r}: need at least two populations")
        cells = tuple(self.sample_sizes)
        if cells and not isinstance(cells[0], (tuple, list)):
            cells = (cells,)
        cells = tuple(tuple(int(n) for n in c) for c in cells)
        if not cells:
            raise ParameterError(f"scenario {self.name!r}: no sample-size cells")
        for c in cells:
            if len(c) != k:
                raise ParameterError(
                    f"scenario {self.name!r}: cell {c} has {len(c)} sizes for {k} populations"
                )
            if min(c) < 1:
                raise ParameterError(f"scenario {self.name!r}: sample sizes must be >= 1")
        if self.reference_delta is not None and not 0.0 <= self.reference_delta <= 1.0:
            raise ParameterError(f"scenario {self.name!r}: reference_delta must lie in [0, 1]")
        object.__setattr__(self, "populations", pops)
        object.__setattr__(self, "sample_sizes", cells)

    @property
    def k(self):
        return len(self.populations)

    @property
    def stream_key(self):
        # keyed by name so streams survive reordering or subsetting scenarios
        return zlib.crc32(self.name.encode("utf-8"))

    def reference(self, tol=1e-10):
        if self.reference_delta is not None:
            return float(self.reference_delta)
        try:
            return exact_ovl(self.populations, tol=tol)
        except NoConvergence as exc:
            raise OracleFailure(f"scenario {self.name!r}: {exc}") from exc


@dataclass(frozen=True)
class SimulationConfig:
    scenarios: tuple
    repetitions: int = 1000
    master_seed: int = 1234
    estimators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "scenarios", tuple(self.scenarios))
        object.__setattr__(self, "estimators", tuple(self.estimators))
        if int(self.repetitions) != self.repetitions or self.repetitions < 1:
            raise ParameterError(f"repetitions must be a positive integer, got {self.repetitions}")
        if not 0 <= int(self.master_seed) <= _MAX_SEED:
            raise ParameterError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")
        if not self.estimators:
            raise ParameterError("at least one estimator is required")
        if sum(e.is_comparator for e in self.estimators) > 1:
            raise ParameterError("at most one comparator estimator is allowed")
        names = [s.name for s in self.scenarios]
        if len(set(names)) != len(names):
            raise ParameterError("scenario names must be unique")

    @property
    def comparator_index(self):
        for i, e in enumerate(self.estimators):
            if e.is_comparator:
                return i
        return None

    def replace(self, **changes):
        values = {f: getattr(self, f) for f in ("scenarios", "repetitions", "master_seed", "estimators")}
        values.update(changes)
        return SimulationConfig(**values)


def _schema():
    text = resources.files("ovlk.data").joinpath("config.schema.json").read_text()
    return json.loads(text)


def config_from_dict(doc):
    """Validate a config document and build a SimulationConfig.

    Raises ConfigError naming the offending field.
    """
    validator = jsonschema.Draft202012Validator(_schema())
    error = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if error is not None:
        where = "/".join(str(p) for p in error.absolute_path) or "<root>"
        raise ConfigError(f"config field {where}: {error.message}")
    try:
        estimators = [
            EstimatorSpec(
                e["kind"],
                e.get("alpha", 1.0 if e["kind"] == "simpson" else None),
                e.get("r", "auto"),
                Convention(e["convention"]) if "convention" in e else None,
            )
            for e in doc["estimators"]
        ]
        scenarios = [
            Scenario(
                s["name"],
                tuple(NormalParams(*p) for p in s["populations"]),
                tuple(tuple(c) for c in s["sample_sizes"]),
                s.get("reference_delta"),
            )
            for s in doc["scenarios"]
        ]
        return SimulationConfig(
            scenarios,
            doc.get("repetitions", 1000),
            doc.get("master_seed", 1234),
            estimators,
        )
    except ParameterError as exc:
        raise ConfigError(f"config: {exc}") from exc


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return config_from_dict(doc)


def bundled_config(name="table2"):
    text = resources.files("ovlk.data").joinpath(f"{name}.json").read_text()
    return config_from_dict(json.loads(text))


# -- results ------------------------------------------------------------------


@dataclass(frozen=True)
class CellMetrics:
    scenario: str
    sizes: tuple
    estimator: EstimatorSpec
    r: int | None
    reference_delta: float
    av: float
    rb: float
    rrmse: float
    eff: float | None
    mc_std_error: float
    repetitions: int
    seed: int
    estimates: np.ndarray = field(repr=False, compare=False)


def _fmt(x):
    return "" if x is None else format(x, ".6g")


@dataclass
class MetricsReport:
    cells: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.cells)

    def __len__(self):
        return len(self.cells)

    def extend(self, other):
        self.cells.extend(other.cells)

    def get(self, scenario, sizes, label):
        sizes = tuple(sizes)
        for c in self.cells:
            if c.scenario == scenario and c.sizes == sizes and c.estimator.label == label:
                return c
        raise KeyError((scenario, sizes, label))

    def header(self):
        k = max((len(c.sizes) for c in self.cells), default=3)
        return (
            ["scenario"]
            + [f"n{i + 1}" for i in range(max(k, 3))]
            + ["estimator", "alpha", "r", "reference_delta", "av", "rb", "rrmse", "eff",
               "mc_std_error", "R", "seed"]
        )

    def to_csv(self):
        header = self.header()
        width = len(header) - 12
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for c in self.cells:
            sizes = [str(n) for n in c.sizes] + [""] * (width - len(c.sizes))
            writer.writerow(
                [c.scenario, *sizes, c.estimator.name, c.estimator.alpha_label,
                 "" if c.r is None else c.r, _fmt(c.reference_delta), _fmt(c.av), _fmt(c.rb),
                 _fmt(c.rrmse), _fmt(c.eff), _fmt(c.mc_std_error), c.repetitions, c.seed]
            )
        return buf.getvalue()


# -- running ------------------------------------------------------------------


def _draw(scenario, cell_index, sizes, rep, seed):
    return [
        sample_normal(p, n, derive_stream(seed, scenario.stream_key, cell_index, rep, g), group_id=g + 1)
        for g, (p, n) in enumerate(zip(scenario.populations, sizes))
    ]


def _run_cell(scenario, cell_index, sizes, config, threads):
    R = config.repetitions
    out = np.empty((R, len(config.estimators)))

    def work(reps):
        for rep in reps:
            samples = _draw(scenario, cell_index, sizes, rep, config.master_seed)
            try:
                out[rep] = [evaluate(spec, samples).value for spec in config.estimators]
            except DegenerateSample as exc:
                raise DegenerateSample(
                    f"scenario {scenario.name!r}, sizes {sizes}, repetition {rep}: {exc}",
                    repetition=rep,
                ) from exc

    threads = max(1, min(int(threads or os.cpu_count() or 1), R))
    if threads == 1:
        work(range(R))
    else:
        chunks = [range(i, R, threads) for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for f in [pool.submit(work, c) for c in chunks]:
                f.result()
    return out


def run_scenario(scenario: Scenario, config: SimulationConfig, threads=None) -> MetricsReport:
    """All size cells of one scenario, every estimator evaluated on the same samples."""
    delta = scenario.reference()
    report = MetricsReport()
    ci = config.comparator_index
    for cell_index, sizes in enumerate(scenario.sample_sizes):
        est = _run_cell(scenario, cell_index, sizes, config, threads)
        for j, spec in enumerate(config.estimators):
            e = est[:, j].copy()
            av = average_estimate(e)
            report.cells.append(
                CellMetrics(
                    scenario=scenario.name,
                    sizes=sizes,
                    estimator=spec,
                    r=None if spec.is_comparator else resolve_r(spec.r, sizes),
                    reference_delta=delta,
                    av=av,
                    rb=relative_bias(av, delta),
                    rrmse=rrmse(e, delta),
                    eff=None if ci is None else efficiency(est[:, ci], e, delta),
                    mc_std_error=mc_std_error(e),
                    repetitions=config.repetitions,
                    seed=int(config.master_seed),
                    estimates=e,
                )
            )
    return report


def run_simulation(config: SimulationConfig, threads=None) -> MetricsReport:
    report = MetricsReport()
    for scenario in config.scenarios:
        report.extend(run_scenario(scenario, config, threads))
    return report
