"""Monte-Carlo BER experiments: epsilon sweeps and tail-error statistics.

Every trial is fully determined by (seed, parameters): trial i of a point
uses seed base_seed + i, and all methods at a point share the same source
and side-information realizations, so method comparisons are paired.
Trials are independent work items; results are aggregated in task order,
so sweeps are byte-identical regardless of the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .channel import SourceModel, gen_side_info, gen_source, joint_entropy
from .codec import CodecParams, encode
from .decoder import DecoderParams, MetricVariant, decode_with_truth
from .interval import ArithMode
from .linear_codes import CodeSpec, parity

KNOWN_CODES = ("none", "crc16", "bch", "ldpc16", "bpc16")


@dataclass(frozen=True)
class SweepConfig:
    n: int
    p0: float
    alpha: float
    t: int
    M: int
    metric: MetricVariant = MetricVariant.MDAC_EQ3
    codes: tuple[str, ...] = ("none", "crc16")
    epsilons: tuple[float, ...] = ()
    trials: int = 100
    base_seed: int = 0
    mode: ArithMode = ArithMode.FIXED64

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"need at least one trial, got {self.trials}")
        eps = self.epsilons
        if any(not (0 <= e < 0.5) for e in eps):
            raise ValueError(f"epsilon grid must lie in [0, 0.5): {eps}")
        if any(a >= b for a, b in zip(eps, eps[1:])):
            raise ValueError(f"epsilon grid must be strictly increasing: {eps}")
        for code in self.codes:
            if code not in KNOWN_CODES:
                raise ValueError(f"unknown code kind {code!r}")

    def methods(self) -> list[str]:
        out = []
        for code in self.codes:
            out.append(self.metric.value if code == "none" else f"dalc-{code}")
        return out


def method_components(method: str, config: SweepConfig) -> tuple[MetricVariant, CodeSpec]:
    if method == "mdac":
        return MetricVariant.MDAC_EQ3, CodeSpec.none()
    if method == "dac":
        return MetricVariant.DAC_EQ1, CodeSpec.none()
    if method.startswith("dalc-"):
        return config.metric, CodeSpec.from_name(method[len("dalc-") :])
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class TrialRecord:
    seed: int
    errors: int
    verified: bool
    rank: int
    tail_errors: int
    correct_path_present: bool
    rate_bits: int  # codeword bits + parity bits


@dataclass
class MethodAggregate:
    ber: float
    verified_fraction: float
    tail_error_proportion: Optional[float]  # None when no errors occurred
    mean_rate_bits_per_symbol: float
    trials: int


@dataclass
class SweepRow:
    epsilon: float
    h_xy: float
    per_method: dict[str, MethodAggregate] = field(default_factory=dict)


@lru_cache(maxsize=64)
def _codec(n: int, p0: float, alpha: float, t: int, mode: ArithMode) -> CodecParams:
    return CodecParams(n=n, p0=p0, alpha=alpha, t=t, mode=mode)


def run_trial(seed: int, config: SweepConfig, method: str, epsilon: float) -> TrialRecord:
    codec = _codec(config.n, config.p0, config.alpha, config.t, config.mode)
    metric, spec = method_components(method, config)
    model = SourceModel(p0=config.p0, epsilon=epsilon, seed=seed)
    x = gen_source(config.n, model)
    y = gen_side_info(x, model)
    z = parity(x, spec) if spec.parity_len else np.zeros(0, dtype=np.uint8)
    enc = encode(x, codec)
    dparams = DecoderParams(codec=codec, M=config.M, metric=metric, epsilon=epsilon, spec=spec)
    res = decode_with_truth(enc.codeword, y, z, dparams, x)
    diff = res.bits != x
    errors = int(diff.sum())
    half = math.ceil(config.n / 2)
    tail_errors = int(diff[half:].sum())
    return TrialRecord(
        seed=seed,
        errors=errors,
        verified=res.verified,
        rank=res.rank,
        tail_errors=tail_errors,
        correct_path_present=bool(res.stats.correct_path_present),
        rate_bits=enc.rate_bits + spec.parity_len,
    )


def _trial_task(args) -> TrialRecord:
    seed, config, method, epsilon = args
    return run_trial(seed, config, method, epsilon)


def _run_tasks(tasks, jobs: int):
    if jobs <= 1:
        return [_trial_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, len(tasks) // (jobs * 8))
        return list(pool.map(_trial_task, tasks, chunksize=chunk))


def aggregate(records: list[TrialRecord], n: int) -> MethodAggregate:
    trials = len(records)
    total_errors = sum(r.errors for r in records)
    total_tail = sum(r.tail_errors for r in records)
    return MethodAggregate(
        ber=total_errors / (trials * n),
        verified_fraction=sum(r.verified for r in records) / trials,
        tail_error_proportion=(total_tail / total_errors) if total_errors else None,
        mean_rate_bits_per_symbol=sum(r.rate_bits for r in records) / (trials * n),
        trials=trials,
    )


def run_sweep(config: SweepConfig, jobs: int = 1) -> list[SweepRow]:
    """One row per epsilon, each holding per-method aggregates."""
    methods = config.methods()
    tasks = []
    for eps in config.epsilons:
        for method in methods:
            for i in range(config.trials):
                tasks.append((config.base_seed + i, config, method, eps))
    results = _run_tasks(tasks, jobs)

    rows = []
    pos = 0
    for eps in config.epsilons:
        row = SweepRow(epsilon=eps, h_xy=joint_entropy(config.p0, eps))
        for method in methods:
            records = results[pos : pos + config.trials]
            pos += config.trials
            row.per_method[method] = aggregate(records, config.n)
        rows.append(row)
    return rows


def tail_proportion_report(
    config: SweepConfig, t_grid: tuple[int, ...], jobs: int = 1
) -> list[dict]:
    """Fraction of errors in the block's latter half, with/without CRC, per t.

    Aggregates over the config's whole epsilon grid; points with zero total
    errors report None rather than 0/0.
    """
    out = []
    for t in t_grid:
        cfg = SweepConfig(
            n=config.n,
            p0=config.p0,
            alpha=config.alpha,
            t=t,
            M=config.M,
            metric=config.metric,
            codes=("none", "crc16"),
            epsilons=config.epsilons,
            trials=config.trials,
            base_seed=config.base_seed,
            mode=config.mode,
        )
        report_row = {"t": t}
        for method, key in ((cfg.metric.value, "without_crc"), ("dalc-crc16", "with_crc")):
            tasks = [
                (cfg.base_seed + i, cfg, method, eps)
                for eps in cfg.epsilons
                for i in range(cfg.trials)
            ]
            records = _run_tasks(tasks, jobs)
            errors = sum(r.errors for r in records)
            tail = sum(r.tail_errors for r in records)
            report_row[key] = (tail / errors) if errors else None
        out.append(report_row)
    return out
