"""Sampling-based estimation beyond exact-enumeration sizes.

Default estimator: sample matrices and compute each one's undetected
error probability exactly from its weight distribution, which removes
channel noise entirely (the between-matrix variance is the quantity of
interest).  Channel-sampling mode exists for block lengths beyond the
codeword-enumeration budget; its report carries the within-matrix
sampling variance so the between-matrix variance can be debiased.

Reproducibility: worker substreams are counter-based Philox streams
derived from (seed, worker index), so identical (seed, workers) yields
identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ensemble import BernoulliEnsemble
from .gf2 import (DEFAULT_ENUM_BUDGET_LOG2, BitMatrix, pu_from_weights,
                  weight_distribution)

# Two-sided normal level for the +-4 standard error intervals reported.
CI_Z = 4.0
CI_LEVEL = 0.9999367


@dataclass(frozen=True)
class SimConfig:
    ensemble: BernoulliEnsemble
    eps: float
    matrix_samples: int
    channel_trials: int = 0      # 0 = exact per-matrix P_U
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if not 0.0 < self.eps < 0.5:
            raise ValueError(f"need 0 < eps < 1/2, got {self.eps}")
        if self.matrix_samples < 1:
            raise ValueError("matrix_samples must be >= 1")
        if self.channel_trials < 0:
            raise ValueError("channel_trials must be >= 0")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class SampleStats:
    """Single-pass mean/variance accumulator (Welford), mergeable."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0
    min: float = math.inf
    max: float = -math.inf

    def update(self, x: float) -> None:
        self.count += 1
        delta = x - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (x - self.mean)
        self.min = min(self.min, x)
        self.max = max(self.max, x)

    def merge(self, other: "SampleStats") -> "SampleStats":
        if other.count == 0:
            return self
        if self.count == 0:
            self.count = other.count
            self.mean = other.mean
            self.m2 = other.m2
            self.min = other.min
            self.max = other.max
            return self
        total = self.count + other.count
        delta = other.mean - self.mean
        self.m2 += other.m2 + delta * delta * self.count * other.count / total
        self.mean += delta * other.count / total
        self.count = total
        self.min = min(self.min, other.min)
        self.max = max(self.max, other.max)
        return self

    @property
    def variance(self) -> float:
        """Unbiased sample variance (divides by count - 1)."""
        if self.count < 2:
            return math.nan
        return self.m2 / (self.count - 1)

    @property
    def mean_se(self) -> float:
        if self.count < 2:
            return math.nan
        return math.sqrt(self.variance / self.count)

    @property
    def variance_se(self) -> float:
        """Normal-approximation standard error of the sample variance."""
        if self.count < 2:
            return math.nan
        return self.variance * math.sqrt(2.0 / (self.count - 1))


def worker_rng(seed: int, worker: int) -> np.random.Generator:
    """Counter-based substream for one worker; stable per (seed, worker)."""
    return np.random.Generator(np.random.Philox(key=seed).jumped(worker))


def sample_matrix(ens: BernoulliEnsemble, rng: np.random.Generator) -> BitMatrix:
    """One matrix with i.i.d. Bernoulli(p) entries."""
    bits = rng.random((ens.m, ens.n)) < ens.p
    packed = np.packbits(bits, axis=1, bitorder="little")
    rows = tuple(int.from_bytes(packed[i].tobytes(), "little")
                 for i in range(ens.m))
    return BitMatrix(ens.m, ens.n, rows)


def _worker_ranges(total: int, workers: int) -> list[int]:
    base, extra = divmod(total, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def sample_pu_stats(ens: BernoulliEnsemble, eps_list: Sequence[float],
                    matrix_samples: int, seed: int = 0, workers: int = 1,
                    budget_log2: int = DEFAULT_ENUM_BUDGET_LOG2
                    ) -> dict[float, SampleStats]:
    """Exact per-matrix P_U across a list of eps values, sharing the
    sampled matrices (the weight distribution is computed once each)."""
    stats = {eps: SampleStats() for eps in eps_list}
    for widx, nsamp in enumerate(_worker_ranges(matrix_samples, workers)):
        rng = worker_rng(seed, widx)
        part = {eps: SampleStats() for eps in eps_list}
        for _ in range(nsamp):
            h = sample_matrix(ens, rng)
            wd = weight_distribution(h, budget_log2)
            for eps in eps_list:
                part[eps].update(pu_from_weights(wd.counts, ens.n, eps))
        for eps in eps_list:
            stats[eps].merge(part[eps])
    return stats


def estimate_pu_channel(h: BitMatrix, eps: float, trials: int,
                        rng: np.random.Generator) -> dict:
    """Frequency estimate of P_U(H) by sampling BSC error vectors."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0.0 < eps < 0.5:
        raise ValueError(f"need 0 < eps < 1/2, got {eps}")
    ht = np.array([[(r >> j) & 1 for r in h.rows] for j in range(h.n)],
                  dtype=np.uint8)
    hits = 0
    remaining = trials
    chunk = 1 << 16
    while remaining > 0:
        t = min(chunk, remaining)
        errs = (rng.random((t, h.n)) < eps).astype(np.uint8)
        syndrome = (errs @ ht) & 1
        undetected = (~syndrome.any(axis=1)) & errs.any(axis=1)
        hits += int(undetected.sum())
        remaining -= t
    p_hat = hits / trials
    se = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return {
        "estimate": p_hat,
        "se": se,
        "ci_low": max(0.0, p_hat - CI_Z * se),
        "ci_high": min(1.0, p_hat + CI_Z * se),
        "ci_level": CI_LEVEL,
        "trials": trials,
    }


def estimate_pu_distribution(cfg: SimConfig,
                             budget_log2: int = DEFAULT_ENUM_BUDGET_LOG2
                             ) -> dict:
    """Mean and variance of P_U over sampled matrices, with 4-SE normal
    confidence intervals."""
    ens = cfg.ensemble
    if cfg.channel_trials == 0:
        stats = sample_pu_stats(ens, [cfg.eps], cfg.matrix_samples,
                                cfg.seed, cfg.workers, budget_log2)[cfg.eps]
        within_var = 0.0
        mode = "exact"
    else:
        stats = SampleStats()
        within = []
        for widx, nsamp in enumerate(
                _worker_ranges(cfg.matrix_samples, cfg.workers)):
            rng = worker_rng(cfg.seed, widx)
            for _ in range(nsamp):
                h = sample_matrix(ens, rng)
                rep = estimate_pu_channel(h, cfg.eps, cfg.channel_trials, rng)
                stats.update(rep["estimate"])
                within.append(rep["se"] ** 2)
        within_var = float(np.mean(within))
        mode = "channel"
    mean_se = stats.mean_se
    # In channel mode the plug-in variance includes the per-matrix
    # sampling noise; subtracting its average debiases it.
    var_between = stats.variance - within_var
    return {
        "eps": cfg.eps,
        "mean": stats.mean,
        "mean_se": mean_se,
        "mean_ci_low": stats.mean - CI_Z * mean_se,
        "mean_ci_high": stats.mean + CI_Z * mean_se,
        "var": var_between,
        "var_se": stats.variance_se,
        "within_matrix_var": within_var,
        "ci_level": CI_LEVEL,
        "min": stats.min,
        "max": stats.max,
        "samples": stats.count,
        "mode": mode,
        "seed": cfg.seed,
        "workers": cfg.workers,
    }
