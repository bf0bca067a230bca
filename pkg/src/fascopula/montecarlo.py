"""Monte Carlo oracle for the analytic outage and gain-CDF results.

Trials are split into fixed-size blocks. Block ``b`` of a run seeded with
``seed`` draws from a Philox counter stream keyed by (seed, b), so the
result is reproducible bit for bit regardless of thread scheduling or
worker count: blocks are independent and the reduction (a sum of counts)
is commutative.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _backend as _bk
from .analysis import FasConfig, amplitude_threshold
from .copulas import _FAMILY_CODE

__all__ = ["SimResult", "simulate_outage", "empirical_gain_cdf", "BLOCK_SIZE"]

BLOCK_SIZE = 1 << 16
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SimResult:
    """Outcome of one simulation run.

    ``ci_half_width`` is the normal-approximation 95% half width
    1.96 sqrt(p_hat (1 - p_hat) / trials).
    """

    trials: int
    outage_count: int
    p_hat: float
    ci_half_width: float
    seed: int


def _block_plan(trials):
    full, rem = divmod(trials, BLOCK_SIZE)
    plan = [(b, BLOCK_SIZE) for b in range(full)]
    if rem:
        plan.append((full, rem))
    return plan


def _block_generator(seed, block_index):
    key = np.array([seed & _MASK64, block_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _gain_block(config, seed, block_index, size):
    shapes = np.array([m.shape for m in config.port_marginals])
    spreads = np.array([m.spread for m in config.port_marginals])
    gains = _bk.max_gain_block(
        _FAMILY_CODE[config.copula.family],
        config.copula.param,
        size,
        config.ports,
        shapes,
        spreads,
        _block_generator(seed, block_index),
    )
    if np.isnan(gains).any():
        raise RuntimeError("gain sampler produced NaN; numerical kernel bug")
    return gains


def _map_blocks(config, trials, seed, block_fn, workers):
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    plan = _block_plan(trials)
    if workers is None:
        workers = min(len(plan), os.cpu_count() or 1)
    if workers <= 1 or len(plan) == 1:
        return [block_fn(config, seed, b, size) for b, size in plan]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(block_fn, config, seed, b, size) for b, size in plan]
        return [f.result() for f in futures]


def simulate_outage(config: FasConfig, trials: int, seed: int, workers=None) -> SimResult:
    """Estimate the outage probability by direct simulation.

    Per trial: draw the copula-coupled port uniforms, map them through the
    per-port amplitude quantile, select the best port, and count outage
    when that amplitude is at or below the threshold sqrt(th / avg_snr).
    """
    thr = amplitude_threshold(config.snr_threshold, config.avg_snr)

    def count_block(cfg, sd, b, size):
        return int(np.count_nonzero(_gain_block(cfg, sd, b, size) <= thr))

    counts = _map_blocks(config, trials, seed, count_block, workers)
    outage_count = int(sum(counts))
    p_hat = outage_count / trials
    half = 1.96 * math.sqrt(p_hat * (1.0 - p_hat) / trials)
    return SimResult(
        trials=trials,
        outage_count=outage_count,
        p_hat=p_hat,
        ci_half_width=half,
        seed=seed,
    )


def empirical_gain_cdf(config: FasConfig, trials: int, seed: int, r_grid, workers=None) -> np.ndarray:
    """Fraction of trials whose best-port amplitude is <= r, per grid point.

    ``r_grid`` must be sorted ascending; the output is nondecreasing.
    """
    r_grid = np.asarray(r_grid, dtype=np.float64)
    if r_grid.ndim != 1 or r_grid.size < 1:
        raise ValueError("r_grid must be a non-empty 1-d array")
    if np.any(np.diff(r_grid) < 0.0):
        raise ValueError("r_grid must be sorted ascending")

    npts = r_grid.size

    def hist_block(cfg, sd, b, size):
        idx = np.searchsorted(r_grid, _gain_block(cfg, sd, b, size), side="left")
        return np.bincount(idx, minlength=npts + 1)

    hists = _map_blocks(config, trials, seed, hist_block, workers)
    total = np.sum(hists, axis=0)
    return np.cumsum(total)[:npts] / trials
