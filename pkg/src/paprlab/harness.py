"""Seeded Monte-Carlo harness for post-selection PAPR statistics.

Generates i.i.d. QPSK frames, runs one reduction scheme per configuration,
and estimates the CCDF of the per-frame PAPR (probability that PAPR
exceeds a dB threshold). Frame i is a pure function of (master seed, i),
so runs are bitwise reproducible under any worker schedule.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from . import schemes
from .signal_core import map_qpsk, papr, synthesize

SCHEMES = ("baseline", "slm-walsh", "slm-golay", "isis-exhaustive", "isis-sampled")

THREADS_ENV_VAR = "PAPRLAB_THREADS"


def default_threshold_grid(lo: float = 0.0, hi: float = 12.0, step: float = 0.1) -> tuple[float, ...]:
    """dB threshold grid from lo to hi inclusive, in uniform steps."""
    if not (math.isfinite(lo) and math.isfinite(hi) and math.isfinite(step)):
        raise ValueError("grid bounds and step must be finite")
    if step <= 0 or hi < lo:
        raise ValueError(f"need step > 0 and hi >= lo, got lo={lo}, hi={hi}, step={step}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return tuple(lo + i * step for i in range(count))


@dataclass(frozen=True)
class SimConfig:
    """One Monte-Carlo run: a scheme plus every knob that affects it."""

    scheme: str = "baseline"
    n_subcarriers: int = 8
    oversample: int = 2
    n_frames: int = 512
    slm_u: int = 2
    isis_k: int = 1000
    seed: int = 42
    threshold_grid: tuple[float, ...] = field(default_factory=default_threshold_grid)
    label: str | None = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        for name in ("n_subcarriers", "oversample", "n_frames", "slm_u", "isis_k"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")
        if self.scheme == "slm-golay" and self.slm_u != 2:
            raise ValueError("the Golay bank has exactly 2 vectors; slm_u must be 2")
        grid = tuple(float(t) for t in self.threshold_grid)
        if len(grid) == 0 or not all(math.isfinite(t) for t in grid):
            raise ValueError("threshold grid must be non-empty and finite")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("threshold grid must be strictly increasing")
        object.__setattr__(self, "threshold_grid", grid)

    def default_label(self) -> str:
        if self.scheme == "baseline":
            return "baseline"
        if self.scheme == "slm-walsh":
            return f"slm_walsh_U{self.slm_u}"
        if self.scheme == "slm-golay":
            return f"slm_golay_U{self.slm_u}"
        if self.scheme == "isis-exhaustive":
            return "isis_exhaustive"
        return f"isis_sampled_K{self.isis_k}"

    def curve_label(self) -> str:
        return self.label if self.label is not None else self.default_label()

    def side_info_bits(self) -> int:
        """Bits of side information the receiver needs per frame."""
        if self.scheme == "baseline":
            return 0
        if self.scheme in ("slm-walsh", "slm-golay"):
            return schemes.bits_for_count(self.slm_u)
        return schemes.bits_for_count(math.factorial(self.n_subcarriers))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["threshold_grid"] = list(self.threshold_grid)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SimConfig":
        d = dict(d)
        if "threshold_grid" in d:
            d["threshold_grid"] = tuple(d["threshold_grid"])
        return cls(**d)


@dataclass(frozen=True, eq=False)
class CcdfCurve:
    """Empirical exceedance curve: prob[i] = P(PAPR > thresholds_db[i])."""

    label: str
    thresholds_db: np.ndarray
    prob: np.ndarray
    n_frames: int
    config: SimConfig | None = None


def gen_random_frame(n_subcarriers: int, master_seed: int, frame_index: int) -> np.ndarray:
    """QPSK frame i of a seeded stream.

    The bit source for frame i is spawned from (master_seed, i) via
    SeedSequence, so the frame depends only on those two integers and not
    on how many frames were generated before it.
    """
    ss = np.random.SeedSequence(master_seed, spawn_key=(frame_index,))
    bits = np.random.default_rng(ss).integers(0, 2, size=2 * n_subcarriers)
    return map_qpsk(bits)


def _frame_sampler_seed(master_seed: int, frame_index: int) -> int:
    # Distinct spawn_key from the bit stream so candidate sampling and data
    # bits never share randomness.
    ss = np.random.SeedSequence(master_seed, spawn_key=(frame_index, 1))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError(f"{THREADS_ENV_VAR} must be >= 0, got {n}")
    if n == 0:
        return os.cpu_count() or 1
    return n


def _make_frame_papr_fn(config: SimConfig):
    """Bind the per-frame PAPR computation for one configuration."""
    n = config.n_subcarriers
    oversample = config.oversample
    scheme = config.scheme
    seed = config.seed

    if scheme in ("slm-walsh", "slm-golay"):
        bank = (
            schemes.gen_walsh_hadamard(config.slm_u, n)
            if scheme == "slm-walsh"
            else schemes.gen_golay(n)
        )

        def compute(i: int) -> float:
            frame = gen_random_frame(n, seed, i)
            return schemes.slm_select(frame, bank, oversample).papr.db

    elif scheme == "isis-exhaustive":

        def compute(i: int) -> float:
            frame = gen_random_frame(n, seed, i)
            return schemes.isis_select_exhaustive(frame, oversample).papr.db

    elif scheme == "isis-sampled":
        k = config.isis_k

        def compute(i: int) -> float:
            frame = gen_random_frame(n, seed, i)
            return schemes.isis_select_sampled(frame, k, _frame_sampler_seed(seed, i), oversample).papr.db

    else:

        def compute(i: int) -> float:
            frame = gen_random_frame(n, seed, i)
            return papr(synthesize(frame, oversample)).db

    return compute


def run_papr_samples(config: SimConfig) -> np.ndarray:
    """Per-frame post-selection PAPR in dB for one configuration.

    Frames are independent work units; results are aggregated in frame
    order, so the output does not depend on the worker count (capped by
    the PAPRLAB_THREADS environment variable, 0 = one per CPU).
    """
    compute = _make_frame_papr_fn(config)
    indices = range(config.n_frames)
    workers = min(_worker_count(), config.n_frames)
    if workers <= 1:
        values = [compute(i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(compute, indices))
    return np.array(values, dtype=np.float64)


def estimate_ccdf(papr_db_samples, thresholds_db, label: str = "ccdf", config: SimConfig | None = None) -> CcdfCurve:
    """Empirical CCDF of PAPR samples over a threshold grid.

    prob[t] = (#samples strictly above thresholds[t]) / n_samples.
    """
    samples = np.asarray(papr_db_samples, dtype=np.float64)
    if samples.ndim != 1 or samples.size == 0:
        raise ValueError("need at least one PAPR sample")
    thresholds = np.asarray(thresholds_db, dtype=np.float64)
    ordered = np.sort(samples)
    exceed = samples.size - np.searchsorted(ordered, thresholds, side="right")
    return CcdfCurve(
        label=label,
        thresholds_db=thresholds,
        prob=exceed / samples.size,
        n_frames=samples.size,
        config=config,
    )


def run_experiment(config: SimConfig | Sequence[SimConfig] | Iterable[SimConfig]) -> list[CcdfCurve]:
    """Run one configuration (or a bundle) and return one curve each."""
    configs = [config] if isinstance(config, SimConfig) else list(config)
    curves = []
    for cfg in configs:
        samples = run_papr_samples(cfg)
        curves.append(
            estimate_ccdf(samples, np.array(cfg.threshold_grid), label=cfg.curve_label(), config=cfg)
        )
    return curves


def papr_threshold_at(papr_db_samples, prob: float) -> float:
    """Smallest dB threshold whose empirical CCDF is <= prob.

    This is how a crossing is read off a CCDF plot: the returned value is
    the (floor(n * prob) + 1)-th largest sample, i.e. the level that at
    most a ``prob`` fraction of frames exceeds.
    """
    samples = np.sort(np.asarray(papr_db_samples, dtype=np.float64))
    n = samples.size
    if n == 0:
        raise ValueError("need at least one PAPR sample")
    if not 0.0 <= prob < 1.0:
        raise ValueError(f"prob must be in [0, 1), got {prob}")
    allowed = int(math.floor(n * prob))
    return float(samples[n - 1 - allowed])


# ---------------------------------------------------------------------------
# Experiment presets (shared seed within a preset so scheme comparisons are
# paired frame by frame)


def preset_fig5(seed: int = 42) -> list[SimConfig]:
    """Scheme shoot-out at N=8: baseline, both SLM banks at U=2, full search."""
    base = SimConfig(n_subcarriers=8, oversample=2, n_frames=512, seed=seed)
    return [
        base,
        replace(base, scheme="slm-walsh", slm_u=2),
        replace(base, scheme="slm-golay", slm_u=2),
        replace(base, scheme="isis-exhaustive"),
    ]


def preset_fig6(seed: int = 42) -> list[SimConfig]:
    """Candidate-budget sweep at N=8: sampled K in {8,100,500,1000} vs full."""
    base = SimConfig(n_subcarriers=8, oversample=2, n_frames=512, seed=seed)
    configs = [replace(base, scheme="isis-sampled", isis_k=k) for k in (8, 100, 500, 1000)]
    configs.append(replace(base, scheme="isis-exhaustive"))
    return configs


def preset_fig7(seed: int = 42) -> list[SimConfig]:
    """Frame-size sweep: baseline vs permutation search at N in {4, 8, 16}.

    Full search where N! is enumerable, sampled with K=1000 at N=16.
    """
    base = SimConfig(oversample=2, n_frames=512, seed=seed)
    configs = []
    for n in (4, 8, 16):
        configs.append(replace(base, n_subcarriers=n, label=f"baseline_N{n}"))
    for n in (4, 8):
        configs.append(
            replace(base, scheme="isis-exhaustive", n_subcarriers=n, label=f"isis_exhaustive_N{n}")
        )
    configs.append(
        replace(
            base,
            scheme="isis-sampled",
            n_subcarriers=16,
            isis_k=1000,
            label="isis_sampled_K1000_N16",
        )
    )
    return configs
