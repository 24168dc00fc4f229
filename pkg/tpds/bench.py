"""
Benchmark Harness
Times the unfolding-based and Fourier-based informativity checks over r = 2^p grids
and emits the time, time/r and time/r^3 series.
"""

import logging
import platform
import time
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from .config import Tolerances
from .datagen import random_data
from .errors import InsufficientData, OutOfBudget
from .informativity import (
    CONTROLLABILITY,
    STABILITY,
    SYSID,
    informative_controllability,
    informative_stability,
    informative_sysid,
)

logger = logging.getLogger(__name__)

BENCH_TESTS = (SYSID, STABILITY, CONTROLLABILITY)

# Default exponent ranges per test (r = 2^p)
DEFAULT_P_RANGES = {
    SYSID: tuple(range(2, 11)),
    STABILITY: tuple(range(2, 12)),
    CONTROLLABILITY: tuple(range(2, 10)),
}

METHOD_TAGS = {'dense': 'unfold', 'fourier': 'fourier'}

CSV_COLUMNS = ['test', 'method', 'r', 'n', 'h', 'l', 'reps', 'threads', 'time_s', 'time_per_r', 'time_per_r3']

STATUS_OK = 'ok'
STATUS_OVER_BUDGET = 'over_budget'
STATUS_SKIPPED = 'skipped'
STATUS_DISAGREEMENT = 'verdict_disagreement'


@dataclass(frozen=True)
class BenchConfig:
    """
    One benchmark experiment.

    Attributes:
        test (str): 'sysid', 'stability' or 'controllability'
        n, h, l (int): state rows, columns per snapshot, number of transitions
        p_range (tuple): ascending exponents; r = 2^p
        repetitions (int): timed runs per point (median reported)
        seed (int): data and compression seed
        threads (int): worker threads for the fourier path
        output (str, optional): CSV path
        time_cap (float): seconds; a point over the cap stops that method
    """
    test: str = SYSID
    n: int = 2
    h: int = 2
    l: int = 10
    p_range: tuple = DEFAULT_P_RANGES[SYSID]
    repetitions: int = 5
    seed: int = 0
    threads: int = 1
    output: str = None
    time_cap: float = 120.0
    tolerances: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self):
        if self.test not in BENCH_TESTS:
            raise ValueError(f"test must be one of {BENCH_TESTS}, got {self.test!r}")
        p = list(self.p_range)
        if not p or p != sorted(set(p)):
            raise ValueError(f"p_range must be nonempty and strictly ascending, got {self.p_range}")
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")
        object.__setattr__(self, 'p_range', tuple(p))

    @classmethod
    def for_test(cls, test, **overrides):
        """Config with the default grid for ``test``."""
        overrides.setdefault('p_range', DEFAULT_P_RANGES[test])
        return cls(test=test, **overrides)


@dataclass
class BenchRecord:
    """One (method, r) timing: median wall time over the repetitions."""
    test: str
    method: str
    r: int
    n: int
    h: int
    l: int
    reps: int
    threads: int
    time_s: float
    verdict: bool = None
    status: str = STATUS_OK
    disagrees: bool = False

    @property
    def time_per_r(self):
        return self.time_s / self.r

    @property
    def time_per_r3(self):
        return self.time_s / self.r ** 3


def expected_orders(test):
    """
    Exponent of r in the operation counts of each method.

    Rank tests: O(n^2 r^3 lh) unfolded vs O(n^2 r lh) per block;
    eigenvalue tests: O(n^3 r^3) vs O(n^3 r).
    """
    if test not in BENCH_TESTS:
        raise ValueError(f"unknown test {test!r}")
    return {'unfold': 3, 'fourier': 1}


def _run_check(cfg, data, method):
    threads = cfg.threads if method == 'fourier' else 1
    if cfg.test == SYSID:
        return informative_sysid(data.x0, method=method, tolerances=cfg.tolerances, threads=threads)
    if cfg.test == STABILITY:
        return informative_stability(data.x0, data.x1, method=method, tolerances=cfg.tolerances, threads=threads)
    return informative_controllability(data.u0, data.x0, data.x1, method=method, tolerances=cfg.tolerances,
                                       seed=cfg.seed, threads=threads)


def _timed(cfg, data, method):
    start = time.perf_counter()
    report = _run_check(cfg, data, method)
    return time.perf_counter() - start, report


def _measure(cfg, data, method):
    """Warm-up plus cfg.repetitions timed runs; raises OutOfBudget past the cap."""
    elapsed, report = _timed(cfg, data, method)
    if elapsed > cfg.time_cap:
        raise OutOfBudget(elapsed, cfg.time_cap)

    times = []
    for _ in range(cfg.repetitions):
        elapsed, report = _timed(cfg, data, method)
        times.append(elapsed)
        if elapsed > cfg.time_cap:
            raise OutOfBudget(elapsed, cfg.time_cap)
    return float(np.median(times)), report.verdict


def run_experiment(cfg):
    """
    Time both methods on the same seeded data at every grid point.

    Data generation is outside the timed region; one warm-up run per point
    is discarded. Once a method exceeds the time cap at some r, its larger
    points are recorded as skipped.

    Args:
        cfg (BenchConfig): experiment settings

    Returns:
        list: BenchRecord per (method, r), unfold first at each r
    """
    records = []
    stopped = {'dense': False, 'fourier': False}

    for p in cfg.p_range:
        r = 2 ** p
        data = random_data(cfg.n, cfg.h, cfg.l, r, seed=cfg.seed)
        verdicts = {}

        for method in ('dense', 'fourier'):
            threads = cfg.threads if method == 'fourier' else 1
            base = dict(test=cfg.test, method=METHOD_TAGS[method], r=r, n=cfg.n, h=cfg.h, l=cfg.l,
                        reps=cfg.repetitions, threads=threads)
            if stopped[method]:
                records.append(BenchRecord(**base, time_s=float('nan'), status=STATUS_SKIPPED))
                continue
            try:
                median, verdict = _measure(cfg, data, method)
            except OutOfBudget as e:
                logger.warning(f"{cfg.test}/{METHOD_TAGS[method]} at r={r}: {e}; skipping larger r")
                stopped[method] = True
                records.append(BenchRecord(**base, time_s=e.elapsed, status=STATUS_OVER_BUDGET))
                continue

            verdicts[method] = verdict
            records.append(BenchRecord(**base, time_s=median, verdict=verdict))
            logger.info(f"{cfg.test}/{METHOD_TAGS[method]} r={r}: {median:.4g}s (verdict={verdict})")

        if len(verdicts) == 2 and verdicts['dense'] != verdicts['fourier']:
            for rec in records[-2:]:
                rec.disagrees = True
            logger.warning(f"{cfg.test} at r={r}: methods disagree (unfold={verdicts['dense']}, "
                           f"fourier={verdicts['fourier']})")

    return records


def fit_slope(records, method, top=4):
    """
    Least-squares slope of log(time) against log(r) over the largest points.

    Args:
        records (list): BenchRecord objects
        method (str): 'unfold' / 'dense' or 'fourier'
        top (int): number of largest-r points used (all if fewer)

    Returns:
        float: fitted exponent
    """
    tag = METHOD_TAGS.get(method, method)
    points = sorted((rec.r, rec.time_s) for rec in records
                    if rec.method == tag and rec.status == STATUS_OK and rec.time_s > 0)
    if len(points) < 3:
        raise InsufficientData(f"need at least 3 timed points for {tag}, have {len(points)}")
    points = points[-top:]
    log_r = np.log([p[0] for p in points])
    log_t = np.log([p[1] for p in points])
    slope, _ = np.polyfit(log_r, log_t, 1)
    return float(slope)


def summarize_slopes(records):
    """Fitted slope per method tag, or None when there are too few points."""
    slopes = {}
    for tag in ('unfold', 'fourier'):
        try:
            slopes[tag] = fit_slope(records, tag)
        except InsufficientData:
            slopes[tag] = None
    return slopes


def records_to_frame(records):
    """BenchRecords as a DataFrame with the CSV columns plus verdict and status."""
    rows = []
    for rec in records:
        timed = rec.status != STATUS_SKIPPED
        rows.append({
            'test': rec.test, 'method': rec.method, 'r': rec.r, 'n': rec.n, 'h': rec.h, 'l': rec.l,
            'reps': rec.reps, 'threads': rec.threads,
            'time_s': rec.time_s if timed else np.nan,
            'time_per_r': rec.time_per_r if timed else np.nan,
            'time_per_r3': rec.time_per_r3 if timed else np.nan,
            'verdict': rec.verdict, 'status': rec.status,
        })
    return pd.DataFrame(rows, columns=CSV_COLUMNS + ['verdict', 'status'])


def write_csv(records, path, metadata=None):
    """
    Write the benchmark CSV and its sidecar metadata file (<path>.meta.txt).

    Skipped and over-budget points keep their row; skipped rows have empty
    time fields and both kinds are listed in the sidecar, as is every r at
    which the two methods returned different verdicts.

    Returns:
        tuple: (csv path, metadata path)
    """
    frame = records_to_frame(records)
    frame[CSV_COLUMNS].to_csv(path, index=False, lineterminator='\r\n', float_format='%.9g', na_rep='')

    meta = dict(metadata or {})
    meta.setdefault('host', f"{platform.platform()} / {platform.processor() or 'unknown cpu'} / "
                            f"python {platform.python_version()}")
    meta_path = f"{path}.meta.txt"
    with open(meta_path, 'w', encoding='utf-8', newline='\n') as f:
        for key, value in meta.items():
            f.write(f"{key}={value}\n")
        for rec in records:
            if rec.status != STATUS_OK:
                f.write(f"marker method={rec.method} r={rec.r} status={rec.status}\n")
        verdicts = {}
        for rec in records:
            if rec.disagrees:
                verdicts.setdefault(rec.r, {})[rec.method] = rec.verdict
        for r, by_method in verdicts.items():
            pairs = " ".join(f"{tag}={str(verdict).lower()}" for tag, verdict in sorted(by_method.items()))
            f.write(f"marker r={r} status={STATUS_DISAGREEMENT} {pairs}\n")

    logger.info(f"Wrote {len(records)} benchmark rows to {path}")
    return path, meta_path
