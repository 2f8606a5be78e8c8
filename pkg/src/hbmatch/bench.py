"""Benchmark harness: timed solves over generated instances."""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .generator import GeneratorConfig, generate
from .solver import augmentation_bound, solve

CSV_FIELDS = (
    "n", "trial", "seed", "edges", "sets", "algorithm", "size", "augmentations",
    "bound", "flow_value", "rounding_loss_halves", "saturation_gain", "elapsed_us",
)


@dataclass(frozen=True)
class BenchRow:
    n: int
    trial: int
    seed: int
    edges: int
    sets: int
    algorithm: str
    size: int
    augmentations: int
    bound: int
    flow_value: int
    rounding_loss_halves: int
    saturation_gain: int
    elapsed_us: int

    def as_csv(self) -> list[int | str]:
        return [getattr(self, f) for f in CSV_FIELDS]


def bench_config(n: int, density: float, seed: int) -> GeneratorConfig:
    return GeneratorConfig(n=n, density=density, max_b=3, max_c=2, depth=3,
                           branching=(2, 4), seed=seed)


def _one(job: tuple[int, int, int, float, str, bool]) -> BenchRow:
    n, trial, seed, density, algo, greedy = job
    inst = generate(bench_config(n, density, seed))
    rep = solve(inst, algo, greedy=greedy)
    cnt = rep.counters
    return BenchRow(
        n=n, trial=trial, seed=seed, edges=len(inst.edges), sets=inst.m,
        algorithm=algo, size=rep.cardinality,
        augmentations=cnt.get("augmentations", 0),
        bound=augmentation_bound(n),
        flow_value=cnt.get("flow_value", 0),
        rounding_loss_halves=cnt.get("rounding_loss_halves", 0),
        saturation_gain=cnt.get("saturation_gain", 0),
        elapsed_us=rep.elapsed_us,
    )


def run_bench(
    sizes: Sequence[int],
    trials: int = 1,
    density: float = 0.05,
    seed: int = 0,
    algo: str = "poly",
    workers: int = 1,
    greedy: bool = True,
) -> list[BenchRow]:
    """Rows come back ordered by (size, trial) whatever the worker count.
    Trial ``t`` of size ``n`` uses generator seed ``seed + t``."""
    jobs = [(n, t, seed + t, density, algo, greedy) for n in sizes for t in range(trials)]
    if workers <= 1:
        return [_one(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_one, jobs))


def loglog_slope(points: Iterable[tuple[float, float]]) -> float:
    """Least-squares slope of ``log t`` against ``log n``."""
    pts = [(math.log(n), math.log(max(t, 1e-9))) for n, t in points]
    if len(pts) < 2:
        raise ValueError("need at least two sizes for a slope")
    return statistics.linear_regression([p[0] for p in pts], [p[1] for p in pts]).slope


def median_times(rows: Sequence[BenchRow]) -> list[tuple[int, float]]:
    """Median wall time in seconds per size, ascending in ``n``."""
    by_n: dict[int, list[int]] = {}
    for r in rows:
        by_n.setdefault(r.n, []).append(r.elapsed_us)
    return [(n, statistics.median(ts) / 1e6) for n, ts in sorted(by_n.items())]
