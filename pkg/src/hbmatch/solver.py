"""Pipeline dispatch and run reports."""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field

from .augment import augment_step
from .core import HMatching, Instance, Violation, check_feasible, normalize, set_degrees
from .flow import flow_stage
from .oracle import DEFAULT_BUDGET, BudgetExceeded, brute_force_max
from .representing import DEFAULT_MAX_VERTICES, solve_pseudo

ALGORITHMS = ("poly", "pseudo", "oracle", "flow-only")


def instance_digest(inst: Instance) -> str:
    doc = {
        "n": inst.n,
        "edges": [list(e) for e in inst.edges],
        "c": list(inst.c),
        "sets": [sorted(s) for s in inst.family.sets],
        "b": list(inst.b),
    }
    blob = json.dumps(doc, separators=(",", ":"), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def augmentation_bound(n: int) -> int:
    return math.ceil(2 * n / 3)


def saturate(inst: Instance, x: HMatching) -> HMatching:
    """Greedily raise edges in index order while every bound keeps room.

    A set containing both endpoints of an edge loses two units of slack per
    unit of ``x_e``.  The result is feasible and never smaller than ``x``.
    """
    fam = inst.family
    y = list(x)
    slack = [bk - dk for bk, dk in zip(inst.b, set_degrees(inst, y))]
    anc = [fam.ancestors(v) for v in range(inst.n)]
    for e, (u, v) in enumerate(inst.edges):
        au, av = anc[u - 1], anc[v - 1]
        common = set(au) & set(av)
        room = inst.c[e] - y[e]
        for k in au:
            room = min(room, slack[k] // 2 if k in common else slack[k])
        for k in av:
            if k not in common:
                room = min(room, slack[k])
        if room > 0:
            y[e] += room
            for k in au:
                slack[k] -= room
            for k in av:
                slack[k] -= room
    return tuple(y)


@dataclass(frozen=True)
class SolveReport:
    digest: str
    algorithm: str
    x: HMatching
    cardinality: int
    set_degrees: tuple[int, ...]
    set_slacks: tuple[int, ...]
    counters: dict[str, int] = field(default_factory=dict)
    elapsed_us: int = 0


def solve(
    inst: Instance,
    algo: str = "poly",
    *,
    oracle_budget: int = DEFAULT_BUDGET,
    max_repr_vertices: int = DEFAULT_MAX_VERTICES,
    greedy: bool = True,
) -> SolveReport:
    """Solve ``inst`` (normalized internally) with the chosen algorithm.

    ``poly`` runs the flow stage and then augments one unit at a time until
    the augmentation graph has no alternating path.  With ``greedy`` a
    saturation pass runs between the two, which usually leaves little or
    nothing for the augmentation loop.  ``flow-only`` returns the flow
    stage result untouched, so it is near-optimal only.
    """
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")
    start = time.monotonic_ns()
    norm = normalize(inst)
    counters: dict[str, int] = {}
    if not norm.edges:
        # nothing to match; keep the counters of each mode present
        x: HMatching = ()
        if algo in ("poly", "flow-only"):
            counters.update(flow_value=0, rounding_loss_halves=0)
        if algo == "poly":
            counters["augmentations"] = 0
            if greedy:
                counters["saturation_gain"] = 0
    elif algo == "oracle":
        res = brute_force_max(norm, oracle_budget)
        x = res.best_x
        counters["nodes_explored"] = res.nodes_explored
    elif algo == "pseudo":
        x = solve_pseudo(norm, max_repr_vertices)
    else:
        stage = flow_stage(norm)
        x = stage.x
        counters["flow_value"] = stage.flow_value
        counters["rounding_loss_halves"] = stage.rounding.loss_halves
        if algo == "poly":
            if greedy:
                y = saturate(norm, x)
                counters["saturation_gain"] = sum(y) - sum(x)
                x = y
            counters["augmentations"] = 0
            while (y := augment_step(norm, x)) is not None:
                x = y
                counters["augmentations"] += 1
    elapsed = (time.monotonic_ns() - start) // 1000
    d = set_degrees(norm, x)
    return SolveReport(
        digest=instance_digest(inst),
        algorithm=algo,
        x=tuple(x),
        cardinality=sum(x),
        set_degrees=tuple(d),
        set_slacks=tuple(bk - dk for bk, dk in zip(norm.b, d)),
        counters=counters,
        elapsed_us=elapsed,
    )


@dataclass(frozen=True)
class Certificate:
    ok: bool
    violations: tuple[Violation, ...] = ()
    optimal: bool | None = None  # None: optimality not checked
    optimum: int | None = None


def verify_certificate(inst: Instance, x: HMatching, oracle_budget: int = DEFAULT_BUDGET) -> Certificate:
    """Feasibility always; optimality too when the oracle finishes in budget."""
    violations = tuple(check_feasible(inst, x))
    if violations:
        return Certificate(False, violations)
    try:
        best = brute_force_max(normalize(inst), oracle_budget).best_size
    except BudgetExceeded:
        return Certificate(True)
    return Certificate(sum(x) == best, optimal=sum(x) == best, optimum=best)
