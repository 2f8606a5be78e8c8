"""Exhaustive search for small instances; ground truth for the test-suite."""

from __future__ import annotations

from dataclasses import dataclass

from .core import HMatching, Instance

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """The search visited more nodes than allowed."""


@dataclass(frozen=True)
class OracleResult:
    best_x: HMatching
    best_size: int
    nodes_explored: int


def brute_force_max(inst: Instance, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Depth-first search over all multiplicity vectors.

    Edges are fixed in lexicographic order and take multiplicities
    ``c_e, c_e - 1, ..., 0``.  A prefix is dropped as soon as it breaks a set
    bound, and a branch is cut when even saturating every remaining edge could
    not beat the incumbent.
    """
    edges = inst.edges
    E = len(edges)
    fam = inst.family
    # sets touched by each edge, with multiplicity (a set holding both
    # endpoints gains twice the multiplicity)
    touched: list[list[int]] = []
    for u, v in edges:
        touched.append(fam.ancestors(u - 1) + fam.ancestors(v - 1))
    suffix = [0] * (E + 1)
    for e in range(E - 1, -1, -1):
        suffix[e] = suffix[e + 1] + inst.c[e]

    load = [0] * fam.m
    b = inst.b
    x = [0] * E
    best = [0] * E
    best_size = 0
    nodes = 0

    # explicit stack of (edge index, next multiplicity to try); the current
    # multiplicity of edge e is applied to ``load`` while e is on the stack
    size = 0
    stack: list[list[int]] = [[0, inst.c[0]]] if E else []
    while stack:
        frame = stack[-1]
        e, mult = frame
        if x[e]:
            for k in touched[e]:
                load[k] -= x[e]
            size -= x[e]
            x[e] = 0
        if mult < 0 or size + suffix[e] <= best_size:
            stack.pop()
            continue
        frame[1] = mult - 1
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"oracle exceeded its budget of {budget} nodes")
        if mult:
            ok = True
            for k in touched[e]:
                load[k] += mult
                if load[k] > b[k]:
                    ok = False
            x[e] = mult
            size += mult
            if not ok:
                continue
        if e + 1 == E:
            if size > best_size:
                best_size = size
                best = list(x)
            continue
        stack.append([e + 1, inst.c[e + 1]])
    return OracleResult(tuple(best), best_size, nodes)
