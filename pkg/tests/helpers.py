"""Shared fixtures and independent reference implementations for the tests."""

from __future__ import annotations

import itertools
import random

from hbmatch.blossom import find_augmenting_path
from hbmatch.core import Instance, set_degrees
from hbmatch.generator import GeneratorConfig, generate
from hbmatch.representing import build_repr, repr_matching


# --- the six shared fixtures --------------------------------------------------

def fx1() -> Instance:
    return Instance.build(2, [(1, 2, 1)], [1, 1], root_b=2)


def fx2() -> Instance:
    return Instance.build(3, [(1, 2, 1), (2, 3, 1)], [1, 1, 1], root_b=4)


def fx3(b_l6: int = 4) -> Instance:
    return Instance.build(
        4,
        [(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 1)],
        [2, 2, 2, 2],
        [([1, 2], 1), ([3, 4], b_l6)],
        root_b=8,
    )


def fx4() -> Instance:
    return Instance.build(2, [(1, 2, 3)], [2, 3], root_b=5)


def fx5(root_b: int = 3) -> Instance:
    return Instance.build(3, [(1, 2, 1), (2, 3, 1), (1, 3, 1)], [1, 1, 1], root_b=root_b)


def fx6() -> Instance:
    return Instance.build(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 1)], [1, 1, 1, 1], root_b=4)


def xvec(inst: Instance, values: dict[tuple[int, int], int]) -> tuple[int, ...]:
    """Multiplicity vector from ``{(u, v): x}`` (missing edges are 0)."""
    for key in values:
        assert key in inst.edges, key
    return tuple(values.get(e, 0) for e in inst.edges)


def set_index(inst: Instance, members) -> int:
    return inst.family.sets.index(frozenset(members))


# --- random instances and H-matchings --------------------------------------

def small_instance(seed: int, n_max: int = 6, max_b: int = 3, max_c: int = 2,
                   max_edges: int | None = 9) -> Instance:
    rng = random.Random(seed)
    cfg = GeneratorConfig(
        n=rng.randint(1, n_max), density=rng.random(), max_b=rng.randint(1, max_b),
        max_c=rng.randint(1, max_c), depth=rng.randint(0, 3), seed=seed, max_edges=max_edges,
    )
    return generate(cfg)


def raw_instance(seed: int, n_max: int = 5) -> Instance:
    """Instance with arbitrary (usually not normalized) bounds."""
    rng = random.Random(seed)
    base = small_instance(seed, n_max=n_max, max_edges=7)
    b = tuple(rng.randint(1, 6) for _ in base.b)
    c = tuple(rng.randint(1, 4) for _ in base.c)
    return Instance(base.graph, base.family, b, c)


def random_feasible_x(inst: Instance, rng: random.Random) -> tuple[int, ...]:
    """Random feasible H-matching: edges in random order, each raised by a
    random amount within the remaining room."""
    fam = inst.family
    x = [0] * len(inst.edges)
    slack = list(inst.b)
    order = list(range(len(inst.edges)))
    rng.shuffle(order)
    for e in order:
        u, v = inst.edges[e]
        au, av = fam.ancestors(u - 1), fam.ancestors(v - 1)
        room = inst.c[e]
        while room > 0:
            trial = [0] * fam.m
            for k in au + av:
                trial[k] += room
            if all(trial[k] <= slack[k] for k in range(fam.m)):
                break
            room -= 1
        pick = rng.randint(0, room)
        x[e] = pick
        for k in au + av:
            slack[k] -= pick
    assert all(s >= 0 for s in slack)
    return tuple(x)


# --- reference implementations ------------------------------------------------

def max_matching_size_bruteforce(n: int, edges: list[tuple[int, int]]) -> int:
    """Largest matching by exhaustive search over edge subsets (small graphs)."""
    best = 0

    def rec(i: int, used: set[int], size: int) -> None:
        nonlocal best
        best = max(best, size)
        if size + (len(edges) - i) <= best:
            return
        for j in range(i, len(edges)):
            u, v = edges[j]
            if u not in used and v not in used:
                used |= {u, v}
                rec(j + 1, used, size + 1)
                used -= {u, v}

    rec(0, set(), 0)
    return best


def has_augmenting_path_bruteforce(n: int, adj: list[list[int]], mate: list[int]) -> bool:
    """Exhaustive simple-path search for an augmenting path (small graphs)."""
    exposed = [v for v in range(n) if mate[v] == -1]

    def dfs(v: int, seen: set[int], need_unmatched: bool) -> bool:
        for w in adj[v]:
            if w in seen:
                continue
            if need_unmatched:
                if mate[v] == w:
                    continue
                if mate[w] == -1:
                    return True
                seen.add(w)
                if dfs(w, seen, False):
                    return True
                seen.discard(w)
            elif mate[v] == w:
                seen.add(w)
                if dfs(w, seen, True):
                    return True
                seen.discard(w)
        return False

    return any(dfs(s, {s}, True) for s in exposed)


def repr_matching_stepwise(inst: Instance, x) -> list[int]:
    """Literal replay of the canonical representing-matching construction,
    written against plain vertex lists (no prefix-sum arithmetic)."""
    g = build_repr(inst)
    fam = inst.family
    m = fam.m
    mate = [-1] * g.n
    d = set_degrees(inst, x)

    def grp(gid: int) -> list[int]:
        return list(g.group_vertices(gid))

    def first_unmatched(vs: list[int], count: int) -> list[int]:
        free = [v for v in vs if mate[v] == -1]
        assert len(free) >= count
        return free[:count]

    def pair(a: int, b: int) -> None:
        assert mate[a] == -1 and mate[b] == -1
        mate[a], mate[b] = b, a

    for e, (u, v) in enumerate(inst.edges):
        e0, e1 = grp(2 * m + 2 * e), grp(2 * m + 2 * e + 1)
        s = inst.c[e] - x[e]
        for q in range(inst.c[e] - s, inst.c[e]):
            pair(e0[q], e1[q])
        for side, w in ((e0, u), (e1, v)):
            for a, b in zip(side[: x[e]], first_unmatched(grp(w - 1), x[e])):
                pair(a, b)
    for k in fam.postorder():
        if k == fam.root:
            continue
        bk, tk = grp(k), grp(m + k)
        s = inst.b[k] - d[k]
        for q in range(inst.b[k] - s, inst.b[k]):
            pair(bk[q], tk[q])
        for a, b in zip(tk[: d[k]], first_unmatched(grp(fam.parent[k]), d[k])):
            pair(a, b)
    return mate


def full_repr_improvable(inst: Instance, x) -> bool:
    """Does the full representing graph admit an augmenting path from repr(x)?"""
    g = build_repr(inst)
    mm = repr_matching(inst, x, g)
    root_b = list(g.group_vertices(inst.family.root))
    return find_augmenting_path(g, mm, root_b) is not None


def enumerate_feasible(inst: Instance):
    """Every feasible multiplicity vector (tiny instances only)."""
    from hbmatch.core import is_feasible

    for x in itertools.product(*(range(c + 1) for c in inst.c)):
        if is_feasible(inst, x):
            yield x
