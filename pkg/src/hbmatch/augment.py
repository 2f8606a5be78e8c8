"""One polynomial augmentation step on an H-matching.

The augmentation graph keeps a bounded number of representing-graph vertices
per group: the endpoints of at most two "used" and two "slack" pairs of every
IN and EE pairing, the canonical partners of those endpoints, and two exposed
vertices of the root's bottom group.  All edges of the representing graph
among the kept vertices are present; an edge is red when it belongs to the
canonical representing matching and blue otherwise.  The vertex set is
derived from position arithmetic, never from the full representing graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blossom import Matching, find_augmenting_path
from .core import HMatching, Instance
from .representing import CanonicalLayout, group_key


class NoExposedPair(Exception):
    """The root has slack at most one, so no augmentation is possible."""


@dataclass
class AugGraph:
    """Bounded subgraph of the representing graph.

    ``origin[v]`` is the ``(group id, position)`` of local vertex ``v`` in the
    representing graph; ``mate`` holds the red edges.
    """

    inst: Instance
    origin: list[tuple[int, int]]
    adj: list[list[int]]
    mate: list[int]
    x1: int
    x2: int

    @property
    def n(self) -> int:
        return len(self.origin)

    def neighbors(self, v: int) -> list[int]:
        return self.adj[v]

    def is_red(self, u: int, v: int) -> bool:
        return self.mate[u] == v

    def matching(self) -> Matching:
        return Matching(self.mate)

    def describe(self, v: int) -> tuple[tuple, int]:
        g, q = self.origin[v]
        return group_key(self.inst.m, g), q

    def edges(self) -> list[tuple[int, int, str]]:
        return [
            (u, v, "red" if self.mate[u] == v else "blue")
            for u in range(self.n)
            for v in self.adj[u]
            if u < v
        ]


def build_aug(inst: Instance, x: HMatching) -> AugGraph:
    """Construct the augmentation graph of a feasible ``x``.

    Kept vertices: both ends of the first ``min(2, used)`` and the last
    ``min(2, slack)`` pairs of every IN and EE pairing, the canonical partner
    of every kept vertex, and the two lowest exposed vertices of the root's
    bottom group.  Raises :class:`NoExposedPair` when the root slack is below
    two.
    """
    fam = inst.family
    m = fam.m
    root = fam.root
    layout = CanonicalLayout(inst, x)
    partner = layout.partner
    d = layout.d
    if inst.b[root] - d[root] < 2:
        raise NoExposedPair(f"root slack is {inst.b[root] - d[root]}")
    n_groups = 2 * m + 2 * len(inst.edges)

    index: dict[int, int] = {}  # g + q * n_groups -> local vertex
    origin: list[tuple[int, int]] = []
    mate: list[int] = []

    def add(g: int, q: int) -> int:
        key = g + q * n_groups
        i = index.get(key)
        if i is None:
            i = index[key] = len(origin)
            origin.append((g, q))
            mate.append(-1)
        return i

    def keep_used(g: int, h: int, q: int) -> None:
        # q is a blue pair: both ends are matched elsewhere
        for a in (g, h):
            i = add(a, q)
            p = partner(a, q)
            j = add(*p)
            mate[i] = j
            mate[j] = i

    def keep_slack(g: int, h: int, q: int) -> None:
        i, j = add(g, q), add(h, q)
        mate[i] = j
        mate[j] = i

    for k in range(m):
        if k == root:
            continue
        bk, dk = inst.b[k], d[k]
        for q in range(min(2, dk)):
            keep_used(k, m + k, q)
        for q in range(max(dk, bk - 2), bk):
            keep_slack(k, m + k, q)
    for e in range(len(inst.edges)):
        ce, xe = inst.c[e], x[e]
        g0 = 2 * m + 2 * e
        for q in range(min(2, xe)):
            keep_used(g0, g0 + 1, q)
        for q in range(max(xe, ce - 2), ce):
            keep_slack(g0, g0 + 1, q)
    x1 = add(root, d[root])
    x2 = add(root, d[root] + 1)

    members: dict[int, list[int]] = {}
    for i, (g, _q) in enumerate(origin):
        members.setdefault(g, []).append(i)

    adj: list[list[int]] = [[] for _ in origin]
    # complete bipartite UP edges, listed from the lower group's side
    for g, lower in members.items():
        if g >= 2 * m:
            e, side = divmod(g - 2 * m, 2)
            upper = members.get(inst.edges[e][side] - 1)
        elif g >= m:
            upper = members.get(fam.parent[g - m])
        else:
            continue
        if upper:
            for i in lower:
                adj[i].extend(upper)
            for j in upper:
                adj[j].extend(lower)
    # position-paired IN and EE edges, listed from the T and E^0 side
    for i, (g, q) in enumerate(origin):
        if g >= 2 * m:
            if g & 1:
                continue
            twin = g + 1
        elif g >= m:
            twin = g - m
        else:
            continue
        j = index.get(twin + q * n_groups)
        if j is not None:
            adj[i].append(j)
            adj[j].append(i)
    for i, p in enumerate(mate):
        assert p != -1 or i in (x1, x2), f"kept vertex {origin[i]} left unmatched"
    return AugGraph(inst, origin, adj, mate, x1, x2)


def find_aug_path(aug: AugGraph) -> list[int] | None:
    return find_augmenting_path(aug, aug.matching(), (aug.x1, aug.x2))


def apply_path(aug: AugGraph, x: HMatching, path: list[int]) -> HMatching:
    """Translate an alternating x1-x2 path into new multiplicities.

    Only EE pairs change multiplicities: a red pair on the path becomes
    cross-matched (+1), a blue pair becomes paired (-1).
    """
    new = list(x)
    origin = aug.origin
    first_e = 2 * aug.inst.m
    for a, b in zip(path, path[1:]):
        (ga, qa), (gb, qb) = origin[a], origin[b]
        if ga >= first_e and gb >= first_e:
            assert ga ^ 1 == gb and qa == qb
            new[(ga - first_e) >> 1] += 1 if aug.mate[a] == b else -1
    return tuple(new)


def augment_step(inst: Instance, x: HMatching) -> HMatching | None:
    """Return an H-matching one unit larger than ``x``, or ``None`` when ``x``
    is already of maximum cardinality."""
    try:
        aug = build_aug(inst, x)
    except NoExposedPair:
        return None
    path = find_aug_path(aug)
    if path is None:
        return None
    return apply_path(aug, x, path)
