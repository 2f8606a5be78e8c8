"""Pseudo-polynomial reduction to ordinary matching.

Every set ``k`` is expanded into a bottom group ``B_k`` of ``b_k`` vertices
and, except for the root, a top group ``T_k`` of the same size.  Every edge
``e = (i, j)`` gets two groups of ``c_e`` vertices, ``E_e^0`` on the ``i`` side
and ``E_e^1`` on the ``j`` side.  Edges of the representing graph:

* IN:  ``B_k[q] -- T_k[q]`` for every non-root ``k``;
* UP:  every ``T_k`` vertex to every vertex of ``B_parent(k)``, and every
  ``E_e^side`` vertex to every vertex of the bottom group of its endpoint;
* EE:  ``E_e^0[q] -- E_e^1[q]``.

Groups are numbered ``B_k -> k``, ``T_k -> m + k``, ``E_e^side -> 2m + 2e +
side``; positions inside a group are 0-based.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .blossom import Matching, max_matching_from_seed
from .core import HMatching, Instance, check_feasible, set_degrees

DEFAULT_MAX_VERTICES = 2 * 10**6


class SizeOverflow(RuntimeError):
    """The representing graph would exceed the configured vertex cap."""


class InfeasibleInput(ValueError):
    pass


class BadExposure(ValueError):
    pass


class Inconsistent(ValueError):
    pass


def group_key(m: int, g: int) -> tuple:
    """Readable name of group ``g``: ``("B", k)``, ``("T", k)`` or ``("E", e, side)``."""
    if g < m:
        return ("B", g)
    if g < 2 * m:
        return ("T", g - m)
    e, side = divmod(g - 2 * m, 2)
    return ("E", e, side)


def group_size(inst: Instance, g: int) -> int:
    m = inst.m
    if g < m:
        return inst.b[g]
    if g < 2 * m:
        return 0 if g - m == inst.family.root else inst.b[g - m]
    return inst.c[(g - 2 * m) // 2]


class CanonicalLayout:
    """Partner arithmetic of the canonical representing matching ``repr(x)``.

    Answers "who is the partner of position ``q`` of group ``g``" without
    materialising anything, using prefix sums over the fill order: edges in
    lexicographic order fill the bottom groups of singletons, children in
    ascending index fill the bottom group of their parent.  Slack is always
    taken from the highest positions.
    """

    def __init__(self, inst: Instance, x: Sequence[int]):
        fam = inst.family
        m = fam.m
        self.inst = inst
        self.m = m
        self.x = tuple(x)
        self.d = d = set_degrees(inst, x)
        self.root = fam.root
        self.parent = fam.parent
        # offset of child k inside B_parent(k)
        self.child_off = [0] * m
        # per bottom group: sorted block starts and the group filling each block
        self.starts: list[list[int]] = [[] for _ in range(m)]
        self.fillers: list[list[int]] = [[] for _ in range(m)]
        for k in range(m):
            off = 0
            for ch in fam.children[k]:
                self.child_off[ch] = off
                if d[ch]:
                    self.starts[k].append(off)
                    self.fillers[k].append(m + ch)
                off += d[ch]
        # offset of every E group inside the bottom group of its endpoint
        self.edge_off = [0] * (2 * len(inst.edges))
        fill = [0] * m
        for e, (u, v) in enumerate(inst.edges):
            xe = self.x[e]
            for side, k in ((0, u - 1), (1, v - 1)):
                self.edge_off[2 * e + side] = fill[k]
                if xe:
                    self.starts[k].append(fill[k])
                    self.fillers[k].append(2 * m + 2 * e + side)
                fill[k] += xe

    def partner(self, g: int, q: int) -> tuple[int, int] | None:
        """Partner ``(group, position)`` of ``(g, q)``; ``None`` if exposed."""
        m = self.m
        if g >= 2 * m:
            j = g - 2 * m
            e = j >> 1
            if q < self.x[e]:
                w = self.inst.edges[e][j & 1]
                return w - 1, self.edge_off[j] + q
            return g ^ 1, q
        if g >= m:
            k = g - m
            if q < self.d[k]:
                return self.parent[k], self.child_off[k] + q
            return k, q
        if q >= self.d[g]:
            return None if g == self.root else (m + g, q)
        starts = self.starts[g]
        i = bisect_right(starts, q) - 1
        return self.fillers[g][i], q - starts[i]


@dataclass
class ReprGraph:
    """The representing graph with every group laid out contiguously."""

    inst: Instance
    offset: list[int]  # per group id, plus a final sentinel
    n: int
    adj: list[list[int]]

    def vertex(self, g: int, q: int) -> int:
        if not 0 <= q < self.offset[g + 1] - self.offset[g]:
            raise IndexError(f"position {q} outside group {group_key(self.inst.m, g)}")
        return self.offset[g] + q

    def group_vertices(self, g: int) -> range:
        return range(self.offset[g], self.offset[g + 1])

    def origin(self, v: int) -> tuple[int, int]:
        g = bisect_right(self.offset, v) - 1  # skips empty groups
        return g, v - self.offset[g]

    def neighbors(self, v: int) -> list[int]:
        return self.adj[v]

    def edges(self) -> Iterator[tuple[int, int, str]]:
        """Every edge once, tagged ``"IN"``, ``"UP"`` or ``"EE"``."""
        inst = self.inst
        fam = inst.family
        m = fam.m
        for k in range(m):
            if k == fam.root:
                continue
            B, T, P = self.group_vertices(k), self.group_vertices(m + k), self.group_vertices(fam.parent[k])
            for bq, tq in zip(B, T):
                yield bq, tq, "IN"
            for tq in T:
                for pr in P:
                    yield tq, pr, "UP"
        for e, (u, v) in enumerate(inst.edges):
            E0 = self.group_vertices(2 * m + 2 * e)
            E1 = self.group_vertices(2 * m + 2 * e + 1)
            for Es, w in ((E0, u), (E1, v)):
                for eq in Es:
                    for br in self.group_vertices(w - 1):
                        yield eq, br, "UP"
            for a, b in zip(E0, E1):
                yield a, b, "EE"


def repr_vertex_count(inst: Instance) -> int:
    return 2 * sum(inst.b) - inst.b[inst.family.root] + 2 * sum(inst.c)


def build_repr(inst: Instance, max_vertices: int = DEFAULT_MAX_VERTICES) -> ReprGraph:
    total = repr_vertex_count(inst)
    if total > max_vertices:
        raise SizeOverflow(
            f"representing graph needs {total} vertices, cap is {max_vertices}"
        )
    n_groups = 2 * inst.m + 2 * len(inst.edges)
    offset = [0] * (n_groups + 1)
    for g in range(n_groups):
        offset[g + 1] = offset[g] + group_size(inst, g)
    assert offset[-1] == total
    g = ReprGraph(inst, offset, total, [[] for _ in range(total)])
    adj = g.adj
    for u, v, _ in g.edges():
        adj[u].append(v)
        adj[v].append(u)
    return g


def repr_matching(inst: Instance, x: Sequence[int], graph: ReprGraph | None = None) -> Matching:
    """The canonical representing matching of a feasible ``x``.

    Materialised from :class:`CanonicalLayout`, so the explicit construction
    and the position arithmetic used by the augmentation graph agree by
    definition; the test-suite replays the step-by-step construction
    independently.
    """
    violations = check_feasible(inst, x)
    if violations:
        raise InfeasibleInput("; ".join(v.describe(inst) for v in violations))
    if graph is None:
        graph = build_repr(inst)
    layout = CanonicalLayout(inst, x)
    off = graph.offset
    mate = [-1] * graph.n
    for g in range(len(off) - 1):
        for q in range(off[g + 1] - off[g]):
            p = layout.partner(g, q)
            if p is not None:
                mate[off[g] + q] = off[p[0]] + p[1]
    return Matching(mate)


def extract_hmatching(inst: Instance, graph: ReprGraph, matching: Matching) -> HMatching:
    """Read multiplicities back from a matching whose exposed vertices all
    lie in the root's bottom group.

    ``x_e`` counts the positions whose two EE vertices are both matched into
    the bottom groups of the edge's endpoints.
    """
    mate = matching.mate
    m = inst.m
    root_b = graph.group_vertices(inst.family.root)
    for v, w in enumerate(mate):
        if w == -1 and v not in root_b:
            g, q = graph.origin(v)
            raise BadExposure(f"vertex {v} {group_key(m, g)}[{q}] is exposed outside the root group")
    x = []
    for e, (u, v) in enumerate(inst.edges):
        E0 = graph.group_vertices(2 * m + 2 * e)
        E1 = graph.group_vertices(2 * m + 2 * e + 1)
        bu = graph.group_vertices(u - 1)
        bv = graph.group_vertices(v - 1)
        count = 0
        for w, w2 in zip(E0, E1):
            if mate[w] == w2:
                continue
            if mate[w] in bu and mate[w2] in bv:
                count += 1
            else:
                raise Inconsistent(
                    f"edge {inst.edges[e]} position {w - E0.start} is neither paired nor cross-matched"
                )
        x.append(count)
    return tuple(x)


def solve_pseudo(
    inst: Instance,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    on_augment: Callable[[Matching, list[int]], None] | None = None,
) -> HMatching:
    """Maximum H-matching through a maximum matching of the representing
    graph, seeded with the representing matching of the empty H-matching."""
    graph = build_repr(inst, max_vertices)
    seed = repr_matching(inst, (0,) * len(inst.edges), graph)
    best = max_matching_from_seed(graph, seed, on_augment)
    return extract_hmatching(inst, graph, best)
