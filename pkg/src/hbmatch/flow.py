"""Near-optimal H-matching from a maximum flow.

The network has a node ``k`` and a mirror node ``k'`` for every set.  Flow
runs from the source into the root, down the laminar tree to the singletons,
across graph edges to mirror singletons, up the mirror tree and out to the
sink.  Averaging a maximum flow with its mirror image gives a half-integral
H-matching, which is then rounded with a loss of at most ``2n/3``.

Half-integral values are stored doubled (``x2 = 2 * x``) so that every check
is exact integer arithmetic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import HMatching, Instance, set_degrees


@dataclass(frozen=True)
class FlowNetwork:
    """Arcs are ``(tail, head, capacity)``; ``mirror[a]`` is the twin of arc
    ``a``.  Node ``k`` is set ``k``, node ``m + k`` its mirror, then source
    and sink."""

    m: int
    arcs: tuple[tuple[int, int, int], ...]
    mirror: tuple[int, ...]
    edge_arcs: tuple[tuple[int, int], ...]  # per graph edge (i -> j', j -> i')

    @property
    def n_nodes(self) -> int:
        return 2 * self.m + 2

    @property
    def source(self) -> int:
        return 2 * self.m

    @property
    def sink(self) -> int:
        return 2 * self.m + 1


@dataclass(frozen=True)
class HalfIntegralHMatching:
    x2: tuple[int, ...]

    @property
    def doubled_size(self) -> int:
        return sum(self.x2)

    @property
    def is_integral(self) -> bool:
        return all(v % 2 == 0 for v in self.x2)


def build_network(inst: Instance) -> FlowNetwork:
    fam = inst.family
    m = fam.m
    arcs: list[tuple[int, int, int]] = []
    mirror: list[int] = []

    def pair(a: tuple[int, int, int], b: tuple[int, int, int]) -> tuple[int, int]:
        i = len(arcs)
        arcs.extend((a, b))
        mirror.extend((i + 1, i))
        return i, i + 1

    for k in range(m):
        p = fam.parent[k]
        if p != -1:
            pair((p, k, inst.b[k]), (m + k, m + p, inst.b[k]))
    root = fam.root
    pair((2 * m, root, inst.b[root]), (m + root, 2 * m + 1, inst.b[root]))
    edge_arcs = []
    for e, (u, v) in enumerate(inst.edges):
        i, j = u - 1, v - 1
        edge_arcs.append(pair((i, m + j, inst.c[e]), (j, m + i, inst.c[e])))
    return FlowNetwork(m, tuple(arcs), tuple(mirror), tuple(edge_arcs))


def flow_from_hmatching(inst: Instance, net: FlowNetwork, x: HMatching) -> list[int]:
    """The flow induced by an H-matching; its value is twice the cardinality."""
    d = set_degrees(inst, x)
    m = net.m
    f = [0] * len(net.arcs)
    for a, (tail, head, _cap) in enumerate(net.arcs):
        if tail == 2 * m:
            f[a] = d[head]
        elif head == 2 * m + 1:
            f[a] = d[tail - m]
        elif tail < m and head < m:
            f[a] = d[head]
        elif tail >= m and head >= m:
            f[a] = d[tail - m]
    for e, (a1, a2) in enumerate(net.edge_arcs):
        f[a1] = f[a2] = x[e]
    return f


def flow_value(net: FlowNetwork, f: list[int]) -> int:
    return sum(fa for fa, (tail, _h, _c) in zip(f, net.arcs) if tail == net.source)


def max_flow(net: FlowNetwork) -> list[int]:
    """Integral maximum s-t flow by Dinic's blocking-flow method."""
    N = net.n_nodes
    s, t = net.source, net.sink
    # residual graph in parallel arrays; residual arc 2a is arc a, 2a+1 its reverse
    head: list[int] = []
    cap: list[int] = []
    out: list[list[int]] = [[] for _ in range(N)]
    for tail, hd, c in net.arcs:
        out[tail].append(len(head))
        head.append(hd)
        cap.append(c)
        out[hd].append(len(head))
        head.append(tail)
        cap.append(0)

    while True:
        level = [-1] * N
        level[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for r in out[v]:
                if cap[r] and level[head[r]] < 0:
                    level[head[r]] = level[v] + 1
                    q.append(head[r])
        if level[t] < 0:
            break
        it = [0] * N
        # iterative DFS for augmenting paths in the level graph
        while True:
            path: list[int] = []
            v = s
            while v != t:
                adv = False
                arcs_v = out[v]
                while it[v] < len(arcs_v):
                    r = arcs_v[it[v]]
                    w = head[r]
                    if cap[r] and level[w] == level[v] + 1:
                        path.append(r)
                        v = w
                        adv = True
                        break
                    it[v] += 1
                if not adv:
                    if v == s:
                        break
                    level[v] = -1  # dead end
                    r = path.pop()
                    v = head[r ^ 1]
                    it[v] += 1
            if v != t:
                break
            push = min(cap[r] for r in path)
            for r in path:
                cap[r] -= push
                cap[r ^ 1] += push
    return [cap[2 * a + 1] for a in range(len(net.arcs))]


def symmetrized_flow(net: FlowNetwork, f: list[int]) -> list[int]:
    """Doubled averaged flow ``f(a) + f(a')`` on every arc."""
    return [f[a] + f[net.mirror[a]] for a in range(len(net.arcs))]


def symmetrize(net: FlowNetwork, f: list[int]) -> HalfIntegralHMatching:
    return HalfIntegralHMatching(tuple(f[a] + f[b] for a, b in net.edge_arcs))


def _cycle_edges(order: list[int], edge_of: dict[tuple[int, int], int]) -> list[int]:
    """Edges around a cycle given as a vertex sequence, normalised to start at
    the lowest vertex and head towards its lower neighbour."""
    i = order.index(min(order))
    order = order[i:] + order[:i]
    if len(order) > 2 and order[-1] < order[1]:
        order = [order[0]] + order[:0:-1]
    k = len(order)
    return [edge_of[_key(order[j], order[(j + 1) % k])] for j in range(k)]


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _fundamental_cycles(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    """One cycle per non-tree edge of an iterative DFS forest (roots in
    ascending order), each as a vertex sequence."""
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for lst in adj:
        lst.sort()
    parent = [0] * (n + 1)
    depth = [-1] * (n + 1)
    cycles: list[list[int]] = []
    for r in range(1, n + 1):
        if depth[r] >= 0 or not adj[r]:
            continue
        depth[r] = 0
        parent[r] = 0
        stack = [(r, 0)]
        while stack:
            v, i = stack[-1]
            if i == len(adj[v]):
                stack.pop()
                continue
            stack[-1] = (v, i + 1)
            w = adj[v][i]
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent[w] = v
                stack.append((w, 0))
            elif depth[w] < depth[v] - 1:
                # back edge to a proper ancestor
                cyc = [v]
                u = v
                while u != w:
                    u = parent[u]
                    cyc.append(u)
                cycles.append(cyc)
    return cycles


@dataclass(frozen=True)
class RoundingTrace:
    x: HMatching
    even_cycles: int
    odd_cycles: int
    forest_edges: int

    @property
    def loss_halves(self) -> int:
        return self.odd_cycles + self.forest_edges


def round_half_integral(inst: Instance, h: HalfIntegralHMatching) -> RoundingTrace:
    """Round a half-integral H-matching to an integral one.

    Works on the subgraph of edges with odd ``x2``: even cycles are cancelled
    by alternating +1/-1, then every remaining (odd) cycle gets +1 on a
    maximum matching of the cycle and -1 elsewhere, and finally every odd edge
    left over, which now form a forest, is decreased by one.
    """
    x2 = list(h.x2)
    edges = inst.edges
    edge_of = {uv: e for e, uv in enumerate(edges)}
    n = inst.n

    def odd_edges() -> list[tuple[int, int]]:
        return [edges[e] for e in range(len(edges)) if x2[e] % 2]

    def alternate(cyc_edges: list[int]) -> None:
        for j, e in enumerate(cyc_edges):
            x2[e] += 1 if j % 2 == 0 else -1

    even_done = 0
    while True:
        cycles = _fundamental_cycles(n, odd_edges())
        changed = False
        touched: set[int] = set()
        for cyc in cycles:
            ce = _cycle_edges(cyc, edge_of)
            if len(ce) % 2 == 0 and touched.isdisjoint(ce):
                alternate(ce)
                touched.update(ce)
                even_done += 1
                changed = True
        if changed:
            continue
        # all fundamental cycles odd: two of them sharing an edge combine
        # into an even cycle
        owner: dict[int, int] = {}
        combined = None
        for ci, cyc in enumerate(cycles):
            for e in _cycle_edges(cyc, edge_of):
                if e in owner:
                    combined = (owner[e], ci)
                    break
                owner[e] = ci
            if combined:
                break
        if combined is None:
            break
        a, b = combined
        diff = set(_cycle_edges(cycles[a], edge_of)) ^ set(_cycle_edges(cycles[b], edge_of))
        alternate(_cycle_edges(_walk_cycle([edges[e] for e in diff]), edge_of))
        even_done += 1

    # remaining cycles are odd and pairwise edge-disjoint
    odd_done = 0
    for cyc in _fundamental_cycles(n, odd_edges()):
        ce = _cycle_edges(cyc, edge_of)
        assert len(ce) % 2 == 1
        # matching skips the lowest vertex: its two incident edges are ce[0]
        # and ce[-1]; take ce[1], ce[3], ...
        for j, e in enumerate(ce):
            x2[e] += 1 if j % 2 == 1 else -1
        odd_done += 1

    forest = 0
    for e in range(len(edges)):
        if x2[e] % 2:
            x2[e] -= 1
            forest += 1
    return RoundingTrace(tuple(v // 2 for v in x2), even_done, odd_done, forest)


def _walk_cycle(cyc_edges: list[tuple[int, int]]) -> list[int]:
    adj: dict[int, list[int]] = {}
    for u, v in cyc_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    assert all(len(nb) == 2 for nb in adj.values()), "symmetric difference is not a cycle"
    start = min(adj)
    order = [start]
    prev, cur = start, adj[start][0]
    while cur != start:
        order.append(cur)
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        prev, cur = cur, nxt
    assert len(order) == len(cyc_edges)
    return order


def round(inst: Instance, h: HalfIntegralHMatching) -> HMatching:  # noqa: A001
    return round_half_integral(inst, h).x


@dataclass(frozen=True)
class FlowStage:
    x: HMatching
    flow_value: int
    half: HalfIntegralHMatching
    rounding: RoundingTrace


def flow_stage(inst: Instance) -> FlowStage:
    net = build_network(inst)
    f = max_flow(net)
    half = symmetrize(net, f)
    trace = round_half_integral(inst, half)
    return FlowStage(trace.x, flow_value(net, f), half, trace)


def near_optimal(inst: Instance) -> HMatching:
    """H-matching within ``ceil(2n/3)`` of the optimum."""
    return flow_stage(inst).x
