"""Maximum-cardinality matching in general graphs (Edmonds' blossom search).

Any object with an ``n`` attribute and a ``neighbors(v)`` method returning an
iterable of vertices can be searched; :class:`WorkGraph` is the plain
adjacency-list implementation.  Blossoms are contracted implicitly through a
union-find over base vertices, and augmenting paths are expanded through the
bridge edge recorded for every inner vertex absorbed into a blossom.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Protocol, Sequence

UNLABELED, EVEN, ODD = 0, 1, 2


class SearchGraph(Protocol):
    n: int

    def neighbors(self, v: int) -> Iterable[int]: ...


class InvalidPath(ValueError):
    pass


class WorkGraph:
    """Undirected simple graph on vertices ``0..n-1``."""

    def __init__(self, n: int, adj: list[list[int]] | None = None):
        self.n = n
        self.adj: list[list[int]] = adj if adj is not None else [[] for _ in range(n)]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> WorkGraph:
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"loop at {u}")
        self.adj[u].append(v)
        self.adj[v].append(u)

    def neighbors(self, v: int) -> list[int]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]


class Matching:
    """Partner map; ``mate[v] == -1`` marks an exposed vertex."""

    __slots__ = ("mate",)

    def __init__(self, mate: Sequence[int]):
        self.mate = list(mate)

    @classmethod
    def empty(cls, n: int) -> Matching:
        return cls([-1] * n)

    def __len__(self) -> int:
        return sum(1 for v, w in enumerate(self.mate) if w > v)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matching) and self.mate == other.mate

    def __repr__(self) -> str:
        return f"Matching({self.pairs()})"

    def copy(self) -> Matching:
        return Matching(self.mate)

    def pairs(self) -> list[tuple[int, int]]:
        return [(v, w) for v, w in enumerate(self.mate) if w > v]

    def exposed(self) -> set[int]:
        return {v for v, w in enumerate(self.mate) if w == -1}

    def check(self, graph: SearchGraph | None = None) -> None:
        """Raise ``ValueError`` unless partners are mutual (and, when a graph
        is given, joined by an edge)."""
        for v, w in enumerate(self.mate):
            if w == -1:
                continue
            if not 0 <= w < len(self.mate) or self.mate[w] != v or w == v:
                raise ValueError(f"partners of {v} and {w} are not mutual")
            if graph is not None and w not in set(graph.neighbors(v)):
                raise ValueError(f"matched pair ({v}, {w}) is not an edge")


def _path_up(
    start: int,
    stop: int,
    reverse: bool,
    mate: list[int],
    pred: list[int],
    bridge: dict[int, tuple[int, int]],
) -> list[int]:
    """Alternating path from even vertex ``start`` to its ancestor ``stop``.

    The path leaves ``start`` through its matched edge.  With ``reverse`` the
    vertex order is flipped.  Iterative to stay clear of the recursion limit.
    """
    out: list[int] = []
    # stack items: int -> emit vertex; tuple -> (start, stop, reverse) task
    stack: list[object] = [(start, stop, reverse)]
    while stack:
        item = stack.pop()
        if isinstance(item, int):
            out.append(item)
            continue
        x, s, rev = item  # type: ignore[misc]
        if x == s:
            out.append(x)
            continue
        br = bridge.get(x)
        if br is None:
            o = mate[x]
            parts: list[object] = [x, o, (pred[o], s, False)]
            if rev:
                parts = [(pred[o], s, True), o, x]
        else:
            v, w = br
            parts = [x, (v, mate[x], True), (w, s, False)]
            if rev:
                parts = [(w, s, True), (v, mate[x], False), x]
        stack.extend(reversed(parts))
    return out


def find_augmenting_path(
    graph: SearchGraph,
    matching: Matching,
    allowed_endpoints: Iterable[int] | None = None,
) -> list[int] | None:
    """Search for an augmenting path whose ends lie in ``allowed_endpoints``.

    Exposed vertices outside ``allowed_endpoints`` are ignored (they can never
    be interior to an alternating path).  Roots are grown breadth-first in
    ascending vertex order.  Returns the vertex sequence of the path, or
    ``None`` when no such path exists.
    """
    n = graph.n
    mate = matching.mate
    if allowed_endpoints is None:
        roots = [v for v in range(n) if mate[v] == -1]
    else:
        roots = sorted({v for v in allowed_endpoints if mate[v] == -1})
    if len(roots) < 2:
        return None

    label = [UNLABELED] * n
    tree = [-1] * n
    pred = [-1] * n
    bridge: dict[int, tuple[int, int]] = {}
    dsu = list(range(n))
    base = list(range(n))  # base vertex of each union-find root
    stamp = [0] * n
    stamp_id = 0

    def find(v: int) -> int:
        r = v
        while dsu[r] != r:
            r = dsu[r]
        while dsu[v] != r:
            dsu[v], v = r, dsu[v]
        return r

    queue: deque[int] = deque()
    for r in roots:
        label[r] = EVEN
        tree[r] = r
        queue.append(r)

    while queue:
        v = queue.popleft()
        for w in graph.neighbors(v):
            lw = label[w]
            if lw == UNLABELED:
                u = mate[w]
                if u == -1:
                    continue  # exposed but not an allowed endpoint
                label[w] = ODD
                pred[w] = v
                tree[w] = tree[v]
                label[u] = EVEN
                tree[u] = tree[v]
                queue.append(u)
            elif lw == EVEN:
                if tree[w] != tree[v]:
                    left = _path_up(v, tree[v], True, mate, pred, bridge)
                    right = _path_up(w, tree[w], False, mate, pred, bridge)
                    return left + right
                # inline the common short-path case of find()
                rv = dsu[v]
                if dsu[rv] != rv:
                    rv = find(v)
                rw = dsu[w]
                if dsu[rw] != rw:
                    rw = find(w)
                if rv == rw:
                    continue
                bv, bw = base[rv], base[rw]
                # lowest common ancestor in the tree of blossom bases
                stamp_id += 1
                a, c = bv, bw
                while True:
                    if a != -1:
                        if stamp[a] == stamp_id:
                            lca = a
                            break
                        stamp[a] = stamp_id
                        a = -1 if mate[a] == -1 else base[find(pred[mate[a]])]
                    a, c = c, a
                for side, other in ((v, w), (w, v)):
                    b = base[find(side)]
                    while b != lca:
                        o = mate[b]
                        bridge[o] = (side, other)
                        label[o] = EVEN
                        queue.append(o)
                        rl = find(lca)
                        dsu[find(b)] = rl
                        dsu[find(o)] = rl
                        base[rl] = lca
                        b = base[find(pred[o])]
    return None


def flip(
    matching: Matching, path: Sequence[int], graph: SearchGraph | None = None
) -> Matching:
    """Return the matching obtained by switching edges along ``path``."""
    out = matching.copy()
    flip_inplace(out, path, graph)
    return out


def flip_inplace(
    matching: Matching, path: Sequence[int], graph: SearchGraph | None = None
) -> None:
    mate = matching.mate
    if len(path) < 2 or len(path) % 2:
        raise InvalidPath(f"augmenting path needs an even number of vertices, got {len(path)}")
    if len(set(path)) != len(path):
        raise InvalidPath("path repeats a vertex")
    if mate[path[0]] != -1 or mate[path[-1]] != -1:
        raise InvalidPath("path endpoints must be exposed")
    for i in range(1, len(path) - 1, 2):
        if mate[path[i]] != path[i + 1]:
            raise InvalidPath(f"edge ({path[i]}, {path[i + 1]}) should be matched")
    if graph is not None:
        for i in range(0, len(path) - 1, 2):
            if path[i + 1] not in set(graph.neighbors(path[i])):
                raise InvalidPath(f"({path[i]}, {path[i + 1]}) is not an edge")
    for i in range(0, len(path), 2):
        a, b = path[i], path[i + 1]
        mate[a] = b
        mate[b] = a


def max_matching_from_seed(
    graph: SearchGraph,
    seed: Matching | None = None,
    on_augment: Callable[[Matching, list[int]], None] | None = None,
) -> Matching:
    """Augment ``seed`` until no augmenting path remains.

    Only previously exposed vertices ever become matched, so the exposed set
    of the result is a subset of the seed's.  ``on_augment`` is called after
    every flip with the current matching and the path used.
    """
    m = Matching.empty(graph.n) if seed is None else seed.copy()
    while True:
        path = find_augmenting_path(graph, m)
        if path is None:
            return m
        flip_inplace(m, path)
        if on_augment is not None:
            on_augment(m, path)


def max_matching(graph: SearchGraph) -> Matching:
    return max_matching_from_seed(graph, None)
