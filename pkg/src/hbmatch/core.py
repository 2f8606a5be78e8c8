"""Instance and solution data model for hierarchical b-matching.

Conventions used throughout the package:

* vertices are the integers ``1..n``;
* edges are unordered pairs stored as ``(u, v)`` with ``u < v`` and kept in
  lexicographic order, so an edge is addressed by its position ``e`` in
  ``graph.edges``;
* sets of the laminar family are addressed by a 0-based index ``k``.  The
  singleton ``{v}`` has index ``v - 1``, the root ``{1..n}`` has index
  ``m - 1`` and every other set sits in between, in input order;
* an H-matching is a tuple of non-negative multiplicities, one per edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

HMatching = tuple[int, ...]


class ValidationError(ValueError):
    """Raised when an instance or a laminar family is malformed."""


class OverlapError(ValidationError):
    pass


class DuplicateSetError(ValidationError):
    pass


class EmptySetError(ValidationError):
    pass


class MissingRootError(ValidationError):
    pass


class MissingSingletonError(ValidationError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n``.

    ``edges`` must be strictly increasing lexicographically with ``u < v``;
    use :meth:`from_pairs` to build one from arbitrary input.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"graph needs at least one vertex, got n={self.n}")
        prev = None
        for u, v in self.edges:
            if u == v:
                raise ValidationError(f"loop at vertex {u}")
            if not (1 <= u < v <= self.n):
                raise ValidationError(f"edge ({u}, {v}) not of the form 1 <= u < v <= {self.n}")
            if prev is not None and (u, v) <= prev:
                if (u, v) == prev:
                    raise ValidationError(f"parallel edge ({u}, {v})")
                raise ValidationError("edges must be sorted lexicographically")
            prev = (u, v)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
        canon = []
        for u, v in pairs:
            if u == v:
                raise ValidationError(f"loop at vertex {u}")
            canon.append((min(u, v), max(u, v)))
        return cls(n, tuple(sorted(canon)))

    def incident(self) -> list[list[int]]:
        """Edge indices incident to each vertex; index 0 is unused."""
        inc: list[list[int]] = [[] for _ in range(self.n + 1)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return inc


@dataclass(frozen=True)
class LaminarFamily:
    """A laminar family stored as a rooted tree.

    ``parent[k]`` is ``-1`` for the root.  ``children[k]`` is sorted by index.
    """

    n: int
    sets: tuple[frozenset[int], ...]
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def root(self) -> int:
        return len(self.sets) - 1

    def is_leaf(self, k: int) -> bool:
        return not self.children[k]

    def postorder(self) -> list[int]:
        """Children before parents, siblings in ascending index."""
        order: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            k, expanded = stack.pop()
            if expanded:
                order.append(k)
                continue
            stack.append((k, True))
            for c in reversed(self.children[k]):
                stack.append((c, False))
        return order

    def preorder(self) -> list[int]:
        order: list[int] = []
        stack = [self.root]
        while stack:
            k = stack.pop()
            order.append(k)
            stack.extend(reversed(self.children[k]))
        return order

    def ancestors(self, k: int) -> list[int]:
        """``k`` followed by every set containing it, up to the root."""
        chain = []
        while k != -1:
            chain.append(k)
            k = self.parent[k]
        return chain


def validate_family(
    sets: Iterable[Iterable[int]], n: int, *, defaults: bool = False
) -> LaminarFamily:
    """Check laminarity and build the containment tree.

    With ``defaults=True`` missing singletons and the root are inserted;
    otherwise they must be present in ``sets``.  Singletons come first (the
    singleton of ``v`` gets index ``v - 1``), the root last, and the remaining
    sets keep their input order.
    """
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    full = frozenset(range(1, n + 1))
    given: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for raw in sets:
        s = frozenset(raw)
        if not s:
            raise EmptySetError("empty set in laminar family")
        bad = [v for v in s if not (isinstance(v, int) and 1 <= v <= n)]
        if bad:
            raise ValidationError(f"set members {sorted(bad)} outside 1..{n}")
        if s in seen:
            raise DuplicateSetError(f"duplicate set {sorted(s)}")
        seen.add(s)
        given.append(s)

    singles = [frozenset((v,)) for v in range(1, n + 1)]
    if not defaults:
        missing = [v for v in range(1, n + 1) if singles[v - 1] not in seen]
        if missing:
            raise MissingSingletonError(f"singletons missing for vertices {missing}")
        if full not in seen:
            raise MissingRootError("root set {1..n} missing")
    middle = [s for s in given if len(s) > 1 and s != full]
    ordered = singles + middle
    if n > 1:
        ordered.append(full)
    m = len(ordered)

    # Process sets by decreasing size; every member of a set must currently
    # be owned by the same (smallest enclosing) set, or two sets overlap.
    owner = [-1] * (n + 1)
    parent = [-1] * m
    by_size = sorted(range(m), key=lambda k: (-len(ordered[k]), k))
    for k in by_size:
        s = ordered[k]
        it = iter(s)
        first = next(it)
        p = owner[first]
        for v in it:
            if owner[v] != p:
                # one of the two owners contains only part of s
                q = p if p != -1 and not s <= ordered[p] else owner[v]
                raise OverlapError(
                    f"sets {sorted(s)} and {sorted(ordered[q])} properly intersect"
                )
        if p == -1 and k != m - 1:
            raise OverlapError(f"set {sorted(s)} is not contained in the root")
        parent[k] = p
        for v in s:
            owner[v] = k

    children: list[list[int]] = [[] for _ in range(m)]
    for k in range(m):
        if parent[k] != -1:
            children[parent[k]].append(k)
    for k, ch in enumerate(children):
        assert not ch or len(ch) >= 2, "internal node with a single child"
    assert m <= 2 * n - 1 or n == 1
    return LaminarFamily(
        n=n,
        sets=tuple(ordered),
        parent=tuple(parent),
        children=tuple(tuple(ch) for ch in children),
    )


@dataclass(frozen=True)
class Instance:
    """A Max H-matching instance: graph, laminar family, set bounds ``b`` and
    edge capacities ``c``."""

    graph: Graph
    family: LaminarFamily
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.family.n != self.graph.n:
            raise ValidationError("family and graph disagree on n")
        if len(self.b) != self.family.m:
            raise ValidationError(f"expected {self.family.m} set bounds, got {len(self.b)}")
        if len(self.c) != len(self.graph.edges):
            raise ValidationError(f"expected {len(self.graph.edges)} capacities, got {len(self.c)}")
        for k, bk in enumerate(self.b):
            if not isinstance(bk, int) or bk < 1:
                raise ValidationError(f"bound of set {k} must be a positive integer, got {bk!r}")
        for e, ce in enumerate(self.c):
            if not isinstance(ce, int) or ce < 1:
                raise ValidationError(
                    f"capacity of edge {self.graph.edges[e]} must be a positive integer, got {ce!r}"
                )

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.family.m

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.graph.edges

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, int]],
        vertex_b: Sequence[int],
        sets: Iterable[tuple[Iterable[int], int]] = (),
        root_b: int | None = None,
    ) -> Instance:
        """Convenience constructor.

        ``edges`` holds ``(u, v, c)`` triples in any order, ``vertex_b`` the
        singleton bounds, ``sets`` the remaining ``(members, b)`` pairs.  When
        the root is neither listed in ``sets`` nor given by ``root_b`` it gets
        ``b = sum(vertex_b)``.
        """
        if len(vertex_b) != n:
            raise ValidationError(f"vertex_b has length {len(vertex_b)}, expected {n}")
        cap: dict[tuple[int, int], int] = {}
        for u, v, c in edges:
            if u == v:
                raise ValidationError(f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in cap:
                raise ValidationError(f"parallel edge {key}")
            cap[key] = c
        graph = Graph(n, tuple(sorted(cap)))
        full = frozenset(range(1, n + 1))
        bound: dict[frozenset[int], int] = {}
        order: list[frozenset[int]] = []
        for members, bk in sets:
            s = frozenset(members)
            if len(s) == 1 and n > 1:
                raise DuplicateSetError(f"singleton {sorted(s)} must be bounded through vertex_b")
            if s in bound:
                raise DuplicateSetError(f"duplicate set {sorted(s)}")
            bound[s] = bk
            order.append(s)
        if n > 1:
            if root_b is not None:
                if full in bound:
                    raise DuplicateSetError("root given both as a set and as a root record")
                bound[full] = root_b
            elif full not in bound:
                bound[full] = sum(vertex_b)
        elif root_b is not None or order:
            raise ValidationError("with n=1 the root is the singleton; use vertex_b only")
        family = validate_family(order, n, defaults=True)
        b = [0] * family.m
        for k, s in enumerate(family.sets):
            b[k] = vertex_b[k] if k < n else bound[s]
        return cls(graph, family, tuple(b), tuple(cap[e] for e in graph.edges))


def normalize(inst: Instance) -> Instance:
    """Tighten ``b`` and ``c`` without changing the set of H-matchings.

    Preorder pass caps every set by its parent, postorder pass caps every
    internal set by the sum of its children, finally each edge capacity is
    capped by the bounds of its endpoints.
    """
    fam = inst.family
    b = list(inst.b)
    for k in fam.preorder():
        p = fam.parent[k]
        if p != -1 and b[k] > b[p]:
            b[k] = b[p]
    for k in fam.postorder():
        if fam.children[k]:
            total = sum(b[c] for c in fam.children[k])
            if b[k] > total:
                b[k] = total
    c = [min(ce, b[u - 1], b[v - 1]) for ce, (u, v) in zip(inst.c, inst.edges)]
    return Instance(inst.graph, fam, tuple(b), tuple(c))


def is_normalized(inst: Instance) -> bool:
    return normalize(inst) == inst


def vertex_degrees(inst: Instance, x: Sequence[int]) -> list[int]:
    """``d(v)`` for every vertex; index 0 is unused."""
    deg = [0] * (inst.n + 1)
    for xe, (u, v) in zip(x, inst.edges):
        deg[u] += xe
        deg[v] += xe
    return deg


def set_degrees(inst: Instance, x: Sequence[int]) -> list[int]:
    """``d(L_k)`` for every set, accumulated up the laminar tree."""
    fam = inst.family
    vdeg = vertex_degrees(inst, x)
    d = [0] * fam.m
    for k in fam.postorder():
        if fam.children[k]:
            d[k] = sum(d[c] for c in fam.children[k])
        else:
            d[k] = vdeg[k + 1]
    return d


def degree(inst: Instance, x: Sequence[int], k: int) -> int:
    if not 0 <= k < inst.m:
        raise IndexError(f"no set with index {k}")
    return set_degrees(inst, x)[k]


def slack_set(inst: Instance, x: Sequence[int], k: int) -> int:
    return inst.b[k] - degree(inst, x, k)


def slack_edge(inst: Instance, x: Sequence[int], e: int) -> int:
    return inst.c[e] - x[e]


def set_slacks(inst: Instance, x: Sequence[int]) -> list[int]:
    return [bk - dk for bk, dk in zip(inst.b, set_degrees(inst, x))]


def cardinality(x: Sequence[int]) -> int:
    return sum(x)


@dataclass(frozen=True)
class Violation:
    """One broken constraint: ``kind`` is ``"edge"``, ``"set"`` or ``"value"``."""

    kind: str
    index: int
    amount: int
    bound: int

    def describe(self, inst: Instance | None = None) -> str:
        if self.kind == "set":
            name = f"set {self.index}"
            if inst is not None:
                name += f" {sorted(inst.family.sets[self.index])}"
            return f"{name}: degree {self.amount} > bound {self.bound}"
        name = f"edge {self.index}"
        if inst is not None and 0 <= self.index < len(inst.edges):
            name += f" {inst.edges[self.index]}"
        if self.kind == "value":
            return f"{name}: multiplicity {self.amount} is negative"
        return f"{name}: multiplicity {self.amount} > capacity {self.bound}"


def check_feasible(inst: Instance, x: Sequence[int]) -> list[Violation]:
    """Return every violated constraint; an empty list means feasible."""
    if len(x) != len(inst.edges):
        raise ValueError(f"x has length {len(x)}, expected {len(inst.edges)}")
    out: list[Violation] = []
    for e, (xe, ce) in enumerate(zip(x, inst.c)):
        if xe < 0:
            out.append(Violation("value", e, xe, 0))
        elif xe > ce:
            out.append(Violation("edge", e, xe, ce))
    for k, (dk, bk) in enumerate(zip(set_degrees(inst, x), inst.b)):
        if dk > bk:
            out.append(Violation("set", k, dk, bk))
    return out


def is_feasible(inst: Instance, x: Sequence[int]) -> bool:
    return not check_feasible(inst, x)
