"""Seeded random instance generator."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import Instance, normalize


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    density: float = 0.5
    max_b: int = 3
    max_c: int = 2
    depth: int = 2
    branching: tuple[int, int] = (2, 3)
    seed: int = 0
    max_edges: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        if self.max_b < 1 or self.max_c < 1:
            raise ValueError("max_b and max_c must be positive")
        lo, hi = self.branching
        if lo < 2 or hi < lo:
            raise ValueError("branching range must satisfy 2 <= lo <= hi")


def _partition(rng: random.Random, members: list[int], depth: int, cfg: GeneratorConfig,
               out: list[list[int]]) -> None:
    """Split ``members`` into random parts, recording every part of size > 1."""
    if depth <= 0 or len(members) < 2:
        return
    lo, hi = cfg.branching
    k = rng.randint(min(lo, len(members)), min(hi, len(members)))
    shuffled = members[:]
    rng.shuffle(shuffled)
    cuts = sorted(rng.sample(range(1, len(shuffled)), k - 1))
    bounds = [0, *cuts, len(shuffled)]
    for a, b in zip(bounds, bounds[1:]):
        part = sorted(shuffled[a:b])
        if len(part) > 1:
            out.append(part)
            _partition(rng, part, depth - 1, cfg, out)


def generate(cfg: GeneratorConfig) -> Instance:
    """Draw a normalized instance.

    Edges follow an Erdos-Renyi model (optionally thinned to ``max_edges``),
    the laminar family comes from a recursive random partition of the vertex
    set, and the bound of every internal set is drawn between the largest and
    the sum of its children's bounds before normalization.
    """
    rng = random.Random(cfg.seed)
    n = cfg.n
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
             if rng.random() < cfg.density]
    if cfg.max_edges is not None and len(pairs) > cfg.max_edges:
        pairs = sorted(rng.sample(pairs, cfg.max_edges))
    vertex_b = [rng.randint(1, cfg.max_b) for _ in range(n)]
    parts: list[list[int]] = []
    _partition(rng, list(range(1, n + 1)), cfg.depth, cfg, parts)
    edges = [(u, v, rng.randint(1, cfg.max_c)) for u, v in pairs]
    # provisional bounds so that the family can be built; redrawn below
    inst = Instance.build(n, edges, vertex_b, [(p, 1) for p in parts], root_b=None if n == 1 else 1)
    fam = inst.family
    b = list(inst.b)
    for k in fam.postorder():
        if fam.children[k]:
            kids = [b[ch] for ch in fam.children[k]]
            b[k] = rng.randint(max(kids), sum(kids))
    return normalize(Instance(inst.graph, fam, tuple(b), inst.c))
