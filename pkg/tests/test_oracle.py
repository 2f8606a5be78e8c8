from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbmatch.core import Instance, is_feasible, normalize
from hbmatch.oracle import BudgetExceeded, brute_force_max

from helpers import enumerate_feasible, fx1, fx3, fx5, small_instance


@pytest.mark.parametrize("build, size", [(fx1, 1), (fx5, 1), (fx3, 2)])
def test_fixture_optima(build, size):
    res = brute_force_max(normalize(build()))
    assert res.best_size == size
    assert sum(res.best_x) == size
    assert res.nodes_explored > 0


def test_fx3_optimum_matches_full_enumeration():
    inst = fx3()
    assert max(sum(x) for x in enumerate_feasible(inst)) == 2


def test_budget_exceeded():
    inst = small_instance(7, n_max=6)
    while not inst.edges:
        inst = small_instance(inst.n + 100)
    with pytest.raises(BudgetExceeded):
        brute_force_max(inst, budget=1)


def test_edgeless_instance():
    inst = Instance.build(3, [], [1, 1, 1])
    res = brute_force_max(inst)
    assert res.best_x == () and res.best_size == 0


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_result_feasible_and_never_beaten_by_sampling(seed):
    inst = small_instance(seed)
    res = brute_force_max(inst)
    assert is_feasible(inst, res.best_x)
    assert res.best_size == sum(res.best_x)
    rng = random.Random(seed)
    for _ in range(200):
        x = tuple(rng.randint(0, c) for c in inst.c)
        if is_feasible(inst, x):
            assert sum(x) <= res.best_size


def test_matches_full_enumeration_on_tiny_instances():
    checked = 0
    for seed in range(300):
        inst = small_instance(seed, n_max=4, max_edges=5)
        if len(inst.edges) > 5:
            continue
        best = max(sum(x) for x in enumerate_feasible(inst))
        assert brute_force_max(inst).best_size == best, seed
        checked += 1
    assert checked > 200


def test_classical_matching_agreement():
    rng = random.Random(5)
    for trial in range(100):
        n = rng.randint(2, 10)
        p = rng.random()
        pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
        pairs = pairs[:14]
        inst = Instance.build(n, [(u, v, 1) for u, v in pairs], [1] * n)
        g = nx.Graph(pairs)
        expected = len(nx.max_weight_matching(g, maxcardinality=True)) if pairs else 0
        assert brute_force_max(inst).best_size == expected, trial
