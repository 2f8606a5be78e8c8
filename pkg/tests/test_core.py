from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hbmatch.core import (
    DuplicateSetError,
    EmptySetError,
    Graph,
    Instance,
    MissingRootError,
    MissingSingletonError,
    OverlapError,
    ValidationError,
    cardinality,
    check_feasible,
    degree,
    is_feasible,
    is_normalized,
    normalize,
    set_degrees,
    slack_edge,
    slack_set,
    validate_family,
    vertex_degrees,
)
from hbmatch.oracle import brute_force_max

from helpers import fx1, fx2, fx3, fx4, fx5, raw_instance, random_feasible_x, set_index, small_instance, xvec

seeds = st.integers(min_value=0, max_value=10**6)


# --- validate_family ---------------------------------------------------------

def test_smallest_family():
    fam = validate_family([{1}, {2}, {1, 2}], 2)
    assert fam.m == 3
    assert fam.sets[fam.root] == frozenset({1, 2})
    assert fam.children[fam.root] == (0, 1)
    assert fam.parent == (2, 2, -1)


def test_overlap_rejected():
    with pytest.raises(OverlapError):
        validate_family([{1}, {2}, {3}, {1, 2}, {2, 3}, {1, 2, 3}], 3)


def test_fx3_family_shape():
    inst = fx3()
    fam = inst.family
    assert fam.m == 7 <= 2 * 4 - 1
    internal = [k for k in range(fam.m) if fam.children[k]]
    assert [sorted(fam.sets[k]) for k in internal] == [[1, 2], [3, 4], [1, 2, 3, 4]]
    assert all(len(fam.children[k]) == 2 for k in internal)


def test_duplicate_and_empty_sets():
    with pytest.raises(DuplicateSetError):
        validate_family([{1}, {2}, {1, 2}, {1, 2}], 2)
    with pytest.raises(EmptySetError):
        validate_family([{1}, {2}, set(), {1, 2}], 2)


def test_missing_parts_without_defaults():
    with pytest.raises(MissingRootError):
        validate_family([{1}, {2}, {3}, {1, 2}], 3)
    with pytest.raises(MissingSingletonError):
        validate_family([{1}, {1, 2}], 2)


def test_defaults_insert_singletons_and_root():
    fam = validate_family([{2, 3}], 4, defaults=True)
    assert fam.sets[:4] == tuple(frozenset({v}) for v in range(1, 5))
    assert fam.sets[4] == frozenset({2, 3})
    assert fam.sets[5] == frozenset({1, 2, 3, 4})
    assert fam.parent[1] == fam.parent[2] == 4
    assert fam.parent[0] == fam.parent[3] == fam.parent[4] == 5


def test_vertices_out_of_range():
    with pytest.raises(ValidationError):
        validate_family([{0, 1}], 2, defaults=True)


def test_single_vertex_family():
    fam = validate_family([], 1, defaults=True)
    assert fam.m == 1 and fam.root == 0 and fam.parent == (-1,)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_generated_families_are_trees(seed):
    fam = small_instance(seed, n_max=9).family
    n = fam.n
    assert fam.m <= 2 * n - 1
    for k in range(fam.m):
        kids = fam.children[k]
        assert len(kids) != 1
        if kids:
            assert fam.sets[k] == frozenset().union(*(fam.sets[c] for c in kids))
        if k != fam.root:
            assert fam.sets[k] < fam.sets[fam.parent[k]]
    assert sorted(fam.postorder()) == list(range(fam.m))
    assert fam.postorder()[-1] == fam.root == fam.preorder()[0]


# --- Instance construction ------------------------------------------------------

def test_graph_rejects_loops_and_parallel_edges():
    with pytest.raises(ValidationError):
        Graph.from_pairs(2, [(1, 1)])
    with pytest.raises(ValidationError):
        Graph.from_pairs(2, [(1, 2), (2, 1)])
    with pytest.raises(ValidationError):
        Graph.from_pairs(2, [(1, 3)])


def test_build_defaults_root_to_vertex_sum():
    inst = Instance.build(3, [(1, 2, 1)], [1, 2, 3])
    assert inst.b[inst.family.root] == 6


def test_build_rejects_bad_bounds():
    with pytest.raises(ValidationError):
        Instance.build(2, [(1, 2, 0)], [1, 1])
    with pytest.raises(ValidationError):
        Instance.build(2, [(1, 2, 1)], [0, 1])
    with pytest.raises(DuplicateSetError):
        Instance.build(2, [(1, 2, 1)], [1, 1], [([1], 1)])


# --- normalize ---------------------------------------------------------------

def test_normalize_caps_by_children_sum():
    inst = normalize(fx3(b_l6=9))
    assert inst.b[set_index(inst, [3, 4])] == 4


def test_normalize_clamps_capacity():
    assert normalize(fx4()).c == (2,)


def test_normalize_caps_root():
    inst = normalize(fx5(root_b=100))
    assert inst.b[inst.family.root] == 3


def test_normalize_preorder_pass_reaches_singletons():
    inst = normalize(fx3())
    # {1,2} has b=1, so both singletons drop to 1 and the root to 1 + 4
    assert inst.b[:4] == (1, 1, 2, 2)
    assert inst.b[inst.family.root] == 5


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_normalize_idempotent_and_shrinking(seed):
    inst = raw_instance(seed)
    norm = normalize(inst)
    assert normalize(norm) == norm
    assert is_normalized(norm)
    assert all(a <= b for a, b in zip(norm.b, inst.b))
    assert all(a <= b for a, b in zip(norm.c, inst.c))
    fam = norm.family
    for k in range(fam.m):
        kids = [norm.b[c] for c in fam.children[k]]
        if kids:
            assert max(kids) <= norm.b[k] <= sum(kids)
    for e, (u, v) in enumerate(norm.edges):
        assert norm.c[e] <= min(norm.b[u - 1], norm.b[v - 1])


def test_normalize_preserves_optimum():
    for seed in range(200):
        inst = raw_instance(seed)
        before = brute_force_max(inst).best_size
        after = brute_force_max(normalize(inst)).best_size
        assert before == after, seed


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_normalize_preserves_feasible_set(seed):
    import random

    inst = raw_instance(seed, n_max=4)
    norm = normalize(inst)
    rng = random.Random(seed)
    for _ in range(20):
        x = tuple(rng.randint(0, c) for c in inst.c)
        assert is_feasible(inst, x) == is_feasible(norm, x)


# --- degrees and slacks -----------------------------------------------------------

def test_degree_examples():
    inst = fx3()
    x = xvec(inst, {(2, 3): 1, (3, 4): 1})
    assert degree(inst, x, set_index(inst, [1, 2])) == 1
    zero = (0,) * len(inst.edges)
    root = inst.family.root
    assert degree(inst, zero, root) == 0
    assert slack_set(inst, zero, root) == inst.b[root]
    f4 = normalize(fx4())
    assert slack_edge(f4, (2,), 0) == 0


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_degree_additivity_and_root_identity(seed):
    import random

    inst = small_instance(seed, n_max=8, max_edges=None)
    x = random_feasible_x(inst, random.Random(seed))
    d = set_degrees(inst, x)
    fam = inst.family
    assert d[: inst.n] == vertex_degrees(inst, x)[1:]
    for k in range(fam.m):
        if fam.children[k]:
            assert d[k] == sum(d[c] for c in fam.children[k])
    assert d[fam.root] == 2 * cardinality(x)


# --- feasibility -------------------------------------------------------------------

def test_feasibility_examples():
    inst = fx3()
    (v,) = check_feasible(inst, xvec(inst, {(1, 2): 1}))
    assert (v.kind, v.index, v.amount, v.bound) == ("set", set_index(inst, [1, 2]), 2, 1)
    assert "degree 2 > bound 1" in v.describe(inst)

    assert check_feasible(fx1(), (1,)) == []

    f2 = fx2()
    (v,) = check_feasible(f2, xvec(f2, {(1, 2): 1, (2, 3): 1}))
    assert (v.kind, v.index, v.amount) == ("set", set_index(f2, [2]), 2)


def test_feasibility_edge_and_sign_violations():
    inst = fx4()
    kinds = {v.kind for v in check_feasible(inst, (4,))}
    assert "edge" in kinds
    assert [v.kind for v in check_feasible(inst, (-1,))] == ["value"]
    with pytest.raises(ValueError):
        check_feasible(inst, (1, 1))


def test_cardinality_examples():
    assert cardinality((0, 0, 0)) == 0
    assert cardinality((2,)) == 2
    inst = fx3()
    assert cardinality(xvec(inst, {(2, 3): 1, (3, 4): 1})) == 2
