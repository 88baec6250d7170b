import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subtreemax import (
    DegreeSequence,
    build_greedy,
    canonical_code,
    count_subtrees,
    degree_sequence_of,
    enumerate_family,
    is_greedy,
    path_tree,
    star_tree,
)
from subtreemax.oracle import degree_sequences

TWELVE = DegreeSequence((4, 4, 4, 3, 3, 3, 3, 3, 3, 3, 2, 2))


def _child_degrees(t, root):
    view = t.rooted(root)
    return view, lambda v: [t.degree(c) for c in view.children[v]]


def test_empty_sequence_is_an_edge():
    g = build_greedy(DegreeSequence(()))
    assert g.tree.vertex_count == 2 and len(g.tree.edges) == 1


def test_small_sequence():
    g = build_greedy(DegreeSequence((3, 2)))
    view, kids = _child_degrees(g.tree, g.root)
    assert g.tree.vertex_count == 5
    assert kids(g.root) == [2, 1, 1]
    two = next(c for c in view.children[g.root] if g.tree.degree(c) == 2)
    assert kids(two) == [1]


def test_large_greedy_structure():
    g = build_greedy(TWELVE)
    t = g.tree
    view, kids = _child_degrees(t, g.root)
    assert t.vertex_count == 27
    assert t.degree(g.root) == 4
    level1 = view.children[g.root]
    assert kids(g.root) == [4, 4, 3, 3]
    assert [kids(v) for v in level1] == [[3, 3, 3], [3, 3, 2], [2, 1], [1, 1]]
    assert g.level_degrees[:3] == ((4,), (4, 4, 3, 3), (3, 3, 3, 3, 3, 2, 2, 1, 1, 1))
    assert degree_sequence_of(t) == TWELVE


@pytest.mark.parametrize("degrees", [(3, 2), (2, 2), TWELVE.degrees, (), (5,), (3, 3, 3, 3)])
def test_build_is_recognized(degrees):
    g = build_greedy(DegreeSequence(degrees))
    check = is_greedy(g.tree)
    assert check and check.ok and check.condition is None


def test_path_and_star_are_greedy():
    assert is_greedy(path_tree(5))
    assert is_greedy(star_tree(4))


def test_chain_with_middle_two_is_not_greedy():
    fam = enumerate_family(DegreeSequence((3, 3, 2)))
    chain = next(
        t for t in fam
        if any(t.degree(v) == 2 and sorted(t.degree(u) for u in t.neighbors(v)) == [3, 3]
               for v in range(t.vertex_count))
    )
    check = is_greedy(chain)
    assert not check
    assert "iii" in check.failed


@settings(max_examples=60)
@given(st.lists(st.integers(2, 6), max_size=9))
def test_degree_sequence_round_trip(degrees):
    ds = DegreeSequence.of(degrees)
    g = build_greedy(ds)
    assert degree_sequence_of(g.tree) == ds
    assert g.tree.vertex_count == ds.vertex_count
    assert is_greedy(g.tree)


def test_recognition_matches_construction_on_families():
    for ds in degree_sequences(10):
        if ds.vertex_count < 3:
            continue
        target = canonical_code(build_greedy(ds).tree)
        for t in enumerate_family(ds):
            assert bool(is_greedy(t)) == (canonical_code(t) == target)


def test_greedy_is_unique_maximum_small():
    for ds in degree_sequences(10):
        if ds.vertex_count < 3:
            continue
        best = count_subtrees(build_greedy(ds).tree)
        counts = sorted((count_subtrees(t) for t in enumerate_family(ds)), reverse=True)
        assert counts[0] == best
        assert len(counts) == 1 or counts[1] < best
