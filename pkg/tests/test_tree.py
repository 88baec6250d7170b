from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import trees, trees_with_leaf_pair
from subtreemax import (
    CycleError,
    DegreeSequence,
    DegreeSequenceError,
    DisconnectedError,
    IdGapError,
    ParseError,
    Tree,
    TreeError,
    build_greedy,
    canonical_code,
    degree_sequence_of,
    leaf_path,
    parse_tree,
    path_tree,
    serialize_tree,
    spider,
    star_tree,
)
from subtreemax.oracle import labeled_trees_by_edges
from subtreemax.tree import centers, relabel

TWELVE_DEGREES = (4, 4, 4, 3, 3, 3, 3, 3, 3, 3, 2, 2)


def _nx(t: Tree):
    g = nx.Graph()
    g.add_nodes_from(range(t.vertex_count))
    g.add_edges_from(t.edges)
    return g


# ------------------------------------------------------------------ parsing


def test_parse_single_edge():
    t = parse_tree("0 1")
    assert t.vertex_count == 2 and t.sorted_edges() == [(0, 1)]


def test_parse_path_with_comments():
    t = parse_tree("# a path\n0 1\n\n1 2  \n")
    assert t == path_tree(3)


@pytest.mark.parametrize(
    "text, error",
    [
        ("0 1\n0 2\n0 3\n3 4\n1 2", CycleError),
        ("0 1\n2 3", DisconnectedError),
        ("0 1\n1 3", IdGapError),
        ("0 1 2", ParseError),
        ("0 x", ParseError),
        ("", ParseError),
        ("0 1\n1 0", ParseError),
        ("-1 0", ParseError),
    ],
)
def test_parse_errors_are_distinct(text, error):
    with pytest.raises(error):
        parse_tree(text)


def test_error_types_are_distinct():
    kinds = {ParseError, CycleError, DisconnectedError, IdGapError}
    assert all(issubclass(k, TreeError) for k in kinds)
    assert all(not issubclass(a, b) for a in kinds for b in kinds if a is not b)


def test_constructor_validates():
    with pytest.raises(CycleError):
        Tree.from_edges([(0, 1), (1, 2), (2, 0)], 3)
    with pytest.raises(DisconnectedError):
        Tree.from_edges([(0, 1)], 3)
    with pytest.raises(IdGapError):
        Tree.from_edges([(0, 5)], 2)
    with pytest.raises(TreeError):
        Tree.from_edges([(1, 1)], 2)


@given(trees(min_vertices=2, max_vertices=20))
def test_serialize_round_trip(t):
    doc = serialize_tree(t)
    assert doc.endswith("\n") and "\r" not in doc
    assert parse_tree(doc) == t
    assert serialize_tree(parse_tree(doc)) == doc


@given(trees(max_vertices=25))
def test_tree_invariants(t):
    assert len(t.edges) == t.vertex_count - 1
    g = _nx(t)
    assert nx.is_tree(g)
    assert sum(t.degrees) == 2 * (t.vertex_count - 1)


@given(trees(max_vertices=15), st.data())
def test_rooted_view(t, data):
    root = data.draw(st.integers(0, t.vertex_count - 1))
    view = t.rooted(root)
    dist = nx.single_source_shortest_path_length(_nx(t), root)
    assert view.height_of == dist or dict(view.height_of) == dist
    for v, p in view.parent.items():
        if v == root:
            assert p is None
        else:
            assert view.height_of[v] == view.height_of[p] + 1
            assert v in view.children[p]


# --------------------------------------------------------- degree sequences


def test_degree_sequence_examples():
    assert degree_sequence_of(path_tree(4)).degrees == (2, 2)
    assert degree_sequence_of(star_tree(3)).degrees == (3,)
    big = build_greedy(DegreeSequence(TWELVE_DEGREES)).tree
    assert big.vertex_count == 27
    assert degree_sequence_of(big).degrees == TWELVE_DEGREES


def test_degree_sequence_parse():
    assert DegreeSequence.parse("4,4,3").degrees == (4, 4, 3)
    assert DegreeSequence.parse("4 4  3").degrees == (4, 4, 3)
    assert DegreeSequence.parse("").degrees == ()
    for bad in ("1,2", "2,3", "a,b"):
        with pytest.raises(DegreeSequenceError):
            DegreeSequence.parse(bad)


@given(st.lists(st.integers(2, 7), max_size=8))
def test_handshake_identity(degrees):
    ds = DegreeSequence.of(degrees)
    # degrees of all vertices sum to twice the edge count
    assert sum(ds.degrees) + ds.leaf_count == 2 * (ds.vertex_count - 1)
    assert ds.leaf_count >= 2


# --------------------------------------------------------------- leaf paths


def test_leaf_path_p4():
    d = leaf_path(path_tree(4), 0, 3)
    assert d.n == 2
    assert d.fragments == (frozenset({1}), frozenset({2}))


def test_leaf_path_star():
    d = leaf_path(star_tree(3), 1, 2)
    assert d.n == 1 and d.path == (1, 0, 2)
    assert d.fragment(1) == frozenset({0, 3})


def test_leaf_path_spider():
    t = spider([2, 2, 1])
    tips = [v for v in t.leaves if t.distance(0, v) == 2]
    d = leaf_path(t, *tips)
    assert len(d.path) == 5
    mid = d.fragment(2)
    assert d.anchor(2) == 0 and len(mid) == 2
    assert d.reassemble() == t


def test_leaf_path_rejects_bad_endpoints():
    with pytest.raises(TreeError):
        leaf_path(path_tree(4), 0, 1)
    with pytest.raises(TreeError):
        leaf_path(path_tree(2), 0, 1)
    with pytest.raises(TreeError):
        leaf_path(path_tree(4), 0, 0)
    with pytest.raises(KeyError):
        leaf_path(path_tree(4), 0, 9)


@given(trees_with_leaf_pair(max_vertices=16))
def test_leaf_path_partitions_vertices(case):
    t, a, b = case
    d = leaf_path(t, a, b)
    assert d.reassemble() == t
    covered = set().union(*d.fragments) | {a, b}
    assert covered == set(range(t.vertex_count))
    assert sum(len(f) for f in d.fragments) + 2 == t.vertex_count
    for k in range(1, d.n + 1):
        sub, anchor = d.fragment_tree(k)
        assert sub.vertex_count == len(d.fragment(k))
    r = d.reversed()
    assert r.path == d.path[::-1] and r.fragment(1) == d.fragment(d.n)


# ---------------------------------------------------------- canonical codes


def test_canonical_code_examples():
    p4 = path_tree(4)
    assert canonical_code(p4) == canonical_code(relabel(p4, [2, 0, 3, 1]))
    assert canonical_code(p4) != canonical_code(star_tree(3))


def test_six_vertex_classes_match_brute_force_isomorphism():
    labeled = list(labeled_trees_by_edges(6))
    assert len(labeled) == 6 ** 4  # Cayley
    reps = []
    for t in labeled:
        g = _nx(t)
        if not any(nx.is_isomorphic(g, r) for r in reps):
            reps.append(g)
    codes = {canonical_code(t) for t in labeled}
    assert len(reps) == 6 and len(codes) == 6


@settings(max_examples=150)
@given(trees(max_vertices=14), st.data())
def test_canonical_code_invariant_under_relabel(t, data):
    perm = data.draw(st.permutations(range(t.vertex_count)))
    assert canonical_code(relabel(t, perm)) == canonical_code(t)


@settings(max_examples=150)
@given(trees(min_vertices=7, max_vertices=9), trees(min_vertices=7, max_vertices=9))
def test_canonical_code_decides_isomorphism(s, t):
    same = s.vertex_count == t.vertex_count and nx.is_isomorphic(_nx(s), _nx(t))
    assert (canonical_code(s) == canonical_code(t)) == same


def test_centers():
    assert centers(path_tree(5)) == [2]
    assert centers(path_tree(4)) == [1, 2]
    assert centers(star_tree(4)) == [0]
