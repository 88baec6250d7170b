import json

import pytest

from subtreemax import (
    CapExceeded,
    DegreeSequence,
    Tree,
    apply_switch,
    build_greedy,
    canonical_code,
    check_conjecture,
    check_tail_dominance,
    count_subtrees,
    leaf_path,
    oracle_count,
    path_tree,
    probe_switch_ordering,
    rank_family,
    switch_distance_to_greedy,
)
from subtreemax.explorer import (
    NO_COUNTEREXAMPLE,
    balanced_labelings,
    decreasing_switches,
    distances_from_greedy,
    symmetric_labeling,
)
from subtreemax.oracle import degree_sequences
from subtreemax.switching import apply_tail_switch, leaf_pairs

TWELVE = DegreeSequence((4, 4, 4, 3, 3, 3, 3, 3, 3, 3, 2, 2))


def ds(text):
    return DegreeSequence.parse(text)


# ------------------------------------------------------------------ ranking


def test_rank_trivial_families():
    (entry,) = rank_family(ds("2,2,2")).entries
    assert entry.code == canonical_code(path_tree(5)) and entry.rank == 1
    assert len(rank_family(ds("3,3"))) == 1


def test_rank_332():
    ranked = rank_family(ds("3,3,2"))
    greedy = build_greedy(ds("3,3,2")).tree
    assert ranked.entry(1).code == canonical_code(greedy)
    assert [e.count for e in ranked.entries] == [40, 37]
    assert switch_distance_to_greedy(ranked.entry(2).tree) == 1
    with pytest.raises(IndexError):
        ranked.entry(3)


def test_rank_order_and_density():
    for seq in degree_sequences(10):
        ranked = rank_family(seq)
        keys = [(-e.count, e.code) for e in ranked.entries]
        assert keys == sorted(keys)
        assert [e.rank for e in ranked.entries] == list(range(1, len(ranked) + 1))
        assert all(e.count == count_subtrees(e.tree) for e in ranked.entries)


def test_rank_cap():
    with pytest.raises(CapExceeded):
        rank_family(ds("2," * 15 + "2"))
    with pytest.raises(CapExceeded):
        rank_family(ds("3,3,2"), cap=6)


# --------------------------------------------------------------- distances


def test_distance_examples():
    assert switch_distance_to_greedy(build_greedy(ds("3,3,2")).tree) == 0
    assert switch_distance_to_greedy(path_tree(2)) == 0
    for seq in ("3,3,2", "3,2,2"):
        assert switch_distance_to_greedy(rank_family(ds(seq)).entry(2).tree) == 1


def test_distance_budget():
    rank2 = rank_family(ds("3,2,2")).entry(2).tree
    assert switch_distance_to_greedy(rank2, budget=0) is None
    with pytest.raises(ValueError):
        switch_distance_to_greedy(rank2, budget=-1)


def test_distance_bound_small_families():
    for seq in degree_sequences(10):
        if seq.vertex_count < 3:
            continue
        ranked = rank_family(seq)
        dist = distances_from_greedy(seq)
        for e in ranked.entries:
            assert dist[e.code] <= e.rank - 1
            if e.rank == 2:
                assert dist[e.code] == 1
            if e.rank <= 4:
                assert switch_distance_to_greedy(e.tree) == dist[e.code]


def test_decreasing_switches_are_exact():
    g = build_greedy(ds("3,3,2,2")).tree
    base = oracle_count(g)
    seen = 0
    for sw, delta, new in decreasing_switches(g):
        assert delta < 0
        assert oracle_count(new) - base == delta
        assert apply_switch(g, sw) == new
        seen += 1
    assert seen > 0


def test_inverse_branch_move_needed_for_rank_two():
    # the second-best {4,3,3,3} tree differs from the greedy one by moving a
    # leaf, not the largest branch, from the centre to a neighbour
    seq = ds("4,3,3,3")
    rank2 = rank_family(seq).entry(2)
    g = build_greedy(seq).tree
    moves = [
        sw for sw, _, new in decreasing_switches(g) if canonical_code(new) == rank2.code
    ]
    assert moves and all(sw.kind == "degree" for sw in moves)
    assert all(g.degree(m) == 1 for sw in moves for m in sw.moved)


# ------------------------------------------------------------ tail dominance


def test_dominance_path_is_vacuous():
    r = check_tail_dominance(ds("2,2,2"))
    assert r.instances == 0 and r.status == NO_COUNTEREXAMPLE


def test_dominance_332():
    r = check_tail_dominance(ds("3,3,2"))
    assert r.instances > 0 and r.status == NO_COUNTEREXAMPLE and not r.summary["sampled"]


def test_dominance_sampled_large_greedy():
    r = check_tail_dominance(TWELVE, seed=11)
    assert r.summary["sampled"] and r.seed == 11 and r.summary["leaf_pairs"] == 64
    assert r.status == NO_COUNTEREXAMPLE
    assert r.to_json() == check_tail_dominance(TWELVE, seed=11).to_json()


def _tail_decreases(t):
    base = oracle_count(t)
    out = []
    for a, b in leaf_pairs(t):
        d = leaf_path(t, a, b)
        for i in range(0, d.n):
            for j in range(i + 2, d.n + 2):
                loss = base - oracle_count(apply_tail_switch(t, d, i, j))
                if loss > 0:
                    out.append(loss)
    return out


def test_dominance_fails_for_inverse_branch_moves():
    seq = ds("4,3,3,3")
    assert check_tail_dominance(seq).status == NO_COUNTEREXAMPLE
    r = check_tail_dominance(seq, inverse_moves=True)
    assert r.status == "counterexample"
    g = build_greedy(seq).tree
    smallest_tail = min(_tail_decreases(g))
    for c in r.counterexamples:
        t = Tree.from_edges(c.tree_edges)
        assert t == g
        sw = c.witness["switch"]
        loss = oracle_count(t) - oracle_count(apply_switch(t, sw))
        assert loss == c.witness["decrease"] < smallest_tail == c.witness["best_tail_decrease"]


# ------------------------------------------------------------- conjecture


def test_balanced_labelings():
    t = path_tree(7)  # five internal vertices
    (xs, ys), (xs2, ys2) = balanced_labelings(t, 0, 6)
    assert xs == [3, 2, 1] and ys == [4, 5]
    assert xs2 == [3, 4, 5] and ys2 == [2, 1]
    assert symmetric_labeling(5) == [(2, 4), (1, 5)]
    assert symmetric_labeling(4) == [(2, 3), (1, 4)]


def test_conjecture_paths_vacuous():
    r = check_conjecture([ds("2,2,2"), ds("2,2,2,2")])
    assert r.status == NO_COUNTEREXAMPLE


def test_conjecture_single_sequence():
    r = check_conjecture([ds("3,2,2")])
    assert r.status in ("no-counterexample-found", "counterexample")
    assert r.summary["family_members"] == 2


def test_conjecture_small_families_report():
    pool = [s for s in degree_sequences(10) if s.vertex_count >= 3]
    r = check_conjecture(pool)
    doc = json.loads(r.to_json())
    assert set(doc) >= {"hypothesis", "instances", "counterexamples", "status", "seed"}
    assert doc["status"] == r.status
    for c in r.counterexamples:
        t = Tree.from_edges(c.tree_edges)
        assert [t.degree(v) for v in c.witness["x"]]


def test_conjecture_cap():
    with pytest.raises(CapExceeded):
        check_conjecture([ds("3,3,2")], cap=6)


# --------------------------------------------------------------- problems


def test_probe_path_vacuous():
    for problem in (1, 2, 3):
        r = probe_switch_ordering(ds("2,2,2,2"), problem)
        assert r.status == NO_COUNTEREXAMPLE


def test_probe_problem1_compares_types():
    r = probe_switch_ordering(ds("3,3,3"), 1)
    assert r.instances > 0
    assert sum(r.summary["smallest_by_type"].values()) >= r.instances


def test_probe_problem3_report():
    r = probe_switch_ordering(ds("3,3,3,2"), 3)
    doc = json.loads(r.to_json())
    assert doc["hypothesis"] == "switch-ordering-3"
    assert doc["status"] in ("no-counterexample-found", "counterexample")


def test_probe_problem2_finds_configurations():
    r = probe_switch_ordering(ds("3,3,3,3"), 2)
    assert r.instances > 0


def test_probe_rejects_bad_problem():
    with pytest.raises(ValueError):
        probe_switch_ordering(ds("3,3"), 4)


def test_report_json_counts_are_strings():
    r = check_tail_dominance(ds("4,3,3,3"), inverse_moves=True)
    doc = json.loads(r.to_json())
    w = doc["counterexamples"][0]["witness"]
    assert isinstance(w["decrease"], str) and isinstance(doc["instances"], int)
    assert doc["counterexamples"][0]["tree_edges"][0] == [0, 1]
