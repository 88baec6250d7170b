"""Near-maximal search and empirical checks built on the switch operations.

* :func:`rank_family` orders a complete family by subtree count.
* :func:`switch_distance_to_greedy` walks count-decreasing switches outward
  from the greedy tree.
* :func:`check_tail_dominance` confirms that on a greedy tree some tail switch
  loses no more than any decreasing component or degree switch.
* :func:`check_conjecture` and :func:`probe_switch_ordering` measure open
  questions about the switches.  Their reports are findings, not assertions.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .counting import (
    component_switch_delta,
    count_all_rooted,
    count_subtrees,
    degree_switch_delta,
    path_profile,
    tail_switch_delta,
)
from .greedy import build_greedy
from .oracle import FAMILY_MAX_VERTICES, CapExceeded, enumerate_family
from .switching import (
    Switch,
    _apply_plan,
    apply_component_switch,
    apply_tail_switch,
    branch_move_plans,
    degree_switch_plan,
    leaf_pairs,
)
from .tree import DegreeSequence, Tree, canonical_code, degree_sequence_of, leaf_path

DEFAULT_SWITCH_BUDGET = 64
DEFAULT_SAMPLE_PAIRS = 64

NO_COUNTEREXAMPLE = "no-counterexample-found"
COUNTEREXAMPLE = "counterexample"


# ------------------------------------------------------------------ ranking


@dataclass(frozen=True)
class RankedEntry:
    code: bytes
    count: int
    rank: int
    tree: Tree


@dataclass(frozen=True)
class RankedFamily:
    degree_sequence: DegreeSequence
    entries: tuple  # RankedEntry, count descending, code ascending on ties

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, rank: int) -> RankedEntry:
        if not 1 <= rank <= len(self.entries):
            raise IndexError(f"rank {rank} outside 1..{len(self.entries)}")
        return self.entries[rank - 1]


def rank_family(ds: DegreeSequence, cap: int = FAMILY_MAX_VERTICES) -> RankedFamily:
    family = enumerate_family(ds, cap)
    scored = sorted(((-count_subtrees(t), canonical_code(t), t) for t in family), key=lambda e: e[:2])
    entries = tuple(RankedEntry(code, -neg, i + 1, t) for i, (neg, code, t) in enumerate(scored))
    return RankedFamily(family.degree_sequence, entries)


# ------------------------------------------------------- switch neighborhood


def decreasing_switches(t: Tree, floor: int | None = None):
    """Yield ``(switch, delta, new_tree)`` for every single switch that lowers the count.

    Covers all component pairs, all tail pairs and every branch move between
    two path vertices of different degree (degree switches and their
    inverses) on every leaf path.  With ``floor`` set, switches landing below it are skipped
    before the new tree is built.  Different switches may give the same tree.
    """
    base = count_subtrees(t) if floor is not None else 0

    def keep(delta):
        return delta < 0 and (floor is None or base + delta >= floor)

    for a, b in leaf_pairs(t):
        d = leaf_path(t, a, b)
        prof = path_profile(d)
        n = d.n
        for i, j in combinations(range(1, n + 1), 2):
            delta = component_switch_delta(prof, i, j)
            if keep(delta):
                yield Switch("component", a, b, (i, j)), delta, apply_component_switch(t, d, i, j)
        for i in range(0, n):
            for j in range(i + 2, n + 2):
                if i == 0 and j == n + 1:
                    continue
                delta = tail_switch_delta(prof, i, j)
                if keep(delta):
                    yield Switch("tail", a, b, (i, j)), delta, apply_tail_switch(t, d, i, j)
        for recv in range(1, n + 1):
            for giver in range(1, n + 1):
                if t.degree(d.path[recv]) >= t.degree(d.path[giver]):
                    continue
                for plan in branch_move_plans(t, d, recv, giver):
                    delta = degree_switch_delta(prof, recv, giver, plan.moved_product, plan.kept_product)
                    if keep(delta):
                        sw = Switch("degree", a, b, (recv, giver), plan.moved)
                        yield sw, delta, _apply_plan(t, d, plan)


def _distinct_neighbours(t: Tree, floor: int | None = None):
    # different leaf paths often produce the same labelled tree; skip repeats
    # before paying for a canonical code
    seen = set()
    for _, _, new in decreasing_switches(t, floor):
        if new.edges not in seen:
            seen.add(new.edges)
            yield new


def distances_from_greedy(ds: DegreeSequence, budget: int = DEFAULT_SWITCH_BUDGET) -> dict:
    """Breadth-first search from the greedy tree over count-decreasing switches.

    Returns canonical code -> fewest switches, for every tree reached
    within ``budget`` switches.
    """
    start = build_greedy(ds).tree
    dist = {canonical_code(start): 0}
    frontier = [start]
    for depth in range(1, budget + 1):
        nxt = {}
        for t in frontier:
            for new in _distinct_neighbours(t):
                code = canonical_code(new)
                if code not in dist:
                    dist[code] = depth
                    nxt[code] = new
        if not nxt:
            break
        frontier = [nxt[c] for c in sorted(nxt)]
    return dist


def switch_distance_to_greedy(t: Tree, budget: int = DEFAULT_SWITCH_BUDGET) -> int | None:
    """Fewest count-decreasing switches turning the greedy tree into ``t``.

    ``None`` means ``t`` was not reached within ``budget`` switches.  Since
    every step lowers the count, trees already below ``t``'s count are pruned.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if t.vertex_count < 3:
        return 0
    target = canonical_code(t)
    floor = count_subtrees(t)
    start = build_greedy(degree_sequence_of(t)).tree
    if canonical_code(start) == target:
        return 0
    seen = {canonical_code(start)}
    frontier = [start]
    for depth in range(1, budget + 1):
        nxt = {}
        for cur in frontier:
            for new in _distinct_neighbours(cur, floor):
                code = canonical_code(new)
                if code in seen:
                    continue
                seen.add(code)
                if code == target:
                    return depth
                nxt[code] = new
        if not nxt:
            return None
        frontier = [nxt[c] for c in sorted(nxt)]
    return None


# ------------------------------------------------------------------ reports


@dataclass(frozen=True)
class Counterexample:
    tree_edges: tuple
    witness: dict


@dataclass(frozen=True)
class ExperimentReport:
    hypothesis: str
    instances: int
    counterexamples: tuple = ()
    seed: int | None = None
    summary: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return COUNTEREXAMPLE if self.counterexamples else NO_COUNTEREXAMPLE

    def to_dict(self) -> dict:
        return {
            "hypothesis": self.hypothesis,
            "instances": self.instances,
            "counterexamples": [
                {"tree_edges": [list(e) for e in c.tree_edges], "witness": _jsonable(c.witness)}
                for c in self.counterexamples
            ],
            "status": self.status,
            "seed": self.seed,
            "summary": _jsonable(self.summary),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), sort_keys=True)


def _jsonable(obj):
    """Counts become decimal strings; switches become dicts."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Switch):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _edges(t: Tree) -> tuple:
    return tuple(t.sorted_edges())


def _check_cap(ds: DegreeSequence, cap: int) -> None:
    if ds.vertex_count > cap:
        raise CapExceeded(f"degree sequence needs {ds.vertex_count} vertices, cap is {cap}")


# ------------------------------------------------------------ tail dominance


def check_tail_dominance(
    ds: DegreeSequence,
    *,
    max_pairs: int = DEFAULT_SAMPLE_PAIRS,
    seed: int = 0,
    inverse_moves: bool = False,
) -> ExperimentReport:
    """On the greedy tree, every decreasing component or degree switch should be
    matched by some tail switch that loses no more.

    Leaf pairs are scanned exhaustively when there are at most ``max_pairs``
    of them, otherwise a seeded sample of that size is used.  Degree switches
    move the largest branches; ``inverse_moves`` widens them to any choice of
    branches, for which dominance is known to fail.
    """
    if not isinstance(ds, DegreeSequence):
        ds = DegreeSequence.of(ds)
    g = build_greedy(ds).tree
    pairs = leaf_pairs(g)
    sampled = len(pairs) > max_pairs
    if sampled:
        pairs = sorted(random.Random(seed).sample(pairs, max_pairs))
    best_tail = None
    others = []
    for a, b in pairs:
        d = leaf_path(g, a, b)
        prof = path_profile(d)
        n = d.n
        for i in range(0, n):
            for j in range(i + 2, n + 2):
                delta = tail_switch_delta(prof, i, j)
                if delta < 0 and (best_tail is None or -delta < best_tail[0]):
                    best_tail = (-delta, Switch("tail", a, b, (i, j)))
        for i, j in combinations(range(1, n + 1), 2):
            delta = component_switch_delta(prof, i, j)
            if delta < 0:
                others.append((-delta, Switch("component", a, b, (i, j))))
        for recv in range(1, n + 1):
            for giver in range(1, n + 1):
                if g.degree(d.path[recv]) >= g.degree(d.path[giver]):
                    continue
                plans = branch_move_plans(g, d, recv, giver) if inverse_moves else [degree_switch_plan(g, d, recv, giver)]
                for plan in plans:
                    delta = degree_switch_delta(prof, recv, giver, plan.moved_product, plan.kept_product)
                    if delta < 0:
                        others.append((-delta, Switch("degree", a, b, (recv, giver), plan.moved)))
    found = []
    for loss, sw in others:
        if best_tail is None or best_tail[0] > loss:
            witness = {"switch": sw, "decrease": loss}
            if best_tail is not None:
                witness["best_tail"] = best_tail[1]
                witness["best_tail_decrease"] = best_tail[0]
            found.append(Counterexample(_edges(g), witness))
    summary = {
        "inverse_moves": inverse_moves,
        "leaf_pairs": len(pairs),
        "sampled": sampled,
        "smallest_tail_decrease": best_tail[0] if best_tail else None,
        "smallest_tail_switch": best_tail[1] if best_tail else None,
    }
    return ExperimentReport("tail-dominance", len(others), tuple(found), seed if sampled else None, summary)


# ---------------------------------------------------------------- conjecture


def balanced_labelings(t: Tree, v1: int, v2: int) -> list[tuple[list[int], list[int]]]:
    """Labelings ``... x2 x1 y1 y2 ...`` of the internal path vertices with
    ``x_1`` in the middle, as (x slots, y slots) on the ``v1``-``v2`` path.

    Odd counts give ``x`` one extra vertex, even counts split evenly; each
    comes in two mirror orientations.
    """
    n = leaf_path(t, v1, v2).n
    out = []
    if n % 2:
        mid = (n + 1) // 2
        out.append((list(range(mid, 0, -1)), list(range(mid + 1, n + 1))))
        out.append((list(range(mid, n + 1)), list(range(mid - 1, 0, -1))))
    else:
        h = n // 2
        out.append((list(range(h, 0, -1)), list(range(h + 1, n + 1))))
        out.append((list(range(h + 1, n + 1)), list(range(h, 0, -1))))
    return out


def _alternating(xs, ys, values) -> list:
    seq = []
    for i in range(len(xs)):
        seq.append(values[xs[i]])
        if i < len(ys):
            seq.append(values[ys[i]])
    return seq


def _non_increasing(seq) -> bool:
    return all(a >= b for a, b in zip(seq, seq[1:]))


def check_conjecture(ds_pool, cap: int = FAMILY_MAX_VERTICES) -> ExperimentReport:
    """Trees whose leaf paths all admit interleaved fragment counts should also
    have interleaved degrees along those labelings.

    A tree is tested when every leaf path has a balanced labeling with
    ``C_1 >= D_1 >= C_2 >= ...``; it is a counterexample when on some path none
    of those labelings also has ``d(x_1) >= d(y_1) >= d(x_2) >= ...``.
    """
    pool = [ds if isinstance(ds, DegreeSequence) else DegreeSequence.of(ds) for ds in ds_pool]
    for ds in pool:
        _check_cap(ds, cap)
    tested = members = paths = 0
    found = []
    for ds in sorted(set(pool), key=lambda s: (s.vertex_count, s.degrees)):
        for t in enumerate_family(ds, cap):
            members += 1
            per_path = []
            satisfied = True
            for a, b in leaf_pairs(t):
                d = leaf_path(t, a, b)
                c = path_profile(d).branch
                deg = [t.degree(v) for v in d.path]
                good = [(xs, ys) for xs, ys in balanced_labelings(t, a, b) if _non_increasing(_alternating(xs, ys, c))]
                if not good:
                    satisfied = False
                    break
                per_path.append((a, b, d, c, deg, good))
            if not satisfied:
                continue
            tested += 1
            for a, b, d, c, deg, good in per_path:
                paths += 1
                if any(_non_increasing(_alternating(xs, ys, deg)) for xs, ys in good):
                    continue
                xs, ys = good[0]
                found.append(
                    Counterexample(
                        _edges(t),
                        {
                            "v1": a,
                            "v2": b,
                            "x": [d.path[s] for s in xs],
                            "y": [d.path[s] for s in ys],
                            "components": _alternating(xs, ys, c),
                            "degrees": _alternating(xs, ys, deg),
                        },
                    )
                )
    return ExperimentReport(
        "interleaving-forces-degrees",
        tested,
        tuple(found),
        None,
        {"family_members": members, "paths_checked": paths},
    )


# ---------------------------------------------------------------- problems


def symmetric_labeling(n: int) -> list[tuple[int, int]]:
    """(x_k slot, y_k slot) pairs for ``... x2 x1 (z) y1 y2 ...`` over ``n`` internal slots."""
    if n % 2:
        mid = (n + 1) // 2
        return [(mid - k, mid + k) for k in range(1, mid)]
    h = n // 2
    return [(h - k + 1, h + k) for k in range(1, h + 1)]


def _pair_decreases(t: Tree, d, prof, s: int, r: int) -> dict:
    """Count decrease of each switch type between internal slots ``s`` and ``r``.

    Tail switches exchange the tails beyond the two slots (away from each other).
    """
    lo, hi = min(s, r), max(s, r)
    out = {}
    out["component"] = -component_switch_delta(prof, lo, hi)
    if hi - lo >= 2:
        out["tail"] = -tail_switch_delta(prof, lo, hi)
    dl, dh = t.degree(d.path[lo]), t.degree(d.path[hi])
    if dl != dh:
        recv, giver = (lo, hi) if dl < dh else (hi, lo)
        plan = degree_switch_plan(t, d, recv, giver)
        out["degree"] = -degree_switch_delta(prof, recv, giver, plan.moved_product, plan.kept_product)
    return out


def _problem1(g: Tree):
    instances = 0
    tally = {"component": 0, "tail": 0, "degree": 0}
    records = []
    for a, b in leaf_pairs(g):
        d = leaf_path(g, a, b)
        prof = path_profile(d)
        for k, (xs, ys) in enumerate(symmetric_labeling(d.n), start=1):
            dec = _pair_decreases(g, d, prof, xs, ys)
            if len(dec) < 2:
                continue
            instances += 1
            least = min(dec.values())
            for kind, v in dec.items():
                if v == least:
                    tally[kind] += 1
            records.append(((a, b), k, dec))
    leader = max(sorted(tally), key=lambda kind: tally[kind])
    found = []
    for (a, b), k, dec in records:
        if leader in dec and dec[leader] > min(dec.values()):
            found.append(Counterexample(_edges(g), {"v1": a, "v2": b, "level": k, "decreases": dec, "claimed_smallest": leader}))
    return instances, found, {"smallest_by_type": tally, "leader": leader if instances else None}


def _problem3(g: Tree):
    instances = 0
    violations = {"component": 0, "tail": 0, "degree": 0}
    found = []
    for a, b in leaf_pairs(g):
        d = leaf_path(g, a, b)
        prof = path_profile(d)
        levels = [_pair_decreases(g, d, prof, xs, ys) for xs, ys in symmetric_labeling(d.n)]
        for j, k in combinations(range(len(levels)), 2):
            for kind in ("component", "tail", "degree"):
                if kind not in levels[j] or kind not in levels[k]:
                    continue
                instances += 1
                if levels[k][kind] > levels[j][kind]:
                    violations[kind] += 1
                    found.append(
                        Counterexample(
                            _edges(g),
                            {
                                "v1": a,
                                "v2": b,
                                "type": kind,
                                "inner_level": j + 1,
                                "outer_level": k + 1,
                                "inner_decrease": levels[j][kind],
                                "outer_decrease": levels[k][kind],
                            },
                        )
                    )
    return instances, found, {"violations_by_type": violations}


def _legs(g: Tree, root: int):
    """For each leaf, its root path; used to find branch points."""
    view = g.rooted(root)
    out = {}
    for leaf in g.leaves:
        path = [leaf]
        while view.parent[path[-1]] is not None:
            path.append(view.parent[path[-1]])
        out[leaf] = path[::-1]
    return out


def _problem2(g: Tree, root: int):
    f = count_all_rooted(g)
    legs = _legs(g, root)
    leaves = sorted(legs)
    instances = 0
    per_type = {"component": 0, "tail": 0, "degree": 0}
    found = []
    for triple in combinations(leaves, 3):
        paths = [legs[v] for v in triple]
        # deepest vertex shared by all three root paths
        depth = 0
        while all(len(p) > depth + 1 for p in paths) and len({p[depth + 1] for p in paths}) == 1:
            depth += 1
        if len({p[depth + 1] for p in paths if len(p) > depth + 1}) < 3:
            continue  # some pair meets below the shared ancestor
        w = paths[0][depth]
        for order in permutations(triple):
            xl, yl, zl = (legs[v][depth + 1 : -1] for v in order)
            m = min(len(xl), len(yl), len(zl))
            if m == 0:
                continue
            chain = []
            for i in range(m):
                chain += [f[xl[i]], f[yl[i]], f[zl[i]]]
            if not _non_increasing(chain):
                continue
            v1, v2, v3 = order
            d_yz = leaf_path(g, v2, v3)
            d_xz = leaf_path(g, v1, v3)
            p_yz, p_xz = path_profile(d_yz), path_profile(d_xz)
            for i in range(m):
                yz = _pair_decreases(g, d_yz, p_yz, d_yz.path.index(yl[i]), d_yz.path.index(zl[i]))
                xz = _pair_decreases(g, d_xz, p_xz, d_xz.path.index(xl[i]), d_xz.path.index(zl[i]))
                instances += 1
                for kind in per_type:
                    if kind in yz and kind in xz and yz[kind] > xz[kind]:
                        per_type[kind] += 1
                if min(yz.values()) > min(xz.values()):
                    found.append(
                        Counterexample(
                            _edges(g),
                            {"ancestor": w, "v1": v1, "v2": v2, "v3": v3, "level": i + 1, "yz": yz, "xz": xz},
                        )
                    )
    return instances, found, {"type_violations": per_type}


def probe_switch_ordering(ds: DegreeSequence, problem: int, cap: int = FAMILY_MAX_VERTICES) -> ExperimentReport:
    """Measure switch decreases on the greedy tree for one of three ordering questions.

    1. at the same level ``(x_k, y_k)``, is one switch type always the smallest?
    2. for three legs below a shared ancestor, is the best switch on
       ``(y_i, z_i)`` no larger than the best on ``(x_i, z_i)``?
    3. for levels ``j < k``, is each switch type on ``(x_k, y_k)`` no larger
       than the same type on ``(x_j, y_j)``?
    """
    if not isinstance(ds, DegreeSequence):
        ds = DegreeSequence.of(ds)
    if problem not in (1, 2, 3):
        raise ValueError("problem must be 1, 2 or 3")
    _check_cap(ds, cap)
    gt = build_greedy(ds)
    if gt.tree.vertex_count < 3:
        return ExperimentReport(f"switch-ordering-{problem}", 0)
    if problem == 1:
        instances, found, summary = _problem1(gt.tree)
    elif problem == 2:
        instances, found, summary = _problem2(gt.tree, gt.root)
    else:
        instances, found, summary = _problem3(gt.tree)
    if not instances:
        summary["note"] = "configuration absent"
    return ExperimentReport(f"switch-ordering-{problem}", instances, tuple(found), None, summary)
